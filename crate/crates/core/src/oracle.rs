//! Brute-force reference answers.
//!
//! Everything here works by scanning R^n, R^m or C x C with plain ring
//! arithmetic. None of it uses Howell forms, solvers or character sums from
//! the rest of the crate, so agreement between the two is a real check.
//! Scans are capped by a [`Budget`].

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pcs::{CodePresentation, ParityCheckSystem};
use crate::ring::{enumerate_vectors, Budget, Matrix, RingSpec, RingVec};
use crate::submodule::Submodule;

/// A code stored as its set of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitCode {
    spec: RingSpec,
    n: usize,
    words: BTreeSet<RingVec>,
}

impl ExplicitCode {
    pub fn new(spec: &RingSpec, n: usize, words: impl IntoIterator<Item = RingVec>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            spec.check_vec(&w)?;
            set.insert(w);
        }
        if set.is_empty() {
            return Err(Error::InvalidPresentation("a code needs at least one word".into()));
        }
        Ok(ExplicitCode {
            spec: spec.clone(),
            n,
            words: set,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn words(&self) -> &BTreeSet<RingVec> {
        &self.words
    }

    pub fn cardinality(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, x: &RingVec) -> bool {
        self.words.contains(x)
    }

    fn check_pairs(&self, budget: Budget) -> Result<()> {
        let c = self.words.len() as u128;
        budget.check(c * c)
    }
}

fn mat_vec(spec: &RingSpec, h: &Matrix, x: &RingVec) -> Result<RingVec> {
    h.rows().iter().map(|row| spec.dot(row, x)).collect()
}

/// x in C iff H x^T is a column of S.
pub fn oracle_code_from_pcs(pcs: &ParityCheckSystem, budget: Budget) -> Result<ExplicitCode> {
    let spec = pcs.spec();
    let cols: BTreeSet<RingVec> = pcs.s().columns().into_iter().collect();
    let mut words = Vec::new();
    for x in enumerate_vectors(spec, pcs.len(), budget)? {
        if cols.contains(&mat_vec(spec, pcs.h(), &x)?) {
            words.push(x);
        }
    }
    ExplicitCode::new(spec, pcs.len(), words)
}

/// The union of d_j + <generators of D_C>, with the span built by closure.
pub fn oracle_code_from_presentation(pres: &CodePresentation, budget: Budget) -> Result<ExplicitCode> {
    let spec = pres.spec();
    let kernel = oracle_span(spec, pres.len(), pres.kernel().generators(), budget)?;
    budget.check(kernel.len() as u128 * pres.reps().len() as u128)?;
    let words = pres
        .reps()
        .iter()
        .flat_map(|d| kernel.iter().map(move |k| spec.add_vecs(d, k)));
    ExplicitCode::new(spec, pres.len(), words)
}

/// The R-span of `generators` by repeated closure: <g_1..g_k> is the sum of
/// the cyclic modules R g_i.
pub fn oracle_span(spec: &RingSpec, n: usize, generators: &[RingVec], budget: Budget) -> Result<BTreeSet<RingVec>> {
    let elements: Vec<_> = spec.elements().collect();
    let mut span = BTreeSet::from([spec.zero_vec(n)]);
    for g in generators {
        if g.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: g.len(),
            });
        }
        spec.check_vec(g)?;
        let multiples: BTreeSet<RingVec> = elements.iter().map(|r| spec.scale_vec(r, g)).collect();
        budget.check(span.len() as u128 * multiples.len() as u128)?;
        span = span
            .iter()
            .flat_map(|x| multiples.iter().map(move |m| spec.add_vecs(x, m)))
            .collect();
    }
    Ok(span)
}

/// A small generating set of a submodule given as a set, chosen greedily in
/// ascending order.
pub fn oracle_generating_set(
    spec: &RingSpec,
    n: usize,
    module: &BTreeSet<RingVec>,
    budget: Budget,
) -> Result<Vec<RingVec>> {
    let mut gens = Vec::new();
    let mut span = BTreeSet::from([spec.zero_vec(n)]);
    for x in module {
        if !span.contains(x) {
            gens.push(x.clone());
            span = oracle_span(spec, n, &gens, budget)?;
        }
    }
    Ok(gens)
}

/// min d(c, c') over distinct codewords.
pub fn oracle_min_distance(code: &ExplicitCode, budget: Budget) -> Result<usize> {
    if code.cardinality() < 2 {
        return Err(Error::DegenerateCode);
    }
    code.check_pairs(budget)?;
    let words: Vec<&RingVec> = code.words.iter().collect();
    let mut best = usize::MAX;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            best = best.min(code.spec.hamming(a, b)?);
        }
    }
    Ok(best)
}

/// ker(C) = { x : r x + C = C for all r in R }, as a set. Every such x is a
/// difference c - c_0 for a fixed codeword c_0, which bounds the scan.
pub fn oracle_kernel_set(code: &ExplicitCode, budget: Budget) -> Result<BTreeSet<RingVec>> {
    let spec = &code.spec;
    let elements: Vec<_> = spec.elements().collect();
    code.check_pairs(budget)?;
    budget.check(code.words.len() as u128 * code.words.len() as u128 * elements.len() as u128)?;
    let c0 = code.words.iter().next().expect("codes are nonempty");
    let mut kernel = BTreeSet::new();
    for c in &code.words {
        let x = spec.sub_vecs(c, c0);
        let invariant = elements.iter().all(|r| {
            let rx = spec.scale_vec(r, &x);
            code.words.iter().all(|w| code.words.contains(&spec.add_vecs(&rx, w)))
        });
        if invariant {
            kernel.insert(x);
        }
    }
    Ok(kernel)
}

/// ker(C) packaged as a submodule.
pub fn oracle_kernel(code: &ExplicitCode, budget: Budget) -> Result<Submodule> {
    let set = oracle_kernel_set(code, budget)?;
    Submodule::from_generators(&code.spec, code.n, set.into_iter().collect())
}

/// C is linear iff it equals its kernel.
pub fn oracle_is_linear(code: &ExplicitCode, budget: Budget) -> Result<bool> {
    Ok(oracle_kernel_set(code, budget)? == code.words)
}

/// { y in R^n : x . y = 0 for all x in `set` }.
pub fn oracle_annihilator(
    spec: &RingSpec,
    n: usize,
    set: &BTreeSet<RingVec>,
    budget: Budget,
) -> Result<BTreeSet<RingVec>> {
    let mut out = BTreeSet::new();
    for y in enumerate_vectors(spec, n, budget)? {
        let mut ok = true;
        for x in set {
            if !spec.dot(x, &y)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            out.insert(y);
        }
    }
    Ok(out)
}

/// eps(a) = exp(2 pi i sum_j a_j / t_j).
fn epsilon(spec: &RingSpec, a: &crate::ring::RingElem) -> Complex64 {
    let turns: f64 = a
        .residues()
        .iter()
        .zip(spec.factors())
        .map(|(&r, &t)| r as f64 / t as f64)
        .sum();
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

/// delta_C^(x) = sum_{c in C} eps(-x . c).
pub fn oracle_fourier(code: &ExplicitCode, x: &RingVec) -> Result<Complex64> {
    let spec = &code.spec;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in &code.words {
        acc += epsilon(spec, &spec.neg(&spec.dot(x, c)?)?);
    }
    Ok(acc)
}

/// f^(x) = sum_y f(y) eps(-x . y) by a full scan of R^n.
pub fn oracle_transform(
    spec: &RingSpec,
    n: usize,
    f: &dyn Fn(&RingVec) -> Complex64,
    x: &RingVec,
    budget: Budget,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for y in enumerate_vectors(spec, n, budget)? {
        acc += f(&y) * epsilon(spec, &spec.neg(&spec.dot(x, &y)?)?);
    }
    Ok(acc)
}

/// Entry i counts ordered pairs (c, c') with d(c, c') = i.
pub fn oracle_distance_distribution(code: &ExplicitCode, budget: Budget) -> Result<Vec<u128>> {
    code.check_pairs(budget)?;
    let mut hist = vec![0u128; code.n + 1];
    for a in &code.words {
        for b in &code.words {
            hist[code.spec.hamming(a, b)?] += 1;
        }
    }
    Ok(hist)
}

/// Entry i counts words of weight i.
pub fn oracle_weight_distribution(n: usize, set: &BTreeSet<RingVec>) -> Vec<u128> {
    let mut hist = vec![0u128; n + 1];
    for x in set {
        hist[x.weight()] += 1;
    }
    hist
}

/// The first coefficient vector r (in enumeration order) with
/// sum_i r_i rows_i = x.
pub fn oracle_solve(spec: &RingSpec, rows: &[RingVec], x: &RingVec, budget: Budget) -> Result<Option<RingVec>> {
    for r in enumerate_vectors(spec, rows.len(), budget)? {
        if combine(spec, &r, rows, x.len())? == *x {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// All r in R^m with sum_i r_i rows_i = 0.
pub fn oracle_syzygies(spec: &RingSpec, rows: &[RingVec], n: usize, budget: Budget) -> Result<BTreeSet<RingVec>> {
    let mut out = BTreeSet::new();
    for r in enumerate_vectors(spec, rows.len(), budget)? {
        if combine(spec, &r, rows, n)?.is_zero() {
            out.insert(r);
        }
    }
    Ok(out)
}

fn combine(spec: &RingSpec, r: &RingVec, rows: &[RingVec], n: usize) -> Result<RingVec> {
    let mut acc = spec.zero_vec(n);
    for (c, row) in r.coords().iter().zip(rows) {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: row.len(),
            });
        }
        acc = spec.add_vecs(&acc, &spec.scale_vec(c, row));
    }
    Ok(acc)
}

/// The three defining conditions of a parity check system, checked by
/// enumeration. Violations are reported in the same order and with the same
/// indices as the validating constructor, except that a condition (iii)
/// failure names the first failing relation in enumeration order.
pub fn oracle_check_pcs(spec: &RingSpec, h: &Matrix, s: &Matrix, budget: Budget) -> Result<()> {
    if h.nrows() != s.nrows() {
        return Err(Error::LengthMismatch {
            expected: h.nrows(),
            found: s.nrows(),
        });
    }
    if s.ncols() == 0 {
        return Err(Error::InvalidPresentation("S needs at least one column".into()));
    }
    let elements: Vec<_> = spec.elements().collect();
    // (i): the ideal generated by the entries of row i, by closure
    for i in 0..h.nrows() {
        let mut ideal = BTreeSet::from([spec.zero()]);
        for a in h.row(i).coords() {
            let multiples: Vec<_> = elements.iter().map(|r| spec.mul(r, a)).collect::<Result<_>>()?;
            ideal = ideal
                .iter()
                .flat_map(|x| multiples.iter().map(move |m| spec.add(x, m)))
                .collect::<Result<_>>()?;
        }
        for j in 0..s.ncols() {
            if !ideal.contains(s.entry(i, j)) {
                return Err(Error::ConditionIViolation { row: i, col: j });
            }
        }
    }
    // (ii)
    let cols = s.columns();
    let mut seen = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(&first) = seen.get(c) {
            return Err(Error::ConditionIIViolation { first, second: j });
        }
        seen.insert(c.clone(), j);
    }
    // (iii): every relation among the rows of H must kill the rows of S
    for r in oracle_syzygies(spec, h.rows(), h.ncols(), budget)? {
        if !combine(spec, &r, s.rows(), s.ncols())?.is_zero() {
            return Err(Error::ConditionIIIViolation { syzygy: r });
        }
    }
    Ok(())
}

/// Nearest codeword by exhaustive comparison. Returns the codeword and its
/// distance when it is the unique closest word within `radius`.
pub fn oracle_decode(
    code: &ExplicitCode,
    received: &RingVec,
    radius: usize,
) -> Result<Option<(RingVec, usize)>> {
    let mut best: Option<(RingVec, usize)> = None;
    let mut tie = false;
    for c in &code.words {
        let d = code.spec.hamming(c, received)?;
        match &best {
            Some((_, bd)) if d > *bd => {}
            Some((_, bd)) if d == *bd => tie = true,
            _ => {
                best = Some((c.clone(), d));
                tie = false;
            }
        }
    }
    Ok(best.filter(|(_, d)| *d <= radius && !tie))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_pcs() -> ParityCheckSystem {
        let r = RingSpec::zmod(6).unwrap();
        let h = Matrix::new(vec![r.vec_from_ints(&[1, 1, 3, 5]), r.vec_from_ints(&[0, 4, 2, 2])], 4).unwrap();
        let s = Matrix::new(vec![r.vec_from_ints(&[0, 1, 5]), r.vec_from_ints(&[0, 2, 4])], 3).unwrap();
        ParityCheckSystem::new(&r, h, s).unwrap()
    }

    #[test]
    fn worked_example_by_scan() {
        let r = RingSpec::zmod(6).unwrap();
        let code = oracle_code_from_pcs(&example_pcs(), Budget::DEFAULT).unwrap();
        assert_eq!(code.cardinality(), 216);
        assert_eq!(oracle_min_distance(&code, Budget::DEFAULT).unwrap(), 2);
        assert_eq!(
            oracle_distance_distribution(&code, Budget::DEFAULT).unwrap(),
            vec![216, 0, 6480, 17280, 22680]
        );
        let f = oracle_fourier(&code, &r.vec_from_ints(&[1, 3, 1, 3])).unwrap();
        assert!((f - Complex64::new(144.0, 0.0)).norm() < 1e-9);
        let f = oracle_fourier(&code, &r.zero_vec(4)).unwrap();
        assert!((f - Complex64::new(216.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn full_space_from_zero_checks() {
        let r = RingSpec::zmod(3).unwrap();
        let h = Matrix::new(vec![r.zero_vec(2)], 2).unwrap();
        let s = Matrix::new(vec![r.zero_vec(1)], 1).unwrap();
        let pcs = ParityCheckSystem::new(&r, h, s).unwrap();
        let code = oracle_code_from_pcs(&pcs, Budget::DEFAULT).unwrap();
        assert_eq!(code.cardinality(), 9);
        assert!(oracle_is_linear(&code, Budget::DEFAULT).unwrap());
    }

    #[test]
    fn span_annihilator_and_syzygies() {
        let r = RingSpec::zmod(4).unwrap();
        let span = oracle_span(&r, 2, &[r.vec_from_ints(&[2, 1])], Budget::DEFAULT).unwrap();
        assert_eq!(span.len(), 4);
        assert!(span.contains(&r.vec_from_ints(&[0, 2])));
        let ann = oracle_annihilator(&r, 2, &span, Budget::DEFAULT).unwrap();
        assert_eq!(ann.len(), 4);
        let syz = oracle_syzygies(&r, &[r.vec_from_ints(&[1, 1]), r.vec_from_ints(&[2, 2])], 2, Budget::DEFAULT).unwrap();
        assert_eq!(syz.len(), 4);
        let gens = oracle_generating_set(&r, 2, &ann, Budget::DEFAULT).unwrap();
        assert_eq!(oracle_span(&r, 2, &gens, Budget::DEFAULT).unwrap(), ann);
    }

    #[test]
    fn condition_checks_agree_with_constructor() {
        let r = RingSpec::zmod(6).unwrap();
        let h = Matrix::new(vec![r.vec_from_ints(&[1, 1, 3, 5]), r.vec_from_ints(&[0, 4, 2, 2])], 4).unwrap();
        let s = Matrix::new(vec![r.vec_from_ints(&[0, 1, 5]), r.vec_from_ints(&[0, 2, 3])], 3).unwrap();
        assert_eq!(
            oracle_check_pcs(&r, &h, &s, Budget::DEFAULT).unwrap_err(),
            Error::ConditionIViolation { row: 1, col: 2 }
        );
        let s = Matrix::new(vec![r.vec_from_ints(&[0, 1, 0]), r.vec_from_ints(&[0, 2, 0])], 3).unwrap();
        assert_eq!(
            oracle_check_pcs(&r, &h, &s, Budget::DEFAULT).unwrap_err(),
            Error::ConditionIIViolation { first: 0, second: 2 }
        );
    }

    #[test]
    fn budget_is_enforced() {
        let r = RingSpec::zmod(6).unwrap();
        let h = Matrix::new(vec![r.zero_vec(8)], 8).unwrap();
        let s = Matrix::new(vec![r.zero_vec(1)], 1).unwrap();
        let pcs = ParityCheckSystem::new(&r, h, s).unwrap();
        assert!(matches!(
            oracle_code_from_pcs(&pcs, Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
