//! Characters of R^n and Fourier coefficients of code indicators.
//!
//! The generating character is fixed to eps(y) = exp(2 pi i sum_j y_j / t_j),
//! the product of the canonical characters of the factors. All of its values
//! are powers of zeta = exp(2 pi i / L) with L = lcm(t_j), so character sums
//! are kept exactly as integer multiplicities of each power of zeta and only
//! turned into complex numbers on output.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::pcs::{CodePresentation, ParityCheckSystem};
use crate::ring::{enumerate_vectors, Budget, RingElem, RingSpec, RingVec};

/// An exact element sum_k counts[k] zeta^k of Z[zeta_L].
///
/// Only nonzero multiplicities are stored. Two sums with different counts can
/// still have the same value (1 + zeta + ... + zeta^{L-1} = 0), so equality
/// of values is tested with [`ExponentSum::approx_eq`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSum {
    order: u64,
    counts: BTreeMap<u64, i128>,
}

impl ExponentSum {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        ExponentSum {
            order,
            counts: BTreeMap::new(),
        }
    }

    /// zeta^exponent.
    pub fn root(order: u64, exponent: u64) -> Self {
        let mut s = Self::zero(order);
        s.add_term(exponent, 1);
        s
    }

    pub fn integer(order: u64, value: i128) -> Self {
        let mut s = Self::zero(order);
        s.add_term(0, value);
        s
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Nonzero multiplicities by exponent.
    pub fn counts(&self) -> &BTreeMap<u64, i128> {
        &self.counts
    }

    /// True when no term survives; a sum whose terms cancel only through
    /// cyclotomic relations is not reported as zero here.
    pub fn is_trivially_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn add_term(&mut self, exponent: u64, count: i128) {
        if count == 0 {
            return;
        }
        let e = exponent % self.order;
        let entry = self.counts.entry(e).or_insert(0);
        *entry += count;
        if *entry == 0 {
            self.counts.remove(&e);
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order, other.order, "exponent sums over different roots of unity");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        let mut out = self.clone();
        for (&e, &c) in &other.counts {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExponentSum {
            order: self.order,
            counts: self.counts.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cyclic convolution of the multiplicities.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let mut out = Self::zero(self.order);
        for (&a, &ca) in &self.counts {
            for (&b, &cb) in &other.counts {
                out.add_term((a as u128 + b as u128) as u64 % self.order, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: i128) -> Self {
        let mut out = Self::zero(self.order);
        for (&e, &c) in &self.counts {
            out.add_term(e, c * factor);
        }
        out
    }

    /// Complex conjugate: zeta^k -> zeta^{-k}.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&e, &c) in &self.counts {
            out.add_term((self.order - e) % self.order, c);
        }
        out
    }

    /// |v|^2 = v * conj(v), still exact.
    pub fn norm_sqr(&self) -> Self {
        self.mul(&self.conj())
    }

    pub fn eval(&self) -> Complex64 {
        self.counts
            .iter()
            .map(|(&e, &c)| {
                let angle = 2.0 * PI * (e as f64) / (self.order as f64);
                Complex64::new(angle.cos(), angle.sin()) * c as f64
            })
            .sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.eval() - other.eval()).norm() <= tol
    }

    /// Tr(v) / phi(L) as a reduced fraction (numerator, denominator), where
    /// Tr is the trace from Q(zeta_L) to Q. It equals v whenever v is a
    /// rational number. The trace of zeta^k is the Ramanujan sum
    /// mu(d) phi(L) / phi(d) with d = L / gcd(k, L).
    pub fn rational_part(&self) -> (i128, i128) {
        let l = self.order;
        let phi_l = totient(l) as i128;
        let mut trace: i128 = 0;
        for (&e, &c) in &self.counts {
            let d = l / e.gcd(&l);
            let mu = mobius(d) as i128;
            if mu != 0 {
                trace += c * mu * (phi_l / totient(d) as i128);
            }
        }
        let g = trace.gcd(&phi_l);
        (trace / g, phi_l / g)
    }

    /// The value as an integer, when the sum is a rational integer. The exact
    /// trace route is confirmed against floating point evaluation so that a
    /// non-rational sum is reported as `None` instead of as its trace.
    pub fn to_integer(&self) -> Option<i128> {
        let (num, den) = self.rational_part();
        if den != 1 {
            return None;
        }
        let value = self.eval();
        let scale = (num as f64).abs().max(1.0);
        ((value.re - num as f64).abs() <= 1e-9 * scale && value.im.abs() <= 1e-9 * scale).then_some(num)
    }
}

impl fmt::Display for ExponentSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .counts
            .iter()
            .map(|(&e, &c)| if e == 0 { format!("{c}") } else { format!("{c}*z^{e}") })
            .collect();
        write!(f, "{} (z = exp(2 pi i/{}))", terms.join(" + "), self.order)
    }
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The generating character eps of R, evaluated as an exponent of zeta_L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    order: u64,
    weights: Vec<u64>,
}

impl Character {
    /// Root of unity order L.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// eps(y) = zeta_L^{sum_j y_j L / t_j}; the returned value is the exponent.
    pub fn exponent(&self, y: &RingElem) -> u64 {
        y.residues()
            .iter()
            .zip(&self.weights)
            .fold(0u64, |acc, (&r, &w)| ((acc as u128 + r as u128 * w as u128) % self.order as u128) as u64)
    }

    pub fn value(&self, y: &RingElem) -> Complex64 {
        let angle = 2.0 * PI * self.exponent(y) as f64 / self.order as f64;
        Complex64::new(angle.cos(), angle.sin())
    }
}

pub fn generating_character(spec: &RingSpec) -> Character {
    let order = spec.character_order();
    Character {
        order,
        weights: spec.factors().iter().map(|&t| order / t).collect(),
    }
}

/// chi_x(y) = eps(x . y), as an exponent of zeta_L.
pub fn character_value(spec: &RingSpec, x: &RingVec, y: &RingVec) -> Result<u64> {
    let dot = spec.dot(x, y)?;
    Ok(generating_character(spec).exponent(&dot))
}

fn check_len(expected: usize, x: &RingVec) -> Result<()> {
    if x.len() != expected {
        Err(Error::LengthMismatch {
            expected,
            found: x.len(),
        })
    } else {
        Ok(())
    }
}

/// delta_C^(x) from a coset decomposition: |D_C| sum_j eps(-x . d_j) when x
/// lies in D_C^perp, zero otherwise.
pub fn fourier_coeff_coset(pres: &CodePresentation, x: &RingVec) -> Result<ExponentSum> {
    let spec = pres.spec();
    check_len(pres.len(), x)?;
    spec.check_vec(x)?;
    let eps = generating_character(spec);
    let in_dual = pres
        .kernel()
        .canonical_generators()
        .iter()
        .all(|g| spec.dot_unchecked(g, x).is_zero());
    if !in_dual {
        return Ok(ExponentSum::zero(eps.order()));
    }
    Ok(coset_sum(pres, &eps, x))
}

fn coset_sum(pres: &CodePresentation, eps: &Character, x: &RingVec) -> ExponentSum {
    let spec = pres.spec();
    let mut sum = ExponentSum::zero(eps.order());
    for d in pres.reps() {
        let e = eps.exponent(&spec.neg_unchecked(&spec.dot_unchecked(x, d)));
        sum.add_term(e, 1);
    }
    sum.scale(pres.kernel().cardinality() as i128)
}

/// A vector x = sum_i r_i h_i of <rows(H)> with its image
/// S_x = sum_i r_i S_row(i), which condition (iii) makes independent of r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCombination {
    pub coefficients: RingVec,
    pub s_x: RingVec,
}

pub fn row_combination(pcs: &ParityCheckSystem, x: &RingVec) -> Result<Option<RowCombination>> {
    check_len(pcs.len(), x)?;
    let Some(r) = pcs.row_solver().solve(x)? else {
        return Ok(None);
    };
    Ok(Some(RowCombination {
        s_x: s_image(pcs, &r),
        coefficients: r,
    }))
}

/// sum_i r_i S_row(i) for arbitrary coefficients r.
pub fn s_image(pcs: &ParityCheckSystem, r: &RingVec) -> RingVec {
    let spec = pcs.spec();
    let mut acc = spec.zero_vec(pcs.num_cosets());
    for (c, row) in r.coords().iter().zip(pcs.s().rows()) {
        acc = spec.add_vecs(&acc, &spec.scale_vec(c, row));
    }
    acc
}

/// delta_C^(x) from (H|S): (|R|^n / |<rows(H)>|) sum_j eps(-S_x(j)) when x
/// lies in <rows(H)>, zero otherwise.
pub fn fourier_coeff_pcs(pcs: &ParityCheckSystem, x: &RingVec) -> Result<ExponentSum> {
    let spec = pcs.spec();
    let eps = generating_character(spec);
    let Some(comb) = row_combination(pcs, x)? else {
        return Ok(ExponentSum::zero(eps.order()));
    };
    let total = (spec.cardinality() as u128)
        .checked_pow(pcs.len() as u32)
        .ok_or(Error::Overflow("|R|^n"))?;
    let factor = total / pcs.row_span().cardinality();
    let mut sum = ExponentSum::zero(eps.order());
    for a in comb.s_x.coords() {
        sum.add_term(eps.exponent(&spec.neg_unchecked(a)), 1);
    }
    Ok(sum.scale(i128::try_from(factor).map_err(|_| Error::Overflow("|D_C|"))?))
}

/// Right-hand side of the Poisson summation formula over a coset
/// decomposition:
///
/// sum_{c in C} f(c) = |R|^{-n} sum_{x in D_C^perp} f^(x) delta_{-C}^(x).
///
/// `f_hat` defaults to the direct transform f^(x) = sum_y f(y) chi_x(-y),
/// which scans R^n once per dual element and is budgeted accordingly.
pub fn poisson_sum(
    pres: &CodePresentation,
    f: &dyn Fn(&RingVec) -> Complex64,
    f_hat: Option<&dyn Fn(&RingVec) -> Complex64>,
    budget: Budget,
) -> Result<Complex64> {
    let spec = pres.spec();
    let n = pres.len();
    let dual = pres.kernel().annihilator();
    let negated = pres.negated();
    let total = (spec.cardinality() as u128)
        .checked_pow(n as u32)
        .ok_or(Error::Overflow("|R|^n"))?;

    let direct;
    let transform: &dyn Fn(&RingVec) -> Complex64 = match f_hat {
        Some(g) => g,
        None => {
            budget.check(total.saturating_mul(dual.cardinality()))?;
            let points: Vec<(RingVec, Complex64)> = enumerate_vectors(spec, n, budget)?.map(|y| {
                let v = f(&y);
                (y, v)
            }).collect();
            let eps = generating_character(spec);
            let roots: Vec<Complex64> = (0..eps.order())
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / eps.order() as f64))
                .collect();
            direct = move |x: &RingVec| -> Complex64 {
                // group the terms by the exponent of eps(-x . y) first
                let mut bins = vec![Complex64::new(0.0, 0.0); roots.len()];
                for (y, v) in &points {
                    let e = eps.exponent(&spec.dot_unchecked(x, y)) as usize;
                    bins[(roots.len() - e) % roots.len()] += v;
                }
                bins.iter().zip(&roots).map(|(b, r)| b * r).sum()
            };
            &direct
        }
    };

    let eps = generating_character(spec);
    let mut acc = Complex64::new(0.0, 0.0);
    for x in dual.enumerate(budget)? {
        // -C has the same partial kernel, so x is in its dual
        let coeff = coset_sum(&negated, &eps, &x);
        acc += transform(&x) * coeff.eval();
    }
    Ok(acc / total as f64)
}
