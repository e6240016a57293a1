//! Submodules of R^n in canonical form, plus the linear solves every theorem
//! leans on: annihilators, syzygies and preimages.
//!
//! A submodule of R^n splits as the product of its projections onto the
//! factors Z_{t_i}^n, so each factor carries its own Howell form and every
//! computation runs factor by factor.

use crate::error::{Error, Result};
use crate::howell::{kernel_of_rows, Howell, LeftSolver};
use crate::ring::{add_mod, mul_mod, Budget, Matrix, RingSpec, RingVec};

#[derive(Debug, Clone)]
pub struct Submodule {
    spec: RingSpec,
    n: usize,
    generators: Vec<RingVec>,
    canonical: Vec<Howell>,
    cardinality: u128,
}

impl Submodule {
    /// The span <x_1, ..., x_t> of the given vectors.
    pub fn from_generators(spec: &RingSpec, n: usize, generators: Vec<RingVec>) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            spec.check_vec(g)?;
        }
        let canonical: Vec<Howell> = spec
            .factors()
            .iter()
            .enumerate()
            .map(|(f, &t)| Howell::new(t, n, generators.iter().map(|g| spec.component(g, f))))
            .collect();
        let cardinality = canonical.iter().try_fold(1u128, |acc, h| {
            h.cardinality().and_then(|c| acc.checked_mul(c))
        });
        Ok(Submodule {
            spec: spec.clone(),
            n,
            generators,
            canonical,
            cardinality: cardinality.ok_or(Error::Overflow("submodule cardinality"))?,
        })
    }

    pub fn trivial(spec: &RingSpec, n: usize) -> Self {
        Self::from_generators(spec, n, Vec::new()).expect("empty generating set")
    }

    /// R^n itself, generated by the unit vectors.
    pub fn full(spec: &RingSpec, n: usize) -> Result<Self> {
        let gens = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { spec.one() } else { spec.zero() })
                    .collect()
            })
            .collect();
        Self::from_generators(spec, n, gens)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn ambient_len(&self) -> usize {
        self.n
    }

    /// The generators exactly as supplied.
    pub fn generators(&self) -> &[RingVec] {
        &self.generators
    }

    /// Per-factor Howell forms.
    pub fn canonical(&self) -> &[Howell] {
        &self.canonical
    }

    pub fn cardinality(&self) -> u128 {
        self.cardinality
    }

    /// A generating set read off the canonical form. Row k of every factor's
    /// Howell form is glued into one vector, which is enough because R acts on
    /// each factor independently.
    pub fn canonical_generators(&self) -> Vec<RingVec> {
        let count = self.canonical.iter().map(|h| h.rows().len()).max().unwrap_or(0);
        (0..count)
            .map(|k| {
                let comps: Vec<Vec<u64>> = self
                    .canonical
                    .iter()
                    .map(|h| h.rows().get(k).cloned().unwrap_or_else(|| vec![0; self.n]))
                    .collect();
                self.spec.from_components(&comps)
            })
            .collect()
    }

    fn check_member_shape(&self, x: &RingVec) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        self.spec.check_vec(x)
    }

    pub fn contains(&self, x: &RingVec) -> Result<bool> {
        self.check_member_shape(x)?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &RingVec) -> bool {
        self.canonical
            .iter()
            .enumerate()
            .all(|(f, h)| h.contains(&self.spec.component(x, f)))
    }

    /// Reduced representative of the coset x + D; equal for x and y iff
    /// x - y lies in D.
    pub fn coset_representative(&self, x: &RingVec) -> Result<RingVec> {
        self.check_member_shape(x)?;
        let comps: Vec<Vec<u64>> = self
            .canonical
            .iter()
            .enumerate()
            .map(|(f, h)| h.normal_form(&self.spec.component(x, f)))
            .collect();
        Ok(self.spec.from_components(&comps))
    }

    /// D^perp = { y : x . y = 0 for all x in D }, the kernel of the
    /// generator matrix taken factor by factor.
    pub fn annihilator(&self) -> Submodule {
        let mut per_factor: Vec<Vec<Vec<u64>>> = Vec::with_capacity(self.canonical.len());
        for h in &self.canonical {
            // y with G y = 0 are the relations among the columns of G
            let columns: Vec<Vec<u64>> = (0..self.n)
                .map(|j| h.rows().iter().map(|row| row[j]).collect())
                .collect();
            per_factor.push(kernel_of_rows(h.modulus(), h.rows().len(), &columns));
        }
        let gens = glue_rows(&self.spec, self.n, &per_factor);
        Submodule::from_generators(&self.spec, self.n, gens).expect("annihilator has ambient shape")
    }

    /// D + E.
    pub fn join(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let mut gens = self.canonical_generators();
        gens.extend(other.canonical_generators());
        Submodule::from_generators(&self.spec, self.n, gens)
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.canonical_generators().iter().all(|g| other.contains_unchecked(g)))
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::RingMismatch {
                expected: self.spec.num_factors(),
                found: other.spec.num_factors(),
            });
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Every element exactly once, as sum_k a_k row_k over the Howell rows of
    /// each factor with a_k below the row's additive order.
    pub fn enumerate(&self, budget: Budget) -> Result<SubmoduleIter<'_>> {
        budget.check(self.cardinality)?;
        let mut orders = Vec::new();
        let mut slots = Vec::new();
        for (f, h) in self.canonical.iter().enumerate() {
            for (k, o) in h.row_orders().into_iter().enumerate() {
                orders.push(o);
                slots.push((f, k));
            }
        }
        Ok(SubmoduleIter {
            module: self,
            digits: vec![0; orders.len()],
            orders,
            slots,
            remaining: self.cardinality,
        })
    }
}

impl PartialEq for Submodule {
    /// Equality of the underlying sets, decided on the canonical forms.
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.n == other.n && self.canonical == other.canonical
    }
}

impl Eq for Submodule {}

pub struct SubmoduleIter<'a> {
    module: &'a Submodule,
    orders: Vec<u64>,
    slots: Vec<(usize, usize)>,
    digits: Vec<u64>,
    remaining: u128,
}

impl Iterator for SubmoduleIter<'_> {
    type Item = RingVec;

    fn next(&mut self) -> Option<RingVec> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let m = self.module;
        let mut comps: Vec<Vec<u64>> = vec![vec![0; m.n]; m.canonical.len()];
        for (&digit, &(f, k)) in self.digits.iter().zip(&self.slots) {
            if digit == 0 {
                continue;
            }
            let t = m.canonical[f].modulus();
            let row = &m.canonical[f].rows()[k];
            for (c, &r) in comps[f].iter_mut().zip(row) {
                *c = add_mod(*c, mul_mod(digit, r, t), t);
            }
        }
        for (d, &o) in self.digits.iter_mut().zip(&self.orders).rev() {
            *d += 1;
            if *d < o {
                break;
            }
            *d = 0;
        }
        Some(m.spec.from_components(&comps))
    }
}

/// Glues per-factor lists of generators (each of length `n`) into vectors of
/// R^n, padding shorter lists with zero rows.
fn glue_rows(spec: &RingSpec, n: usize, per_factor: &[Vec<Vec<u64>>]) -> Vec<RingVec> {
    let count = per_factor.iter().map(Vec::len).max().unwrap_or(0);
    (0..count)
        .map(|k| {
            let comps: Vec<Vec<u64>> = per_factor
                .iter()
                .map(|rows| rows.get(k).cloned().unwrap_or_else(|| vec![0; n]))
                .collect();
            spec.from_components(&comps)
        })
        .collect()
}

fn check_rows(spec: &RingSpec, rows: &[RingVec], n: usize) -> Result<()> {
    for row in rows {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: row.len(),
            });
        }
        spec.check_vec(row)?;
    }
    Ok(())
}

/// The relation module {r in R^m : sum_i r_i rows_i = 0} of m rows of
/// length `n`.
pub fn syzygies(spec: &RingSpec, rows: &[RingVec], n: usize) -> Result<Submodule> {
    check_rows(spec, rows, n)?;
    let m = rows.len();
    let per_factor: Vec<Vec<Vec<u64>>> = spec
        .factors()
        .iter()
        .enumerate()
        .map(|(f, &t)| {
            let comps: Vec<Vec<u64>> = rows.iter().map(|r| spec.component(r, f)).collect();
            kernel_of_rows(t, n, &comps)
        })
        .collect();
    Submodule::from_generators(spec, m, glue_rows(spec, m, &per_factor))
}

/// Reusable solver for sum_i r_i rows_i = x with the rows fixed.
#[derive(Debug, Clone)]
pub struct LinearSolver {
    spec: RingSpec,
    n: usize,
    per_factor: Vec<LeftSolver>,
}

impl LinearSolver {
    pub fn new(spec: &RingSpec, rows: &[RingVec], n: usize) -> Result<Self> {
        check_rows(spec, rows, n)?;
        let per_factor = spec
            .factors()
            .iter()
            .enumerate()
            .map(|(f, &t)| {
                let comps: Vec<Vec<u64>> = rows.iter().map(|r| spec.component(r, f)).collect();
                LeftSolver::new(t, n, &comps)
            })
            .collect();
        Ok(LinearSolver {
            spec: spec.clone(),
            n,
            per_factor,
        })
    }

    /// Coefficients r in R^m with sum_i r_i rows_i = x, or `None` when x is
    /// outside the span.
    pub fn solve(&self, x: &RingVec) -> Result<Option<RingVec>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        self.spec.check_vec(x)?;
        Ok(self.solve_unchecked(x))
    }

    pub(crate) fn solve_unchecked(&self, x: &RingVec) -> Option<RingVec> {
        let mut comps = Vec::with_capacity(self.per_factor.len());
        for (f, solver) in self.per_factor.iter().enumerate() {
            comps.push(solver.solve(&self.spec.component(x, f))?);
        }
        Some(self.spec.from_components(&comps))
    }
}

/// Coefficients r with sum_i r_i rows_i = x.
pub fn solve_left(spec: &RingSpec, rows: &[RingVec], n: usize, x: &RingVec) -> Result<Option<RingVec>> {
    LinearSolver::new(spec, rows, n)?.solve(x)
}

/// One x with H x^T = b, or `None` when b is outside the column span of H.
pub fn solve_right(spec: &RingSpec, h: &Matrix, b: &RingVec) -> Result<Option<RingVec>> {
    if b.len() != h.nrows() {
        return Err(Error::LengthMismatch {
            expected: h.nrows(),
            found: b.len(),
        });
    }
    ColumnSolver::new(spec, h)?.solve(b)
}

/// Preimages under x -> H x^T for a fixed H, found as coefficient vectors
/// over the columns of H.
#[derive(Debug, Clone)]
pub struct ColumnSolver {
    inner: LinearSolver,
}

impl ColumnSolver {
    pub fn new(spec: &RingSpec, h: &Matrix) -> Result<Self> {
        Ok(ColumnSolver {
            inner: LinearSolver::new(spec, &h.columns(), h.nrows())?,
        })
    }

    pub fn solve(&self, b: &RingVec) -> Result<Option<RingVec>> {
        self.inner.solve(b)
    }

    pub(crate) fn solve_unchecked(&self, b: &RingVec) -> Option<RingVec> {
        self.inner.solve_unchecked(b)
    }
}
