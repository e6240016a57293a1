//! Exact arithmetic in R = Z_{t_1} x ... x Z_{t_k} and in the free module R^n.
//!
//! Every element is stored as its tuple of reduced residues, one per factor.
//! Factors are kept separate even when they are coprime: Z2xZ2 is not Z4, and
//! all linear algebra elsewhere in the crate works factor by factor.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest supported modulus. Products of two residues then fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Upper bound on the number of items an exhaustive enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub fn check(self, requested: u128) -> Result<()> {
        if requested > self.0 {
            Err(Error::BudgetExceeded {
                requested,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// The ambient ring, a finite product of integer residue rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    factors: Vec<u64>,
    cardinality: u64,
    character_order: u64,
}

impl RingSpec {
    pub fn new(factors: &[u64]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one factor".into()));
        }
        let mut cardinality: u64 = 1;
        let mut character_order: u64 = 1;
        for &t in factors {
            if t < 2 {
                return Err(Error::InvalidRing(format!("modulus {t} is smaller than 2")));
            }
            if t > MAX_MODULUS {
                return Err(Error::InvalidRing(format!(
                    "modulus {t} exceeds the supported maximum {MAX_MODULUS}"
                )));
            }
            cardinality = cardinality
                .checked_mul(t)
                .ok_or(Error::Overflow("ring cardinality"))?;
            character_order = character_order.lcm(&t);
        }
        Ok(RingSpec {
            factors: factors.to_vec(),
            cardinality,
            character_order,
        })
    }

    /// The integers modulo `t`.
    pub fn zmod(t: u64) -> Result<Self> {
        Self::new(&[t])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of factors k.
    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// |R|.
    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// lcm of the moduli; every additive character takes values in the L-th roots of unity.
    pub fn character_order(&self) -> u64 {
        self.character_order
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            residues: smallvec::smallvec![0; self.factors.len()],
        }
    }

    pub fn one(&self) -> RingElem {
        RingElem {
            residues: smallvec::smallvec![1; self.factors.len()],
        }
    }

    /// Builds an element from already reduced residues.
    pub fn elem(&self, residues: &[u64]) -> Result<RingElem> {
        if residues.len() != self.factors.len() {
            return Err(Error::RingMismatch {
                expected: self.factors.len(),
                found: residues.len(),
            });
        }
        for (&value, &modulus) in residues.iter().zip(&self.factors) {
            if value >= modulus {
                return Err(Error::ResidueOutOfRange { value, modulus });
            }
        }
        Ok(RingElem {
            residues: residues.iter().copied().collect(),
        })
    }

    /// The image of an integer under Z -> R.
    pub fn from_int(&self, value: i64) -> RingElem {
        RingElem {
            residues: self
                .factors
                .iter()
                .map(|&t| value.rem_euclid(t as i64) as u64)
                .collect(),
        }
    }

    /// Reduces arbitrary signed residues into an element.
    pub fn reduce(&self, residues: &[i64]) -> Result<RingElem> {
        if residues.len() != self.factors.len() {
            return Err(Error::RingMismatch {
                expected: self.factors.len(),
                found: residues.len(),
            });
        }
        Ok(RingElem {
            residues: residues
                .iter()
                .zip(&self.factors)
                .map(|(&v, &t)| v.rem_euclid(t as i64) as u64)
                .collect(),
        })
    }

    pub fn check_elem(&self, a: &RingElem) -> Result<()> {
        if a.residues.len() != self.factors.len() {
            return Err(Error::RingMismatch {
                expected: self.factors.len(),
                found: a.residues.len(),
            });
        }
        for (&value, &modulus) in a.residues.iter().zip(&self.factors) {
            if value >= modulus {
                return Err(Error::ResidueOutOfRange { value, modulus });
            }
        }
        Ok(())
    }

    pub fn check_vec(&self, x: &RingVec) -> Result<()> {
        x.coords.iter().try_for_each(|a| self.check_elem(a))
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn neg(&self, a: &RingElem) -> Result<RingElem> {
        self.check_elem(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((&x, &y), &t)| add_mod(x, y, t))
                .collect(),
        }
    }

    pub(crate) fn neg_unchecked(&self, a: &RingElem) -> RingElem {
        RingElem {
            residues: a
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &t)| neg_mod(x, t))
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((&x, &y), &t)| add_mod(x, neg_mod(y, t), t))
                .collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((&x, &y), &t)| mul_mod(x, y, t))
                .collect(),
        }
    }

    /// x . y = x_1 y_1 + ... + x_n y_n.
    pub fn dot(&self, x: &RingVec, y: &RingVec) -> Result<RingElem> {
        same_len(x, y)?;
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.dot_unchecked(x, y))
    }

    pub(crate) fn dot_unchecked(&self, x: &RingVec, y: &RingVec) -> RingElem {
        let mut acc = self.zero();
        for (a, b) in x.coords.iter().zip(&y.coords) {
            for (f, &t) in self.factors.iter().enumerate() {
                acc.residues[f] = add_mod(acc.residues[f], mul_mod(a.residues[f], b.residues[f], t), t);
            }
        }
        acc
    }

    /// Hamming distance d(x, y) = wt(x - y).
    pub fn hamming(&self, x: &RingVec, y: &RingVec) -> Result<usize> {
        same_len(x, y)?;
        Ok(x.coords.iter().zip(&y.coords).filter(|(a, b)| a != b).count())
    }

    /// Hamming weight, the size of the support.
    pub fn weight(&self, x: &RingVec) -> usize {
        x.weight()
    }

    /// Every element of R in odometer order (last factor fastest).
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let total = self.cardinality;
        (0..total).map(move |mut idx| {
            let mut residues: SmallVec<[u64; 4]> = smallvec::smallvec![0; self.factors.len()];
            for (f, &t) in self.factors.iter().enumerate().rev() {
                residues[f] = idx % t;
                idx /= t;
            }
            RingElem { residues }
        })
    }

    pub fn zero_vec(&self, n: usize) -> RingVec {
        RingVec {
            coords: vec![self.zero(); n],
        }
    }

    /// Parses `5` (single factor) or `(1,2)` (several factors).
    pub fn parse_elem(&self, text: &str) -> Result<RingElem> {
        let text = text.trim();
        let body = match text.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidRing(format!("unbalanced element literal `{text}`")))?,
            None => text,
        };
        let residues = body
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidRing(format!("bad residue `{}` in `{text}`", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if residues.len() != self.factors.len() {
            return Err(Error::RingMismatch {
                expected: self.factors.len(),
                found: residues.len(),
            });
        }
        for (&v, &t) in residues.iter().zip(&self.factors) {
            if v < 0 || v as u64 >= t {
                return Err(Error::ResidueOutOfRange {
                    value: v.unsigned_abs(),
                    modulus: t,
                });
            }
        }
        self.reduce(&residues)
    }

    /// Builds a vector from a flat list of integers, one per coordinate, for
    /// single-factor rings.
    pub fn vec_from_ints(&self, values: &[i64]) -> RingVec {
        RingVec {
            coords: values.iter().map(|&v| self.from_int(v)).collect(),
        }
    }

    /// Projection of `x` onto factor `f`: the residues of each coordinate.
    pub fn component(&self, x: &RingVec, f: usize) -> Vec<u64> {
        x.coords.iter().map(|a| a.residues[f]).collect()
    }

    /// Inverse of [`RingSpec::component`]: glues one residue vector per factor.
    pub fn from_components(&self, components: &[Vec<u64>]) -> RingVec {
        debug_assert_eq!(components.len(), self.factors.len());
        let n = components.first().map_or(0, Vec::len);
        RingVec {
            coords: (0..n)
                .map(|j| RingElem {
                    residues: components.iter().map(|c| c[j]).collect(),
                })
                .collect(),
        }
    }

    pub fn add_vecs(&self, x: &RingVec, y: &RingVec) -> RingVec {
        assert_eq!(x.len(), y.len(), "vector length mismatch");
        RingVec {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| self.add_unchecked(a, b))
                .collect(),
        }
    }

    pub fn sub_vecs(&self, x: &RingVec, y: &RingVec) -> RingVec {
        assert_eq!(x.len(), y.len(), "vector length mismatch");
        RingVec {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| self.sub_unchecked(a, b))
                .collect(),
        }
    }

    pub fn neg_vec(&self, x: &RingVec) -> RingVec {
        RingVec {
            coords: x.coords.iter().map(|a| self.neg_unchecked(a)).collect(),
        }
    }

    pub fn scale_vec(&self, r: &RingElem, x: &RingVec) -> RingVec {
        RingVec {
            coords: x.coords.iter().map(|a| self.mul_unchecked(r, a)).collect(),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|t| format!("Z{t}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Ring literals: `Z6`, `Z2xZ3`, `z4xz4`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .trim()
            .split(['x', 'X'])
            .map(|part| {
                let part = part.trim();
                let digits = part
                    .strip_prefix('Z')
                    .or_else(|| part.strip_prefix('z'))
                    .ok_or_else(|| Error::InvalidRing(format!("bad ring factor `{part}`")))?;
                digits
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidRing(format!("bad modulus in `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        RingSpec::new(&factors)
    }
}

/// An element of R as its residues, one per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    residues: SmallVec<[u64; 4]>,
}

impl RingElem {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            write!(f, "{}", self.residues[0])
        } else {
            let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// An element of R^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingVec {
    coords: Vec<RingElem>,
}

impl RingVec {
    pub fn new(coords: Vec<RingElem>) -> Self {
        RingVec { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[RingElem] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RingElem::is_zero)
    }

    /// |supp(x)|.
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for RingVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(RingElem::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromIterator<RingElem> for RingVec {
    fn from_iter<I: IntoIterator<Item = RingElem>>(iter: I) -> Self {
        RingVec {
            coords: iter.into_iter().collect(),
        }
    }
}

/// A matrix over R stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<RingVec>,
    ncols: usize,
}

impl Matrix {
    pub fn new(rows: Vec<RingVec>, ncols: usize) -> Result<Self> {
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
        }
        Ok(Matrix { rows, ncols })
    }

    pub fn from_columns(columns: &[RingVec], nrows: usize) -> Result<Self> {
        for col in columns {
            if col.len() != nrows {
                return Err(Error::LengthMismatch {
                    expected: nrows,
                    found: col.len(),
                });
            }
        }
        let rows = (0..nrows)
            .map(|i| columns.iter().map(|c| c.coords[i].clone()).collect())
            .collect();
        Ok(Matrix {
            rows,
            ncols: columns.len(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RingVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RingVec {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.rows[i].coords[j]
    }

    pub fn column(&self, j: usize) -> RingVec {
        self.rows.iter().map(|r| r.coords[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<RingVec> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// H x^T as a column vector of length `nrows`.
    pub fn mul_vec(&self, spec: &RingSpec, x: &RingVec) -> Result<RingVec> {
        if x.len() != self.ncols {
            return Err(Error::LengthMismatch {
                expected: self.ncols,
                found: x.len(),
            });
        }
        Ok(self.mul_vec_unchecked(spec, x))
    }

    pub(crate) fn mul_vec_unchecked(&self, spec: &RingSpec, x: &RingVec) -> RingVec {
        self.rows.iter().map(|r| spec.dot_unchecked(r, x)).collect()
    }
}

/// Exhaustive enumeration of R^n in odometer order: coordinates left to
/// right, last coordinate fastest, each coordinate running through
/// [`RingSpec::elements`]. The order coincides with the derived `Ord` on
/// [`RingVec`].
pub fn enumerate_vectors(spec: &RingSpec, n: usize, budget: Budget) -> Result<VectorIter> {
    let total = (spec.cardinality() as u128)
        .checked_pow(n as u32)
        .ok_or(Error::Overflow("|R|^n"))?;
    budget.check(total)?;
    Ok(VectorIter {
        elements: spec.elements().collect(),
        digits: vec![0; n],
        remaining: total,
    })
}

/// Iterator returned by [`enumerate_vectors`].
#[derive(Debug, Clone)]
pub struct VectorIter {
    elements: Vec<RingElem>,
    digits: Vec<usize>,
    remaining: u128,
}

impl Iterator for VectorIter {
    type Item = RingVec;

    fn next(&mut self) -> Option<RingVec> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out: RingVec = self.digits.iter().map(|&d| self.elements[d].clone()).collect();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.elements.len() {
                break;
            }
            *d = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

fn same_len(x: &RingVec, y: &RingVec) -> Result<()> {
    if x.len() != y.len() {
        Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        })
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, t: u64) -> u64 {
    let s = a + b;
    if s >= t {
        s - t
    } else {
        s
    }
}

#[inline]
pub(crate) fn neg_mod(a: u64, t: u64) -> u64 {
    if a == 0 {
        0
    } else {
        t - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, t: u64) -> u64 {
    ((a as u128 * b as u128) % t as u128) as u64
}
