//! Distance and weight enumerators computed from a parity check system.
//!
//! N((H|S); x, y) collects |delta_C^(h)|^2 over h in <rows(H)> by weight of h.
//! The distance enumerator is then
//!
//! D(C; x, y) = |R|^{-n} N((H|S); x + (|R|-1) y, x - y).
//!
//! Every weight bin of N is a rational integer (the bins are stable under the
//! unit group of R, which acts on the values as the Galois group), so the
//! whole computation stays in exact integer arithmetic.

use std::fmt;

use crate::error::{Error, Result};
use crate::fourier::{fourier_coeff_pcs, generating_character, ExponentSum};
use crate::pcs::ParityCheckSystem;
use crate::ring::Budget;
use crate::submodule::Submodule;

/// sum_i coeffs[i] x^{n-i} y^i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnumeratorPoly {
    coeffs: Vec<i128>,
}

impl EnumeratorPoly {
    /// `coeffs[i]` is the coefficient of x^{n-i} y^i, so n = coeffs.len() - 1.
    pub fn new(coeffs: Vec<i128>) -> Self {
        assert!(!coeffs.is_empty(), "an enumerator needs at least one coefficient");
        EnumeratorPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Value at integer (x, y), with 0^0 = 1.
    pub fn eval(&self, x: i128, y: i128) -> i128 {
        let n = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * x.pow(n - i as u32) * y.pow(i as u32))
            .sum()
    }

    /// P(x + (q-1) y, x - y), without normalization.
    pub fn substitute(&self, q: u64) -> Result<EnumeratorPoly> {
        let n = self.degree();
        let q = q as i128;
        let plus = [1i128, q - 1];
        let minus = [1i128, -1];
        let mut out = vec![0i128; n + 1];
        for (w, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = vec![c];
            for _ in 0..n - w {
                term = poly_mul(&term, &plus)?;
            }
            for _ in 0..w {
                term = poly_mul(&term, &minus)?;
            }
            for (o, t) in out.iter_mut().zip(term) {
                *o = o.checked_add(t).ok_or(Error::Overflow("enumerator substitution"))?;
            }
        }
        Ok(EnumeratorPoly { coeffs: out })
    }

    /// Exact division of every coefficient; a remainder is reported at the
    /// first offending weight.
    pub fn divide_exact(&self, divisor: i128) -> Result<EnumeratorPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if c % divisor == 0 {
                    Ok(c / divisor)
                } else {
                    Err(Error::NonIntegerCoefficient {
                        weight: i,
                        value: c as f64 / divisor as f64,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EnumeratorPoly { coeffs })
    }
}

fn poly_mul(a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let p = x.checked_mul(y).ok_or(Error::Overflow("enumerator substitution"))?;
            out[i + j] = out[i + j].checked_add(p).ok_or(Error::Overflow("enumerator substitution"))?;
        }
    }
    Ok(out)
}

impl fmt::Display for EnumeratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let monomial = |var: &str, e: usize| match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let vars: Vec<String> = [monomial("x", n - i), monomial("y", i)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            terms.push(if vars.is_empty() {
                c.to_string()
            } else {
                format!("{c}*{}", vars.join("*"))
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// N((H|S); x, y) = sum over h in <rows(H)> of |delta_C^(h)|^2 x^{n-wt h} y^{wt h}.
pub fn pcs_enumerator_poly(pcs: &ParityCheckSystem, budget: Budget) -> Result<EnumeratorPoly> {
    let n = pcs.len();
    let order = generating_character(pcs.spec()).order();
    let mut bins = vec![ExponentSum::zero(order); n + 1];
    for h in pcs.row_span().enumerate(budget)? {
        let coeff = fourier_coeff_pcs(pcs, &h)?;
        let w = h.weight();
        bins[w] = bins[w].add(&coeff.norm_sqr());
    }
    let coeffs = bins
        .iter()
        .enumerate()
        .map(|(w, bin)| {
            bin.to_integer().ok_or_else(|| Error::NonIntegerCoefficient {
                weight: w,
                value: bin.eval().re,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnumeratorPoly { coeffs })
}

fn space_size(q: u64, n: usize) -> Result<i128> {
    (q as i128).checked_pow(n as u32).ok_or(Error::Overflow("|R|^n"))
}

/// D(C; x, y): coefficient i counts ordered pairs of codewords at distance i.
pub fn distance_distribution(pcs: &ParityCheckSystem, budget: Budget) -> Result<EnumeratorPoly> {
    let q = pcs.spec().cardinality();
    let n_poly = pcs_enumerator_poly(pcs, budget)?;
    n_poly.substitute(q)?.divide_exact(space_size(q, pcs.len())?)
}

/// The MacWilliams transform |C|^{-1} W(C; x + (q-1) y, x - y) of the weight
/// enumerator of a linear code of the given size.
pub fn macwilliams_transform(weights: &EnumeratorPoly, q: u64, code_size: u128) -> Result<EnumeratorPoly> {
    let size = i128::try_from(code_size).map_err(|_| Error::Overflow("code size"))?;
    weights.substitute(q)?.divide_exact(size)
}

/// Hamming weight histogram of a submodule, by enumeration.
pub fn weight_distribution(module: &Submodule, budget: Budget) -> Result<EnumeratorPoly> {
    let mut coeffs = vec![0i128; module.ambient_len() + 1];
    for x in module.enumerate(budget)? {
        coeffs[x.weight()] += 1;
    }
    Ok(EnumeratorPoly { coeffs })
}

fn require_linear(pcs: &ParityCheckSystem) -> Result<()> {
    if pcs.is_linear()? {
        Ok(())
    } else {
        Err(Error::NotLinear)
    }
}

/// W(C; x, y) = D(C; x, y) / |C| for a linear code.
pub fn weight_enumerator_from_distance(pcs: &ParityCheckSystem, budget: Budget) -> Result<EnumeratorPoly> {
    require_linear(pcs)?;
    let size = i128::try_from(pcs.code_cardinality()).map_err(|_| Error::Overflow("|C|"))?;
    distance_distribution(pcs, budget)?.divide_exact(size)
}

/// W(C; x, y) as the MacWilliams transform of the weight enumerator of
/// C^perp, the annihilator of the code.
pub fn weight_enumerator_from_dual(pcs: &ParityCheckSystem, budget: Budget) -> Result<EnumeratorPoly> {
    require_linear(pcs)?;
    let dual = pcs.kernel()?.annihilator();
    let w_dual = weight_distribution(&dual, budget)?;
    macwilliams_transform(&w_dual, pcs.spec().cardinality(), dual.cardinality())
}

/// Weight enumerator of a linear code. Both routes are computed and must
/// agree.
pub fn weight_enumerator_linear(pcs: &ParityCheckSystem, budget: Budget) -> Result<EnumeratorPoly> {
    let a = weight_enumerator_from_distance(pcs, budget)?;
    let b = weight_enumerator_from_dual(pcs, budget)?;
    if a != b {
        return Err(Error::InternalInconsistency(format!(
            "weight enumerator routes disagree: {a} versus {b}"
        )));
    }
    Ok(a)
}
