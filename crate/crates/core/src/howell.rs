//! Howell normal form of row modules over Z_N.
//!
//! A Howell form is an echelon basis with two extra properties that make it
//! unique and usable for exact work over a ring with zero divisors:
//!
//! * every pivot divides N and entries above a pivot are reduced below it;
//! * for each pivot column c, every module element that vanishes in columns
//!   `0..=c` lies in the span of the rows whose pivot is after c.
//!
//! The second property is what lets membership be decided by a single pass of
//! reduction, and it is what makes the kernel trick in [`kernel_of_rows`]
//! correct: the rows of an augmented Howell form whose pivot lies in the
//! augmented block generate exactly the relations.

use num_integer::Integer;

use crate::ring::{add_mod, mul_mod, neg_mod};

/// Howell form of the row module generated by some vectors in Z_N^width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Howell {
    modulus: u64,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Howell {
    pub fn new<I>(modulus: u64, width: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let n = modulus;
        let mut work: Vec<Vec<u64>> = generators
            .into_iter()
            .map(|mut row| {
                debug_assert_eq!(row.len(), width);
                row.iter_mut().for_each(|v| *v %= n);
                row
            })
            .filter(|row| row.iter().any(|&v| v != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();

        for col in 0..width {
            // invariant: every row in `work` vanishes in columns 0..col
            let (active, mut rest): (Vec<_>, Vec<_>) = work.into_iter().partition(|r| r[col] != 0);
            let mut active = active.into_iter();
            let Some(mut pivot) = active.next() else {
                work = rest;
                continue;
            };
            for mut other in active {
                combine(&mut pivot, &mut other, col, n);
                if other.iter().any(|&v| v != 0) {
                    rest.push(other);
                }
            }
            let unit = unit_normalizer(pivot[col], n);
            scale_row(&mut pivot, unit, n);
            let g = pivot[col];
            debug_assert_eq!(n % g, 0);
            // (N/g) * pivot vanishes in this column but may not elsewhere
            let mut annihilated = pivot.clone();
            scale_row(&mut annihilated, n / g, n);
            if annihilated.iter().any(|&v| v != 0) {
                rest.push(annihilated);
            }
            rows.push(pivot);
            pivots.push(col);
            work = rest.into_iter().filter(|r| r.iter().any(|&v| v != 0)).collect();
        }
        debug_assert!(work.is_empty());

        // reduce entries above each pivot into [0, pivot)
        for k in 0..rows.len() {
            let col = pivots[k];
            let g = rows[k][col];
            let (above, below) = rows.split_at_mut(k);
            let pivot_row = &below[0];
            for row in above.iter_mut() {
                let q = row[col] / g;
                if q != 0 {
                    axpy(row, neg_mod(q % n, n), pivot_row, n);
                }
            }
        }

        Howell {
            modulus,
            width,
            rows,
            pivots,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Additive order of the coefficient attached to each row: N / pivot.
    pub fn row_orders(&self) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &c)| self.modulus / row[c])
            .collect()
    }

    /// Number of elements of the module.
    pub fn cardinality(&self) -> Option<u128> {
        self.row_orders()
            .into_iter()
            .try_fold(1u128, |acc, o| acc.checked_mul(o as u128))
    }

    /// Reduces `v` in place against the rows whose pivot is before `limit`,
    /// returning the multiplier used for each row. On return `v` is zero in
    /// every pivot column before `limit` iff its prefix lies in the projected
    /// module.
    fn reduce_prefix(&self, v: &mut [u64], limit: usize) -> Vec<u64> {
        let n = self.modulus;
        let mut multipliers = vec![0; self.rows.len()];
        for (k, (row, &col)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if col >= limit {
                break;
            }
            let g = row[col];
            if !v[col].is_multiple_of(g) {
                return multipliers;
            }
            let q = v[col] / g;
            if q != 0 {
                axpy(v, neg_mod(q, n), row, n);
                multipliers[k] = q;
            }
        }
        multipliers
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v: Vec<u64> = v.iter().map(|&x| x % self.modulus).collect();
        self.reduce_prefix(&mut v, self.width);
        v.iter().all(|&x| x == 0)
    }

    /// Canonical representative of `v` modulo the module (used by tests and
    /// for coset comparisons).
    pub fn normal_form(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let q = v[col] / row[col];
            if q != 0 {
                axpy(&mut v, neg_mod(q % n, n), row, n);
            }
        }
        v
    }
}

/// Generators of {r in Z_N^m : sum_i r_i rows_i = 0}, where `rows` are m
/// vectors of length `width`.
pub fn kernel_of_rows(modulus: u64, width: usize, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let m = rows.len();
    let augmented = augment(rows, width, m);
    let howell = Howell::new(modulus, width + m, augmented);
    howell
        .rows
        .iter()
        .zip(&howell.pivots)
        .filter(|(_, &c)| c >= width)
        .map(|(row, _)| row[width..].to_vec())
        .collect()
}

/// Solves sum_i r_i rows_i = target over Z_N for a fixed family of rows.
#[derive(Debug, Clone)]
pub struct LeftSolver {
    width: usize,
    count: usize,
    howell: Howell,
}

impl LeftSolver {
    pub fn new(modulus: u64, width: usize, rows: &[Vec<u64>]) -> Self {
        let count = rows.len();
        LeftSolver {
            width,
            count,
            howell: Howell::new(modulus, width + count, augment(rows, width, count)),
        }
    }

    pub fn solve(&self, target: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(target.len(), self.width);
        let n = self.howell.modulus;
        let mut v: Vec<u64> = target.iter().map(|&x| x % n).collect();
        v.resize(self.width + self.count, 0);
        self.howell.reduce_prefix(&mut v, self.width);
        if v[..self.width].iter().any(|&x| x != 0) {
            return None;
        }
        // target - sum q_k (prefix_k | coeffs_k) = (0 | tail), so the
        // coefficients are the negated tail
        Some(v[self.width..].iter().map(|&x| neg_mod(x, n)).collect())
    }
}

fn augment(rows: &[Vec<u64>], width: usize, m: usize) -> Vec<Vec<u64>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), width);
            let mut out = Vec::with_capacity(width + m);
            out.extend_from_slice(row);
            out.extend((0..m).map(|j| u64::from(i == j)));
            out
        })
        .collect()
}

/// Unimodular 2x2 transform of (a, b) leaving gcd(a_col, b_col) in `a` and
/// zero in `b`.
fn combine(a: &mut [u64], b: &mut [u64], col: usize, n: u64) {
    let alpha = a[col] as i128;
    let beta = b[col] as i128;
    let ext = alpha.extended_gcd(&beta);
    let (g, s, t) = (ext.gcd, ext.x, ext.y);
    let (u, w) = (beta / g, -(alpha / g));
    let ni = n as i128;
    for j in col..a.len() {
        let x = a[j] as i128;
        let y = b[j] as i128;
        a[j] = (s * x + t * y).rem_euclid(ni) as u64;
        b[j] = (u * x + w * y).rem_euclid(ni) as u64;
    }
    debug_assert_eq!(b[col], 0);
}

/// A unit u of Z_N with u * a = gcd(a, N) (mod N).
pub(crate) fn unit_normalizer(a: u64, n: u64) -> u64 {
    let g = a.gcd(&n);
    let reduced_mod = n / g;
    if reduced_mod == 1 {
        return 1;
    }
    let inv = mod_inverse(a / g % reduced_mod, reduced_mod)
        .expect("a/g is coprime to N/g by construction");
    let mut u = inv;
    while u.gcd(&n) != 1 {
        u += reduced_mod;
    }
    u % n
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let ext = (a as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

fn scale_row(row: &mut [u64], c: u64, n: u64) {
    row.iter_mut().for_each(|v| *v = mul_mod(*v, c, n));
}

/// row += c * other
fn axpy(row: &mut [u64], c: u64, other: &[u64], n: u64) {
    for (x, &y) in row.iter_mut().zip(other) {
        *x = add_mod(*x, mul_mod(c, y, n), n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn span_brute(modulus: u64, width: usize, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
        let mut set: HashSet<Vec<u64>> = HashSet::new();
        set.insert(vec![0; width]);
        let mut frontier = vec![vec![0; width]];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| (a + b) % modulus).collect();
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        set
    }

    #[test]
    fn unit_normalizer_hits_gcd() {
        for n in 2..40u64 {
            for a in 1..n {
                let u = unit_normalizer(a, n);
                assert_eq!(u.gcd(&n), 1, "u={u} n={n}");
                assert_eq!(mul_mod(u, a, n), a.gcd(&n));
            }
        }
    }

    #[test]
    fn worked_example_dual_generators() {
        // <(1,1,3,5),(0,4,2,2)> over Z6 has 18 elements
        let h = Howell::new(6, 4, vec![vec![1, 1, 3, 5], vec![0, 4, 2, 2]]);
        assert_eq!(h.cardinality(), Some(18));
        assert!(h.contains(&[1, 3, 1, 3]));
        assert!(!h.contains(&[1, 0, 0, 0]));
    }

    #[test]
    fn howell_property_needs_annihilator_rows() {
        // over Z4, <(2,1)> contains (0,2) which must be found by reduction
        let h = Howell::new(4, 2, vec![vec![2, 1]]);
        assert!(h.contains(&[0, 2]));
        assert_eq!(h.cardinality(), Some(4));
    }

    #[test]
    fn canonical_form_is_independent_of_generators() {
        let a = Howell::new(12, 3, vec![vec![2, 4, 6], vec![3, 0, 9]]);
        let b = Howell::new(12, 3, vec![vec![3, 0, 9], vec![5, 4, 3], vec![2, 4, 6]]);
        assert_eq!(a, b);
    }

    #[test]
    fn cardinality_and_membership_agree_with_closure() {
        let cases: Vec<(u64, Vec<Vec<u64>>)> = vec![
            (6, vec![vec![2, 1, 1, 0], vec![0, 1, 0, 1], vec![3, 0, 3, 0]]),
            (8, vec![vec![4, 2, 6], vec![2, 6, 0]]),
            (4, vec![vec![2, 2, 2], vec![0, 2, 0]]),
            (9, vec![vec![3, 6, 0], vec![0, 3, 3], vec![6, 0, 3]]),
            (5, vec![]),
        ];
        for (modulus, gens) in cases {
            let width = 4.min(gens.first().map_or(3, Vec::len));
            let h = Howell::new(modulus, width, gens.clone());
            let brute = span_brute(modulus, width, &gens);
            assert_eq!(h.cardinality(), Some(brute.len() as u128));
            let mut all = vec![vec![]];
            for _ in 0..width {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<u64>| {
                        (0..modulus).map(move |a| {
                            let mut w = v.clone();
                            w.push(a);
                            w
                        })
                    })
                    .collect();
            }
            for v in all {
                assert_eq!(h.contains(&v), brute.contains(&v), "{v:?} mod {modulus}");
            }
        }
    }

    #[test]
    fn kernel_generators_are_relations() {
        let rows = vec![vec![2, 4, 0], vec![1, 2, 3], vec![3, 0, 3]];
        let ker = kernel_of_rows(6, 3, &rows);
        for r in &ker {
            for j in 0..3 {
                let s: u64 = r.iter().zip(&rows).map(|(&c, row)| c * row[j]).sum();
                assert_eq!(s % 6, 0);
            }
        }
        // brute force: count relations
        let mut count = 0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let ok = (0..3).all(|j| (a * rows[0][j] + b * rows[1][j] + c * rows[2][j]) % 6 == 0);
                    if ok {
                        count += 1;
                    }
                }
            }
        }
        let h = Howell::new(6, 3, ker);
        assert_eq!(h.cardinality(), Some(count));
    }

    #[test]
    fn left_solver_finds_coefficients() {
        let rows = vec![vec![1, 1, 3, 5], vec![0, 4, 2, 2]];
        let solver = LeftSolver::new(6, 4, &rows);
        let r = solver.solve(&[1, 3, 1, 3]).unwrap();
        assert_eq!(r, vec![1, 2]);
        assert!(solver.solve(&[0, 1, 0, 0]).is_none());
        assert_eq!(solver.solve(&[0, 0, 0, 0]).unwrap(), vec![0, 0]);
    }
}
