//! Minimum distance and bounded-distance decoding straight from (H|S).
//!
//! Both searches walk weight shells in increasing weight. Within a shell,
//! supports come in lexicographic order of their index sets and the nonzero
//! values on a support run in odometer order (last position fastest), so
//! returned witnesses are deterministic.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pcs::ParityCheckSystem;
use crate::ring::{RingElem, RingSpec, RingVec};

/// A set of syndrome columns with O(1) membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeSet {
    elements: HashSet<RingVec>,
}

impl SyndromeSet {
    pub fn contains(&self, syndrome: &RingVec) -> bool {
        self.elements.contains(syndrome)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in ascending order.
    pub fn sorted(&self) -> Vec<RingVec> {
        let mut v: Vec<RingVec> = self.elements.iter().cloned().collect();
        v.sort();
        v
    }
}

/// S^diff = { S_l - S_k : k < l } together with the zero column.
pub fn sdiff(pcs: &ParityCheckSystem) -> SyndromeSet {
    let spec = pcs.spec();
    let cols = pcs.columns();
    let mut elements = HashSet::with_capacity(cols.len() * cols.len() / 2 + 1);
    elements.insert(spec.zero_vec(pcs.num_checks()));
    for l in 0..cols.len() {
        for k in 0..l {
            elements.insert(spec.sub_vecs(&cols[l], &cols[k]));
        }
    }
    SyndromeSet { elements }
}

/// Every vector of R^n with weight exactly `weight`, in shell order.
pub fn weight_shell(spec: &RingSpec, n: usize, weight: usize) -> WeightShell {
    let nonzero: Vec<RingElem> = spec.elements().filter(|a| !a.is_zero()).collect();
    let done = weight > n || (weight > 0 && nonzero.is_empty());
    WeightShell {
        n,
        zero: spec.zero(),
        support: (0..weight).collect(),
        values: vec![0; weight],
        nonzero,
        done,
    }
}

/// Iterator returned by [`weight_shell`].
#[derive(Debug, Clone)]
pub struct WeightShell {
    n: usize,
    zero: RingElem,
    nonzero: Vec<RingElem>,
    support: Vec<usize>,
    values: Vec<usize>,
    done: bool,
}

impl WeightShell {
    fn advance(&mut self) {
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < self.nonzero.len() {
                return;
            }
            *v = 0;
        }
        // values wrapped: next support in lexicographic order
        let w = self.support.len();
        let mut i = w;
        while i > 0 {
            i -= 1;
            if self.support[i] < self.n - w + i {
                self.support[i] += 1;
                for j in i + 1..w {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for WeightShell {
    type Item = RingVec;

    fn next(&mut self) -> Option<RingVec> {
        if self.done {
            return None;
        }
        let mut coords = vec![self.zero.clone(); self.n];
        for (&pos, &v) in self.support.iter().zip(&self.values) {
            coords[pos] = self.nonzero[v].clone();
        }
        self.advance();
        Some(RingVec::new(coords))
    }
}

/// The minimum distance with the first witness found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinDistance {
    pub distance: usize,
    /// Nonzero x of minimum weight with H x^T in S^diff.
    pub witness: RingVec,
    /// H x^T for the witness.
    pub syndrome: RingVec,
}

fn check_nondegenerate(pcs: &ParityCheckSystem) -> Result<()> {
    if pcs.code_cardinality() < 2 {
        Err(Error::DegenerateCode)
    } else {
        Ok(())
    }
}

/// d(C) = min { wt(x) : x != 0, H x^T in S^diff }.
pub fn min_distance(pcs: &ParityCheckSystem) -> Result<MinDistance> {
    check_nondegenerate(pcs)?;
    let diffs = sdiff(pcs);
    let spec = pcs.spec();
    for w in 1..=pcs.len() {
        for x in weight_shell(spec, pcs.len(), w) {
            let syn = pcs.h().mul_vec_unchecked(spec, &x);
            if diffs.contains(&syn) {
                return Ok(MinDistance {
                    distance: w,
                    witness: x,
                    syndrome: syn,
                });
            }
        }
    }
    Err(Error::InternalInconsistency(
        "no witness found although the code has two codewords".into(),
    ))
}

/// All vectors of the given weight whose syndrome lies in S^diff, in shell
/// order. At the minimum distance these are exactly the minimal witnesses.
pub fn distance_witnesses(pcs: &ParityCheckSystem, weight: usize) -> Vec<(RingVec, RingVec)> {
    if weight == 0 {
        return Vec::new();
    }
    let diffs = sdiff(pcs);
    let spec = pcs.spec();
    weight_shell(spec, pcs.len(), weight)
        .filter_map(|x| {
            let syn = pcs.h().mul_vec_unchecked(spec, &x);
            diffs.contains(&syn).then_some((x, syn))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub codeword: RingVec,
    /// Zero-based index of the coset (column of S) holding the codeword.
    pub coset_index: usize,
    pub error_vector: RingVec,
    pub error_weight: usize,
}

/// Nearest-neighbour decoding within radius floor((d-1)/2).
///
/// Finds the lightest y with H x^T - H y^T equal to some column of S and
/// returns x - y. When `min_distance` is `None` it is recomputed.
pub fn decode(pcs: &ParityCheckSystem, received: &RingVec, min_dist: Option<usize>) -> Result<DecodeResult> {
    let spec = pcs.spec();
    let target = pcs.syndrome(received)?;
    let d = match min_dist {
        Some(d) => d,
        None => min_distance(pcs)?.distance,
    };
    let radius = d.saturating_sub(1) / 2;
    for w in 0..=radius.min(pcs.len()) {
        for y in weight_shell(spec, pcs.len(), w) {
            let syn = spec.sub_vecs(&target, &pcs.h().mul_vec_unchecked(spec, &y));
            if let Some(l) = pcs.column_index(&syn) {
                return Ok(DecodeResult {
                    codeword: spec.sub_vecs(received, &y),
                    coset_index: l,
                    error_vector: y,
                    error_weight: w,
                });
            }
        }
    }
    Err(Error::BeyondRadius { radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Matrix;

    fn example_pcs() -> ParityCheckSystem {
        let r = RingSpec::zmod(6).unwrap();
        let h = Matrix::new(vec![r.vec_from_ints(&[1, 1, 3, 5]), r.vec_from_ints(&[0, 4, 2, 2])], 4).unwrap();
        let s = Matrix::new(vec![r.vec_from_ints(&[0, 1, 5]), r.vec_from_ints(&[0, 2, 4])], 3).unwrap();
        ParityCheckSystem::new(&r, h, s).unwrap()
    }

    #[test]
    fn shell_sizes() {
        let r = RingSpec::zmod(3).unwrap();
        assert_eq!(weight_shell(&r, 4, 0).count(), 1);
        assert_eq!(weight_shell(&r, 4, 1).count(), 8);
        assert_eq!(weight_shell(&r, 4, 2).count(), 6 * 4);
        assert_eq!(weight_shell(&r, 4, 4).count(), 16);
        assert_eq!(weight_shell(&r, 4, 5).count(), 0);
        assert!(weight_shell(&r, 4, 2).all(|x| x.weight() == 2));
        let first: Vec<RingVec> = weight_shell(&r, 3, 1).take(3).collect();
        assert_eq!(first[0], r.vec_from_ints(&[1, 0, 0]));
        assert_eq!(first[1], r.vec_from_ints(&[2, 0, 0]));
        assert_eq!(first[2], r.vec_from_ints(&[0, 1, 0]));
    }

    #[test]
    fn worked_example_sdiff() {
        let r = RingSpec::zmod(6).unwrap();
        let set = sdiff(&example_pcs());
        let mut expected: Vec<RingVec> = [[0, 0], [1, 2], [5, 4], [4, 2]]
            .iter()
            .map(|v| r.vec_from_ints(v))
            .collect();
        expected.sort();
        assert_eq!(set.sorted(), expected);
    }

    #[test]
    fn worked_example_min_distance() {
        let r = RingSpec::zmod(6).unwrap();
        let pcs = example_pcs();
        let md = min_distance(&pcs).unwrap();
        assert_eq!(md.distance, 2);
        assert_eq!(md.witness.weight(), 2);
        assert!(sdiff(&pcs).contains(&md.syndrome));
        assert!(distance_witnesses(&pcs, 1).is_empty());
        let witnesses = distance_witnesses(&pcs, 2);
        assert!(witnesses.contains(&(r.vec_from_ints(&[5, 0, 0, 1]), r.vec_from_ints(&[4, 2]))));
    }

    #[test]
    fn single_codeword_is_degenerate() {
        let r = RingSpec::zmod(2).unwrap();
        let h = Matrix::new(vec![r.vec_from_ints(&[1, 0]), r.vec_from_ints(&[0, 1])], 2).unwrap();
        let s = Matrix::new(vec![r.vec_from_ints(&[0]), r.vec_from_ints(&[0])], 1).unwrap();
        let pcs = ParityCheckSystem::new(&r, h, s).unwrap();
        assert_eq!(min_distance(&pcs).unwrap_err(), Error::DegenerateCode);
    }

    #[test]
    fn decode_codewords_and_radius_zero() {
        let r = RingSpec::zmod(6).unwrap();
        let pcs = example_pcs();
        let c = r.vec_from_ints(&[5, 2, 0, 0]);
        let out = decode(&pcs, &c, None).unwrap();
        assert_eq!(out.codeword, c);
        assert_eq!(out.coset_index, 1);
        assert_eq!(out.error_weight, 0);
        assert!(out.error_vector.is_zero());
        // d = 2 gives radius 0, so a non-codeword cannot be decoded
        let err = decode(&pcs, &r.vec_from_ints(&[1, 0, 0, 0]), Some(2)).unwrap_err();
        assert_eq!(err, Error::BeyondRadius { radius: 0 });
    }

    #[test]
    fn decode_corrects_single_errors_in_repetition_code() {
        // ternary repetition code of length 3 plus a shifted copy: d = 3
        let r = RingSpec::zmod(3).unwrap();
        let h = Matrix::new(vec![r.vec_from_ints(&[1, 2, 0]), r.vec_from_ints(&[0, 1, 2])], 3).unwrap();
        let s = Matrix::new(vec![r.vec_from_ints(&[0]), r.vec_from_ints(&[0])], 1).unwrap();
        let pcs = ParityCheckSystem::new(&r, h, s).unwrap();
        assert_eq!(min_distance(&pcs).unwrap().distance, 3);
        let c = r.vec_from_ints(&[2, 2, 2]);
        let received = r.vec_from_ints(&[2, 0, 2]);
        let out = decode(&pcs, &received, None).unwrap();
        assert_eq!(out.codeword, c);
        assert_eq!(out.error_weight, 1);
        assert_eq!(r.sub_vecs(&received, &out.error_vector), out.codeword);
    }
}
