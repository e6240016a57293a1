//! Seeded random instances shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ringcodes::{CodePresentation, Matrix, ParityCheckSystem, RingSpec, RingVec, Submodule};

pub const RINGS: &[&[u64]] = &[&[2], &[3], &[4], &[6], &[8], &[2, 2], &[2, 3]];

pub fn ring(index: usize) -> RingSpec {
    RingSpec::new(RINGS[index % RINGS.len()]).unwrap()
}

pub fn random_vec(rng: &mut ChaCha8Rng, spec: &RingSpec, n: usize) -> RingVec {
    (0..n)
        .map(|_| {
            let residues: Vec<u64> = spec.factors().iter().map(|&t| rng.gen_range(0..t)).collect();
            spec.elem(&residues).unwrap()
        })
        .collect()
}

/// Random vectors that are zero outside a random support, so that short
/// codewords and small kernels show up often.
pub fn sparse_vec(rng: &mut ChaCha8Rng, spec: &RingSpec, n: usize) -> RingVec {
    let keep = rng.gen_range(1..=n);
    let mut v = random_vec(rng, spec, n).coords().to_vec();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    for &i in &idx[keep..] {
        v[i] = spec.zero();
    }
    RingVec::new(v)
}

/// A random partial kernel with up to `max_gens` generators and up to
/// `max_cosets` distinct cosets.
pub fn random_presentation(
    rng: &mut ChaCha8Rng,
    spec: &RingSpec,
    n: usize,
    max_gens: usize,
    max_cosets: usize,
) -> CodePresentation {
    let k = rng.gen_range(0..=max_gens);
    let gens: Vec<RingVec> = (0..k).map(|_| sparse_vec(rng, spec, n)).collect();
    let kernel = Submodule::from_generators(spec, n, gens).unwrap();
    let want = rng.gen_range(1..=max_cosets);
    let mut reps: Vec<RingVec> = Vec::new();
    let mut keys = Vec::new();
    for _ in 0..4 * want {
        if reps.len() == want {
            break;
        }
        let d = random_vec(rng, spec, n);
        let key = kernel.coset_representative(&d).unwrap();
        if !keys.contains(&key) {
            keys.push(key);
            reps.push(d);
        }
    }
    CodePresentation::new(kernel, reps).unwrap()
}

/// A linear code: one coset, the zero one.
pub fn random_linear(rng: &mut ChaCha8Rng, spec: &RingSpec, n: usize, max_gens: usize) -> CodePresentation {
    let k = rng.gen_range(0..=max_gens);
    let gens: Vec<RingVec> = (0..k).map(|_| sparse_vec(rng, spec, n)).collect();
    CodePresentation::from_generators(spec, n, gens, vec![spec.zero_vec(n)]).unwrap()
}

/// A parity check system for `pres` whose rows are the canonical dual
/// generators, shuffled and padded with random redundant combinations.
pub fn random_pcs(rng: &mut ChaCha8Rng, pres: &CodePresentation) -> ParityCheckSystem {
    let spec = pres.spec();
    let base = pres.kernel().annihilator().canonical_generators();
    let mut rows = base.clone();
    for _ in 0..rng.gen_range(0..=2) {
        let mut acc = spec.zero_vec(pres.len());
        for g in &base {
            let c = random_vec(rng, spec, 1).coords()[0].clone();
            acc = spec.add_vecs(&acc, &spec.scale_vec(&c, g));
        }
        rows.push(acc);
    }
    rows.shuffle(rng);
    if rows.is_empty() {
        rows.push(spec.zero_vec(pres.len()));
    }
    ParityCheckSystem::from_code(pres, Some(&rows)).unwrap()
}

pub fn example_ring() -> RingSpec {
    RingSpec::zmod(6).unwrap()
}

pub fn example_h() -> Matrix {
    let r = example_ring();
    Matrix::new(vec![r.vec_from_ints(&[1, 1, 3, 5]), r.vec_from_ints(&[0, 4, 2, 2])], 4).unwrap()
}

pub fn example_s() -> Matrix {
    let r = example_ring();
    Matrix::new(vec![r.vec_from_ints(&[0, 1, 5]), r.vec_from_ints(&[0, 2, 4])], 3).unwrap()
}

pub fn example_pcs() -> ParityCheckSystem {
    ParityCheckSystem::new(&example_ring(), example_h(), example_s()).unwrap()
}
