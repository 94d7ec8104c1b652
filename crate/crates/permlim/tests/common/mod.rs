//! Shared generators for the integration suites, built on the public API.

#![allow(dead_code)]

use num::{BigRational, Zero};
use permlim::matrix::GeneralMatrix;
use permlim::numeric::ratio;
use permlim::perm::Permutation;
use permlim::permuton::{GridKind, GridPermuton};
use permlim::weighted::{equitable_partition, partition_matrix, WeightedPermutation};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

pub fn rng(seed: u64) -> ChaCha12Rng {
    permlim::RandomStream::new(seed).rng()
}

pub fn random_permutation(n: usize, rng: &mut ChaCha12Rng) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// Random weighted permutation: partition matrix of a random permutation on
/// n > 4k² points, mixed with the uniform grid j/k. Both are weighted
/// permutations, and the axioms are convex.
pub fn random_weighted(k: usize, rng: &mut ChaCha12Rng) -> WeightedPermutation {
    let n = 4 * k * k + 1 + rng.gen_range(0..k);
    let sigma = random_permutation(n, rng);
    let pm = partition_matrix(&sigma, &equitable_partition(n, k).unwrap()).unwrap();
    let w = ratio(rng.gen_range(0..=8), 8);
    let m = GeneralMatrix::from_fn(k, |i, j| {
        &w * pm.get(i, j) + (ratio(1, 1) - &w) * ratio(j as i64, k as i64)
    });
    WeightedPermutation::new(m).unwrap()
}

/// Random *valid* diffuse grid permuton: the row-cumulative sums of a random
/// doubly stochastic mass matrix (a Birkhoff average of permutation
/// matrices), which satisfies the mass condition exactly.
pub fn random_valid_grid(k: usize, rng: &mut ChaCha12Rng) -> GridPermuton {
    let reps = k + 2;
    let mut mass = vec![vec![BigRational::zero(); k]; k];
    for _ in 0..reps {
        let p = random_permutation(k, rng);
        for i in 1..=k {
            let j = p.image(i) as usize;
            mass[i - 1][j - 1] += ratio(1, reps as i64);
        }
    }
    let cdf = GeneralMatrix::from_fn(k, |i, j| {
        (0..j).map(|a| mass[i - 1][a].clone()).sum::<BigRational>()
    });
    let z = GridPermuton::new(cdf, GridKind::Diffuse).unwrap();
    debug_assert!(permlim::permuton::validate_limit_permutation(&z)
        .passes(&BigRational::zero()));
    z
}
