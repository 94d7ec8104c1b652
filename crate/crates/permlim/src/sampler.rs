//! Permuton-random permutation generation and uniform subpermutation
//! sampling.
//!
//! # Determinism contract
//!
//! All randomness flows through [`RandomStream`], a (seed, stream) pair
//! mapped onto ChaCha12: the 64-bit seed fills the first 8 bytes of the key
//! (little-endian, remaining bytes zero) and the stream id selects the
//! ChaCha stream. Uniform draws use exactly 53 bits:
//! `u = (next_u64() >> 11) · 2⁻⁵³ ∈ [0, 1)` and the open–closed variant
//! `((next_u64() >> 11) + 1) · 2⁻⁵³ ∈ (0, 1]`. Identical (seed, stream)
//! therefore reproduce identical permutations on every platform.
//! Substreams derive as `stream' = splitmix64(stream ⊕ splitmix64(i ⊕ 2⁶⁴φ))`,
//! independent of any worker count.
//!
//! # Sampling from a grid permuton
//!
//! Each index draws three values: a position x, a y-slot picked by inverse
//! CDF over the row's k+1 slot masses, and an in-slot uniform v. The output
//! permutation ranks indices by x against lexicographic (slot, v). For the
//! diffuse kind (slot, v) is exactly the order of the drawn coordinate
//! a = (slot−1+v)/k, so this is the textbook construction; for the atomic
//! kind v breaks ties between atoms sharing a slot uniformly at random,
//! which is distributionally identical to sampling the diffuse variant:
//! cross-slot order is unaffected and within-slot uniform tie-breaking
//! equals within-cell uniform placement. Because both kinds consume the
//! stream identically, atomic and diffuse grids built from the same matrix
//! yield the *same* permutation under a shared stream.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::numeric::to_f64;
use crate::perm::{Pattern, Permutation};
use crate::permuton::{GridKind, GridPermuton};

/// Identifies a reproducible random stream; see the module docs for the
/// exact generator mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_id: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream { seed, stream_id: 0 }
    }

    pub fn with_stream(seed: u64, stream_id: u64) -> Self {
        RandomStream { seed, stream_id }
    }

    /// The i-th derived substream; stable under any parallel schedule.
    pub fn substream(&self, i: u64) -> RandomStream {
        RandomStream {
            seed: self.seed,
            stream_id: splitmix64(self.stream_id ^ splitmix64(i ^ 0x9E3779B97F4A7C15)),
        }
    }

    /// Instantiates the generator at the start of this stream.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        let mut rng = ChaCha12Rng::from_seed(key);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// 53-bit uniform in [0, 1).
pub fn unit_co(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// 53-bit uniform in (0, 1].
pub fn unit_oc(rng: &mut ChaCha12Rng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// One (X, a) pair of the rank-composition construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePair {
    pub x: f64,
    pub a: f64,
}

/// Composes the rank permutations of a pair sequence: with
/// R(i) = #{j : X_j ≤ X_i} and S(i) = #{j : a_j ≤ a_i}, returns σ = S·R⁻¹.
///
/// Both coordinate families must be duplicate-free; ties are reported with
/// the offending indices (1-based).
pub fn rank_compose(pairs: &[SamplePair]) -> Result<Permutation> {
    let n = pairs.len();
    if n == 0 {
        return Err(Error::argument("need at least one pair"));
    }
    let xs: Vec<f64> = pairs.iter().map(|p| p.x).collect();
    let r = ranks_checked(&xs, "x")?;
    let avals: Vec<f64> = pairs.iter().map(|p| p.a).collect();
    let s = ranks_checked(&avals, "a")?;
    let mut images = vec![0u32; n];
    for i in 0..n {
        images[r[i] - 1] = s[i] as u32;
    }
    Permutation::new(images)
}

fn ranks_checked(values: &[f64], coordinate: &'static str) -> Result<Vec<usize>> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    for w in idx.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(Error::Tie {
                coordinate,
                i: w[0].min(w[1]) + 1,
                j: w[0].max(w[1]) + 1,
            });
        }
    }
    let mut ranks = vec![0usize; n];
    for (rank, &i) in idx.iter().enumerate() {
        ranks[i] = rank + 1;
    }
    Ok(ranks)
}

/// Picks the y-slot of row `row` by inverse CDF: slot a ∈ 1..=k+1 with
/// probability equal to the row's slot mass (slot k+1 is the boundary
/// deficit).
fn draw_slot(z: &GridPermuton, row: usize, u: f64) -> usize {
    let k = z.order();
    for a in 1..=k {
        if u < to_f64(&z.cdf_at(row, a)) {
            return a;
        }
    }
    k + 1
}

fn row_of(z: &GridPermuton, x: f64) -> usize {
    let k = z.order();
    ((x * k as f64).floor() as usize + 1).clamp(1, k)
}

/// Draws a value from the conditional distribution of row-cell ⌈kx⌉.
///
/// Diffuse rows return a uniform point inside the chosen cell
/// ((j−1)/k, j/k]; atomic rows return the cell's canonical atom coordinate
/// j/k. Boundary-deficit mass returns 1. Both kinds consume the stream
/// identically (slot pick plus in-slot uniform).
pub fn draw_conditional(z: &GridPermuton, x: f64, rng: &mut ChaCha12Rng) -> f64 {
    let row = row_of(z, x);
    let u = unit_co(rng);
    let slot = draw_slot(z, row, u);
    let v = unit_oc(rng);
    slot_coordinate(z, slot, v)
}

fn slot_coordinate(z: &GridPermuton, slot: usize, v: f64) -> f64 {
    let k = z.order();
    if slot == k + 1 {
        return 1.0;
    }
    match z.kind() {
        GridKind::Atomic => slot as f64 / k as f64,
        GridKind::Diffuse => ((slot - 1) as f64 + v) / k as f64,
    }
}

/// Samples a permuton-random permutation of length n: draws n (X, a) pairs
/// per the rank-composition model and composes their ranks, breaking ties
/// among atomic draws uniformly at random. See the module docs for the
/// coupling between the atomic and diffuse kinds.
pub fn sample_z_random(z: &GridPermuton, n: usize, rng: &mut ChaCha12Rng) -> Permutation {
    assert!(n >= 1, "sample length must be at least 1");
    let mut xs = Vec::with_capacity(n);
    let mut slots = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    for _ in 0..n {
        let x = unit_co(rng);
        let u = unit_co(rng);
        let v = unit_oc(rng);
        let row = row_of(z, x);
        xs.push(x);
        slots.push(draw_slot(z, row, u));
        vs.push(v);
    }
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap().then(a.cmp(&b)));
    let mut by_a: Vec<usize> = (0..n).collect();
    by_a.sort_by(|&a, &b| {
        slots[a]
            .cmp(&slots[b])
            .then(vs[a].partial_cmp(&vs[b]).unwrap())
            .then(a.cmp(&b))
    });
    let mut a_rank = vec![0u32; n];
    for (rank, &i) in by_a.iter().enumerate() {
        a_rank[i] = rank as u32 + 1;
    }
    let images: Vec<u32> = by_x.iter().map(|&i| a_rank[i]).collect();
    Permutation::new(images).expect("ranks form a bijection")
}

/// A uniformly random k-subset of {1..n}, sorted increasingly.
pub fn sample_index_set(n: usize, k: usize, rng: &mut ChaCha12Rng) -> Result<Vec<usize>> {
    if k < 1 || k > n {
        return Err(Error::argument(format!(
            "subset size {k} outside 1..={n}"
        )));
    }
    let mut positions = rand::seq::index::sample(rng, n, k).into_vec();
    positions.sort_unstable();
    Ok(positions.into_iter().map(|p| p + 1).collect())
}

/// A uniformly random k-point induced pattern sub(k, σ).
pub fn sample_subpermutation(
    sigma: &Permutation,
    k: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Pattern> {
    let positions = sample_index_set(sigma.len(), k, rng)?;
    Ok(sigma.induced_pattern(&positions))
}
