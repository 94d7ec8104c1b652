//! Permutations, patterns, occurrence counting, and pattern density.
//!
//! A permutation σ on [n] = {1, …, n} is stored as its image sequence
//! (σ(1), …, σ(n)), 1-indexed throughout. A *pattern* τ of length m occurs at
//! an index tuple x₁ < … < x_m when σ is order-isomorphic to τ on it, and the
//! density t(τ, σ) is the probability that a uniform m-subset of positions
//! induces τ. Counts are arbitrary-precision and densities exact rationals,
//! so identities like Σ_{τ ∈ S_k} t(τ, σ) = 1 hold exactly.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigRational, BigUint, One, Zero};

use crate::error::{Error, Result};
use crate::matrix::GeneralMatrix;
use crate::numeric::{binomial, ratio, ratio_u};
use crate::weighted::WeightedPermutation;

/// Default cap on k for operations that enumerate all k! patterns.
pub const DEFAULT_PATTERN_GUARD: usize = 6;

/// A permutation of {1..n}, stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// A pattern is a (small) permutation searched for inside a larger one.
pub type Pattern = Permutation;

impl Permutation {
    /// Validates that `images` is a bijection of {1..n} with n ≥ 1.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::argument("permutation must have length at least 1"));
        }
        let mut seen = vec![false; n];
        for (i, &v) in images.iter().enumerate() {
            if v < 1 || v as usize > n {
                return Err(Error::argument(format!(
                    "value {} at position {} outside 1..={}",
                    v,
                    i + 1,
                    n
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::argument(format!("value {v} appears twice")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length 1 is the minimum
    }

    /// σ(i) for 1-based i.
    pub fn image(&self, i: usize) -> u32 {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// The pattern induced on a strictly increasing tuple of positions
    /// (1-based): the order-isomorphic reduction of the selected values.
    pub fn induced_pattern(&self, positions: &[usize]) -> Pattern {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let values: Vec<u32> = positions.iter().map(|&p| self.image(p)).collect();
        Pattern {
            images: rank_reduce(&values),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Replaces each value by its 1-based rank within the slice.
fn rank_reduce(values: &[u32]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by_key(|&i| values[i]);
    let mut ranks = vec![0u32; values.len()];
    for (rank, &i) in idx.iter().enumerate() {
        ranks[i] = rank as u32 + 1;
    }
    ranks
}

/// All k! patterns of length k in lexicographic order.
pub fn all_patterns(k: usize) -> Vec<Pattern> {
    (1..=k as u32)
        .permutations(k)
        .map(|images| Pattern { images })
        .collect()
}

/// Number of occurrences Λ(τ, σ): index tuples x₁ < … < x_m on which σ is
/// order-isomorphic to τ. Zero when m > n.
///
/// Dispatches to closed-form scans for m ≤ 3 and to the pruned enumerator
/// otherwise; both agree with [`count_occurrences_brute`] (oracle-checked in
/// the test suite).
pub fn count_occurrences(tau: &Pattern, sigma: &Permutation) -> BigUint {
    let m = tau.len();
    let n = sigma.len();
    if m > n {
        return BigUint::zero();
    }
    match m {
        1 => BigUint::from(n as u64),
        2 => {
            let (asc, desc) = count_pairs(sigma);
            if tau.images() == [1, 2] {
                asc
            } else {
                desc
            }
        }
        3 => {
            let counts = count_triples(sigma);
            let pos = all_patterns(3)
                .iter()
                .position(|p| p == tau)
                .expect("pattern of length 3");
            counts[pos].clone()
        }
        _ => count_pruned(tau, sigma),
    }
}

/// Reference enumerator: checks order-isomorphism on every m-subset of
/// positions with no pruning. The oracle for the optimized counters.
pub fn count_occurrences_brute(tau: &Pattern, sigma: &Permutation) -> BigUint {
    let m = tau.len();
    let n = sigma.len();
    if m > n {
        return BigUint::zero();
    }
    let mut count = BigUint::zero();
    for tuple in (1..=n).combinations(m) {
        if sigma.induced_pattern(&tuple) == *tau {
            count += BigUint::one();
        }
    }
    count
}

/// Occurrences together with the witnessing index tuples (1-based).
pub fn occurrences_with_witnesses(tau: &Pattern, sigma: &Permutation) -> Vec<Vec<usize>> {
    let m = tau.len();
    let n = sigma.len();
    if m > n {
        return Vec::new();
    }
    (1..=n)
        .combinations(m)
        .filter(|tuple| sigma.induced_pattern(tuple) == *tau)
        .collect()
}

/// Enumerates m-subsets with early pruning: a partial choice is abandoned as
/// soon as its relative order deviates from the corresponding prefix of τ.
fn count_pruned(tau: &Pattern, sigma: &Permutation) -> BigUint {
    let m = tau.len();
    let n = sigma.len();
    // tau_rank[r] = rank of τ(r+1) among τ(1..=r+1), for prefix checks.
    let tau_ranks: Vec<usize> = (0..m)
        .map(|r| {
            tau.images[..=r]
                .iter()
                .filter(|&&v| v < tau.images[r])
                .count()
        })
        .collect();
    let mut chosen: Vec<u32> = Vec::with_capacity(m);
    let mut count = BigUint::zero();

    fn recurse(
        sigma: &[u32],
        tau_ranks: &[usize],
        chosen: &mut Vec<u32>,
        start: usize,
        count: &mut BigUint,
    ) {
        let depth = chosen.len();
        let m = tau_ranks.len();
        let n = sigma.len();
        if depth == m {
            *count += BigUint::one();
            return;
        }
        // Not enough remaining positions to finish.
        let remaining = m - depth;
        for pos in start..=n.saturating_sub(remaining) {
            let v = sigma[pos];
            let rank = chosen.iter().filter(|&&c| c < v).count();
            if rank == tau_ranks[depth] {
                chosen.push(v);
                recurse(sigma, tau_ranks, chosen, pos + 1, count);
                chosen.pop();
            }
        }
    }

    recurse(&sigma.images, &tau_ranks, &mut chosen, 0, &mut count);
    let _ = n;
    count
}

/// (ascending, descending) pair counts via an O(n log n) Fenwick scan.
fn count_pairs(sigma: &Permutation) -> (BigUint, BigUint) {
    let n = sigma.len();
    let mut tree = vec![0u64; n + 1];
    let mut asc: u128 = 0;
    for &v in &sigma.images {
        // pairs (i, j) with i < j and σ(i) < σ(j)
        let mut k = v as usize - 1;
        while k > 0 {
            asc += tree[k] as u128;
            k -= k & k.wrapping_neg();
        }
        let mut k = v as usize;
        while k <= n {
            tree[k] += 1;
            k += k & k.wrapping_neg();
        }
    }
    let total = (n as u128) * (n as u128 - 1) / 2;
    (BigUint::from(asc), BigUint::from(total - asc))
}

/// Counts of all six patterns of length 3, lexicographic order
/// [(1,2,3), (1,3,2), (2,1,3), (2,3,1), (3,1,2), (3,2,1)].
///
/// Each pattern is counted by an O(n²) scan anchored at the position whose
/// value the other two conditions reference.
fn count_triples(sigma: &Permutation) -> [BigUint; 6] {
    let s = &sigma.images;
    let n = s.len();
    let mut c123: u128 = 0;
    let mut c132: u128 = 0;
    let mut c213: u128 = 0;
    let mut c231: u128 = 0;
    let mut c312: u128 = 0;
    let mut c321: u128 = 0;

    for j in 0..n {
        let vj = s[j];
        // anchored at the middle position: 123 and 321
        let less_left = s[..j].iter().filter(|&&v| v < vj).count() as u128;
        let greater_left = j as u128 - less_left;
        let greater_right = s[j + 1..].iter().filter(|&&v| v > vj).count() as u128;
        let less_right = (n - j - 1) as u128 - greater_right;
        c123 += less_left * greater_right;
        c321 += greater_left * less_right;

        // anchored at the first position: 213 (σ(j)<σ(i)<σ(k)) and 231
        let mut small = 0u128;
        let mut big = 0u128;
        for &v in &s[j + 1..] {
            if v < vj {
                c231 += big;
                small += 1;
            } else {
                c213 += small;
                big += 1;
            }
        }

        // anchored at the last position: 132 (σ(i)<σ(k)<σ(j)) and 312
        let mut less = 0u128;
        let mut greater = 0u128;
        for &v in &s[..j] {
            if v < vj {
                c312 += greater;
                less += 1;
            } else {
                c132 += less;
                greater += 1;
            }
        }
    }

    debug_assert_eq!(
        c123 + c132 + c213 + c231 + c312 + c321,
        (n as u128) * (n as u128 - 1) * (n as u128 - 2) / 6
    );
    [
        BigUint::from(c123),
        BigUint::from(c132),
        BigUint::from(c213),
        BigUint::from(c231),
        BigUint::from(c312),
        BigUint::from(c321),
    ]
}

/// Pattern density t(τ, σ) = Λ(τ, σ) / C(n, m), exactly 0 when m > n.
pub fn density(tau: &Pattern, sigma: &Permutation) -> BigRational {
    let m = tau.len() as u64;
    let n = sigma.len() as u64;
    if m > n {
        return BigRational::zero();
    }
    ratio_u(count_occurrences(tau, sigma), binomial(n, m))
}

/// Densities of all k! patterns of length k in σ, keyed by pattern.
///
/// The values sum to exactly 1 when k ≤ n and are all zero otherwise.
/// Rejects k outside `1..=guard` (k! patterns are materialized).
pub fn density_vector_guarded(
    k: usize,
    sigma: &Permutation,
    guard: usize,
) -> Result<BTreeMap<Pattern, BigRational>> {
    if k < 1 || k > guard {
        return Err(Error::guard(format!(
            "pattern length {k} outside 1..={guard} (k! patterns would be enumerated)"
        )));
    }
    let n = sigma.len();
    let mut out: BTreeMap<Pattern, BigRational> = all_patterns(k)
        .into_iter()
        .map(|p| (p, BigRational::zero()))
        .collect();
    if k > n {
        return Ok(out);
    }
    let denom = binomial(n as u64, k as u64);
    match k {
        1 => {
            out.insert(Permutation::identity(1), BigRational::one());
        }
        2 => {
            let (asc, desc) = count_pairs(sigma);
            out.insert(Permutation::identity(2), ratio_u(asc, denom.clone()));
            out.insert(Permutation::reversal(2), ratio_u(desc, denom));
        }
        3 => {
            for (pattern, count) in all_patterns(3).into_iter().zip(count_triples(sigma)) {
                out.insert(pattern, ratio_u(count, denom.clone()));
            }
        }
        _ => {
            // One pass over all subsets classifies every pattern at once.
            let mut counts: BTreeMap<Pattern, BigUint> = BTreeMap::new();
            for tuple in (1..=n).combinations(k) {
                *counts
                    .entry(sigma.induced_pattern(&tuple))
                    .or_insert_with(BigUint::zero) += BigUint::one();
            }
            for (pattern, count) in counts {
                out.insert(pattern, ratio_u(count, denom.clone()));
            }
        }
    }
    Ok(out)
}

pub fn density_vector(k: usize, sigma: &Permutation) -> Result<BTreeMap<Pattern, BigRational>> {
    density_vector_guarded(k, sigma, DEFAULT_PATTERN_GUARD)
}

/// Bipartite adjacency matrix Q_σ of the permutation graph: Q_σ(a, b) = 1
/// iff σ(a) < b. Always a weighted permutation.
pub fn adjacency_matrix(sigma: &Permutation) -> WeightedPermutation {
    let n = sigma.len();
    let m = GeneralMatrix::from_fn(n, |a, b| {
        if (sigma.image(a) as usize) < b {
            ratio(1, 1)
        } else {
            ratio(0, 1)
        }
    });
    WeightedPermutation::new_unchecked(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates_bijection() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
        assert!(Permutation::new(vec![2]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 1]).is_ok());
    }

    #[test]
    fn induced_pattern_reduces_ranks() {
        let s = perm(&[5, 6, 2, 4, 7, 1, 3]);
        // σ maps (1,3,5,7) onto (5,2,7,3), which is ordered as (3,1,4,2).
        assert_eq!(s.induced_pattern(&[1, 3, 5, 7]), perm(&[3, 1, 4, 2]));
    }

    #[test]
    fn paper_example_indices_witnessed() {
        let tau = perm(&[3, 1, 4, 2]);
        let sigma = perm(&[5, 6, 2, 4, 7, 1, 3]);
        let witnesses = occurrences_with_witnesses(&tau, &sigma);
        assert!(witnesses.contains(&vec![1, 3, 5, 7]));
        // Frozen from the exhaustive enumerator over all C(7,4) tuples.
        let brute = count_occurrences_brute(&tau, &sigma);
        assert_eq!(BigUint::from(witnesses.len()), brute);
        assert_eq!(count_occurrences(&tau, &sigma), brute);
    }

    #[test]
    fn self_containment_and_trivial_counts() {
        let s = perm(&[4, 1, 3, 2, 5]);
        assert_eq!(count_occurrences(&s, &s), BigUint::one());
        assert_eq!(
            count_occurrences(&perm(&[1, 2]), &perm(&[1, 2, 3])),
            BigUint::from(3u32)
        );
        // m > n
        assert_eq!(
            count_occurrences(&perm(&[1, 2, 3, 4]), &perm(&[2, 1, 3])),
            BigUint::zero()
        );
    }

    #[test]
    fn density_cases() {
        assert_eq!(
            density(&perm(&[1, 2]), &perm(&[1, 2, 3])),
            BigRational::one()
        );
        assert_eq!(
            density(&perm(&[1, 2, 3, 4]), &perm(&[2, 1, 3])),
            BigRational::zero()
        );
        // m = 1 base case: Λ = n, t = 1.
        assert_eq!(density(&perm(&[1]), &perm(&[3, 1, 2])), BigRational::one());
        let tau = perm(&[3, 1, 4, 2]);
        let sigma = perm(&[5, 6, 2, 4, 7, 1, 3]);
        let lambda = count_occurrences_brute(&tau, &sigma);
        assert_eq!(
            density(&tau, &sigma),
            ratio_u(lambda, BigUint::from(35u32))
        );
    }

    #[test]
    fn optimized_counters_match_enumerator() {
        // Deterministic small sweep: all σ of length ≤ 6, patterns m ≤ 4.
        for n in 1..=6usize {
            for images in (1..=n as u32).permutations(n) {
                let sigma = Permutation { images };
                for m in 1..=4.min(n) {
                    for tau in all_patterns(m) {
                        assert_eq!(
                            count_occurrences(&tau, &sigma),
                            count_occurrences_brute(&tau, &sigma),
                            "τ={tau} σ={sigma}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn density_vector_normalizes() {
        let sigma = perm(&[2, 1]);
        let v = density_vector(2, &sigma).unwrap();
        assert_eq!(v[&perm(&[1, 2])], BigRational::zero());
        assert_eq!(v[&perm(&[2, 1])], BigRational::one());

        let sigma = perm(&[5, 6, 2, 4, 7, 1, 3]);
        for k in 1..=5 {
            let v = density_vector_guarded(k, &sigma, 6).unwrap();
            let sum: BigRational = v.values().sum();
            assert_eq!(sum, BigRational::one(), "k={k}");
        }
        // k > n: all zeros.
        let v = density_vector(4, &perm(&[2, 1, 3])).unwrap();
        assert!(v.values().all(|d| d.is_zero()));
        assert_eq!(v.len(), 24);

        assert!(density_vector(7, &sigma).is_err());
        assert!(density_vector(0, &sigma).is_err());
    }

    #[test]
    fn count_bounded_by_binomial() {
        let sigma = perm(&[5, 6, 2, 4, 7, 1, 3]);
        for m in 1..=4 {
            for tau in all_patterns(m) {
                let c = count_occurrences(&tau, &sigma);
                assert!(c <= binomial(7, m as u64));
            }
        }
        // Equality iff both increasing.
        assert_eq!(
            count_occurrences(&perm(&[1, 2, 3]), &Permutation::identity(6)),
            binomial(6, 3)
        );
    }

    #[test]
    fn adjacency_matrix_examples() {
        let q = adjacency_matrix(&perm(&[1]));
        assert_eq!(q.matrix().get(1, 1), &ratio(0, 1));

        let q = adjacency_matrix(&perm(&[2, 1]));
        let m = q.matrix();
        assert_eq!(
            (m.get(1, 1), m.get(1, 2), m.get(2, 1), m.get(2, 2)),
            (&ratio(0, 1), &ratio(0, 1), &ratio(0, 1), &ratio(1, 1))
        );
    }

    #[test]
    fn adjacency_rows_monotone() {
        let sigma = perm(&[5, 6, 2, 4, 7, 1, 3]);
        let q = adjacency_matrix(&sigma);
        let m = q.matrix();
        for a in 1..=7 {
            for b in 1..7 {
                assert!(m.get(a, b) <= m.get(a, b + 1));
            }
        }
    }

    #[test]
    fn large_count_exceeds_u32() {
        let c = count_occurrences(&Permutation::identity(5), &Permutation::identity(50));
        assert_eq!(c, binomial(50, 5));
        // A count past u32 range: C(100000, 2) ascents of a long identity.
        let c = count_occurrences(&Permutation::identity(2), &Permutation::identity(100_000));
        assert_eq!(c, binomial(100_000, 2));
        assert!(c.to_u32().is_none());
    }
}
