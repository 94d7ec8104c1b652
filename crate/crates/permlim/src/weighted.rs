//! Weighted permutations, interval partitions, partition matrices, blow-ups,
//! block merges, weighted pattern density, and weak regularity.
//!
//! A weighted permutation is a k×k matrix Q with entries in [0,1] whose rows
//! are non-decreasing and whose column sums satisfy j−1 ≤ Σᵢ Q(i,j) ≤ j. It
//! interpolates between permutations (the 0/1 adjacency matrix Q_σ) and grid
//! permutons. Everywhere in this module the boundary convention Q(i,0) = 0,
//! Q(i,k+1) = 1 is in force.

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{GeneralMatrix, MatrixF64, SquareMatrix};
use crate::metric::{dist_weighted_f64, IntervalWitness};
use crate::numeric::{binomial, int, ratio, ratio_u};
use crate::perm::{adjacency_matrix, Pattern, Permutation};

/// A validated weighted permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPermutation {
    matrix: GeneralMatrix,
}

impl WeightedPermutation {
    /// Validates the two weighted-permutation axioms before wrapping.
    pub fn new(matrix: GeneralMatrix) -> Result<Self> {
        let report = validate_weighted(&matrix);
        if let Some(v) = report.violation {
            return Err(Error::validation(v.to_string()));
        }
        Ok(WeightedPermutation { matrix })
    }

    /// For constructions that are weighted permutations by theorem
    /// (adjacency matrices, block merges); validity is checked in debug.
    pub(crate) fn new_unchecked(matrix: GeneralMatrix) -> Self {
        debug_assert!(validate_weighted(&matrix).pass);
        WeightedPermutation { matrix }
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn matrix(&self) -> &GeneralMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> GeneralMatrix {
        self.matrix
    }

    /// Q(i, j) with the boundary convention: j = 0 gives 0, j = k+1 gives 1.
    pub fn get_bounded(&self, i: usize, j: usize) -> BigRational {
        let k = self.order();
        if j == 0 {
            BigRational::zero()
        } else if j == k + 1 {
            BigRational::one()
        } else {
            self.matrix.get(i, j).clone()
        }
    }
}

/// First constraint violated by a matrix checked against the
/// weighted-permutation axioms.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightedViolation {
    /// Q(i, j) > Q(i, j+1): row i fails monotonicity at column j.
    RowMonotonicity { row: usize, col: usize },
    /// Column sum below j − 1.
    ColumnSumLow { col: usize, sum: BigRational },
    /// Column sum above j.
    ColumnSumHigh { col: usize, sum: BigRational },
}

impl std::fmt::Display for WeightedViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightedViolation::RowMonotonicity { row, col } => {
                write!(f, "row {row} decreases between columns {col} and {}", col + 1)
            }
            WeightedViolation::ColumnSumLow { col, sum } => {
                write!(f, "column {col} sums to {sum} < {}", col - 1)
            }
            WeightedViolation::ColumnSumHigh { col, sum } => {
                write!(f, "column {col} sums to {sum} > {col}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub pass: bool,
    pub violation: Option<WeightedViolation>,
}

/// Checks the weighted-permutation axioms exactly: rows non-decreasing and
/// column sums within [j−1, j]. Reports the first violated constraint.
pub fn validate_weighted(m: &GeneralMatrix) -> ValidationReport {
    validate_weighted_with_slack(m, &BigRational::zero())
}

/// Like [`validate_weighted`] but with an absolute slack on every comparison,
/// for matrices that went through floating-point.
pub fn validate_weighted_with_slack(m: &GeneralMatrix, slack: &BigRational) -> ValidationReport {
    let k = m.order();
    for i in 1..=k {
        for j in 1..k {
            if m.get(i, j) > &(m.get(i, j + 1) + slack) {
                return ValidationReport {
                    pass: false,
                    violation: Some(WeightedViolation::RowMonotonicity { row: i, col: j }),
                };
            }
        }
    }
    for j in 1..=k {
        let sum: BigRational = (1..=k).map(|i| m.get(i, j).clone()).sum();
        if sum < int(j as i64 - 1) - slack {
            return ValidationReport {
                pass: false,
                violation: Some(WeightedViolation::ColumnSumLow { col: j, sum }),
            };
        }
        if sum > int(j as i64) + slack {
            return ValidationReport {
                pass: false,
                violation: Some(WeightedViolation::ColumnSumHigh { col: j, sum }),
            };
        }
    }
    ValidationReport {
        pass: true,
        violation: None,
    }
}

/// A division of {1..n} into k consecutive, non-empty intervals.
///
/// Stored as k+1 cut points 0 = b₀ < b₁ < … < b_k = n; interval i is
/// {b_{i−1}+1, …, b_i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartition {
    n: usize,
    boundaries: Vec<usize>,
}

impl IntervalPartition {
    pub fn new(n: usize, boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.len() < 2 || boundaries[0] != 0 || *boundaries.last().unwrap() != n {
            return Err(Error::argument(
                "boundaries must run from 0 to n inclusive",
            ));
        }
        if !boundaries.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::argument(
                "boundaries must be strictly increasing (non-empty intervals)",
            ));
        }
        Ok(IntervalPartition { n, boundaries })
    }

    pub fn singletons(n: usize) -> Self {
        IntervalPartition {
            n,
            boundaries: (0..=n).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Number of intervals.
    pub fn k(&self) -> usize {
        self.boundaries.len() - 1
    }

    /// Interval i (1-based) as inclusive bounds (lo, hi).
    pub fn interval(&self, i: usize) -> (usize, usize) {
        (self.boundaries[i - 1] + 1, self.boundaries[i])
    }

    pub fn size(&self, i: usize) -> usize {
        self.boundaries[i] - self.boundaries[i - 1]
    }

    pub fn sizes(&self) -> Vec<usize> {
        (1..=self.k()).map(|i| self.size(i)).collect()
    }

    /// Interval sizes differ by at most 1.
    pub fn is_equitable(&self) -> bool {
        let sizes = self.sizes();
        let max = sizes.iter().max().unwrap();
        let min = sizes.iter().min().unwrap();
        max - min <= 1
    }

    /// Index of the interval containing position p (1-based).
    pub fn interval_of(&self, p: usize) -> usize {
        debug_assert!(p >= 1 && p <= self.n);
        self.boundaries.partition_point(|&b| b < p)
    }
}

/// The canonical equitable k-partition of {1..n}: the first n mod k intervals
/// have size ⌈n/k⌉, the rest ⌊n/k⌋.
pub fn equitable_partition(n: usize, k: usize) -> Result<IntervalPartition> {
    if k < 1 || k > n {
        return Err(Error::argument(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let small = n / k;
    let big_count = n % k;
    let mut boundaries = Vec::with_capacity(k + 1);
    let mut acc = 0;
    boundaries.push(0);
    for i in 0..k {
        acc += if i < big_count { small + 1 } else { small };
        boundaries.push(acc);
    }
    IntervalPartition::new(n, boundaries)
}

/// Partition matrix Q_{σ,P}: entry (u, w) is the edge density
/// e_σ(C_u, C_w) / (|C_u||C_w|) of the permutation graph between intervals,
/// where e_σ counts pairs (a, b) with a ∈ C_u, b ∈ C_w, σ(a) < b.
///
/// Each e_σ(C_u, C_w) is accumulated with a closed-form count of
/// {b ∈ C_w : b > σ(a)} per row, O(nk) overall.
pub fn partition_matrix(sigma: &Permutation, p: &IntervalPartition) -> Result<GeneralMatrix> {
    let n = sigma.len();
    if p.ground_size() != n {
        return Err(Error::argument(format!(
            "partition covers {} but |σ| = {n}",
            p.ground_size()
        )));
    }
    let k = p.k();
    let mut edges = vec![0u64; k * k];
    for a in 1..=n {
        let u = p.interval_of(a);
        let v = sigma.image(a) as usize;
        for w in 1..=k {
            let (lo, hi) = p.interval(w);
            let above = hi.saturating_sub(v.max(lo - 1)) as u64;
            edges[(u - 1) * k + (w - 1)] += above;
        }
    }
    let rows = (1..=k)
        .map(|u| {
            (1..=k)
                .map(|w| {
                    let denom = (p.size(u) * p.size(w)) as i64;
                    ratio(edges[(u - 1) * k + (w - 1)] as i64, denom)
                })
                .collect()
        })
        .collect();
    GeneralMatrix::new(rows)
}

/// Blow-up K(P, Q): the n×n matrix constant on blocks C_i × C_j with value
/// Q(i, j).
pub fn blow_up(p: &IntervalPartition, q: &GeneralMatrix) -> Result<GeneralMatrix> {
    if p.k() != q.order() {
        return Err(Error::argument(format!(
            "partition has {} intervals but matrix has order {}",
            p.k(),
            q.order()
        )));
    }
    let n = p.ground_size();
    Ok(GeneralMatrix::from_fn(n, |x, y| {
        q.get(p.interval_of(x), p.interval_of(y)).clone()
    }))
}

pub(crate) fn blow_up_f64(p: &IntervalPartition, q: &MatrixF64) -> MatrixF64 {
    let n = p.ground_size();
    SquareMatrix::from_fn(n, |x, y| *q.get(p.interval_of(x), p.interval_of(y)))
}

/// Merges a weighted permutation of order k_m into one of order k_j
/// (k_j | k_m) by replacing each (k_m/k_j)×(k_m/k_j) block of consecutive
/// entries with its arithmetic mean.
///
/// Averaging preserves both axioms: means of non-decreasing rows are
/// non-decreasing, and the merged column sums are means of consecutive
/// column sums, which stay inside the merged bounds.
pub fn block_merge(q: &WeightedPermutation, k_target: usize) -> Result<WeightedPermutation> {
    let k = q.order();
    if k_target == 0 || k % k_target != 0 {
        return Err(Error::argument(format!(
            "target order {k_target} does not divide {k}"
        )));
    }
    let b = k / k_target;
    let cell = int((b * b) as i64);
    let m = GeneralMatrix::from_fn(k_target, |u, w| {
        let mut sum = BigRational::zero();
        for i in (u - 1) * b + 1..=u * b {
            for j in (w - 1) * b + 1..=w * b {
                sum += q.matrix().get(i, j);
            }
        }
        sum / &cell
    });
    Ok(WeightedPermutation::new_unchecked(m))
}

/// Subpermutation density t(τ, Q) of a pattern τ (|τ| = m < k) in a weighted
/// permutation of order k:
///
///   C(k,m)⁻¹ Σ_{X ∈ [k]^m_<} Σ_{A ∈ [k+1]^m_<} Π_i (Q(x_i, a_{τ(i)}) − Q(x_i, a_{τ(i)}−1))
///
/// The inner sum over increasing column tuples is evaluated by a prefix-sum
/// DP in O(mk) per X, with the Q(i,0) = 0, Q(i,k+1) = 1 boundary convention.
pub fn weighted_density(tau: &Pattern, q: &WeightedPermutation) -> Result<BigRational> {
    let m = tau.len();
    let k = q.order();
    if m >= k {
        return Err(Error::argument(format!(
            "pattern length {m} must be smaller than the order {k}"
        )));
    }
    // Row of the index holding rank r: x_{τ⁻¹(r)}.
    let tau_inv = tau.inverse();

    // Per-row increments over the k+1 column slots, Δ_a = Q(i,a) − Q(i,a−1).
    let deltas: Vec<Vec<BigRational>> = (1..=k)
        .map(|i| {
            (1..=k + 1)
                .map(|a| q.get_bounded(i, a) - q.get_bounded(i, a - 1))
                .collect()
        })
        .collect();

    let mut total = BigRational::zero();
    let mut x: Vec<usize> = Vec::with_capacity(m);
    inner_x(&mut x, 1, k, m, &mut |x| {
        // DP over ranks: state[a-1] = sum over increasing prefixes ending at
        // column slot a of the partial products.
        let mut state = vec![BigRational::zero(); k + 1];
        let row0 = x[tau_inv.image(1) as usize - 1];
        state.clone_from_slice(&deltas[row0 - 1]);
        for r in 2..=m {
            let row = x[tau_inv.image(r) as usize - 1];
            let mut prefix = BigRational::zero();
            let mut next = vec![BigRational::zero(); k + 1];
            for a in 1..=k + 1 {
                // prefix = Σ_{a' < a} state[a'−1]
                if a >= 2 {
                    prefix += &state[a - 2];
                }
                if !prefix.is_zero() {
                    next[a - 1] = &deltas[row - 1][a - 1] * &prefix;
                }
            }
            state = next;
        }
        total += state.into_iter().sum::<BigRational>();
    });
    Ok(total / ratio_u(binomial(k as u64, m as u64), 1u32.into()))
}

fn inner_x(x: &mut Vec<usize>, start: usize, k: usize, m: usize, f: &mut impl FnMut(&[usize])) {
    if x.len() == m {
        f(x);
        return;
    }
    let remaining = m - x.len();
    for v in start..=k + 1 - remaining {
        x.push(v);
        inner_x(x, v + 1, k, m, f);
        x.pop();
    }
}

/// Literal double-sum evaluation of the weighted density definition, used as
/// the independent oracle for [`weighted_density`].
pub fn weighted_density_naive(tau: &Pattern, q: &WeightedPermutation) -> Result<BigRational> {
    use itertools::Itertools;
    let m = tau.len();
    let k = q.order();
    if m >= k {
        return Err(Error::argument(format!(
            "pattern length {m} must be smaller than the order {k}"
        )));
    }
    let mut total = BigRational::zero();
    for x in (1..=k).combinations(m) {
        for a in (1..=k + 1).combinations(m) {
            let mut prod = BigRational::one();
            for i in 1..=m {
                let col = a[tau.image(i) as usize - 1];
                prod *= q.get_bounded(x[i - 1], col) - q.get_bounded(x[i - 1], col - 1);
            }
            total += prod;
        }
    }
    Ok(total / ratio_u(binomial(k as u64, m as u64), 1u32.into()))
}

/// Result of a weak regularity computation: the canonical equitable
/// k-partition with k = ⌈8/ε²⌉, its partition matrix, and the verified
/// rectangular distance between Q_σ and the blow-up of the partition matrix.
#[derive(Debug, Clone)]
pub struct WeakRegularity {
    pub epsilon: f64,
    pub k: usize,
    pub partition: IntervalPartition,
    pub partition_matrix: GeneralMatrix,
    /// d_□(Q_σ, K(P, Q_{σ,P})), evaluated in f64.
    pub achieved_distance: f64,
    pub witness: IntervalWitness,
}

/// Weak ε-regular partition of σ for ε ∈ (0, 1/2): any equitable partition
/// with k ≥ 8/ε² parts works, so no search is performed. Requires n > 2k.
pub fn weak_regular_partition(sigma: &Permutation, epsilon: f64) -> Result<WeakRegularity> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::argument(format!(
            "epsilon must lie in (0, 1/2), got {epsilon}"
        )));
    }
    let k = (8.0 / (epsilon * epsilon)).ceil() as usize;
    let n = sigma.len();
    if n <= 2 * k {
        return Err(Error::feasibility(format!(
            "need n > 2k = {} for epsilon = {epsilon} (k = {k}); smallest usable n is {}",
            2 * k,
            2 * k + 1
        )));
    }
    let partition = equitable_partition(n, k)?;
    let pm = partition_matrix(sigma, &partition)?;

    // The n×n comparison is done in f64: entries of both matrices are exact
    // small rationals, and the achieved distance is reported, not asserted.
    let q_sigma = adjacency_matrix(sigma);
    let q_sigma_f = q_sigma.matrix().to_f64();
    let blow = blow_up_f64(&partition, &pm.to_f64());
    let (achieved_distance, witness) = dist_weighted_f64(&q_sigma_f, &blow)?;

    Ok(WeakRegularity {
        epsilon,
        k,
        partition,
        partition_matrix: pm,
        achieved_distance,
        witness,
    })
}


#[cfg(test)]
mod tests {
    use super::test_support::random_weighted;
    use super::*;
    use crate::numeric::ratio;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn mat(rows: &[&[(i64, i64)]]) -> GeneralMatrix {
        GeneralMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        // Rows monotone; column sums 0.5 ∈ [0,1], 1.5 ∈ [1,2].
        let ok = mat(&[&[(1, 4), (3, 4)], &[(1, 4), (3, 4)]]);
        assert!(validate_weighted(&ok).pass);

        let bad = mat(&[&[(9, 10), (1, 10)], &[(1, 2), (1, 2)]]);
        let report = validate_weighted(&bad);
        assert!(!report.pass);
        assert_eq!(
            report.violation,
            Some(WeightedViolation::RowMonotonicity { row: 1, col: 1 })
        );

        // Column sum violation: column 2 sums to 0.4 < 1.
        let bad = mat(&[&[(1, 10), (2, 10)], &[(1, 10), (2, 10)]]);
        let report = validate_weighted(&bad);
        assert!(matches!(
            report.violation,
            Some(WeightedViolation::ColumnSumLow { col: 2, .. })
        ));
    }

    #[test]
    fn adjacency_is_weighted() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for n in 1..=20 {
            let mut v: Vec<u32> = (1..=n as u32).collect();
            v.shuffle(&mut rng);
            let q = adjacency_matrix(&Permutation::new(v).unwrap());
            assert!(validate_weighted(q.matrix()).pass);
        }
    }

    #[test]
    fn equitable_partition_sizes() {
        assert_eq!(equitable_partition(7, 3).unwrap().sizes(), vec![3, 2, 2]);
        assert_eq!(equitable_partition(6, 3).unwrap().sizes(), vec![2, 2, 2]);
        assert_eq!(
            equitable_partition(5, 5).unwrap().sizes(),
            vec![1, 1, 1, 1, 1]
        );
        assert!(equitable_partition(3, 4).is_err());
        assert!(equitable_partition(3, 0).is_err());
        assert!(equitable_partition(7, 3).unwrap().is_equitable());
    }

    #[test]
    fn interval_lookup() {
        let p = equitable_partition(7, 3).unwrap();
        assert_eq!(p.interval(1), (1, 3));
        assert_eq!(p.interval(2), (4, 5));
        assert_eq!(p.interval_of(1), 1);
        assert_eq!(p.interval_of(3), 1);
        assert_eq!(p.interval_of(4), 2);
        assert_eq!(p.interval_of(7), 3);
    }

    #[test]
    fn partition_matrix_single_interval() {
        // σ = (2,1), one interval: only the pair a=2, b=2 has σ(a) < b.
        let p = IntervalPartition::new(2, vec![0, 2]).unwrap();
        let m = partition_matrix(&perm(&[2, 1]), &p).unwrap();
        assert_eq!(m.get(1, 1), &ratio(1, 4));
    }

    #[test]
    fn partition_matrix_singletons_is_adjacency() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for n in 1..=50 {
            let mut v: Vec<u32> = (1..=n as u32).collect();
            v.shuffle(&mut rng);
            let sigma = Permutation::new(v).unwrap();
            let pm = partition_matrix(&sigma, &IntervalPartition::singletons(n)).unwrap();
            assert_eq!(&pm, adjacency_matrix(&sigma).matrix());
        }
    }

    #[test]
    fn partition_matrix_length_mismatch() {
        let p = equitable_partition(6, 2).unwrap();
        assert!(partition_matrix(&perm(&[2, 1]), &p).is_err());
    }

    #[test]
    fn partition_matrix_is_weighted_beyond_threshold() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for k in [2usize, 3, 4] {
            let n = 4 * k * k + 1;
            let mut v: Vec<u32> = (1..=n as u32).collect();
            v.shuffle(&mut rng);
            let sigma = Permutation::new(v).unwrap();
            let pm = partition_matrix(&sigma, &equitable_partition(n, k).unwrap()).unwrap();
            assert!(validate_weighted(&pm).pass, "k={k}");
        }
    }

    #[test]
    fn blow_up_cases() {
        // k=1: constant matrix.
        let p = IntervalPartition::new(3, vec![0, 3]).unwrap();
        let q = mat(&[&[(1, 3)]]);
        let b = blow_up(&p, &q).unwrap();
        assert!(b.entries().iter().all(|e| e == &ratio(1, 3)));

        // Singletons: identity blow-up.
        let q = mat(&[&[(0, 1), (1, 2)], &[(1, 4), (1, 1)]]);
        let b = blow_up(&IntervalPartition::singletons(2), &q).unwrap();
        assert_eq!(b, q);

        // n=4, k=2 equitable: 2×2 blocks.
        let p = equitable_partition(4, 2).unwrap();
        let b = blow_up(&p, &q).unwrap();
        assert_eq!(b.get(1, 2), &ratio(0, 1));
        assert_eq!(b.get(2, 3), &ratio(1, 2));
        assert_eq!(b.get(3, 1), &ratio(1, 4));
        assert_eq!(b.get(4, 4), &ratio(1, 1));

        assert!(blow_up(&p, &mat(&[&[(1, 2)]])).is_err());
    }

    #[test]
    fn block_merge_cases() {
        let q = WeightedPermutation::new(mat(&[&[(2, 10), (8, 10)], &[(3, 10), (9, 10)]])).unwrap();
        // Identity merge.
        assert_eq!(block_merge(&q, 2).unwrap(), q);
        // Full merge: arithmetic mean of all entries.
        let merged = block_merge(&q, 1).unwrap();
        assert_eq!(merged.matrix().get(1, 1), &ratio(55, 100));
        // Non-divisor.
        let q3 = random_weighted(3, &mut ChaCha12Rng::seed_from_u64(1));
        assert!(block_merge(&q3, 2).is_err());
    }

    #[test]
    fn block_merge_preserves_axioms() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..40 {
            let k = *[4usize, 6, 8, 12].choose(&mut rng).unwrap();
            let q = random_weighted(k, &mut rng);
            for target in 1..=k {
                if k % target == 0 {
                    let merged = block_merge(&q, target).unwrap();
                    assert!(validate_weighted(merged.matrix()).pass);
                }
            }
        }
    }

    #[test]
    fn weighted_density_base_cases() {
        let q = random_weighted(5, &mut ChaCha12Rng::seed_from_u64(3));
        // m = 1: the inner sums telescope to 1 per row.
        assert_eq!(
            weighted_density(&perm(&[1]), &q).unwrap(),
            BigRational::one()
        );
        // m >= k is a domain error.
        let q2 = WeightedPermutation::new(mat(&[&[(1, 4), (3, 4)], &[(1, 4), (3, 4)]])).unwrap();
        assert!(weighted_density(&perm(&[1, 2]), &q2).is_err());
    }

    #[test]
    fn weighted_density_matches_naive() {
        let mut rng = ChaCha12Rng::seed_from_u64(97);
        for _ in 0..6 {
            let q = random_weighted(rng.gen_range(4..=6), &mut rng);
            for m in 1..=3.min(q.order() - 1) {
                for tau in crate::perm::all_patterns(m) {
                    assert_eq!(
                        weighted_density(&tau, &q).unwrap(),
                        weighted_density_naive(&tau, &q).unwrap(),
                        "τ={tau} k={}",
                        q.order()
                    );
                }
            }
        }
    }

    #[test]
    fn weighted_density_of_adjacency_equals_density() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for _ in 0..10 {
            let n = rng.gen_range(5..=9);
            let mut v: Vec<u32> = (1..=n as u32).collect();
            v.shuffle(&mut rng);
            let sigma = Permutation::new(v).unwrap();
            let q = adjacency_matrix(&sigma);
            for m in 1..=3 {
                for tau in crate::perm::all_patterns(m) {
                    assert_eq!(
                        weighted_density(&tau, &q).unwrap(),
                        crate::perm::density(&tau, &sigma),
                        "τ={tau} σ={sigma}"
                    );
                }
            }
        }
    }

    #[test]
    fn weak_regularity_guards() {
        assert!(weak_regular_partition(&Permutation::identity(10), 0.6).is_err());
        assert!(weak_regular_partition(&Permutation::identity(10), 0.0).is_err());
        // ε = 0.45 → k = 40; n must exceed 80.
        let err = weak_regular_partition(&Permutation::identity(80), 0.45);
        assert!(matches!(err, Err(Error::Feasibility(_))));
    }

    #[test]
    fn weak_regularity_identity_within_epsilon() {
        let epsilon = 0.45;
        let sigma = Permutation::identity(85);
        let reg = weak_regular_partition(&sigma, epsilon).unwrap();
        assert_eq!(reg.k, 40);
        assert!(reg.partition.is_equitable());
        assert!(
            reg.achieved_distance <= epsilon,
            "achieved {} > {epsilon}",
            reg.achieved_distance
        );
    }
}
