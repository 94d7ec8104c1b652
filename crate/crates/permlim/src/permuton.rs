//! Grid permutons: finitely-described limit permutations, their validation,
//! and exact / Monte-Carlo pattern density.
//!
//! A grid permuton of order k stores the k×k row-wise CDF matrix of a step
//! function: cdf[i][j] is the value at the top of y-cell j for x-cell i,
//! with rows non-decreasing. Two in-cell semantics share the matrix:
//!
//! * **atomic** — the step function verbatim: row i carries point masses
//!   Δ_a = cdf[i][a] − cdf[i][a−1] at y = (a−1)/k for a = 1..=k+1, where
//!   Δ_{k+1} = 1 − cdf[i][k] is the boundary mass collapsed at y = 1
//!   (the step function of a weighted permutation has atoms, and fails the
//!   limit-permutation mass condition);
//! * **diffuse** — each cell's mass spread uniformly over the cell interior,
//!   which is what a valid limit permutation needs.
//!
//! The row CDF of the atomic kind evaluates to cdf[i][⌈ky⌉] for y in cell
//! ⌈ky⌉, i.e. exactly the step function built from the matrix.

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::GeneralMatrix;
use crate::metric::YInterval;
use crate::numeric::{
    factorial, int, ratio, ratio_u, to_f64, CompensatedSum,
};
use crate::perm::{adjacency_matrix, Pattern, Permutation};
use crate::sampler::{sample_z_random, RandomStream};
use crate::weighted::WeightedPermutation;

/// Default guards for the exact density enumerator.
pub const DEFAULT_DENSITY_MAX_M: usize = 6;
pub const DEFAULT_DENSITY_MAX_K: usize = 12;

/// Above this many enumerated (cell, slot) assignments the exact evaluator
/// switches from exact rationals to compensated f64 summation.
const RATIONAL_TERM_BUDGET: u128 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Atomic,
    Diffuse,
}

/// A k-cell grid permuton; see the module docs for the two kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPermuton {
    kind: GridKind,
    cdf: GeneralMatrix,
}

impl GridPermuton {
    /// Wraps a row-monotone [0,1] matrix as a grid permuton.
    pub fn new(cdf: GeneralMatrix, kind: GridKind) -> Result<Self> {
        let k = cdf.order();
        for i in 1..=k {
            for j in 1..k {
                if cdf.get(i, j) > cdf.get(i, j + 1) {
                    return Err(Error::validation(format!(
                        "cdf row {i} decreases between columns {j} and {}",
                        j + 1
                    )));
                }
            }
        }
        Ok(GridPermuton { kind, cdf })
    }

    /// The step function Z_Q of a weighted permutation (atomic) or its
    /// in-cell-linear variant with the same cell masses (diffuse).
    pub fn from_weighted(q: &WeightedPermutation, kind: GridKind) -> Self {
        GridPermuton {
            kind,
            cdf: q.matrix().clone(),
        }
    }

    /// The step permuton Z_σ: atomic, from the adjacency matrix, so that the
    /// row of position a carries its unit atom at y = σ(a)/n.
    pub fn from_permutation(sigma: &Permutation) -> Self {
        Self::from_weighted(&adjacency_matrix(sigma), GridKind::Atomic)
    }

    /// The uniform permuton Z_u(x, y) = y as a 1-cell diffuse grid.
    pub fn uniform() -> Self {
        GridPermuton {
            kind: GridKind::Diffuse,
            cdf: GeneralMatrix::new(vec![vec![BigRational::one()]]).unwrap(),
        }
    }

    pub fn order(&self) -> usize {
        self.cdf.order()
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn cdf(&self) -> &GeneralMatrix {
        &self.cdf
    }

    /// cdf entry with the boundary convention: j = 0 gives 0.
    pub fn cdf_at(&self, i: usize, j: usize) -> BigRational {
        if j == 0 {
            BigRational::zero()
        } else {
            self.cdf.get(i, j).clone()
        }
    }

    /// Mass of y-slot a in row i, a in 1..=k+1. Slot k+1 is the boundary
    /// deficit 1 − cdf[i][k], zero for valid rows.
    pub fn cell_mass(&self, i: usize, a: usize) -> BigRational {
        let k = self.order();
        debug_assert!(a >= 1 && a <= k + 1);
        if a == k + 1 {
            BigRational::one() - self.cdf.get(i, k)
        } else {
            self.cdf_at(i, a) - self.cdf_at(i, a - 1)
        }
    }

    /// Deficit mass of row i collapsed at y = 1.
    pub fn row_deficit(&self, i: usize) -> BigRational {
        self.cell_mass(i, self.order() + 1)
    }

    /// Pointwise evaluation Z(x, y). Atomic rows evaluate the step function
    /// cdf[⌈kx⌉][⌈ky⌉]; diffuse rows interpolate linearly within the y-cell.
    pub fn value_at(&self, x: f64, y: f64) -> f64 {
        let k = self.order();
        if y <= 0.0 {
            return 0.0;
        }
        let i = ((x * k as f64).ceil() as usize).clamp(1, k);
        let j = ((y * k as f64).ceil() as usize).clamp(1, k);
        if y >= 1.0 {
            return to_f64(&self.cdf_at(i, k));
        }
        let top = to_f64(&self.cdf_at(i, j));
        match self.kind {
            GridKind::Atomic => top,
            GridKind::Diffuse => {
                let bottom = to_f64(&self.cdf_at(i, j - 1));
                let frac = y * k as f64 - (j - 1) as f64;
                bottom + (top - bottom) * frac
            }
        }
    }

    /// Exact mass the permuton assigns to [x_lo, x_hi] × y-interval.
    ///
    /// The x-side is atomless, so the closed x-interval is unambiguous; the
    /// y-interval carries explicit endpoint-inclusion flags because atomic
    /// rows have point masses at grid breakpoints.
    pub fn rect_mass(&self, x_lo: &BigRational, x_hi: &BigRational, y: &YInterval) -> BigRational {
        let k = self.order();
        let mut total = BigRational::zero();
        for i in 1..=k {
            let cell_lo = ratio(i as i64 - 1, k as i64);
            let cell_hi = ratio(i as i64, k as i64);
            let lo = if x_lo > &cell_lo { x_lo.clone() } else { cell_lo };
            let hi = if x_hi < &cell_hi { x_hi.clone() } else { cell_hi };
            if lo >= hi {
                continue;
            }
            total += (hi - lo) * self.row_interval_mass(i, y);
        }
        total
    }

    /// Mass of the y-interval under row i's measure.
    fn row_interval_mass(&self, i: usize, y: &YInterval) -> BigRational {
        let k = self.order();
        let mut mass = BigRational::zero();
        match self.kind {
            GridKind::Atomic => {
                for a in 1..=k + 1 {
                    let pos = ratio(a as i64 - 1, k as i64);
                    let above_lo =
                        pos > y.lo || (y.lo_closed && pos == y.lo);
                    let below_hi =
                        pos < y.hi || (y.hi_closed && pos == y.hi);
                    if above_lo && below_hi {
                        mass += self.cell_mass(i, a);
                    }
                }
            }
            GridKind::Diffuse => {
                for a in 1..=k {
                    let cell_lo = ratio(a as i64 - 1, k as i64);
                    let cell_hi = ratio(a as i64, k as i64);
                    let lo = if &y.lo > &cell_lo { y.lo.clone() } else { cell_lo };
                    let hi = if &y.hi < &cell_hi { y.hi.clone() } else { cell_hi };
                    if lo < hi {
                        mass += self.cell_mass(i, a) * int(k as i64) * (hi - lo);
                    }
                }
                // boundary deficit atom at y = 1
                let one = BigRational::one();
                let include_one = (one > y.lo || (y.lo_closed && one == y.lo))
                    && (one < y.hi || (y.hi_closed && one == y.hi));
                if include_one {
                    mass += self.row_deficit(i);
                }
            }
        }
        mass
    }
}

/// Classification of a grid against the limit-permutation axioms.
///
/// `mass_violation` is the exact sup over y of |∫₀¹ Z(x,y) dx − y|, attained
/// at grid breakpoints (one-sided limits included for the atomic kind).
#[derive(Debug, Clone)]
pub struct LimitPermutonReport {
    pub cdf_rows_ok: bool,
    pub top_value_ok: bool,
    pub mass_violation: BigRational,
}

impl LimitPermutonReport {
    /// Valid limit permutation within an absolute tolerance on the mass
    /// condition. Exact validity is `passes(&BigRational::zero())`.
    pub fn passes(&self, tol: &BigRational) -> bool {
        self.cdf_rows_ok && self.top_value_ok && self.mass_violation <= *tol
    }

    pub fn mass_violation_f64(&self) -> f64 {
        to_f64(&self.mass_violation)
    }
}

/// Checks the two limit-permutation axioms: every row a CDF reaching 1, and
/// the mass condition ∫₀¹ Z(x, y) dx = y for every y.
///
/// A diffuse grid passes with violation 0 iff its column sums satisfy
/// Σᵢ cdf[i][j] = j; atomic grids built from permutations always fail.
pub fn validate_limit_permutation(z: &GridPermuton) -> LimitPermutonReport {
    let k = z.order();
    // construction enforces monotone rows; entries are range-checked
    let cdf_rows_ok = true;
    let top_value_ok = (1..=k).all(|i| z.cdf_at(i, k).is_one());

    // g(y) = ∫ Z(x, y) dx = (1/k) Σ_i F_i(y); compare against y.
    let col_avg =
        |j: usize| -> BigRational { (1..=k).map(|i| z.cdf_at(i, j)).sum::<BigRational>() / int(k as i64) };

    let mut violation = BigRational::zero();
    match z.kind() {
        GridKind::Atomic => {
            // F_i is the step function: g is constant cdf-column-average on
            // each cell ((a−1)/k, a/k]; sup on the cell is reached at one of
            // the (one-sided) ends.
            for a in 1..=k {
                let v = col_avg(a);
                let lo = ratio(a as i64 - 1, k as i64);
                let hi = ratio(a as i64, k as i64);
                for bound in [&lo, &hi] {
                    let dev = (&v - bound).abs();
                    if dev > violation {
                        violation = dev;
                    }
                }
            }
        }
        GridKind::Diffuse => {
            // g is piecewise linear through the breakpoint values, so the
            // deviation from y is maximal at breakpoints.
            for a in 1..=k {
                let dev = (col_avg(a) - ratio(a as i64, k as i64)).abs();
                if dev > violation {
                    violation = dev;
                }
            }
        }
    }
    LimitPermutonReport {
        cdf_rows_ok,
        top_value_ok,
        mass_violation: violation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityMethod {
    Exact,
    MonteCarlo,
}

/// Pattern density in a permuton, with the evaluation method and its error
/// guarantee.
#[derive(Debug, Clone)]
pub struct DensityResult {
    pub value: f64,
    /// Exact rational value when the evaluation stayed in exact arithmetic.
    pub exact: Option<BigRational>,
    pub method: DensityMethod,
    /// Exact: 0. Monte Carlo: 99% Azuma envelope for the mean estimator.
    pub error_bound: f64,
    /// Monte Carlo only: CLT standard error of the mean.
    pub std_error: Option<f64>,
}

/// Exact pattern density t(τ, Z) of τ (|τ| = m) in a grid permuton.
///
/// Fubini decomposition over the grid: (1) the x-side contributes the
/// multinomial probability that sorted i.i.d. uniforms realize a given
/// non-decreasing x-cell multiplicity vector; (2) each index draws its
/// y-slot with the row's slot mass; (3) cross-slot order is forced, and
/// within a shared slot a diffuse cell orders its g indices uniformly
/// (factor 1/g!) while atomic slots tie and contribute nothing to the
/// strict simplex. The boundary deficit behaves atomically in both kinds.
pub fn exact_density(tau: &Pattern, z: &GridPermuton) -> Result<DensityResult> {
    exact_density_guarded(tau, z, DEFAULT_DENSITY_MAX_M, DEFAULT_DENSITY_MAX_K)
}

pub fn exact_density_guarded(
    tau: &Pattern,
    z: &GridPermuton,
    max_m: usize,
    max_k: usize,
) -> Result<DensityResult> {
    let m = tau.len();
    let k = z.order();
    if m > max_m || k > max_k {
        return Err(Error::guard(format!(
            "exact density enumerates C(m+k-1,m)·C(k+1,m) terms; m={m} > {max_m} or k={k} > {max_k} \
             exceeds the guard — use the Monte Carlo estimator instead"
        )));
    }
    if m == 1 {
        // Forced by normalization; the defining integral starts at m = 2.
        return Ok(DensityResult {
            value: 1.0,
            exact: Some(BigRational::one()),
            method: DensityMethod::Exact,
            error_bound: 0.0,
            std_error: None,
        });
    }

    let budget = count_assignments(m, k) as u128 * count_assignments(m, k + 1) as u128;
    if budget <= RATIONAL_TERM_BUDGET {
        let value = density_sum_rational(tau, z);
        Ok(DensityResult {
            value: to_f64(&value),
            exact: Some(value),
            method: DensityMethod::Exact,
            error_bound: 0.0,
            std_error: None,
        })
    } else {
        let value = density_sum_f64(tau, z);
        Ok(DensityResult {
            value,
            exact: None,
            method: DensityMethod::Exact,
            error_bound: 0.0,
            std_error: None,
        })
    }
}

fn count_assignments(m: usize, k: usize) -> u64 {
    // C(m + k - 1, m)
    let mut acc = 1u64;
    for i in 0..m as u64 {
        acc = acc * (k as u64 + i) / (i + 1);
    }
    acc
}

fn density_sum_rational(tau: &Pattern, z: &GridPermuton) -> BigRational {
    let m = tau.len();
    let k = z.order();
    let tau_inv = tau.inverse();

    // Δ[i][a]: slot masses per row, a = 1..=k+1.
    let deltas: Vec<Vec<BigRational>> = (1..=k)
        .map(|i| (1..=k + 1).map(|a| z.cell_mass(i, a)).collect())
        .collect();
    let diffuse = z.kind() == GridKind::Diffuse;
    let m_fact = ratio_u(factorial(m as u64), 1u32.into());
    let k_pow: BigRational = int(k as i64).pow(m as i32);

    let mut total = BigRational::zero();
    let mut cells: Vec<usize> = Vec::with_capacity(m);
    enumerate_nondecreasing(&mut cells, 1, k, m, &mut |cells| {
        // x-side weight: m!/(Π n_c!) · k^{-m}
        let mut weight = m_fact.clone();
        let mut run = 1usize;
        for i in 1..m {
            if cells[i] == cells[i - 1] {
                run += 1;
                weight /= int(run as i64);
            } else {
                run = 1;
            }
        }
        weight /= &k_pow;

        // rows listed by rank: index holding rank r is τ⁻¹(r)
        let rows: Vec<usize> = (1..=m)
            .map(|r| cells[tau_inv.image(r) as usize - 1])
            .collect();

        let mut inner = BigRational::zero();
        let mut prod_stack = BigRational::one();
        recurse_slots_rational(
            &rows,
            &deltas,
            diffuse,
            k,
            0,
            0,
            0,
            &mut prod_stack,
            &mut inner,
        );
        total += weight * inner;
    });
    total
}

#[allow(clippy::too_many_arguments)]
fn recurse_slots_rational(
    rows: &[usize],
    deltas: &[Vec<BigRational>],
    diffuse: bool,
    k: usize,
    r: usize,
    last_slot: usize,
    group: usize,
    prod: &mut BigRational,
    acc: &mut BigRational,
) {
    let m = rows.len();
    if r == m {
        *acc += &*prod;
        return;
    }
    // Slots are chosen non-decreasingly in rank order; repeats are allowed
    // only in diffuse cells (slot ≤ k) and divide by the running group size.
    let start = if r == 0 { 1 } else { last_slot };
    for a in start..=k + 1 {
        if a == last_slot && !(diffuse && a <= k) {
            continue;
        }
        let delta = &deltas[rows[r] - 1][a - 1];
        if delta.is_zero() {
            continue;
        }
        let group_size = if a == last_slot { group + 1 } else { 1 };
        let factor = if group_size > 1 {
            delta / int(group_size as i64)
        } else {
            delta.clone()
        };
        let saved = prod.clone();
        *prod *= factor;
        recurse_slots_rational(rows, deltas, diffuse, k, r + 1, a, group_size, prod, acc);
        *prod = saved;
    }
}

fn density_sum_f64(tau: &Pattern, z: &GridPermuton) -> f64 {
    let m = tau.len();
    let k = z.order();
    let tau_inv = tau.inverse();
    let deltas: Vec<Vec<f64>> = (1..=k)
        .map(|i| (1..=k + 1).map(|a| to_f64(&z.cell_mass(i, a))).collect())
        .collect();
    let diffuse = z.kind() == GridKind::Diffuse;
    let mut m_fact = 1.0f64;
    for i in 2..=m {
        m_fact *= i as f64;
    }
    let k_pow = (k as f64).powi(m as i32);

    let mut total = CompensatedSum::default();
    let mut cells: Vec<usize> = Vec::with_capacity(m);
    enumerate_nondecreasing(&mut cells, 1, k, m, &mut |cells| {
        let mut weight = m_fact;
        let mut run = 1usize;
        for i in 1..m {
            if cells[i] == cells[i - 1] {
                run += 1;
                weight /= run as f64;
            } else {
                run = 1;
            }
        }
        weight /= k_pow;
        let rows: Vec<usize> = (1..=m)
            .map(|r| cells[tau_inv.image(r) as usize - 1])
            .collect();
        let mut inner = CompensatedSum::default();
        recurse_slots_f64(&rows, &deltas, diffuse, k, 0, 0, 0, 1.0, &mut inner);
        total.add(weight * inner.value());
    });
    total.value()
}

#[allow(clippy::too_many_arguments)]
fn recurse_slots_f64(
    rows: &[usize],
    deltas: &[Vec<f64>],
    diffuse: bool,
    k: usize,
    r: usize,
    last_slot: usize,
    group: usize,
    prod: f64,
    acc: &mut CompensatedSum,
) {
    let m = rows.len();
    if r == m {
        acc.add(prod);
        return;
    }
    let start = if r == 0 { 1 } else { last_slot };
    for a in start..=k + 1 {
        if a == last_slot && !(diffuse && a <= k) {
            continue;
        }
        let delta = deltas[rows[r] - 1][a - 1];
        if delta == 0.0 {
            continue;
        }
        let group_size = if a == last_slot { group + 1 } else { 1 };
        let factor = if group_size > 1 {
            delta / group_size as f64
        } else {
            delta
        };
        recurse_slots_f64(
            rows,
            deltas,
            diffuse,
            k,
            r + 1,
            a,
            group_size,
            prod * factor,
            acc,
        );
    }
}

fn enumerate_nondecreasing(
    buf: &mut Vec<usize>,
    start: usize,
    k: usize,
    m: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if buf.len() == m {
        f(buf);
        return;
    }
    for c in start..=k {
        buf.push(c);
        enumerate_nondecreasing(buf, c, k, m, f);
        buf.pop();
    }
}

/// Monte-Carlo pattern density: the mean of t(τ, σ(n, Z)) over `reps`
/// independent samples. Unbiased for t(τ, Z); the reported `error_bound` is
/// the 99% Azuma envelope m·√(2·ln(2/0.01)/(n·reps)) from the
/// bounded-difference martingale, and `std_error` the CLT estimate.
pub fn mc_density(
    tau: &Pattern,
    z: &GridPermuton,
    n: usize,
    reps: usize,
    stream: &RandomStream,
) -> Result<DensityResult> {
    let m = tau.len();
    if n < m {
        return Err(Error::argument(format!(
            "sample length {n} is below the pattern length {m}"
        )));
    }
    if reps < 1 {
        return Err(Error::argument("need at least one repetition"));
    }
    let mut sum = BigRational::zero();
    let mut sum_sq = 0.0f64;
    let mut values = Vec::with_capacity(reps);
    for rep in 0..reps {
        let mut rng = stream.substream(rep as u64).rng();
        let sigma = sample_z_random(z, n, &mut rng);
        let t = crate::perm::density(tau, &sigma);
        values.push(to_f64(&t));
        sum += &t;
        sum_sq += to_f64(&t) * to_f64(&t);
    }
    let mean = sum / int(reps as i64);
    let mean_f = to_f64(&mean);
    let variance = (sum_sq / reps as f64 - mean_f * mean_f).max(0.0);
    let std_error = (variance / reps as f64).sqrt();
    let azuma = m as f64 * (2.0 * (2.0 / 0.01f64).ln() / (n as f64 * reps as f64)).sqrt();
    Ok(DensityResult {
        value: mean_f,
        exact: Some(mean),
        method: DensityMethod::MonteCarlo,
        error_bound: azuma,
        std_error: Some(std_error),
    })
}

/// Two-sided bracket for the density in the step function of a weighted
/// permutation of order n:
///
///   (1 − m/n)^m · t(τ, Q) ≤ t(τ, Z_Q) ≤ t(τ, Q) + (m+2)!/n
///
/// clamped to [0, 1]. Requires m < n.
pub fn density_bounds(tau: &Pattern, q: &WeightedPermutation) -> Result<(BigRational, BigRational)> {
    let m = tau.len();
    let n = q.order();
    if m >= n {
        return Err(Error::argument(format!(
            "pattern length {m} must be smaller than the order {n}"
        )));
    }
    let t = crate::weighted::weighted_density(tau, q)?;
    let shrink = (int(1) - ratio(m as i64, n as i64)).pow(m as i32);
    let lower = shrink * &t;
    let upper = t + ratio_u(factorial(m as u64 + 2), (n as u64).into());
    let one = BigRational::one();
    let zero = BigRational::zero();
    Ok((
        lower.max(zero.clone()).min(one.clone()),
        upper.max(zero).min(one),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use crate::perm::all_patterns;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn uniform_grid(k: usize, kind: GridKind) -> GridPermuton {
        let m = GeneralMatrix::from_fn(k, |_, j| ratio(j as i64, k as i64));
        GridPermuton::new(m, kind).unwrap()
    }

    #[test]
    fn uniform_permuton_is_uniform() {
        let z = GridPermuton::uniform();
        assert_eq!(z.order(), 1);
        assert!((z.value_at(0.3, 0.3) - 0.3).abs() < 1e-15);
        assert!((z.value_at(0.9, 0.25) - 0.25).abs() < 1e-15);
        let report = validate_limit_permutation(&z);
        assert!(report.passes(&BigRational::zero()));
        assert!(report.mass_violation.is_zero());
    }

    #[test]
    fn diffuse_uniform_grid_equals_uniform_permuton() {
        let z = uniform_grid(4, GridKind::Diffuse);
        for (x, y) in [(0.1, 0.37), (0.6, 0.91), (0.99, 0.13)] {
            assert!((z.value_at(x, y) - y).abs() < 1e-12, "({x},{y})");
        }
        assert!(validate_limit_permutation(&z).passes(&BigRational::zero()));
    }

    #[test]
    fn atomic_z_has_zero_at_y0() {
        let z = GridPermuton::from_permutation(&perm(&[2, 1, 3]));
        assert_eq!(z.value_at(0.5, 0.0), 0.0);
        assert_eq!(z.value_at(0.0, 0.0), 0.0);
    }

    #[test]
    fn step_permuton_fails_mass_condition() {
        let z = GridPermuton::from_permutation(&perm(&[2, 1]));
        let report = validate_limit_permutation(&z);
        assert!(!report.passes(&ratio(1, 100)));
        assert!(report.mass_violation > ratio(1, 4));
    }

    #[test]
    fn diffuse_grid_from_weighted_violation_bounded() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(2);
        for _ in 0..10 {
            let q = crate::weighted::test_support::random_weighted(4, &mut rng);
            let z = GridPermuton::from_weighted(&q, GridKind::Diffuse);
            let report = validate_limit_permutation(&z);
            // Def 2.4(b) column bounds keep the averaged column within 1/k.
            assert!(report.mass_violation <= ratio(1, 4));
        }
    }

    #[test]
    fn exact_density_uniform_is_reciprocal_factorial() {
        for k in [1usize, 2, 4, 8] {
            let z = if k == 1 {
                GridPermuton::uniform()
            } else {
                uniform_grid(k, GridKind::Diffuse)
            };
            for m in 1..=4 {
                for tau in all_patterns(m) {
                    let d = exact_density(&tau, &z).unwrap();
                    assert_eq!(
                        d.exact.unwrap(),
                        ratio_u(1u32.into(), factorial(m as u64)),
                        "k={k} τ={tau}"
                    );
                }
            }
        }
    }

    #[test]
    fn atomic_single_cell_ties_to_zero() {
        let m = GeneralMatrix::new(vec![vec![BigRational::one()]]).unwrap();
        let z = GridPermuton::new(m, GridKind::Atomic).unwrap();
        for m in 2..=4 {
            for tau in all_patterns(m) {
                let d = exact_density(&tau, &z).unwrap();
                assert!(d.exact.unwrap().is_zero());
            }
        }
        // m = 1 is forced to 1 by normalization.
        assert_eq!(
            exact_density(&perm(&[1]), &z).unwrap().exact.unwrap(),
            BigRational::one()
        );
    }

    #[test]
    fn exact_density_normalizes_on_diffuse_grids() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..4 {
            let q = crate::weighted::test_support::random_weighted(3, &mut rng);
            let z = GridPermuton::from_weighted(&q, GridKind::Diffuse);
            for m in 1..=3 {
                let sum: BigRational = all_patterns(m)
                    .iter()
                    .map(|tau| exact_density(tau, &z).unwrap().exact.unwrap())
                    .sum();
                // valid rows (top = 1) make the pattern outcomes exhaustive
                let deficit: BigRational =
                    (1..=z.order()).map(|i| z.row_deficit(i)).sum();
                if deficit.is_zero() {
                    assert_eq!(sum, BigRational::one(), "m={m}");
                }
            }
        }
    }

    #[test]
    fn density_guard_errors() {
        let z = GridPermuton::uniform();
        let tau = Permutation::identity(7);
        assert!(matches!(
            exact_density(&tau, &z),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn density_bounds_formula() {
        // m=2, n=10, t=1/2 → lower = 0.5·(0.8)² = 0.32, upper clamps to 1.
        let q = {
            let m = GeneralMatrix::from_fn(10, |_, j| ratio(j as i64, 10));
            WeightedPermutation::new(m).unwrap()
        };
        let tau = perm(&[1, 2]);
        let t = crate::weighted::weighted_density(&tau, &q).unwrap();
        let (lo, hi) = density_bounds(&tau, &q).unwrap();
        assert_eq!(lo, &t * ratio(16, 25));
        assert_eq!(hi, BigRational::one()); // t + 24/10 clamps
        assert!(density_bounds(&Permutation::identity(10), &q).is_err());
    }

    #[test]
    fn bracket_shrinks_with_order() {
        let tau = perm(&[2, 1]);
        let mut widths = Vec::new();
        for n in [6usize, 12, 24] {
            let m = GeneralMatrix::from_fn(n, |_, j| ratio(j as i64, n as i64));
            let q = WeightedPermutation::new(m).unwrap();
            let (lo, hi) = density_bounds(&tau, &q).unwrap();
            widths.push(to_f64(&(hi - lo)));
        }
        assert!(widths[0] > widths[1] && widths[1] > widths[2]);
    }
}
