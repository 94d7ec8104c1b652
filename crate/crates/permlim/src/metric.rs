//! Rectangular distances for permutations, weighted permutations, and grid
//! permutons, plus Cooper's discrepancy.
//!
//! All four distances maximize an interval-rectangle discrepancy:
//!
//! * permutations: d_□(σ₁, σ₂) = (1/n)·max_{S,T} ||σ₁(S)∩T| − |σ₂(S)∩T||
//!   over intervals S, T of [n];
//! * weighted permutations: the same objective written through boundary
//!   column differences Q(x,b) − Q(x,a), 0 ≤ a < b ≤ k+1, with Q(i,0) = 0
//!   and Q(i,k+1) = 1;
//! * grid permutons: sup over rectangles [x₁,x₂]×[α₁,α₂] of the
//!   Lebesgue–Stieltjes rectangle-mass difference.
//!
//! The fast paths share one idea: for a fixed row interval S the objective
//! is max − min of a cumulative column profile, so a sweep over row
//! intervals with an incremental profile runs in O(n³) instead of the
//! O(n⁴) of the brute force (which is also provided, as the oracle).
//!
//! Breakpoint sufficiency for permuton distances: on the common refinement
//! of the two grids, rectangle mass is linear in each coordinate of
//! (x₁, x₂, α₁, α₂) separately while the other three are held inside their
//! refinement cells (masses are piecewise bilinear for diffuse grids and
//! piecewise constant in x, atomic in y, for step grids). A coordinate-wise
//! maximization of a multilinear function attains its extremum at cell
//! boundaries, so the sup is attained over refinement breakpoints, with
//! atoms evaluated both "just below" and "at" the breakpoint. The sweep
//! therefore maximizes over an alternating atom/open-interval slot
//! decomposition of the y-axis and is exact.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{MatrixF64, SquareMatrix};
use crate::numeric::{int, ratio, to_f64};
use crate::permuton::{GridKind, GridPermuton};
use crate::perm::Permutation;

/// Maximizing interval pair for the permutation / weighted distances.
///
/// `rows` is the closed interval S (1-based). For permutation distances and
/// the discrepancy, `cols` is the half-open value interval T = [a, b),
/// a < b in [n+1]; for weighted distances, `cols` is the boundary column
/// pair (a, b), 0 ≤ a < b ≤ k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalWitness {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

/// One endpoint of a y-interval in a permuton rectangle: a breakpoint plus
/// whether the breakpoint itself (and any atom sitting on it) is included.
#[derive(Debug, Clone, PartialEq)]
pub struct YInterval {
    pub lo: BigRational,
    pub lo_closed: bool,
    pub hi: BigRational,
    pub hi_closed: bool,
}

/// Maximizing rectangle for permuton distances: a closed x-interval between
/// grid breakpoints and a y-interval with explicit endpoint inclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct RectWitness {
    pub x_lo: BigRational,
    pub x_hi: BigRational,
    pub y: YInterval,
}

// ---------------------------------------------------------------------------
// Permutation distance and discrepancy (exact integer sweeps)
// ---------------------------------------------------------------------------

/// Rectangular distance between two permutations of the same length:
/// exact rational with denominator n. O(n³) sweep; matches
/// [`dist_permutations_brute`].
pub fn dist_permutations(
    s1: &Permutation,
    s2: &Permutation,
) -> Result<(BigRational, IntervalWitness)> {
    let n = s1.len();
    if s2.len() != n {
        return Err(Error::argument(format!(
            "length mismatch: {} vs {}",
            n,
            s2.len()
        )));
    }
    let (best, witness) = sweep_rows(n, |g, x| {
        // adding row x: +1 on values ≥ σ₁(x), −1 on values ≥ σ₂(x)
        for j in s1.image(x) as usize..=n {
            g[j] += 1;
        }
        for j in s2.image(x) as usize..=n {
            g[j] -= 1;
        }
    });
    Ok((ratio(best, n as i64), witness))
}

/// Brute-force rectangular distance: every (S, T) interval pair, each counted
/// directly. The oracle for the sweep.
pub fn dist_permutations_brute(
    s1: &Permutation,
    s2: &Permutation,
) -> Result<(BigRational, IntervalWitness)> {
    let n = s1.len();
    if s2.len() != n {
        return Err(Error::argument("length mismatch"));
    }
    let mut best = 0i64;
    let mut witness = IntervalWitness {
        rows: (1, 1),
        cols: (1, 2),
    };
    for lo in 1..=n {
        for hi in lo..=n {
            for a in 1..=n {
                for b in a + 1..=n + 1 {
                    let mut diff = 0i64;
                    for x in lo..=hi {
                        let v1 = s1.image(x) as usize;
                        let v2 = s2.image(x) as usize;
                        diff += (a <= v1 && v1 < b) as i64 - (a <= v2 && v2 < b) as i64;
                    }
                    if diff.abs() > best {
                        best = diff.abs();
                        witness = IntervalWitness {
                            rows: (lo, hi),
                            cols: (a, b),
                        };
                    }
                }
            }
        }
    }
    Ok((ratio(best, n as i64), witness))
}

/// Re-evaluates a permutation-distance witness: |count₁ − count₂| / n.
pub fn eval_perm_witness(s1: &Permutation, s2: &Permutation, w: &IntervalWitness) -> BigRational {
    let count = |s: &Permutation| {
        (w.rows.0..=w.rows.1)
            .filter(|&x| {
                let v = s.image(x) as usize;
                w.cols.0 <= v && v < w.cols.1
            })
            .count() as i64
    };
    ratio((count(s1) - count(s2)).abs(), s1.len() as i64)
}

/// Cooper's discrepancy D(σ) = max_{S,T} ||σ(S)∩T| − |S||T|/n|, exact, via
/// the same sweep with the |S||T|/n linear correction.
pub fn discrepancy(sigma: &Permutation) -> (BigRational, IntervalWitness) {
    let n = sigma.len() as i64;
    let mut best = 0i64;
    let mut witness = IntervalWitness {
        rows: (1, 1),
        cols: (1, 2),
    };
    // H[j] = n·#{x ∈ S : σ(x) ≤ j} − |S|·j; objective over T=[a,b) is
    // |H[b−1] − H[a−1]| / n, maximized as max−min over j.
    let mut counts = vec![0i64; sigma.len() + 1];
    for lo in 1..=sigma.len() {
        for c in counts.iter_mut() {
            *c = 0;
        }
        for hi in lo..=sigma.len() {
            for j in sigma.image(hi) as usize..=sigma.len() {
                counts[j] += 1;
            }
            let len = (hi - lo + 1) as i64;
            let mut max_v = i64::MIN;
            let mut min_v = i64::MAX;
            let mut max_p = 0;
            let mut min_p = 0;
            for (j, &c) in counts.iter().enumerate() {
                let h = n * c - len * j as i64;
                if h > max_v {
                    max_v = h;
                    max_p = j;
                }
                if h < min_v {
                    min_v = h;
                    min_p = j;
                }
            }
            if max_v - min_v > best {
                best = max_v - min_v;
                let (a, b) = (max_p.min(min_p) + 1, max_p.max(min_p) + 1);
                witness = IntervalWitness {
                    rows: (lo, hi),
                    cols: if a < b { (a, b) } else { (1, 2) },
                };
            }
        }
    }
    (ratio(best, n), witness)
}

/// Exhaustive discrepancy scan over all (S, T) pairs, the oracle for
/// [`discrepancy`]. Counts come from a 2-D prefix table; the objective is
/// compared as the integer n·||σ(S)∩T| − |S||T|/n|.
pub fn discrepancy_brute(sigma: &Permutation) -> BigRational {
    let n = sigma.len();
    // counts[i][v] = #{x ≤ i : σ(x) ≤ v}
    let mut counts = vec![vec![0i64; n + 1]; n + 1];
    for i in 1..=n {
        let vi = sigma.image(i) as usize;
        for v in 0..=n {
            counts[i][v] = counts[i - 1][v] + (vi <= v) as i64;
        }
    }
    let mut best = 0i64;
    for lo in 1..=n {
        for hi in lo..=n {
            let s_len = (hi - lo + 1) as i64;
            for a in 1..=n {
                for b in a + 1..=n + 1 {
                    let count =
                        counts[hi][b - 1] - counts[lo - 1][b - 1] - counts[hi][a - 1]
                            + counts[lo - 1][a - 1];
                    let t_len = (b - a) as i64;
                    let val = (n as i64 * count - s_len * t_len).abs();
                    if val > best {
                        best = val;
                    }
                }
            }
        }
    }
    ratio(best, n as i64)
}

/// Re-evaluates a discrepancy witness exactly.
pub fn eval_discrepancy_witness(sigma: &Permutation, w: &IntervalWitness) -> BigRational {
    let n = sigma.len() as i64;
    let count = (w.rows.0..=w.rows.1)
        .filter(|&x| {
            let v = sigma.image(x) as usize;
            w.cols.0 <= v && v < w.cols.1
        })
        .count() as i64;
    let s_len = (w.rows.1 - w.rows.0 + 1) as i64;
    let t_len = (w.cols.1 - w.cols.0) as i64;
    (int(count) - ratio(s_len * t_len, n)).abs()
}

/// Shared row-interval sweep on integer profiles. `add_row(g, x)` folds row x
/// into the cumulative profile g (indices 0..=n, g[0] fixed at the empty
/// reference 0). Returns the max of (max − min) over profiles and a witness
/// with `cols` as the half-open value interval.
fn sweep_rows(
    n: usize,
    mut add_row: impl FnMut(&mut [i64], usize),
) -> (i64, IntervalWitness) {
    let mut best = 0i64;
    let mut witness = IntervalWitness {
        rows: (1, 1),
        cols: (1, 2),
    };
    let mut g = vec![0i64; n + 1];
    for lo in 1..=n {
        for v in g.iter_mut() {
            *v = 0;
        }
        for hi in lo..=n {
            add_row(&mut g, hi);
            let mut max_v = i64::MIN;
            let mut min_v = i64::MAX;
            let mut max_p = 0usize;
            let mut min_p = 0usize;
            for (j, &v) in g.iter().enumerate() {
                if v > max_v {
                    max_v = v;
                    max_p = j;
                }
                if v < min_v {
                    min_v = v;
                    min_p = j;
                }
            }
            if max_v - min_v > best {
                best = max_v - min_v;
                let (a, b) = (max_p.min(min_p) + 1, max_p.max(min_p) + 1);
                witness = IntervalWitness {
                    rows: (lo, hi),
                    cols: (a, b),
                };
            }
        }
    }
    (best, witness)
}

// ---------------------------------------------------------------------------
// Weighted distance (generic over exact rationals and f64)
// ---------------------------------------------------------------------------

/// Scalar abstraction for the matrix/permuton sweeps: exact rationals for
/// identities, f64 for large instances.
pub trait SweepScalar: Clone + PartialOrd + Zero {
    fn add_in(&mut self, other: &Self);
    fn diff(a: &Self, b: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    fn scale_down(&self, n: usize) -> Self;
}

impl SweepScalar for f64 {
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn diff(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn from_ratio(r: &BigRational) -> Self {
        to_f64(r)
    }
    fn scale_down(&self, n: usize) -> Self {
        self / n as f64
    }
}

impl SweepScalar for BigRational {
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn diff(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
    fn scale_down(&self, n: usize) -> Self {
        self / int(n as i64)
    }
}

/// Column-profile sweep over matrices with the boundary convention: rows of
/// `d` are the per-row differences over columns 0..=k+1 (both boundary
/// columns are identically zero). Returns ((max − min), witness).
fn sweep_matrix_profiles<T: SweepScalar>(d: &[Vec<T>]) -> (T, IntervalWitness) {
    let k2 = d[0].len(); // k + 2 entries
    let n = d.len();
    let mut best = T::zero();
    let mut witness = IntervalWitness {
        rows: (1, 1),
        cols: (0, k2 - 1),
    };
    let mut g: Vec<T> = vec![T::zero(); k2];
    for lo in 0..n {
        for v in g.iter_mut() {
            *v = T::zero();
        }
        for (hi, row) in d.iter().enumerate().skip(lo) {
            let mut max_p = 0usize;
            let mut min_p = 0usize;
            for (j, inc) in row.iter().enumerate() {
                g[j].add_in(inc);
            }
            for j in 1..k2 {
                if g[j] > g[max_p] {
                    max_p = j;
                }
                if g[j] < g[min_p] {
                    min_p = j;
                }
            }
            let spread = T::diff(&g[max_p], &g[min_p]);
            if spread > best {
                best = spread;
                let (a, b) = (max_p.min(min_p), max_p.max(min_p));
                witness = IntervalWitness {
                    rows: (lo + 1, hi + 1),
                    cols: if a < b { (a, b) } else { (0, k2 - 1) },
                };
            }
        }
    }
    (best, witness)
}

fn weighted_profiles<T: SweepScalar>(
    q1: &SquareMatrix<T>,
    q2: &SquareMatrix<T>,
) -> Result<Vec<Vec<T>>> {
    let k = q1.order();
    if q2.order() != k {
        return Err(Error::argument(format!(
            "order mismatch: {} vs {}",
            k,
            q2.order()
        )));
    }
    Ok((1..=k)
        .map(|i| {
            let mut row = Vec::with_capacity(k + 2);
            row.push(T::zero()); // column 0: both sides 0
            for j in 1..=k {
                row.push(T::diff(q1.get(i, j), q2.get(i, j)));
            }
            row.push(T::zero()); // column k+1: both sides 1
            row
        })
        .collect())
}

/// Rectangular distance between equal-order matrices under the weighted
/// convention, exact rationals. O(k³); matches [`dist_weighted_brute`].
///
/// Accepts any [0,1] matrices (blow-ups included): the definition only needs
/// the boundary convention.
pub fn dist_weighted(
    q1: &SquareMatrix<BigRational>,
    q2: &SquareMatrix<BigRational>,
) -> Result<(BigRational, IntervalWitness)> {
    let d = weighted_profiles(q1, q2)?;
    let (best, witness) = sweep_matrix_profiles(&d);
    Ok((best.scale_down(q1.order()), witness))
}

/// f64 variant of [`dist_weighted`] for large orders.
pub fn dist_weighted_f64(q1: &MatrixF64, q2: &MatrixF64) -> Result<(f64, IntervalWitness)> {
    let d = weighted_profiles(q1, q2)?;
    let (best, witness) = sweep_matrix_profiles(&d);
    Ok((best.scale_down(q1.order()), witness))
}

/// Direct enumeration of all (S, a, b) triples; the oracle for the sweep.
pub fn dist_weighted_brute(
    q1: &SquareMatrix<BigRational>,
    q2: &SquareMatrix<BigRational>,
) -> Result<BigRational> {
    let k = q1.order();
    if q2.order() != k {
        return Err(Error::argument("order mismatch"));
    }
    let bounded = |q: &SquareMatrix<BigRational>, i: usize, j: usize| -> BigRational {
        if j == 0 {
            BigRational::zero()
        } else if j == k + 1 {
            BigRational::one()
        } else {
            q.get(i, j).clone()
        }
    };
    let mut best = BigRational::zero();
    for lo in 1..=k {
        for hi in lo..=k {
            for a in 0..=k {
                for b in a + 1..=k + 1 {
                    let mut sum = BigRational::zero();
                    for x in lo..=hi {
                        sum += (bounded(q1, x, b) - bounded(q1, x, a))
                            - (bounded(q2, x, b) - bounded(q2, x, a));
                    }
                    let val = sum.abs();
                    if val > best {
                        best = val;
                    }
                }
            }
        }
    }
    Ok(best / int(k as i64))
}

/// Re-evaluates a weighted-distance witness exactly.
pub fn eval_weighted_witness(
    q1: &SquareMatrix<BigRational>,
    q2: &SquareMatrix<BigRational>,
    w: &IntervalWitness,
) -> BigRational {
    let k = q1.order();
    let bounded = |q: &SquareMatrix<BigRational>, i: usize, j: usize| -> BigRational {
        if j == 0 {
            BigRational::zero()
        } else if j == k + 1 {
            BigRational::one()
        } else {
            q.get(i, j).clone()
        }
    };
    let mut sum = BigRational::zero();
    for x in w.rows.0..=w.rows.1 {
        sum += (bounded(q1, x, w.cols.1) - bounded(q1, x, w.cols.0))
            - (bounded(q2, x, w.cols.1) - bounded(q2, x, w.cols.0));
    }
    sum.abs() / int(k as i64)
}

// ---------------------------------------------------------------------------
// Permuton distance
// ---------------------------------------------------------------------------

/// y-axis decomposition of the common refinement: alternating atoms (at the
/// breakpoints, index t ↦ breakpoint t) and open intervals between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Atom(usize),
    Between(usize, usize),
}

struct SlotGrid {
    /// Sorted breakpoints including 0 and 1.
    breaks: Vec<BigRational>,
    slots: Vec<Slot>,
}

impl SlotGrid {
    fn common(k1: usize, k2: usize) -> SlotGrid {
        let mut breaks: Vec<BigRational> = Vec::new();
        for k in [k1, k2] {
            for j in 0..=k {
                breaks.push(ratio(j as i64, k as i64));
            }
        }
        breaks.sort();
        breaks.dedup();
        let mut slots = Vec::with_capacity(2 * breaks.len() - 1);
        for t in 0..breaks.len() {
            slots.push(Slot::Atom(t));
            if t + 1 < breaks.len() {
                slots.push(Slot::Between(t, t + 1));
            }
        }
        SlotGrid { breaks, slots }
    }
}

/// Per-row slot masses of one grid permuton on a common slot grid.
fn row_slot_masses<T: SweepScalar>(z: &GridPermuton, row: usize, grid: &SlotGrid) -> Vec<T> {
    let k = z.order();
    grid.slots
        .iter()
        .map(|slot| match (slot, z.kind()) {
            (Slot::Atom(t), GridKind::Atomic) => {
                // Atom slots a = 1..=k+1 sit at (a−1)/k; breakpoints are
                // exact rationals, so membership is an exact comparison.
                let y = &grid.breaks[*t];
                let scaled = y * int(k as i64);
                if scaled.is_integer() {
                    let a = scaled.to_integer();
                    let a: usize = num::ToPrimitive::to_usize(&a).unwrap();
                    T::from_ratio(&z.cell_mass(row, a + 1))
                } else {
                    T::zero()
                }
            }
            (Slot::Atom(t), GridKind::Diffuse) => {
                // Diffuse rows are atomless except for a possible mass
                // deficit collapsed at y = 1.
                if grid.breaks[*t].is_one() {
                    T::from_ratio(&z.cell_mass(row, k + 1))
                } else {
                    T::zero()
                }
            }
            (Slot::Between(t0, t1), GridKind::Atomic) => {
                let _ = (t0, t1);
                T::zero()
            }
            (Slot::Between(t0, t1), GridKind::Diffuse) => {
                // The open interval lies inside a single cell of this grid.
                let lo = &grid.breaks[*t0];
                let hi = &grid.breaks[*t1];
                let cell = cell_of(lo, hi, k);
                let density = z.cell_mass(row, cell) * int(k as i64);
                T::from_ratio(&(density * (hi - lo)))
            }
        })
        .collect()
}

/// Index of the cell of a k-grid containing the open interval (lo, hi).
fn cell_of(lo: &BigRational, hi: &BigRational, k: usize) -> usize {
    debug_assert!(lo < hi);
    // midpoint avoids boundary ambiguity
    let mid = (lo + hi) / int(2);
    let scaled = mid * int(k as i64);
    let cell = scaled.floor().to_integer();
    let cell: usize = num::ToPrimitive::to_usize(&cell).unwrap();
    cell + 1
}

fn permuton_distance_generic<T: SweepScalar>(
    z1: &GridPermuton,
    z2: &GridPermuton,
) -> (T, RectWitness) {
    let k1 = z1.order();
    let k2 = z2.order();
    let grid = SlotGrid::common(k1, k2);
    let n_slots = grid.slots.len();

    // x-axis: common refinement segments (width, cell in z1, cell in z2).
    let mut xbreaks: Vec<BigRational> = Vec::new();
    for k in [k1, k2] {
        for j in 0..=k {
            xbreaks.push(ratio(j as i64, k as i64));
        }
    }
    xbreaks.sort();
    xbreaks.dedup();
    let n_seg = xbreaks.len() - 1;

    // Per-row slot masses, computed once per distinct row.
    let rows1: Vec<Vec<T>> = (1..=k1).map(|r| row_slot_masses(z1, r, &grid)).collect();
    let rows2: Vec<Vec<T>> = (1..=k2).map(|r| row_slot_masses(z2, r, &grid)).collect();

    // Difference profiles per x-segment: width · (row mass₁ − row mass₂).
    let seg_profiles: Vec<Vec<T>> = (0..n_seg)
        .map(|s| {
            let lo = &xbreaks[s];
            let hi = &xbreaks[s + 1];
            let width = T::from_ratio(&(hi - lo));
            let c1 = cell_of(lo, hi, k1);
            let c2 = cell_of(lo, hi, k2);
            (0..n_slots)
                .map(|t| T::mul(&T::diff(&rows1[c1 - 1][t], &rows2[c2 - 1][t]), &width))
                .collect()
        })
        .collect();

    // Sweep over x-segment intervals; inner objective is max−min of the
    // prefix sums over slots (prefix 0 = empty run included).
    let mut best = T::zero();
    let mut arg = (0usize, 0usize, 0usize, 0usize); // (s0, s1, pfx_lo, pfx_hi)
    let mut acc: Vec<T> = vec![T::zero(); n_slots];
    for s0 in 0..n_seg {
        for v in acc.iter_mut() {
            *v = T::zero();
        }
        for (s1, profile) in seg_profiles.iter().enumerate().skip(s0) {
            let mut prefix = T::zero();
            let mut max_v = T::zero();
            let mut min_v = T::zero();
            let mut max_p = 0usize;
            let mut min_p = 0usize;
            for (t, inc) in profile.iter().enumerate() {
                acc[t].add_in(inc);
                prefix.add_in(&acc[t]);
                if prefix > max_v {
                    max_v = prefix.clone();
                    max_p = t + 1;
                }
                if prefix < min_v {
                    min_v = prefix.clone();
                    min_p = t + 1;
                }
            }
            let spread = T::diff(&max_v, &min_v);
            if spread > best {
                best = spread;
                arg = (s0, s1, max_p.min(min_p), max_p.max(min_p));
            }
        }
    }

    let witness = if arg.2 == arg.3 {
        // distance zero: the full square re-evaluates to the same value
        RectWitness {
            x_lo: BigRational::zero(),
            x_hi: BigRational::one(),
            y: YInterval {
                lo: BigRational::zero(),
                lo_closed: true,
                hi: BigRational::one(),
                hi_closed: true,
            },
        }
    } else {
        let (s0, s1, p_lo, p_hi) = arg;
        let first = grid.slots[p_lo]; // first slot of the run
        let last = grid.slots[p_hi - 1];
        let (lo, lo_closed) = match first {
            Slot::Atom(t) => (grid.breaks[t].clone(), true),
            Slot::Between(t0, _) => (grid.breaks[t0].clone(), false),
        };
        let (hi, hi_closed) = match last {
            Slot::Atom(t) => (grid.breaks[t].clone(), true),
            Slot::Between(_, t1) => (grid.breaks[t1].clone(), false),
        };
        RectWitness {
            x_lo: xbreaks[s0].clone(),
            x_hi: xbreaks[s1 + 1].clone(),
            y: YInterval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            },
        }
    };
    (best, witness)
}

/// Rectangular distance between grid permutons, f64 evaluation. Exact on the
/// breakpoint lattice up to floating rounding; use
/// [`dist_permutons_exact`] for exact rationals.
pub fn dist_permutons(z1: &GridPermuton, z2: &GridPermuton) -> (f64, RectWitness) {
    permuton_distance_generic::<f64>(z1, z2)
}

/// Exact-rational rectangular distance between grid permutons.
pub fn dist_permutons_exact(z1: &GridPermuton, z2: &GridPermuton) -> (BigRational, RectWitness) {
    permuton_distance_generic::<BigRational>(z1, z2)
}

/// d_□(σ, Z) := d_□(Z_σ, Z): builds the step permuton of σ and delegates.
pub fn dist_perm_vs_permuton(sigma: &Permutation, z: &GridPermuton) -> (f64, RectWitness) {
    dist_permutons(&GridPermuton::from_permutation(sigma), z)
}

/// Exact variant of [`dist_perm_vs_permuton`].
pub fn dist_perm_vs_permuton_exact(
    sigma: &Permutation,
    z: &GridPermuton,
) -> (BigRational, RectWitness) {
    dist_permutons_exact(&GridPermuton::from_permutation(sigma), z)
}

/// Exact mass of the witness rectangle difference: re-evaluates a permuton
/// witness through [`GridPermuton::rect_mass`].
pub fn eval_rect_witness(z1: &GridPermuton, z2: &GridPermuton, w: &RectWitness) -> BigRational {
    (z1.rect_mass(&w.x_lo, &w.x_hi, &w.y) - z2.rect_mass(&w.x_lo, &w.x_hi, &w.y)).abs()
}
