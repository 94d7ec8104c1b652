//! Diagnostics for permutation sequences: density trajectories, Cauchy
//! evidence under the rectangular distance, and limit-grid estimation.
//!
//! Verdicts here are advisory: convergence is an asymptotic notion, so the
//! reports state which thresholds were used and what was observed at finite
//! scale, never that a sequence "converges".

use num::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::csv_field;
use crate::matrix::GeneralMatrix;
use crate::metric::dist_permutons;
use crate::numeric::{int, to_f64};
use crate::perm::{all_patterns, density_vector_guarded, Pattern, Permutation};
use crate::permuton::{GridKind, GridPermuton};
use crate::weighted::{equitable_partition, partition_matrix, validate_weighted, WeightedPermutation};

/// Density trajectories: for every pattern τ with |τ| ≤ max_m, the exact
/// sequence t(τ, σ_n) across the input sequence.
#[derive(Debug, Clone)]
pub struct Trajectories {
    pub max_m: usize,
    pub patterns: Vec<Pattern>,
    /// values[p][n] = t(patterns[p], seq[n]); exact rationals end to end.
    pub values: Vec<Vec<BigRational>>,
}

pub fn density_trajectories(seq: &[Permutation], max_m: usize) -> Result<Trajectories> {
    if seq.is_empty() {
        return Err(Error::argument("sequence must be non-empty"));
    }
    if max_m < 1 || max_m > 4 {
        return Err(Error::guard(format!(
            "trajectory pattern length {max_m} outside 1..=4"
        )));
    }
    let patterns: Vec<Pattern> = (1..=max_m).flat_map(all_patterns).collect();
    let mut values = vec![Vec::with_capacity(seq.len()); patterns.len()];
    for sigma in seq {
        let mut offset = 0;
        for m in 1..=max_m {
            let vector = density_vector_guarded(m, sigma, max_m)?;
            for (_, d) in vector {
                values[offset].push(d);
                offset += 1;
            }
        }
    }
    Ok(Trajectories {
        max_m,
        patterns,
        values,
    })
}

/// Cauchy evidence over a tail window: all pairwise rectangular distances
/// between the last `window` elements, computed on the step permutons (which
/// handles unequal lengths), and the verdict max < ε.
#[derive(Debug, Clone)]
pub struct CauchyReport {
    pub epsilon: f64,
    pub window: usize,
    /// Pairwise distances over the tail, square with zero diagonal.
    pub distances: Vec<Vec<f64>>,
    pub max_tail_distance: f64,
    pub pass: bool,
}

pub fn cauchy_report(seq: &[Permutation], epsilon: f64, window: usize) -> Result<CauchyReport> {
    if window < 1 || window > seq.len() {
        return Err(Error::argument(format!(
            "window {window} outside 1..={}",
            seq.len()
        )));
    }
    let tail = &seq[seq.len() - window..];
    let grids: Vec<GridPermuton> = tail.iter().map(GridPermuton::from_permutation).collect();
    let mut distances = vec![vec![0.0f64; window]; window];
    let mut max_tail = 0.0f64;
    for i in 0..window {
        for j in i + 1..window {
            let (d, _) = dist_permutons(&grids[i], &grids[j]);
            distances[i][j] = d;
            distances[j][i] = d;
            max_tail = max_tail.max(d);
        }
    }
    Ok(CauchyReport {
        epsilon,
        window,
        distances,
        max_tail_distance: max_tail,
        pass: max_tail < epsilon,
    })
}

/// Estimated limit grid: entrywise average of the tail's k-partition
/// matrices, with the max per-entry deviation as an empirical spread.
#[derive(Debug, Clone)]
pub struct LimitEstimate {
    pub k: usize,
    pub tail: usize,
    pub grid: GridPermuton,
    pub average: GeneralMatrix,
    /// spread[i][j] = max over the tail of |Q_n(i,j) − average(i,j)|.
    pub spread: Vec<Vec<f64>>,
    pub max_spread: f64,
}

/// Averages the partition matrices Q_{σ_n, P_k} over the last `tail`
/// elements and returns the diffuse grid built from the average. Every tail
/// element must satisfy n > 4k² so the partition matrices are weighted
/// permutations; their average then is too.
pub fn estimate_limit(seq: &[Permutation], k: usize, tail: usize) -> Result<LimitEstimate> {
    if tail < 1 || tail > seq.len() {
        return Err(Error::argument(format!(
            "tail {tail} outside 1..={}",
            seq.len()
        )));
    }
    let tail_seq = &seq[seq.len() - tail..];
    for sigma in tail_seq {
        if sigma.len() <= 4 * k * k {
            return Err(Error::feasibility(format!(
                "tail element of length {} needs n > 4k² = {} for k = {k}",
                sigma.len(),
                4 * k * k
            )));
        }
    }
    let matrices: Vec<GeneralMatrix> = tail_seq
        .iter()
        .map(|sigma| partition_matrix(sigma, &equitable_partition(sigma.len(), k)?))
        .collect::<Result<_>>()?;

    let count = int(tail as i64);
    let average = GeneralMatrix::from_fn(k, |i, j| {
        matrices
            .iter()
            .map(|m| m.get(i, j).clone())
            .sum::<BigRational>()
            / &count
    });

    let mut spread = vec![vec![0.0f64; k]; k];
    let mut max_spread = 0.0f64;
    for m in &matrices {
        for i in 1..=k {
            for j in 1..=k {
                let dev = to_f64(&(m.get(i, j) - average.get(i, j))).abs();
                if dev > spread[i - 1][j - 1] {
                    spread[i - 1][j - 1] = dev;
                }
                max_spread = max_spread.max(dev);
            }
        }
    }

    debug_assert!(validate_weighted(&average).pass);
    let grid = GridPermuton::from_weighted(
        &WeightedPermutation::new(average.clone())?,
        GridKind::Diffuse,
    );
    Ok(LimitEstimate {
        k,
        tail,
        grid,
        average,
        spread,
        max_spread,
    })
}

/// Full diagnostics bundle for a permutation sequence.
#[derive(Debug, Clone)]
pub struct SequenceReport {
    pub lengths: Vec<usize>,
    pub trajectories: Trajectories,
    pub cauchy: CauchyReport,
    pub estimate: Option<LimitEstimate>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub max_m: usize,
    pub epsilon: f64,
    pub window: usize,
    /// Estimate the limit grid at this order over the Cauchy window.
    pub estimate_k: Option<usize>,
}

pub fn sequence_report(seq: &[Permutation], opts: &ReportOptions) -> Result<SequenceReport> {
    let trajectories = density_trajectories(seq, opts.max_m)?;
    let cauchy = cauchy_report(seq, opts.epsilon, opts.window)?;
    let estimate = match opts.estimate_k {
        Some(k) => Some(estimate_limit(seq, k, opts.window)?),
        None => None,
    };
    Ok(SequenceReport {
        lengths: seq.iter().map(Permutation::len).collect(),
        trajectories,
        cauchy,
        estimate,
    })
}

#[derive(Serialize)]
struct TrajectoryJson {
    pattern: String,
    values: Vec<String>,
}

#[derive(Serialize)]
struct EstimateJson {
    k: usize,
    tail: usize,
    average: Vec<Vec<String>>,
    spread: Vec<Vec<f64>>,
    max_spread: f64,
    mass_violation: f64,
}

#[derive(Serialize)]
struct ReportJson {
    format_version: u32,
    lengths: Vec<usize>,
    max_m: usize,
    trajectories: Vec<TrajectoryJson>,
    epsilon: f64,
    window: usize,
    pairwise_distances: Vec<Vec<f64>>,
    max_tail_distance: f64,
    cauchy_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<EstimateJson>,
}

impl SequenceReport {
    pub fn to_json(&self) -> String {
        let trajectories = self
            .trajectories
            .patterns
            .iter()
            .zip(&self.trajectories.values)
            .map(|(p, vals)| TrajectoryJson {
                pattern: p.to_string(),
                values: vals.iter().map(crate::numeric::format_ratio).collect(),
            })
            .collect();
        let estimate = self.estimate.as_ref().map(|e| EstimateJson {
            k: e.k,
            tail: e.tail,
            average: (1..=e.k)
                .map(|i| {
                    (1..=e.k)
                        .map(|j| crate::numeric::format_ratio(e.average.get(i, j)))
                        .collect()
                })
                .collect(),
            spread: e.spread.clone(),
            max_spread: e.max_spread,
            mass_violation: crate::permuton::validate_limit_permutation(&e.grid)
                .mass_violation_f64(),
        });
        let doc = ReportJson {
            format_version: 1,
            lengths: self.lengths.clone(),
            max_m: self.trajectories.max_m,
            trajectories,
            epsilon: self.cauchy.epsilon,
            window: self.cauchy.window,
            pairwise_distances: self.cauchy.distances.clone(),
            max_tail_distance: self.cauchy.max_tail_distance,
            cauchy_pass: self.cauchy.pass,
            estimate,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Trajectory table: one row per sequence element, one column per τ.
    pub fn trajectories_csv(&self) -> String {
        let mut out = String::from("n,length");
        for p in &self.trajectories.patterns {
            out.push(',');
            out.push_str(&csv_field(&p.to_string()));
        }
        out.push('\n');
        for (idx, len) in self.lengths.iter().enumerate() {
            out.push_str(&format!("{},{}", idx + 1, len));
            for vals in &self.trajectories.values {
                out.push(',');
                out.push_str(&crate::numeric::format_ratio(&vals[idx]));
            }
            out.push('\n');
        }
        out
    }

    /// Square pairwise-distance table over the tail window.
    pub fn distances_csv(&self) -> String {
        let w = self.cauchy.window;
        let offset = self.lengths.len() - w;
        let mut out = String::from("n");
        for j in 0..w {
            out.push_str(&format!(",{}", offset + j + 1));
        }
        out.push('\n');
        for i in 0..w {
            out.push_str(&format!("{}", offset + i + 1));
            for j in 0..w {
                out.push_str(&format!(",{}", self.cauchy.distances[i][j]));
            }
            out.push('\n');
        }
        out
    }
}
