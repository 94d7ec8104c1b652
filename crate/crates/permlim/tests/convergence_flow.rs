//! End-to-end convergence diagnostics on sampled sequences.

mod common;

use common::{random_valid_grid, rng};
use permlim::convergence::{cauchy_report, density_trajectories, estimate_limit, sequence_report, ReportOptions};
use permlim::numeric::to_f64;
use permlim::perm::Permutation;
use permlim::permuton::GridPermuton;
use permlim::sampler::sample_z_random;
use permlim::RandomStream;

fn uniform_samples(lengths: &[usize], seed: u64) -> Vec<Permutation> {
    let z = GridPermuton::uniform();
    lengths
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            sample_z_random(&z, n, &mut RandomStream::with_stream(seed, i as u64).rng())
        })
        .collect()
}

#[test]
fn uniform_sample_trajectories_approach_one_half() {
    let seq = uniform_samples(&[50, 100, 200, 400, 800], 11);
    let t = density_trajectories(&seq, 2).unwrap();
    let idx = t
        .patterns
        .iter()
        .position(|p| p.images() == [2, 1])
        .unwrap();
    let first = to_f64(&t.values[idx][0]);
    let last = to_f64(t.values[idx].last().unwrap());
    assert!((last - 0.5).abs() < 0.05, "t((2,1), σ_last) = {last}");
    assert!((last - 0.5).abs() <= (first - 0.5).abs() + 0.05);
}

#[test]
fn growing_samples_have_shrinking_tail_distances() {
    let seq = uniform_samples(&[100, 200, 400, 800], 13);
    let early = cauchy_report(&seq[..2].to_vec(), 1.0, 2).unwrap();
    let late = cauchy_report(&seq[2..].to_vec(), 1.0, 2).unwrap();
    assert!(
        late.max_tail_distance < early.max_tail_distance,
        "early {} vs late {}",
        early.max_tail_distance,
        late.max_tail_distance
    );
}

#[test]
fn estimated_limit_of_uniform_samples_matches_closed_form() {
    // Cell averages of Z_u: k²∫∫ y over cell (i, j) is (2j−1)/(2k).
    // Cross-checked against a numeric Riemann integral before comparing to
    // the estimator output.
    let k = 4usize;
    let closed_form: Vec<f64> = (1..=k).map(|j| (2 * j - 1) as f64 / (2 * k) as f64).collect();
    for (j, &cf) in closed_form.iter().enumerate() {
        let mut riemann = 0.0;
        let steps = 4000;
        for s in 0..steps {
            let y = (j as f64 + (s as f64 + 0.5) / steps as f64) / k as f64;
            riemann += y / steps as f64;
        }
        let riemann = riemann * k as f64;
        assert!((riemann - cf).abs() < 1e-6, "column {j}: {riemann} vs {cf}");
    }

    let seq = uniform_samples(&[700, 750, 800, 850], 17);
    let est = estimate_limit(&seq, k, 4).unwrap();
    for i in 1..=k {
        for j in 1..=k {
            let got = to_f64(est.average.get(i, j));
            assert!(
                (got - closed_form[j - 1]).abs() < 0.08,
                "entry ({i},{j}) = {got}, expected ≈ {}",
                closed_form[j - 1]
            );
        }
    }
}

#[test]
fn estimated_limit_recovers_sampled_grid() {
    // Samples from a fixed valid diffuse grid: the estimated k-grid must
    // approach the grid's cell averages (cdf[i][j−1] + cdf[i][j]) / 2.
    let k = 3usize;
    let z = random_valid_grid(k, &mut rng(401));
    let seq: Vec<Permutation> = (0..6)
        .map(|i| sample_z_random(&z, 900, &mut RandomStream::with_stream(19, i).rng()))
        .collect();
    let est = estimate_limit(&seq, k, 6).unwrap();
    for i in 1..=k {
        for j in 1..=k {
            let lo = if j == 1 {
                0.0
            } else {
                to_f64(z.cdf().get(i, j - 1))
            };
            let hi = to_f64(z.cdf().get(i, j));
            let expected = 0.5 * (lo + hi);
            let got = to_f64(est.average.get(i, j));
            assert!(
                (got - expected).abs() < 0.08,
                "entry ({i},{j}) = {got}, expected ≈ {expected}"
            );
        }
    }
    assert!(est.max_spread < 0.2);
}

#[test]
fn full_report_assembles_and_serializes() {
    let seq = uniform_samples(&[150, 200, 260, 330], 23);
    let report = sequence_report(
        &seq,
        &ReportOptions {
            max_m: 3,
            epsilon: 0.2,
            window: 3,
            estimate_k: Some(2),
        },
    )
    .unwrap();
    let json = report.to_json();
    assert!(json.contains("\"format_version\": 1"));
    assert!(json.contains("\"cauchy_pass\""));
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed["lengths"].as_array().unwrap().len(), 4);

    let csv = report.trajectories_csv();
    assert_eq!(csv.lines().count(), 5); // header + 4 elements
    assert!(csv.starts_with("n,length,1,"));
    let dcsv = report.distances_csv();
    assert_eq!(dcsv.lines().count(), 4); // header + window
}
