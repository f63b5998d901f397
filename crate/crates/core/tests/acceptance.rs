//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured quantities once its assertions hold.
//!
//! Error comparisons are made only where the measured error is at least
//! 1e-13: below that an f64 evaluation measures its own rounding noise,
//! not the formula's accuracy.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hardy_interp::baselines::ganelius_nodes;
use hardy_interp::harness::{nu_max_bound, Case, ExperimentSpec};
use hardy_interp::{
    build_density, chirp_sum, compute_k, cumulative_density, sampling_points, solve_alpha,
    weighted_potential, DesignConfig,
};

const D: f64 = PI / 4.0;
/// Errors below this are unmeasurable in f64 and excluded from ordering
/// and envelope comparisons.
const ERROR_FLOOR: f64 = 1e-13;

fn pass(criterion: u32, detail: String) {
    println!("criterion {criterion:2} PASS - {detail}");
}

#[test]
fn criterion_01_parameter_solver() {
    let start = Instant::now();
    let w = hardy_interp::Weight::single_exponential(2.0, 1.0).unwrap();
    let cfg = DesignConfig::new(D, 100).unwrap();
    let alpha = solve_alpha(&w, &cfg).unwrap();
    let k = compute_k(&w, D, alpha);
    let elapsed = start.elapsed();

    // closed-form quadratic oracle: a^2 + a + 1/2 = 202 pi^2 / 8
    let oracle = (-1.0 + (101.0 * PI * PI - 1.0).sqrt()) / 2.0;
    assert!((alpha - oracle).abs() < 1e-8);
    assert!((alpha - 15.2784).abs() <= 1e-4, "alpha = {alpha}");
    assert!((k - 31.5568).abs() <= 1e-4, "K = {k}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(1, format!("alpha = {alpha:.6}, K = {k:.6} in {elapsed:?}"));
}

#[test]
fn criterion_02_mass_conservation() {
    let mut detail = String::new();
    for case in [Case::SeCase1, Case::GaussianCase2, Case::DeCase3] {
        let start = Instant::now();
        let w = case.weight();
        for n in [10usize, 50, 100] {
            let cfg = DesignConfig::new(D, n).unwrap();
            let table = build_density(&w, &cfg).unwrap();
            let target = 2.0 * (n + 1) as f64;
            let dev = (table.mass() / target - 1.0).abs();
            assert!(dev <= 0.01, "case {case:?} n={n}: mass deviation {dev:.2e}");
            detail.push_str(&format!("case{} N={n}: {dev:.1e}; ", case.index()));
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "case {case:?} took {elapsed:?}"
        );
    }
    pass(2, format!("grid mass within 1% of 2(N+1): {detail}"));
}

#[test]
fn criterion_03_chirp_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(20250810);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let l = rng.gen_range(1..=256);
        let k = rng.gen_range(1..=256);
        let coeffs: Vec<Complex64> = (0..l)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let x0 = rng.gen_range(-2.0..2.0);
        let dx = rng.gen_range(-0.3..0.3);
        let w0 = rng.gen_range(-2.0..2.0);
        let dw = rng.gen_range(-0.3..0.3);
        let fast = chirp_sum(&coeffs, x0, dx, w0, dw, k);
        for (kk, s) in fast.iter().enumerate() {
            let w = w0 + kk as f64 * dw;
            let direct: Complex64 = coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| {
                    let phase = -w * (x0 + j as f64 * dx);
                    c * Complex64::new(phase.cos(), phase.sin())
                })
                .sum();
            worst = worst.max((s - direct).norm());
        }
    }
    assert!(worst <= 1e-10, "max abs deviation {worst:.2e}");

    // Nyquist special case reduces to the DFT
    let l = 128;
    let coeffs: Vec<Complex64> = (0..l)
        .map(|j| Complex64::new((j as f64 * 0.17).sin(), (j as f64 * 0.29).cos()))
        .collect();
    let out = chirp_sum(&coeffs, 0.0, 1.0, 0.0, 2.0 * PI / l as f64, l);
    let mut worst_dft = 0.0f64;
    for (k, s) in out.iter().enumerate() {
        let direct: Complex64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let phase = -2.0 * PI * (j * k) as f64 / l as f64;
                c * Complex64::new(phase.cos(), phase.sin())
            })
            .sum();
        worst_dft = worst_dft.max((s - direct).norm());
    }
    assert!(worst_dft <= 1e-10, "DFT deviation {worst_dft:.2e}");
    pass(
        3,
        format!("20 random instances max dev {worst:.2e}; DFT case dev {worst_dft:.2e}"),
    );
}

#[test]
fn criterion_04_interpolation_exactness() {
    let mut worst_ratio = 0.0f64;
    for case in [Case::SeCase1, Case::GaussianCase2, Case::DeCase3] {
        let w = case.weight();
        let f = case.test_function();
        for n in [10usize, 50, 100] {
            let cfg = DesignConfig::new(D, n).unwrap();
            let table = build_density(&w, &cfg).unwrap();
            let pts = sampling_points(&table, n, D).unwrap();
            let app = hardy_interp::build_approximant(f, &pts, &w).unwrap();
            let scale = app.samples().iter().fold(0.0f64, |m, &s| m.max(s.abs()));
            let mut residual = 0.0f64;
            for &a in pts.points() {
                residual = residual.max((app.evaluate(a) - f(a)).abs());
            }
            assert!(
                residual <= 1e-12 * scale,
                "case {case:?} n={n}: node residual {residual:.2e}"
            );
            worst_ratio = worst_ratio.max(residual / scale);
        }
    }
    pass(4, format!("max node residual / scale = {worst_ratio:.2e}"));
}

fn compare(case: Case, n_list: Vec<usize>) -> hardy_interp::harness::ErrorReport {
    let spec = ExperimentSpec::for_case(case).with_n_list(n_list);
    hardy_interp::harness::run_compare(&spec, None).unwrap()
}

#[test]
fn criterion_05_error_ordering_se_case() {
    let start = Instant::now();
    let report = compare(Case::SeCase1, vec![10, 20, 30]);
    let mut detail = String::new();
    for row in &report.rows {
        let sinc = row.se_sinc.unwrap();
        let ganelius = row.ganelius.unwrap();
        assert!(row.designed >= ERROR_FLOOR && sinc >= ERROR_FLOOR);
        assert!(
            row.designed <= sinc,
            "N={}: designed {:.3e} > SE-Sinc {sinc:.3e}",
            row.n,
            row.designed
        );
        let ratio = row.designed / ganelius;
        assert!(
            (0.1..=10.0).contains(&ratio),
            "N={}: designed/ganelius = {ratio:.3}",
            row.n
        );
        detail.push_str(&format!(
            "N={}: {:.2e} <= {sinc:.2e}, ratio {ratio:.2}; ",
            row.n, row.designed
        ));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    pass(5, format!("{detail}in {elapsed:?}"));
}

#[test]
fn criterion_06_error_ordering_de_case() {
    let report = compare(Case::DeCase3, vec![6, 8, 10]);
    let mut detail = String::new();
    for row in &report.rows {
        let sinc = row.de_sinc.unwrap();
        assert!(
            row.designed >= ERROR_FLOOR && sinc >= ERROR_FLOOR,
            "N={}: errors must sit above the double-precision floor",
            row.n
        );
        assert!(
            row.designed <= sinc,
            "N={}: designed {:.3e} > DE-Sinc {sinc:.3e}",
            row.n,
            row.designed
        );
        detail.push_str(&format!(
            "N={}: {:.2e} <= {sinc:.2e}; ",
            row.n, row.designed
        ));
    }
    pass(6, detail);
}

#[test]
fn criterion_07_rate_check_se_case() {
    let report = compare(Case::SeCase1, (1..=10).map(|k| 10 * k).collect());
    let pts: Vec<(f64, f64)> = report
        .rows
        .iter()
        .filter(|r| r.designed >= 1e-12 && r.designed <= 1e-2)
        .map(|r| (((r.n + 1) as f64).sqrt(), r.designed.ln()))
        .collect();
    assert!(pts.len() >= 4, "need enough points in the measurable range");
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let r2 = 1.0 - ss_res / ss_tot;
    assert!(
        (slope / -PI - 1.0).abs() <= 0.25,
        "slope {slope:.4} vs -pi = {:.4}",
        -PI
    );
    assert!(r2 >= 0.95, "R^2 = {r2:.4}");
    pass(
        7,
        format!(
            "slope {slope:.4} (-pi within 25%), R^2 = {r2:.5}, {} points",
            pts.len()
        ),
    );
}

#[test]
fn criterion_08_envelope_bound() {
    // The comparison is meaningful only where both the measurement and
    // the theoretical envelope are above the f64 floor; deeper rows only
    // measure rounding noise of the evaluation itself.
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for case in [Case::SeCase1, Case::GaussianCase2, Case::DeCase3] {
        let report = compare(case, (1..=10).map(|k| 10 * k).collect());
        for row in &report.rows {
            let raw = row.designed * report.norm;
            if raw < ERROR_FLOOR || row.envelope < ERROR_FLOOR {
                skipped += 1;
                continue;
            }
            assert!(
                raw <= row.envelope + 5e-16 * report.norm,
                "case {case:?} N={}: raw error {raw:.3e} > envelope {:.3e}",
                row.n,
                row.envelope
            );
            checked += 1;
        }
    }
    assert!(checked >= 10);
    pass(
        8,
        format!("{checked} (case, N) pairs within envelope; {skipped} below the f64 floor skipped"),
    );
}

#[test]
fn criterion_09_density_diagnostics() {
    // peak of the SE-case density at the origin, ignoring the two
    // outermost cells where fold-in outliers are expected
    let w1 = Case::SeCase1.weight();
    let cfg = DesignConfig::new(D, 100).unwrap();
    let table = build_density(&w1, &cfg).unwrap();
    let nu = table.nu_half();
    let m = table.half_size();
    let peak = nu[0];
    for (i, &v) in nu.iter().enumerate().take(m - 1).skip(1) {
        assert!(v <= peak, "nu[{i}] = {v} exceeds nu[0] = {peak}");
    }

    // analytic bound dominates the measured maximum for SE and Gaussian
    let mut detail = format!("argmax at x=0 (peak {peak:.3}); ");
    for case in [Case::SeCase1, Case::GaussianCase2] {
        let w = case.weight();
        for n in [50usize, 100] {
            let cfg = DesignConfig::new(D, n).unwrap();
            let t = build_density(&w, &cfg).unwrap();
            let (_, measured) = t.max_abs();
            let bound = nu_max_bound(&w, D, t.alpha());
            assert!(
                bound >= measured,
                "case {case:?} n={n}: bound {bound:.3} < measured {measured:.3}"
            );
            detail.push_str(&format!(
                "case{} N={n}: {measured:.1} <= {bound:.1}; ",
                case.index()
            ));
        }
    }
    pass(9, detail);
}

#[test]
fn criterion_10_potential_flatness() {
    let w = Case::SeCase1.weight();
    let cfg = DesignConfig::new(D, 50).unwrap();
    let table = build_density(&w, &cfg).unwrap();
    let pts = sampling_points(&table, 50, D).unwrap();
    let alpha = table.alpha();
    let samples: Vec<f64> = (0..1000)
        .map(|i| -0.9 * alpha + 1.8 * alpha * i as f64 / 999.0)
        .map(|x| weighted_potential(&pts, &w, x))
        .collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let std =
        (samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / samples.len() as f64).sqrt();
    assert!(std <= 0.5, "std {std:.4} log10 units");
    // sanity anchor for the flat level
    let _ = cumulative_density(&table);
    pass(
        10,
        format!("potential std {std:.3} log10 units over the interior 90% (level {mean:.2})"),
    );
}

#[test]
fn criterion_11_ganelius_construction() {
    let nodes = ganelius_nodes(2.0, 100).unwrap();
    assert_eq!(nodes.n_o(), 92);
    let u_n = nodes.u()[99];
    let s_n = nodes.s()[99];
    assert_eq!(u_n, 0.8, "u_N is the exact dyadic-free value 1 - 1/5");
    assert!((s_n - 0.5 * 2f64.ln()).abs() <= f64::EPSILON, "s_N = {s_n}");
    assert!((s_n - (1.0f64 / 3.0).atanh()).abs() <= f64::EPSILON);
    pass(11, format!("N_o = 92, u_N = {u_n}, s_N = {s_n} = ln(2)/2"));
}
