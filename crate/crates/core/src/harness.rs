//! Experiment driver behind the CLI: runs the design pipeline on the
//! benchmark cases, compares against the sinc and Ganelius baselines on
//! the standard evaluation grids, and emits reproducible CSV tables.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use crate::baselines::{ganelius_eval_grid, ganelius_nodes, sinc_eval, DecayTag, SincConfig};
use crate::density::{build_density, DensityTable};
use crate::design::DesignConfig;
use crate::error::{Error, Result};
use crate::formula::{build_approximant, weighted_potential, worst_case_envelope};
use crate::numerics::{ln_cosh, sech, sech_sq};
use crate::points::{sampling_points, PointSet};
use crate::weights::Weight;

/// The three benchmark cases: a single-exponential, a Gaussian and a
/// double-exponential target, each paired with its natural weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `f = w = sech(2x)`; baselines SE-Sinc and Ganelius.
    SeCase1,
    /// `f = x^2/((pi/4)^2 + x^2) e^{-x^2}`, `w = e^{-x^2}`;
    /// baselines SE-Sinc (Gaussian step) and Ganelius.
    GaussianCase2,
    /// `f = w = sech((pi/2) sinh(2x))`; baseline DE-Sinc.
    DeCase3,
}

impl Case {
    pub fn from_index(index: u8) -> Result<Case> {
        match index {
            1 => Ok(Case::SeCase1),
            2 => Ok(Case::GaussianCase2),
            3 => Ok(Case::DeCase3),
            other => Err(Error::InvalidParameter(format!(
                "case must be 1, 2 or 3, got {other}"
            ))),
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            Case::SeCase1 => 1,
            Case::GaussianCase2 => 2,
            Case::DeCase3 => 3,
        }
    }

    /// The weight defining the Hardy space the case is run in.
    pub fn weight(&self) -> Weight {
        match self {
            Case::SeCase1 => Weight::custom_with_derivatives(
                |x| -ln_cosh(2.0 * x),
                |x| -2.0 * (2.0 * x).tanh(),
                |x| -4.0 * sech_sq(2.0 * x),
                |x| 16.0 * sech_sq(2.0 * x) * (2.0 * x).tanh(),
            ),
            Case::GaussianCase2 => {
                Weight::single_exponential(1.0, 2.0).expect("fixed Gaussian parameters are valid")
            }
            Case::DeCase3 => Weight::custom_with_derivatives(
                |x| -ln_cosh(PI / 2.0 * (2.0 * x).sinh()),
                case3_v,
                case3_v_prime,
                case3_v_second,
            ),
        }
    }

    /// The target function.
    pub fn test_function(&self) -> fn(f64) -> f64 {
        match self {
            Case::SeCase1 => |x| sech(2.0 * x),
            Case::GaussianCase2 => |x| x * x / ((PI / 4.0) * (PI / 4.0) + x * x) * (-x * x).exp(),
            Case::DeCase3 => |x| sech(PI / 2.0 * (2.0 * x).sinh()),
        }
    }

    /// The 1001-point evaluation grid conventional for the case.
    pub fn eval_grid(&self) -> Vec<f64> {
        let (start, step) = match self {
            Case::SeCase1 => (-20.0, 0.04),
            Case::GaussianCase2 => (-10.0, 0.02),
            Case::DeCase3 => (-2.5, 0.005),
        };
        (0..=1000).map(|l| start + step * l as f64).collect()
    }

    fn sinc_tag(&self) -> DecayTag {
        match self {
            Case::SeCase1 => DecayTag::SingleExponential,
            Case::GaussianCase2 => DecayTag::Gaussian,
            Case::DeCase3 => DecayTag::DoubleExponential,
        }
    }

    fn uses_ganelius(&self) -> bool {
        !matches!(self, Case::DeCase3)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Case::SeCase1 => "sech(2x)",
            Case::GaussianCase2 => "exp(-x^2)",
            Case::DeCase3 => "sech((pi/2)sinh(2x))",
        }
    }
}

// v = w'/w for w = sech(u(x)), u = (pi/2) sinh(2x)
fn case3_v(x: f64) -> f64 {
    let u = PI / 2.0 * (2.0 * x).sinh();
    -PI * (2.0 * x).cosh() * u.tanh()
}

fn case3_v_prime(x: f64) -> f64 {
    let u = PI / 2.0 * (2.0 * x).sinh();
    let (sh, ch) = ((2.0 * x).sinh(), (2.0 * x).cosh());
    -2.0 * PI * sh * u.tanh() - PI * PI * ch * ch * sech_sq(u)
}

fn case3_v_second(x: f64) -> f64 {
    let u = PI / 2.0 * (2.0 * x).sinh();
    let (sh, ch) = ((2.0 * x).sinh(), (2.0 * x).cosh());
    -4.0 * PI * ch * u.tanh() - 6.0 * PI * PI * sh * ch * sech_sq(u)
        + 2.0 * PI.powi(3) * ch.powi(3) * sech_sq(u) * u.tanh()
}

/// One benchmark configuration: a case, the strip half-width and the
/// list of half counts to sweep.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub case: Case,
    pub d: f64,
    pub n_list: Vec<usize>,
    pub m: usize,
}

impl ExperimentSpec {
    /// The conventional sweep: `d = pi/4`, `N = 10, 20, ..., 100`.
    pub fn for_case(case: Case) -> ExperimentSpec {
        ExperimentSpec {
            case,
            d: PI / 4.0,
            n_list: (1..=10).map(|k| 10 * k).collect(),
            m: 4096,
        }
    }

    pub fn with_n_list(mut self, n_list: Vec<usize>) -> ExperimentSpec {
        self.n_list = n_list;
        self
    }
}

/// Result of a single design run.
#[derive(Debug)]
pub struct DesignRun {
    pub table: DensityTable,
    pub points: PointSet,
}

impl DesignRun {
    /// Relative deviation of the reconstructed grid mass from `2(N+1)`.
    pub fn mass_deviation(&self) -> f64 {
        let target = 2.0 * (self.points.n() + 1) as f64;
        self.table.mass() / target - 1.0
    }
}

/// Execute pipeline steps 1-5 (parameters, density, points) and write
/// `density.csv` / `points.csv` into `out_dir` when given.
pub fn run_design(w: &Weight, cfg: &DesignConfig, out_dir: Option<&Path>) -> Result<DesignRun> {
    let table = build_density(w, cfg)?;
    let points = sampling_points(&table, cfg.n, cfg.d).map_err(|e| e.at_stage("points"))?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        write_density_csv(&dir.join("density.csv"), &table)?;
        write_points_csv(&dir.join("points.csv"), &points)?;
    }
    Ok(DesignRun { table, points })
}

/// Per-`N` sup-grid errors, all normalized by `max_grid |f|`
/// (the Hardy norm is not computable from real samples; for cases 1 and
/// 3 the two agree since `f = w` has norm 1).
#[derive(Clone, Debug)]
pub struct ErrorRow {
    pub n: usize,
    pub designed: f64,
    pub se_sinc: Option<f64>,
    pub de_sinc: Option<f64>,
    pub ganelius: Option<f64>,
    /// Raw worst-case envelope `max_grid |w B_N|` (not normalized).
    pub envelope: f64,
    pub alpha: f64,
    pub k: f64,
    pub predicted_exponent: f64,
}

#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub case: Case,
    pub d: f64,
    /// Normalizer `max_grid |f|` shared by every error column.
    pub norm: f64,
    pub rows: Vec<ErrorRow>,
}

/// Sweep `N` over the spec's list, comparing the designed formula with
/// the case's baselines on the case grid; writes `errors.csv` when an
/// output directory is given.
pub fn run_compare(spec: &ExperimentSpec, out_dir: Option<&Path>) -> Result<ErrorReport> {
    let w = spec.case.weight();
    let f = spec.case.test_function();
    let grid = spec.case.eval_grid();
    let truth: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let norm = truth.iter().fold(0.0f64, |m, &v| m.max(v.abs()));

    let sup_err = |approx: &[f64]| -> f64 {
        truth
            .iter()
            .zip(approx)
            .map(|(&t, &a)| (t - a).abs())
            .fold(0.0, f64::max)
    };

    let mut rows = Vec::with_capacity(spec.n_list.len());
    for &n in &spec.n_list {
        let cfg = DesignConfig::new(spec.d, n)?.with_m(spec.m)?;
        let run = run_design(&w, &cfg, None)?;
        let app = build_approximant(f, &run.points, &w).map_err(|e| e.at_stage("formula"))?;
        let designed_vals: Vec<f64> = grid.iter().map(|&x| app.evaluate(x)).collect();
        let designed = sup_err(&designed_vals) / norm;
        let envelope = worst_case_envelope(&run.points, &w, &grid);

        let sinc_cfg = SincConfig::new(spec.case.sinc_tag(), n)?;
        let sinc_vals: Vec<f64> = grid.iter().map(|&x| sinc_eval(f, &sinc_cfg, x)).collect();
        let sinc_err = sup_err(&sinc_vals) / norm;
        let (se_sinc, de_sinc) = match spec.case {
            Case::DeCase3 => (None, Some(sinc_err)),
            _ => (Some(sinc_err), None),
        };

        let ganelius = if spec.case.uses_ganelius() {
            let nodes = ganelius_nodes(2.0, n).map_err(|e| e.at_stage("baselines"))?;
            let vals = ganelius_eval_grid(f, &nodes, &grid);
            Some(sup_err(&vals) / norm)
        } else {
            None
        };

        rows.push(ErrorRow {
            n,
            designed,
            se_sinc,
            de_sinc,
            ganelius,
            envelope,
            alpha: run.table.alpha(),
            k: run.table.k(),
            predicted_exponent: predicted_exponent(spec.case, n, spec.d),
        });
    }

    let report = ErrorReport {
        case: spec.case,
        d: spec.d,
        norm,
        rows,
    };
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        write_errors_csv(&dir.join("errors.csv"), &report)?;
    }
    Ok(report)
}

/// Upper bound on `max |nu_N|` from the tail/endpoint estimates of the
/// density's Fourier transform; compared against the measured maximum as
/// a diagnostic.
pub fn nu_max_bound(w: &Weight, d: f64, alpha: f64) -> f64 {
    let m = 4096;
    let h = alpha / m as f64;
    // int_{-a}^{a} x v dx by the same mid-point rule as the mass equation
    let mut acc = 0.0;
    let mut max_v2 = 0.0f64;
    for i in 1..=m {
        let x = (i as f64 - 0.5) * h;
        acc += x * w.v(x);
        max_v2 = max_v2.max(w.v_second(x).abs());
    }
    max_v2 = max_v2.max(w.v_second(alpha).abs());
    let integral = 2.0 * h * acc;
    let va = w.v(alpha).abs();
    let vpa = w.v_prime(alpha).abs();
    let pi3 = PI.powi(3);
    let main = -integral / (4.0 * alpha * alpha)
        + (0.5 + 8.0 / pi3) * va
        + 4.0 / pi3 * (alpha * vpa + alpha * alpha * max_v2);
    main / (PI * d / (2.0 * alpha)).tanh()
        + (2.0 / (PI * PI) + 8.0 * d / (pi3 * alpha)) * va / (PI / 2.0).tanh()
}

/// Leading-order exponent of the error decay predicted for the case's
/// decay family (`ln` of the envelope scale, up to polynomial factors).
pub fn predicted_exponent(case: Case, n: usize, d: f64) -> f64 {
    let np1 = (n + 1) as f64;
    match case {
        // single-exponential family exp(-(beta |x|)^rho)
        Case::SeCase1 => se_exponent(2.0, 1.0, d, np1),
        Case::GaussianCase2 => se_exponent(1.0, 2.0, d, np1),
        // double-exponential family exp(-beta e^{gamma |x|})
        Case::DeCase3 => {
            let (beta, gamma) = (PI / 2.0, 2.0);
            let log_arg = (PI * PI * d * gamma * np1 / ((PI + 2.0 * d * gamma) * beta)).ln();
            -PI * d * gamma * np1 / log_arg
        }
    }
}

fn se_exponent(beta: f64, rho: f64, d: f64, np1: f64) -> f64 {
    let base = PI * d * (rho + 1.0) * np1 / (beta.powf(rho) * rho);
    -beta.powf(rho) * base.powf(rho / (rho + 1.0))
}

/// Analytic-bound diagnostic for a single design run.
#[derive(Clone, Copy, Debug)]
pub struct BoundReport {
    pub alpha: f64,
    pub bound: f64,
    pub measured_max: f64,
}

/// Build the density and compare its measured maximum with the
/// analytical bound.
pub fn run_bound(w: &Weight, cfg: &DesignConfig) -> Result<BoundReport> {
    let table = build_density(w, cfg)?;
    let (_, measured_max) = table.max_abs();
    Ok(BoundReport {
        alpha: table.alpha(),
        bound: nu_max_bound(w, cfg.d, table.alpha()),
        measured_max,
    })
}

/// Run the design and write the discrete weighted potential sampled on
/// `[-1.25 alpha, 1.25 alpha]` to `out` as `x,dwp` rows.
pub fn run_potential(w: &Weight, cfg: &DesignConfig, out: &Path) -> Result<DesignRun> {
    let run = run_design(w, cfg, None)?;
    let alpha = run.table.alpha();
    let mut body = String::new();
    writeln!(body, "# alpha={}", fmt17(alpha)).unwrap();
    writeln!(body, "# K={}", fmt17(run.table.k())).unwrap();
    writeln!(body, "# N={}", cfg.n).unwrap();
    body.push_str("x,dwp\n");
    let samples = 2001;
    for i in 0..samples {
        let x = -1.25 * alpha + 2.5 * alpha * i as f64 / (samples - 1) as f64;
        let dwp = weighted_potential(&run.points, w, x);
        writeln!(body, "{},{}", fmt17(x), fmt17(dwp)).unwrap();
    }
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(out, body)?;
    Ok(run)
}

/// Parse a CLI weight spec: `se:beta,rho` | `de:beta,gamma` | `sech:beta`.
pub fn parse_weight_spec(spec: &str) -> Result<Weight> {
    let (family, params) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("weight spec `{spec}` lacks `:`")))?;
    let values: Vec<f64> = params
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad number `{p}` in weight spec")))
        })
        .collect::<Result<_>>()?;
    match (family, values.as_slice()) {
        ("se", [beta, rho]) => Weight::single_exponential(*beta, *rho),
        ("de", [beta, gamma]) => Weight::double_exponential(*beta, *gamma),
        ("sech", [beta]) => Weight::sech_power(*beta),
        _ => Err(Error::InvalidParameter(format!(
            "weight spec must be se:beta,rho | de:beta,gamma | sech:beta, got `{spec}`"
        ))),
    }
}

/// 17 significant digits, enough to round-trip an f64 bit-exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_density_csv(path: &Path, t: &DensityTable) -> Result<()> {
    let mut body = String::new();
    writeln!(body, "# alpha={}", fmt17(t.alpha())).unwrap();
    writeln!(body, "# K={}", fmt17(t.k())).unwrap();
    body.push_str("x,nu\n");
    for (&x, &nu) in t.x().iter().zip(t.nu()) {
        writeln!(body, "{},{}", fmt17(x), fmt17(nu)).unwrap();
    }
    std::fs::write(path, body)?;
    Ok(())
}

fn write_points_csv(path: &Path, pts: &PointSet) -> Result<()> {
    let mut body = String::from("index,a\n");
    let n = pts.n() as isize;
    for i in -n..=n {
        writeln!(body, "{},{}", i, fmt17(pts.point(i))).unwrap();
    }
    std::fs::write(path, body)?;
    Ok(())
}

fn write_errors_csv(path: &Path, report: &ErrorReport) -> Result<()> {
    let mut body = String::new();
    writeln!(
        body,
        "# case={} weight={} d={} normalization=max_grid_abs_f norm={}",
        report.case.index(),
        report.case.label(),
        fmt17(report.d),
        fmt17(report.norm)
    )
    .unwrap();
    let header = match report.case {
        Case::DeCase3 => "N,designed,de_sinc,envelope,alpha,K,predicted_exponent",
        _ => "N,designed,se_sinc,ganelius,envelope,alpha,K,predicted_exponent",
    };
    body.push_str(header);
    body.push('\n');
    for row in &report.rows {
        let mut line = format!("{},{}", row.n, fmt17(row.designed));
        match report.case {
            Case::DeCase3 => {
                write!(line, ",{}", fmt17(row.de_sinc.unwrap_or(f64::NAN))).unwrap();
            }
            _ => {
                write!(line, ",{}", fmt17(row.se_sinc.unwrap_or(f64::NAN))).unwrap();
                write!(line, ",{}", fmt17(row.ganelius.unwrap_or(f64::NAN))).unwrap();
            }
        }
        write!(
            line,
            ",{},{},{},{}",
            fmt17(row.envelope),
            fmt17(row.alpha),
            fmt17(row.k),
            fmt17(row.predicted_exponent)
        )
        .unwrap();
        body.push_str(&line);
        body.push('\n');
    }
    std::fs::write(path, body)?;
    Ok(())
}
