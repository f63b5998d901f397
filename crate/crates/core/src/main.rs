//! Batch CLI for designing interpolation node sets and reproducing the
//! benchmark comparisons. See `hardy-interp --help`.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hardy_interp::harness::{self, fmt17, Case, DesignRun, ExperimentSpec};
use hardy_interp::{DesignConfig, Weight};

#[derive(Parser)]
#[command(
    name = "hardy-interp",
    version,
    about = "Designs near-optimal interpolation formulas for weighted Hardy spaces and benchmarks them against sinc and Ganelius baselines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Design a point set: solve for alpha/K, reconstruct the density,
    /// emit density.csv and points.csv.
    Design {
        /// Weight spec: se:beta,rho | de:beta,gamma | sech:beta
        #[arg(long)]
        weight: String,
        /// Strip half-width (default pi/4)
        #[arg(long, default_value_t = PI / 4.0)]
        d: f64,
        /// Half point count; the formula uses 2N+1 points
        #[arg(long = "N")]
        n: usize,
        /// Grid size (power of two)
        #[arg(long = "M", default_value_t = 4096)]
        m: usize,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Compare the designed formula with the case baselines over an
    /// N-sweep and emit errors.csv.
    Compare {
        /// Benchmark case: 1 (SE), 2 (Gaussian), 3 (DE)
        #[arg(long)]
        case: u8,
        /// Comma-separated N values (default 10,20,...,100)
        #[arg(long = "N-list", value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        /// Grid size (power of two)
        #[arg(long = "M", default_value_t = 4096)]
        m: usize,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Sample the discrete weighted potential of a designed point set.
    Potential {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = PI / 4.0)]
        d: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "M", default_value_t = 4096)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the analytic bound on max |nu| next to the measured value.
    Bound {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = PI / 4.0)]
        d: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "M", default_value_t = 4096)]
        m: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> hardy_interp::Result<()> {
    match cli.command {
        Command::Design {
            weight,
            d,
            n,
            m,
            out_dir,
        } => {
            let (w, cfg) = setup(&weight, d, n, m)?;
            let run = harness::run_design(&w, &cfg, Some(&out_dir))?;
            print_design_summary(&run);
            println!(
                "wrote {} and {}",
                out_dir.join("density.csv").display(),
                out_dir.join("points.csv").display()
            );
        }
        Command::Compare {
            case,
            n_list,
            m,
            out_dir,
        } => {
            let case = Case::from_index(case)?;
            let mut spec = ExperimentSpec::for_case(case);
            spec.m = m;
            if let Some(list) = n_list {
                spec = spec.with_n_list(list);
            }
            let report = harness::run_compare(&spec, Some(&out_dir))?;
            println!(
                "case {} ({}), errors normalized by max grid |f| = {}",
                case.index(),
                case.label(),
                fmt17(report.norm)
            );
            for row in &report.rows {
                let mut line = format!("N={:<4} designed={:.3e}", row.n, row.designed);
                if let Some(e) = row.se_sinc {
                    line.push_str(&format!(" se_sinc={e:.3e}"));
                }
                if let Some(e) = row.de_sinc {
                    line.push_str(&format!(" de_sinc={e:.3e}"));
                }
                if let Some(e) = row.ganelius {
                    line.push_str(&format!(" ganelius={e:.3e}"));
                }
                line.push_str(&format!(" envelope={:.3e}", row.envelope));
                println!("{line}");
            }
            println!("wrote {}", out_dir.join("errors.csv").display());
        }
        Command::Potential {
            weight,
            d,
            n,
            m,
            out,
        } => {
            let (w, cfg) = setup(&weight, d, n, m)?;
            let run = harness::run_potential(&w, &cfg, &out)?;
            print_design_summary(&run);
            println!("wrote {}", out.display());
        }
        Command::Bound { weight, d, n, m } => {
            let (w, cfg) = setup(&weight, d, n, m)?;
            let report = harness::run_bound(&w, &cfg)?;
            println!("alpha = {}", fmt17(report.alpha));
            println!("density max bound = {}", fmt17(report.bound));
            println!("measured max |nu| = {}", fmt17(report.measured_max));
        }
    }
    Ok(())
}

fn setup(weight: &str, d: f64, n: usize, m: usize) -> hardy_interp::Result<(Weight, DesignConfig)> {
    let w = harness::parse_weight_spec(weight)?;
    let cfg = DesignConfig::new(d, n)?.with_m(m)?;
    Ok((w, cfg))
}

fn print_design_summary(run: &DesignRun) {
    let (peak_x, peak) = run.table.max_abs();
    println!("alpha = {}", fmt17(run.table.alpha()));
    println!("K = {}", fmt17(run.table.k()));
    println!("mass deviation = {:.3e}", run.mass_deviation());
    println!("max |nu| = {} at x = {}", fmt17(peak), fmt17(peak_x));
    if run.points.clamped() {
        println!("warning: outermost node clamped to the support edge");
    }
}
