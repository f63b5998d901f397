//! Weight functions on the strip: even, positive on the real axis, with
//! concave logarithm. A [`Weight`] exposes `log w` and the logarithmic
//! derivative `v = w'/w` together with `v'` and `v''`, which is all the
//! design pipeline ever evaluates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{ln_cosh, sech_sq};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Built-in decay families plus an escape hatch for user-supplied weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightFamily {
    /// `w(x) = exp(-(beta |x|)^rho)`
    SingleExponential {
        beta: f64,
        rho: f64,
    },
    /// `w(x) = exp(-beta exp(gamma |x|))`
    DoubleExponential {
        beta: f64,
        gamma: f64,
    },
    /// `w(x) = sech^beta(x)`
    SechPower {
        beta: f64,
    },
    Custom,
}

/// An even, log-concave weight function.
///
/// Values are immutable after construction; a `Weight` can be shared and
/// evaluated concurrently from multiple threads.
#[derive(Clone)]
pub struct Weight {
    family: WeightFamily,
    log_w: RealFn,
    v: RealFn,
    v_prime: RealFn,
    v_second: RealFn,
}

impl std::fmt::Debug for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Weight")
            .field("family", &self.family)
            .finish()
    }
}

fn require_positive(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be strictly positive, got {value}"
        )));
    }
    Ok(())
}

impl Weight {
    /// `w(x) = exp(-(beta |x|)^rho)` with `beta, rho > 0`.
    ///
    /// For `rho <= 1` the log-derivative has a jump at the origin; `v(0)`
    /// is set to 0 by odd symmetry, which is immaterial for the
    /// quadratures downstream (they never place a node at 0).
    pub fn single_exponential(beta: f64, rho: f64) -> Result<Weight> {
        require_positive("beta", beta)?;
        require_positive("rho", rho)?;
        let c = beta.powf(rho) * rho;
        Ok(Weight {
            family: WeightFamily::SingleExponential { beta, rho },
            log_w: Arc::new(move |x| -(beta * x.abs()).powf(rho)),
            v: Arc::new(move |x| {
                if x == 0.0 {
                    0.0
                } else {
                    -c * x.abs().powf(rho - 1.0) * x.signum()
                }
            }),
            v_prime: Arc::new(move |x| {
                if rho == 1.0 || (x == 0.0 && rho < 2.0) {
                    0.0
                } else {
                    -c * (rho - 1.0) * x.abs().powf(rho - 2.0)
                }
            }),
            v_second: Arc::new(move |x| {
                if rho == 1.0 || rho == 2.0 || x == 0.0 {
                    0.0
                } else {
                    -c * (rho - 1.0) * (rho - 2.0) * x.abs().powf(rho - 3.0) * x.signum()
                }
            }),
        })
    }

    /// `w(x) = exp(-beta exp(gamma |x|))` with `beta, gamma > 0`.
    pub fn double_exponential(beta: f64, gamma: f64) -> Result<Weight> {
        require_positive("beta", beta)?;
        require_positive("gamma", gamma)?;
        Ok(Weight {
            family: WeightFamily::DoubleExponential { beta, gamma },
            log_w: Arc::new(move |x| -beta * (gamma * x.abs()).exp()),
            v: Arc::new(move |x| {
                if x == 0.0 {
                    0.0
                } else {
                    -beta * gamma * (gamma * x.abs()).exp() * x.signum()
                }
            }),
            v_prime: Arc::new(move |x| -beta * gamma * gamma * (gamma * x.abs()).exp()),
            v_second: Arc::new(move |x| {
                -beta * gamma.powi(3) * (gamma * x.abs()).exp() * x.signum()
            }),
        })
    }

    /// `w(x) = sech^beta(x)` with `beta > 0`.
    pub fn sech_power(beta: f64) -> Result<Weight> {
        require_positive("beta", beta)?;
        Ok(Weight {
            family: WeightFamily::SechPower { beta },
            log_w: Arc::new(move |x| -beta * ln_cosh(x)),
            v: Arc::new(move |x| -beta * x.tanh()),
            v_prime: Arc::new(move |x| -beta * sech_sq(x)),
            v_second: Arc::new(move |x| 2.0 * beta * sech_sq(x) * x.tanh()),
        })
    }

    /// A user-supplied weight from `log w` and `v = w'/w`. The first two
    /// derivatives of `v` default to central differences with `h = 1e-5`.
    pub fn custom<L, V>(log_w: L, v: V) -> Weight
    where
        L: Fn(f64) -> f64 + Send + Sync + 'static,
        V: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let v: RealFn = Arc::new(v);
        let h = 1e-5;
        let v1 = v.clone();
        let v2 = v.clone();
        let v_prime: RealFn = Arc::new(move |x| (v1(x + h) - v1(x - h)) / (2.0 * h));
        let v_second: RealFn = Arc::new(move |x| (v2(x + h) - 2.0 * v2(x) + v2(x - h)) / (h * h));
        Weight {
            family: WeightFamily::Custom,
            log_w: Arc::new(log_w),
            v,
            v_prime,
            v_second,
        }
    }

    /// A user-supplied weight with analytic `v'` and `v''`.
    pub fn custom_with_derivatives<L, V, V1, V2>(
        log_w: L,
        v: V,
        v_prime: V1,
        v_second: V2,
    ) -> Weight
    where
        L: Fn(f64) -> f64 + Send + Sync + 'static,
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        V1: Fn(f64) -> f64 + Send + Sync + 'static,
        V2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Weight {
            family: WeightFamily::Custom,
            log_w: Arc::new(log_w),
            v: Arc::new(v),
            v_prime: Arc::new(v_prime),
            v_second: Arc::new(v_second),
        }
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    /// `log w(x)`
    pub fn log_w(&self, x: f64) -> f64 {
        (self.log_w)(x)
    }

    /// `v(x) = w'(x)/w(x)`
    pub fn v(&self, x: f64) -> f64 {
        (self.v)(x)
    }

    /// `v'(x)`
    pub fn v_prime(&self, x: f64) -> f64 {
        (self.v_prime)(x)
    }

    /// `v''(x)`
    pub fn v_second(&self, x: f64) -> f64 {
        (self.v_second)(x)
    }
}

/// Numeric screening report for the weight-function assumptions
/// (evenness, log-concavity, decay at infinity) on a sampled grid.
///
/// This is an advisory check: the model SE/DE families violate the
/// analyticity assumption off the axis yet are used throughout, so
/// failures here should inform rather than gate a design run.
#[derive(Clone, Copy, Debug)]
pub struct AssumptionReport {
    /// `max |log w(x) - log w(-x)|` over symmetric grid pairs.
    pub max_evenness_violation: f64,
    /// Largest increase between consecutive slopes of `log w` (concavity
    /// requires slopes to be non-increasing, so positive is a violation).
    pub max_concavity_violation: f64,
    /// Whether `w` decreases from the grid center to both ends.
    pub decays_at_ends: bool,
    pub passed: bool,
}

/// Screen a weight against the evenness/concavity/decay assumptions on
/// `grid`, which must be strictly increasing and symmetric about 0.
pub fn verify_assumptions(w: &Weight, grid: &[f64], tol: f64) -> Result<AssumptionReport> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("verify_assumptions: empty grid".into()));
    }
    if grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidInput(
            "verify_assumptions: grid must be strictly increasing".into(),
        ));
    }
    let n = grid.len();
    for i in 0..n {
        if (grid[i] + grid[n - 1 - i]).abs() > 1e-12 * (1.0 + grid[n - 1].abs()) {
            return Err(Error::InvalidInput(
                "verify_assumptions: grid must be symmetric about 0".into(),
            ));
        }
    }

    let logs: Vec<f64> = grid.iter().map(|&x| w.log_w(x)).collect();

    let mut evenness = 0.0f64;
    for i in 0..n / 2 {
        evenness = evenness.max((logs[i] - logs[n - 1 - i]).abs());
    }

    let mut concavity = 0.0f64;
    let mut prev_slope = f64::INFINITY;
    for i in 0..n - 1 {
        let slope = (logs[i + 1] - logs[i]) / (grid[i + 1] - grid[i]);
        if slope > prev_slope {
            concavity = concavity.max(slope - prev_slope);
        }
        prev_slope = slope;
    }

    let center = logs[n / 2].max(logs[(n - 1) / 2]);
    let decays_at_ends = n < 3 || (logs[0] < center && logs[n - 1] < center);

    Ok(AssumptionReport {
        max_evenness_violation: evenness,
        max_concavity_violation: concavity,
        decays_at_ends,
        passed: evenness <= tol && concavity <= tol && decays_at_ends,
    })
}
