//! Design parameters of the interpolation formula: the support half-width
//! `alpha_N` of the equilibrium density and the flat potential level `K_N`.
//!
//! `alpha_N` is the unique root of the mass equation
//!
//! ```text
//! -(1/(pi d)) int_{-a}^{a} x v(x) dx - (4 (pi a + 2 d)/pi^3) v(a) = 2(N+1)
//! ```
//!
//! whose left-hand side is strictly increasing in `a`. Once `alpha_N` is
//! known, `K_N = -log w(alpha_N) - (2d/pi) v(alpha_N)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::weights::{Weight, WeightFamily};

/// Configuration for a single design run.
#[derive(Clone, Copy, Debug)]
pub struct DesignConfig {
    /// Strip half-width `d > 0`.
    pub d: f64,
    /// Half point count; the formula uses `2n + 1` points.
    pub n: usize,
    /// Quadrature/grid size, a power of two (default 4096).
    pub m: usize,
    /// Absolute tolerance on the mass residual, relative to `2(n+1)`.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl DesignConfig {
    pub fn new(d: f64, n: usize) -> Result<DesignConfig> {
        DesignConfig {
            d,
            n,
            m: 4096,
            newton_tol: 1e-10,
            newton_max_iter: 100,
        }
        .validated()
    }

    pub fn with_m(mut self, m: usize) -> Result<DesignConfig> {
        self.m = m;
        self.validated()
    }

    fn validated(self) -> Result<DesignConfig> {
        if !self.d.is_finite() || self.d <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "d must be > 0, got {}",
                self.d
            )));
        }
        if self.m < 16 || !self.m.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "M must be a power of two >= 16, got {}",
                self.m
            )));
        }
        if !self.newton_tol.is_finite() || self.newton_tol <= 0.0 {
            return Err(Error::InvalidParameter("newton_tol must be > 0".into()));
        }
        Ok(self)
    }
}

/// Left-hand side of the mass equation at support half-width `alpha`.
///
/// The integral `int_{-a}^{a} x v(x) dx` is computed by the mid-point rule
/// with step `alpha/m`, doubled by even symmetry of `x v(x)`; the node
/// offsets keep the kink of `v` at the origin (single-exponential weights
/// with `rho <= 1`) away from every quadrature node.
pub fn mass_functional(w: &Weight, d: f64, alpha: f64, m: usize) -> f64 {
    debug_assert!(alpha >= 0.0);
    if alpha == 0.0 {
        return 0.0;
    }
    let h = alpha / m as f64;
    let mut acc = 0.0;
    for i in 1..=m {
        let x = (i as f64 - 0.5) * h;
        acc += x * w.v(x);
    }
    let integral = 2.0 * h * acc;
    -integral / (PI * d) - 4.0 * (PI * alpha + 2.0 * d) / PI.powi(3) * w.v(alpha)
}

/// Closed-form asymptotic value of `alpha_N`, used to seed the solver.
///
/// Single-exponential: `(pi d (rho+1)(N+1) / (beta^rho rho))^(1/(rho+1))`.
/// Double-exponential: `(1/gamma) log(pi^2 d gamma (N+1) / ((pi + 2 d gamma) beta))`
/// (the log form; it overshoots the root noticeably at moderate `N`, but
/// the solver only needs a bracketable seed). Other families fall back to
/// a doubling bracket scan on the mass functional.
pub fn alpha_asymptotic(w: &Weight, d: f64, n: usize) -> f64 {
    let np1 = (n + 1) as f64;
    match w.family() {
        WeightFamily::SingleExponential { beta, rho } => {
            (PI * d * (rho + 1.0) * np1 / (beta.powf(rho) * rho)).powf(1.0 / (rho + 1.0))
        }
        WeightFamily::DoubleExponential { beta, gamma } => {
            let arg = PI * PI * d * gamma * np1 / ((PI + 2.0 * d * gamma) * beta);
            (arg.ln() / gamma).max(1e-3)
        }
        _ => bracket_seed(w, d, 2.0 * np1),
    }
}

/// Seed for weights without a closed-form asymptotic: the midpoint of the
/// first power-of-two bracket `[hi/2, hi]` where the mass functional
/// crosses the target.
fn bracket_seed(w: &Weight, d: f64, target: f64) -> f64 {
    let m = 1024;
    let mut hi = 1.0;
    if mass_functional(w, d, hi, m) >= target {
        let mut lo = hi;
        while lo > 1e-12 && mass_functional(w, d, lo, m) >= target {
            lo *= 0.5;
        }
        return lo;
    }
    let mut steps = 0;
    while mass_functional(w, d, hi, m) < target && steps < 80 {
        hi *= 2.0;
        steps += 1;
    }
    hi * 0.5
}

/// Solve the mass equation for `alpha_N` by Newton iteration (derivative
/// by central difference) seeded with [`alpha_asymptotic`], falling back
/// to bisection on a doubling bracket if Newton leaves `(0, inf)` or
/// stalls. On success `|mass(alpha) - 2(n+1)| <= newton_tol * 2(n+1)`.
pub fn solve_alpha(w: &Weight, cfg: &DesignConfig) -> Result<f64> {
    let target = 2.0 * (cfg.n + 1) as f64;
    let tol = cfg.newton_tol * target;
    let residual = |a: f64| mass_functional(w, cfg.d, a, cfg.m) - target;

    let seed = alpha_asymptotic(w, cfg.d, cfg.n).max(1e-8);
    let mut alpha = seed;
    for _ in 0..cfg.newton_max_iter {
        let r = residual(alpha);
        if r.abs() <= tol {
            return Ok(alpha);
        }
        let h = (1e-8 * alpha).max(1e-6);
        let deriv = (residual(alpha + h) - residual(alpha - h)) / (2.0 * h);
        if deriv <= 0.0 || !deriv.is_finite() {
            break;
        }
        let next = alpha - r / deriv;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        alpha = next;
    }
    if residual(alpha).abs() <= tol {
        return Ok(alpha);
    }

    bisect_alpha(&residual, seed, tol).ok_or(Error::SolverFailure {
        message: format!(
            "mass equation did not converge to 2(N+1) = {target} after Newton and bisection"
        ),
        last_iterate: alpha,
    })
}

/// Bisection on an expanding bracket `[seed/2^k, seed*2^k]`; termination
/// is guaranteed by strict monotonicity of the mass functional.
fn bisect_alpha(residual: &dyn Fn(f64) -> f64, seed: f64, tol: f64) -> Option<f64> {
    let (mut lo, mut hi) = (seed, seed);
    let mut k = 0;
    while residual(lo) > 0.0 {
        lo *= 0.5;
        k += 1;
        if k > 120 {
            return None;
        }
    }
    k = 0;
    while residual(hi) < 0.0 {
        hi *= 2.0;
        k += 1;
        if k > 120 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = residual(mid);
        if r.abs() <= tol || (hi - lo) <= f64::EPSILON * mid.abs() {
            return Some(mid);
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    (residual(mid).abs() <= tol).then_some(mid)
}

/// Potential level `K(alpha) = -log w(alpha) - (2d/pi) v(alpha)`.
pub fn compute_k(w: &Weight, d: f64, alpha: f64) -> f64 {
    debug_assert!(alpha > 0.0);
    -w.log_w(alpha) - (2.0 * d / PI) * w.v(alpha)
}
