//! The weighted tanh-product interpolation formula and its potential
//! diagnostics.
//!
//! With nodes `a_k` and weight `w` on the strip of half-width `d`, the
//! interpolant is
//!
//! ```text
//! f~(x) = sum_k f(a_k) (w(x) / w(a_k))
//!         prod_{m != k} tanh(c (x - a_m)) / tanh(c (a_k - a_m))
//!         sech^2(c (a_k - x)),            c = pi / (4d)
//! ```
//!
//! Raw products of up to `2N` tanh factors underflow long before the
//! formula itself degenerates, so every product is assembled in the log
//! domain with the sign tracked separately. Error magnitudes below about
//! 1e-13 relative are not resolvable in double precision.

use std::f64::consts::{LN_10, PI};

use crate::error::{Error, Result};
use crate::numerics::{ln_abs_tanh, sech_sq};
use crate::points::PointSet;
use crate::weights::Weight;

/// A designed interpolant with precomputed log-domain denominators.
///
/// Immutable after construction; evaluation is reentrant.
#[derive(Clone, Debug)]
pub struct Approximant {
    points: PointSet,
    weight: Weight,
    samples: Vec<f64>,
    /// `log|B_{N;k}(a_k)| + log w(a_k)` per node.
    log_denom: Vec<f64>,
    /// Sign of `B_{N;k}(a_k)`, which alternates for sorted nodes.
    sign_denom: Vec<f64>,
}

/// Sample `f` at the nodes and precompute the denominator products.
pub fn build_approximant(
    f: impl Fn(f64) -> f64,
    pts: &PointSet,
    w: &Weight,
) -> Result<Approximant> {
    let nodes = pts.points();
    let samples: Vec<f64> = nodes.iter().map(|&a| f(a)).collect();
    if let Some(pos) = samples.iter().position(|s| !s.is_finite()) {
        return Err(Error::InvalidSample(format!(
            "f({}) is not finite",
            nodes[pos]
        )));
    }
    let c = PI / (4.0 * pts.d());
    let mut log_denom = Vec::with_capacity(nodes.len());
    let mut sign_denom = Vec::with_capacity(nodes.len());
    for (k, &ak) in nodes.iter().enumerate() {
        let mut acc = w.log_w(ak);
        let mut sign = 1.0;
        for (m, &am) in nodes.iter().enumerate() {
            if m == k {
                continue;
            }
            acc += ln_abs_tanh(c * (ak - am));
            if am > ak {
                sign = -sign;
            }
        }
        if !acc.is_finite() {
            return Err(Error::PointGeneration(format!(
                "coincident nodes produce a vanishing denominator at k={k}"
            )));
        }
        log_denom.push(acc);
        sign_denom.push(sign);
    }
    Ok(Approximant {
        points: pts.clone(),
        weight: w.clone(),
        samples,
        log_denom,
        sign_denom,
    })
}

impl Approximant {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Evaluate the interpolant. At a node (exact bit match) the sample
    /// is returned directly; everywhere else each term is assembled from
    /// its log magnitude and tracked sign.
    pub fn evaluate(&self, x: f64) -> f64 {
        let nodes = self.points.points();
        if let Some(j) = nodes.iter().position(|&a| a == x) {
            return self.samples[j];
        }
        let c = PI / (4.0 * self.points.d());
        let log_tanh: Vec<f64> = nodes.iter().map(|&a| ln_abs_tanh(c * (x - a))).collect();
        let s_all: f64 = log_tanh.iter().sum();
        let negatives = nodes.iter().filter(|&&a| a > x).count();
        let sign_all = if negatives % 2 == 0 { 1.0 } else { -1.0 };
        let log_w_x = self.weight.log_w(x);

        let mut total = 0.0;
        for (k, &ak) in nodes.iter().enumerate() {
            let sign = sign_all * (x - ak).signum() * self.sign_denom[k];
            let log_mag = log_w_x + s_all - log_tanh[k] - self.log_denom[k];
            total += self.samples[k] * sign * log_mag.exp() * sech_sq(c * (ak - x));
        }
        total
    }
}

/// Discrete weighted potential
/// `log10 w(x) + sum_j log10 |tanh(c (x - a_j))|`.
///
/// Near-optimal node sets make this nearly flat on the support interval.
/// Returns `-inf` when `x` collides with a node.
pub fn weighted_potential(pts: &PointSet, w: &Weight, x: f64) -> f64 {
    let c = PI / (4.0 * pts.d());
    let mut acc = w.log_w(x);
    for &a in pts.points() {
        if a == x {
            return f64::NEG_INFINITY;
        }
        acc += ln_abs_tanh(c * (x - a));
    }
    acc / LN_10
}

/// Worst-case error envelope `max_grid |w(x) B_N(x)|`, evaluated as
/// `10^potential`; this bounds `sup |f - f~| / ||f||`.
pub fn worst_case_envelope(pts: &PointSet, w: &Weight, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&x| 10f64.powf(weighted_potential(pts, w, x)))
        .fold(0.0, f64::max)
}
