//! Design and evaluation of near-optimal interpolation formulas for
//! weighted Hardy spaces `H^inf(D_d, w)` on a strip `|Im z| < d`.
//!
//! The node design treats the worst-case interpolation error as a Green
//! potential with external field `-log w` and flattens it on a symmetric
//! interval `[-alpha, alpha]`:
//!
//! 1. solve the mass equation for the support half-width `alpha` and the
//!    potential level `K` ([`design`]),
//! 2. evaluate the Fourier transform of the equilibrium density and invert
//!    it numerically onto an x-grid ([`density`]),
//! 3. integrate the density and invert the cumulative function to place
//!    the `2N+1` sampling points ([`points`]),
//! 4. evaluate the weighted tanh-product interpolant in log domain
//!    ([`formula`]).
//!
//! [`baselines`] provides truncated sinc interpolation and the
//! Ganelius/Jang-Haber formula for comparison, and [`harness`] drives the
//! benchmark experiments behind the `hardy-interp` CLI.

pub mod baselines;
pub mod chirp;
pub mod density;
pub mod design;
mod error;
pub mod formula;
pub mod harness;
mod numerics;
pub mod points;
pub mod weights;

pub use chirp::chirp_sum;
pub use density::{build_density, ft_density, DensityTable};
pub use design::{alpha_asymptotic, compute_k, mass_functional, solve_alpha, DesignConfig};
pub use error::{Error, Result};
pub use formula::{build_approximant, weighted_potential, worst_case_envelope, Approximant};
pub use points::{cumulative_density, monotone_inverse, sampling_points, MonotoneCubic, PointSet};
pub use weights::{verify_assumptions, AssumptionReport, Weight, WeightFamily};
