//! The equilibrium density `nu_N`: evaluation of its Fourier transform
//! and numerical inversion onto the x-grid.
//!
//! The transform of the density solving the flattened-potential equation
//! is, for odd `v = w'/w`,
//!
//! ```text
//! F[nu](omega) = -(2/(pi tanh(d omega))) int_0^alpha v(x) sin(omega x) dx
//!                - (4 d v(alpha)/pi) (pi sin(alpha w) + 2 d w cos(alpha w))
//!                  / ((pi^2 + 4 d^2 w^2) tanh(d w))
//! ```
//!
//! which is real, even, and bounded at the origin with the limit equal to
//! the mass functional. The inverse transform is discretized on the
//! frequency grid `omega_j = j pi / alpha` so that the x-grid mass of the
//! reconstruction equals `F[nu](0) = 2(N+1)` identically; tails of the
//! density beyond `[-alpha, alpha]` fold onto the support without sign
//! flips, showing up only as the documented outliers at the endpoints.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chirp::chirp_sum;
use crate::design::{compute_k, mass_functional, solve_alpha, DesignConfig};
use crate::error::{Error, Result};
use crate::weights::Weight;

/// Sampled equilibrium density on the grid `x_i = i * alpha / M`,
/// `i = -M+1 ..= M`.
#[derive(Clone, Debug)]
pub struct DensityTable {
    alpha: f64,
    k: f64,
    h_x: f64,
    m: usize,
    x: Vec<f64>,
    nu: Vec<f64>,
}

impl DensityTable {
    /// Support half-width `alpha_N`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Potential level `K_N`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Grid step `alpha / M`.
    pub fn h_x(&self) -> f64 {
        self.h_x
    }

    /// Half grid size `M`; the table holds `2M` samples.
    pub fn half_size(&self) -> usize {
        self.m
    }

    /// Grid abscissae, `i = -M+1 ..= M`.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Density samples aligned with [`Self::x`].
    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    /// Samples on the non-negative half-grid `x_i = i h_x`, `i = 0 ..= M`.
    pub fn nu_half(&self) -> &[f64] {
        &self.nu[self.m - 1..]
    }

    /// Abscissae matching [`Self::nu_half`].
    pub fn x_half(&self) -> &[f64] {
        &self.x[self.m - 1..]
    }

    /// Rectangle-rule mass `h_x * sum(nu)` over the whole grid.
    pub fn mass(&self) -> f64 {
        self.h_x * self.nu.iter().sum::<f64>()
    }

    /// Location and value of `max |nu|`.
    pub fn max_abs(&self) -> (f64, f64) {
        let mut best = (0.0, f64::MIN);
        for (&x, &nu) in self.x.iter().zip(&self.nu) {
            if nu.abs() > best.1 {
                best = (x, nu.abs());
            }
        }
        best
    }
}

/// Endpoint lobe of the transform (the term coming from the exponential
/// decay of the potential outside the support).
fn ft_tail_term(v_alpha: f64, d: f64, alpha: f64, omega: f64) -> f64 {
    -(4.0 * d * v_alpha / PI)
        * (PI * (alpha * omega).sin() + 2.0 * d * omega * (alpha * omega).cos())
        / ((PI * PI + 4.0 * d * d * omega * omega) * (d * omega).tanh())
}

const OMEGA_EPS: f64 = 1e-8;

/// Evaluate `F[nu](omega)` for a single frequency.
///
/// The x-integral uses the mid-point rule with `2m` nodes over
/// `[-alpha, alpha]`, reduced to the positive half by symmetry. For
/// `|omega| < 1e-8` the analytic limit is returned, which equals
/// [`mass_functional`] by construction.
pub fn ft_density(w: &Weight, d: f64, alpha: f64, omega: f64, m: usize) -> f64 {
    debug_assert!(alpha > 0.0);
    if omega.abs() < OMEGA_EPS {
        return mass_functional(w, d, alpha, m);
    }
    let h = alpha / m as f64;
    let mut acc = 0.0;
    for i in 1..=m {
        let x = (i as f64 - 0.5) * h;
        acc += w.v(x) * (omega * x).sin();
    }
    -(2.0 * h / (PI * (d * omega).tanh())) * acc + ft_tail_term(w.v(alpha), d, alpha, omega)
}

/// Batch evaluation of `F[nu]` at `omega_j = j h_w`, `j = 1..=m`, via a
/// chirp sum over the mid-point x-nodes. Matches [`ft_density`] up to FFT
/// rounding.
fn ft_density_grid(w: &Weight, d: f64, alpha: f64, h_w: f64, m: usize) -> Vec<f64> {
    let h = alpha / m as f64;
    let coeffs: Vec<Complex64> = (0..m)
        .map(|i| Complex64::new(w.v((i as f64 + 0.5) * h), 0.0))
        .collect();
    // S_j = sum_i v_i exp(-i omega_j x_i) with x_i = (i + 1/2) h
    let s = chirp_sum(&coeffs, 0.5 * h, h, h_w, h_w, m);
    let v_alpha = w.v(alpha);
    (1..=m)
        .map(|j| {
            let omega = j as f64 * h_w;
            // sum_i v_i sin(omega x_i) = -Im S_{j-1}
            2.0 * h / (PI * (d * omega).tanh()) * s[j - 1].im
                + ft_tail_term(v_alpha, d, alpha, omega)
        })
        .collect()
}

/// Tiny negative excursions of the reconstructed density are clamped to
/// zero; anything below `-1e-4 * mass` is treated as a failure.
const NEG_CLAMP_FRACTION: f64 = 1e-4;
/// Reconstructed mass may deviate from `2(N+1)` by at most this fraction.
const MASS_TOL: f64 = 0.05;

/// Run the parameter solve and reconstruct the density on the x-grid.
///
/// Frequencies are the integer grid `omega_j = j pi / alpha`,
/// `j = -M+1 ..= M`, with the analytic limit at `omega = 0`; the
/// real/even reduction collapses the inverse transform to a cosine sum
/// over `j >= 0`, evaluated for all `x_i` by one chirp sum.
pub fn build_density(w: &Weight, cfg: &DesignConfig) -> Result<DensityTable> {
    let alpha = solve_alpha(w, cfg).map_err(|e| e.at_stage("design"))?;
    let k = compute_k(w, cfg.d, alpha);
    let m = cfg.m;
    let h_x = alpha / m as f64;
    let h_w = PI / alpha;

    let f0 = mass_functional(w, cfg.d, alpha, m);
    let f = ft_density_grid(w, cfg.d, alpha, h_w, m);

    // nu(x_i) = (h_w/2pi) [F_0 + 2 sum_{j<M} F_j cos(omega_j x_i) + F_M cos(pi i)]
    // via one chirp sum with endpoint coefficients halved.
    let mut coeffs: Vec<Complex64> = Vec::with_capacity(m + 1);
    coeffs.push(Complex64::new(0.5 * f0, 0.0));
    for j in 1..=m {
        let cj = if j == m { 0.5 * f[j - 1] } else { f[j - 1] };
        coeffs.push(Complex64::new(cj, 0.0));
    }
    let s = chirp_sum(&coeffs, 0.0, h_w, 0.0, h_x, m + 1);
    let mut nu_half: Vec<f64> = s.iter().map(|z| h_w / PI * z.re).collect();

    let target = 2.0 * (cfg.n + 1) as f64;
    let clamp_floor = -NEG_CLAMP_FRACTION * target;
    let mut worst_neg = 0.0f64;
    for nu in nu_half.iter_mut() {
        if *nu < 0.0 {
            worst_neg = worst_neg.min(*nu);
            if *nu < clamp_floor {
                return Err(Error::DensityInversion(format!(
                    "reconstructed density reaches {worst_neg:.3e}, below the clamp floor {clamp_floor:.3e}"
                ))
                .at_stage("density"));
            }
            *nu = 0.0;
        }
    }

    let mut x = Vec::with_capacity(2 * m);
    let mut nu = Vec::with_capacity(2 * m);
    for i in -(m as i64 - 1)..=(m as i64) {
        x.push(i as f64 * h_x);
        nu.push(nu_half[i.unsigned_abs() as usize]);
    }

    let table = DensityTable {
        alpha,
        k,
        h_x,
        m,
        x,
        nu,
    };

    let mass = table.mass();
    if (mass / target - 1.0).abs() > MASS_TOL {
        return Err(Error::DensityInversion(format!(
            "grid mass {mass:.6} deviates from 2(N+1) = {target} by more than {:.0}%",
            MASS_TOL * 100.0
        ))
        .at_stage("density"));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: f64 = PI / 4.0;

    fn se21() -> Weight {
        Weight::single_exponential(2.0, 1.0).unwrap()
    }

    fn gaussian() -> Weight {
        Weight::single_exponential(1.0, 2.0).unwrap()
    }

    fn de_model() -> Weight {
        Weight::double_exponential(PI / 2.0, 2.0).unwrap()
    }

    #[test]
    fn ft_density_even_in_omega() {
        let w = se21();
        for &omega in &[0.3, 1.7, 9.4] {
            let plus = ft_density(&w, D, 4.0, omega, 1024);
            let minus = ft_density(&w, D, 4.0, -omega, 1024);
            assert!((plus - minus).abs() <= 1e-12 * plus.abs().max(1.0));
        }
    }

    #[test]
    fn ft_density_gaussian_closed_form() {
        // alpha = 2, omega = 1, d = pi/4: both terms have closed forms.
        let term1 = 4.0 * (2f64.sin() - 2.0 * 2f64.cos()) / (PI * (PI / 4.0).tanh());
        let term2 =
            4.0 * (PI * 2f64.sin() + PI / 2.0 * 2f64.cos()) / (1.25 * PI * PI * (PI / 4.0).tanh());
        let exact = term1 + term2;
        assert!((exact - 4.47049326958).abs() < 1e-9);
        let got = ft_density(&gaussian(), D, 2.0, 1.0, 4096);
        assert!((got - exact).abs() < 1e-6, "{got} vs {exact}");
    }

    #[test]
    fn ft_density_zero_limit_is_mass() {
        let w = se21();
        let cfg = DesignConfig::new(D, 100).unwrap();
        let alpha = solve_alpha(&w, &cfg).unwrap();
        let at_zero = ft_density(&w, D, alpha, 0.0, cfg.m);
        assert!((at_zero - 202.0).abs() < 1e-6);
        // continuity across the guard threshold
        let near_zero = ft_density(&w, D, alpha, 2e-8, cfg.m);
        assert!((near_zero - at_zero).abs() < 1e-4);
    }

    #[test]
    fn batch_matches_scalar_evaluation() {
        let w = gaussian();
        let alpha = 3.0;
        let m = 512;
        let h_w = PI / alpha;
        let batch = ft_density_grid(&w, D, alpha, h_w, m);
        for j in [1usize, 2, 17, 255, 512] {
            let scalar = ft_density(&w, D, alpha, j as f64 * h_w, m);
            assert!(
                (batch[j - 1] - scalar).abs() <= 1e-9 * (1.0 + scalar.abs()),
                "j={j}: {} vs {scalar}",
                batch[j - 1]
            );
        }
    }

    #[test]
    fn build_density_symmetric_nonnegative_unit_mass() {
        for (w, n) in [(se21(), 100usize), (gaussian(), 50), (de_model(), 20)] {
            let cfg = DesignConfig::new(D, n).unwrap();
            let t = build_density(&w, &cfg).unwrap();
            let m = t.half_size();
            for i in 1..m {
                let plus = t.nu()[m - 1 + i];
                let minus = t.nu()[m - 1 - i];
                assert_eq!(plus, minus, "defined by reflection");
            }
            assert!(t.nu().iter().all(|&v| v >= 0.0));
            let target = 2.0 * (n + 1) as f64;
            assert!(
                (t.mass() / target - 1.0).abs() < 0.01,
                "mass {} target {target}",
                t.mass()
            );
        }
    }

    #[test]
    fn se_density_peaks_at_origin() {
        let cfg = DesignConfig::new(D, 100).unwrap();
        let t = build_density(&se21(), &cfg).unwrap();
        // exclude the 2 outermost cells on each side where fold-in
        // outliers are documented
        let m = t.half_size();
        let nu = t.nu_half();
        let peak = nu[0];
        assert!(
            nu[1..m - 2].iter().all(|&v| v <= peak),
            "argmax must be x = 0"
        );
    }

    #[test]
    fn densities_unimodal_on_inner_support() {
        for (w, n) in [
            (se21(), 50usize),
            (se21(), 100),
            (gaussian(), 50),
            (gaussian(), 100),
            (de_model(), 50),
            (de_model(), 100),
        ] {
            let cfg = DesignConfig::new(D, n).unwrap();
            let t = build_density(&w, &cfg).unwrap();
            let nu = t.nu_half();
            let lim = (0.95 * t.half_size() as f64) as usize;
            let slack = 1e-9 * nu[0];
            let mut i = 0;
            while i + 8 <= lim {
                assert!(
                    nu[i + 8] <= nu[i] + slack,
                    "non-increasing every 8 cells failed at i={i} for n={n}"
                );
                i += 8;
            }
        }
    }

    #[test]
    fn forward_transform_round_trip() {
        // Applying the forward rectangle-rule Fourier sum to the
        // reconstructed density reproduces F at interior frequencies.
        let w = se21();
        let cfg = DesignConfig::new(D, 20).unwrap().with_m(1024).unwrap();
        let t = build_density(&w, &cfg).unwrap();
        let m = t.half_size();
        let h_w = PI / t.alpha();
        for j in [1usize, 3, 10, 100, 500] {
            let omega = j as f64 * h_w;
            let mut acc = 0.0;
            for (&x, &nu) in t.x().iter().zip(t.nu()) {
                acc += nu * (omega * x).cos();
            }
            let forward = t.h_x() * acc;
            let direct = ft_density(&w, D, t.alpha(), omega, m);
            assert!(
                (forward - direct).abs() <= 1e-3 * direct.abs().max(1.0),
                "j={j}: {forward} vs {direct}"
            );
        }
    }

    #[test]
    fn max_abs_location_reports_origin_for_se() {
        let cfg = DesignConfig::new(D, 50).unwrap();
        let t = build_density(&se21(), &cfg).unwrap();
        let (x, peak) = t.max_abs();
        assert_eq!(x, 0.0);
        assert!(peak > 0.0);
    }

    #[test]
    fn build_density_is_deterministic() {
        let cfg = DesignConfig::new(D, 20).unwrap().with_m(512).unwrap();
        let a = build_density(&gaussian(), &cfg).unwrap();
        let b = build_density(&gaussian(), &cfg).unwrap();
        assert_eq!(a.alpha(), b.alpha());
        assert_eq!(a.nu(), b.nu());
    }
}
