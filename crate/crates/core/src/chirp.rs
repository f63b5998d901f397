//! Fast evaluation of exponential sums on grids whose frequency and space
//! spacings are not tied to the Nyquist relation (fractional FFT).
//!
//! `chirp_sum` computes `S_k = sum_j c_j exp(-i (w0 + k dw)(x0 + j dx))`
//! for `k = 0..K-1` in `O((L+K) log(L+K))` by the chirp factorization
//! `exp(-i a b) = exp(-i a^2/2) exp(-i b^2/2) exp(+i (a-b)^2/2)`, which
//! turns the sum into a cyclic convolution.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Evaluate `S_k = sum_j coeffs[j] exp(-i (w0 + k dw)(x0 + j dx))`
/// for `k = 0..k_out-1`.
pub fn chirp_sum(
    coeffs: &[Complex64],
    x0: f64,
    dx: f64,
    w0: f64,
    dw: f64,
    k_out: usize,
) -> Vec<Complex64> {
    let l = coeffs.len();
    if l == 0 || k_out == 0 {
        return vec![Complex64::new(0.0, 0.0); k_out];
    }

    let theta = dw * dx;

    // a_j = c_j exp(-i (j w0 dx + theta j^2 / 2))
    let mut a = vec![Complex64::new(0.0, 0.0); l];
    for (j, (aj, &c)) in a.iter_mut().zip(coeffs).enumerate() {
        let jf = j as f64;
        let phase = jf * w0 * dx + 0.5 * theta * jf * jf;
        *aj = c * unit(-phase);
    }

    // kernel b_m = exp(+i theta m^2 / 2) for m = -(l-1) ..= k_out-1
    let pad = (l + k_out - 1).next_power_of_two();
    let mut fa = vec![Complex64::new(0.0, 0.0); pad];
    fa[..l].copy_from_slice(&a);
    let mut fb = vec![Complex64::new(0.0, 0.0); pad];
    for m in -(l as i64 - 1)..=(k_out as i64 - 1) {
        let mf = m as f64;
        let idx = m.rem_euclid(pad as i64) as usize;
        fb[idx] = unit(0.5 * theta * mf * mf);
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(pad);
    fft.process(&mut fa);
    fft.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    let ifft = planner.plan_fft_inverse(pad);
    ifft.process(&mut fa);
    let scale = 1.0 / pad as f64;

    // S_k = exp(-i (w0 x0 + k dw x0 + theta k^2 / 2)) * conv_k
    (0..k_out)
        .map(|k| {
            let kf = k as f64;
            let phase = w0 * x0 + kf * dw * x0 + 0.5 * theta * kf * kf;
            fa[k] * scale * unit(-phase)
        })
        .collect()
}

fn unit(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}
