//! Small numerically careful scalar kernels shared across modules.

/// `ln cosh(u)` without overflow for large `|u|`.
pub(crate) fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln |tanh(u)|`, accurate both near zero (`ln |u|`) and past the point
/// where `tanh` saturates to 1 (`-2 e^{-2|u|}`). Returns `-inf` at `u = 0`.
pub(crate) fn ln_abs_tanh(u: f64) -> f64 {
    let a = u.abs();
    if a < 1.0 {
        a.tanh().ln()
    } else {
        let t = (-2.0 * a).exp();
        (-t).ln_1p() - t.ln_1p()
    }
}

/// `sech(u)` without overflow.
pub(crate) fn sech(u: f64) -> f64 {
    let e = (-u.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// `sech^2(u)` without overflow.
pub(crate) fn sech_sq(u: f64) -> f64 {
    let s = sech(u);
    s * s
}
