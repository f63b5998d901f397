//! Comparison formulas: truncated sinc interpolation with the
//! conventional step sizes, and the Ganelius formula with the
//! Jang-Haber distinct-node construction for `sech^beta` weights.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{ln_abs_tanh, ln_cosh, sech_sq};

/// Decay type of the target function, selecting the sinc step convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecayTag {
    SingleExponential,
    Gaussian,
    DoubleExponential,
}

/// Conventional sinc step size for `2N+1` nodes.
pub fn sinc_step(tag: DecayTag, n: usize) -> f64 {
    let nf = n as f64;
    match tag {
        DecayTag::SingleExponential => PI / (2.0 * (2.0 * nf).sqrt()),
        DecayTag::Gaussian => (PI / (2.0 * nf)).powf(2.0 / 3.0),
        DecayTag::DoubleExponential => (2.0 * PI * nf).ln() / (2.0 * nf),
    }
}

/// Equispaced sinc interpolation grid `kh`, `k = -N ..= N`.
#[derive(Clone, Copy, Debug)]
pub struct SincConfig {
    pub n: usize,
    pub h: f64,
    pub decay_tag: DecayTag,
}

impl SincConfig {
    pub fn new(decay_tag: DecayTag, n: usize) -> Result<SincConfig> {
        if n == 0 {
            return Err(Error::InvalidParameter("sinc: N must be >= 1".into()));
        }
        Ok(SincConfig {
            n,
            h: sinc_step(decay_tag, n),
            decay_tag,
        })
    }
}

fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (PI * t).sin() / (PI * t)
    }
}

/// Truncated cardinal series `sum_k f(kh) sinc(x/h - k)`.
pub fn sinc_eval(f: impl Fn(f64) -> f64, cfg: &SincConfig, x: f64) -> f64 {
    let n = cfg.n as i64;
    (-n..=n)
        .map(|k| f(k as f64 * cfg.h) * sinc(x / cfg.h - k as f64))
        .sum()
}

/// The Jang-Haber node set for the Ganelius formula with weight
/// `sech^beta` on the strip of half-width `pi/4`: `2N` nodes
/// `s_{+-1} .. s_{+-N}`, mutually distinct by construction.
#[derive(Clone, Debug)]
pub struct GaneliusNodes {
    beta: f64,
    n: usize,
    n_o: usize,
    u: Vec<f64>,
    t: Vec<f64>,
    s: Vec<f64>,
}

/// Build the node set. `N_o = N - ceil((pi/4) sqrt(N beta / 2))` must be
/// positive for the construction to apply.
pub fn ganelius_nodes(beta: f64, n: usize) -> Result<GaneliusNodes> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidParameter("ganelius: beta must be > 0".into()));
    }
    if n < 2 {
        return Err(Error::InvalidRegime("ganelius: need N >= 2".into()));
    }
    let cut = (PI / 4.0 * (n as f64 * beta / 2.0).sqrt()).ceil() as i64;
    let n_o = n as i64 - cut;
    if n_o <= 0 {
        return Err(Error::InvalidRegime(format!(
            "ganelius: N_o = N - ceil((pi/4) sqrt(N beta/2)) = {n_o} <= 0 at N = {n}"
        )));
    }
    let n_o = n_o as usize;
    let phi = |x: f64| (PI * (2.0 * x / beta).sqrt()).exp();
    let phi_no = phi(n_o as f64);
    let mut u = Vec::with_capacity(n);
    for k in 1..=n {
        let uk = if k <= n_o {
            phi((k - 1) as f64) / phi_no
        } else if k == n_o + 1 {
            phi(k as f64 - 1.5) / phi_no
        } else {
            1.0 - (k - n_o - 1) as f64 / (5.0 * (n - n_o - 1) as f64)
        };
        u.push(uk);
    }
    let t: Vec<f64> = u
        .iter()
        .map(|&uk| ((1.0 - uk) / (1.0 + uk)).sqrt())
        .collect();
    let s: Vec<f64> = t.iter().map(|&tk| tk.atanh()).collect();
    Ok(GaneliusNodes {
        beta,
        n,
        n_o,
        u,
        t,
        s,
    })
}

impl GaneliusNodes {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_o(&self) -> usize {
        self.n_o
    }

    /// `u_k` for `k = 1..=N`.
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// `t_k` for `k = 1..=N`.
    pub fn t(&self) -> &[f64] {
        &self.t
    }

    /// Positive nodes `s_k` for `k = 1..=N` (not monotone in `k`).
    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// All `2N` nodes: `-s_N .. -s_1, s_1 .. s_N`.
    pub fn all_nodes(&self) -> Vec<f64> {
        let mut nodes: Vec<f64> = self.s.iter().rev().map(|&s| -s).collect();
        nodes.extend_from_slice(&self.s);
        nodes
    }
}

/// Log-domain denominators for a plain node list with weight
/// `log w = -beta ln cosh` and `c = 1` (strip half-width `pi/4`).
fn tanh_denominators(nodes: &[f64], beta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut log_denom = Vec::with_capacity(nodes.len());
    let mut sign_denom = Vec::with_capacity(nodes.len());
    for (k, &sk) in nodes.iter().enumerate() {
        let mut acc = -beta * ln_cosh(sk);
        let mut sign = 1.0;
        for (m, &sm) in nodes.iter().enumerate() {
            if m == k {
                continue;
            }
            acc += ln_abs_tanh(sk - sm);
            if sm > sk {
                sign = -sign;
            }
        }
        log_denom.push(acc);
        sign_denom.push(sign);
    }
    (log_denom, sign_denom)
}

fn eval_tanh_formula(
    nodes: &[f64],
    samples: &[f64],
    beta: f64,
    log_denom: &[f64],
    sign_denom: &[f64],
    x: f64,
) -> f64 {
    if let Some(j) = nodes.iter().position(|&s| s == x) {
        return samples[j];
    }
    let log_tanh: Vec<f64> = nodes.iter().map(|&s| ln_abs_tanh(x - s)).collect();
    let s_all: f64 = log_tanh.iter().sum();
    let above = nodes.iter().filter(|&&s| s > x).count();
    let sign_all = if above % 2 == 0 { 1.0 } else { -1.0 };
    let log_w_x = -beta * ln_cosh(x);
    let mut total = 0.0;
    for (k, &sk) in nodes.iter().enumerate() {
        let sign = sign_all * (x - sk).signum() * sign_denom[k];
        let log_mag = log_w_x + s_all - log_tanh[k] - log_denom[k];
        total += samples[k] * sign * log_mag.exp() * sech_sq(sk - x);
    }
    total
}

/// Evaluate the Ganelius formula at one point.
pub fn ganelius_eval(f: impl Fn(f64) -> f64, nodes: &GaneliusNodes, x: f64) -> f64 {
    ganelius_eval_grid(f, nodes, std::slice::from_ref(&x))[0]
}

/// Evaluate the Ganelius formula on a grid, precomputing the
/// denominator products once.
pub fn ganelius_eval_grid(f: impl Fn(f64) -> f64, nodes: &GaneliusNodes, xs: &[f64]) -> Vec<f64> {
    let all = nodes.all_nodes();
    let samples: Vec<f64> = all.iter().map(|&s| f(s)).collect();
    let (log_denom, sign_denom) = tanh_denominators(&all, nodes.beta);
    xs.iter()
        .map(|&x| eval_tanh_formula(&all, &samples, nodes.beta, &log_denom, &sign_denom, x))
        .collect()
}
