//! Sampling-point generation: integrate the density, invert the
//! cumulative function with a shape-preserving cubic, and reflect.

use crate::density::DensityTable;
use crate::error::{Error, Result};

/// The symmetric node set `a_{-N} < ... < a_0 = 0 < ... < a_N`.
#[derive(Clone, Debug)]
pub struct PointSet {
    d: f64,
    n: usize,
    points: Vec<f64>,
    clamped: bool,
}

impl PointSet {
    /// Build directly from the positive nodes `a_1 < ... < a_N`; negative
    /// nodes are their exact reflections.
    pub fn from_positive_nodes(d: f64, positive: &[f64]) -> Result<PointSet> {
        let n = positive.len();
        let mut points = Vec::with_capacity(2 * n + 1);
        for &p in positive.iter().rev() {
            points.push(-p);
        }
        points.push(0.0);
        points.extend_from_slice(positive);
        let set = PointSet {
            d,
            n,
            points,
            clamped: false,
        };
        set.check_monotone()?;
        Ok(set)
    }

    fn check_monotone(&self) -> Result<()> {
        if self.points.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::PointGeneration(
                "sampling points are not strictly increasing".into(),
            ));
        }
        Ok(())
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Half count `N`; the set holds `2N + 1` points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// All points in increasing order.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// `a_i` for `i` in `-N ..= N`.
    pub fn point(&self, i: isize) -> f64 {
        self.points[(i + self.n as isize) as usize]
    }

    /// Whether the outermost node had to be clamped below `alpha`.
    pub fn clamped(&self) -> bool {
        self.clamped
    }
}

/// Cumulative density on the full grid of `t`, by the first-order Euler
/// scheme `I(x_{i+1}) = I(x_i) + nu(x_i) h_x` from `I(0) = 0`, extended
/// to negative indices by odd reflection (the density is even).
pub fn cumulative_density(t: &DensityTable) -> Vec<f64> {
    let m = t.half_size();
    let nu = t.nu_half();
    let mut half = vec![0.0; m + 1];
    for i in 0..m {
        half[i + 1] = half[i] + nu[i] * t.h_x();
    }
    let mut full = Vec::with_capacity(2 * m);
    for i in -(m as i64 - 1)..=(m as i64) {
        let v = half[i.unsigned_abs() as usize];
        full.push(if i < 0 { -v } else { v });
    }
    full
}

/// Monotone piecewise-cubic Hermite interpolant through `(y_i, x_i)`
/// knots, with Fritsch-Carlson slope limiting.
#[derive(Clone, Debug)]
pub struct MonotoneCubic {
    y: Vec<f64>,
    x: Vec<f64>,
    slope: Vec<f64>,
}

impl MonotoneCubic {
    pub fn max_knot(&self) -> f64 {
        *self.y.last().unwrap()
    }

    /// Evaluate at `y`, clamping to the knot range.
    pub fn eval(&self, y: f64) -> f64 {
        let n = self.y.len();
        if y <= self.y[0] {
            return self.x[0];
        }
        if y >= self.y[n - 1] {
            return self.x[n - 1];
        }
        let seg = match self.y.partition_point(|&knot| knot <= y) {
            0 => 0,
            p => p - 1,
        };
        let h = self.y[seg + 1] - self.y[seg];
        let t = (y - self.y[seg]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.x[seg]
            + h10 * h * self.slope[seg]
            + h01 * self.x[seg + 1]
            + h11 * h * self.slope[seg + 1]
    }
}

/// Build the monotone inverse evaluator from `(I(x_i), x_i)` pairs with
/// nondecreasing first components. Consecutive duplicate plateau values
/// are collapsed to a single knot.
pub fn monotone_inverse(table: &[(f64, f64)]) -> Result<MonotoneCubic> {
    let mut y = Vec::with_capacity(table.len());
    let mut x = Vec::with_capacity(table.len());
    for &(yi, xi) in table {
        match y.last() {
            Some(&last) if yi <= last => {
                if yi < last {
                    return Err(Error::InvalidInput(
                        "monotone_inverse: cumulative values must be nondecreasing".into(),
                    ));
                }
                // plateau: keep the first knot
            }
            _ => {
                y.push(yi);
                x.push(xi);
            }
        }
    }
    if y.len() < 2 {
        return Err(Error::InvalidInput(
            "monotone_inverse: need at least 2 distinct knots".into(),
        ));
    }
    let slope = fritsch_carlson_slopes(&y, &x);
    Ok(MonotoneCubic { y, x, slope })
}

/// Fritsch-Carlson shape-preserving slopes for strictly increasing
/// abscissae `y` and monotone values `x`.
fn fritsch_carlson_slopes(y: &[f64], x: &[f64]) -> Vec<f64> {
    let n = y.len();
    let h: Vec<f64> = (0..n - 1).map(|i| y[i + 1] - y[i]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|i| (x[i + 1] - x[i]) / h[i]).collect();
    let mut d = vec![0.0; n];
    if n == 2 {
        d[0] = delta[0];
        d[1] = delta[0];
        return d;
    }
    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] <= 0.0 {
            d[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    d[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// Three-point one-sided slope estimate with the standard monotonicity
/// clamps.
fn edge_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let mut d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        d = 0.0;
    } else if del0.signum() != del1.signum() && d.abs() > 3.0 * del0.abs() {
        d = 3.0 * del0;
    }
    d
}

/// Margin by which the cumulative mass may fall short of `N + 1`.
const CUMULATIVE_SLACK: f64 = 0.02;

/// Generate the `2N+1` sampling points `a_i = I[nu]^{-1}(i)`.
///
/// `a_0 = 0` and `a_{-i} = -a_i` exactly. If the cumulative maximum falls
/// below `N` (quadrature shortfall), the outermost node is clamped just
/// inside the support and the point set is flagged.
pub fn sampling_points(t: &DensityTable, n: usize, d: f64) -> Result<PointSet> {
    let m = t.half_size();
    let nu = t.nu_half();
    let x = t.x_half();
    let mut cumulative = vec![0.0; m + 1];
    for i in 0..m {
        cumulative[i + 1] = cumulative[i] + nu[i] * t.h_x();
    }
    let i_max = cumulative[m];
    if (n + 1) as f64 > i_max * (1.0 + CUMULATIVE_SLACK) {
        return Err(Error::PointGeneration(format!(
            "cumulative density reaches only {i_max:.4}, need N+1 = {}",
            n + 1
        )));
    }
    let table: Vec<(f64, f64)> = cumulative.iter().copied().zip(x.iter().copied()).collect();
    let inverse = monotone_inverse(&table)?;

    let cap = t.alpha() * (1.0 - 1e-9);
    let mut clamped = false;
    let mut positive = Vec::with_capacity(n);
    for i in 1..=n {
        let y = i as f64;
        let a = if y > i_max {
            clamped = true;
            cap
        } else {
            inverse.eval(y).min(cap)
        };
        positive.push(a);
    }
    let mut set = PointSet::from_positive_nodes(d, &positive)?;
    set.clamped = clamped;
    Ok(set)
}
