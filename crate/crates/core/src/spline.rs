//! Clamped cubic spline interpolation and the derivative / majorant error
//! certificates that come with it.

use crate::error::{LcmError, Result};
use crate::piecewise::{CubicPiece, PiecewiseCubic};

/// Samples of a smooth `G` with its end derivatives and a bound on `|G''''|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineProblem {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub d_left: f64,
    pub d_right: f64,
    pub m4_bound: f64,
}

impl SplineProblem {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>, d_left: f64, d_right: f64, m4_bound: f64) -> Result<Self> {
        let p = SplineProblem {
            nodes,
            values,
            d_left,
            d_right,
            m4_bound,
        };
        p.validate()?;
        Ok(p)
    }

    /// Samples `g` at `n + 1` equally spaced nodes of `[a, b]`.
    pub fn uniform(
        g: impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        n: usize,
        d_left: f64,
        d_right: f64,
        m4_bound: f64,
    ) -> Result<Self> {
        let nodes: Vec<f64> = (0..=n)
            .map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 })
            .collect();
        let values = nodes.iter().map(|&x| g(x)).collect();
        Self::new(nodes, values, d_left, d_right, m4_bound)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.len() < 3 {
            return Err(LcmError::Input(format!(
                "nodes: need at least 3, got {}",
                self.nodes.len()
            )));
        }
        if self.values.len() != self.nodes.len() {
            return Err(LcmError::Input(format!(
                "values: expected {} entries, got {}",
                self.nodes.len(),
                self.values.len()
            )));
        }
        if let Some(i) = self.nodes.iter().position(|x| !x.is_finite()) {
            return Err(LcmError::Input(format!("nodes[{i}] is not finite")));
        }
        if let Some(i) = self.nodes.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(LcmError::Input(format!(
                "nodes: not strictly increasing at index {}",
                i + 1
            )));
        }
        if let Some(i) = self.values.iter().position(|y| !y.is_finite()) {
            return Err(LcmError::Input(format!("values[{i}] is not finite")));
        }
        if !self.d_left.is_finite() || !self.d_right.is_finite() {
            return Err(LcmError::Input("clamp derivatives must be finite".into()));
        }
        if !(self.m4_bound >= 0.0) {
            return Err(LcmError::Input("m4_bound must be nonnegative".into()));
        }
        Ok(())
    }

    /// Largest node spacing.
    pub fn mesh_norm(&self) -> f64 {
        self.nodes.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }
}

/// The C² cubic spline through the samples with the prescribed end slopes.
///
/// Second derivatives `M_i` at the nodes solve the clamped moment system
/// (tridiagonal, strictly diagonally dominant), then each piece is written in
/// `t = x - x_i` as `y_i + b t + (M_i / 2) t^2 + (M_{i+1} - M_i) / (6 h) t^3`.
pub fn clamped_spline(prob: &SplineProblem) -> Result<PiecewiseCubic> {
    prob.validate()?;
    let x = &prob.nodes;
    let y = &prob.values;
    let n = x.len() - 1;
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

    let mut sub = vec![0.0; n + 1];
    let mut diag = vec![0.0; n + 1];
    let mut sup = vec![0.0; n + 1];
    let mut rhs = vec![0.0; n + 1];
    diag[0] = 2.0 * h[0];
    sup[0] = h[0];
    rhs[0] = 6.0 * (delta[0] - prob.d_left);
    for i in 1..n {
        sub[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        sup[i] = h[i];
        rhs[i] = 6.0 * (delta[i] - delta[i - 1]);
    }
    sub[n] = h[n - 1];
    diag[n] = 2.0 * h[n - 1];
    rhs[n] = 6.0 * (prob.d_right - delta[n - 1]);
    let m = solve_tridiagonal(&sub, &diag, &sup, &rhs);

    let pieces = (0..n)
        .map(|i| {
            let c = 0.5 * m[i];
            let d = (m[i + 1] - m[i]) / (6.0 * h[i]);
            let b = delta[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
            CubicPiece::from_local(x[i], x[i + 1], x[i], [d, c, b, y[i]])
        })
        .collect();
    PiecewiseCubic::from_pieces(pieces)
}

/// Thomas algorithm; `sub[0]` and `sup[n - 1]` are ignored.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut out = vec![0.0; n];
    out[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = d[i] - c[i] * out[i + 1];
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    pub norm_h: f64,
    pub count: usize,
}

/// Mesh width with `m4_bound / 24 * h^3 = eps`, and the smallest number of
/// equal subintervals of `length` that is strictly larger than `length / h`.
pub fn mesh_for_tolerance(eps: f64, m4_bound: f64, length: f64) -> Mesh {
    let norm_h = (24.0 * eps / m4_bound).cbrt();
    let count = (length / norm_h).floor() as usize + 1;
    Mesh { norm_h, count }
}

/// Bounds for a clamped spline `F` of `G` on `[a, b]`: `|F' - G'|` and the
/// level-function difference are below `deriv_bound`; the majorant difference
/// at `x` is below `min(x - a, b - x) * deriv_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorCertificate {
    pub deriv_bound: f64,
    pub a: f64,
    pub b: f64,
}

impl ErrorCertificate {
    pub fn majorant_bound_at(&self, x: f64) -> f64 {
        (x - self.a).min(self.b - x).max(0.0) * self.deriv_bound
    }
}

pub fn certify(prob: &SplineProblem, norm_h: f64) -> ErrorCertificate {
    ErrorCertificate {
        deriv_bound: prob.m4_bound * norm_h.powi(3) / 24.0,
        a: prob.nodes[0],
        b: *prob.nodes.last().unwrap(),
    }
}
