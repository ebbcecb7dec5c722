//! Brute-force oracle: sample on a uniform grid and take the upper concave
//! hull of the samples.

use rayon::prelude::*;
use serde::Serialize;

use crate::majorant::MajorantResult;
use crate::piecewise::PiecewiseCubic;

#[derive(Debug, Clone, PartialEq)]
pub struct GridHull {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub hull_ys: Vec<f64>,
    pub hull_vertices: Vec<usize>,
}

/// Monotone-chain upper hull; points on a hull edge are not kept as vertices.
///
/// Panics if `xs` and `ys` differ in length or hold fewer than two points.
pub fn grid_upper_hull(xs: &[f64], ys: &[f64]) -> GridHull {
    assert!(xs.len() == ys.len() && xs.len() >= 2, "need at least two samples");
    let mut v: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while v.len() >= 2 {
            let (j, k) = (v[v.len() - 2], v[v.len() - 1]);
            // k is dropped when it lies on or below the segment j -> i
            let cross = (xs[k] - xs[j]) * (ys[i] - ys[j]) - (ys[k] - ys[j]) * (xs[i] - xs[j]);
            if cross >= 0.0 {
                v.pop();
            } else {
                break;
            }
        }
        v.push(i);
    }
    let mut hull_ys = ys.to_vec();
    for w in v.windows(2) {
        let (j, k) = (w[0], w[1]);
        let slope = (ys[k] - ys[j]) / (xs[k] - xs[j]);
        for i in j + 1..k {
            hull_ys[i] = ys[j] + slope * (xs[i] - xs[j]);
        }
    }
    GridHull {
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        hull_ys,
        hull_vertices: v,
    }
}

/// `n` equally spaced points of `[a, b]`, both ends included.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            if i + 1 == n {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Evaluates `f` on `xs`, splitting the work over `threads` workers.
pub fn sample(f: impl Fn(f64) -> f64 + Sync, xs: &[f64], threads: usize) -> Vec<f64> {
    if threads <= 1 {
        return xs.iter().map(|&x| f(x)).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| xs.par_iter().map(|&x| f(x)).collect()),
        Err(_) => xs.iter().map(|&x| f(x)).collect(),
    }
}

/// Hull of `pw` sampled at `n` uniform points.
pub fn hull_of(pw: &PiecewiseCubic, n: usize, threads: usize) -> GridHull {
    let (a, b) = pw.domain();
    let xs = uniform_grid(a, b, n);
    let ys = sample(|x| pw.value(x), &xs, threads);
    grid_upper_hull(&xs, &ys)
}

impl GridHull {
    /// Maximal runs of grid points strictly below the hull, reported as the
    /// enclosing pair of hull vertices.
    pub fn gap_runs(&self) -> Vec<(f64, f64)> {
        let m = self.ys.iter().fold(f64::NEG_INFINITY, |m, &y| m.max(y));
        let thresh = 1e-12 * (1.0 + m.abs());
        let mut runs = Vec::new();
        let mut start: Option<usize> = None;
        for i in 0..self.xs.len() {
            let below = self.hull_ys[i] - self.ys[i] > thresh;
            match (below, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    runs.push((self.xs[s - 1], self.xs[i]));
                    start = None;
                }
                _ => {}
            }
        }
        runs
    }

    pub fn step(&self) -> f64 {
        (self.xs[self.xs.len() - 1] - self.xs[0]) / (self.xs.len() - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndpointDiff {
    pub component: (f64, f64),
    /// Nearest oracle gap run, if any overlaps the component.
    pub oracle: Option<(f64, f64)>,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub grid: usize,
    pub step: f64,
    pub sup_diff: f64,
    pub oracle_components: Vec<(f64, f64)>,
    pub component_endpoint_diffs: Vec<EndpointDiff>,
    pub count_mismatch: bool,
}

/// Compares the assembled majorant against the grid hull of the input.
pub fn compare(pw: &PiecewiseCubic, result: &MajorantResult, grid_n: usize, threads: usize) -> Metrics {
    let hull = hull_of(pw, grid_n, threads);
    let fhat = sample(|x| result.majorant.value(x), &hull.xs, threads);
    let sup_diff = fhat
        .iter()
        .zip(&hull.hull_ys)
        .map(|(f, h)| (f - h).abs())
        .fold(0.0, f64::max);
    let runs = hull.gap_runs();
    let diffs = result
        .components
        .iter()
        .map(|&(lo, hi)| {
            let overlap = |r: &(f64, f64)| (hi.min(r.1) - lo.max(r.0)).max(0.0);
            let best = runs
                .iter()
                .filter(|r| overlap(r) > 0.0)
                .max_by(|p, q| overlap(p).total_cmp(&overlap(q)))
                .copied();
            EndpointDiff {
                component: (lo, hi),
                oracle: best,
                left: best.map_or(f64::INFINITY, |r| (r.0 - lo).abs()),
                right: best.map_or(f64::INFINITY, |r| (r.1 - hi).abs()),
            }
        })
        .collect();
    Metrics {
        grid: hull.xs.len(),
        step: hull.step(),
        sup_diff,
        count_mismatch: runs.len() != result.components.len(),
        oracle_components: runs,
        component_endpoint_diffs: diffs,
    }
}
