#![allow(dead_code)]

use lcm_core::hull::{grid_upper_hull, uniform_grid};
use lcm_core::majorant::{components, least_concave_majorant, MajorantResult};
use lcm_core::partition::{refine, Curvature};
use lcm_core::piecewise::{CubicPiece, PiecewiseCubic};
use lcm_core::spline::{clamped_spline, SplineProblem};
use lcm_core::tol::Tolerances;
use rand::Rng;

/// Cubic Hermite piece through `(x0, y0, d0)` and `(x1, y1, d1)`.
pub fn hermite(x0: f64, y0: f64, d0: f64, x1: f64, y1: f64, d1: f64) -> CubicPiece {
    let h = x1 - x0;
    let delta = (y1 - y0) / h;
    let c = (3.0 * delta - 2.0 * d0 - d1) / h;
    let d = (d0 + d1 - 2.0 * delta) / (h * h);
    CubicPiece::from_local(x0, x1, x0, [d, c, d0, y0])
}

/// Random C¹ piecewise cubic at desk scale: 1..=max_pieces pieces of width
/// 0.25..1.5 starting in [-2, 2], Hermite data with values in [-2, 2] and
/// slopes in [-3, 3].
pub fn random_differentiable(rng: &mut impl Rng, max_pieces: usize) -> PiecewiseCubic {
    let n = rng.gen_range(1..=max_pieces);
    let mut knots = vec![rng.gen_range(-2.0..2.0)];
    for _ in 0..n {
        let last = *knots.last().unwrap();
        knots.push(last + rng.gen_range(0.25..1.5));
    }
    let ys: Vec<f64> = knots.iter().map(|_| rng.gen_range(-2.0..2.0)).collect();
    let ds: Vec<f64> = knots.iter().map(|_| rng.gen_range(-3.0..3.0)).collect();
    let pieces = (0..n)
        .map(|i| hermite(knots[i], ys[i], ds[i], knots[i + 1], ys[i + 1], ds[i + 1]))
        .collect();
    PiecewiseCubic::from_pieces(pieces).unwrap()
}

/// All majorant properties for one input; returns the first violation.
pub fn check_properties(pw: &PiecewiseCubic, tol: &Tolerances) -> Result<MajorantResult, String> {
    let res = least_concave_majorant(pw, tol).map_err(|e| e.to_string())?;
    let fhat = &res.majorant;
    let (a, b) = pw.domain();

    for x in uniform_grid(a, b, 2001) {
        let (f, g) = (pw.value(x), fhat.value(x));
        if g < f - 1e-9 {
            return Err(format!("majorization fails at {x}: {g} < {f}"));
        }
    }

    let slopes: Vec<(f64, f64)> = fhat
        .pieces()
        .iter()
        .map(|p| (p.slope_at(p.lo), p.slope_at(p.hi)))
        .collect();
    for (i, s) in slopes.iter().enumerate() {
        if s.1 > s.0 + 1e-9 {
            return Err(format!("piece {i} of the majorant is convex"));
        }
        if let Some(next) = slopes.get(i + 1) {
            if next.0 > s.1 + 1e-9 {
                return Err(format!(
                    "slope increases at knot {}: {} -> {}",
                    fhat.knots()[i + 1],
                    s.1,
                    next.0
                ));
            }
        }
    }

    let inside = |x: f64| res.components.iter().any(|&(lo, hi)| x > lo && x < hi);
    for x in uniform_grid(a, b, 2001) {
        if !inside(x) && (pw.value(x) - fhat.value(x)).abs() > 1e-7 {
            return Err(format!("majorant differs from F off the components at {x}"));
        }
    }

    for w in res.components.windows(2) {
        if w[0].1 > w[1].0 {
            return Err(format!("components {:?} and {:?} overlap", w[0], w[1]));
        }
    }

    let ms = &res.max_structure;
    for &(lo, hi) in &res.components {
        let slope = (pw.value(hi) - pw.value(lo)) / (hi - lo);
        for x in [lo, hi] {
            if x > a && x < b && !ms.contains(x, tol) && (pw.slope(x) - slope).abs() > 1e-6 {
                return Err(format!(
                    "endpoint {x} of ({lo}, {hi}) is not a tangency: {} vs {slope}",
                    pw.slope(x)
                ));
            }
        }
        let rp = refine(pw, lo, hi, tol);
        if rp.cells.iter().all(|c| c.curvature == Curvature::StrictlyConcave) {
            return Err(format!("component ({lo}, {hi}) holds only strictly concave cells"));
        }
    }

    let xs = uniform_grid(a, b, 5000);
    let ys: Vec<f64> = xs.iter().map(|&x| pw.value(x)).collect();
    let hull = grid_upper_hull(&xs, &ys);
    let h = xs[1] - xs[0];
    let c = pw.max_abs_curvature();
    let sup = xs
        .iter()
        .zip(&hull.hull_ys)
        .map(|(&x, hy)| (fhat.value(x) - hy).abs())
        .fold(0.0, f64::max);
    if sup > c * h * h + 1e-6 {
        return Err(format!("oracle sup_diff {sup} > {}", c * h * h + 1e-6));
    }

    let again = components(fhat, tol);
    if !again.is_empty() {
        return Err(format!("majorant of the majorant has components {again:?}"));
    }
    Ok(res)
}

pub fn random_spline(rng: &mut impl Rng, nodes: &[f64]) -> PiecewiseCubic {
    let mut y = rng.gen_range(-1.0..1.0);
    let values: Vec<f64> = nodes
        .iter()
        .map(|_| {
            y += rng.gen_range(-0.6..0.6);
            y
        })
        .collect();
    let prob = SplineProblem::new(
        nodes.to_vec(),
        values,
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        0.0,
    )
    .unwrap();
    clamped_spline(&prob).unwrap()
}

/// Uniform grid plus the knots and the extrema of `F' - G'` on each piece.
pub fn comparison_grid(f: &PiecewiseCubic, g: &PiecewiseCubic) -> Vec<f64> {
    let (a, b) = f.domain();
    let mut xs = uniform_grid(a, b, 2001);
    xs.extend_from_slice(f.knots());
    for (p, q) in f.pieces().iter().zip(g.pieces()) {
        // (F' - G')' = 6 da x + 2 db
        let da = p.coeffs[0] - q.coeffs[0];
        let db = p.coeffs[1] - q.coeffs[1];
        if da != 0.0 {
            let x = -db / (3.0 * da);
            if p.lo < x && x < p.hi {
                xs.push(x);
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs
}
