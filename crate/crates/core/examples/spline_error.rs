//! Derivative error of clamped splines of `sin` on [0, π] against the
//! `|G''''| h^3 / 24` bound, halving the mesh each time.
//!
//!     cargo run --example spline_error

use std::f64::consts::PI;

use lcm_core::hull::uniform_grid;
use lcm_core::{certify, clamped_spline, SplineProblem};

fn main() -> lcm_core::Result<()> {
    let mut prev: Option<f64> = None;
    println!("{:>4} {:>11} {:>11} {:>7}", "n", "error", "bound", "ratio");
    for n in [5, 10, 20, 40, 80] {
        let prob = SplineProblem::uniform(f64::sin, 0.0, PI, n, 1.0, -1.0, 1.0)?;
        let s = clamped_spline(&prob)?;
        let err = uniform_grid(0.0, PI, 20001)
            .into_iter()
            .map(|x| (s.slope(x) - x.cos()).abs())
            .fold(0.0, f64::max);
        let bound = certify(&prob, prob.mesh_norm()).deriv_bound;
        let ratio = prev.map_or(String::new(), |p| format!("{:.3}", p / err));
        println!("{n:>4} {err:>11.3e} {bound:>11.3e} {ratio:>7}");
        prev = Some(err);
    }
    Ok(())
}
