//! Smooth a distribution function: clamped spline of `F(x) = ∫_0^x f` for a
//! three-bump mixture density, its least concave majorant, and the
//! non-increasing level function with its error certificate.
//!
//!     cargo run --example density [subintervals]

use lcm_core::fixtures::Trimodal;
use lcm_core::{certify, clamped_spline, least_concave_majorant, mesh_for_tolerance, Tolerances};

fn main() -> lcm_core::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(85);
    let g4 = 700.0;
    let mesh = mesh_for_tolerance(0.001, g4, 6.0);
    println!(
        "mesh for eps 0.001: h = {:.5}, {} subintervals",
        mesh.norm_h, mesh.count
    );

    let t = Trimodal::new();
    let prob = t.spline_problem(n, g4);
    let spline = clamped_spline(&prob)?;
    let res = least_concave_majorant(&spline, &Tolerances::default())?;
    let cert = certify(&prob, prob.mesh_norm());

    println!("{n} subintervals, components {:.5?}", res.components);
    println!("level function within {:.2e} of the true one", cert.deriv_bound);
    println!("majorant within {:.2e} at x = 3", cert.majorant_bound_at(3.0));
    println!("\n{:>5} {:>9} {:>9} {:>9}", "x", "f", "level", "Fhat err");
    for i in 0..=24 {
        let x = 0.25 * i as f64;
        println!(
            "{x:>5.2} {:>9.5} {:>9.5} {:>9.2e}",
            t.density(x),
            res.level.value(x),
            cert.majorant_bound_at(x)
        );
    }
    Ok(())
}
