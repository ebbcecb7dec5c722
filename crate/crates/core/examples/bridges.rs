//! Common tangents between two concave increasing stretches: the tangency
//! polynomial in the slope, its candidates, and which of them survive the
//! cell-by-cell check.
//!
//!     cargo run --example bridges

use lcm_core::bridge::{build_sextic, candidate_bridges, slope_range, verify_bridge};
use lcm_core::fixtures::ten_pieces;
use lcm_core::partition::{concave_increasing_set, group_by_convex_separators, refine};
use lcm_core::Tolerances;

fn main() -> lcm_core::Result<()> {
    let tol = Tolerances::default();
    let f = ten_pieces();
    let rp = refine(&f, 0.0, 4.0, &tol);
    let members = group_by_convex_separators(&concave_increasing_set(&rp, &tol), &rp).members;
    let (left, right) = (&members[0], members.last().unwrap());

    let sl = slope_range(f.piece(left.piece), left.lo, left.hi)?;
    let sr = slope_range(f.piece(right.piece), right.lo, right.hi)?;
    println!("left slopes  [{:.5}, {:.5}]", sl.0, sl.1);
    println!("right slopes [{:.5}, {:.5}]", sr.0, sr.1);

    let ctx = build_sextic(
        &f.piece(left.piece).with_interval(left.lo, left.hi),
        &f.piece(right.piece).with_interval(right.lo, right.hi),
    )?;
    println!("tangency polynomial {:?}", ctx.sextic.coeffs());

    for c in candidate_bridges(&f, left, right, &tol) {
        let ok = verify_bridge(&f, &rp, &c, 3.0, &tol);
        println!(
            "({:.5}, {:.5}) slope {:.5} -> {}",
            c.alpha,
            c.beta,
            c.slope,
            if ok { "bridge" } else { "crosses F" }
        );
    }
    Ok(())
}
