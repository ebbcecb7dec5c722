//! Refined partition of [0, 4]: cells by monotonicity and curvature, then the
//! strictly concave increasing members grouped by convex separators.
//!
//!     cargo run --example partition

use lcm_core::fixtures::ten_pieces;
use lcm_core::partition::{concave_increasing_set, global_max, group_by_convex_separators, refine};
use lcm_core::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let f = ten_pieces();
    let ms = global_max(&f, &tol);
    println!("maximizers {:?}", ms.maximizers);

    let rp = refine(&f, 0.0, ms.c1(), &tol);
    for c in &rp.cells {
        println!(
            "[{:.5}, {:.5}] piece {} {:?} {:?}",
            c.lo, c.hi, c.piece, c.monotonicity, c.curvature
        );
    }
    let members = group_by_convex_separators(&concave_increasing_set(&rp, &tol), &rp).members;
    for m in members {
        println!("member ({:.5}, {:.5}) group {}", m.lo, m.hi, m.group);
    }
}
