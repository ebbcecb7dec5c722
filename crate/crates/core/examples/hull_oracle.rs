//! Cross-check the exact majorant against the upper hull of dense samples.
//!
//!     cargo run --release --example hull_oracle [grid points]

use lcm_core::fixtures::ten_pieces;
use lcm_core::hull::compare;
use lcm_core::{least_concave_majorant, Tolerances};

fn main() -> lcm_core::Result<()> {
    let grid: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10001);
    let f = ten_pieces();
    let res = least_concave_majorant(&f, &Tolerances::default())?;
    let m = compare(&f, &res, grid, 4);
    println!(
        "grid {} (step {:.1e}): sup |Fhat - hull| = {:.2e}",
        m.grid, m.step, m.sup_diff
    );
    for d in &m.component_endpoint_diffs {
        println!(
            "exact ({:.5}, {:.5}) vs sampled {:?}: endpoint gaps {:.1e}, {:.1e}",
            d.component.0, d.component.1, d.oracle, d.left, d.right
        );
    }
    if m.count_mismatch {
        println!("component counts differ");
    }
    Ok(())
}
