//! Build a piecewise cubic by hand, check it, and write it as JSON for the
//! `lcm` command line.
//!
//!     cargo run --example piecewise_input > valley.json && lcm components valley.json

use lcm_core::{components, CubicPiece, PiecewiseCubic, Tolerances};

fn main() -> lcm_core::Result<()> {
    // humps of height 1 at x = 1 and x = 3 and a valley dipping to 0.2 between
    let pieces = vec![
        CubicPiece::from_local(0.0, 1.0, 1.0, [0.0, -1.0, 0.0, 1.0]),
        CubicPiece::from_local(1.0, 2.0, 1.0, [1.6, -2.4, 0.0, 1.0]),
        CubicPiece::from_local(2.0, 3.0, 3.0, [-1.6, -2.4, 0.0, 1.0]),
        CubicPiece::from_local(3.0, 4.0, 3.0, [0.0, -1.0, 0.0, 1.0]),
    ];
    let f = PiecewiseCubic::from_pieces(pieces)?;
    let tol = Tolerances::default();
    f.check_continuity(tol.scale)?;
    eprintln!("components {:?}", components(&f, &tol));
    println!("{}", serde_json::to_string_pretty(&f.to_json()).expect("serializable"));
    Ok(())
}
