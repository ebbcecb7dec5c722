//! Components, majorant and level function of a ten-piece cubic on [0, 10].
//!
//!     cargo run --example majorant

use lcm_core::fixtures::ten_pieces;
use lcm_core::{least_concave_majorant, Tolerances};

fn main() -> lcm_core::Result<()> {
    let f = ten_pieces();
    let res = least_concave_majorant(&f, &Tolerances::default())?;

    let ms = &res.max_structure;
    println!("max {} on [{}, {}]", ms.max_value, ms.c1(), ms.c2());
    for (lo, hi) in &res.components {
        let slope = (f.value(*hi) - f.value(*lo)) / (hi - lo);
        println!("component ({lo:.5}, {hi:.5})  chord slope {slope:.5}");
    }

    println!("\n{:>6} {:>10} {:>10} {:>10}", "x", "F", "Fhat", "level");
    for i in 0..=20 {
        let x = 0.5 * i as f64;
        println!(
            "{x:>6.2} {:>10.5} {:>10.5} {:>10.5}",
            f.value(x),
            res.majorant.value(x),
            res.level.value(x)
        );
    }
    Ok(())
}
