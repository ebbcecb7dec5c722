//! Watch the march: every round, pruned pair, candidate and accepted bridge.
//!
//!     cargo run --example trace

use lcm_core::fixtures::ten_pieces;
use lcm_core::majorant::{least_concave_majorant_traced, TraceEvent};
use lcm_core::Tolerances;

fn main() -> lcm_core::Result<()> {
    let res = least_concave_majorant_traced(&ten_pieces(), &Tolerances::default(), &mut |e| match e {
        TraceEvent::Round { frame, round, right } => {
            println!("{frame:?} round {round}: right member ({:.5}, {:.5})", right.0, right.1)
        }
        TraceEvent::Pruned { left, .. } => println!("  pruned left member ({:.5}, {:.5})", left.0, left.1),
        TraceEvent::Candidate {
            candidate: c, verified, ..
        } => println!(
            "  candidate ({:.5}, {:.5}) slope {:.5} {}",
            c.alpha,
            c.beta,
            c.slope,
            if *verified { "verified" } else { "rejected" }
        ),
        TraceEvent::Accepted { alpha, beta, .. } => println!("  accept ({alpha:.5}, {beta:.5})"),
        TraceEvent::Discarded { right, .. } => println!("  discard ({:.5}, {:.5})", right.0, right.1),
    })?;
    println!("components {:?}", res.components);
    Ok(())
}
