//! Exact least concave majorants and level functions of differentiable
//! piecewise cubic functions, plus clamped-spline approximation of smooth
//! functions with certified error bounds.
//!
//! ```
//! use lcm_core::{fixtures, least_concave_majorant, Tolerances};
//!
//! let f = fixtures::ten_pieces();
//! let res = least_concave_majorant(&f, &Tolerances::default()).unwrap();
//! assert_eq!(res.components.len(), 4);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bridge;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hull;
pub mod majorant;
pub mod partition;
pub mod piecewise;
pub mod poly;
pub mod spline;
pub mod tol;

pub use error::{LcmError, Result};
pub use majorant::{components, least_concave_majorant, MajorantResult};
pub use piecewise::{CubicPiece, PiecewiseCubic};
pub use spline::{certify, clamped_spline, mesh_for_tolerance, SplineProblem};
pub use tol::Tolerances;
