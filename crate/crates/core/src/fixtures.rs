//! Reference inputs used by the examples and tests.

use crate::piecewise::PiecewiseCubic;
use crate::spline::{clamped_spline, SplineProblem};

/// Ten cubic pieces on `[0, 10]` with maximum 3 attained on `[4, 8]`.
///
/// The third piece is the cubic Hermite interpolant of `s(2) = 1.8, s'(2) = 1,
/// s(3) = 2.5, s'(3) = -0.5`, and the eighth piece has constant term `-605`;
/// with these two pieces the function is continuous, and differentiable
/// everywhere except at `x = 8` where it attains its maximum.
pub fn ten_pieces() -> PiecewiseCubic {
    let pieces = vec![
        [-1.1, 1.1, 1.0, 1.0],
        [1.3, -5.3, 6.6, -0.6],
        [-0.9, 6.0, -12.2, 9.4],
        [-1.5, 16.0, -56.0, 67.0],
        [0.0, 0.0, 0.0, 3.0],
        [0.5, -8.75, 50.0, -90.75],
        [0.0, 1.0, -13.0, 44.25],
        [1.5, -33.25, 246.0, -605.0],
        [1.0, -25.5, 216.0, -605.0],
        [0.6, -16.6, 153.0, -467.3],
    ];
    PiecewiseCubic::new((0..=10).map(f64::from).collect(), pieces).expect("valid fixture")
}

fn phi(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal distribution function, accurate in both tails.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// `(weight, scale, center)` for terms `weight * phi(scale * (x - center))`.
const TRIMODAL: [(f64, f64, f64); 3] = [(0.5, 1.0, 3.0), (3.0, 10.0, 2.2), (2.0, 10.0, 1.8)];
const TRIMODAL_RIGHT: [(f64, f64, f64); 3] = [(0.5, 1.0, 3.0), (3.0, 10.0, 3.8), (2.0, 10.0, 4.2)];

/// Mixture density on `[0, 6]`: a wide bump at 3 plus narrow peaks at 2.2 and 1.8.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trimodal {
    terms: [(f64, f64, f64); 3],
}

impl Trimodal {
    /// Narrow peaks at 2.2 (weight 3) and 1.8 (weight 2).
    pub fn new() -> Self {
        Trimodal { terms: TRIMODAL }
    }

    /// Mirror image `x -> 6 - x` of [`Trimodal::new`]: narrow peaks at 3.8 and 4.2.
    pub fn right_peaked() -> Self {
        Trimodal { terms: TRIMODAL_RIGHT }
    }

    pub fn density(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(w, k, c)| w * phi(k * (x - c))).sum()
    }

    /// Third derivative of the density, using `phi''' (z) = (3 z - z^3) phi(z)`.
    pub fn density_d3(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(w, k, c)| {
                let z = k * (x - c);
                w * k * k * k * (3.0 * z - z * z * z) * phi(z)
            })
            .sum()
    }

    /// `F(x) = ∫_0^x density`, in closed form through the normal distribution
    /// function: each term contributes `w / k * (Phi(k (x - c)) - Phi(-k c))`.
    pub fn antiderivative(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(w, k, c)| w / k * (normal_cdf(k * (x - c)) - normal_cdf(-k * c)))
            .sum()
    }

    /// Clamped spline of the antiderivative on `n` equal subintervals of
    /// `[0, 6]`, clamped with the density at the ends.
    pub fn spline_problem(&self, n: usize, m4_bound: f64) -> SplineProblem {
        SplineProblem::uniform(
            |x| self.antiderivative(x),
            0.0,
            6.0,
            n,
            self.density(0.0),
            self.density(6.0),
            m4_bound,
        )
        .expect("valid samples")
    }

    pub fn spline(&self, n: usize) -> PiecewiseCubic {
        clamped_spline(&self.spline_problem(n, 700.0)).expect("valid spline")
    }
}

impl Default for Trimodal {
    fn default() -> Self {
        Self::new()
    }
}

/// `-(x - 1)^2 + 1` on `[0, 3]` split into three pieces; concave throughout.
pub fn concave() -> PiecewiseCubic {
    let p = [0.0, -1.0, 2.0, 0.0];
    PiecewiseCubic::new(vec![0.0, 1.0, 2.0, 3.0], vec![p, p, p]).expect("valid fixture")
}
