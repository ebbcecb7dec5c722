//! Cubic pieces and the piecewise cubic container.
//!
//! Coefficients are always stored in global coordinates, `(a3, a2, a1, a0)`
//! meaning `a3 x^3 + a2 x^2 + a1 x + a0`. Algorithms that need better
//! conditioning work on [`CubicPiece::shifted`] copies.

use serde::{Deserialize, Serialize};

use crate::error::{LcmError, Result};
use crate::poly::Poly;

/// One cubic polynomial on a closed interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPiece {
    pub lo: f64,
    pub hi: f64,
    /// `[a3, a2, a1, a0]`
    pub coeffs: [f64; 4],
}

impl CubicPiece {
    pub fn new(lo: f64, hi: f64, coeffs: [f64; 4]) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(LcmError::Input(format!("bad piece interval [{lo}, {hi}]")));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(LcmError::Input(format!("non-finite coefficients {coeffs:?}")));
        }
        Ok(CubicPiece { lo, hi, coeffs })
    }

    /// Builds the piece from coefficients of `t = x - origin`,
    /// `[d3, d2, d1, d0]` meaning `d3 t^3 + d2 t^2 + d1 t + d0`.
    pub fn from_local(lo: f64, hi: f64, origin: f64, local: [f64; 4]) -> Self {
        let [d3, d2, d1, d0] = local;
        let o = origin;
        CubicPiece {
            lo,
            hi,
            coeffs: [
                d3,
                d2 - 3.0 * d3 * o,
                d1 - 2.0 * d2 * o + 3.0 * d3 * o * o,
                d0 - d1 * o + d2 * o * o - d3 * o * o * o,
            ],
        }
    }

    /// Polynomial value at `x`, ignoring the interval.
    pub fn at(&self, x: f64) -> f64 {
        let [a3, a2, a1, a0] = self.coeffs;
        ((a3 * x + a2) * x + a1) * x + a0
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < self.lo || x > self.hi || x.is_nan() {
            return Err(LcmError::Domain {
                x,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.at(x))
    }

    pub fn slope_at(&self, x: f64) -> f64 {
        let [a3, a2, a1, _] = self.coeffs;
        (3.0 * a3 * x + 2.0 * a2) * x + a1
    }

    pub fn curvature_at(&self, x: f64) -> f64 {
        6.0 * self.coeffs[0] * x + 2.0 * self.coeffs[1]
    }

    pub fn derivative(&self) -> CubicPiece {
        let [a3, a2, a1, _] = self.coeffs;
        CubicPiece {
            lo: self.lo,
            hi: self.hi,
            coeffs: [0.0, 3.0 * a3, 2.0 * a2, a1],
        }
    }

    pub fn poly(&self) -> Poly {
        let [a3, a2, a1, a0] = self.coeffs;
        Poly::new([a0, a1, a2, a3])
    }

    /// Same function expressed in `t = x - origin`; the interval moves with it.
    pub fn shifted(&self, origin: f64) -> CubicPiece {
        let [a3, a2, a1, _] = self.coeffs;
        let o = origin;
        CubicPiece {
            lo: self.lo - o,
            hi: self.hi - o,
            coeffs: [a3, a2 + 3.0 * a3 * o, a1 + 2.0 * a2 * o + 3.0 * a3 * o * o, self.at(o)],
        }
    }

    /// `x -> p(-x)` on `[-hi, -lo]`.
    pub fn reflect(&self) -> CubicPiece {
        let [a3, a2, a1, a0] = self.coeffs;
        CubicPiece {
            lo: -self.hi,
            hi: -self.lo,
            coeffs: [-a3, a2, -a1, a0],
        }
    }

    pub fn with_interval(&self, lo: f64, hi: f64) -> CubicPiece {
        CubicPiece { lo, hi, ..*self }
    }
}

/// Ordered knots `x0 < ... < x_{n+1}` with one cubic per knot interval.
///
/// Construction checks only structure. Value and derivative continuity are
/// checked separately ([`PiecewiseCubic::check_continuity`],
/// [`PiecewiseCubic::derivative_jumps`]) because derivative functions built
/// from a majorant may legitimately jump.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCubic {
    knots: Vec<f64>,
    pieces: Vec<CubicPiece>,
}

impl PiecewiseCubic {
    pub fn new(knots: Vec<f64>, coeffs: Vec<[f64; 4]>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(LcmError::Input("knots: need at least two knots".into()));
        }
        if coeffs.len() + 1 != knots.len() {
            return Err(LcmError::Input(format!(
                "pieces: expected {} pieces for {} knots, got {}",
                knots.len() - 1,
                knots.len(),
                coeffs.len()
            )));
        }
        if let Some(i) = knots.iter().position(|k| !k.is_finite()) {
            return Err(LcmError::Input(format!("knots[{i}] is not finite")));
        }
        if let Some(i) = knots.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(LcmError::Input(format!(
                "knots: not strictly increasing at index {}",
                i + 1
            )));
        }
        let pieces = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                CubicPiece::new(knots[k], knots[k + 1], c)
                    .map_err(|_| LcmError::Input(format!("pieces[{k}] has non-finite coefficients")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseCubic { knots, pieces })
    }

    pub fn from_pieces(pieces: Vec<CubicPiece>) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(LcmError::Input("pieces: empty".into()));
        };
        let mut knots = vec![first.lo];
        knots.extend(pieces.iter().map(|p| p.hi));
        Self::new(knots, pieces.iter().map(|p| p.coeffs).collect())
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn pieces(&self) -> &[CubicPiece] {
        &self.pieces
    }

    pub fn piece(&self, k: usize) -> &CubicPiece {
        &self.pieces[k]
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    /// Index of the piece covering `x`; knots resolve to the left piece except `x0`.
    /// Values outside the domain map to the nearest end piece.
    pub fn piece_index(&self, x: f64) -> usize {
        let n = self.pieces.len();
        // first k with knots[k + 1] >= x
        self.knots[1..].partition_point(|&k| k < x).min(n - 1)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi || x.is_nan() {
            return Err(LcmError::Domain { x, lo, hi });
        }
        Ok(self.value(x))
    }

    /// Value without a domain check (end pieces extend outward).
    pub fn value(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].at(x)
    }

    pub fn slope(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].slope_at(x)
    }

    pub fn curvature(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].curvature_at(x)
    }

    /// Left derivative at `x` (right derivative at the left domain end).
    pub fn slope_left(&self, x: f64) -> f64 {
        self.slope(x)
    }

    /// Right derivative at `x` (left derivative at the right domain end).
    pub fn slope_right(&self, x: f64) -> f64 {
        let n = self.pieces.len();
        let k = self.knots[1..].partition_point(|&k| k <= x).min(n - 1);
        self.pieces[k].slope_at(x)
    }

    /// Piecewise derivative; the result may jump where `self` has kinks.
    pub fn derivative(&self) -> PiecewiseCubic {
        PiecewiseCubic {
            knots: self.knots.clone(),
            pieces: self.pieces.iter().map(CubicPiece::derivative).collect(),
        }
    }

    /// `G(x) = F(-x)` on `[-b, -a]`.
    pub fn reflect(&self) -> PiecewiseCubic {
        PiecewiseCubic {
            knots: self.knots.iter().rev().map(|k| -k).collect(),
            pieces: self.pieces.iter().rev().map(CubicPiece::reflect).collect(),
        }
    }

    /// Fails on the first interior knot where adjacent pieces disagree in value
    /// by more than `1e-7 * tol_scale * (1 + |F|)`.
    pub fn check_continuity(&self, tol_scale: f64) -> Result<()> {
        for (i, w) in self.pieces.windows(2).enumerate() {
            let x = self.knots[i + 1];
            let (l, r) = (w[0].at(x), w[1].at(x));
            let jump = (l - r).abs();
            if jump > 1e-7 * tol_scale * (1.0 + l.abs().max(r.abs())) || jump.is_nan() {
                return Err(LcmError::Discontinuous { index: i + 1, x, jump });
            }
        }
        Ok(())
    }

    /// Interior knots (index, x, jump) where the first derivative jumps by
    /// more than `1e-7 * tol_scale * (1 + |F'|)`.
    pub fn derivative_jumps(&self, tol_scale: f64) -> Vec<(usize, f64, f64)> {
        self.pieces
            .windows(2)
            .enumerate()
            .filter_map(|(i, w)| {
                let x = self.knots[i + 1];
                let (l, r) = (w[0].slope_at(x), w[1].slope_at(x));
                let jump = (l - r).abs();
                (jump > 1e-7 * tol_scale * (1.0 + l.abs().max(r.abs()))).then_some((i + 1, x, jump))
            })
            .collect()
    }

    /// Largest |F''| over the domain (F'' is affine on each piece).
    pub fn max_abs_curvature(&self) -> f64 {
        self.pieces
            .iter()
            .flat_map(|p| [p.curvature_at(p.lo).abs(), p.curvature_at(p.hi).abs()])
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> PiecewiseJson {
        PiecewiseJson {
            knots: self.knots.clone(),
            pieces: self.pieces.iter().map(|p| p.coeffs.to_vec()).collect(),
        }
    }
}

/// Wire form: `{"knots": [x0, ...], "pieces": [[a3, a2, a1, a0], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseJson {
    pub knots: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
}

impl TryFrom<PiecewiseJson> for PiecewiseCubic {
    type Error = LcmError;

    fn try_from(raw: PiecewiseJson) -> Result<Self> {
        let coeffs = raw
            .pieces
            .iter()
            .enumerate()
            .map(|(k, c)| {
                <[f64; 4]>::try_from(c.as_slice())
                    .map_err(|_| LcmError::Input(format!("pieces[{k}]: expected 4 coefficients, got {}", c.len())))
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewiseCubic::new(raw.knots, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1() -> CubicPiece {
        CubicPiece::new(0.0, 1.0, [-1.1, 1.1, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn eval_example_piece() {
        assert!((s1().eval(1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((s1().eval(0.5).unwrap() - 1.6375).abs() < 1e-15);
        let zero = CubicPiece::new(-3.0, 3.0, [0.0; 4]).unwrap();
        assert_eq!(zero.eval(1.7).unwrap(), 0.0);
        assert!(matches!(s1().eval(1.5), Err(LcmError::Domain { .. })));
    }

    #[test]
    fn derivative_coefficients() {
        assert_eq!(s1().derivative().coeffs, [0.0, -3.3000000000000003, 2.2, 1.0]);
        let c = CubicPiece::new(0.0, 1.0, [0.0, 0.0, 0.0, 4.0]).unwrap();
        assert_eq!(c.derivative().coeffs, [0.0; 4]);
        let cube = CubicPiece::new(0.0, 1.0, [1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(cube.derivative().coeffs, [0.0, 3.0, 0.0, 0.0]);
    }

    #[test]
    fn knot_resolves_left() {
        let pw = PiecewiseCubic::new(vec![0.0, 1.0, 2.0], vec![[0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 1.0, 0.0]]).unwrap();
        assert_eq!(pw.piece_index(0.0), 0);
        assert_eq!(pw.piece_index(1.0), 0);
        assert_eq!(pw.piece_index(1.0 + 1e-12), 1);
        assert_eq!(pw.piece_index(2.0), 1);
        assert_eq!(pw.eval(1.0).unwrap(), 1.0);
        assert!(pw.eval(2.5).is_err());
        assert!(pw.eval(-0.1).is_err());
    }

    #[test]
    fn reflect_cube() {
        let pw = PiecewiseCubic::new(vec![0.0, 1.0], vec![[1.0, 0.0, 0.0, 0.0]]).unwrap();
        let g = pw.reflect();
        assert_eq!(g.knots(), &[-1.0, -0.0]);
        assert_eq!(g.piece(0).coeffs, [-1.0, 0.0, -0.0, 0.0]);
    }

    #[test]
    fn reflect_flips_monotonicity_keeps_concavity() {
        // -(x-2)^2 on [0,1]: increasing and concave
        let p = CubicPiece::new(0.0, 1.0, [0.0, -1.0, 4.0, -4.0]).unwrap();
        let r = p.reflect();
        for t in [0.1, 0.5, 0.9] {
            assert!(p.slope_at(t) > 0.0 && p.curvature_at(t) < 0.0);
            assert!(r.slope_at(-t) < 0.0 && r.curvature_at(-t) < 0.0);
        }
    }

    #[test]
    fn shifted_and_local_round_trip() {
        let p = CubicPiece::new(2.0, 3.0, [-0.9, 6.0, -12.2, 9.4]).unwrap();
        let s = p.shifted(2.5);
        for x in [2.0, 2.3, 3.0] {
            assert!((s.at(x - 2.5) - p.at(x)).abs() < 1e-12);
        }
        let back = CubicPiece::from_local(2.0, 3.0, 2.5, s.coeffs);
        for (a, b) in back.coeffs.iter().zip(p.coeffs) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn json_errors_name_the_field() {
        let raw: PiecewiseJson = serde_json::from_str(r#"{"knots":[0,1,2],"pieces":[[1,2,3,4],[1,2,3]]}"#).unwrap();
        let err = PiecewiseCubic::try_from(raw).unwrap_err();
        assert!(err.to_string().contains("pieces[1]"), "{err}");
        let raw: PiecewiseJson = serde_json::from_str(r#"{"knots":[0,2,1],"pieces":[[0,0,0,0],[0,0,0,0]]}"#).unwrap();
        assert!(PiecewiseCubic::try_from(raw).unwrap_err().to_string().contains("knots"));
    }

    #[test]
    fn continuity_check_reports_knot() {
        let pw = PiecewiseCubic::new(vec![0.0, 1.0, 2.0], vec![[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 1.0, 0.5]]).unwrap();
        match pw.check_continuity(1.0) {
            Err(LcmError::Discontinuous { index, x, .. }) => {
                assert_eq!(index, 1);
                assert_eq!(x, 1.0);
            }
            other => panic!("{other:?}"),
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn piece() -> impl Strategy<Value = CubicPiece> {
            (-5.0f64..5.0, 0.1f64..3.0, proptest::array::uniform4(-4.0f64..4.0))
                .prop_map(|(lo, w, c)| CubicPiece::new(lo, lo + w, c).unwrap())
        }

        proptest! {
            #[test]
            fn derivative_matches_central_difference(p in piece(), t in 0.0f64..1.0) {
                let x = p.lo + t * (p.hi - p.lo);
                let h = 1e-6;
                let fd = (p.at(x + h) - p.at(x - h)) / (2.0 * h);
                let d = p.derivative().at(x);
                prop_assert!((fd - d).abs() <= 1e-5 * (1.0 + d.abs()));
            }

            #[test]
            fn reflect_is_an_involution(p in piece(), t in 0.0f64..1.0) {
                let pw = PiecewiseCubic::from_pieces(vec![p]).unwrap();
                let g = pw.reflect();
                let x = p.lo + t * (p.hi - p.lo);
                let (fx, gx) = (pw.value(x), g.value(-x));
                prop_assert!((fx - gx).abs() <= 1e-12 * (1.0 + fx.abs()));
                prop_assert_eq!(g.reflect(), pw);
            }
        }
    }
}
