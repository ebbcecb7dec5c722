//! Dense real polynomials of small degree and real-root isolation.
//!
//! Roots are bracketed between consecutive critical points (found recursively
//! from the derivative), so every monotone stretch holds at most one simple
//! root. Even-multiplicity roots show up as critical points where `|p|` is
//! already below the acceptance threshold.

use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with coefficients in increasing order of degree.
///
/// The leading stored coefficient may be zero; nothing here assumes the
/// stored length equals the effective degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: impl IntoIterator<Item = f64>) -> Self {
        Poly {
            coeffs: coeffs.into_iter().collect(),
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// `c0 + c1 * x`
    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly { coeffs: vec![c0, c1] }
    }

    /// Coefficient of `x^i` at index `i`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    /// Degree ignoring exactly-zero leading coefficients; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn deriv(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    fn trimmed(&self) -> Poly {
        let n = self.degree().map_or(0, |d| d + 1);
        Poly {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Magnitude used for the root acceptance test:
    /// max |coefficient| times max(1, |lo|, |hi|)^degree.
    pub fn magnitude_on(&self, lo: f64, hi: f64) -> f64 {
        let deg = self.degree().unwrap_or(0);
        let cmax = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let r = 1.0_f64.max(lo.abs()).max(hi.abs());
        cmax * r.powi(deg as i32)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly {
            coeffs: (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly {
            coeffs: (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Sorted real roots of `p` in `[lo, hi]`.
///
/// Every sign-change root is found and polished to `|dx| <= tol_root * (1 + |x|)`.
/// Critical points and interval ends where `|p| <= tol_root * p.magnitude_on(lo, hi)`
/// are reported as (tangency) roots. Roots closer than `1e3 * tol_root * (1 + |x|)`
/// are merged. The zero polynomial yields an empty list.
pub fn real_roots_in(p: &Poly, lo: f64, hi: f64, tol_root: f64) -> Vec<f64> {
    let p = p.trimmed();
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 || !(lo <= hi) || !p.is_finite() {
        return Vec::new();
    }
    let thresh = tol_root * p.magnitude_on(lo, hi);

    let mut pts = vec![lo];
    if deg >= 2 {
        let dp = p.deriv();
        pts.extend(
            real_roots_in(&dp, lo, hi, tol_root)
                .into_iter()
                .filter(|&c| c > lo && c < hi),
        );
    }
    if hi > lo {
        pts.push(hi);
    }
    let vals: Vec<f64> = pts.iter().map(|&x| p.eval(x)).collect();

    let mut roots: Vec<(f64, f64)> = Vec::new();
    for (&x, &v) in pts.iter().zip(&vals) {
        if v.abs() <= thresh {
            roots.push((x, v.abs()));
        }
    }
    for i in 0..pts.len().saturating_sub(1) {
        let (fu, fv) = (vals[i], vals[i + 1]);
        if fu.abs() <= thresh || fv.abs() <= thresh {
            continue;
        }
        if (fu < 0.0) != (fv < 0.0) {
            let r = polish(&p, pts[i], pts[i + 1], fu, tol_root);
            roots.push((r, p.eval(r).abs()));
        }
    }

    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(roots.len());
    for (x, r) in roots {
        match merged.last_mut() {
            Some(last) if (x - last.0).abs() <= 1e3 * tol_root * (1.0 + x.abs()) => {
                if r < last.1 {
                    *last = (x, r);
                }
            }
            _ => merged.push((x, r)),
        }
    }
    merged.into_iter().map(|(x, _)| x).collect()
}

/// Safeguarded Newton inside a sign-change bracket.
fn polish(p: &Poly, mut u: f64, mut v: f64, fu: f64, tol_root: f64) -> f64 {
    let dp = p.deriv();
    let neg_at_u = fu < 0.0;
    let mut x = 0.5 * (u + v);
    for _ in 0..200 {
        let fx = p.eval(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == neg_at_u {
            u = x;
        } else {
            v = x;
        }
        let d = dp.eval(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        let next = if newton > u && newton < v {
            newton
        } else {
            0.5 * (u + v)
        };
        let step = (next - x).abs();
        x = next;
        if step <= tol_root * (1.0 + x.abs()) || (v - u) <= tol_root * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(roots: &[f64]) -> Poly {
        roots
            .iter()
            .fold(Poly::constant(1.0), |acc, &r| &acc * &Poly::linear(-r, 1.0))
    }

    #[test]
    fn quadratic_roots() {
        let p = Poly::new([-1.0, 0.0, 1.0]);
        let r = real_roots_in(&p, -2.0, 2.0, 1e-12);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_example_piece_root() {
        // s1'(x) = -3.3x^2 + 2.2x + 1
        let p = Poly::new([1.0, 2.2, -3.3]);
        let r = real_roots_in(&p, 0.0, 1.0, 1e-12);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.97687).abs() < 1e-5, "{r:?}");
    }

    #[test]
    fn double_root_reported_once() {
        let p = from_roots(&[0.2, 0.5, 0.5]);
        let r = real_roots_in(&p, 0.0, 1.0, 1e-12);
        assert_eq!(r.len(), 2, "{r:?}");
        assert!((r[0] - 0.2).abs() < 1e-10);
        assert!((r[1] - 0.5).abs() < 1e-7);
    }

    #[test]
    fn zero_and_constant_have_no_roots() {
        assert!(real_roots_in(&Poly::zero(), 0.0, 1.0, 1e-12).is_empty());
        assert!(real_roots_in(&Poly::new([0.0, 0.0]), 0.0, 1.0, 1e-12).is_empty());
        assert!(real_roots_in(&Poly::constant(2.0), 0.0, 1.0, 1e-12).is_empty());
    }

    #[test]
    fn leading_zero_coefficients_are_ignored() {
        let p = Poly::new([-0.25, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(real_roots_in(&p, 0.0, 1.0, 1e-12), vec![0.25]);
    }

    #[test]
    fn root_at_interval_end() {
        let p = Poly::linear(-1.0, 1.0);
        assert_eq!(real_roots_in(&p, 0.0, 1.0, 1e-12), vec![1.0]);
        assert!(real_roots_in(&p, 1.5, 2.0, 1e-12).is_empty());
    }

    #[test]
    fn arithmetic() {
        let a = Poly::new([1.0, 2.0]);
        let b = Poly::new([0.0, 1.0, 3.0]);
        assert_eq!((&a * &b).coeffs(), &[0.0, 1.0, 5.0, 6.0]);
        assert_eq!((&a - &b).coeffs(), &[1.0, 1.0, -3.0]);
        assert_eq!(b.deriv().coeffs(), &[1.0, 6.0]);
        assert_eq!(Poly::new([0.0, 1.0, 0.0]).degree(), Some(1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn factored_polynomials_recover_their_roots(
                raw in proptest::collection::vec(-1.0f64..1.0, 1..=6),
                lead in prop_oneof![0.5f64..3.0, -3.0f64..-0.5],
                doubled in any::<bool>(),
            ) {
                let mut roots = raw.clone();
                roots.sort_by(f64::total_cmp);
                roots.dedup_by(|a, b| (*a - *b).abs() < 1e-4);
                // one tangency root when requested and the degree budget allows
                let mut factors = roots.clone();
                if doubled && factors.len() < 6 {
                    factors.push(roots[0]);
                }
                let p = from_roots(&factors).scale(lead);
                let got = real_roots_in(&p, -1.5, 1.5, 1e-12);
                prop_assert_eq!(got.len(), roots.len(), "got {:?} want {:?}", got, roots);
                for (g, r) in got.iter().zip(&roots) {
                    prop_assert!((g - r).abs() < 1e-5, "got {:?} want {:?}", got, roots);
                }
            }
        }
    }
}
