//! Numeric tolerances shared by every stage of the majorant computation.
//!
//! All thresholds are relative to the magnitudes named at each accessor and are
//! multiplied by a single global `scale` (the CLI reads it from `LCM_TOL_SCALE`).

/// Tolerance set. `Tolerances::default()` is the configuration the tests pin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub scale: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { scale: 1.0 }
    }
}

impl Tolerances {
    pub fn scaled(scale: f64) -> Self {
        Tolerances { scale }
    }

    /// Reads `LCM_TOL_SCALE`; unset or unparsable values fall back to 1.
    pub fn from_env() -> Self {
        let scale = std::env::var("LCM_TOL_SCALE")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|s| s.is_finite() && *s > 0.0)
            .unwrap_or(1.0);
        Tolerances { scale }
    }

    /// Relative step used to polish roots: |dx| <= root * (1 + |x|).
    pub fn root(&self) -> f64 {
        1e-12 * self.scale
    }

    /// Continuity / differentiability check at knots.
    pub fn cont(&self, local: f64) -> f64 {
        1e-7 * self.scale * (1.0 + local.abs())
    }

    /// Membership in the maximum set.
    pub fn max(&self, m: f64) -> f64 {
        1e-9 * self.scale * (1.0 + m.abs())
    }

    /// Relative threshold under which a cell's curvature counts as linear.
    pub fn linear(&self) -> f64 {
        1e-12 * self.scale
    }

    /// Tangency residual for a candidate bridge.
    pub fn tan(&self, slope: f64, len: f64) -> f64 {
        1e-8 * self.scale * (1.0 + slope.abs()) * (1.0 + len.abs())
    }

    /// Strictness margin: chord minus function must exceed this at checked points.
    pub fn gap(&self, m: f64) -> f64 {
        1e-10 * self.scale * (1.0 + m.abs())
    }

    /// Two abscissae closer than this are treated as the same point.
    pub fn same_point(&self, x: f64) -> f64 {
        1e-12 * self.scale * (1.0 + x.abs())
    }
}
