//! Bridge candidates between concave-increasing cells and their verification.
//!
//! For two cubic pieces `P_L = A x^3 + B x^2 + C x + D` and
//! `P_R = W x^3 + X x^2 + Y x + Z`, a common tangent with slope `y` touches
//! `P_L` at `a(y)` and `P_R` at `b(y)` where `P_L'(a) = P_R'(b) = y`. On the
//! branch `s = 3 A a + B = ±sqrt(gamma)`,
//!
//! ```text
//! P_L(a) - y a = q_L(y) + mu_L(y) s,   gamma = 3 A y + B^2 - 3 A C,
//! q_L = D + 2 B^3 / (27 A^2) - B C / (3 A) + B y / (3 A),
//! mu_L = -2 gamma / (27 A^2),
//! ```
//!
//! and likewise for `P_R` with `delta`. The chord condition
//! `P_R(b) - y b = P_L(a) - y a` therefore reads
//! `mu1 + mu2 sqrt(gamma) + mu3 sqrt(delta) = 0` up to branch signs, and
//! squaring twice gives the sextic
//! `(mu1^2 - mu2^2 gamma - mu3^2 delta)^2 - 4 mu2^2 mu3^2 gamma delta = 0`.
//! Its roots include every branch combination, so each root is polished on the
//! unsquared equation and kept only if the residual vanishes.

use serde::Serialize;

use crate::error::{LcmError, Result};
use crate::partition::{Curvature, Member, RefinedPartition};
use crate::piecewise::{CubicPiece, PiecewiseCubic};
use crate::poly::{real_roots_in, Poly};
use crate::tol::Tolerances;

/// How a bridge endpoint is pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndKind {
    /// Tangent to the given source piece.
    Tangent { piece: usize },
    /// A fixed point (domain end or plateau end); no tangency required.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BridgeCandidate {
    pub alpha: f64,
    pub beta: f64,
    pub slope: f64,
    pub left: EndKind,
    pub right: EndKind,
}

impl BridgeCandidate {
    /// The chord `l(x) = F(alpha) + slope (x - alpha)`.
    pub fn chord_at(&self, pw: &PiecewiseCubic, x: f64) -> f64 {
        self.left_value(pw) + self.slope * (x - self.alpha)
    }

    fn left_value(&self, pw: &PiecewiseCubic) -> f64 {
        match self.left {
            EndKind::Tangent { piece } => pw.piece(piece).at(self.alpha),
            EndKind::Fixed => pw.value(self.alpha),
        }
    }
}

/// Which end of the bridge the fixed point occupies in [`tangency_direct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedSide {
    Left,
    Right,
}

/// Derivative range `[F'(hi), F'(lo)]` of a strictly concave stretch.
pub fn slope_range(piece: &CubicPiece, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let mid = 0.5 * (lo + hi);
    if !(piece.curvature_at(mid) < 0.0) {
        return Err(LcmError::Contract(format!(
            "slope_range on [{lo}, {hi}] which is not strictly concave"
        )));
    }
    Ok((piece.slope_at(hi), piece.slope_at(lo)))
}

/// Symbolic tangency data for a pair of genuinely cubic pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct SexticContext {
    /// `[A, B, C, D]`
    pub left: [f64; 4],
    /// `[W, X, Y, Z]`
    pub right: [f64; 4],
    pub gamma: Poly,
    pub delta: Poly,
    pub mu1: Poly,
    /// `-2 gamma / (27 A^2)`
    pub mu2: Poly,
    /// `2 delta / (27 W^2)`
    pub mu3: Poly,
    pub sextic: Poly,
    /// Admissible slopes `P_L'(L) ∩ P_R'(R)`, `None` when empty.
    pub slopes: Option<(f64, f64)>,
}

/// Builds the sextic for `pl` (on its interval `L`) and `pr` (on `R`), using the
/// coefficients exactly as stored. Fails when `A W = 0`.
pub fn build_sextic(pl: &CubicPiece, pr: &CubicPiece) -> Result<SexticContext> {
    let [a, b, c, d] = pl.coeffs;
    let [w, x, y, z] = pr.coeffs;
    if a == 0.0 || w == 0.0 {
        return Err(LcmError::Contract("degenerate leading coefficient (A W = 0)".into()));
    }
    let gamma = Poly::linear(b * b - 3.0 * a * c, 3.0 * a);
    let delta = Poly::linear(x * x - 3.0 * w * y, 3.0 * w);
    let mu1 = Poly::linear(
        (z + 2.0 * x * x * x / (27.0 * w * w) - y * x / (3.0 * w))
            - (d + 2.0 * b * b * b / (27.0 * a * a) - b * c / (3.0 * a)),
        (x / w - b / a) / 3.0,
    );
    let mu2 = gamma.scale(-2.0 / (27.0 * a * a));
    let mu3 = delta.scale(2.0 / (27.0 * w * w));
    let sextic = sextic_from(&mu1, &mu2, &mu3, &gamma, &delta);
    let slopes = intersect(
        (
            pl.slope_at(pl.hi).min(pl.slope_at(pl.lo)),
            pl.slope_at(pl.lo).max(pl.slope_at(pl.hi)),
        ),
        (
            pr.slope_at(pr.hi).min(pr.slope_at(pr.lo)),
            pr.slope_at(pr.lo).max(pr.slope_at(pr.hi)),
        ),
    );
    Ok(SexticContext {
        left: pl.coeffs,
        right: pr.coeffs,
        gamma,
        delta,
        mu1,
        mu2,
        mu3,
        sextic,
        slopes,
    })
}

fn sextic_from(mu1: &Poly, mu2: &Poly, mu3: &Poly, gamma: &Poly, delta: &Poly) -> Poly {
    let m2g = &mu2.square() * gamma;
    let m3d = &mu3.square() * delta;
    let inner = &(&mu1.square() - &m2g) - &m3d;
    &inner.square() - &(&m2g * &m3d).scale(4.0)
}

fn intersect(p: (f64, f64), q: (f64, f64)) -> Option<(f64, f64)> {
    let (lo, hi) = (p.0.max(q.0), p.1.min(q.1));
    (lo <= hi).then_some((lo, hi))
}

/// `x -> P(x) - y x` at a tangency point, as a function of the slope `y`.
enum Side {
    /// `q + mu s` with `s = ±sqrt(gamma)`.
    Cubic { q: Poly, mu: Poly, gamma: Poly },
    /// Single preimage; `q` is exact for quadratics, a local model otherwise.
    Quadratic { q: Poly },
}

impl Side {
    /// `piece` is in the shifted frame; `(lo, hi)` is the cell in that frame.
    fn new(piece: &CubicPiece, lo: f64, hi: f64) -> Side {
        let [a, b, c, d] = piece.coeffs;
        let w = (hi - lo).max(f64::MIN_POSITIVE);
        let center = 0.5 * (lo + hi);
        let inflection_far = a == 0.0 || (piece.curvature_at(center) / (6.0 * a)).abs() > 4.0 * w;
        if !inflection_far {
            let gamma = Poly::linear(b * b - 3.0 * a * c, 3.0 * a);
            let q = Poly::linear(d + 2.0 * b * b * b / (27.0 * a * a) - b * c / (3.0 * a), b / (3.0 * a));
            let mu = gamma.scale(-2.0 / (27.0 * a * a));
            return Side::Cubic { q, mu, gamma };
        }
        // quadratic Taylor model at the cell center
        let (f0, f1, f2) = (piece.at(center), piece.slope_at(center), piece.curvature_at(center));
        // a(y) = center + (y - f1) / f2
        let pre = Poly::linear(center - f1 / f2, 1.0 / f2);
        let dx = &pre - &Poly::constant(center);
        let model = &(&Poly::constant(f0) + &dx.scale(f1)) + &dx.square().scale(0.5 * f2);
        let q = &model - &(&Poly::linear(0.0, 1.0) * &pre);
        Side::Quadratic { q }
    }

    fn is_model(&self) -> bool {
        matches!(self, Side::Quadratic { .. })
    }
}

/// Polynomial in `y` vanishing at every common-tangent slope of the two sides.
fn tangency_polynomial(left: &Side, right: &Side) -> Poly {
    match (left, right) {
        (
            Side::Cubic { q: ql, mu: ml, gamma },
            Side::Cubic {
                q: qr,
                mu: mr,
                gamma: delta,
            },
        ) => {
            let mu1 = qr - ql;
            sextic_from(&mu1, ml, mr, gamma, delta)
        }
        (
            Side::Quadratic { q: ql },
            Side::Cubic {
                q: qr,
                mu,
                gamma: delta,
            },
        ) => {
            let mu1 = qr - ql;
            &mu1.square() - &(&mu.square() * delta)
        }
        (Side::Cubic { q: ql, mu, gamma }, Side::Quadratic { q: qr }) => {
            let mu1 = qr - ql;
            &mu1.square() - &(&mu.square() * gamma)
        }
        (Side::Quadratic { q: ql }, Side::Quadratic { q: qr }) => qr - ql,
    }
}

/// Real solutions of `piece'(x) = y`.
fn preimages(piece: &CubicPiece, y: f64) -> Vec<f64> {
    let [a3, a2, a1, _] = piece.coeffs;
    let (qa, qb, qc) = (3.0 * a3, 2.0 * a2, a1 - y);
    if qa == 0.0 {
        return if qb != 0.0 { vec![-qc / qb] } else { Vec::new() };
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        // tangential: accept the vertex when the miss is at rounding level
        let scale = qb * qb + (4.0 * qa * qc).abs();
        return if -disc <= 1e-12 * scale {
            vec![-qb / (2.0 * qa)]
        } else {
            Vec::new()
        };
    }
    let sq = disc.sqrt();
    let t = -0.5 * (qb + qb.signum() * sq + if qb == 0.0 { sq } else { 0.0 });
    if t == 0.0 {
        return vec![0.0];
    }
    vec![t / qa, qc / t]
}

fn nearest(xs: &[f64], to: f64) -> Option<f64> {
    xs.iter()
        .copied()
        .min_by(|a, b| (a - to).abs().total_cmp(&(b - to).abs()))
}

/// Newton on `phi(y) = (P_R(b) - y b) - (P_L(a) - y a)`, whose derivative is
/// `a - b`; the preimages follow their branch by continuity.
fn polish_pair(pl: &CubicPiece, pr: &CubicPiece, mut y: f64, mut a: f64, mut b: f64) -> (f64, f64, f64, f64) {
    let phi = |y: f64, a: f64, b: f64| (pr.at(b) - y * b) - (pl.at(a) - y * a);
    let mut f = phi(y, a, b);
    for _ in 0..12 {
        if b == a {
            break;
        }
        let y_next = y + f / (b - a);
        let (Some(an), Some(bn)) = (nearest(&preimages(pl, y_next), a), nearest(&preimages(pr, y_next), b)) else {
            break;
        };
        let fn_ = phi(y_next, an, bn);
        if !(fn_.abs() < f.abs()) {
            break;
        }
        let done = (y_next - y).abs() <= 1e-15 * (1.0 + y.abs());
        (y, a, b, f) = (y_next, an, bn, fn_);
        if done {
            break;
        }
    }
    (y, a, b, f)
}

fn within(x: f64, lo: f64, hi: f64, tol: &Tolerances) -> bool {
    x >= lo - 1e3 * tol.same_point(lo) && x <= hi + 1e3 * tol.same_point(hi)
}

/// Common-tangent candidates `(a, b)` with `a` on the piece of `left` and `b`
/// on the piece of `right`, for every slope root in `F'(L) ∩ F'(R)`.
///
/// Both preimage branches inside each source piece's interval are tried, so a
/// candidate endpoint may fall outside its cell (on the convex side of the
/// piece); such candidates never pass [`verify_bridge`].
pub fn candidate_bridges(pw: &PiecewiseCubic, left: &Member, right: &Member, tol: &Tolerances) -> Vec<BridgeCandidate> {
    let (gl, gr) = (pw.piece(left.piece), pw.piece(right.piece));
    let (Ok(jl), Ok(jr)) = (slope_range(gl, left.lo, left.hi), slope_range(gr, right.lo, right.hi)) else {
        return Vec::new();
    };
    let Some(j) = intersect(jl, jr) else {
        return Vec::new();
    };

    let origin = 0.5 * (left.lo + right.hi);
    let (pl, pr) = (gl.shifted(origin), gr.shifted(origin));
    let side_l = Side::new(&pl, left.lo - origin, left.hi - origin);
    let side_r = Side::new(&pr, right.lo - origin, right.hi - origin);
    let poly = tangency_polynomial(&side_l, &side_r);

    let width = (jl.1 - jl.0).max(jr.1 - jr.0);
    let margin = if side_l.is_model() || side_r.is_model() {
        0.25 * width
    } else {
        1e-9 * (1.0 + j.0.abs().max(j.1.abs()))
    } + 1e-12;
    let roots = real_roots_in(&poly, j.0 - margin, j.1 + margin, tol.root());
    let y_ok = |y: f64| y >= j.0 - 1e-9 * (1.0 + y.abs()) && y <= j.1 + 1e-9 * (1.0 + y.abs());

    let (pl_lo, pl_hi) = (pl.lo, pl.hi);
    let (pr_lo, pr_hi) = (pr.lo, pr.hi);
    let mut out: Vec<BridgeCandidate> = Vec::new();
    for y0 in roots {
        let seeds_a: Vec<f64> = preimages(&pl, y0);
        let seeds_b: Vec<f64> = preimages(&pr, y0);
        for &a0 in &seeds_a {
            for &b0 in &seeds_b {
                let (y, a, b, f) = polish_pair(&pl, &pr, y0, a0, b0);
                if !(a < b) || !y_ok(y) {
                    continue;
                }
                if !within(a + origin, pl_lo + origin, pl_hi + origin, tol)
                    || !within(b + origin, pr_lo + origin, pr_hi + origin, tol)
                {
                    continue;
                }
                let scale = 1.0 + pl.at(a).abs() + pr.at(b).abs();
                if f.abs() > tol.tan(y, b - a) * scale {
                    continue;
                }
                let cand = BridgeCandidate {
                    alpha: a + origin,
                    beta: b + origin,
                    slope: y,
                    left: EndKind::Tangent { piece: left.piece },
                    right: EndKind::Tangent { piece: right.piece },
                };
                push_unique(&mut out, cand);
            }
        }
    }
    out.sort_by(|p, q| p.beta.total_cmp(&q.beta).then(q.alpha.total_cmp(&p.alpha)));
    out
}

fn push_unique(out: &mut Vec<BridgeCandidate>, cand: BridgeCandidate) {
    let dup = out.iter().any(|c| {
        (c.alpha - cand.alpha).abs() <= 1e-9 * (1.0 + cand.alpha.abs())
            && (c.beta - cand.beta).abs() <= 1e-9 * (1.0 + cand.beta.abs())
    });
    if !dup {
        out.push(cand);
    }
}

/// Chords from the fixed point `(x0, f0)` tangent to `pw.piece(piece)`:
/// roots of `F'(t)(t - x0) - F(t) + f0` over the whole piece interval.
pub fn tangency_direct(
    pw: &PiecewiseCubic,
    x0: f64,
    f0: f64,
    piece: usize,
    side: FixedSide,
    tol: &Tolerances,
) -> Vec<BridgeCandidate> {
    let p = pw.piece(piece).shifted(x0);
    let [a, b, _, d] = p.coeffs;
    // 2A t^3 + B t^2 + (f0 - D) with t = x - x0
    let g = Poly::new([f0 - d, 0.0, b, 2.0 * a]);
    let mut out = Vec::new();
    for t in real_roots_in(&g, p.lo, p.hi, tol.root()) {
        if t.abs() <= 1e3 * tol.same_point(x0) {
            continue;
        }
        let x = t + x0;
        let slope = p.slope_at(t);
        let cand = match side {
            FixedSide::Left if x > x0 => BridgeCandidate {
                alpha: x0,
                beta: x,
                slope,
                left: EndKind::Fixed,
                right: EndKind::Tangent { piece },
            },
            FixedSide::Right if x < x0 => BridgeCandidate {
                alpha: x,
                beta: x0,
                slope,
                left: EndKind::Tangent { piece },
                right: EndKind::Fixed,
            },
            _ => continue,
        };
        push_unique(&mut out, cand);
    }
    out
}

/// True iff the chord lies strictly above `F` on `(alpha, beta)`.
///
/// Checked points are the ends and midpoint of every partition cell inside the
/// bridge and every critical point of `F - l` (roots of `F' = slope`). The run
/// of strictly concave cells around a tangency endpoint is skipped: `F'` is
/// strictly decreasing there and equals the slope at the endpoint, so `F - l`
/// peaks at zero. Points within `1e-9 (1 + |x|)` of either endpoint are
/// ignored; all others need `l - F > 1e-10 (1 + |level|)`.
pub fn verify_bridge(
    pw: &PiecewiseCubic,
    rp: &RefinedPartition,
    cand: &BridgeCandidate,
    level: f64,
    tol: &Tolerances,
) -> bool {
    let (alpha, beta) = (cand.alpha, cand.beta);
    if !(alpha < beta) {
        return false;
    }
    let gap = tol.gap(level);
    let excl =
        |x: f64| (x - alpha).abs() <= 1e3 * tol.same_point(alpha) || (x - beta).abs() <= 1e3 * tol.same_point(beta);
    let concave = |i: usize| rp.cells[i].curvature == Curvature::StrictlyConcave;
    let tangency_run = |x: f64, end: EndKind| {
        let EndKind::Tangent { piece } = end else {
            return None;
        };
        let at = rp.cells.iter().enumerate().position(|(i, c)| {
            c.piece == piece && concave(i) && x >= c.lo - tol.same_point(c.lo) && x <= c.hi + tol.same_point(c.hi)
        })?;
        let (mut lo, mut hi) = (at, at);
        while lo > 0 && concave(lo - 1) {
            lo -= 1;
        }
        while hi + 1 < rp.cells.len() && concave(hi + 1) {
            hi += 1;
        }
        Some(lo..=hi)
    };
    let skip_l = tangency_run(alpha, cand.left);
    let skip_r = tangency_run(beta, cand.right);
    if let (Some(l), Some(r)) = (&skip_l, &skip_r) {
        if l == r {
            return false;
        }
    }
    let skipped =
        |i: usize| skip_l.as_ref().is_some_and(|r| r.contains(&i)) || skip_r.as_ref().is_some_and(|r| r.contains(&i));

    let l0 = cand.chord_at(pw, alpha);
    let chord = |x: f64| l0 + cand.slope * (x - alpha);
    for (i, c) in rp.cells.iter().enumerate() {
        if c.hi <= alpha || c.lo >= beta || skipped(i) {
            continue;
        }
        let p = pw.piece(c.piece);
        let (u, v) = (c.lo.max(alpha), c.hi.min(beta));
        let mut pts = vec![u, 0.5 * (u + v), v];
        let dp = &p.derivative().poly() - &Poly::constant(cand.slope);
        pts.extend(real_roots_in(&dp, u, v, tol.root()));
        for x in pts {
            if excl(x) {
                continue;
            }
            if !(chord(x) - p.at(x) > gap) {
                return false;
            }
        }
    }
    true
}

/// Context for the pruning tests of one `(L, R)` pair.
#[derive(Debug, Clone, Copy)]
pub struct PruneContext {
    /// Rightmost maximizer of `F` on `[a, r1]`.
    pub rightmost_max_left_of_r: f64,
}

/// Rejects `L` (returns false) when no bridge can join it to `R`: disjoint
/// derivative ranges, no intervening linear or convex cell (same group), or
/// `L` lying entirely right of the maximizer of `F` on `[a, r1]`.
pub fn prune(pw: &PiecewiseCubic, left: &Member, right: &Member, ctx: &PruneContext, tol: &Tolerances) -> bool {
    let (Ok(jl), Ok(jr)) = (
        slope_range(pw.piece(left.piece), left.lo, left.hi),
        slope_range(pw.piece(right.piece), right.lo, right.hi),
    ) else {
        return false;
    };
    if intersect(jl, jr).is_none() {
        return false;
    }
    if left.group == right.group {
        return false;
    }
    let s = ctx.rightmost_max_left_of_r;
    left.lo <= s + tol.same_point(s)
}
