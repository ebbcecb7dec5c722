//! The bridge march: component intervals of the least concave majorant,
//! the assembled majorant and its derivative (the level function).

use serde::Serialize;

use crate::bridge::{
    candidate_bridges, prune, tangency_direct, verify_bridge, BridgeCandidate, EndKind, FixedSide, PruneContext,
};
use crate::error::{LcmError, Result};
use crate::partition::{
    concave_increasing_set, global_max, group_by_convex_separators, refine, rightmost_maximizer, MaxStructure, Member,
    RefinedPartition,
};
use crate::piecewise::{CubicPiece, PiecewiseCubic};
use crate::tol::Tolerances;

/// Coordinates used by a trace event: the input's own, or the reflection
/// `x -> -x` used for the part right of the plateau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frame {
    Direct,
    Reflected,
}

/// One step of the march, emitted through the trace callback.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    Round {
        frame: Frame,
        round: usize,
        right: (f64, f64),
    },
    Pruned {
        frame: Frame,
        left: (f64, f64),
        right: (f64, f64),
    },
    Candidate {
        frame: Frame,
        right: (f64, f64),
        candidate: BridgeCandidate,
        verified: bool,
    },
    Accepted {
        frame: Frame,
        alpha: f64,
        beta: f64,
    },
    Discarded {
        frame: Frame,
        right: (f64, f64),
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajorantResult {
    pub components: Vec<(f64, f64)>,
    pub majorant: PiecewiseCubic,
    pub level: PiecewiseCubic,
    pub max_structure: MaxStructure,
}

/// Checks value continuity, and differentiability everywhere except at
/// maximizers (where a concave kink cannot affect the majorant).
pub fn validate(pw: &PiecewiseCubic, tol: &Tolerances) -> Result<MaxStructure> {
    pw.check_continuity(tol.scale)?;
    let ms = global_max(pw, tol);
    for (index, x, jump) in pw.derivative_jumps(tol.scale) {
        if !ms.contains(x, tol) {
            return Err(LcmError::NotDifferentiable { index, x, jump });
        }
    }
    Ok(ms)
}

/// Computes components, majorant and level function.
pub fn least_concave_majorant(pw: &PiecewiseCubic, tol: &Tolerances) -> Result<MajorantResult> {
    least_concave_majorant_traced(pw, tol, &mut |_| {})
}

pub fn least_concave_majorant_traced(
    pw: &PiecewiseCubic,
    tol: &Tolerances,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Result<MajorantResult> {
    let max_structure = validate(pw, tol)?;
    let components = components_with(pw, &max_structure, tol, trace);
    let majorant = assemble_majorant(pw, &components, tol)?;
    let level = level_function(&majorant);
    Ok(MajorantResult {
        components,
        majorant,
        level,
        max_structure,
    })
}

/// Component intervals of the set where the majorant exceeds `F`, ascending.
pub fn components(pw: &PiecewiseCubic, tol: &Tolerances) -> Vec<(f64, f64)> {
    let ms = global_max(pw, tol);
    components_with(pw, &ms, tol, &mut |_| {})
}

fn components_with(
    pw: &PiecewiseCubic,
    ms: &MaxStructure,
    tol: &Tolerances,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Vec<(f64, f64)> {
    let (a, b) = pw.domain();
    let (c1, c2) = ms.plateau;
    let mut out = components_left(pw, (a, c1), Frame::Direct, tol, trace);

    // between maximizers F < M and the majorant is the constant M
    for w in ms.maximizers.windows(2) {
        out.push((w[0].1, w[1].0));
    }

    if c2 < b {
        let g = pw.reflect();
        for (alpha, beta) in components_left(&g, (-b, -c2), Frame::Reflected, tol, trace) {
            out.push((-beta, -alpha));
        }
    }
    out.sort_by(|p, q| p.0.total_cmp(&q.0));
    out
}

/// Runs the march on `working = [a, c1]`, where `F(c1)` is the maximum of `F`
/// over `working` and `a` is the left end of the domain.
///
/// Each round takes the rightmost remaining concave-increasing member `R`,
/// tries a chord from `(a, F(a))` tangent in `R`, then scans members `L` from
/// the left for a verified common tangent. A found bridge `(w1, w2)` removes
/// everything right of `w1`; otherwise `R` is dropped. When `F` still rises
/// into `c1` (so `c1 = b`, or a kink at the maximum), `c1` itself acts as a
/// fixed right end before any member is tried.
pub fn components_left(
    pw: &PiecewiseCubic,
    working: (f64, f64),
    frame: Frame,
    tol: &Tolerances,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Vec<(f64, f64)> {
    let (a, c1) = working;
    if !(c1 > a + tol.same_point(a)) {
        return Vec::new();
    }
    let rp = refine(pw, a, c1, tol);
    let cis = concave_increasing_set(&rp, tol);
    let mut members = group_by_convex_separators(&cis, &rp).members;
    let level = pw.value(c1);
    let fa = pw.value(a);

    let mut out = Vec::new();
    let mut round = 0usize;
    let mut endpoint = (pw.slope_left(c1) > 1e3 * tol.root() * (1.0 + level.abs())).then_some(c1);

    loop {
        let from_endpoint = endpoint.is_some();
        let found = if let Some(e) = endpoint.take() {
            trace(&TraceEvent::Round {
                frame,
                round,
                right: (e, e),
            });
            bridge_into_endpoint(pw, &rp, &members, a, e, level, frame, tol, trace)
        } else if let Some(&r) = members.last() {
            trace(&TraceEvent::Round {
                frame,
                round,
                right: (r.lo, r.hi),
            });
            bridge_into_member(pw, &rp, &members, a, fa, r, level, frame, tol, trace)
        } else {
            break;
        };
        round += 1;

        match found {
            Some(c) => {
                trace(&TraceEvent::Accepted {
                    frame,
                    alpha: c.alpha,
                    beta: c.beta,
                });
                out.push((c.alpha, c.beta));
                let w1 = c.alpha;
                members.retain(|m| m.lo < w1 - tol.same_point(w1));
                if let Some(last) = members.last_mut() {
                    last.hi = last.hi.min(w1);
                    if last.hi - last.lo <= tol.same_point(w1) {
                        members.pop();
                    }
                }
            }
            None if from_endpoint => {}
            None => {
                if let Some(r) = members.pop() {
                    trace(&TraceEvent::Discarded {
                        frame,
                        right: (r.lo, r.hi),
                    });
                }
            }
        }
    }
    out.sort_by(|p, q| p.0.total_cmp(&q.0));
    out
}

fn in_member(x: f64, m: &Member, tol: &Tolerances) -> bool {
    x >= m.lo - 1e3 * tol.same_point(m.lo) && x <= m.hi + 1e3 * tol.same_point(m.hi)
}

#[allow(clippy::too_many_arguments)]
fn check(
    pw: &PiecewiseCubic,
    rp: &RefinedPartition,
    cand: BridgeCandidate,
    right: (f64, f64),
    level: f64,
    frame: Frame,
    tol: &Tolerances,
    trace: &mut dyn FnMut(&TraceEvent),
) -> bool {
    let verified = verify_bridge(pw, rp, &cand, level, tol);
    trace(&TraceEvent::Candidate {
        frame,
        right,
        candidate: cand,
        verified,
    });
    verified
}

/// Bridges ending at the fixed point `e`: the chord from `a` first, then
/// tangents from `e` into each member, leftmost first.
#[allow(clippy::too_many_arguments)]
fn bridge_into_endpoint(
    pw: &PiecewiseCubic,
    rp: &RefinedPartition,
    members: &[Member],
    a: f64,
    e: f64,
    level: f64,
    frame: Frame,
    tol: &Tolerances,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Option<BridgeCandidate> {
    let (fa, fe) = (pw.value(a), pw.value(e));
    let chord = BridgeCandidate {
        alpha: a,
        beta: e,
        slope: (fe - fa) / (e - a),
        left: EndKind::Fixed,
        right: EndKind::Fixed,
    };
    if check(pw, rp, chord, (e, e), level, frame, tol, trace) {
        return Some(chord);
    }
    for l in members {
        let mut best: Option<BridgeCandidate> = None;
        for cand in tangency_direct(pw, e, fe, l.piece, FixedSide::Right, tol) {
            if !in_member(cand.alpha, l, tol) {
                continue;
            }
            if check(pw, rp, cand, (e, e), level, frame, tol, trace) && best.is_none_or(|b| cand.alpha < b.alpha) {
                best = Some(cand);
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn bridge_into_member(
    pw: &PiecewiseCubic,
    rp: &RefinedPartition,
    members: &[Member],
    a: f64,
    fa: f64,
    r: Member,
    level: f64,
    frame: Frame,
    tol: &Tolerances,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Option<BridgeCandidate> {
    let right = (r.lo, r.hi);
    let larger = |best: Option<BridgeCandidate>, c: BridgeCandidate| {
        best.is_none_or(|b| c.beta > b.beta || (c.beta == b.beta && c.alpha < b.alpha))
    };

    if r.lo > a + 1e3 * tol.same_point(a) {
        let mut best = None;
        for cand in tangency_direct(pw, a, fa, r.piece, FixedSide::Left, tol) {
            if in_member(cand.beta, &r, tol)
                && check(pw, rp, cand, right, level, frame, tol, trace)
                && larger(best, cand)
            {
                best = Some(cand);
            }
        }
        if best.is_some() {
            return best;
        }
    }

    let ctx = PruneContext {
        rightmost_max_left_of_r: rightmost_maximizer(pw, rp, r.lo, tol),
    };
    for l in &members[..members.len() - 1] {
        if !prune(pw, l, &r, &ctx, tol) {
            trace(&TraceEvent::Pruned {
                frame,
                left: (l.lo, l.hi),
                right,
            });
            continue;
        }
        let mut best = None;
        for cand in candidate_bridges(pw, l, &r, tol) {
            if in_member(cand.alpha, l, tol)
                && in_member(cand.beta, &r, tol)
                && check(pw, rp, cand, right, level, frame, tol, trace)
                && larger(best, cand)
            {
                best = Some(cand);
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Replaces `F` by its chord over each component. Knots are the original
/// knots together with the component endpoints.
pub fn assemble_majorant(pw: &PiecewiseCubic, components: &[(f64, f64)], tol: &Tolerances) -> Result<PiecewiseCubic> {
    for w in components.windows(2) {
        if w[1].0 < w[0].1 - tol.same_point(w[0].1) {
            return Err(LcmError::Contract(format!(
                "overlapping components ({}, {}) and ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    let (a, b) = pw.domain();
    if let Some(&(lo, hi)) = components.iter().find(|c| !(c.0 < c.1) || c.0 < a || c.1 > b) {
        return Err(LcmError::Contract(format!(
            "component ({lo}, {hi}) is not a subinterval of [{a}, {b}]"
        )));
    }

    let mut cuts: Vec<f64> = pw.knots().to_vec();
    cuts.extend(components.iter().flat_map(|&(lo, hi)| [lo, hi]));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= tol.same_point(*y));

    let chords: Vec<(f64, f64, f64, f64)> = components
        .iter()
        .map(|&(lo, hi)| {
            let (flo, fhi) = (pw.value(lo), pw.value(hi));
            let slope = (fhi - flo) / (hi - lo);
            (lo, hi, slope, flo - slope * lo)
        })
        .collect();

    let mut pieces = Vec::with_capacity(cuts.len());
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let mid = 0.5 * (u + v);
        let piece = match chords.iter().find(|c| c.0 < mid && mid < c.1) {
            Some(&(_, _, slope, icpt)) => CubicPiece::new(u, v, [0.0, 0.0, slope, icpt])?,
            None => pw.piece(pw.piece_index(mid)).with_interval(u, v),
        };
        pieces.push(piece);
    }
    PiecewiseCubic::from_pieces(pieces)
}

/// Derivative of the assembled majorant.
pub fn level_function(majorant: &PiecewiseCubic) -> PiecewiseCubic {
    majorant.derivative()
}
