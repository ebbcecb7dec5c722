//! Maximum set, refined partition and the concave-increasing cells.
//!
//! A refined partition cuts a working interval at knots and at every root of
//! `F'` and `F''`, so each cell has one monotonicity class and one curvature
//! class. Only cells that are strictly concave and increasing can hold a
//! tangency endpoint of a component on the rising side.

use serde::Serialize;

use crate::piecewise::PiecewiseCubic;
use crate::poly::real_roots_in;
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Curvature {
    StrictlyConcave,
    Linear,
    StrictlyConvex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
    /// Index of the source piece in the partitioned function.
    pub piece: usize,
    pub monotonicity: Monotonicity,
    pub curvature: Curvature,
}

impl Cell {
    pub fn is_concave_increasing(&self) -> bool {
        self.curvature == Curvature::StrictlyConcave && self.monotonicity == Monotonicity::Increasing
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinedPartition {
    pub lo: f64,
    pub hi: f64,
    pub cells: Vec<Cell>,
}

/// A strictly concave, increasing stretch of one source piece.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Member {
    pub lo: f64,
    pub hi: f64,
    pub piece: usize,
    /// Members sharing a group are not separated by any linear or convex cell.
    pub group: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ConcaveIncreasingSet {
    pub members: Vec<Member>,
}

/// Where `F` attains its global maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxStructure {
    pub max_value: f64,
    /// Disjoint closed sets in increasing order; points have `lo == hi`.
    pub maximizers: Vec<(f64, f64)>,
    /// Smallest closed interval containing every maximizer.
    pub plateau: (f64, f64),
}

impl MaxStructure {
    pub fn c1(&self) -> f64 {
        self.plateau.0
    }

    pub fn c2(&self) -> f64 {
        self.plateau.1
    }

    pub fn contains(&self, x: f64, tol: &Tolerances) -> bool {
        self.maximizers
            .iter()
            .any(|&(lo, hi)| x >= lo - tol.same_point(lo) && x <= hi + tol.same_point(hi))
    }
}

/// Splits `[lo, hi]` at knots, critical points and inflection points and
/// classifies every cell. Zero-length cells are dropped; an empty or
/// degenerate working interval gives no cells.
pub fn refine(pw: &PiecewiseCubic, lo: f64, hi: f64, tol: &Tolerances) -> RefinedPartition {
    let mut cells = Vec::new();
    if !(lo < hi) {
        return RefinedPartition { lo, hi, cells };
    }
    let mut cuts = vec![lo, hi];
    for piece in pw.pieces() {
        let (u, v) = (piece.lo.max(lo), piece.hi.min(hi));
        if u > v {
            continue;
        }
        if u > lo {
            cuts.push(u);
        }
        let d1 = piece.derivative().poly();
        let d2 = d1.deriv();
        cuts.extend(real_roots_in(&d1, u, v, tol.root()));
        cuts.extend(real_roots_in(&d2, u, v, tol.root()));
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| (*b - *a).abs() <= tol.same_point(*a));

    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v - u <= tol.same_point(u) {
            continue;
        }
        let mid = 0.5 * (u + v);
        let k = pw.piece_index(mid);
        let (monotonicity, curvature) = classify(pw, k, u, v, tol);
        cells.push(Cell {
            lo: u,
            hi: v,
            piece: k,
            monotonicity,
            curvature,
        });
    }
    RefinedPartition { lo, hi, cells }
}

fn classify(pw: &PiecewiseCubic, k: usize, u: f64, v: f64, tol: &Tolerances) -> (Monotonicity, Curvature) {
    let p = pw.piece(k);
    let (m, w) = (0.5 * (u + v), v - u);
    let (f, d1, d2) = (p.at(m), p.slope_at(m), p.curvature_at(m));
    let d3 = 6.0 * p.coeffs[0];
    let local = 1.0 + f.abs() + d1.abs() * w;
    let lin = tol.linear() * local;

    let curvature = if d2.abs() * w * w + d3.abs() * w * w * w <= lin {
        Curvature::Linear
    } else if d2 < 0.0 {
        Curvature::StrictlyConcave
    } else if d2 > 0.0 {
        Curvature::StrictlyConvex
    } else if p.curvature_at(0.5 * (m + v)) < 0.0 {
        Curvature::StrictlyConcave
    } else {
        Curvature::StrictlyConvex
    };

    let monotonicity = if d1.abs() * w + d2.abs() * w * w + d3.abs() * w * w * w <= lin {
        Monotonicity::Constant
    } else if d1 > 0.0 {
        Monotonicity::Increasing
    } else if d1 < 0.0 {
        Monotonicity::Decreasing
    } else if p.at(v) >= p.at(u) {
        Monotonicity::Increasing
    } else {
        Monotonicity::Decreasing
    };
    (monotonicity, curvature)
}

/// Cells that are strictly concave and increasing; adjacent cells of the
/// same source piece are merged. Groups are left at 0.
pub fn concave_increasing_set(rp: &RefinedPartition, tol: &Tolerances) -> ConcaveIncreasingSet {
    let mut members: Vec<Member> = Vec::new();
    for c in rp.cells.iter().filter(|c| c.is_concave_increasing()) {
        if let Some(last) = members.last_mut() {
            if last.piece == c.piece && (c.lo - last.hi).abs() <= tol.same_point(c.lo) {
                last.hi = c.hi;
                continue;
            }
        }
        members.push(Member {
            lo: c.lo,
            hi: c.hi,
            piece: c.piece,
            group: 0,
        });
    }
    ConcaveIncreasingSet { members }
}

/// Assigns group ids: the id advances at every linear or strictly convex cell,
/// so two members share an id iff no such cell lies between them.
pub fn group_by_convex_separators(cis: &ConcaveIncreasingSet, rp: &RefinedPartition) -> ConcaveIncreasingSet {
    let mut group = 0usize;
    let mut separators = Vec::with_capacity(rp.cells.len());
    for c in &rp.cells {
        if c.curvature != Curvature::StrictlyConcave {
            group += 1;
        }
        separators.push((c.lo, group));
    }
    let members = cis
        .members
        .iter()
        .map(|m| {
            // group of the cell where the member starts
            let idx = separators.partition_point(|&(lo, _)| lo <= m.lo).saturating_sub(1);
            Member {
                group: separators.get(idx).map_or(0, |s| s.1),
                ..*m
            }
        })
        .collect();
    ConcaveIncreasingSet { members }
}

/// Maximum value, maximum set and plateau `[c1, c2]` of `pw`.
pub fn global_max(pw: &PiecewiseCubic, tol: &Tolerances) -> MaxStructure {
    let (a, b) = pw.domain();
    let rp = refine(pw, a, b, tol);
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(rp.cells.len() + 1);
    for c in &rp.cells {
        if pts.is_empty() {
            pts.push((c.lo, pw.pieces()[c.piece].at(c.lo)));
        }
        pts.push((c.hi, pw.pieces()[c.piece].at(c.hi)));
    }
    if pts.is_empty() {
        pts.push((a, pw.value(a)));
    }
    let max_value = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let cut = max_value - tol.max(max_value);

    let mut sets: Vec<(f64, f64)> = pts.iter().filter(|p| p.1 >= cut).map(|p| (p.0, p.0)).collect();
    for c in &rp.cells {
        let p = pw.piece(c.piece);
        if p.at(c.lo) >= cut && p.at(c.hi) >= cut {
            sets.push((c.lo, c.hi));
        }
    }
    sets.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut maximizers: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in sets {
        match maximizers.last_mut() {
            Some(last) if lo <= last.1 + tol.same_point(last.1) => last.1 = last.1.max(hi),
            _ => maximizers.push((lo, hi)),
        }
    }
    let plateau = (maximizers[0].0, maximizers.last().unwrap().1);
    MaxStructure {
        max_value,
        maximizers,
        plateau,
    }
}

/// Rightmost point of `[rp.lo, upto]` where `F` attains its maximum over that
/// interval. Cells are monotone, so only cell ends need checking.
pub fn rightmost_maximizer(pw: &PiecewiseCubic, rp: &RefinedPartition, upto: f64, tol: &Tolerances) -> f64 {
    let mut best = (rp.lo, pw.value(rp.lo));
    for c in rp.cells.iter().take_while(|c| c.lo < upto) {
        let x = c.hi.min(upto);
        let v = pw.piece(c.piece).at(x);
        if v >= best.1 - tol.max(best.1) {
            best = (x, v.max(best.1));
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(lo: f64, hi: f64, c: [f64; 4]) -> PiecewiseCubic {
        PiecewiseCubic::new(vec![lo, hi], vec![c]).unwrap()
    }

    #[test]
    fn constant_function_max() {
        let t = Tolerances::default();
        let ms = global_max(&single(0.0, 2.0, [0.0, 0.0, 0.0, 1.5]), &t);
        assert_eq!(ms.max_value, 1.5);
        assert_eq!(ms.maximizers, vec![(0.0, 2.0)]);
        assert_eq!(ms.plateau, (0.0, 2.0));
    }

    #[test]
    fn unique_interior_max() {
        // -(x - 0.3)^2
        let t = Tolerances::default();
        let ms = global_max(&single(0.0, 1.0, [0.0, -1.0, 0.6, -0.09]), &t);
        assert!(ms.max_value.abs() < 1e-15);
        assert_eq!(ms.maximizers.len(), 1);
        assert!((ms.c1() - 0.3).abs() < 1e-12 && (ms.c2() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn cube_splits_at_inflection() {
        let t = Tolerances::default();
        let rp = refine(&single(-1.0, 1.0, [1.0, 0.0, 0.0, 0.0]), -1.0, 1.0, &t);
        assert_eq!(rp.cells.len(), 2);
        assert_eq!((rp.cells[0].lo, rp.cells[0].hi), (-1.0, 0.0));
        assert_eq!(rp.cells[0].monotonicity, Monotonicity::Increasing);
        assert_eq!(rp.cells[0].curvature, Curvature::StrictlyConcave);
        assert_eq!(rp.cells[1].curvature, Curvature::StrictlyConvex);
    }

    #[test]
    fn concave_increasing_piece_is_one_cell() {
        let t = Tolerances::default();
        // -x^2 + 4x on [0, 1]
        let pw = single(0.0, 1.0, [0.0, -1.0, 4.0, 0.0]);
        let rp = refine(&pw, 0.0, 1.0, &t);
        assert_eq!(rp.cells.len(), 1);
        assert!(rp.cells[0].is_concave_increasing());
        assert_eq!(concave_increasing_set(&rp, &t).members.len(), 1);
    }

    #[test]
    fn convex_function_has_no_members() {
        let t = Tolerances::default();
        let pw = single(0.0, 1.0, [0.0, 1.0, 1.0, 0.0]);
        let rp = refine(&pw, 0.0, 1.0, &t);
        assert!(concave_increasing_set(&rp, &t).members.is_empty());
    }

    #[test]
    fn linear_cells_are_detected() {
        let t = Tolerances::default();
        let rp = refine(&single(0.0, 1.0, [0.0, 0.0, 2.0, 1.0]), 0.0, 1.0, &t);
        assert_eq!(rp.cells.len(), 1);
        assert_eq!(rp.cells[0].curvature, Curvature::Linear);
        assert_eq!(rp.cells[0].monotonicity, Monotonicity::Increasing);
    }

    #[test]
    fn hump_split_by_critical_point_shares_group() {
        let t = Tolerances::default();
        // -(x-1)^2 on [0, 3]: increasing then decreasing, concave throughout
        let pw = single(0.0, 3.0, [0.0, -1.0, 2.0, -1.0]);
        let rp = refine(&pw, 0.0, 3.0, &t);
        assert_eq!(rp.cells.len(), 2);
        // split the increasing part artificially into two members via two pieces
        let pw2 = PiecewiseCubic::new(
            vec![0.0, 0.5, 1.0],
            vec![[0.0, -1.0, 2.0, -1.0], [0.0, -1.0, 2.0, -1.0]],
        )
        .unwrap();
        let rp2 = refine(&pw2, 0.0, 1.0, &t);
        let g = group_by_convex_separators(&concave_increasing_set(&rp2, &t), &rp2);
        assert_eq!(g.members.len(), 2);
        assert_eq!(g.members[0].group, g.members[1].group);
    }

    #[test]
    fn humps_separated_by_valley_get_distinct_groups() {
        let t = Tolerances::default();
        // x^3-like with two concave rises separated by a convex valley: use sin-like cubic spline
        let pw = PiecewiseCubic::new(vec![0.0, 1.0, 2.0], vec![[0.0, -1.0, 2.0, 0.0], [0.0, 1.0, -2.0, 2.0]]).unwrap();
        let rp = refine(&pw, 0.0, 2.0, &t);
        // piece 0: -x^2 + 2x (concave, increasing to 1); piece 1: (x-1)^2 + 1 (convex, increasing)
        let g = group_by_convex_separators(&concave_increasing_set(&rp, &t), &rp);
        assert_eq!(g.members.len(), 1);
        let pw3 = PiecewiseCubic::new(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![[0.0, -1.0, 3.0, 0.0], [0.0, 1.0, -1.0, 2.0], [0.0, -1.0, 7.0, -6.0]],
        )
        .unwrap();
        let rp3 = refine(&pw3, 0.0, 3.0, &t);
        let g3 = group_by_convex_separators(&concave_increasing_set(&rp3, &t), &rp3);
        assert_eq!(g3.members.len(), 2);
        assert_ne!(g3.members[0].group, g3.members[1].group);
    }
}
