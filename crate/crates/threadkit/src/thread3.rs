//! Sampled threadability of 3D chains through a point-hole in a plane.
//!
//! At a checked parameter, a separating plane with normal n exists exactly
//! when n . (q - p) < 0 for all prefix points q and > 0 for all suffix
//! points, the same split as in the plane: prefix below, suffix above.
//! Emptiness of that region is decided exactly over the rationals (a strict
//! homogeneous system is feasible iff the origin is outside the convex hull
//! of the constraint directions); the geodesic polygon returned for
//! nonempty regions is a double-precision presentation of the same
//! constraint set.

use crate::arc::NormalArc;
use crate::chain::{Chain2, ChainParam, OutOfRange};
use crate::geom::Dir2;
use crate::geom3::{Chain3, Point3, Vec3};
use crate::scalar::{scalar_from_f64, scalar_ratio, Scalar};
use crate::sphere::{cross3, dot3, neg3, tangent_basis, unit3, SphericalPolygon};
use num_traits::{Signed, Zero};
use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Planar chain embedded in the z = 0 plane. A plane through a hole point
/// meets the embedded chain exactly as its trace line meets the original,
/// so verdicts transfer.
pub fn lift(c: &Chain2) -> Chain3 {
    Chain3::trusted(
        c.vertices()
            .iter()
            .map(|v| Point3::new(v.x.clone(), v.y.clone(), Scalar::zero()))
            .collect(),
    )
}

/// Verdict of the sampled 3D check. One-sided: an empty butterfly at any
/// checked parameter proves the chain cannot thread; all-nonempty is
/// evidence, not proof.
#[derive(Debug, Clone)]
pub struct Verdict3 {
    pub threadable_at_samples: bool,
    pub witness: Option<ChainParam>,
    pub checked_params: Vec<ChainParam>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("butterfly is empty at the parameter, no separating plane exists")]
    EmptyButterfly,
    #[error(transparent)]
    OutOfRange(#[from] OutOfRange),
}

/// Directions w of the strict constraint system n . w < 0 at a parameter:
/// q - p over prefix points, p - q over suffix points, deduplicated as rays.
fn constraint_dirs(c: &Chain3, p: &ChainParam) -> Result<Vec<Vec3>, OutOfRange> {
    let pt = c.point_at(p)?;
    let prefix = c.prefix_vertices(p);
    let suffix = c.suffix_vertices(p);
    let mut seen: HashSet<Vec3> = HashSet::new();
    let mut ws: Vec<Vec3> = Vec::new();
    let mut push = |w: Vec3| {
        debug_assert!(!w.is_zero());
        let w = w.canonical();
        if seen.insert(w.clone()) {
            ws.push(w);
        }
    };
    for q in &prefix[..prefix.len() - 1] {
        push(pt.dir_to(q));
    }
    for q in &suffix[1..] {
        push(q.dir_to(&pt));
    }
    debug_assert!(!ws.is_empty());
    Ok(ws)
}

/// Shape of the admissible-normal region {n : n . w < 0 for all w},
/// classified by the rank of the constraint directions. Each feasible
/// variant carries an exact rational interior witness.
enum Feas {
    Infeasible,
    /// All constraints on one ray u: the region is the open hemisphere
    /// opposite u.
    Ray(Vec3),
    /// All constraints in the plane with normal m: the region is the lune
    /// over a planar normal arc, expressed in the in-plane basis (e1, e2).
    Planar {
        e1: Vec3,
        e2: Vec3,
        m: Vec3,
        arc: NormalArc,
        witness: Vec3,
    },
    /// Full-rank constraints: a pointed cone with >= 3 extreme rays.
    Full(Vec3),
}

fn feas_witness(f: &Feas) -> Option<Vec3> {
    match f {
        Feas::Infeasible => None,
        Feas::Ray(u) => Some(u.neg()),
        Feas::Planar { witness, .. } | Feas::Full(witness) => Some(witness.clone()),
    }
}

/// Exact strict feasibility of {n : n . w < 0 for all w}: returns a
/// rational witness direction, or None when the system is infeasible. The
/// rank cascade keeps collinear and planar inputs on cheap exact paths.
fn strict_feasible(ws: &[Vec3]) -> Option<Vec3> {
    feas_witness(&analyze(ws))
}

fn analyze(ws: &[Vec3]) -> Feas {
    let u = &ws[0];
    let Some(j) = ws.iter().position(|w| !u.cross(w).is_zero()) else {
        // All constraints on one line through the origin.
        if ws.iter().any(|w| u.dot(w).is_negative()) {
            return Feas::Infeasible;
        }
        return Feas::Ray(u.clone());
    };
    let m = u.cross(&ws[j]);
    if ws.iter().all(|w| m.dot(w).is_zero()) {
        // Rank 2: writing n = a e1 + b e2 + t m turns every constraint into
        // a (e1 . w) + b (e2 . w) < 0, the planar arc fold, which is exact
        // and linear-time. The basis need not be orthonormal for the signs
        // to transfer.
        let e1 = u.clone();
        let e2 = m.cross(u);
        let mut arc: Option<NormalArc> = None;
        for w in ws {
            let w2 = Dir2::new(e1.dot(w), e2.dot(w));
            let semi = NormalArc::semicircle(&w2.neg());
            arc = Some(match arc {
                None => semi,
                Some(a) => match a.intersect(&semi) {
                    None => return Feas::Infeasible,
                    Some(x) => x,
                },
            });
        }
        let arc = arc.expect("at least one constraint");
        let n2 = arc.interior_dir();
        let witness = e1.scale(&n2.dx).add(&e2.scale(&n2.dy));
        return Feas::Planar { e1, e2, m, arc, witness };
    }
    if let Some(w) = full_rank_f64_witness(ws) {
        return Feas::Full(w);
    }
    match full_rank_exact(ws) {
        Some(w) => Feas::Full(w),
        None => Feas::Infeasible,
    }
}

/// Full-rank fast path: boundary-ray candidates in double precision, summed
/// and then verified exactly. A verified sum is a sound witness; failure
/// falls through to the exact enumeration.
fn full_rank_f64_witness(ws: &[Vec3]) -> Option<Vec3> {
    let wf: Vec<[f64; 3]> = ws.iter().map(|w| w.unit_f64()).collect();
    let mut sum = [0.0f64; 3];
    for i in 0..wf.len() {
        for j in (i + 1)..wf.len() {
            let c = cross3(wf[i], wf[j]);
            if dot3(c, c) < 1e-24 {
                continue;
            }
            let c = unit3(c);
            for cand in [c, neg3(c)] {
                if wf.iter().all(|w| dot3(cand, *w) <= 1e-12) {
                    sum = [sum[0] + cand[0], sum[1] + cand[1], sum[2] + cand[2]];
                }
            }
        }
    }
    if dot3(sum, sum) < 1e-12 {
        return None;
    }
    let n = Vec3::new(
        scalar_from_f64(sum[0])?,
        scalar_from_f64(sum[1])?,
        scalar_from_f64(sum[2])?,
    );
    if !n.is_zero() && ws.iter().all(|w| n.dot(w).is_negative()) {
        Some(n)
    } else {
        None
    }
}

/// Full-rank exact decision. The closed solution cone is pointed, so its
/// extreme rays are cross products of constraint pairs; the sum of all
/// valid candidate rays is interior whenever the cone has interior at all,
/// which makes the final strict check decisive in both directions.
fn full_rank_exact(ws: &[Vec3]) -> Option<Vec3> {
    let mut sum = Vec3::ints(0, 0, 0);
    for i in 0..ws.len() {
        for j in (i + 1)..ws.len() {
            let c = ws[i].cross(&ws[j]);
            if c.is_zero() {
                continue;
            }
            let c = c.canonical();
            for cand in [c.neg(), c] {
                if ws.iter().all(|w| !cand.dot(w).is_positive()) {
                    sum = sum.add(&cand);
                }
            }
        }
    }
    if !sum.is_zero() && ws.iter().all(|w| sum.dot(w).is_negative()) {
        Some(sum)
    } else {
        None
    }
}

/// Exact strict re-check of a double-precision direction against the
/// constraint set, through the exact dyadic value of each coordinate.
fn verify_strict(d: [f64; 3], ws: &[Vec3]) -> bool {
    let (Some(x), Some(y), Some(z)) = (
        scalar_from_f64(d[0]),
        scalar_from_f64(d[1]),
        scalar_from_f64(d[2]),
    ) else {
        return false;
    };
    let n = Vec3::new(x, y, z);
    !n.is_zero() && ws.iter().all(|w| n.dot(w).is_negative())
}

/// Geodesic polygon of a nonempty region. Nodes come straight from the
/// exact structure: a boundary quad for a hemisphere, pole and arc-end
/// nodes for a lune, and for full rank the valid candidate rays, each of
/// which is tight at two independent constraints and hence an extreme ray
/// of the pointed cone. Only the final coordinates round to doubles.
fn region_polygon(ws: &[Vec3], f: &Feas) -> SphericalPolygon {
    match f {
        Feas::Infeasible => unreachable!("no region for an infeasible system"),
        Feas::Ray(u) => {
            let pole = u.neg().unit_f64();
            let (bu, bv) = tangent_basis(pole);
            SphericalPolygon::from_nodes(vec![bu, bv, neg3(bu), neg3(bv)], pole)
        }
        Feas::Planar {
            e1,
            e2,
            m,
            arc,
            witness,
        } => {
            let pole = m.unit_f64();
            let embed =
                |d: &crate::geom::Dir2| e1.scale(&d.dx).add(&e2.scale(&d.dy)).unit_f64();
            let nodes = vec![pole, embed(arc.lo()), neg3(pole), embed(arc.hi())];
            SphericalPolygon::from_nodes(nodes, witness.unit_f64())
        }
        Feas::Full(witness) => {
            let mut seen: HashSet<Vec3> = HashSet::new();
            let mut rays: Vec<[f64; 3]> = Vec::new();
            for i in 0..ws.len() {
                for j in (i + 1)..ws.len() {
                    let c = ws[i].cross(&ws[j]);
                    if c.is_zero() {
                        continue;
                    }
                    let c = c.canonical();
                    for cand in [c.neg(), c] {
                        if ws.iter().all(|w| !cand.dot(w).is_positive())
                            && seen.insert(cand.clone())
                        {
                            rays.push(cand.unit_f64());
                        }
                    }
                }
            }
            debug_assert!(rays.len() >= 3, "pointed full-rank cone has >= 3 extreme rays");
            let axis = witness.unit_f64();
            let (bu, bv) = tangent_basis(axis);
            let azimuth = |n: &[f64; 3]| dot3(*n, bv).atan2(dot3(*n, bu));
            rays.sort_by(|a, b| azimuth(a).partial_cmp(&azimuth(b)).expect("finite azimuth"));
            SphericalPolygon::from_nodes(rays, axis)
        }
    }
}

/// Butterfly region at a parameter: the geodesic polygon of admissible
/// separating-plane normals, or None when it is exactly empty.
pub fn butterfly3_at(
    c: &Chain3,
    p: &ChainParam,
) -> Result<Option<SphericalPolygon>, OutOfRange> {
    let ws = constraint_dirs(c, p)?;
    let f = analyze(&ws);
    Ok(match f {
        Feas::Infeasible => None,
        f => Some(region_polygon(&ws, &f)),
    })
}

/// Evaluates the butterfly at every vertex and at j/s along every edge,
/// in chain order, and reports the first exactly-empty parameter. Checks
/// run concurrently; the reported witness is the earliest one.
pub fn decide3_sampled(c: &Chain3, samples_per_edge: usize) -> Verdict3 {
    assert!(samples_per_edge >= 1, "need at least one sample per edge");
    let s = samples_per_edge as i64;
    let mut params: Vec<ChainParam> = Vec::new();
    for e in 1..=c.edge_count() {
        params.push(ChainParam::at_vertex(e, c.n()));
        for j in 1..s {
            params.push(ChainParam::new(e, scalar_ratio(j, s)));
        }
    }
    params.push(c.terminal_param());
    match parallel_first_empty(c, &params) {
        Some(k) => Verdict3 {
            threadable_at_samples: false,
            witness: Some(params[k].clone()),
            checked_params: params[..=k].to_vec(),
        },
        None => Verdict3 {
            threadable_at_samples: true,
            witness: None,
            checked_params: params,
        },
    }
}

fn parallel_first_empty(c: &Chain3, params: &[ChainParam]) -> Option<usize> {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .clamp(1, 8);
    let chunk = params.len().div_ceil(threads);
    let best = AtomicUsize::new(usize::MAX);
    std::thread::scope(|scope| {
        for (ci, slice) in params.chunks(chunk).enumerate() {
            let best = &best;
            scope.spawn(move || {
                for (off, p) in slice.iter().enumerate() {
                    let idx = ci * chunk + off;
                    if idx >= best.load(Ordering::Relaxed) {
                        return;
                    }
                    let ws = constraint_dirs(c, p).expect("sampled param in range");
                    if strict_feasible(&ws).is_none() {
                        best.fetch_min(idx, Ordering::Relaxed);
                        return;
                    }
                }
            });
        }
    });
    let k = best.load(Ordering::Relaxed);
    (k != usize::MAX).then_some(k)
}

/// Separating-plane normal at a parameter with a nonempty butterfly: the
/// polygon centroid when it re-verifies strictly against the exact
/// constraints, otherwise the exact interior witness rounded to doubles.
pub fn separating_plane_at(c: &Chain3, p: &ChainParam) -> Result<[f64; 3], PlaneError> {
    let ws = constraint_dirs(c, p)?;
    let f = analyze(&ws);
    let wit = feas_witness(&f).ok_or(PlaneError::EmptyButterfly)?;
    let poly = region_polygon(&ws, &f);
    if let Some(cen) = poly.centroid() {
        if verify_strict(cen, &ws) {
            return Ok(cen);
        }
    }
    Ok(wit.unit_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::validate_chain;
    use crate::geom::Point2;
    use crate::geom3::validate_chain3;
    use crate::scalar::{parse_scalar, scalar_int};
    use crate::threadability::decide;

    fn chain2(pts: &[(i64, i64)]) -> Chain2 {
        validate_chain(pts.iter().map(|&(x, y)| Point2::ints(x, y)).collect()).unwrap()
    }

    fn chain3(pts: &[(i64, i64, i64)]) -> Chain3 {
        validate_chain3(pts.iter().map(|&(x, y, z)| Point3::ints(x, y, z)).collect()).unwrap()
    }

    fn spiral() -> Chain2 {
        chain2(&[(0, 0), (4, 0), (4, 4), (-4, 4), (-4, -4), (2, -4)])
    }

    /// Corkscrew rising around the z axis, trig values materialized as
    /// exact 12-place decimals.
    fn helix3() -> Chain3 {
        let vs: Vec<Point3> = (0..12)
            .map(|i| {
                let a = i as f64 * std::f64::consts::PI / 4.0;
                Point3::new(
                    parse_scalar(&format!("{:.12}", a.cos())).unwrap(),
                    parse_scalar(&format!("{:.12}", a.sin())).unwrap(),
                    scalar_int(i),
                )
            })
            .collect();
        validate_chain3(vs).unwrap()
    }

    #[test]
    fn helix_butterflies_contain_the_rise_axis() {
        let h = helix3();
        for i in 2..h.n() {
            let p = ChainParam::at_vertex(i, h.n());
            let poly = butterfly3_at(&h, &p).unwrap().expect("nonempty");
            assert!(
                poly.contains([0.0, 0.0, 1.0], 1e-9),
                "vertex {i}: nodes {:?}",
                poly.nodes()
            );
            assert!(poly.is_convex(1e-9), "vertex {i}");
        }
    }

    #[test]
    fn helix_endpoint_butterflies_are_single_sided_and_nonempty() {
        let h = helix3();
        let start = butterfly3_at(&h, &ChainParam::at_vertex(1, h.n())).unwrap();
        let end = butterfly3_at(&h, &h.terminal_param()).unwrap();
        assert!(start.is_some());
        assert!(end.is_some());
    }

    #[test]
    fn helix_is_threadable_at_samples() {
        let v = decide3_sampled(&helix3(), 8);
        assert!(v.threadable_at_samples);
        assert!(v.witness.is_none());
        assert_eq!(v.checked_params.len(), 11 * 8 + 1);
    }

    #[test]
    fn lifted_fixtures_reduce_to_the_planar_verdicts() {
        let threadable = [
            chain2(&[(0, 0), (0, 4)]),
            chain2(&[(0, 0), (2, 2), (0, 4), (2, 6)]),
            chain2(&[(0, 0), (1, 1), (2, 4), (3, 9)]),
            chain2(&[(1, 0), (0, 1), (-1, 0), (0, -1)]),
        ];
        for c in &threadable {
            let v = decide3_sampled(&lift(c), 8);
            assert!(v.threadable_at_samples, "{c:?}");
        }
        let hook = chain2(&[(10, 10), (10, -10), (0, 0), (0, 10), (50, 29)]);
        for c in [&hook, &spiral()] {
            let v2 = decide(c);
            assert!(!v2.threadable);
            let w = v2.witness.unwrap();
            let v3 = decide3_sampled(&lift(c), 8);
            assert!(!v3.threadable_at_samples, "{c:?}");
            assert!(butterfly3_at(&lift(c), &w.param).unwrap().is_none());
        }
    }

    #[test]
    fn lifted_spiral_fails_at_the_first_sample() {
        let v = decide3_sampled(&lift(&spiral()), 8);
        assert_eq!(v.witness, Some(ChainParam::at_vertex(1, 6)));
        assert_eq!(v.checked_params.len(), 1);
    }

    #[test]
    fn doubling_the_sampling_keeps_every_old_grid_point() {
        let c = lift(&spiral());
        let coarse = decide3_sampled(&c, 4);
        let fine = decide3_sampled(&c, 8);
        assert!(!coarse.threadable_at_samples);
        assert!(!fine.threadable_at_samples);
        let all_fine: Vec<Scalar> = {
            let mut ps: Vec<ChainParam> = Vec::new();
            for e in 1..=c.edge_count() {
                ps.push(ChainParam::at_vertex(e, c.n()));
                for j in 1..8 {
                    ps.push(ChainParam::new(e, scalar_ratio(j, 8)));
                }
            }
            ps.push(c.terminal_param());
            ps.iter().map(|p| p.global()).collect()
        };
        for p in &coarse.checked_params {
            assert!(all_fine.contains(&p.global()));
        }
    }

    #[test]
    fn mirror_pyramids_separate_along_the_symmetry_axis() {
        let c = chain3(&[
            (2, 0, -1),
            (0, 2, -1),
            (-2, 0, -1),
            (0, -2, -1),
            (0, 0, 0),
            (0, -2, 1),
            (-2, 0, 1),
            (0, 2, 1),
            (2, 0, 1),
        ]);
        let n = separating_plane_at(&c, &ChainParam::at_vertex(5, 9)).unwrap();
        assert!((n[0]).abs() < 1e-9);
        assert!((n[1]).abs() < 1e-9);
        assert!((n[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sliver_butterfly_still_yields_a_strict_normal() {
        let c = chain3(&[(1, 0, 0), (-1000, 1, 0), (0, 0, 0), (0, 0, -1)]);
        let p = ChainParam::at_vertex(3, 4);
        let n = separating_plane_at(&c, &p).unwrap();
        let ws = constraint_dirs(&c, &p).unwrap();
        assert!(verify_strict(n, &ws), "normal {n:?} not strictly interior");
    }

    #[test]
    fn empty_and_out_of_range_plane_requests_error() {
        let c = lift(&spiral());
        assert_eq!(
            separating_plane_at(&c, &ChainParam::at_vertex(1, 6)).unwrap_err(),
            PlaneError::EmptyButterfly
        );
        assert!(matches!(
            separating_plane_at(&c, &ChainParam::new(10, Scalar::zero())).unwrap_err(),
            PlaneError::OutOfRange(_)
        ));
        assert!(butterfly3_at(&c, &ChainParam::new(10, Scalar::zero())).is_err());
    }

    #[test]
    fn exact_cascade_matches_brute_candidates_on_full_rank_systems() {
        // Octant system: strictly feasible, witness must be in the open
        // negative octant.
        let ws = [Vec3::ints(1, 0, 0), Vec3::ints(0, 1, 0), Vec3::ints(0, 0, 1)];
        let w = strict_feasible(&ws).unwrap();
        assert!(w.dx.is_negative() && w.dy.is_negative() && w.dz.is_negative());
        // Adding the opposite octant makes it infeasible.
        let mut both = ws.to_vec();
        both.extend([Vec3::ints(-1, 0, 0), Vec3::ints(0, -1, 0), Vec3::ints(0, 0, -1)]);
        assert!(strict_feasible(&both).is_none());
        // A full great circle of planar constraints is infeasible even
        // though no antipodal pair exists.
        let ring = [
            Vec3::ints(1, 0, 0),
            Vec3::ints(-1, 2, 0),
            Vec3::ints(-1, -2, 0),
        ];
        assert!(strict_feasible(&ring).is_none());
        // Collinear rays are feasible, opposite rays are not.
        assert!(strict_feasible(&[Vec3::ints(2, 2, 0), Vec3::ints(1, 1, 0)]).is_some());
        assert!(strict_feasible(&[Vec3::ints(1, 1, 0), Vec3::ints(-2, -2, 0)]).is_none());
    }

    #[test]
    fn hemisphere_region_presents_as_the_boundary_quad() {
        let c = chain3(&[(0, 0, 0), (0, 4, 0)]);
        let poly = butterfly3_at(&c, &ChainParam::at_vertex(1, 2))
            .unwrap()
            .expect("single-sided butterfly");
        assert_eq!(poly.nodes().len(), 4);
        // At the start vertex the whole chain is still to come, so the
        // region is {n . (q - p) > 0} = the upper half in y.
        assert!(poly.contains([0.0, 1.0, 0.0], 1e-9));
        assert!(!poly.contains([0.0, -1.0, 0.0], 1e-9));
    }
}
