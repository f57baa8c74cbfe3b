//! The 2D decision procedure: tangent-cone separation over merged pass
//! intervals, an exhaustive butterfly oracle, and monotonicity.

use crate::arc::NormalArc;
use crate::chain::{Chain2, ChainParam, OutOfRange};
use crate::cone::{cones_apex_disjoint, Cone2, ConeKind};
use crate::geom::{orient_val, Dir2, Point2};
use crate::growing::{
    anchors_at, growing_pass, HullNeighbors, HullPass, PassDirection, PassOutcome,
};
use crate::hull::melkman_hull;
use crate::scalar::{scalar_int, Scalar};
use num_traits::{Signed, ToPrimitive, Zero};

/// Why a chain fails to thread, attached to the earliest failing parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// The endpoint is not a strict vertex of the whole-chain hull, so no
    /// line can meet the chain only there.
    EndpointNotExtreme,
    /// The moving point entered the growing hull during the given pass.
    EnteredHull(PassDirection),
    /// One tangent cone flattens to a halfplane: the point lies between two
    /// hull vertices on a supporting line, which kills every normal.
    HalfplaneCone,
    /// Prefix and suffix tangent cones share a ray besides the apex.
    ConesOverlap,
    /// The exhaustive check found an empty butterfly (oracle verdicts).
    EmptyButterfly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub param: ChainParam,
    pub kind: FailureKind,
    pub prefix_cone: Option<Cone2>,
    pub suffix_cone: Option<Cone2>,
}

/// One certificate interval. The hull anchors are constant on its interior
/// and the butterfly stays nonempty across it, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct CertInterval {
    pub lo: ChainParam,
    pub hi: ChainParam,
    /// Prefix-hull neighbors (a1, b1) on the interval interior.
    pub prefix: (usize, usize),
    /// Suffix-hull neighbors (a1, b1) on the interval interior.
    pub suffix: (usize, usize),
    pub arc_lo: NormalArc,
    pub arc_hi: NormalArc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub threadable: bool,
    pub witness: Option<Witness>,
    pub certificate: Option<Vec<CertInterval>>,
}

impl Verdict {
    fn failure(witness: Witness) -> Verdict {
        Verdict {
            threadable: false,
            witness: Some(witness),
            certificate: None,
        }
    }
}

/// Open arc of normals n with n.(q - p) < 0 for every chain point q strictly
/// before p and n.(q - p) > 0 for every q strictly after; None when empty.
/// At a chain endpoint only the populated side constrains the arc.
pub fn butterfly_at(c: &Chain2, p: &ChainParam) -> Result<Option<NormalArc>, OutOfRange> {
    let pt = c.point_at(p)?;
    let pre = c.prefix_vertices(p);
    let suf = c.suffix_vertices(p);
    let before = &pre[..pre.len() - 1];
    let after = &suf[1..];
    let mut arc: Option<NormalArc> = None;
    let dirs = before
        .iter()
        .map(|q| q.dir_to(&pt))
        .chain(after.iter().map(|q| pt.dir_to(q)));
    for w in dirs {
        let semi = NormalArc::semicircle(&w);
        arc = Some(match arc {
            None => semi,
            Some(a) => match a.intersect(&semi) {
                Some(next) => next,
                None => return Ok(None),
            },
        });
    }
    Ok(arc)
}

/// A direction u with u.e > 0 for every edge vector e, when one exists.
pub fn is_strictly_monotone(c: &Chain2) -> Option<Dir2> {
    c.monotone_direction()
}

/// Decision procedure over the two growing passes. Endpoints are handled by
/// the whole-chain hull rule; interior parameters by the cone test on merged
/// anchor intervals, evaluated at every sign-change candidate of the affine
/// collinearity functions. Reports the first failure in chain order, except
/// that a pass entering its hull short-circuits the sweep at the earliest
/// entry parameter.
pub fn decide(c: &Chain2) -> Verdict {
    let n = c.n();
    let whole = melkman_hull(c);
    if !whole.is_vertex(c.vertex(1)) {
        return Verdict::failure(Witness {
            param: ChainParam::at_vertex(1, n),
            kind: FailureKind::EndpointNotExtreme,
            prefix_cone: None,
            suffix_cone: None,
        });
    }

    let fwd = growing_pass(c, PassDirection::Forward);
    let bwd = growing_pass(c, PassDirection::Backward);
    let mut entered: Vec<(ChainParam, PassDirection)> = Vec::new();
    if let PassOutcome::Entered(p) = &fwd.outcome {
        entered.push((p.clone(), PassDirection::Forward));
    }
    if let PassOutcome::Entered(p) = &bwd.outcome {
        entered.push((p.clone(), PassDirection::Backward));
    }
    if let Some((param, dir)) = entered.into_iter().min_by(|a, b| a.0.cmp(&b.0)) {
        return Verdict::failure(Witness {
            param,
            kind: FailureKind::EnteredHull(dir),
            prefix_cone: None,
            suffix_cone: None,
        });
    }

    let cuts = cut_globals(&fwd, &bwd, n);
    let end = scalar_int(n as i64 - 1);
    let mut done: Option<Scalar> = None;
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mid = (lo + hi) / scalar_int(2);
        let pm = ChainParam::from_global(&mid, n);
        let prefix = interior_neighbors(&fwd, &pm);
        let suffix = interior_neighbors(&bwd, &pm);
        for g in interval_candidates(c, lo, hi, prefix, suffix) {
            if g.is_zero() || g == end || done.as_ref() == Some(&g) {
                continue;
            }
            let p = ChainParam::from_global(&g, n);
            let (pre, suf, fail) = check_at(c, &fwd, &bwd, &p);
            if let Some(kind) = fail {
                return Verdict::failure(Witness {
                    param: p.canonical(n),
                    kind,
                    prefix_cone: Some(pre),
                    suffix_cone: Some(suf),
                });
            }
            done = Some(g);
        }
    }

    if !whole.is_vertex(c.vertex(n)) {
        return Verdict::failure(Witness {
            param: c.terminal_param(),
            kind: FailureKind::EndpointNotExtreme,
            prefix_cone: None,
            suffix_cone: None,
        });
    }

    Verdict {
        threadable: true,
        witness: None,
        certificate: Some(certificate(c, &fwd, &bwd, &cuts)),
    }
}

/// Exhaustive independent check: evaluates the butterfly at every edge
/// endpoint, at every root of the collinearity of the moving point with a
/// vertex pair, and at midpoints between consecutive candidates. Emptiness
/// can only flip where a wing line degenerates, which is such a root.
/// Intended for small chains; quadratic candidate count per edge.
pub fn oracle_decide(c: &Chain2) -> Verdict {
    let n = c.n();
    let vs = c.vertices();
    for e in 1..n {
        let (p0, p1) = c.edge_points(e);
        let mut ts: Vec<Scalar> = vec![Scalar::zero(), scalar_int(1)];
        for i in 0..n {
            for j in i + 1..n {
                let g0 = orient_val(p0, &vs[i], &vs[j]);
                let g1 = orient_val(p1, &vs[i], &vs[j]);
                if g0 == g1 {
                    continue;
                }
                let t = &g0 / (&g0 - &g1);
                if t.is_positive() && t < scalar_int(1) {
                    ts.push(t);
                }
            }
        }
        ts.sort();
        ts.dedup();
        for t in with_midpoints(ts) {
            if e < n - 1 && t == scalar_int(1) {
                continue;
            }
            let p = ChainParam::new(e, t);
            if butterfly_at(c, &p).expect("param in range").is_none() {
                return Verdict::failure(Witness {
                    param: p.canonical(n),
                    kind: FailureKind::EmptyButterfly,
                    prefix_cone: None,
                    suffix_cone: None,
                });
            }
        }
    }
    Verdict {
        threadable: true,
        witness: None,
        certificate: None,
    }
}

/// Sorted distinct event parameters of both passes as globals, with the two
/// chain endpoints. Vertex arrivals make every integer a cut, so each window
/// lies inside a single edge.
fn cut_globals(fwd: &HullPass, bwd: &HullPass, n: usize) -> Vec<Scalar> {
    let mut cuts: Vec<Scalar> = vec![Scalar::zero(), scalar_int(n as i64 - 1)];
    cuts.extend(fwd.events.iter().map(|e| e.param.global()));
    cuts.extend(bwd.events.iter().map(|e| e.param.global()));
    cuts.sort();
    cuts.dedup();
    cuts
}

fn interior_neighbors(pass: &HullPass, p: &ChainParam) -> (usize, usize) {
    match anchors_at(pass, p).expect("completed pass covers interior params") {
        HullNeighbors::Neighbors { a1, b1 } => (a1, b1),
        HullNeighbors::AtEndpoint => unreachable!("interior param has neighbors"),
    }
}

/// Candidate globals in [lo, hi]: the ends, every root of the six pairwise
/// collinearity functions over the four anchors, and midpoints between
/// consecutive candidates. The cone predicate is a sign pattern of exactly
/// these affine functions, so it is constant between candidates.
fn interval_candidates(
    c: &Chain2,
    lo: &Scalar,
    hi: &Scalar,
    prefix: (usize, usize),
    suffix: (usize, usize),
) -> Vec<Scalar> {
    let mid = (lo + hi) / scalar_int(2);
    let edge = mid.floor().to_integer().to_usize().expect("in range") + 1;
    let (p0, p1) = c.edge_points(edge);
    let (fa, fb) = prefix;
    let (ba, bb) = suffix;
    let pairs = [(fa, ba), (fa, bb), (fb, ba), (fb, bb), (fa, fb), (ba, bb)];
    let mut cands = vec![lo.clone(), hi.clone()];
    let base = scalar_int(edge as i64 - 1);
    for (i, j) in pairs {
        if i == j {
            continue;
        }
        let g0 = orient_val(p0, c.vertex(i), c.vertex(j));
        let g1 = orient_val(p1, c.vertex(i), c.vertex(j));
        if g0 == g1 {
            continue;
        }
        let g = &base + &g0 / (&g0 - &g1);
        if &g > lo && &g < hi {
            cands.push(g);
        }
    }
    cands.sort();
    cands.dedup();
    with_midpoints(cands)
}

fn with_midpoints(sorted: Vec<Scalar>) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(sorted.len() * 2);
    for w in sorted.windows(2) {
        out.push(w[0].clone());
        out.push((&w[0] + &w[1]) / scalar_int(2));
    }
    out.extend(sorted.into_iter().last());
    out
}

/// Tangent cone of one growing hull at an exterior point, spanned from the
/// front neighbor to the back neighbor of the counterclockwise cycle.
fn side_cone(c: &Chain2, apex: &Point2, a1: usize, b1: usize) -> Cone2 {
    Cone2::new(
        apex.clone(),
        apex.dir_to(c.vertex(b1)),
        apex.dir_to(c.vertex(a1)),
    )
    .expect("hull neighbors never span a reflex cone")
}

fn check_at(
    c: &Chain2,
    fwd: &HullPass,
    bwd: &HullPass,
    p: &ChainParam,
) -> (Cone2, Cone2, Option<FailureKind>) {
    let apex = c.point_at(p).expect("param in range");
    let (fa, fb) = interior_neighbors(fwd, p);
    let (ba, bb) = interior_neighbors(bwd, p);
    let pre = side_cone(c, &apex, fa, fb);
    let suf = side_cone(c, &apex, ba, bb);
    let fail = if pre.kind() == ConeKind::Halfplane || suf.kind() == ConeKind::Halfplane {
        Some(FailureKind::HalfplaneCone)
    } else if !cones_apex_disjoint(&pre, &suf).expect("cones share the apex") {
        Some(FailureKind::ConesOverlap)
    } else {
        None
    };
    (pre, suf, fail)
}

fn certificate(c: &Chain2, fwd: &HullPass, bwd: &HullPass, cuts: &[Scalar]) -> Vec<CertInterval> {
    let n = c.n();
    let arc = |p: &ChainParam| -> NormalArc {
        butterfly_at(c, p)
            .expect("param in range")
            .expect("threadable chain has a nonempty butterfly")
    };
    let mut out = Vec::with_capacity(cuts.len().saturating_sub(1));
    let mut prev: Option<(ChainParam, NormalArc)> = None;
    for w in cuts.windows(2) {
        let lo = match prev {
            Some(pair) => pair,
            None => {
                let p = ChainParam::from_global(&w[0], n).canonical(n);
                let a = arc(&p);
                (p, a)
            }
        };
        let hi_p = ChainParam::from_global(&w[1], n).canonical(n);
        let hi_a = arc(&hi_p);
        let mid = (&w[0] + &w[1]) / scalar_int(2);
        let pm = ChainParam::from_global(&mid, n);
        out.push(CertInterval {
            lo: lo.0,
            hi: hi_p.clone(),
            prefix: interior_neighbors(fwd, &pm),
            suffix: interior_neighbors(bwd, &pm),
            arc_lo: lo.1,
            arc_hi: hi_a.clone(),
        });
        prev = Some((hi_p, hi_a));
    }
    out
}
