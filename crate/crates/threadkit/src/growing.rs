//! Incremental hull traversal: a point p sweeps the chain while the hull of
//! the swept part is maintained in a deque, emitting an event stream.
//!
//! The deque holds the hull vertices other than p, front-to-back, such that
//! p -> front ... back -> p is the counterclockwise hull cycle. The back
//! neighbor of p is the A-side anchor (a1), the front neighbor the B-side
//! anchor (b1). Between events the anchors are constant; pops happen at
//! exact rational roots of orientation functions that are affine in the
//! edge parameter. A vertex popped against a chain vertex is gone for good;
//! pops against the moving point additionally honor its velocity, so a
//! grazing touch that immediately restores convexity does not pop.
//!
//! When the deque holds two vertices and p crosses their line, the hull is
//! degenerate and its cycle reverses orientation instead of losing a vertex;
//! that shows up as a PopRight/PopLeft pair whose anchors swap sides.

use crate::chain::{Chain2, ChainParam, OutOfRange};
use crate::geom::{orient, orient_val, Dir2, Point2};
use crate::hull::HullPolygon;
use crate::scalar::Scalar;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassDirection {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// p reached a chain vertex (recorded for every vertex after the first).
    VertexArrival,
    /// The A-side neighbor a1 left its role at the back of the hull.
    PopRight,
    /// The B-side neighbor b1 left its role at the front of the hull.
    PopLeft,
    /// p crossed into the hull interior; the pass stops here.
    EntersHull,
}

/// Hull neighbors of p as 1-based chain vertex indices. a1/b1 coincide while
/// the swept part is a single segment. a2/b2 are the next vertices along the
/// hull when present; the cone test needs only a1/b1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchors {
    pub a1: usize,
    pub a2: Option<usize>,
    pub b1: usize,
    pub b2: Option<usize>,
}

/// One event of a pass. All events sharing a param carry the same
/// anchors_after: the state valid on the half-open interval that begins at
/// that param.
#[derive(Debug, Clone, PartialEq)]
pub struct HullEvent {
    pub param: ChainParam,
    pub kind: EventKind,
    pub anchors_after: Anchors,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PassOutcome {
    Completed(HullPolygon),
    Entered(ChainParam),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HullPass {
    pub direction: PassDirection,
    pub events: Vec<HullEvent>,
    pub outcome: PassOutcome,
    n: usize,
}

impl HullPass {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pop_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::PopRight | EventKind::PopLeft))
            .count()
    }
}

/// Hull neighbors at a param, or the degenerate state at the pass's own
/// start where the swept part is the single point p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullNeighbors {
    AtEndpoint,
    Neighbors { a1: usize, b1: usize },
}

struct Run<'a> {
    vs: &'a [Point2],
    dq: VecDeque<usize>,
    events: Vec<HullEvent>,
}

impl<'a> Run<'a> {
    fn pt(&self, i: usize) -> &'a Point2 {
        &self.vs[i - 1]
    }

    fn k(&self) -> usize {
        self.dq.len()
    }

    fn front(&self) -> &'a Point2 {
        self.pt(self.dq[0])
    }

    fn back(&self) -> &'a Point2 {
        self.pt(self.dq[self.k() - 1])
    }

    fn anchors(&self) -> Anchors {
        let k = self.k();
        Anchors {
            a1: self.dq[k - 1],
            a2: (k >= 2).then(|| self.dq[k - 2]),
            b1: self.dq[0],
            b2: (k >= 2).then(|| self.dq[1]),
        }
    }

    /// Records all pending events at one param with the settled anchors.
    fn flush(&mut self, param: &ChainParam, kinds: &[EventKind]) {
        let snap = self.anchors();
        for &kind in kinds {
            self.events.push(HullEvent {
                param: param.clone(),
                kind,
                anchors_after: snap,
            });
        }
    }

    /// Melkman pops against a point that joins the hull permanently. Only
    /// valid when `v` lies strictly outside the current hull; then the k = 2
    /// floor is never reached with a wrong pop because the closing triple
    /// keeps a strict orientation.
    fn settle_static(&mut self, v: &Point2, pending: &mut Vec<EventKind>) {
        while self.k() >= 2 {
            let k = self.k();
            if orient(self.pt(self.dq[k - 2]), self.pt(self.dq[k - 1]), v) <= 0 {
                self.dq.pop_back();
                pending.push(EventKind::PopRight);
            } else {
                break;
            }
        }
        while self.k() >= 2 {
            if orient(v, self.pt(self.dq[0]), self.pt(self.dq[1])) <= 0 {
                self.dq.pop_front();
                pending.push(EventKind::PopLeft);
            } else {
                break;
            }
        }
    }

    /// Pops against the transient moving point at `pos` heading along `d`:
    /// an exactly collinear triple survives if convexity is restored
    /// immediately (positive derivative), otherwise the vertex pops. Two
    /// remaining vertices never pop; if p sits on their line about to cross
    /// it, the degenerate hull cycle reverses instead.
    fn settle_moving(&mut self, pos: &Point2, d: &Dir2, pending: &mut Vec<EventKind>) {
        while self.k() >= 3 {
            let k = self.k();
            let a = self.pt(self.dq[k - 2]);
            let b = self.pt(self.dq[k - 1]);
            let val = orient_val(a, b, pos);
            let pop = val.is_negative()
                || (val.is_zero() && !a.dir_to(b).cross(d).is_positive());
            if pop {
                self.dq.pop_back();
                pending.push(EventKind::PopRight);
            } else {
                break;
            }
        }
        while self.k() >= 3 {
            let x1 = self.pt(self.dq[0]);
            let x2 = self.pt(self.dq[1]);
            let val = orient_val(pos, x1, x2);
            let pop = val.is_negative()
                || (val.is_zero() && !d.cross(&x2.dir_to(x1)).is_positive());
            if pop {
                self.dq.pop_front();
                pending.push(EventKind::PopLeft);
            } else {
                break;
            }
        }
        if self.k() == 2 {
            let val = orient_val(self.front(), self.back(), pos);
            debug_assert!(!val.is_negative(), "moving point left the hull wedge");
            if val.is_zero() && self.front().dir_to(self.back()).cross(d).is_negative() {
                self.dq.swap(0, 1);
                pending.push(EventKind::PopRight);
                pending.push(EventKind::PopLeft);
            }
        }
    }

    /// True iff leaving the strict hull vertex `v` along `d` heads strictly
    /// into the hull interior. Call only after settling, when `v` is a
    /// strict vertex of the swept hull.
    fn enters_interior(&self, v: &Point2, d: &Dir2) -> bool {
        debug_assert!(orient(self.back(), v, self.front()) > 0);
        let r1 = v.dir_to(self.front());
        let rk = v.dir_to(self.back());
        r1.cross(d).is_positive() && d.cross(&rk).is_positive()
    }

    /// Splices the arrived vertex into the deque on the side matching the
    /// departure direction, dropping it silently when the moving point
    /// immediately dominates it (it was never a hull vertex on any open
    /// interval, so no event is recorded).
    fn insert_vertex(&mut self, i1: usize, v: &Point2, d_next: &Dir2) {
        let r1 = v.dir_to(self.front());
        let s = d_next.cross(&r1);
        if self.k() == 1 && s.is_zero() {
            // Collinear with the only hull vertex: heading back keeps v as
            // the far extreme, heading away makes v an interior point.
            if d_next.dot(&r1).is_positive() {
                self.dq.push_back(i1);
            }
            return;
        }
        if !s.is_negative() {
            self.dq.push_back(i1);
            let prev = self.pt(self.dq[self.k() - 2]);
            if !prev.dir_to(v).cross(d_next).is_positive() {
                self.dq.pop_back();
            }
        } else {
            self.dq.push_front(i1);
            let nxt = self.pt(self.dq[1]);
            if !d_next.cross(&nxt.dir_to(v)).is_positive() {
                self.dq.pop_front();
            }
        }
    }
}

fn run(c: &Chain2) -> (Vec<HullEvent>, PassOutcome) {
    let vs = c.vertices();
    let n = vs.len();
    let mut r = Run {
        vs,
        dq: VecDeque::from([1usize]),
        events: Vec::new(),
    };

    for i in 1..n {
        let (ea, eb) = (&vs[i - 1], &vs[i]);
        let d = ea.dir_to(eb);

        // In-edge events at exact roots of the affine boundary functions.
        let mut t_cur = Scalar::zero();
        while r.k() >= 2 {
            if r.k() == 2 {
                // Degenerate hull: the single function orient(x1, xk, p)
                // guards all three seams at once. Crossing its line reverses
                // the cycle; no vertex is lost.
                let (x1, xk) = (r.front(), r.back());
                let f1 = orient_val(x1, xk, eb);
                if !f1.is_negative() {
                    break;
                }
                let f0 = orient_val(x1, xk, ea);
                debug_assert!(!f0.is_negative());
                t_cur = &f0 / (&f0 - &f1);
                let param = ChainParam::new(i, t_cur.clone());
                r.dq.swap(0, 1);
                r.flush(&param, &[EventKind::PopRight, EventKind::PopLeft]);
                continue;
            }

            let k = r.k();
            let x1 = r.pt(r.dq[0]);
            let x2 = r.pt(r.dq[1]);
            let xk1 = r.pt(r.dq[k - 2]);
            let xk = r.pt(r.dq[k - 1]);
            let cands = [
                (orient_val(xk1, xk, ea), orient_val(xk1, xk, eb), EventKind::PopRight),
                (orient_val(ea, x1, x2), orient_val(eb, x1, x2), EventKind::PopLeft),
                (orient_val(xk, ea, x1), orient_val(xk, eb, x1), EventKind::EntersHull),
            ];
            let mut best: Option<(Scalar, EventKind)> = None;
            for (f0, f1, kind) in cands {
                if !f1.is_negative() {
                    continue;
                }
                let t = &f0 / (&f0 - &f1);
                if t < t_cur {
                    continue;
                }
                if best.as_ref().map_or(true, |(bt, _)| t < *bt) {
                    best = Some((t, kind));
                }
            }
            let Some((t, kind)) = best else { break };
            t_cur = t;
            let param = ChainParam::new(i, t_cur.clone());
            if kind == EventKind::EntersHull {
                let param = param.canonical(n);
                r.flush(&param, &[EventKind::EntersHull]);
                return (r.events, PassOutcome::Entered(param));
            }
            let pos = c.point_at(&param).expect("param lies on edge");
            if kind == EventKind::PopRight {
                r.dq.pop_back();
            } else {
                r.dq.pop_front();
            }
            let mut pending = vec![kind];
            r.settle_moving(&pos, &d, &mut pending);
            r.flush(&param, &pending);
        }

        // Arrival at vertex i+1.
        let v = &vs[i];
        let param = ChainParam::at_vertex(i + 1, n);
        if i + 1 == n {
            let mut pending = vec![EventKind::VertexArrival];
            let on_boundary = r.k() >= 2 && orient(r.back(), v, r.front()) == 0;
            if !on_boundary {
                r.settle_static(v, &mut pending);
            }
            r.flush(&param, &pending);
            break;
        }

        let d_next = v.dir_to(&vs[i + 1]);
        if r.k() == 1 {
            r.insert_vertex(i + 1, v, &d_next);
            r.flush(&param, &[EventKind::VertexArrival]);
            continue;
        }

        let ge = orient(r.back(), v, r.front());
        debug_assert!(ge >= 0, "arrival inside the hull was not detected on the edge");
        if ge == 0 {
            // v lies on the closing segment: the hull is unchanged and v is
            // no vertex of it. Entering is crossing to the body side, which
            // a two-vertex hull does not have.
            let enters = r.k() >= 3 && r.back().dir_to(r.front()).cross(&d_next).is_positive();
            if enters {
                r.flush(&param, &[EventKind::EntersHull]);
                return (r.events, PassOutcome::Entered(param));
            }
            r.flush(&param, &[EventKind::VertexArrival]);
            continue;
        }

        let mut pops = Vec::new();
        r.settle_static(v, &mut pops);
        if r.k() >= 2 && r.enters_interior(v, &d_next) {
            pops.push(EventKind::EntersHull);
            r.flush(&param, &pops);
            return (r.events, PassOutcome::Entered(param));
        }
        let mut pending = vec![EventKind::VertexArrival];
        pending.extend(pops);
        r.insert_vertex(i + 1, v, &d_next);
        r.flush(&param, &pending);
    }

    // Completed: assemble the final hull from the deque plus the last vertex.
    let last = &vs[n - 1];
    let hull = if r.k() == 1 {
        HullPolygon::from_ccw(vec![r.front().clone(), last.clone()])
    } else {
        let mut cycle: Vec<Point2> = Vec::with_capacity(r.k() + 1);
        if orient(r.back(), last, r.front()) != 0 {
            cycle.push(last.clone());
        }
        cycle.extend(r.dq.iter().map(|&j| r.pt(j).clone()));
        HullPolygon::from_ccw(cycle)
    };
    (r.events, PassOutcome::Completed(hull))
}

pub fn growing_pass(c: &Chain2, direction: PassDirection) -> HullPass {
    let n = c.n();
    match direction {
        PassDirection::Forward => {
            let (events, outcome) = run(c);
            HullPass {
                direction,
                events,
                outcome,
                n,
            }
        }
        PassDirection::Backward => {
            let rc = c.reverse();
            let (mut events, outcome) = run(&rc);
            let flip = |j: usize| n + 1 - j;
            for e in &mut events {
                e.param = e.param.reversed(n).canonical(n);
                e.anchors_after = Anchors {
                    a1: flip(e.anchors_after.a1),
                    a2: e.anchors_after.a2.map(flip),
                    b1: flip(e.anchors_after.b1),
                    b2: e.anchors_after.b2.map(flip),
                };
            }
            let outcome = match outcome {
                PassOutcome::Completed(h) => PassOutcome::Completed(h),
                PassOutcome::Entered(p) => PassOutcome::Entered(p.reversed(n).canonical(n)),
            };
            HullPass {
                direction,
                events,
                outcome,
                n,
            }
        }
    }
}

/// Hull neighbors of p at an exact param: the state after the latest event
/// the pass processed strictly before reaching p. At an event param this is
/// still correct, because every replacement that fires exactly there keeps
/// the boundary rays of the cone (the points involved are collinear with p).
pub fn anchors_at(pass: &HullPass, p: &ChainParam) -> Result<HullNeighbors, OutOfRange> {
    let n = pass.n;
    let g = p.global();
    let end = Scalar::from_integer((n as i64 - 1).into());
    if g.is_negative() || g > end {
        return Err(OutOfRange(format!("param {p} outside chain")));
    }
    match pass.direction {
        PassDirection::Forward => {
            if let PassOutcome::Entered(ep) = &pass.outcome {
                if g >= ep.global() {
                    return Err(OutOfRange(format!("param {p} at or past hull entry at {ep}")));
                }
            }
            if g.is_zero() {
                return Ok(HullNeighbors::AtEndpoint);
            }
            let idx = pass.events.partition_point(|e| e.param.global() < g);
            Ok(match idx {
                0 => HullNeighbors::Neighbors { a1: 1, b1: 1 },
                _ => {
                    let a = pass.events[idx - 1].anchors_after;
                    HullNeighbors::Neighbors { a1: a.a1, b1: a.b1 }
                }
            })
        }
        PassDirection::Backward => {
            if let PassOutcome::Entered(ep) = &pass.outcome {
                if g <= ep.global() {
                    return Err(OutOfRange(format!("param {p} at or past hull entry at {ep}")));
                }
            }
            if g == end {
                return Ok(HullNeighbors::AtEndpoint);
            }
            let idx = pass.events.partition_point(|e| e.param.global() > g);
            Ok(match idx {
                0 => HullNeighbors::Neighbors { a1: n, b1: n },
                _ => {
                    let a = pass.events[idx - 1].anchors_after;
                    HullNeighbors::Neighbors { a1: a.a1, b1: a.b1 }
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::validate_chain;
    use crate::hull::melkman_hull;
    use crate::scalar::{scalar_int, scalar_ratio};

    fn chain(pts: &[(i64, i64)]) -> Chain2 {
        validate_chain(pts.iter().map(|&(x, y)| Point2::ints(x, y)).collect()).unwrap()
    }

    fn zig() -> Chain2 {
        chain(&[(0, 0), (2, 2), (0, 4), (2, 6)])
    }

    fn spiral() -> Chain2 {
        chain(&[(0, 0), (4, 0), (4, 4), (-4, 4), (-4, -4), (2, -4)])
    }

    fn hook() -> Chain2 {
        chain(&[(10, 10), (10, -10), (0, 0), (0, 10), (50, 29)])
    }

    #[test]
    fn seg_forward() {
        let c = chain(&[(0, 0), (0, 4)]);
        let pass = growing_pass(&c, PassDirection::Forward);
        assert_eq!(pass.events.len(), 1);
        assert_eq!(pass.events[0].kind, EventKind::VertexArrival);
        assert_eq!(pass.events[0].param, ChainParam::new(1, scalar_int(1)));
        match &pass.outcome {
            PassOutcome::Completed(h) => assert!(h.is_degenerate()),
            other => panic!("expected completion, got {other:?}"),
        }
    }

    #[test]
    fn zig_forward_no_pops() {
        let pass = growing_pass(&zig(), PassDirection::Forward);
        assert_eq!(pass.pop_count(), 0);
        match &pass.outcome {
            PassOutcome::Completed(h) => assert_eq!(h, &melkman_hull(&zig())),
            other => panic!("expected completion, got {other:?}"),
        }
        let arrivals = pass
            .events
            .iter()
            .filter(|e| e.kind == EventKind::VertexArrival)
            .count();
        assert_eq!(arrivals, 3);
    }

    #[test]
    fn spiral_forward_completes() {
        let pass = growing_pass(&spiral(), PassDirection::Forward);
        match &pass.outcome {
            PassOutcome::Completed(h) => assert_eq!(h, &melkman_hull(&spiral())),
            other => panic!("expected completion, got {other:?}"),
        }
        // the start vertex leaves the hull where the descending edge 4
        // crosses the line through v1 and v2, at (-4, 0)
        let pops: Vec<_> = pass
            .events
            .iter()
            .filter(|e| e.kind == EventKind::PopLeft)
            .collect();
        assert_eq!(pops.len(), 1);
        assert_eq!(pops[0].param, ChainParam::new(4, scalar_ratio(1, 2)));
        assert_eq!(pops[0].anchors_after.b1, 2);
    }

    #[test]
    fn spiral_backward_enters() {
        let pass = growing_pass(&spiral(), PassDirection::Backward);
        match &pass.outcome {
            PassOutcome::Entered(p) => assert_eq!(*p, ChainParam::new(2, scalar_int(0))),
            other => panic!("expected entry, got {other:?}"),
        }
        assert_eq!(pass.events.last().unwrap().kind, EventKind::EntersHull);
    }

    #[test]
    fn zig_anchors_at_vertex_3() {
        let pass = growing_pass(&zig(), PassDirection::Forward);
        let at = anchors_at(&pass, &ChainParam::new(3, scalar_int(0))).unwrap();
        assert_eq!(at, HullNeighbors::Neighbors { a1: 2, b1: 1 });
    }

    #[test]
    fn hook_anchors_at_vertex_3() {
        let pass = growing_pass(&hook(), PassDirection::Forward);
        let at = anchors_at(&pass, &ChainParam::new(3, scalar_int(0))).unwrap();
        assert_eq!(at, HullNeighbors::Neighbors { a1: 1, b1: 2 });
    }

    #[test]
    fn seg_anchors_mid_edge() {
        let c = chain(&[(0, 0), (0, 4)]);
        let pass = growing_pass(&c, PassDirection::Forward);
        let at = anchors_at(&pass, &ChainParam::new(1, scalar_ratio(1, 2))).unwrap();
        assert_eq!(at, HullNeighbors::Neighbors { a1: 1, b1: 1 });
        assert_eq!(
            anchors_at(&pass, &ChainParam::new(1, scalar_int(0))).unwrap(),
            HullNeighbors::AtEndpoint
        );
    }

    #[test]
    fn backward_is_forward_of_reversed() {
        for c in [zig(), spiral(), chain(&[(0, 0), (1, 1), (2, 4), (3, 9)])] {
            let n = c.n();
            let bwd = growing_pass(&c, PassDirection::Backward);
            let fwd_rev = growing_pass(&c.reverse(), PassDirection::Forward);
            assert_eq!(bwd.events.len(), fwd_rev.events.len());
            for (b, f) in bwd.events.iter().zip(&fwd_rev.events) {
                assert_eq!(b.kind, f.kind);
                assert_eq!(b.param, f.param.reversed(n).canonical(n));
            }
        }
    }

    #[test]
    fn event_bound_and_param_order() {
        for c in [zig(), spiral(), hook()] {
            for dir in [PassDirection::Forward, PassDirection::Backward] {
                let pass = growing_pass(&c, dir);
                assert!(pass.events.len() <= 3 * c.n());
                let params: Vec<_> = pass.events.iter().map(|e| e.param.global()).collect();
                match pass.direction {
                    PassDirection::Forward => {
                        assert!(params.windows(2).all(|w| w[0] <= w[1]));
                    }
                    PassDirection::Backward => {
                        assert!(params.windows(2).all(|w| w[0] >= w[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn mid_edge_pop_has_rational_param() {
        // The long descending edge 5 crosses the line through v1, v2 at
        // (-1, 0), a quarter of the way down, where v1 stops being a hull
        // vertex.
        let c = chain(&[(0, 0), (4, 0), (4, 4), (0, 4), (-1, 2), (-1, -6)]);
        let pass = growing_pass(&c, PassDirection::Forward);
        match &pass.outcome {
            PassOutcome::Completed(h) => assert_eq!(h, &melkman_hull(&c)),
            other => panic!("expected completion, got {other:?}"),
        }
        let pops: Vec<_> = pass
            .events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::PopRight | EventKind::PopLeft))
            .collect();
        assert_eq!(pops.len(), 1);
        assert_eq!(pops[0].kind, EventKind::PopLeft);
        assert_eq!(pops[0].param, ChainParam::new(5, scalar_ratio(1, 4)));
    }

    #[test]
    fn grazing_line_crossing_swaps_orientation() {
        // After v2 the hull is the segment v1-v2; edge 2 descends through
        // their line at (2, 0), where the degenerate cycle reverses without
        // losing either vertex.
        let c = chain(&[(0, 0), (4, 2), (2, 0), (0, -4)]);
        let pass = growing_pass(&c, PassDirection::Forward);
        match &pass.outcome {
            PassOutcome::Completed(h) => assert_eq!(h, &melkman_hull(&c)),
            other => panic!("expected completion, got {other:?}"),
        }
    }
}
