//! Convex hulls of simple polylines via Melkman's deque algorithm.

use crate::chain::Chain2;
use crate::geom::{orient, Point2};
use num_traits::Signed;
use std::collections::VecDeque;

/// Convex hull boundary, counterclockwise and strictly convex. Degenerate
/// hulls (all points collinear) keep the two extreme points, or one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullPolygon {
    vertices: Vec<Point2>,
    degenerate: bool,
}

impl HullPolygon {
    /// Builds from an already-convex counterclockwise vertex cycle.
    pub(crate) fn from_ccw(vertices: Vec<Point2>) -> HullPolygon {
        let degenerate = vertices.len() < 3;
        HullPolygon::new(vertices, degenerate)
    }

    fn new(mut vertices: Vec<Point2>, degenerate: bool) -> HullPolygon {
        // canonical start: lexicographically smallest vertex
        if let Some(k) = (0..vertices.len())
            .min_by(|&i, &j| (&vertices[i].x, &vertices[i].y).cmp(&(&vertices[j].x, &vertices[j].y)))
        {
            vertices.rotate_left(k);
        }
        HullPolygon { vertices, degenerate }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn is_vertex(&self, q: &Point2) -> bool {
        self.vertices.iter().any(|v| v == q)
    }

    /// Closed membership.
    pub fn contains(&self, q: &Point2) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == q,
            2 => on_segment(&self.vertices[0], &self.vertices[1], q),
            _ => self.edge_signs(q).iter().all(|&s| s >= 0),
        }
    }

    /// Strict interior membership.
    pub fn contains_strict(&self, q: &Point2) -> bool {
        if self.vertices.len() < 3 {
            return false;
        }
        self.edge_signs(q).iter().all(|&s| s > 0)
    }

    fn edge_signs(&self, q: &Point2) -> Vec<i32> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], q))
            .collect()
    }

    /// Equality as a cyclic sequence.
    pub fn cycle_eq(&self, expected: &[Point2]) -> bool {
        let n = self.vertices.len();
        if n != expected.len() {
            return false;
        }
        (0..n).any(|s| (0..n).all(|i| self.vertices[(s + i) % n] == expected[i]))
    }
}

fn on_segment(a: &Point2, b: &Point2, q: &Point2) -> bool {
    if orient(a, b, q) != 0 {
        return false;
    }
    let d = a.dir_to(b);
    let t = a.dir_to(q).dot(&d);
    !t.is_negative() && t <= d.dot(&d)
}

/// Convex hull of the vertices of a validated chain, linear time.
pub fn melkman_hull(c: &Chain2) -> HullPolygon {
    melkman_path(c.vertices())
}

/// Convex hull of points that trace a simple polyline (edges meet only at
/// shared endpoints of consecutive segments). Every prefix of a validated
/// chain, with or without a trailing mid-edge point, satisfies this.
pub fn melkman_path(points: &[Point2]) -> HullPolygon {
    assert!(!points.is_empty());
    // Collinear prefix: simplicity forces monotone order along the line, so
    // the running endpoints are the extremes.
    let a = points[0].clone();
    let mut b: Option<Point2> = None;
    let mut start = points.len();
    for (i, p) in points.iter().enumerate().skip(1) {
        match &b {
            None => {
                if *p != a {
                    b = Some(p.clone());
                }
            }
            Some(bb) => {
                if orient(&a, bb, p) != 0 {
                    start = i;
                    break;
                }
                b = Some(p.clone());
            }
        }
    }
    let b = match b {
        None => return HullPolygon::new(vec![a], true),
        Some(b) => b,
    };
    if start == points.len() {
        return HullPolygon::new(vec![a, b], true);
    }

    let c = points[start].clone();
    let mut dq: VecDeque<Point2> = VecDeque::new();
    if orient(&a, &b, &c) > 0 {
        dq.extend([c.clone(), a, b, c]);
    } else {
        dq.extend([c.clone(), b, a, c]);
    }

    for p in &points[start + 1..] {
        let outside_front = orient(&dq[0], &dq[1], p) < 0;
        let outside_back = orient(&dq[dq.len() - 2], &dq[dq.len() - 1], p) < 0;
        if !outside_front && !outside_back {
            continue;
        }
        while dq.len() >= 2 && orient(p, &dq[0], &dq[1]) <= 0 {
            dq.pop_front();
        }
        while dq.len() >= 2 && orient(&dq[dq.len() - 2], &dq[dq.len() - 1], p) <= 0 {
            dq.pop_back();
        }
        dq.push_front(p.clone());
        dq.push_back(p.clone());
    }

    dq.pop_back();
    HullPolygon::new(dq.into(), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::validate_chain;

    fn pts(v: &[(i64, i64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::ints(x, y)).collect()
    }

    fn hull_of(v: &[(i64, i64)]) -> HullPolygon {
        melkman_hull(&validate_chain(pts(v)).unwrap())
    }

    #[test]
    fn zig_hull() {
        let h = hull_of(&[(0, 0), (2, 2), (0, 4), (2, 6)]);
        assert!(!h.is_degenerate());
        assert_eq!(h.vertices(), &pts(&[(0, 0), (2, 2), (2, 6), (0, 4)])[..]);
    }

    #[test]
    fn seg_hull_degenerate() {
        let h = hull_of(&[(0, 0), (0, 4)]);
        assert!(h.is_degenerate());
        assert_eq!(h.vertices(), &pts(&[(0, 0), (0, 4)])[..]);
    }

    #[test]
    fn spiral_hull() {
        let h = hull_of(&[(0, 0), (4, 0), (4, 4), (-4, 4), (-4, -4), (2, -4)]);
        assert!(h.cycle_eq(&pts(&[(4, 4), (-4, 4), (-4, -4), (2, -4), (4, 0)])));
    }

    #[test]
    fn collinear_path_hull() {
        let h = melkman_path(&pts(&[(0, 0), (1, 0), (3, 0)]));
        assert!(h.is_degenerate());
        assert_eq!(h.vertices(), &pts(&[(0, 0), (3, 0)])[..]);
        let single = melkman_path(&pts(&[(5, 5)]));
        assert_eq!(single.vertices(), &pts(&[(5, 5)])[..]);
    }

    #[test]
    fn strict_convexity() {
        for fixture in [
            vec![(0, 0), (2, 2), (0, 4), (2, 6)],
            vec![(0, 0), (4, 0), (4, 4), (-4, 4), (-4, -4), (2, -4)],
            vec![(0, 0), (1, 1), (2, 4), (3, 9)],
            vec![(10, 10), (10, -10), (0, 0), (0, 10), (50, 29)],
        ] {
            let h = hull_of(&fixture);
            let v = h.vertices();
            let n = v.len();
            for i in 0..n {
                assert!(
                    orient(&v[i], &v[(i + 1) % n], &v[(i + 2) % n]) > 0,
                    "non-strict turn in hull of {fixture:?}"
                );
            }
            for p in pts(&fixture) {
                assert!(h.contains(&p));
            }
        }
    }

    #[test]
    fn membership() {
        let h = hull_of(&[(0, 0), (2, 2), (0, 4), (2, 6)]);
        assert!(h.contains_strict(&Point2::ints(1, 3)));
        assert!(h.contains(&Point2::ints(0, 2)));
        assert!(!h.contains_strict(&Point2::ints(0, 2)));
        assert!(!h.contains(&Point2::ints(3, 3)));
        assert!(h.is_vertex(&Point2::ints(2, 6)));
        assert!(!h.is_vertex(&Point2::ints(1, 3)));

        let seg = hull_of(&[(0, 0), (0, 4)]);
        assert!(seg.contains(&Point2::ints(0, 2)));
        assert!(!seg.contains(&Point2::ints(1, 2)));
        assert!(!seg.contains_strict(&Point2::ints(0, 2)));
    }

    #[test]
    fn hook_hull_excludes_first_vertex() {
        // (10,10) sits strictly inside the hull of the other four vertices.
        let h = hull_of(&[(10, 10), (10, -10), (0, 0), (0, 10), (50, 29)]);
        assert!(!h.is_vertex(&Point2::ints(10, 10)));
        assert!(h.contains_strict(&Point2::ints(10, 10)));
        assert_eq!(h.vertices().len(), 4);
    }
}
