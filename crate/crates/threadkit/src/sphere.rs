//! Convex geodesic polygons on the unit sphere, and the polygon of outward
//! face normals at a hull vertex. Node coordinates are double precision;
//! exactness lives in the callers that derive and verify the regions.

use crate::geom3::{Point3, Vec3};
use crate::hull3::Hull3;
use num_traits::Signed;
use std::collections::HashSet;

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn unit3(a: [f64; 3]) -> [f64; 3] {
    let n = dot3(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

pub(crate) fn neg3(a: [f64; 3]) -> [f64; 3] {
    [-a[0], -a[1], -a[2]]
}

/// Convex region on the unit sphere bounded by minor great-circle arcs
/// between consecutive nodes, with the interior on the left of each
/// directed arc. Lunes and hemispheres appear as limiting cases whose
/// nodes span a full great circle.
#[derive(Debug, Clone)]
pub struct SphericalPolygon {
    nodes: Vec<[f64; 3]>,
}

impl SphericalPolygon {
    /// Builds from nodes in cyclic boundary order (either direction),
    /// normalizing and orienting so `interior` lies inside.
    pub(crate) fn from_nodes(nodes: Vec<[f64; 3]>, interior: [f64; 3]) -> SphericalPolygon {
        debug_assert!(nodes.len() >= 2);
        let mut nodes: Vec<[f64; 3]> = nodes.into_iter().map(unit3).collect();
        let m = nodes.len();
        let winding: f64 = (0..m)
            .map(|i| dot3(cross3(nodes[i], nodes[(i + 1) % m]), interior))
            .sum();
        if winding < 0.0 {
            nodes.reverse();
        }
        SphericalPolygon { nodes }
    }

    /// Nodes in cyclic order, unit length, interior on the left of each arc.
    pub fn nodes(&self) -> &[[f64; 3]] {
        &self.nodes
    }

    /// Normalized mean of the nodes. None when the nodes cancel out, as
    /// they do for hemispheres and other great-circle boundaries.
    pub fn centroid(&self) -> Option<[f64; 3]> {
        let mut s = [0.0; 3];
        for n in &self.nodes {
            s[0] += n[0];
            s[1] += n[1];
            s[2] += n[2];
        }
        if dot3(s, s).sqrt() < 1e-9 {
            None
        } else {
            Some(unit3(s))
        }
    }

    /// Whether the direction lies in the region, within tolerance.
    pub fn contains(&self, d: [f64; 3], tol: f64) -> bool {
        let m = self.nodes.len();
        (0..m).all(|i| dot3(cross3(self.nodes[i], self.nodes[(i + 1) % m]), unit3(d)) >= -tol)
    }

    /// Convexity: every node on the interior side of every arc's great
    /// circle, within tolerance.
    pub fn is_convex(&self, tol: f64) -> bool {
        let m = self.nodes.len();
        (0..m).all(|i| {
            let e = cross3(self.nodes[i], self.nodes[(i + 1) % m]);
            self.nodes.iter().all(|n| dot3(e, *n) >= -tol)
        })
    }

    /// Whether some open hemisphere holds every node strictly. The pole is
    /// searched as a sum of boundary rays of the dual cone {h : h.n >= 0},
    /// which reaches poles the node mean misses on wide cones.
    pub fn fits_in_open_hemisphere(&self) -> bool {
        if let Some(c) = self.centroid() {
            if self.nodes.iter().all(|n| dot3(*n, c) > 0.0) {
                return true;
            }
        }
        let m = self.nodes.len();
        let mut sum = [0.0; 3];
        for i in 0..m {
            for j in (i + 1)..m {
                let c = cross3(self.nodes[i], self.nodes[j]);
                if dot3(c, c) < 1e-24 {
                    continue;
                }
                for cand in [unit3(c), neg3(unit3(c))] {
                    if self.nodes.iter().all(|n| dot3(*n, cand) >= -1e-12) {
                        sum = [sum[0] + cand[0], sum[1] + cand[1], sum[2] + cand[2]];
                    }
                }
            }
        }
        dot3(sum, sum) > 1e-12 && self.nodes.iter().all(|n| dot3(*n, sum) > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("point is not a vertex of the hull")]
pub struct NotAVertex;

/// Geodesic polygon of the outward normals of the faces around a hull
/// vertex. Any interior direction is the normal of a plane supporting the
/// hull at exactly that vertex. Flat hulls yield the limiting lune between
/// the two polygon edges at the vertex, cornered at the plane's two poles.
pub fn tangent_cone_sphere(h: &Hull3, p: &Point3) -> Result<SphericalPolygon, NotAVertex> {
    let idx = h.vertex_index(p).ok_or(NotAVertex)?;
    if let Some(normal) = h.plane_normal() {
        return Ok(flat_vertex_lune(h, idx, normal));
    }
    let mut seen: HashSet<Vec3> = HashSet::new();
    let mut normals: Vec<[f64; 3]> = Vec::new();
    for (k, f) in h.faces().iter().enumerate() {
        if !f.contains(&idx) {
            continue;
        }
        let n = h.face_normal(k).canonical();
        if seen.insert(n.clone()) {
            normals.push(n.unit_f64());
        }
    }
    debug_assert!(normals.len() >= 3, "full-rank hull vertex has >= 3 planes");
    let axis = unit3(normals.iter().fold([0.0; 3], |s, n| {
        [s[0] + n[0], s[1] + n[1], s[2] + n[2]]
    }));
    let (u, v) = tangent_basis(axis);
    normals.sort_by(|a, b| {
        let ta = dot3(*a, v).atan2(dot3(*a, u));
        let tb = dot3(*b, v).atan2(dot3(*b, u));
        ta.partial_cmp(&tb).expect("finite angles")
    });
    Ok(SphericalPolygon::from_nodes(normals, axis))
}

/// Supporting normals of a flat hull at polygon corner idx: the lune
/// satisfying n . e < 0 for the two polygon edge directions e at the
/// corner, with corners at the plane's poles.
fn flat_vertex_lune(h: &Hull3, idx: usize, normal: &Vec3) -> SphericalPolygon {
    let m = h.vertices().len();
    let p = &h.vertices()[idx];
    let e1 = p.dir_to(&h.vertices()[(idx + 1) % m]);
    let e2 = p.dir_to(&h.vertices()[(idx + m - 1) % m]);
    let c = normal.unit_f64();
    let mid = |e: &Vec3, other: &Vec3| {
        let candidate = normal.cross(e);
        let candidate = if candidate.dot(other).is_positive() {
            candidate.neg()
        } else {
            candidate
        };
        candidate.unit_f64()
    };
    let m1 = mid(&e1, &e2);
    let m2 = mid(&e2, &e1);
    let interior = unit3([
        -(e1.unit_f64()[0] + e2.unit_f64()[0]),
        -(e1.unit_f64()[1] + e2.unit_f64()[1]),
        -(e1.unit_f64()[2] + e2.unit_f64()[2]),
    ]);
    SphericalPolygon::from_nodes(vec![c, m1, neg3(c), m2], interior)
}

/// Orthonormal pair spanning the plane perpendicular to a unit axis.
pub(crate) fn tangent_basis(axis: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let pick = if axis[0].abs() <= axis[1].abs() && axis[0].abs() <= axis[2].abs() {
        [1.0, 0.0, 0.0]
    } else if axis[1].abs() <= axis[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let u = unit3(cross3(pick, axis));
    let v = cross3(axis, u);
    (u, v)
}
