//! Exact convex hulls of 3D point sets by incremental insertion.

use crate::geom::{orient, Point2};
use crate::geom3::{dominant_axis, orient3d, project_axis, Point3, Vec3};
use crate::scalar::scalar_ratio;
use num_traits::Signed;
use std::collections::{BTreeSet, HashMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Hull3Error {
    #[error("hull needs at least 4 distinct points spanning more than a line")]
    Degenerate,
}

/// Convex hull of a 3D point set as an outward-oriented triangulated
/// boundary. Coplanar input degenerates to a flagged flat hull: the convex
/// polygon of the points, fan-triangulated toward its stored plane normal,
/// with only that one side listed.
#[derive(Debug, Clone)]
pub struct Hull3 {
    vertices: Vec<Point3>,
    faces: Vec<[usize; 3]>,
    plane: Option<Vec3>,
}

impl Hull3 {
    /// Corner points referenced by the face list, in input order. In exactly
    /// coplanar insertion orders a corner may subdivide a larger facet
    /// rather than be extreme; extreme points are always present.
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    /// Outward-oriented triangles as index triples into `vertices`.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn is_flat(&self) -> bool {
        self.plane.is_some()
    }

    /// Plane normal of a flat hull, primitive and exact.
    pub fn plane_normal(&self) -> Option<&Vec3> {
        self.plane.as_ref()
    }

    /// Outward normal of face k, exact and unnormalized.
    pub fn face_normal(&self, k: usize) -> Vec3 {
        let [a, b, c] = self.faces[k];
        self.vertices[a]
            .dir_to(&self.vertices[b])
            .cross(&self.vertices[a].dir_to(&self.vertices[c]))
    }

    pub fn vertex_index(&self, p: &Point3) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn is_vertex(&self, p: &Point3) -> bool {
        self.vertex_index(p).is_some()
    }

    /// Number of distinct undirected edges of the triangulation.
    pub fn edge_count(&self) -> usize {
        let mut edges = BTreeSet::new();
        for f in &self.faces {
            for (u, v) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                edges.insert((u.min(v), u.max(v)));
            }
        }
        edges.len()
    }

    /// Exact containment against every face halfspace; for flat hulls,
    /// coplanarity plus 2D polygon containment.
    pub fn contains(&self, p: &Point3) -> bool {
        match &self.plane {
            None => self.faces.iter().all(|f| {
                orient3d(
                    &self.vertices[f[0]],
                    &self.vertices[f[1]],
                    &self.vertices[f[2]],
                    p,
                ) <= 0
            }),
            Some(normal) => {
                let [a, b, c] = self.faces[0];
                if orient3d(&self.vertices[a], &self.vertices[b], &self.vertices[c], p) != 0 {
                    return false;
                }
                let axis = dominant_axis(normal);
                let q = project_axis(p, axis);
                let poly: Vec<Point2> =
                    self.vertices.iter().map(|v| project_axis(v, axis)).collect();
                let m = poly.len();
                (0..m).all(|i| orient(&poly[i], &poly[(i + 1) % m], &q) >= 0)
            }
        }
    }
}

/// Exact convex hull. Errors on inputs spanning at most a line; coplanar
/// inputs produce the flagged flat hull.
pub fn hull3(points: &[Point3]) -> Result<Hull3, Hull3Error> {
    let mut pts: Vec<Point3> = Vec::with_capacity(points.len());
    let mut seen: HashSet<Point3> = HashSet::with_capacity(points.len());
    for p in points {
        if seen.insert(p.clone()) {
            pts.push(p.clone());
        }
    }
    if pts.len() < 4 {
        return Err(Hull3Error::Degenerate);
    }
    let j2 = (2..pts.len())
        .find(|&j| !pts[0].dir_to(&pts[1]).cross(&pts[0].dir_to(&pts[j])).is_zero())
        .ok_or(Hull3Error::Degenerate)?;
    let j3 = (2..pts.len())
        .find(|&j| j != j2 && orient3d(&pts[0], &pts[1], &pts[j2], &pts[j]) != 0);
    match j3 {
        None => Ok(flat_hull(&pts, j2)),
        Some(j3) => Ok(full_hull(&pts, j2, j3)),
    }
}

/// Convex polygon of coplanar points, strict extremes only, as a flat hull.
fn flat_hull(pts: &[Point3], j2: usize) -> Hull3 {
    let mut normal = pts[0]
        .dir_to(&pts[1])
        .cross(&pts[0].dir_to(&pts[j2]))
        .canonical();
    let axis = dominant_axis(&normal);
    let comp = match axis {
        0 => &normal.dx,
        1 => &normal.dy,
        _ => &normal.dz,
    };
    if comp.is_negative() {
        normal = normal.neg();
    }
    let projected: Vec<(usize, Point2)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (i, project_axis(p, axis)))
        .collect();
    let polygon = convex_polygon_ccw(projected);
    let vertices: Vec<Point3> = polygon.iter().map(|&i| pts[i].clone()).collect();
    let faces: Vec<[usize; 3]> = (1..vertices.len() - 1).map(|i| [0, i, i + 1]).collect();
    Hull3 {
        vertices,
        faces,
        plane: Some(normal),
    }
}

/// Andrew's monotone chain on exact coordinates; returns indices of the
/// strict extreme points in counterclockwise order.
fn convex_polygon_ccw(mut pts: Vec<(usize, Point2)>) -> Vec<usize> {
    pts.sort_by(|a, b| (&a.1.x, &a.1.y).cmp(&(&b.1.x, &b.1.y)));
    fn build<'a>(iter: impl Iterator<Item = &'a (usize, Point2)>) -> Vec<&'a (usize, Point2)> {
        let mut chain: Vec<&(usize, Point2)> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && orient(&chain[chain.len() - 2].1, &chain[chain.len() - 1].1, &p.1) <= 0
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    }
    let lower = build(pts.iter());
    let upper = build(pts.iter().rev());
    let mut out: Vec<usize> = lower[..lower.len() - 1].iter().map(|p| p.0).collect();
    out.extend(upper[..upper.len() - 1].iter().map(|p| p.0));
    out
}

fn full_hull(pts: &[Point3], j2: usize, j3: usize) -> Hull3 {
    let (mut a, mut b, c, d) = (0usize, 1usize, j2, j3);
    if orient3d(&pts[a], &pts[b], &pts[c], &pts[d]) > 0 {
        std::mem::swap(&mut a, &mut b);
    }
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for (f, opp) in [
        ([a, b, c], d),
        ([a, b, d], c),
        ([a, c, d], b),
        ([b, c, d], a),
    ] {
        faces.push(oriented_against(pts, f, &pts[opp]));
    }
    let quarter = scalar_ratio(1, 4);
    let interior = Point3::new(
        (&pts[a].x + &pts[b].x + &pts[c].x + &pts[d].x) * &quarter,
        (&pts[a].y + &pts[b].y + &pts[c].y + &pts[d].y) * &quarter,
        (&pts[a].z + &pts[b].z + &pts[c].z + &pts[d].z) * &quarter,
    );
    let seed = [a, b, c, d];
    for q in 0..pts.len() {
        if seed.contains(&q) {
            continue;
        }
        insert_point(pts, &mut faces, &interior, q);
    }
    // Compact to the referenced corners, preserving input order.
    let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices: Vec<Point3> = used.iter().map(|&i| pts[i].clone()).collect();
    let faces = faces
        .into_iter()
        .map(|f| [remap[&f[0]], remap[&f[1]], remap[&f[2]]])
        .collect();
    Hull3 {
        vertices,
        faces,
        plane: None,
    }
}

/// Face with the reference point strictly behind it, i.e. outward-oriented.
fn oriented_against(pts: &[Point3], f: [usize; 3], behind: &Point3) -> [usize; 3] {
    if orient3d(&pts[f[0]], &pts[f[1]], &pts[f[2]], behind) > 0 {
        [f[0], f[2], f[1]]
    } else {
        f
    }
}

/// One insertion step: removes the faces that strictly see q and cones q
/// over the horizon. Points on or inside the current hull are dropped; a
/// point of the final hull can never hide there, since the current corner
/// set does not include q.
fn insert_point(pts: &[Point3], faces: &mut Vec<[usize; 3]>, interior: &Point3, q: usize) {
    let visible: Vec<bool> = faces
        .iter()
        .map(|f| orient3d(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[q]) > 0)
        .collect();
    if !visible.iter().any(|&v| v) {
        return;
    }
    let mut owner: HashMap<(usize, usize), usize> = HashMap::with_capacity(faces.len() * 3);
    for (k, f) in faces.iter().enumerate() {
        for (u, v) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
            owner.insert((u, v), k);
        }
    }
    let mut next: Vec<[usize; 3]> = Vec::new();
    for (k, f) in faces.iter().enumerate() {
        if !visible[k] {
            next.push(*f);
            continue;
        }
        for (u, v) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
            let across = owner[&(v, u)];
            if !visible[across] {
                next.push(oriented_against(pts, [u, v, q], interior));
            }
        }
    }
    *faces = next;
}
