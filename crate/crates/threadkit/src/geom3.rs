//! Spatial points, directions, exact predicates, and validated 3D chains.

use crate::chain::{ChainError, ChainParam, OutOfRange};
use crate::geom::{segments_intersect, Point2};
use crate::scalar::{format_scalar, scalar_int, scalar_to_f64, Scalar};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Point3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Point3 { x, y, z }
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(scalar_int(x), scalar_int(y), scalar_int(z))
    }

    /// Direction from `self` to `other`. Zero only if the points coincide.
    pub fn dir_to(&self, other: &Point3) -> Vec3 {
        Vec3 {
            dx: &other.x - &self.x,
            dy: &other.y - &self.y,
            dz: &other.z - &self.z,
        }
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_scalar(&self.x),
            format_scalar(&self.y),
            format_scalar(&self.z)
        )
    }
}

/// Direction vector compared by ray; magnitude carries no meaning. Must be
/// nonzero wherever it denotes a direction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vec3 {
    pub dx: Scalar,
    pub dy: Scalar,
    pub dz: Scalar,
}

impl Vec3 {
    pub fn new(dx: Scalar, dy: Scalar, dz: Scalar) -> Self {
        Vec3 { dx, dy, dz }
    }

    pub fn ints(dx: i64, dy: i64, dz: i64) -> Self {
        Vec3::new(scalar_int(dx), scalar_int(dy), scalar_int(dz))
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero() && self.dz.is_zero()
    }

    pub fn neg(&self) -> Vec3 {
        Vec3::new(-&self.dx, -&self.dy, -&self.dz)
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3::new(&self.dx + &other.dx, &self.dy + &other.dy, &self.dz + &other.dz)
    }

    pub fn scale(&self, s: &Scalar) -> Vec3 {
        Vec3::new(&self.dx * s, &self.dy * s, &self.dz * s)
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            &self.dy * &other.dz - &self.dz * &other.dy,
            &self.dz * &other.dx - &self.dx * &other.dz,
            &self.dx * &other.dy - &self.dy * &other.dx,
        )
    }

    pub fn dot(&self, other: &Vec3) -> Scalar {
        &self.dx * &other.dx + &self.dy * &other.dy + &self.dz * &other.dz
    }

    /// Same direction up to a positive factor.
    pub fn same_ray(&self, other: &Vec3) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }

    /// Canonical primitive representative of the ray: integer coordinates
    /// divided by their gcd. Equal rays map to bitwise-equal values.
    pub fn canonical(&self) -> Vec3 {
        use num_bigint::BigInt;
        use num_integer::Integer;
        debug_assert!(!self.is_zero());
        let den_lcm = self
            .dx
            .denom()
            .lcm(self.dy.denom())
            .lcm(self.dz.denom());
        let nx: BigInt = self.dx.numer() * (&den_lcm / self.dx.denom());
        let ny: BigInt = self.dy.numer() * (&den_lcm / self.dy.denom());
        let nz: BigInt = self.dz.numer() * (&den_lcm / self.dz.denom());
        let g = nx.gcd(&ny).gcd(&nz);
        Vec3::new(
            Scalar::from_integer(nx / &g),
            Scalar::from_integer(ny / &g),
            Scalar::from_integer(nz / &g),
        )
    }

    /// Unit vector in double precision. Scales by the largest coordinate
    /// magnitude first so huge exact coordinates cannot overflow.
    pub fn unit_f64(&self) -> [f64; 3] {
        debug_assert!(!self.is_zero());
        let m = self.dx.abs().max(self.dy.abs()).max(self.dz.abs());
        let x = scalar_to_f64(&(&self.dx / &m));
        let y = scalar_to_f64(&(&self.dy / &m));
        let z = scalar_to_f64(&(&self.dz / &m));
        let len = (x * x + y * y + z * z).sqrt();
        [x / len, y / len, z / len]
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dir({}, {}, {})",
            format_scalar(&self.dx),
            format_scalar(&self.dy),
            format_scalar(&self.dz)
        )
    }
}

/// Sign of (b-a) x (c-a) . (d-a): +1 when d lies on the side of plane abc
/// that the right-handed normal of (a,b,c) points into, -1 opposite, 0
/// coplanar. Exact.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i32 {
    let v = a.dir_to(b).cross(&a.dir_to(c)).dot(&a.dir_to(d));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Axis index (0=x, 1=y, 2=z) of the component with the largest magnitude.
pub(crate) fn dominant_axis(v: &Vec3) -> usize {
    let ax = v.dx.abs();
    let ay = v.dy.abs();
    let az = v.dz.abs();
    if ax >= ay && ax >= az {
        0
    } else if ay >= az {
        1
    } else {
        2
    }
}

/// Projection dropping the given axis, cyclic so orientation around the
/// positive axis is preserved: 0 -> (y,z), 1 -> (z,x), 2 -> (x,y).
pub(crate) fn project_axis(p: &Point3, axis: usize) -> Point2 {
    match axis {
        0 => Point2::new(p.y.clone(), p.z.clone()),
        1 => Point2::new(p.z.clone(), p.x.clone()),
        _ => Point2::new(p.x.clone(), p.y.clone()),
    }
}

/// Exact test for whether closed 3D segments [a,b] and [c,d] share a point.
/// Skew segments never intersect; coplanar pairs reduce to the planar test
/// through an orientation-preserving projection.
pub fn segments_intersect3(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> bool {
    if orient3d(a, b, c, d) != 0 {
        return false;
    }
    let ab = a.dir_to(b);
    let mut n = ab.cross(&c.dir_to(d));
    if n.is_zero() {
        n = ab.cross(&a.dir_to(c));
    }
    if n.is_zero() {
        n = ab.cross(&a.dir_to(d));
    }
    if n.is_zero() {
        // All four points on one line: compare intervals on its dominant axis.
        let axis = dominant_axis(&ab);
        let coord = |p: &Point3| match axis {
            0 => p.x.clone(),
            1 => p.y.clone(),
            _ => p.z.clone(),
        };
        let (a1, b1) = (coord(a), coord(b));
        let (lo1, hi1) = if a1 <= b1 { (a1, b1) } else { (b1, a1) };
        let (c1, d1) = (coord(c), coord(d));
        let (lo2, hi2) = if c1 <= d1 { (c1, d1) } else { (d1, c1) };
        return lo1 <= hi2 && lo2 <= hi1;
    }
    let axis = dominant_axis(&n);
    segments_intersect(
        &project_axis(a, axis),
        &project_axis(b, axis),
        &project_axis(c, axis),
        &project_axis(d, axis),
    )
}

/// Simple open polygonal chain in space. Same invariants as the planar
/// chain: at least 2 vertices, no zero-length edge, same-direction collinear
/// runs merged, edges meeting only at shared endpoints of consecutive edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain3 {
    vertices: Vec<Point3>,
}

/// Validates and canonicalizes a 3D vertex list, mirroring the planar rules
/// with exact spatial segment intersection tests.
pub fn validate_chain3(raw: Vec<Point3>) -> Result<Chain3, ChainError> {
    if raw.len() < 2 {
        return Err(ChainError::TooShort(raw.len()));
    }
    for (i, pair) in raw.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return Err(ChainError::DuplicateVertex(i + 2));
        }
    }
    let mut vs: Vec<Point3> = Vec::with_capacity(raw.len());
    for v in raw {
        while vs.len() >= 2 {
            let a = &vs[vs.len() - 2];
            let b = &vs[vs.len() - 1];
            if !a.dir_to(b).cross(&b.dir_to(&v)).is_zero() {
                break;
            }
            let forward = a.dir_to(b).dot(&b.dir_to(&v));
            if forward.is_positive() {
                vs.pop();
            } else {
                return Err(ChainError::SelfIntersection(vs.len() - 1, vs.len()));
            }
        }
        vs.push(v);
    }
    let chain = Chain3 { vertices: vs };
    let m = chain.edge_count();
    for i in 1..=m {
        for j in (i + 2)..=m {
            let (a, b) = chain.edge_points(i);
            let (c, d) = chain.edge_points(j);
            if segments_intersect3(a, b, c, d) {
                return Err(ChainError::SelfIntersection(i, j));
            }
        }
    }
    Ok(chain)
}

impl Chain3 {
    pub(crate) fn trusted(vertices: Vec<Point3>) -> Chain3 {
        debug_assert!(vertices.len() >= 2);
        Chain3 { vertices }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// 1-based vertex access.
    pub fn vertex(&self, i: usize) -> &Point3 {
        &self.vertices[i - 1]
    }

    /// Endpoints of the 1-based edge i.
    pub fn edge_points(&self, i: usize) -> (&Point3, &Point3) {
        (&self.vertices[i - 1], &self.vertices[i])
    }

    pub fn terminal_param(&self) -> ChainParam {
        ChainParam::new(self.edge_count(), Scalar::one())
    }

    fn check_param(&self, p: &ChainParam) -> Result<(), OutOfRange> {
        if p.edge < 1 || p.edge > self.edge_count() {
            return Err(OutOfRange(format!(
                "edge {} not in 1..={}",
                p.edge,
                self.edge_count()
            )));
        }
        Ok(())
    }

    /// Exact point at a parameter.
    pub fn point_at(&self, p: &ChainParam) -> Result<Point3, OutOfRange> {
        self.check_param(p)?;
        let (a, b) = self.edge_points(p.edge);
        Ok(Point3::new(
            &a.x + &p.t * (&b.x - &a.x),
            &a.y + &p.t * (&b.y - &a.y),
            &a.z + &p.t * (&b.z - &a.z),
        ))
    }

    pub fn reverse(&self) -> Chain3 {
        let mut vs = self.vertices.clone();
        vs.reverse();
        Chain3::trusted(vs)
    }

    /// Vertices of the closed sub-chain from the start to the parameter,
    /// ending at the exact point of p.
    pub fn prefix_vertices(&self, p: &ChainParam) -> Vec<Point3> {
        let pt = self.point_at(p).expect("param in range");
        let mut vs: Vec<Point3> = self.vertices[..p.edge].to_vec();
        if pt != vs[vs.len() - 1] {
            vs.push(pt);
        }
        vs
    }

    /// Vertices of the closed sub-chain from the parameter to the end,
    /// starting at the exact point of p.
    pub fn suffix_vertices(&self, p: &ChainParam) -> Vec<Point3> {
        let pt = self.point_at(p).expect("param in range");
        let mut vs: Vec<Point3> = vec![pt];
        let first_after = if p.t.is_one() { p.edge + 2 } else { p.edge + 1 };
        for v in &self.vertices[first_after - 1..] {
            if v != &vs[0] {
                vs.push(v.clone());
            }
        }
        vs
    }
}

impl fmt::Debug for Chain3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chain3{:?}", self.vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::scalar_ratio;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::ints(x, y, z)
    }

    #[test]
    fn orient3d_signs() {
        let a = p(0, 0, 0);
        let b = p(1, 0, 0);
        let c = p(0, 1, 0);
        assert_eq!(orient3d(&a, &b, &c, &p(0, 0, 1)), 1);
        assert_eq!(orient3d(&a, &b, &c, &p(0, 0, -1)), -1);
        assert_eq!(orient3d(&a, &b, &c, &p(3, -2, 0)), 0);
        // Swapping two arguments flips the sign.
        assert_eq!(orient3d(&b, &a, &c, &p(0, 0, 1)), -1);
    }

    #[test]
    fn segment_intersection_spatial_cases() {
        // Skew lines that would cross in projection.
        assert!(!segments_intersect3(
            &p(0, 0, 0),
            &p(2, 2, 0),
            &p(2, 0, 1),
            &p(0, 2, 1)
        ));
        // Proper coplanar crossing in a tilted plane.
        assert!(segments_intersect3(
            &p(0, 0, 0),
            &p(2, 2, 2),
            &p(2, 0, 0),
            &p(0, 2, 2)
        ));
        // Shared endpoint.
        assert!(segments_intersect3(
            &p(0, 0, 0),
            &p(1, 1, 1),
            &p(1, 1, 1),
            &p(5, 0, 2)
        ));
        // Collinear overlap and collinear disjoint along a space diagonal.
        assert!(segments_intersect3(
            &p(0, 0, 0),
            &p(3, 3, 3),
            &p(2, 2, 2),
            &p(5, 5, 5)
        ));
        assert!(!segments_intersect3(
            &p(0, 0, 0),
            &p(1, 1, 1),
            &p(2, 2, 2),
            &p(3, 3, 3)
        ));
        // Parallel coplanar, never touching.
        assert!(!segments_intersect3(
            &p(0, 0, 0),
            &p(2, 0, 2),
            &p(0, 1, 0),
            &p(2, 1, 2)
        ));
        // T-contact in a vertical plane.
        assert!(segments_intersect3(
            &p(0, 0, 0),
            &p(4, 0, 4),
            &p(2, 0, 2),
            &p(2, 0, 7)
        ));
    }

    #[test]
    fn validation_merges_collinear_runs() {
        let c = validate_chain3(vec![p(0, 0, 0), p(1, 1, 1), p(2, 2, 2), p(3, 2, 2)]).unwrap();
        assert_eq!(c.vertices(), &[p(0, 0, 0), p(2, 2, 2), p(3, 2, 2)]);
    }

    #[test]
    fn validation_rejects_backtracking_and_crossings() {
        assert_eq!(
            validate_chain3(vec![p(0, 0, 0), p(2, 0, 0), p(1, 0, 0)]),
            Err(ChainError::SelfIntersection(1, 2))
        );
        // Edges 1 and 3 cross inside the z=0 plane.
        assert_eq!(
            validate_chain3(vec![p(0, 0, 0), p(4, 0, 0), p(4, 4, 0), p(2, -2, 0)]),
            Err(ChainError::SelfIntersection(1, 3))
        );
        assert_eq!(
            validate_chain3(vec![p(0, 0, 0), p(0, 0, 0), p(1, 0, 0)]),
            Err(ChainError::DuplicateVertex(2))
        );
        assert_eq!(validate_chain3(vec![p(1, 2, 3)]), Err(ChainError::TooShort(1)));
    }

    #[test]
    fn point_at_is_exact() {
        let c = validate_chain3(vec![p(0, 0, 0), p(2, 4, 6)]).unwrap();
        let mid = c
            .point_at(&ChainParam::new(1, scalar_ratio(1, 2)))
            .unwrap();
        assert_eq!(mid, p(1, 2, 3));
        assert!(c.point_at(&ChainParam::new(7, scalar_ratio(1, 2))).is_err());
    }

    #[test]
    fn prefix_and_suffix_split_at_the_param() {
        let c = validate_chain3(vec![p(0, 0, 0), p(2, 0, 0), p(2, 2, 2)]).unwrap();
        let mid = ChainParam::new(2, scalar_ratio(1, 2));
        assert_eq!(
            c.prefix_vertices(&mid),
            vec![p(0, 0, 0), p(2, 0, 0), p(2, 1, 1)]
        );
        assert_eq!(c.suffix_vertices(&mid), vec![p(2, 1, 1), p(2, 2, 2)]);
        // At a vertex both sides end exactly there, without duplication.
        let at2 = ChainParam::at_vertex(2, 3);
        assert_eq!(c.prefix_vertices(&at2), vec![p(0, 0, 0), p(2, 0, 0)]);
        assert_eq!(c.suffix_vertices(&at2), vec![p(2, 0, 0), p(2, 2, 2)]);
    }

    #[test]
    fn rays_and_canonical_forms() {
        let v = Vec3::new(scalar_ratio(4, 6), scalar_ratio(-2, 3), scalar_ratio(2, 3));
        assert_eq!(v.canonical(), Vec3::ints(1, -1, 1));
        assert!(v.same_ray(&Vec3::ints(2, -2, 2)));
        assert!(!v.same_ray(&Vec3::ints(-1, 1, -1)));
        let u = Vec3::ints(0, 0, 5).unit_f64();
        assert_eq!(u, [0.0, 0.0, 1.0]);
    }
}
