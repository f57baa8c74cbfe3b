//! Validated simple polygonal chains and positions along them.

use crate::arc::NormalArc;
use crate::geom::{orient, segments_intersect, Dir2, Point2};
use crate::scalar::{scalar_int, Scalar};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("chain needs at least 2 vertices, got {0}")]
    TooShort(usize),
    #[error("duplicate consecutive vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("self-intersection between edge {0} and edge {1}")]
    SelfIntersection(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parameter out of range: {0}")]
pub struct OutOfRange(pub String);

/// Simple open polygonal chain. Invariants: at least 2 vertices, no
/// zero-length edge, no vertex whose neighbors are collinear with it
/// (same-direction runs are merged at validation), and edges meet only at
/// shared endpoints of consecutive edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain2 {
    vertices: Vec<Point2>,
}

/// A point on a chain: 1-based edge index i in [1, n-1], where edge i runs
/// from the i-th vertex to the (i+1)-th, and t in [0, 1] along it.
/// Canonical form keeps t in [0, 1) except at the chain's end (n-1, 1).
#[derive(Clone)]
pub struct ChainParam {
    pub edge: usize,
    pub t: Scalar,
}

impl ChainParam {
    pub fn new(edge: usize, t: Scalar) -> ChainParam {
        assert!(edge >= 1, "edges are 1-based");
        assert!(!t.is_negative() && t <= Scalar::one(), "t in [0,1]");
        ChainParam { edge, t }
    }

    /// Canonical param of the 1-based vertex index i on a chain with n
    /// vertices: (i, 0), except the last vertex which is (n-1, 1).
    pub fn at_vertex(i: usize, n: usize) -> ChainParam {
        assert!((1..=n).contains(&i));
        if i == n {
            ChainParam::new(n - 1, Scalar::one())
        } else {
            ChainParam::new(i, Scalar::zero())
        }
    }

    /// Position along the whole chain: (edge - 1) + t. Total order for
    /// params of one chain.
    pub fn global(&self) -> Scalar {
        scalar_int(self.edge as i64 - 1) + &self.t
    }

    /// Canonicalize on a chain with n vertices: interior (i, 1) becomes
    /// (i+1, 0); the terminal vertex stays (n-1, 1).
    pub fn canonical(&self, n: usize) -> ChainParam {
        if self.t.is_one() && self.edge + 1 <= n - 1 {
            ChainParam::new(self.edge + 1, Scalar::zero())
        } else {
            self.clone()
        }
    }

    /// The 1-based vertex index if this param sits exactly on a vertex.
    pub fn vertex_index(&self, n: usize) -> Option<usize> {
        if self.t.is_zero() {
            Some(self.edge)
        } else if self.t.is_one() {
            Some(self.edge + 1).filter(|&i| i <= n)
        } else {
            None
        }
    }

    /// Same position on the reversed chain.
    pub fn reversed(&self, n: usize) -> ChainParam {
        ChainParam::new(n - self.edge, Scalar::one() - &self.t)
    }

    /// Canonical param at a global coordinate g in [0, n-1].
    pub fn from_global(g: &Scalar, n: usize) -> ChainParam {
        use num_traits::ToPrimitive;
        let floor = g.floor().to_integer().to_usize().expect("global in range");
        let edge = (floor + 1).min(n - 1);
        ChainParam::new(edge, g - scalar_int(edge as i64 - 1))
    }
}

impl PartialEq for ChainParam {
    fn eq(&self, other: &Self) -> bool {
        self.global() == other.global()
    }
}

impl Eq for ChainParam {}

impl PartialOrd for ChainParam {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ChainParam {
    fn cmp(&self, other: &Self) -> Ordering {
        self.global().cmp(&other.global())
    }
}

impl fmt::Display for ChainParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.denom().is_one() {
            write!(f, "edge {}, t={}", self.edge, self.t.numer())
        } else {
            write!(f, "edge {}, t={}/{}", self.edge, self.t.numer(), self.t.denom())
        }
    }
}

impl fmt::Debug for ChainParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Validates and canonicalizes a vertex list into a chain: rejects
/// duplicates and self-intersections, merges same-direction collinear runs.
pub fn validate_chain(raw: Vec<Point2>) -> Result<Chain2, ChainError> {
    if raw.len() < 2 {
        return Err(ChainError::TooShort(raw.len()));
    }
    for (i, pair) in raw.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return Err(ChainError::DuplicateVertex(i + 2));
        }
    }
    // Merge collinear same-direction runs; exact backtracking is a
    // degenerate self-overlap of the two adjacent edges.
    let mut vs: Vec<Point2> = Vec::with_capacity(raw.len());
    for v in raw {
        while vs.len() >= 2 {
            let a = &vs[vs.len() - 2];
            let b = &vs[vs.len() - 1];
            if orient(a, b, &v) != 0 {
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
    let chain = Chain2 { vertices: vs };
    // A strictly monotone chain cannot self-intersect; otherwise fall back
    // to the exact all-pairs test.
    if chain.monotone_direction().is_some() {
        return Ok(chain);
    }
    let m = chain.edge_count();
    for i in 1..=m {
        for j in (i + 2)..=m {
            let (a, b) = chain.edge_points(i);
            let (c, d) = chain.edge_points(j);
            if segments_intersect(a, b, c, d) {
                return Err(ChainError::SelfIntersection(i, j));
            }
        }
    }
    Ok(chain)
}

impl Chain2 {
    /// Constructs without validation. Callers must guarantee the chain
    /// invariants (used for sub-chains of validated chains and reversals).
    pub(crate) fn trusted(vertices: Vec<Point2>) -> Chain2 {
        debug_assert!(vertices.len() >= 2);
        Chain2 { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// 1-based vertex access.
    pub fn vertex(&self, i: usize) -> &Point2 {
        &self.vertices[i - 1]
    }

    /// Endpoints of the 1-based edge i.
    pub fn edge_points(&self, i: usize) -> (&Point2, &Point2) {
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
    pub fn point_at(&self, p: &ChainParam) -> Result<Point2, OutOfRange> {
        self.check_param(p)?;
        let (a, b) = self.edge_points(p.edge);
        Ok(Point2::new(
            &a.x + &p.t * (&b.x - &a.x),
            &a.y + &p.t * (&b.y - &a.y),
        ))
    }

    pub fn reverse(&self) -> Chain2 {
        let mut vs = self.vertices.clone();
        vs.reverse();
        Chain2::trusted(vs)
    }

    /// A direction u with u . e > 0 for every edge e, when one exists.
    /// Folding the open half-circle of each edge direction keeps the fold
    /// exact; the result is an interior direction of the final arc.
    pub fn monotone_direction(&self) -> Option<Dir2> {
        let mut arc: Option<NormalArc> = None;
        for w in self.vertices.windows(2) {
            let e = w[0].dir_to(&w[1]);
            let semi = NormalArc::semicircle(&e);
            arc = Some(match arc {
                None => semi,
                Some(a) => a.intersect(&semi)?,
            });
        }
        arc.map(|a| a.interior_dir())
    }

    /// Vertices of the closed sub-chain from the start to the parameter,
    /// ending at the exact point of p.
    pub fn prefix_vertices(&self, p: &ChainParam) -> Vec<Point2> {
        let pt = self.point_at(p).expect("param in range");
        let mut vs: Vec<Point2> = self.vertices[..p.edge].to_vec();
        if pt != vs[vs.len() - 1] {
            vs.push(pt);
        }
        vs
    }

    /// Vertices of the closed sub-chain from the parameter to the end,
    /// starting at the exact point of p.
    pub fn suffix_vertices(&self, p: &ChainParam) -> Vec<Point2> {
        let pt = self.point_at(p).expect("param in range");
        let mut vs: Vec<Point2> = vec![pt];
        let first_after = if p.t.is_one() { p.edge + 2 } else { p.edge + 1 };
        for v in &self.vertices[first_after - 1..] {
            if v != &vs[0] {
                vs.push(v.clone());
            }
        }
        vs
    }

    /// Squared diameter of the bounding box, exact.
    pub fn bbox_diag_sq(&self) -> Scalar {
        let mut min_x = self.vertices[0].x.clone();
        let mut max_x = min_x.clone();
        let mut min_y = self.vertices[0].y.clone();
        let mut max_y = min_y.clone();
        for v in &self.vertices[1..] {
            if v.x < min_x {
                min_x = v.x.clone();
            }
            if v.x > max_x {
                max_x = v.x.clone();
            }
            if v.y < min_y {
                min_y = v.y.clone();
            }
            if v.y > max_y {
                max_y = v.y.clone();
            }
        }
        let dx = max_x - min_x;
        let dy = max_y - min_y;
        &dx * &dx + &dy * &dy
    }

    /// Bounding-box diagonal in double precision.
    pub fn diameter_f64(&self) -> f64 {
        crate::scalar::scalar_to_f64(&self.bbox_diag_sq()).sqrt()
    }
}

impl fmt::Debug for Chain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chain{:?}", self.vertices)
    }
}
