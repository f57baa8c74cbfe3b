//! Planar points, directions, and the exact orientation predicate.

use crate::scalar::{format_scalar, scalar_int, Scalar};
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point2 { x, y }
    }

    /// Integer-coordinate point.
    pub fn ints(x: i64, y: i64) -> Self {
        Point2::new(scalar_int(x), scalar_int(y))
    }

    /// Direction from `self` to `other`. Zero only if the points coincide.
    pub fn dir_to(&self, other: &Point2) -> Dir2 {
        Dir2 {
            dx: &other.x - &self.x,
            dy: &other.y - &self.y,
        }
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_scalar(&self.x), format_scalar(&self.y))
    }
}

/// Direction vector compared by angle; magnitude carries no meaning and is
/// never normalized. Must be nonzero wherever it denotes a direction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dir2 {
    pub dx: Scalar,
    pub dy: Scalar,
}

impl Dir2 {
    pub fn new(dx: Scalar, dy: Scalar) -> Self {
        Dir2 { dx, dy }
    }

    pub fn ints(dx: i64, dy: i64) -> Self {
        Dir2::new(scalar_int(dx), scalar_int(dy))
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn neg(&self) -> Dir2 {
        Dir2::new(-&self.dx, -&self.dy)
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(&self) -> Dir2 {
        Dir2::new(-&self.dy, self.dx.clone())
    }

    /// Clockwise quarter turn.
    pub fn rot270(&self) -> Dir2 {
        Dir2::new(self.dy.clone(), -&self.dx)
    }

    pub fn cross(&self, other: &Dir2) -> Scalar {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    pub fn dot(&self, other: &Dir2) -> Scalar {
        &self.dx * &other.dx + &self.dy * &other.dy
    }

    /// Same direction up to a positive factor.
    pub fn same_ray(&self, other: &Dir2) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }

    /// Canonical primitive representative of the ray: integer coordinates
    /// divided by their gcd. Equal rays map to bitwise-equal values, which
    /// keeps downstream float conversions reproducible.
    pub fn canonical(&self) -> Dir2 {
        use num_bigint::BigInt;
        use num_integer::Integer;
        debug_assert!(!self.is_zero());
        let den_lcm = self.dx.denom().lcm(self.dy.denom());
        let nx: BigInt = self.dx.numer() * (&den_lcm / self.dx.denom());
        let ny: BigInt = self.dy.numer() * (&den_lcm / self.dy.denom());
        let g = nx.gcd(&ny);
        Dir2::new(
            Scalar::from_integer(nx / &g),
            Scalar::from_integer(ny / &g),
        )
    }

    /// Angle in radians, in (-pi, pi], double precision. Presentation only.
    pub fn angle(&self) -> f64 {
        crate::scalar::scalar_to_f64(&self.dy).atan2(crate::scalar::scalar_to_f64(&self.dx))
    }
}

impl fmt::Debug for Dir2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dir({}, {})", format_scalar(&self.dx), format_scalar(&self.dy))
    }
}

/// Sign of the cross product (b-a) x (c-a): +1 for a left turn, -1 for a
/// right turn, 0 for collinear points. Exact.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> i32 {
    sign(&orient_val(a, b, c))
}

/// The cross product (b-a) x (c-a) itself, exact. Affine in each argument,
/// which makes roots along a moving point computable in closed form.
pub(crate) fn orient_val(a: &Point2, b: &Point2, c: &Point2) -> Scalar {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub(crate) fn sign(v: &Scalar) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact test for whether closed segments [a,b] and [c,d] share any point.
/// Handles collinear overlap and endpoint contact.
pub fn segments_intersect(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0))
        && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))
    {
        return true;
    }
    (d1 == 0 && on_segment(c, d, a))
        || (d2 == 0 && on_segment(c, d, b))
        || (d3 == 0 && on_segment(a, b, c))
        || (d4 == 0 && on_segment(a, b, d))
}

/// Whether p, already known collinear with [a,b], lies on the closed segment.
fn on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lo_x <= &p.x && &p.x <= hi_x && lo_y <= &p.y && &p.y <= hi_y
}
