//! Planar tangent cones at a shared vertex and their apex-disjointness test.

use crate::geom::{Dir2, Point2};
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("cone boundary direction is zero")]
    ZeroDirection,
    #[error("cone from u to v is reflex (width > pi)")]
    ReflexCone,
    #[error("cones have different apexes")]
    ApexMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    /// u and v span the same ray.
    Ray,
    /// Width strictly between 0 and pi.
    Proper,
    /// v = -u: the closed halfplane left of u.
    Halfplane,
}

/// Convex cone at an apex, spanned counterclockwise from u to v, width <= pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone2 {
    apex: Point2,
    u: Dir2,
    v: Dir2,
    kind: ConeKind,
}

impl Cone2 {
    pub fn new(apex: Point2, u: Dir2, v: Dir2) -> Result<Cone2, ConeError> {
        if u.is_zero() || v.is_zero() {
            return Err(ConeError::ZeroDirection);
        }
        let c = u.cross(&v);
        let kind = if c.is_negative() {
            return Err(ConeError::ReflexCone);
        } else if c.is_positive() {
            ConeKind::Proper
        } else if u.dot(&v).is_positive() {
            ConeKind::Ray
        } else {
            ConeKind::Halfplane
        };
        let v = if kind == ConeKind::Ray { u.clone() } else { v };
        Ok(Cone2 { apex, u, v, kind })
    }

    pub fn apex(&self) -> &Point2 {
        &self.apex
    }

    pub fn u(&self) -> &Dir2 {
        &self.u
    }

    pub fn v(&self) -> &Dir2 {
        &self.v
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    /// Closed membership of a nonzero direction.
    pub fn in_closed(&self, d: &Dir2) -> bool {
        debug_assert!(!d.is_zero());
        match self.kind {
            ConeKind::Ray => d.same_ray(&self.u),
            ConeKind::Proper => {
                !self.u.cross(d).is_negative() && !d.cross(&self.v).is_negative()
            }
            ConeKind::Halfplane => !self.u.cross(d).is_negative(),
        }
    }
}

/// True iff the two closed cones share only their common apex. Because both
/// cones span at most pi, any shared ray forces a shared boundary ray, so
/// checking the four boundary rays is exact.
pub fn cones_apex_disjoint(c1: &Cone2, c2: &Cone2) -> Result<bool, ConeError> {
    if c1.apex != c2.apex {
        return Err(ConeError::ApexMismatch);
    }
    Ok(!(c1.in_closed(&c2.u)
        || c1.in_closed(&c2.v)
        || c2.in_closed(&c1.u)
        || c2.in_closed(&c1.v)))
}
