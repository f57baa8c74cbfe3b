//! Open arcs of directions, at most a semicircle wide.
//!
//! A `NormalArc` stores the set of unit-normal directions strictly between
//! `lo` and `hi` counterclockwise. Butterfly regions are intersections of
//! open half-circles, so every arc that arises here spans at most pi, which
//! is what makes arc intersection closed (a single arc, never two).

use crate::geom::Dir2;
use crate::scalar::scalar_to_f64;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArcError {
    #[error("arc spans more than a semicircle")]
    ArcTooWide,
    #[error("arc boundary direction is zero")]
    ZeroDirection,
    #[error("arc is empty (boundaries on a common ray)")]
    EmptyArc,
}

/// Open arc of directions from `lo` to `hi` counterclockwise, width in
/// (0, pi]. Boundaries are excluded from the set.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalArc {
    lo: Dir2,
    hi: Dir2,
}

impl NormalArc {
    pub fn new(lo: Dir2, hi: Dir2) -> Result<NormalArc, ArcError> {
        if lo.is_zero() || hi.is_zero() {
            return Err(ArcError::ZeroDirection);
        }
        let c = lo.cross(&hi);
        if c.is_negative() {
            return Err(ArcError::ArcTooWide);
        }
        if c.is_zero() {
            if lo.dot(&hi).is_positive() {
                return Err(ArcError::EmptyArc);
            }
            // antipodal boundaries: exactly a semicircle
        }
        Ok(NormalArc { lo, hi })
    }

    /// The open half-circle of directions n with n . w > 0.
    pub fn semicircle(w: &Dir2) -> NormalArc {
        debug_assert!(!w.is_zero());
        NormalArc {
            lo: w.rot270(),
            hi: w.rot90(),
        }
    }

    pub fn lo(&self) -> &Dir2 {
        &self.lo
    }

    pub fn hi(&self) -> &Dir2 {
        &self.hi
    }

    pub fn is_semicircle(&self) -> bool {
        self.lo.cross(&self.hi).is_zero()
    }

    /// Strict membership in the open arc.
    pub fn contains_open(&self, d: &Dir2) -> bool {
        self.lo.cross(d).is_positive() && d.cross(&self.hi).is_positive()
    }

    /// Membership in the closure (boundary rays included).
    pub fn contains_closed(&self, d: &Dir2) -> bool {
        d.same_ray(&self.lo) || d.same_ray(&self.hi) || self.contains_open(d)
    }

    /// An exact direction strictly inside the arc.
    pub fn interior_dir(&self) -> Dir2 {
        if self.is_semicircle() {
            return self.lo.rot90();
        }
        // Any positive combination of the boundary dirs is interior for
        // width < pi; scale each by its max coordinate to keep balance.
        let a = linf_scaled(&self.lo);
        let b = linf_scaled(&self.hi);
        Dir2::new(&a.dx + &b.dx, &a.dy + &b.dy)
    }

    /// Intersection of two arcs, each at most a semicircle: a single open
    /// arc or nothing.
    pub fn intersect(&self, other: &NormalArc) -> Option<NormalArc> {
        let lo = if self.contains_closed(&other.lo) {
            other.lo.clone()
        } else if other.contains_closed(&self.lo) {
            self.lo.clone()
        } else {
            return None;
        };
        let hi = if self.contains_closed(&other.hi) {
            other.hi.clone()
        } else if other.contains_closed(&self.hi) {
            self.hi.clone()
        } else {
            return None;
        };
        if lo.same_ray(&hi) {
            return None;
        }
        let arc = NormalArc { lo, hi };
        // Boundary-only contact can select antipodal rays that bound the
        // wrong semicircle; an interior probe rejects that case.
        let probe = arc.interior_dir();
        if self.contains_open(&probe) && other.contains_open(&probe) {
            Some(arc)
        } else {
            None
        }
    }

    /// Canonical form: boundary dirs reduced to primitive integer vectors.
    /// Equal arcs canonicalize to bitwise-equal boundaries.
    pub fn canonical(&self) -> NormalArc {
        NormalArc {
            lo: self.lo.canonical(),
            hi: self.hi.canonical(),
        }
    }

    /// Angular midpoint as a double-precision unit vector. Exact for
    /// semicircles, nearest-double otherwise.
    pub fn bisector_unit(&self) -> (f64, f64) {
        if self.is_semicircle() {
            let m = self.lo.rot90().canonical();
            let x = scalar_to_f64(&m.dx);
            let y = scalar_to_f64(&m.dy);
            let n = x.hypot(y);
            return (x / n, y / n);
        }
        let c = self.canonical();
        let (lx, ly) = unit_f64(&c.lo);
        let (hx, hy) = unit_f64(&c.hi);
        let (mx, my) = (lx + hx, ly + hy);
        let n = mx.hypot(my);
        debug_assert!(n > 0.0, "arc narrower than pi has a nonzero bisector");
        (mx / n, my / n)
    }

    /// Arc width in radians, double precision. Presentation only.
    pub fn width(&self) -> f64 {
        let (lx, ly) = unit_f64(&self.lo);
        let (hx, hy) = unit_f64(&self.hi);
        let cross = lx * hy - ly * hx;
        let dot = lx * hx + ly * hy;
        let w = cross.atan2(dot);
        if w <= 0.0 {
            w + 2.0 * std::f64::consts::PI
        } else {
            w
        }
    }
}

/// Midpoint direction of an arc (see `bisector_unit`), embedded back into
/// exact coordinates so downstream math stays on one representation.
pub fn arc_bisector(arc: &NormalArc) -> Dir2 {
    if arc.is_semicircle() {
        return arc.lo.rot90().canonical();
    }
    let (x, y) = arc.bisector_unit();
    Dir2::new(
        crate::scalar::scalar_from_f64(x).expect("finite bisector"),
        crate::scalar::scalar_from_f64(y).expect("finite bisector"),
    )
}

/// Intersection of two arcs (each at most a semicircle).
pub fn arc_intersect(a: &NormalArc, b: &NormalArc) -> Option<NormalArc> {
    a.intersect(b)
}

fn linf_scaled(d: &Dir2) -> Dir2 {
    let ax = d.dx.abs();
    let ay = d.dy.abs();
    let m = if ax >= ay { ax } else { ay };
    Dir2::new(&d.dx / &m, &d.dy / &m)
}

fn unit_f64(d: &Dir2) -> (f64, f64) {
    let x = scalar_to_f64(&d.dx);
    let y = scalar_to_f64(&d.dy);
    let n = x.hypot(y);
    (x / n, y / n)
}

impl fmt::Debug for NormalArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = |d: &Dir2| d.angle().to_degrees();
        write!(
            f,
            "arc({:.3}deg, {:.3}deg) [{:?} .. {:?}]",
            deg(&self.lo),
            deg(&self.hi),
            self.lo,
            self.hi
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc_deg(lo: (i64, i64), hi: (i64, i64)) -> NormalArc {
        NormalArc::new(Dir2::ints(lo.0, lo.1), Dir2::ints(hi.0, hi.1)).unwrap()
    }

    #[test]
    fn intersect_overlapping() {
        // (-45deg, 90deg) with (45deg, 225deg) gives (45deg, 90deg)
        let a = arc_deg((1, -1), (0, 1));
        let b = arc_deg((1, 1), (-1, -1));
        let r = arc_intersect(&a, &b).unwrap();
        assert!(r.lo().same_ray(&Dir2::ints(1, 1)));
        assert!(r.hi().same_ray(&Dir2::ints(0, 1)));
    }

    #[test]
    fn intersect_identity_semicircle() {
        let a = arc_deg((1, 0), (-1, 0));
        let r = arc_intersect(&a, &a).unwrap();
        assert!(r.lo().same_ray(&Dir2::ints(1, 0)));
        assert!(r.hi().same_ray(&Dir2::ints(-1, 0)));
        let (bx, by) = r.bisector_unit();
        assert_eq!((bx, by), (0.0, 1.0));
    }

    #[test]
    fn intersect_boundary_touch_is_empty() {
        let a = arc_deg((1, 0), (0, 1));
        let b = arc_deg((0, 1), (-1, 0));
        assert!(arc_intersect(&a, &b).is_none());
    }

    #[test]
    fn intersect_opposite_semicircles_is_empty() {
        let upper = arc_deg((1, 0), (-1, 0));
        let lower = arc_deg((-1, 0), (1, 0));
        assert!(arc_intersect(&upper, &lower).is_none());
    }

    #[test]
    fn too_wide_rejected() {
        let r = NormalArc::new(Dir2::ints(1, 0), Dir2::ints(1, -1));
        assert_eq!(r.unwrap_err(), ArcError::ArcTooWide);
    }

    #[test]
    fn semicircle_of_constraint() {
        // n . (0,1) > 0 is the upper half circle (0deg, 180deg)
        let a = NormalArc::semicircle(&Dir2::ints(0, 1));
        assert!(a.lo().same_ray(&Dir2::ints(1, 0)));
        assert!(a.hi().same_ray(&Dir2::ints(-1, 0)));
        assert!(a.contains_open(&Dir2::ints(0, 1)));
        assert!(!a.contains_open(&Dir2::ints(1, 0)));
        assert!(!a.contains_open(&Dir2::ints(0, -1)));
    }

    #[test]
    fn interior_dir_is_interior() {
        let cases = [
            arc_deg((1, 0), (0, 1)),
            arc_deg((1, -1), (0, 1)),
            arc_deg((1, 0), (-1, 0)),
            arc_deg((-1, -1), (0, -1)),
        ];
        for arc in &cases {
            let m = arc.interior_dir();
            assert!(arc.contains_open(&m), "{arc:?} interior {m:?}");
        }
    }

    #[test]
    fn grid_membership_matches_width() {
        // 1-degree sweep against exact membership in a quarter arc; samples
        // sit at half-degree marks so rounding never straddles a boundary
        let a = arc_deg((1, 0), (0, 1));
        let mut inside = 0;
        for k in 0..360 {
            let th = (k as f64 + 0.5).to_radians();
            let d = Dir2::new(
                crate::scalar::scalar_from_f64(th.cos()).unwrap(),
                crate::scalar::scalar_from_f64(th.sin()).unwrap(),
            );
            if a.contains_open(&d) {
                inside += 1;
            }
        }
        assert_eq!(inside, 90); // 0.5 to 89.5 degrees strictly inside
    }
}
