//! Decide whether a simple open polygonal curve can be threaded through a
//! point-sized hole, and synthesize the rigid motion that does it.
//!
//! A curve threads through a hole at a point p exactly when the part already
//! pulled through and the part still to come can be separated by a line
//! through p at every moment. The library works with exact rational
//! arithmetic end to end: verdicts are exact, witnesses are exact rational
//! parameters on the curve, and only the exported motion plans round to
//! floating point.
//!
//! The core pipeline:
//! - [`chain`]: validated simple open chains and exact curve parameters.
//! - [`hull`]: convex hulls of chain prefixes (Melkman's algorithm).
//! - [`growing`]: the incremental hull pass that tracks how the hull of the
//!   swept part evolves, as an event stream with exact event parameters.
//! - [`cone`]: tangent cones of the two curve parts at a point.
//! - [`arc`]: arcs of admissible separating-line normals.
//! - [`threadability`]: the verdict itself, with an exhaustive oracle.
//! - [`motion`]: rigid-motion synthesis for threadable chains.
//!
//! The spatial analogue replaces lines through p by planes through p:
//! [`geom3`] has the exact 3D primitives and chains, [`hull3`] exact convex
//! hulls, [`sphere`] geodesic polygons of admissible plane normals, and
//! [`thread3`] the sampled decision whose per-parameter emptiness test is
//! still exact.

pub mod arc;
pub mod chain;
pub mod cone;
pub mod generate;
pub mod geom;
pub mod geom3;
pub mod growing;
pub mod hull;
pub mod hull3;
pub mod io;
pub mod motion;
pub mod scalar;
pub mod sphere;
pub mod svg;
pub mod thread3;
pub mod threadability;

pub use arc::NormalArc;
pub use chain::{Chain2, ChainError, ChainParam, OutOfRange};
pub use cone::{Cone2, ConeKind};
pub use generate::{gen_fan, gen_monotone, gen_random_simple, GenError};
pub use geom::{orient, Dir2, Point2};
pub use geom3::{orient3d, segments_intersect3, validate_chain3, Chain3, Point3, Vec3};
pub use growing::{
    anchors_at, growing_pass, Anchors, EventKind, HullEvent, HullNeighbors, HullPass,
    PassDirection, PassOutcome,
};
pub use hull::{melkman_hull, melkman_path, HullPolygon};
pub use hull3::{hull3, Hull3, Hull3Error};
pub use io::{
    chain_to_string, export_frames_json, frames_to_string, make_frames, parse_chain,
    parse_chain_str, write_chain, AnyChain, DocError, Frame,
};
pub use motion::{
    plan, pose_at, rotation_cost, sample_plan, validate_pose, wrap_angle, MotionInterval,
    MotionPlan, NotThreadable, Pose,
};
pub use scalar::{
    format_scalar, parse_scalar, scalar_from_f64, scalar_int, scalar_ratio, scalar_to_f64, Scalar,
};
pub use sphere::{tangent_cone_sphere, NotAVertex, SphericalPolygon};
pub use svg::export_svg_frames;
pub use thread3::{
    butterfly3_at, decide3_sampled, lift, separating_plane_at, PlaneError, Verdict3,
};
pub use threadability::{
    butterfly_at, decide, is_strictly_monotone, oracle_decide, CertInterval, FailureKind, Verdict,
    Witness,
};
