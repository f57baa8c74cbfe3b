//! Chain documents and animation frame export.
//!
//! Chains are stored as versioned JSON with coordinates as exact decimal
//! strings (falling back to "p/q" for non-decadic rationals), so a write
//! followed by a parse reproduces the chain exactly. All serialization is
//! byte-deterministic and file writes are atomic (temp file + rename).

use crate::chain::{validate_chain, Chain2, ChainParam};
use crate::geom::Point2;
use crate::geom3::{validate_chain3, Chain3, Point3};
use crate::motion::{pose_at, MotionPlan, Pose};
use crate::scalar::{format_scalar, parse_scalar, scalar_int, scalar_ratio, Scalar};
use std::fmt::Write as _;
use std::path::Path;

pub const CHAIN_SCHEMA: &str = "threadkit/chain-v1";
pub const FRAMES_SCHEMA: &str = "threadkit/frames-v1";

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("i/o: {0}")]
    Io(std::io::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error("invalid chain: {0}")]
    Validation(String),
}

impl From<std::io::Error> for DocError {
    fn from(e: std::io::Error) -> Self {
        DocError::Io(e)
    }
}

/// A parsed chain of either dimension.
#[derive(Debug, Clone)]
pub enum AnyChain {
    Planar(Chain2),
    Spatial(Chain3),
}

impl AnyChain {
    pub fn dimension(&self) -> usize {
        match self {
            AnyChain::Planar(_) => 2,
            AnyChain::Spatial(_) => 3,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyChain::Planar(c) => c.n(),
            AnyChain::Spatial(c) => c.n(),
        }
    }
}

pub fn parse_chain(path: &Path) -> Result<AnyChain, DocError> {
    parse_chain_str(&std::fs::read_to_string(path)?)
}

pub fn parse_chain_str(s: &str) -> Result<AnyChain, DocError> {
    let doc: serde_json::Value =
        serde_json::from_str(s).map_err(|e| DocError::Schema(format!("not JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| DocError::Schema("top level must be an object".into()))?;
    match obj.get("schema").and_then(|v| v.as_str()) {
        Some(CHAIN_SCHEMA) => {}
        Some(other) => {
            return Err(DocError::Schema(format!(
                "unsupported schema {other:?}, expected {CHAIN_SCHEMA:?}"
            )))
        }
        None => return Err(DocError::Schema("missing string field \"schema\"".into())),
    }
    let dim = obj
        .get("dimension")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| DocError::Schema("missing integer field \"dimension\"".into()))?;
    let rows = obj
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| DocError::Schema("missing array field \"vertices\"".into()))?;
    let mut coords: Vec<Vec<Scalar>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let parts = row
            .as_array()
            .ok_or_else(|| DocError::Schema(format!("vertex {i} is not an array")))?;
        if parts.len() != dim as usize {
            return Err(DocError::Schema(format!(
                "vertex {i} has {} coordinates, expected {dim}",
                parts.len()
            )));
        }
        let mut v = Vec::with_capacity(parts.len());
        for (j, part) in parts.iter().enumerate() {
            let text = part.as_str().ok_or_else(|| {
                DocError::Schema(format!("vertex {i} coordinate {j} must be a string"))
            })?;
            v.push(parse_scalar(text).map_err(|e| {
                DocError::Schema(format!("vertex {i} coordinate {j}: {e} in {text:?}"))
            })?);
        }
        coords.push(v);
    }
    match dim {
        2 => {
            let pts = coords
                .into_iter()
                .map(|mut v| {
                    let y = v.pop().unwrap();
                    let x = v.pop().unwrap();
                    Point2::new(x, y)
                })
                .collect();
            validate_chain(pts)
                .map(AnyChain::Planar)
                .map_err(|e| DocError::Validation(e.to_string()))
        }
        3 => {
            let pts = coords
                .into_iter()
                .map(|mut v| {
                    let z = v.pop().unwrap();
                    let y = v.pop().unwrap();
                    let x = v.pop().unwrap();
                    Point3::new(x, y, z)
                })
                .collect();
            validate_chain3(pts)
                .map(AnyChain::Spatial)
                .map_err(|e| DocError::Validation(e.to_string()))
        }
        d => Err(DocError::Schema(format!("dimension must be 2 or 3, got {d}"))),
    }
}

pub fn chain_to_string(c: &AnyChain, name: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"schema\": \"{CHAIN_SCHEMA}\",");
    if let Some(name) = name {
        let _ = writeln!(
            out,
            "  \"name\": {},",
            serde_json::Value::String(name.to_string())
        );
    }
    let _ = writeln!(out, "  \"dimension\": {},", c.dimension());
    out.push_str("  \"vertices\": [\n");
    let rows: Vec<String> = match c {
        AnyChain::Planar(c) => c
            .vertices()
            .iter()
            .map(|v| {
                format!(
                    "    [\"{}\", \"{}\"]",
                    format_scalar(&v.x),
                    format_scalar(&v.y)
                )
            })
            .collect(),
        AnyChain::Spatial(c) => c
            .vertices()
            .iter()
            .map(|v| {
                format!(
                    "    [\"{}\", \"{}\", \"{}\"]",
                    format_scalar(&v.x),
                    format_scalar(&v.y),
                    format_scalar(&v.z)
                )
            })
            .collect(),
    };
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

pub fn write_chain(c: &AnyChain, name: Option<&str>, path: &Path) -> Result<(), DocError> {
    Ok(write_atomic(path, chain_to_string(c, name).as_bytes())?)
}

/// Writes through a sibling temp file and renames, so readers never observe
/// a half-written document.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), std::io::Error> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

/// One animation frame: where the chain is in hole coordinates.
#[derive(Debug, Clone)]
pub struct Frame {
    pub param: ChainParam,
    pub pose: Pose,
    /// Posed vertex positions, in chain order.
    pub vertices: Vec<(f64, f64)>,
}

/// k frames at parameters uniform along the whole chain, endpoints
/// included. Params are strictly increasing and the count is exactly k.
pub fn make_frames(plan: &MotionPlan, k: usize) -> Vec<Frame> {
    assert!(k >= 1, "need at least one frame");
    let c = plan.chain();
    let n = c.n();
    let len = (n - 1) as i64;
    let mut frames = Vec::with_capacity(k);
    for i in 0..k {
        let g = if k == 1 {
            scalar_int(0)
        } else {
            scalar_ratio(i as i64 * len, (k - 1) as i64)
        };
        let param = ChainParam::from_global(&g, n);
        let pose = pose_at(plan, &param).expect("uniform params are on the chain");
        debug_assert!(
            crate::motion::validate_pose(c, &param, &pose, 1e-9),
            "exported pose fails validation at {param}"
        );
        let vertices = c
            .vertices()
            .iter()
            .map(|v| pose.apply_point(v))
            .collect();
        frames.push(Frame { param, pose, vertices });
    }
    frames
}

/// Doubles are printed with 17 significant digits, enough to reparse to the
/// identical bit pattern.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn frames_to_string(frames: &[Frame]) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"schema\": \"{FRAMES_SCHEMA}\",");
    out.push_str("  \"frames\": [\n");
    let rows: Vec<String> = frames
        .iter()
        .map(|f| {
            let verts: Vec<String> = f
                .vertices
                .iter()
                .map(|(x, y)| format!("[{}, {}]", fmt_f64(*x), fmt_f64(*y)))
                .collect();
            format!(
                "    {{\"edge\": {}, \"t\": \"{}\", \"pose\": {{\"angle\": {}, \"tx\": {}, \"ty\": {}}}, \"vertices\": [{}]}}",
                f.param.edge,
                format_scalar(&f.param.t),
                fmt_f64(f.pose.angle),
                fmt_f64(f.pose.tx),
                fmt_f64(f.pose.ty),
                verts.join(", ")
            )
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

pub fn export_frames_json(plan: &MotionPlan, k: usize, path: &Path) -> Result<(), DocError> {
    let frames = make_frames(plan, k);
    Ok(write_atomic(path, frames_to_string(&frames).as_bytes())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::{plan, validate_pose};

    fn chain2(pts: &[(i64, i64)]) -> Chain2 {
        validate_chain(pts.iter().map(|&(x, y)| Point2::ints(x, y)).collect()).unwrap()
    }

    fn zig() -> Chain2 {
        chain2(&[(0, 0), (2, 2), (0, 4), (2, 6)])
    }

    #[test]
    fn chain_documents_round_trip_exactly() {
        let zig = AnyChain::Planar(zig());
        let s = chain_to_string(&zig, Some("ZIG"));
        let back = parse_chain_str(&s).unwrap();
        match (&zig, &back) {
            (AnyChain::Planar(a), AnyChain::Planar(b)) => {
                assert_eq!(a.vertices(), b.vertices())
            }
            _ => panic!("dimension changed in round trip"),
        }
        // Non-decadic rationals survive through the p/q fallback.
        let frac = AnyChain::Planar(
            validate_chain(vec![
                Point2::new(scalar_ratio(1, 3), scalar_ratio(0, 1)),
                Point2::new(scalar_ratio(2, 3), scalar_ratio(7, 11)),
            ])
            .unwrap(),
        );
        let s = chain_to_string(&frac, None);
        assert!(s.contains("1/3"));
        let back = parse_chain_str(&s).unwrap();
        match (&frac, &back) {
            (AnyChain::Planar(a), AnyChain::Planar(b)) => {
                assert_eq!(a.vertices(), b.vertices())
            }
            _ => panic!("dimension changed in round trip"),
        }
    }

    #[test]
    fn spatial_documents_round_trip_exactly() {
        let c = AnyChain::Spatial(
            validate_chain3(vec![
                Point3::ints(0, 0, 0),
                Point3::ints(1, 2, 3),
                Point3::ints(-1, 2, 5),
            ])
            .unwrap(),
        );
        let s = chain_to_string(&c, Some("stair"));
        let back = parse_chain_str(&s).unwrap();
        match (&c, &back) {
            (AnyChain::Spatial(a), AnyChain::Spatial(b)) => {
                assert_eq!(a.vertices(), b.vertices())
            }
            _ => panic!("dimension changed in round trip"),
        }
    }

    #[test]
    fn schema_and_validation_failures_are_distinguished() {
        assert!(matches!(
            parse_chain_str("not json").unwrap_err(),
            DocError::Schema(_)
        ));
        assert!(matches!(
            parse_chain_str("{\"schema\": \"other/v9\"}").unwrap_err(),
            DocError::Schema(_)
        ));
        let missing_dim = format!("{{\"schema\": \"{CHAIN_SCHEMA}\", \"vertices\": []}}");
        assert!(matches!(
            parse_chain_str(&missing_dim).unwrap_err(),
            DocError::Schema(_)
        ));
        let dup = format!(
            "{{\"schema\": \"{CHAIN_SCHEMA}\", \"dimension\": 2, \"vertices\": [[\"0\", \"0\"], [\"0\", \"0\"], [\"1\", \"1\"]]}}"
        );
        let err = parse_chain_str(&dup).unwrap_err();
        match err {
            DocError::Validation(msg) => assert!(msg.contains("2"), "message: {msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn frames_are_uniform_validated_and_reparse_to_identical_doubles() {
        let c = zig();
        let p = plan(&c).unwrap();
        let frames = make_frames(&p, 9);
        assert_eq!(frames.len(), 9);
        for w in frames.windows(2) {
            assert!(w[0].param < w[1].param);
        }
        for f in &frames {
            assert!(validate_pose(&c, &f.param, &f.pose, 1e-9));
        }
        let s = frames_to_string(&frames);
        let doc: serde_json::Value = serde_json::from_str(&s).unwrap();
        let rows = doc["frames"].as_array().unwrap();
        assert_eq!(rows.len(), 9);
        for (f, row) in frames.iter().zip(rows) {
            assert_eq!(row["pose"]["angle"].as_f64().unwrap(), f.pose.angle);
            assert_eq!(row["pose"]["tx"].as_f64().unwrap(), f.pose.tx);
            assert_eq!(row["pose"]["ty"].as_f64().unwrap(), f.pose.ty);
            let verts = row["vertices"].as_array().unwrap();
            for (v, rv) in f.vertices.iter().zip(verts) {
                assert_eq!(rv[0].as_f64().unwrap(), v.0);
                assert_eq!(rv[1].as_f64().unwrap(), v.1);
            }
        }
    }

    #[test]
    fn atomic_write_replaces_the_target() {
        let dir = std::env::temp_dir().join("threadkit-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("chain.json");
        let c = AnyChain::Planar(zig());
        write_chain(&c, Some("ZIG"), &path).unwrap();
        write_chain(&c, Some("ZIG"), &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        write_chain(&c, Some("ZIG"), &path).unwrap();
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second, "repeated writes are byte-identical");
        let back = parse_chain(&path).unwrap();
        assert_eq!(back.n(), 4);
        std::fs::remove_dir_all(&dir).ok();
    }
}
