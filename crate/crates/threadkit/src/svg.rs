//! SVG 1.1 snapshots of a motion plan: the fixed line with its hole at the
//! origin and the posed chain, one file per frame.
//!
//! The viewport is fitted once across the chain's positions in all frames
//! (plus the origin) with a 5% margin, so an animation flipbook holds
//! still; the axis spans the full width and the hole is drawn at 1% of the
//! viewport diameter. Output is byte-deterministic: fixed 6-decimal
//! coordinates, no timestamps.

use crate::io::{make_frames, write_atomic, DocError, Frame};
use crate::motion::MotionPlan;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

fn fmt6(v: f64) -> String {
    // Avoid "-0.000000" flapping between runs on signed zeros.
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// One frame as a standalone SVG document.
fn frame_svg(frame: &Frame, bounds: (f64, f64, f64, f64)) -> String {
    let (min_x, min_y, max_x, max_y) = bounds;
    let w = max_x - min_x;
    let h = max_y - min_y;
    let hole_r = 0.005 * w.hypot(h);
    let stroke = 0.003 * w.hypot(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"{} {} {} {}\">",
        fmt6(min_x),
        fmt6(-max_y),
        fmt6(w),
        fmt6(h)
    );
    // SVG y grows downward; geometry y grows upward. Flip inside a group so
    // all coordinates below stay in geometry terms.
    let _ = writeln!(out, "  <g transform=\"scale(1,-1)\">");
    let _ = writeln!(
        out,
        "    <line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\" stroke=\"#888888\" \
         stroke-width=\"{}\"/>",
        fmt6(min_x),
        fmt6(max_x),
        fmt6(stroke)
    );
    let pts: Vec<String> = frame
        .vertices
        .iter()
        .map(|(x, y)| format!("{},{}", fmt6(*x), fmt6(*y)))
        .collect();
    let _ = writeln!(
        out,
        "    <polyline points=\"{}\" fill=\"none\" stroke=\"#1f6feb\" \
         stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>",
        pts.join(" "),
        fmt6(stroke * 1.5)
    );
    let _ = writeln!(
        out,
        "    <circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"#d33939\"/>",
        fmt6(hole_r)
    );
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}

fn fit_bounds(frames: &[Frame]) -> (f64, f64, f64, f64) {
    let mut min_x: f64 = 0.0;
    let mut min_y: f64 = 0.0;
    let mut max_x: f64 = 0.0;
    let mut max_y: f64 = 0.0;
    for f in frames {
        for (x, y) in &f.vertices {
            min_x = min_x.min(*x);
            min_y = min_y.min(*y);
            max_x = max_x.max(*x);
            max_y = max_y.max(*y);
        }
    }
    let margin = 0.05 * (max_x - min_x).max(max_y - min_y).max(1e-9);
    (
        min_x - margin,
        min_y - margin,
        max_x + margin,
        max_y + margin,
    )
}

/// Writes k frame files frame_000.svg .. into dir (created if absent) and
/// returns their paths in order.
pub fn export_svg_frames(
    plan: &MotionPlan,
    k: usize,
    dir: &Path,
) -> Result<Vec<PathBuf>, DocError> {
    std::fs::create_dir_all(dir)?;
    let frames = make_frames(plan, k);
    let bounds = fit_bounds(&frames);
    let mut paths = Vec::with_capacity(frames.len());
    for (i, frame) in frames.iter().enumerate() {
        let path = dir.join(format!("frame_{i:03}.svg"));
        write_atomic(&path, frame_svg(frame, bounds).as_bytes())?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::validate_chain;
    use crate::geom::Point2;
    use crate::motion::plan;

    #[test]
    fn seg_frames_include_a_vertical_mid_crossing() {
        let c = validate_chain(vec![Point2::ints(0, 0), Point2::ints(0, 4)]).unwrap();
        let p = plan(&c).unwrap();
        let dir = std::env::temp_dir().join("threadkit-svg-test");
        std::fs::remove_dir_all(&dir).ok();
        let paths = export_svg_frames(&p, 3, &dir).unwrap();
        assert_eq!(paths.len(), 3);
        for path in &paths {
            let body = std::fs::read_to_string(path).unwrap();
            assert!(body.starts_with("<svg "));
            assert!(body.contains("<polyline"));
            assert!(body.contains("<circle"));
        }
        // The middle frame has the chain crossing the origin vertically:
        // both endpoints on x = 0, one below and one above.
        let mid = std::fs::read_to_string(&paths[1]).unwrap();
        let pts = mid
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        let coords: Vec<(f64, f64)> = pts
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        assert_eq!(coords.len(), 2);
        assert!(coords.iter().all(|(x, _)| x.abs() < 1e-6));
        assert!(coords[0].1 < 0.0 && coords[1].1 > 0.0);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn export_is_byte_deterministic() {
        let c = validate_chain(vec![
            Point2::ints(0, 0),
            Point2::ints(2, 2),
            Point2::ints(0, 4),
            Point2::ints(2, 6),
        ])
        .unwrap();
        let p = plan(&c).unwrap();
        let dir1 = std::env::temp_dir().join("threadkit-svg-det1");
        let dir2 = std::env::temp_dir().join("threadkit-svg-det2");
        std::fs::remove_dir_all(&dir1).ok();
        std::fs::remove_dir_all(&dir2).ok();
        let a = export_svg_frames(&p, 5, &dir1).unwrap();
        let b = export_svg_frames(&p, 5, &dir2).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            assert_eq!(
                std::fs::read(pa).unwrap(),
                std::fs::read(pb).unwrap(),
                "{pa:?} vs {pb:?}"
            );
        }
        std::fs::remove_dir_all(&dir1).ok();
        std::fs::remove_dir_all(&dir2).ok();
    }
}
