//! Helpers shared by the integration suites: fixture loading, an independent
//! gift-wrapping hull, and angle-sequence utilities.

use std::path::PathBuf;

use threadkit::{orient, parse_chain, wrap_angle, AnyChain, Chain2, Chain3, Point2, Scalar};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Chain2 {
    match parse_chain(&fixture_path(name)).expect("fixture parses") {
        AnyChain::Planar(c) => c,
        AnyChain::Spatial(_) => panic!("fixture {name} is spatial"),
    }
}

pub fn fixture3(name: &str) -> Chain3 {
    match parse_chain(&fixture_path(name)).expect("fixture parses") {
        AnyChain::Planar(_) => panic!("fixture {name} is planar"),
        AnyChain::Spatial(c) => c,
    }
}

#[allow(dead_code)]
pub fn chain2(pts: &[(i64, i64)]) -> Chain2 {
    let raw = pts.iter().map(|&(x, y)| Point2::ints(x, y)).collect();
    threadkit::chain::validate_chain(raw).expect("valid test chain")
}

fn dist2(a: &Point2, b: &Point2) -> Scalar {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Gift-wrapping hull, counterclockwise, rotated so the lexicographically
/// smallest vertex leads. Collinear ties keep the farthest point, so every
/// returned vertex is a strict corner.
#[allow(dead_code)]
pub fn brute_hull(c: &Chain2) -> Vec<Point2> {
    let mut pts: Vec<Point2> = Vec::new();
    for p in c.vertices() {
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    assert!(pts.len() >= 3, "brute hull needs a nondegenerate input");
    let start = pts
        .iter()
        .min_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)))
        .unwrap()
        .clone();
    let mut hull = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        let mut next = pts.iter().find(|p| **p != cur).unwrap().clone();
        for r in &pts {
            if *r == cur || *r == next {
                continue;
            }
            // next is correct iff every other point sits left of cur->next
            let o = orient(&cur, &next, r);
            if o < 0 || (o == 0 && dist2(&cur, r) > dist2(&cur, &next)) {
                next = r.clone();
            }
        }
        if next == start {
            break;
        }
        hull.push(next.clone());
        cur = next;
        assert!(hull.len() <= pts.len(), "gift wrap failed to close");
    }
    let k = (0..hull.len())
        .min_by(|&i, &j| (&hull[i].x, &hull[i].y).cmp(&(&hull[j].x, &hull[j].y)))
        .unwrap();
    hull.rotate_left(k);
    hull
}

/// Continuous lift of a wrapped angle sequence: consecutive steps are taken
/// through the shorter arc.
#[allow(dead_code)]
pub fn unwrap_angles(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len());
    let mut acc = match angles.first() {
        Some(&a) => a,
        None => return out,
    };
    out.push(acc);
    for w in angles.windows(2) {
        acc += wrap_angle(w[1] - w[0]);
        out.push(acc);
    }
    out
}

/// Number of strict direction reversals in a sequence, ignoring steps at or
/// below the noise floor. A monotone sequence scores 0, one hump scores 1.
#[allow(dead_code)]
pub fn direction_reversals(values: &[f64], floor: f64) -> usize {
    let mut reversals = 0usize;
    let mut last_sign = 0i8;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        if d.abs() <= floor {
            continue;
        }
        let sign = if d > 0.0 { 1 } else { -1 };
        if last_sign != 0 && sign != last_sign {
            reversals += 1;
        }
        last_sign = sign;
    }
    reversals
}
