//! Deterministic chain generators for tests, benchmarks, and the CLI.
//!
//! All randomness flows through a counter-based generator seeded explicitly,
//! so equal seeds give byte-equal chains on every platform.

use crate::chain::{validate_chain, Chain2};
use crate::geom::{orient, segments_intersect, Point2};
use crate::scalar::scalar_ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    Parameter(String),
    #[error("rejection sampling budget exhausted")]
    Timeout,
}

/// Random chain with strictly increasing y, hence strictly monotone and
/// always threadable. x is uniform over [0, 4n]; collinear triples are
/// resampled so every vertex survives validation as a corner.
pub fn gen_monotone(n: usize, seed: u64) -> Result<Chain2, GenError> {
    if n < 2 {
        return Err(GenError::Parameter(format!("need n >= 2 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 4 * n as i64;
    let mut vs: Vec<Point2> = Vec::with_capacity(n);
    let mut y: i64 = 0;
    while vs.len() < n {
        let mut placed = false;
        for _ in 0..100 {
            let p = Point2::ints(rng.gen_range(0..=span), y);
            let m = vs.len();
            if m >= 2 && orient(&vs[m - 2], &vs[m - 1], &p) == 0 {
                continue;
            }
            vs.push(p);
            y += rng.gen_range(1..=3);
            placed = true;
            break;
        }
        if !placed {
            return Err(GenError::Timeout);
        }
    }
    Ok(validate_chain(vs).expect("strictly y-monotone chains are simple"))
}

/// Fan of k spikes: 2k-1 vertices alternating between the outer and inner
/// radius at angles j * delta, so the k even positions are the spike tips
/// and the chain starts and ends on tips. Angularly monotone with per-edge
/// turn under a quarter circle, so the chain is always simple; coordinates
/// are rounded to 1e-6 to stay exact.
pub fn gen_fan(k: usize, r_inner: f64, r_outer: f64, delta: f64) -> Result<Chain2, GenError> {
    if k < 2 {
        return Err(GenError::Parameter(format!("need k >= 2 spikes, got {k}")));
    }
    if !(r_inner > 0.0 && r_inner < r_outer) {
        return Err(GenError::Parameter(format!(
            "need 0 < r_inner < r_outer, got {r_inner} and {r_outer}"
        )));
    }
    let max_delta = std::f64::consts::PI / (2.0 * k as f64);
    if !(delta > 0.0 && delta < max_delta) {
        return Err(GenError::Parameter(format!(
            "need 0 < delta < pi/(2k) = {max_delta}, got {delta}"
        )));
    }
    let round6 = |v: f64| scalar_ratio((v * 1e6).round() as i64, 1_000_000);
    let vs = (0..2 * k - 1)
        .map(|j| {
            let r = if j % 2 == 0 { r_outer } else { r_inner };
            let a = j as f64 * delta;
            Point2::new(round6(r * a.cos()), round6(r * a.sin()))
        })
        .collect();
    validate_chain(vs).map_err(|e| GenError::Parameter(format!("degenerate fan: {e}")))
}

/// Uniform random simple chain in the integer box [0, 4n]^2, built by
/// incremental rejection: each new edge may touch the chain only at the
/// shared vertex, and collinear triples are rejected to keep all n corners.
pub fn gen_random_simple(n: usize, seed: u64) -> Result<Chain2, GenError> {
    if n < 2 {
        return Err(GenError::Parameter(format!("need n >= 2 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = 4 * n as i64;
    for _ in 0..64 {
        if let Some(vs) = try_build(&mut rng, n, hi) {
            return Ok(validate_chain(vs).expect("incremental construction keeps the chain simple"));
        }
    }
    Err(GenError::Timeout)
}

fn try_build(rng: &mut ChaCha8Rng, n: usize, hi: i64) -> Option<Vec<Point2>> {
    let mut vs: Vec<Point2> = Vec::with_capacity(n);
    while vs.len() < n {
        let mut placed = false;
        for _ in 0..500 {
            let p = Point2::ints(rng.gen_range(0..=hi), rng.gen_range(0..=hi));
            if admissible(&vs, &p) {
                vs.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    Some(vs)
}

fn admissible(vs: &[Point2], p: &Point2) -> bool {
    let m = vs.len();
    if m == 0 {
        return true;
    }
    let last = &vs[m - 1];
    if p == last {
        return false;
    }
    if m >= 2 && orient(&vs[m - 2], last, p) == 0 {
        return false;
    }
    // The new edge may meet earlier edges nowhere; touching an old vertex
    // counts as an intersection.
    for i in 0..m.saturating_sub(2) {
        if segments_intersect(&vs[i], &vs[i + 1], last, p) {
            return false;
        }
    }
    true
}
