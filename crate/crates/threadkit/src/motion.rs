//! Rigid motions that carry a threadable chain through the origin hole in
//! the x-axis. The separating line is kept horizontal by rotating the chain
//! so the butterfly bisector points straight up; the part already threaded
//! then lies below the axis and the rest above.

use std::f64::consts::PI;

use crate::chain::{Chain2, ChainParam, OutOfRange};
use crate::geom::Point2;
use crate::scalar::{scalar_from_f64, scalar_to_f64};
use crate::threadability::{butterfly_at, decide, CertInterval, Witness};

/// Rigid placement of the chain: q maps to R(angle) q + (tx, ty).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub angle: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Pose {
    pub fn apply(&self, q: (f64, f64)) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (
            c * q.0 - s * q.1 + self.tx,
            s * q.0 + c * q.1 + self.ty,
        )
    }

    pub fn apply_point(&self, q: &Point2) -> (f64, f64) {
        self.apply((scalar_to_f64(&q.x), scalar_to_f64(&q.y)))
    }
}

/// One slide of the hole point across a parameter range with constant hull
/// anchors on both sides. The rotation within it reverses direction at most
/// once, at the recorded split.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionInterval {
    pub lo: ChainParam,
    pub hi: ChainParam,
    pub prefix: (usize, usize),
    pub suffix: (usize, usize),
    pub split: Option<ChainParam>,
}

#[derive(Debug, Clone)]
pub struct MotionPlan {
    chain: Chain2,
    intervals: Vec<MotionInterval>,
}

impl MotionPlan {
    pub fn chain(&self) -> &Chain2 {
        &self.chain
    }

    pub fn intervals(&self) -> &[MotionInterval] {
        &self.intervals
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("chain is not threadable; first failure at {}", .0.param)]
pub struct NotThreadable(pub Witness);

/// Build the motion plan for a threadable chain. Intervals follow the
/// verdict certificate, further cut so that each one contains at most one
/// parameter where the rotation direction flips; the first flip stays
/// interior as the recorded split, later ones become interval boundaries.
pub fn plan(c: &Chain2) -> Result<MotionPlan, NotThreadable> {
    let v = decide(c);
    if !v.threadable {
        return Err(NotThreadable(
            v.witness.expect("failing verdict carries a witness"),
        ));
    }
    let cert = v.certificate.expect("threadable verdict carries a certificate");
    let mut intervals = Vec::new();
    for iv in cert {
        let mut splits = find_rotation_splits(c, &iv);
        splits.retain(|s| iv.lo < *s && *s < iv.hi);
        let cuts: Vec<ChainParam> = splits.iter().skip(1).step_by(2).cloned().collect();
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(iv.lo.clone());
        bounds.extend(cuts);
        bounds.push(iv.hi.clone());
        for (i, w) in bounds.windows(2).enumerate() {
            if w[0] >= w[1] {
                continue;
            }
            let split = splits
                .get(2 * i)
                .filter(|s| w[0] < **s && **s < w[1])
                .cloned();
            intervals.push(MotionInterval {
                lo: w[0].clone(),
                hi: w[1].clone(),
                prefix: iv.prefix,
                suffix: iv.suffix,
                split,
            });
        }
    }
    Ok(MotionPlan {
        chain: c.clone(),
        intervals,
    })
}

/// Pose at a parameter: the butterfly bisector maps to (0, 1) and the hole
/// point to the origin. Depends only on the chain and the parameter, so
/// poses agree wherever intervals meet.
pub fn pose_at(plan: &MotionPlan, p: &ChainParam) -> Result<Pose, OutOfRange> {
    let pt = plan.chain.point_at(p)?;
    let arc = butterfly_at(&plan.chain, p)?.expect("threadable chain has a nonempty butterfly");
    let (nx, ny) = arc.bisector_unit();
    let angle = wrap_angle(PI / 2.0 - ny.atan2(nx));
    let (s, c) = angle.sin_cos();
    let (px, py) = (scalar_to_f64(&pt.x), scalar_to_f64(&pt.y));
    Ok(Pose {
        angle,
        tx: -(c * px - s * py),
        ty: -(s * px + c * py),
    })
}

/// Check a pose against the threading condition: the hole point lands on
/// the origin and every vertex strictly before it maps below the axis,
/// every vertex strictly after it above, each with clearance tol relative
/// to the chain diameter. Edges are straight, so the interior of every
/// sub-edge between checked points stays on the checked side.
pub fn validate_pose(c: &Chain2, p: &ChainParam, pose: &Pose, tol: f64) -> bool {
    let Ok(pt) = c.point_at(p) else {
        return false;
    };
    let eps = tol * c.diameter_f64();
    let (hx, hy) = pose.apply_point(&pt);
    if hx.hypot(hy) > eps {
        return false;
    }
    let g = p.global();
    for i in 1..=c.n() {
        let vg = ChainParam::at_vertex(i, c.n()).global();
        let (_, y) = pose.apply_point(c.vertex(i));
        if vg < g && y >= -eps {
            return false;
        }
        if vg > g && y <= eps {
            return false;
        }
    }
    true
}

/// Poses sampled across the plan, samples_per_interval steps per interval,
/// with shared boundary parameters emitted once. Parameters are
/// non-decreasing along the sequence.
pub fn sample_plan(plan: &MotionPlan, samples_per_interval: usize) -> Vec<(ChainParam, Pose)> {
    let k = samples_per_interval.max(1);
    let n = plan.chain.n();
    let mut out: Vec<(ChainParam, Pose)> = Vec::new();
    for (idx, iv) in plan.intervals.iter().enumerate() {
        let lo = scalar_to_f64(&iv.lo.global());
        let hi = scalar_to_f64(&iv.hi.global());
        for j in 0..=k {
            if j == 0 && idx > 0 {
                continue;
            }
            let p = if j == 0 {
                iv.lo.clone()
            } else if j == k {
                iv.hi.clone()
            } else {
                param_clamped(n, lo + (hi - lo) * (j as f64 / k as f64))
            };
            let pose = pose_at(plan, &p).expect("sample param in range");
            out.push((p, pose));
        }
    }
    out
}

/// Total absolute rotation of the sampled pose sequence. Converges as the
/// sampling densifies because rotation is piecewise monotone.
pub fn rotation_cost(plan: &MotionPlan, samples_per_interval: usize) -> f64 {
    sample_plan(plan, samples_per_interval)
        .windows(2)
        .map(|w| wrap_angle(w[1].1.angle - w[0].1.angle).abs())
        .sum()
}

/// Principal representative of an angle in (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

const SPLIT_SCAN_SAMPLES: usize = 64;
const SPLIT_REFINE_WIDTH: f64 = 1e-12;

fn angle_at(c: &Chain2, n: usize, g: f64) -> f64 {
    let p = param_clamped(n, g);
    let arc = butterfly_at(c, &p)
        .expect("param in range")
        .expect("threadable chain has a nonempty butterfly");
    let (nx, ny) = arc.bisector_unit();
    wrap_angle(PI / 2.0 - ny.atan2(nx))
}

fn param_clamped(n: usize, g: f64) -> ChainParam {
    let g = g.clamp(0.0, (n - 1) as f64);
    let g = scalar_from_f64(g).expect("clamped param is finite");
    ChainParam::from_global(&g, n)
}

/// Parameters inside the interval where the pose angle's derivative changes
/// sign, in increasing order, each located by a symmetric-difference scan
/// and refined by bisection. Empty when the rotation never strictly
/// reverses. One constant-anchor slide can reverse more than once: the
/// bisector's turning rate balances one inverse-square term per binding
/// wing, and that balance is quadratic in the slide parameter.
fn find_rotation_splits(c: &Chain2, iv: &CertInterval) -> Vec<ChainParam> {
    let n = c.n();
    let lo = scalar_to_f64(&iv.lo.global());
    let hi = scalar_to_f64(&iv.hi.global());
    let len = hi - lo;
    if !(len > 0.0) {
        return Vec::new();
    }
    let h = len / (4.0 * SPLIT_SCAN_SAMPLES as f64);
    let deriv = |g: f64| wrap_angle(angle_at(c, n, g + h) - angle_at(c, n, g - h));
    let mut splits = Vec::new();
    let mut last: Option<(f64, bool)> = None;
    for i in 0..SPLIT_SCAN_SAMPLES {
        let g = lo + len * ((i as f64 + 0.5) / SPLIT_SCAN_SAMPLES as f64);
        let d = deriv(g);
        if d == 0.0 {
            continue;
        }
        let rising = d > 0.0;
        if let Some((pg, prev_rising)) = last {
            if rising != prev_rising {
                let (mut a, mut b) = (pg, g);
                while b - a > SPLIT_REFINE_WIDTH {
                    let m = 0.5 * (a + b);
                    let dm = deriv(m);
                    if dm == 0.0 {
                        a = m;
                        b = m;
                    } else if (dm > 0.0) == prev_rising {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                splits.push(param_clamped(n, 0.5 * (a + b)));
            }
        }
        last = Some((g, rising));
    }
    splits
}
