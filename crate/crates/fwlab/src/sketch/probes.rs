//! Sampling probes for objective properties: midpoint convexity and
//! finite-difference gradient consistency.

use super::objective::SketchObjective;
use crate::fw::Objective;
use crate::geom2d::{Body, ConvexPolygon, Vec2};
use crate::rng::Rng;

fn sample_in(region: &ConvexPolygon, rng: &mut Rng) -> Vec2 {
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for v in region.vertices() {
        xmin = xmin.min(v.x);
        xmax = xmax.max(v.x);
        ymin = ymin.min(v.y);
        ymax = ymax.max(v.y);
    }
    loop {
        let p = Vec2::new(rng.range(xmin, xmax), rng.range(ymin, ymax));
        if region.inside_slack(p) > 1e-9 {
            return p;
        }
    }
}

/// Count of sampled pairs violating midpoint convexity:
/// f((x+y)/2) > (f(x) + f(y))/2 + tol.
pub fn midpoint_convexity_violations(
    obj: &dyn Objective,
    region: &ConvexPolygon,
    n_pairs: usize,
    tol: f64,
    seed: u64,
) -> usize {
    let mut rng = Rng::new(seed);
    let mut violations = 0;
    for _ in 0..n_pairs {
        let x = sample_in(region, &mut rng);
        let y = sample_in(region, &mut rng);
        let mid = (x + y) * 0.5;
        let (fx, fy, fm) = match (obj.value(x), obj.value(y), obj.value(mid)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => continue,
        };
        if fm > 0.5 * (fx + fy) + tol {
            violations += 1;
        }
    }
    violations
}

#[derive(Clone, Copy, Debug)]
pub struct FiniteDiffReport {
    pub checked: usize,
    pub max_error: f64,
}

/// Centered finite differences against the analytic gradient at points
/// strictly inside a shell: blend weight in [0.1, 0.9], on a straight
/// boundary piece long enough that the +-h probe stays on the same smooth
/// piece (at least 10h from the arc/edge junctions, and shells thick enough
/// along their normal for the probe not to cross a level boundary).
pub fn finite_difference_check(
    obj: &SketchObjective,
    n_points: usize,
    h: f64,
    seed: u64,
) -> FiniteDiffReport {
    let mut rng = Rng::new(seed);
    let mut checked = 0;
    let mut max_error = 0.0f64;
    let mut attempts = 0usize;
    let depth = obj.depth();
    while checked < n_points && attempts < n_points * 200 {
        attempts += 1;
        let level = rng.index(depth);
        let sigma = rng.range(0.1, 0.9);
        // Blend the shell bodies directly through the public surface.
        let core_blend = blend_core(obj, level, sigma);
        let r_blend = (1.0 - sigma) * obj.radii()[level] + sigma * obj.radii()[level + 1];
        let n = core_blend.len();
        if n < 2 {
            continue;
        }
        let i = rng.index(n);
        let a = core_blend[i];
        let b = core_blend[(i + 1) % n];
        let len = (b - a).norm();
        if len < 0.02 {
            continue;
        }
        let nrm = (b - a).perp_cw().unit();
        // Shell must be thick enough along this normal.
        let thickness = match (
            obj.bodies()[level].support(nrm),
            obj.bodies()[level + 1].support(nrm),
        ) {
            (Ok(h0), Ok(h1)) => h0 - h1,
            _ => continue,
        };
        if thickness < 40.0 * h / 0.1 {
            continue;
        }
        let s = rng.range(0.2, 0.8);
        let x = a + (b - a) * s + nrm * r_blend;
        let (du_x, du_y) = rng.unit_dir();
        let u = Vec2::new(du_x, du_y);
        let g = match obj.eval(x) {
            Ok((_, g)) => g,
            Err(_) => continue,
        };
        let (fp, fm) = match (obj.value(x + u * h), obj.value(x - u * h)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let fd = (fp - fm) / (2.0 * h);
        max_error = max_error.max((fd - g.dot(u)).abs());
        checked += 1;
    }
    FiniteDiffReport { checked, max_error }
}

fn blend_core(obj: &SketchObjective, level: usize, sigma: f64) -> Vec<Vec2> {
    let a = Body::new(obj.bodies()[level].core().to_vec(), 0.0);
    let b = Body::new(obj.bodies()[level + 1].core().to_vec(), 0.0);
    crate::geom2d::minkowski_combination(&a, &b, 1.0 - sigma, sigma)
        .map(|body| body.core().to_vec())
        .unwrap_or_default()
}
