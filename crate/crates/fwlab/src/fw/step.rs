//! Step-size strategies: two open-loop schedules, the closed-loop ratio,
//! and exact line search by bisection on the directional derivative.

use super::Objective;
use crate::error::{Error, Result};
use crate::geom2d::Vec2;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum StepStrategy {
    /// gamma_t = 1/(t+1)
    Open1,
    /// gamma_t = 2/(t+2)
    Open2,
    /// gamma_t = min(<x-v, grad> / (L |x-v|^2), 1)
    Closed { l: f64 },
    /// gamma_t minimizing f along [x, v]; `tol` bounds the final bracket.
    LineSearch { tol: f64 },
}

impl StepStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            StepStrategy::Open1 => "open1",
            StepStrategy::Open2 => "open2",
            StepStrategy::Closed { .. } => "closed",
            StepStrategy::LineSearch { .. } => "linesearch",
        }
    }
}

pub struct StepState<'a> {
    pub t: usize,
    pub x: Vec2,
    pub v: Vec2,
    pub grad_x: Vec2,
    /// Needed by the line-search strategy to evaluate along the segment.
    pub objective: Option<&'a dyn Objective>,
}

/// Directional derivative of f along x + gamma (v - x).
fn phi_prime(obj: &dyn Objective, x: Vec2, v: Vec2, gamma: f64) -> Result<f64> {
    let p = x.lerp(v, gamma);
    let g = obj.gradient(p)?;
    Ok((v - x).dot(g))
}

pub fn step_size(strategy: &StepStrategy, state: &StepState<'_>) -> Result<f64> {
    match *strategy {
        StepStrategy::Open1 => Ok(1.0 / (state.t as f64 + 1.0)),
        StepStrategy::Open2 => Ok(2.0 / (state.t as f64 + 2.0)),
        StepStrategy::Closed { l } => {
            let d = state.x - state.v;
            let dd = d.norm_sq();
            if dd == 0.0 {
                return Err(Error::DegenerateDirection);
            }
            Ok((d.dot(state.grad_x) / (l * dd)).clamp(0.0, 1.0))
        }
        StepStrategy::LineSearch { tol } => {
            let obj = state.objective.ok_or(Error::DegenerateDirection)?;
            line_search(obj, state.x, state.v, tol)
        }
    }
}

/// Bisection on the monotone directional derivative.
///
/// Convexity of f along the segment makes phi' nondecreasing, so the sign
/// change brackets the argmin. The bracket is refined past `tol` down to
/// floating-point resolution and the upper end is returned: on a flat
/// argmin interval (f constant on a middle stretch) this lands at the far
/// edge where the gradient is nonzero again, which keeps the subsequent
/// oracle call meaningful. Endpoints 0 and 1 are returned when phi' has
/// constant sign.
fn line_search(obj: &dyn Objective, x: Vec2, v: Vec2, tol: f64) -> Result<f64> {
    if (v - x).norm() == 0.0 {
        return Ok(0.0);
    }
    let d0 = phi_prime(obj, x, v, 0.0)?;
    if d0 >= 0.0 {
        return Ok(0.0);
    }
    let d1 = phi_prime(obj, x, v, 1.0)?;
    if d1 <= 0.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iters = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || iters > 200 {
            break;
        }
        if phi_prime(obj, x, v, mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iters += 1;
        if hi - lo <= tol && hi - lo <= 1e-15 {
            break;
        }
    }
    // An exactly vanishing derivative at the lower end means the bracket
    // sits at the right edge of a flat stretch of the objective (or on the
    // zero itself); report that edge rather than the strictly rising side.
    let mut gamma = if lo > 0.0 && phi_prime(obj, x, v, lo)? == 0.0 { lo } else { hi };
    // If that edge sits inside a region where the gradient vanishes
    // identically (a flat valley floor), step to the upper end instead so
    // the next oracle call still sees a direction.
    if gamma < hi && obj.gradient(x.lerp(v, gamma))?.is_zero() {
        gamma = hi;
    }
    // The minimum must not exceed the endpoint values; a failure here means
    // the directional derivative changed sign more than once.
    let f_star = obj.value(x.lerp(v, gamma))?;
    let f0 = obj.value(x)?;
    let f1 = obj.value(v)?;
    let seg_tol = 1e-9 * f0.abs().max(f1.abs()).max(1e-30);
    if f_star > f0 + seg_tol || f_star > f1 + seg_tol {
        return Err(Error::NonConvexSegment { f_star, f0, f1 });
    }
    Ok(gamma)
}
