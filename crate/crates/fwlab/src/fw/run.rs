//! The iteration loop: x_{t+1} = (1 - gamma_t) x_t + gamma_t v_t.

use super::lmo::{lmo, Feasible, LmoPolicy};
use super::step::{step_size, StepState, StepStrategy};
use super::trajectory::{Trajectory, TrajectoryPoint};
use super::Objective;
use crate::error::{Error, Result};
use crate::geom2d::Vec2;

/// Run T iterations from x0, recording every iterate (T + 1 records; the
/// last one carries the horizon state and takes no step). Deterministic
/// given identical inputs.
pub fn run_fw(
    set: &Feasible,
    obj: &dyn Objective,
    strategy: &StepStrategy,
    policy: &LmoPolicy,
    x0: Vec2,
    iterations: usize,
) -> Result<Trajectory> {
    let feas_tol = 1e-9 * (1.0 + set.diameter());
    if !set.contains(x0, feas_tol) {
        return Err(Error::InfeasibleStart);
    }
    let mut points = Vec::with_capacity(iterations + 1);
    let mut x = x0;
    for t in 0..=iterations {
        let (f, g) = obj
            .eval(x)
            .map_err(|e| Error::ObjectiveAt { t, source: Box::new(e) })?;
        let v = lmo(set, g, policy, t)?;
        let gap = (x - v).dot(g);
        let gamma = if t == iterations {
            0.0
        } else {
            step_size(
                strategy,
                &StepState { t, x, v, grad_x: g, objective: Some(obj) },
            )
            .map_err(|e| Error::ObjectiveAt { t, source: Box::new(e) })?
        };
        points.push(TrajectoryPoint { t, x, v, gamma, f, gap });
        x = x.lerp(v, gamma);
    }
    let l_constant = match strategy {
        StepStrategy::Closed { l } => Some(*l),
        _ => None,
    };
    Ok(Trajectory {
        strategy: strategy.name().to_string(),
        x0,
        l_constant,
        diameter: set.diameter(),
        points,
    })
}
