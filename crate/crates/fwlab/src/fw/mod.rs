//! Frank-Wolfe solver: linear minimization oracle with specified and
//! scripted policies, the four step-size strategies, and the iteration
//! loop with full trajectory recording.

mod lmo;
mod run;
mod step;
mod trajectory;

pub use lmo::{lmo, Feasible, LmoPolicy};
pub use run::run_fw;
pub use step::{step_size, StepState, StepStrategy};
pub use trajectory::{Trajectory, TrajectoryPoint};

use crate::error::Result;
use crate::geom2d::Vec2;

/// Objective handle used by the solver: value and gradient at a point.
pub trait Objective: Sync {
    fn eval(&self, x: Vec2) -> Result<(f64, Vec2)>;

    fn value(&self, x: Vec2) -> Result<f64> {
        Ok(self.eval(x)?.0)
    }

    fn gradient(&self, x: Vec2) -> Result<Vec2> {
        Ok(self.eval(x)?.1)
    }
}

/// The constant-zero objective (used by the misspecification demo).
pub struct ZeroObjective;

impl Objective for ZeroObjective {
    fn eval(&self, _x: Vec2) -> Result<(f64, Vec2)> {
        Ok((0.0, Vec2::zero()))
    }
}

/// Squared distance to a segment; gradient 2 (x - proj(x)).
pub struct DistSqObjective {
    pub target: crate::geom2d::Segment,
}

impl Objective for DistSqObjective {
    fn eval(&self, x: Vec2) -> Result<(f64, Vec2)> {
        let p = self.target.project(x);
        let d = x - p;
        Ok((d.norm_sq(), d * 2.0))
    }
}
