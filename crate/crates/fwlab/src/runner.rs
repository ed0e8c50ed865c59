//! Shared plumbing for executing instances: objective construction, start
//! point resolution, closed-loop constant estimation, and the run itself.

use crate::counterexamples::{CeId, Instance, StartPoint, StrategyKind};
use crate::error::Result;
use crate::fw::{run_fw, DistSqObjective, Feasible, Objective, Trajectory, ZeroObjective};
use crate::geom2d::{Segment, Vec2};
use crate::sketch::{build_objective, lipschitz_estimate, MarkedPoint, SketchObjective};

pub enum InstanceObjective {
    Sketch(SketchObjective),
    Zero(ZeroObjective),
    DistSq(DistSqObjective),
}

impl InstanceObjective {
    pub fn marked_points(&self) -> &[MarkedPoint] {
        match self {
            InstanceObjective::Sketch(s) => s.marked_points(),
            _ => &[],
        }
    }

    pub fn sketch(&self) -> Option<&SketchObjective> {
        match self {
            InstanceObjective::Sketch(s) => Some(s),
            _ => None,
        }
    }
}

impl Objective for InstanceObjective {
    fn eval(&self, x: Vec2) -> Result<(f64, Vec2)> {
        match self {
            InstanceObjective::Sketch(s) => s.eval(x),
            InstanceObjective::Zero(z) => z.eval(x),
            InstanceObjective::DistSq(d) => d.eval(x),
        }
    }
}

pub fn build_instance_objective(inst: &Instance) -> Result<InstanceObjective> {
    Ok(match inst.id {
        CeId::MisA => InstanceObjective::Zero(ZeroObjective),
        CeId::MisB => InstanceObjective::DistSq(DistSqObjective {
            target: Segment::new(Vec2::new(-0.5, 0.0), Vec2::new(0.5, 0.0)),
        }),
        _ => InstanceObjective::Sketch(build_objective(&inst.spec, &inst.build)?),
    })
}

/// Nearest point of the feasible set (for clipping marked start points that
/// stick out of a constraint corner by a rounding-arc sliver).
pub fn clip_to_feasible(set: &Feasible, p: Vec2) -> Vec2 {
    match set {
        Feasible::Segment(s) => s.project(p),
        Feasible::Polygon(poly) => {
            if poly.contains(p, 0.0) {
                return p;
            }
            let vs = poly.vertices();
            let mut best = (f64::INFINITY, p);
            for i in 0..vs.len() {
                let seg = Segment::new(vs[i], vs[(i + 1) % vs.len()]);
                let q = seg.project(p);
                let d = q.dist(p);
                if d < best.0 {
                    best = (d, q);
                }
            }
            best.1
        }
    }
}

pub fn resolve_start(inst: &Instance, obj: &InstanceObjective) -> Vec2 {
    let raw = match inst.start {
        StartPoint::Point(p) => p,
        StartPoint::MarkIndex(i) => obj.marked_points()[i].point,
        StartPoint::ShellMark { mark, sigma } => {
            let m = &obj.marked_points()[mark];
            obj.sketch()
                .map(|s| s.shell_point(m.level, sigma, m.dir))
                .unwrap_or(m.point)
        }
    };
    clip_to_feasible(&inst.constraint, raw)
}

pub struct InstanceRun {
    pub trajectory: Trajectory,
    pub objective: InstanceObjective,
    pub x0: Vec2,
    /// Sampled Lipschitz lower estimate, when one was taken.
    pub l_estimate: Option<f64>,
    /// Closed-loop constant actually used, when the strategy is closed.
    pub l_used: Option<f64>,
}

pub const LIPSCHITZ_SAMPLES: usize = 2000;

/// Build the objective, resolve the strategy (estimating the closed-loop
/// constant as twice the sampled Lipschitz estimate when requested), and
/// run the given number of iterations.
pub fn run_instance(
    inst: &Instance,
    strategy: &StrategyKind,
    iterations: usize,
    seed: u64,
) -> Result<InstanceRun> {
    let objective = build_instance_objective(inst)?;
    let x0 = resolve_start(inst, &objective);
    let mut l_estimate = None;
    let resolved = strategy.resolve(|| {
        let region = match &inst.constraint {
            Feasible::Polygon(p) => p.clone(),
            Feasible::Segment(s) => {
                // Degenerate region: fall back to a thin box around it.
                let d = (s.b - s.a).unit().perp() * 1e-6;
                crate::geom2d::ConvexPolygon::new(vec![s.a - d, s.b - d, s.b + d, s.a + d])
                    .expect("segment box")
            }
        };
        let l = lipschitz_estimate(&objective, &region, LIPSCHITZ_SAMPLES, seed);
        l_estimate = Some(l);
        (2.0 * l).max(f64::MIN_POSITIVE)
    });
    let l_used = match resolved {
        crate::fw::StepStrategy::Closed { l } => Some(l),
        _ => None,
    };
    let trajectory = run_fw(&inst.constraint, &objective, &resolved, &inst.policy, x0, iterations)?;
    Ok(InstanceRun {
        trajectory,
        objective,
        x0,
        l_estimate,
        l_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::gen_ce4;

    #[test]
    fn start_points_are_clipped_into_the_constraint() {
        let inst = gen_ce4(true, 8).unwrap();
        let obj = build_instance_objective(&inst).unwrap();
        let x0 = resolve_start(&inst, &obj);
        assert!(inst.constraint.contains(x0, 1e-12));
        // The clip moves the marked point by at most the rounding scale.
        let raw = obj.marked_points()[0].point;
        assert!(x0.dist(raw) <= 2.0 * inst.build.r_scale);
    }
}
