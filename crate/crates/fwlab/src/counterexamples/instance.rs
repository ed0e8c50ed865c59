//! Bundled solver instances: constraint set, sketch, strategy, start point,
//! solution set and certificate thresholds.

use crate::exact::RVec2;
use crate::fw::{Feasible, LmoPolicy, StepStrategy};
use crate::geom2d::{ConvexPolygon, Segment, Vec2};
use crate::sketch::{BuildParams, SketchSpec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CeId {
    Ce1,
    Ce2,
    Ce3,
    Ce4,
    MisA,
    MisB,
}

impl CeId {
    pub fn name(self) -> &'static str {
        match self {
            CeId::Ce1 => "ce1",
            CeId::Ce2 => "ce2",
            CeId::Ce3 => "ce3",
            CeId::Ce4 => "ce4",
            CeId::MisA => "misA",
            CeId::MisB => "misB",
        }
    }
}

/// Step strategy with the closed-loop constant possibly deferred to run
/// time (estimated from the built objective).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum StrategyKind {
    Open1,
    Open2,
    /// None: L = 2 x sampled Lipschitz estimate at run time.
    Closed(Option<f64>),
    LineSearch(f64),
}

impl StrategyKind {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Open1 => "open1",
            StrategyKind::Open2 => "open2",
            StrategyKind::Closed(_) => "closed",
            StrategyKind::LineSearch(_) => "linesearch",
        }
    }

    /// Resolve to a concrete strategy, filling the closed-loop constant.
    pub fn resolve(&self, l_auto: impl FnOnce() -> f64) -> StepStrategy {
        match *self {
            StrategyKind::Open1 => StepStrategy::Open1,
            StrategyKind::Open2 => StepStrategy::Open2,
            StrategyKind::Closed(Some(l)) => StepStrategy::Closed { l },
            StrategyKind::Closed(None) => StepStrategy::Closed { l: l_auto() },
            StrategyKind::LineSearch(tol) => StepStrategy::LineSearch { tol },
        }
    }
}

/// Where the numeric run starts: a marked boundary point (resolved against
/// the built objective), a point just inside it on the shell interpolation
/// toward the next level (used when the exact marked point sits on a
/// constraint corner whose rounding arc pokes outside), or a fixed point.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum StartPoint {
    MarkIndex(usize),
    ShellMark { mark: usize, sigma: f64 },
    Point(Vec2),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum SolutionSet {
    Segment(Segment),
    Polygon(ConvexPolygon),
}

impl SolutionSet {
    pub fn distance(&self, p: Vec2) -> f64 {
        match self {
            SolutionSet::Segment(s) => s.distance(p),
            SolutionSet::Polygon(poly) => {
                if poly.contains(p, 0.0) {
                    0.0
                } else {
                    // Distance to the boundary: min over edges.
                    let vs = poly.vertices();
                    let mut d = f64::INFINITY;
                    for i in 0..vs.len() {
                        let seg = Segment::new(vs[i], vs[(i + 1) % vs.len()]);
                        d = d.min(seg.distance(p));
                    }
                    d
                }
            }
        }
    }
}

/// Certificate thresholds attached to an instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertTemplate {
    pub non_cauchy_epsilon: f64,
    pub non_cauchy_window: usize,
    /// Half-width of the vertical band whose crossings are counted.
    pub band_half_width: Option<f64>,
    /// Horizontal-displacement threshold for strip crossing events.
    pub displacement_threshold: Option<f64>,
    /// Check that every oracle answer lies on this segment.
    pub oracle_segment: Option<Segment>,
    /// Check gamma_t < 1 and a decaying gamma trend.
    pub gamma_decay: bool,
}

/// Exact (rational) reference data per instance family.
#[derive(Clone, Debug)]
pub enum ExactData {
    Ce1,
    Ce2,
    Ce3 {
        k_param: u32,
    },
    Ce4 {
        open2: bool,
    },
    MisA {
        script: Vec<usize>,
    },
    MisB {
        script: Vec<usize>,
        reference: Vec<RVec2>,
    },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: CeId,
    pub constraint: Feasible,
    pub spec: SketchSpec,
    pub strategy: StrategyKind,
    pub policy: LmoPolicy,
    pub start: StartPoint,
    pub solution_set: SolutionSet,
    pub build: BuildParams,
    pub expected: CertTemplate,
    /// Misspecification demos are quarantined from the headline claims.
    pub adversarial: bool,
    pub exact: ExactData,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_set_distances() {
        let seg = SolutionSet::Segment(Segment::new(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0)));
        assert_eq!(seg.distance(Vec2::new(0.5, 0.0)), 0.0);
        assert!((seg.distance(Vec2::new(0.0, 2.0)) - 2.0).abs() < 1e-15);
        let poly = SolutionSet::Polygon(
            ConvexPolygon::new(vec![
                Vec2::new(-1.0, -1.0),
                Vec2::new(1.0, -1.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(-1.0, 1.0),
            ])
            .unwrap(),
        );
        assert_eq!(poly.distance(Vec2::zero()), 0.0);
        assert!((poly.distance(Vec2::new(3.0, 0.0)) - 2.0).abs() < 1e-15);
    }
}

impl Instance {
    /// Whether a strategy matches the instance's intended one.
    pub fn strategy_compatible(&self, kind: &StrategyKind) -> bool {
        match self.id {
            CeId::Ce1 | CeId::Ce2 => matches!(kind, StrategyKind::LineSearch(_)),
            CeId::Ce3 => matches!(kind, StrategyKind::Closed(_)),
            CeId::Ce4 => matches!(kind, StrategyKind::Open1 | StrategyKind::Open2),
            CeId::MisA | CeId::MisB => true,
        }
    }
}
