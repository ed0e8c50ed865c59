//! Misspecification demos, quarantined behind the `adversarial` flag:
//! a constant objective on a segment where a scripted oracle steers the
//! iterates at will, and a squared-distance objective where scripted
//! tie-breaks on the bottom edge sustain a left-right bounce.

use super::instance::{
    CeId, CertTemplate, ExactData, Instance, SolutionSet, StartPoint, StrategyKind,
};
use crate::error::{Error, Result};
use crate::exact::{rat, rint, Rat, RVec2};
use crate::fw::{Feasible, LmoPolicy};
use crate::geom2d::{ConvexPolygon, Segment, Vec2};
use num_traits::{Signed, Zero};

pub const DEMO_A_DEFAULT_HORIZON: usize = 10_001;

/// The exact demo-B simulation roughly triples coordinate digit counts per
/// step (each line-search root is a rational function of the state), so the
/// exact reference stops early; scripts come from floating simulation.
const DEMO_B_EXACT_CAP: usize = 12;

/// Demo A script: blocks of doubling length aiming at alternating endpoints.
/// With the 1/(t+1) schedule a block [2^j, 2^{j+1}) pulls the iterate half
/// way to its target, so the swing never damps out (plain per-step
/// alternation would average out and converge to 1/2).
pub fn demo_a_script(horizon: usize) -> Vec<usize> {
    (0..horizon)
        .map(|t| {
            let block = (usize::BITS - 1 - (t + 1).leading_zeros()) as usize;
            if block.is_multiple_of(2) {
                1
            } else {
                0
            }
        })
        .collect()
}

/// Exact iterates of demo A under the scripted oracle and the 1/(t+1)
/// schedule, starting from 1/2.
pub fn demo_a_reference(script: &[usize], iterations: usize) -> Result<Vec<RVec2>> {
    if iterations > script.len() {
        return Err(Error::ScriptExhausted { t: script.len() });
    }
    let mut out = Vec::with_capacity(iterations + 1);
    let mut x = rat(1, 2);
    out.push(RVec2::new(x.clone(), rint(0)));
    for (t, &v) in script.iter().enumerate().take(iterations) {
        let gamma = rat(1, t as i64 + 1);
        let target = rint(v as i64);
        x = (rint(1) - &gamma) * &x + &gamma * target;
        out.push(RVec2::new(x.clone(), rint(0)));
    }
    Ok(out)
}

pub fn gen_demo_a(horizon: usize) -> Instance {
    let script = demo_a_script(horizon.max(DEMO_A_DEFAULT_HORIZON) + 1);
    Instance {
        id: CeId::MisA,
        constraint: Feasible::Segment(Segment::new(Vec2::zero(), Vec2::new(1.0, 0.0))),
        spec: crate::sketch::SketchSpec {
            polytopes: vec![],
            marks: vec![],
            margins: vec![],
            domain: ConvexPolygon::new(vec![
                Vec2::new(-1.0, -1.0),
                Vec2::new(2.0, -1.0),
                Vec2::new(2.0, 1.0),
                Vec2::new(-1.0, 1.0),
            ])
            .unwrap(),
            smoothness_degree: 0,
        },
        strategy: StrategyKind::Open1,
        policy: LmoPolicy::Scripted { vertex_by_iteration: script.clone() },
        start: StartPoint::Point(Vec2::new(0.5, 0.0)),
        solution_set: SolutionSet::Segment(Segment::new(Vec2::zero(), Vec2::new(1.0, 0.0))),
        build: crate::sketch::BuildParams::default(),
        expected: CertTemplate {
            non_cauchy_epsilon: 0.15,
            non_cauchy_window: 0,
            band_half_width: None,
            displacement_threshold: None,
            oracle_segment: None,
            gamma_decay: false,
        },
        adversarial: true,
        exact: ExactData::MisA { script },
    }
}

pub fn demo_b_constraint() -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Vec2::new(-2.0, 0.25),
        Vec2::new(-1.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap()
}

pub fn demo_b_target() -> Segment {
    Segment::new(Vec2::new(-0.5, 0.0), Vec2::new(0.5, 0.0))
}

fn clamp_rat(x: &Rat, lo: &Rat, hi: &Rat) -> Rat {
    if x < lo {
        lo.clone()
    } else if x > hi {
        hi.clone()
    } else {
        x.clone()
    }
}

/// Exact demo-B state step: gradient of the squared distance to the target
/// segment, oracle choice with alternation on exact ties, and exact line
/// search (sup of the gamma with nonpositive directional derivative, which
/// the floating bisection approaches from above).
struct DemoBSim {
    x: RVec2,
    tie_toggle: bool,
    verts: Vec<RVec2>,
}

impl DemoBSim {
    fn new() -> Self {
        DemoBSim {
            x: RVec2::of(0, 1, 1, 1),
            tie_toggle: false,
            verts: vec![
                RVec2::of(-2, 1, 1, 4),
                RVec2::of(-1, 1, 0, 1),
                RVec2::of(1, 1, 0, 1),
                RVec2::of(0, 1, 1, 1),
            ],
        }
    }

    fn gradient(p: &RVec2) -> RVec2 {
        let half = rat(1, 2);
        let proj = clamp_rat(&p.x, &(-half.clone()), &half);
        RVec2::new(rint(2) * (&p.x - proj), rint(2) * &p.y)
    }

    /// Oracle choice: exact minimizer; on ties, alternate among the tied
    /// vertices in a fixed toggling order (rightmost first).
    fn oracle(&mut self, g: &RVec2) -> usize {
        let scores: Vec<Rat> = self.verts.iter().map(|v| crate::exact::rdot(v, g)).collect();
        let min = scores.iter().min().unwrap().clone();
        let tied: Vec<usize> = (0..4).filter(|&i| scores[i] == min).collect();
        if tied.len() == 1 {
            tied[0]
        } else {
            // Prefer the larger-x tied vertex first, then alternate.
            let mut order = tied.clone();
            order.sort_by(|&i, &j| self.verts[j].x.cmp(&self.verts[i].x));
            let pick = if self.tie_toggle { order[1 % order.len()] } else { order[0] };
            self.tie_toggle = !self.tie_toggle;
            pick
        }
    }

    /// Largest gamma in [0,1] with phi'(gamma) <= 0; phi is the squared
    /// distance along x + gamma d, piecewise quadratic with breakpoints
    /// where the moving abscissa crosses the clamp corners -1/2 and 1/2.
    fn line_search(&self, v: &RVec2) -> Rat {
        let d = v.sub(&self.x);
        let phi_prime = |g: &Rat| -> Rat {
            let p = self.x.add(&d.scale(g));
            let grad = Self::gradient(&p);
            crate::exact::rdot(&d, &grad)
        };
        let zero = rint(0);
        let one = rint(1);
        if phi_prime(&zero) >= zero {
            return zero;
        }
        if phi_prime(&one) <= zero {
            return one;
        }
        // Breakpoints of the piecewise-linear derivative.
        let mut knots = vec![zero.clone(), one.clone()];
        if !d.x.is_zero() {
            for c in [rat(-1, 2), rat(1, 2)] {
                let g = (c - &self.x.x) / &d.x;
                if g > zero && g < one {
                    knots.push(g);
                }
            }
        }
        knots.sort();
        for w in knots.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (pa, pb) = (phi_prime(a), phi_prime(b));
            if pa <= zero && pb > zero {
                // Affine on [a, b]: root = a - pa (b - a) / (pb - pa).
                return a - &pa * (b - a) / (&pb - &pa);
            }
        }
        one
    }

    fn step(&mut self) -> usize {
        let g = Self::gradient(&self.x);
        let idx = self.oracle(&g);
        let v = self.verts[idx].clone();
        let gamma = self.line_search(&v);
        self.x = self.x.lerp(&v, &gamma);
        idx
    }
}

/// Exact demo-B script and reference for the first `n` iterations.
pub fn demo_b_exact(n: usize) -> (Vec<usize>, Vec<RVec2>) {
    let mut sim = DemoBSim::new();
    let mut script = Vec::with_capacity(n);
    let mut reference = Vec::with_capacity(n + 1);
    reference.push(sim.x.clone());
    for _ in 0..n {
        script.push(sim.step());
        reference.push(sim.x.clone());
    }
    (script, reference)
}

/// Demo-B script from floating simulation, with alternation on near-ties
/// mirroring the exact tie rule (and agreeing with it on the exact prefix).
fn demo_b_float_script(horizon: usize) -> Vec<usize> {
    use crate::fw::{DistSqObjective, Objective};
    let verts = demo_b_constraint().vertices().to_vec();
    let f = DistSqObjective { target: demo_b_target() };
    let mut x = Vec2::new(0.0, 1.0);
    let mut toggle = false;
    let mut script = Vec::with_capacity(horizon);
    while script.len() < horizon {
        let g = f.gradient(x).unwrap();
        let scores: Vec<f64> = verts.iter().map(|v| v.dot(g)).collect();
        let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = scores.iter().fold(1.0f64, |m, s| m.max(s.abs()));
        let tied: Vec<usize> = (0..verts.len())
            .filter(|&i| scores[i] <= min + 1e-13 * scale)
            .collect();
        let idx = if tied.len() == 1 {
            tied[0]
        } else {
            let mut order = tied.clone();
            order.sort_by(|&i, &j| verts[j].x.partial_cmp(&verts[i].x).unwrap());
            let pick = if toggle { order[1 % order.len()] } else { order[0] };
            toggle = !toggle;
            pick
        };
        script.push(idx);
        let v = verts[idx];
        let st = crate::fw::StepState { t: script.len() - 1, x, v, grad_x: g, objective: Some(&f) };
        let gamma = crate::fw::step_size(&crate::fw::StepStrategy::LineSearch { tol: 1e-12 }, &st)
            .unwrap_or(0.0);
        x = x.lerp(v, gamma);
    }
    script
}

pub fn gen_demo_b(horizon: usize) -> Instance {
    let script = demo_b_float_script(horizon + 1);
    let (_, reference) = demo_b_exact(DEMO_B_EXACT_CAP.min(horizon));
    Instance {
        id: CeId::MisB,
        constraint: Feasible::Polygon(demo_b_constraint()),
        spec: crate::sketch::SketchSpec {
            polytopes: vec![],
            marks: vec![],
            margins: vec![],
            domain: ConvexPolygon::new(vec![
                Vec2::new(-3.0, -1.0),
                Vec2::new(2.0, -1.0),
                Vec2::new(2.0, 2.0),
                Vec2::new(-3.0, 2.0),
            ])
            .unwrap(),
            smoothness_degree: 0,
        },
        strategy: StrategyKind::LineSearch(1e-12),
        policy: LmoPolicy::Scripted { vertex_by_iteration: script.clone() },
        start: StartPoint::Point(Vec2::new(0.0, 1.0)),
        solution_set: SolutionSet::Segment(demo_b_target()),
        build: crate::sketch::BuildParams::default(),
        expected: CertTemplate {
            non_cauchy_epsilon: 0.5,
            non_cauchy_window: 0,
            band_half_width: None,
            displacement_threshold: None,
            oracle_segment: None,
            gamma_decay: false,
        },
        adversarial: true,
        exact: ExactData::MisB { script, reference },
    }
}

/// Both misspecification demos.
pub fn gen_mis_demos(horizon: usize) -> Vec<Instance> {
    vec![gen_demo_a(horizon), gen_demo_b(horizon)]
}
