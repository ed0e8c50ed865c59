//! Open-loop instance: kite-shaped sketches whose top vertex replays the
//! open-loop recursion itself, flipping its oracle target each time the
//! abscissa leaves the band |x| <= 1/4. The exact iterate reference is the
//! top-vertex sequence.
//!
//! The mirrored bottom vertex of the sketch kites is chosen as (0, -y/2)
//! rather than the reflection of the top vertex: reflecting would let the
//! first sketch poke outside its predecessor near the far corner of the
//! constraint set, and the bottom vertex only serves to keep the origin
//! interior. The top-vertex dynamics are unaffected.

use super::instance::{
    CeId, CertTemplate, ExactData, Instance, SolutionSet, StartPoint, StrategyKind,
};
use super::pick::{pick_direction, DirConstraint};
use crate::error::{Error, Result};
use crate::exact::{rat, rint, RVec2};
use crate::fw::{Feasible, LmoPolicy};
use crate::geom2d::{cones_at_vertex, nesting_margin, ConvexPolygon, Segment, Vec2};
use crate::sketch::{BuildParams, Mark, SketchSpec};
use num_traits::Signed;

/// Exact top-vertex and oracle-target sequences B_0..B_n, V_0..V_n.
pub fn recursion(open2: bool, n: usize) -> (Vec<RVec2>, Vec<RVec2>) {
    let mut b = Vec::with_capacity(n + 1);
    let mut v = Vec::with_capacity(n + 1);
    b.push(RVec2::of(0, 1, 1, 1));
    v.push(RVec2::of(-2, 1, 1, 4));
    if n == 0 {
        return (b, v);
    }
    b.push(v[0].clone());
    v.push(RVec2::of(1, 1, 0, 1));
    let quarter = rat(1, 4);
    for k in 1..n {
        let gamma = if open2 {
            rat(2, k as i64 + 2)
        } else {
            rat(1, k as i64 + 1)
        };
        let b_next = b[k].lerp(&v[k], &gamma);
        let flip = b_next.x.abs() > quarter && b[k].x.abs() <= quarter;
        let v_next = if flip { v[k].neg() } else { v[k].clone() };
        b.push(b_next);
        v.push(v_next);
    }
    (b, v)
}

/// Exact reference iterates: x_t = B_t.
pub fn reference(open2: bool, iterations: usize) -> Vec<RVec2> {
    recursion(open2, iterations).0
}

pub fn level_polygon(b: &RVec2, k: usize) -> Result<ConvexPolygon> {
    let a = RVec2::new(rat(-2, 1) - rat(1, k as i64 + 1), rint(0));
    let c = RVec2::new(rat(1, 1) + rat(1, k as i64 + 1), rint(0));
    let bottom = RVec2::new(rint(0), -(&b.y / rint(2)));
    ConvexPolygon::new(vec![
        a.to_f64(),
        bottom.to_f64(),
        c.to_f64(),
        b.to_f64(),
    ])
}

pub fn constraint_polygon() -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Vec2::new(-2.0, 0.25),
        Vec2::new(-1.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap()
}

pub fn generate(open2: bool, depth: usize) -> Result<Instance> {
    if depth < 2 {
        return Err(Error::Construction(depth, "depth must be at least 2".into()));
    }
    let (b, v) = recursion(open2, depth);
    let mut polytopes = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        polytopes.push(level_polygon(&b[k], k)?);
    }

    let constraint = constraint_polygon();
    let mut marks = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let vertex = b[k].to_f64();
        let (_, _, admissible) = cones_at_vertex(&polytopes[k], vertex)
            .map_err(|e| Error::Construction(k, e.to_string()))?;
        // Gradient directions making V_k the unique linear-minimization
        // answer: the negated normal cone of the constraint set at V_k.
        let (n_c, _, _) = cones_at_vertex(&constraint, v[k].to_f64())
            .map_err(|e| Error::Construction(k, e.to_string()))?;
        let dir = pick_direction(&admissible, DirConstraint::Inside(n_c.negate()))
            .map_err(|e| Error::Construction(k, e.to_string()))?;
        marks.push(Mark { level: k, vertex, dir });
    }

    let mut margins = Vec::with_capacity(depth);
    for l in 0..depth {
        let m = nesting_margin(&polytopes[l], &polytopes[l + 1])?;
        if m <= 0.0 {
            return Err(Error::Construction(l, "levels do not nest".into()));
        }
        margins.push(m * (1.0 - 1e-9));
    }

    let mut cloud: Vec<Vec2> = polytopes[0].vertices().to_vec();
    cloud.extend(constraint.vertices().iter().copied());
    let domain = ConvexPolygon::hull_of(&cloud)?.inflate(1.3);

    Ok(Instance {
        id: CeId::Ce4,
        constraint: Feasible::Polygon(constraint),
        spec: SketchSpec {
            polytopes,
            marks,
            margins,
            domain,
            smoothness_degree: 2,
        },
        strategy: if open2 { StrategyKind::Open2 } else { StrategyKind::Open1 },
        policy: LmoPolicy::SpecifiedLexicographic,
        // The top vertex of the first sketch is also a constraint corner,
        // and its rounding arc pokes outside the constraint set; start a
        // shell-hair inside instead, where the gradient still points along
        // the marked direction.
        start: StartPoint::ShellMark { mark: 0, sigma: 1e-4 },
        solution_set: SolutionSet::Segment(Segment::new(
            Vec2::new(-1.0, 0.0),
            Vec2::new(1.0, 0.0),
        )),
        build: BuildParams {
            r_scale: 1e-4,
            eta0: 1.0,
            gap_ratio_floor: None,
        },
        expected: CertTemplate {
            non_cauchy_epsilon: 0.4,
            non_cauchy_window: 0,
            band_half_width: Some(0.25),
            displacement_threshold: None,
            oracle_segment: None,
            gamma_decay: false,
        },
        adversarial: false,
        exact: ExactData::Ce4 { open2 },
    })
}
