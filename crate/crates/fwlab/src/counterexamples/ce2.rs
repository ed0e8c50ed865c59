//! Rotated-square instance for the line-search strategy, with the solution
//! set interior to the constraint box: homothetic sketch squares shrinking
//! by the Moebius recursion lambda' = 110 lambda / (90 + 101 lambda), whose
//! corner rays pass through the box corners, so the exact dynamics cycle
//! through the four corners forever while lambda_k -> 20/101.

use super::instance::{
    CeId, CertTemplate, ExactData, Instance, SolutionSet, StartPoint, StrategyKind,
};
use super::pick::{pick_direction, DirConstraint};
use crate::error::{Error, Result};
use crate::exact::{rat, rint, Rat, RVec2};
use crate::fw::{Feasible, LmoPolicy};
use crate::geom2d::{cones_at_vertex, nesting_margin, ConvexPolygon, Vec2};
use crate::sketch::{BuildParams, Mark, SketchSpec};

/// Base square corners in cyclic order A, B, C, D.
pub fn base_corners() -> [RVec2; 4] {
    [
        RVec2::of(-1, 10, -1, 1),
        RVec2::of(-1, 1, 1, 10),
        RVec2::of(1, 10, 1, 1),
        RVec2::of(1, 1, -1, 10),
    ]
}

/// Exact homothety factors lambda_0 = 1, lambda_{k+1} = 110 l / (90 + 101 l).
pub fn lambdas(depth: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut l = rint(1);
    out.push(l.clone());
    let num = rat(110, 1);
    let c90 = rat(90, 1);
    let c101 = rat(101, 1);
    for _ in 0..depth {
        l = &num * &l / (&c90 + &c101 * &l);
        out.push(l.clone());
    }
    out
}

pub fn level_polygon(lambda: &Rat) -> Result<ConvexPolygon> {
    let [a, b, c, d] = base_corners();
    // Counterclockwise: A (bottom), D (right), C (top), B (left).
    ConvexPolygon::new(vec![
        a.scale(lambda).to_f64(),
        d.scale(lambda).to_f64(),
        c.scale(lambda).to_f64(),
        b.scale(lambda).to_f64(),
    ])
}

pub fn constraint_polygon() -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Vec2::new(-1.0, -1.0),
        Vec2::new(1.0, -1.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(-1.0, 1.0),
    ])
    .unwrap()
}

/// Exact reference iterates cycling A_t, B_t, C_t, D_t by t mod 4.
pub fn reference(iterations: usize) -> Vec<RVec2> {
    let ls = lambdas(iterations);
    let base = base_corners();
    (0..=iterations)
        .map(|t| base[t % 4].scale(&ls[t]))
        .collect()
}

pub fn generate(depth: usize) -> Result<Instance> {
    if depth < 2 {
        return Err(Error::Construction(depth, "depth must be at least 2".into()));
    }
    let ls = lambdas(depth);
    let base = base_corners();
    let mut polytopes = Vec::with_capacity(depth + 1);
    for l in &ls {
        polytopes.push(level_polygon(l)?);
    }

    // Marked vertices cycle A, B, C, D. The direction at level k >= 1 is
    // orthogonal to the move from the previous cycle vertex; at level 0 it
    // is the midpoint of the admissible cone restricted to directions whose
    // oracle answer is the intended box corner (the cones of later levels
    // satisfy that automatically through the corner alignments). Each
    // direction is checked to select its corner uniquely.
    let constraint = constraint_polygon();
    let corners = [
        Vec2::new(-1.0, 1.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(1.0, -1.0),
        Vec2::new(-1.0, -1.0),
    ];
    let mut marks = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let vertex = base[k % 4].scale(&ls[k]).to_f64();
        let (_, _, admissible) = cones_at_vertex(&polytopes[k], vertex)
            .map_err(|e| Error::Construction(k, e.to_string()))?;
        let target = corners[k % 4];
        let dir = if k == 0 {
            let (n_c, _, _) = cones_at_vertex(&constraint, target)
                .map_err(|e| Error::Construction(k, e.to_string()))?;
            pick_direction(&admissible, DirConstraint::Inside(n_c.negate()))
                .map_err(|e| Error::Construction(k, e.to_string()))?
        } else {
            let prev = base[(k + 3) % 4].scale(&ls[k - 1]).to_f64();
            pick_direction(&admissible, DirConstraint::OrthogonalTo(vertex - prev))
                .map_err(|e| Error::Construction(k, e.to_string()))?
        };
        for &w in constraint.vertices() {
            if w.dist(target) > 1e-12 && (w - target).dot(dir) <= 1e-12 {
                return Err(Error::Construction(
                    k,
                    "marked direction does not select the intended corner".into(),
                ));
            }
        }
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

    // The limit of the homothety factors.
    let lambda_star = 20.0 / 101.0;

    Ok(Instance {
        id: CeId::Ce2,
        constraint: Feasible::Polygon(constraint),
        spec: SketchSpec {
            polytopes: polytopes.clone(),
            marks,
            margins,
            domain,
            smoothness_degree: 2,
        },
        strategy: StrategyKind::LineSearch(1e-12),
        policy: LmoPolicy::SpecifiedLexicographic,
        start: StartPoint::MarkIndex(0),
        solution_set: SolutionSet::Polygon(level_polygon(&rat(20, 101))?),
        build: BuildParams {
            r_scale: 1e-3,
            eta0: 1.0,
            gap_ratio_floor: None,
        },
        expected: CertTemplate {
            // Asymptotic step length: lambda* x side of the base square.
            non_cauchy_epsilon: 0.27_f64.min(lambda_star * 2.02f64.sqrt() - 0.01),
            non_cauchy_window: 1,
            band_half_width: None,
            displacement_threshold: None,
            oracle_segment: None,
            gamma_decay: false,
        },
        adversarial: false,
        exact: ExactData::Ce2,
    })
}
