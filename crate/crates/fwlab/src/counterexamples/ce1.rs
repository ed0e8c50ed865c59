//! Triangle instance for the line-search strategy: nested hexagonal
//! sketches whose upper corners sit on the verticals x = +-1/4, with the
//! corner rays through (-1, 0) and (1, 0), so the exact line-search
//! dynamics alternate between abscissae +1/4 and -1/4 forever.

use super::instance::{
    CeId, CertTemplate, ExactData, Instance, SolutionSet, StartPoint, StrategyKind,
};
use super::pick::{pick_direction, DirConstraint};
use crate::error::{Error, Result};
use crate::exact::{rat, rint, RVec2};
use crate::fw::{Feasible, LmoPolicy};
use crate::geom2d::{cones_at_vertex, nesting_margin, ConvexPolygon, Segment, Vec2};
use crate::sketch::{BuildParams, Mark, SketchSpec};

/// Exact vertex rows [A_k, B_k, C_k, D_k] of the upper sketch chain.
pub fn rows(depth: usize) -> Vec<[RVec2; 4]> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut a = RVec2::of(-1, 2, 0, 1);
    let mut b = RVec2::of(-1, 4, 3, 4);
    let mut c = RVec2::of(1, 4, 3, 4);
    let mut d = RVec2::of(1, 2, 0, 1);
    out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
    let three_fifths = rat(3, 5);
    let quarter = rat(1, 4);
    for _ in 0..depth {
        let b_next = RVec2::new(-quarter.clone(), &three_fifths * &c.y);
        let c_next = RVec2::new(quarter.clone(), &three_fifths * &b.y);
        let a_next = RVec2::new(
            -&quarter + (&b_next.y / &b.y) * (&a.x + &quarter),
            rint(0),
        );
        let d_next = RVec2::new(
            &quarter + (&c_next.y / &c.y) * (&d.x - &quarter),
            rint(0),
        );
        a = a_next;
        b = b_next;
        c = c_next;
        d = d_next;
        out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
    }
    out
}

/// Level polygon: the convex hull of the row and its reflection through
/// the origin. D_k coincides with -A_k, so the octagonal vertex list
/// reduces to a hexagon.
pub fn level_polygon(row: &[RVec2; 4]) -> Result<ConvexPolygon> {
    let [a, b, c, d] = row;
    if d != &a.neg() {
        return Err(Error::Construction(
            0,
            "axis vertices are not mirror images".into(),
        ));
    }
    ConvexPolygon::new(vec![
        a.to_f64(),
        c.neg().to_f64(),
        b.neg().to_f64(),
        d.to_f64(),
        c.to_f64(),
        b.to_f64(),
    ])
}

pub fn constraint_polygon() -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Vec2::new(-1.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap()
}

/// Exact reference iterates: x_t sits at the upper-right corner for even t
/// and at the upper-left corner for odd t. The corner heights contract by
/// exactly 3/5 per step, so the reference avoids the full vertex recursion
/// (whose axis coordinates need expensive big-rational divisions).
pub fn reference(iterations: usize) -> Vec<RVec2> {
    let quarter = rat(1, 4);
    let three_fifths = rat(3, 5);
    let mut h = rat(3, 4);
    let mut out = Vec::with_capacity(iterations + 1);
    for t in 0..=iterations {
        let x = if t % 2 == 0 { quarter.clone() } else { -quarter.clone() };
        out.push(RVec2::new(x, h.clone()));
        h = &h * &three_fifths;
    }
    out
}

pub fn generate(depth: usize) -> Result<Instance> {
    if depth < 2 {
        return Err(Error::Construction(depth, "depth must be at least 2".into()));
    }
    let rows = rows(depth);
    let mut polytopes = Vec::with_capacity(depth + 1);
    for row in &rows {
        polytopes.push(level_polygon(row)?);
    }

    let constraint = constraint_polygon();
    let mut marks = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let even = k % 2 == 0;
        let vertex = if even { rows[k][2].to_f64() } else { rows[k][1].to_f64() };
        let (_, _, admissible) = cones_at_vertex(&polytopes[k], vertex)
            .map_err(|e| Error::Construction(k, e.to_string()))?;
        let dir = if k == 0 {
            pick_direction(&admissible, DirConstraint::None)?
        } else {
            // Orthogonal to the incoming move: the previous corner on the
            // opposite vertical, aligned with (-1,0) or (1,0).
            let prev = if even { rows[k - 1][1].to_f64() } else { rows[k - 1][2].to_f64() };
            pick_direction(&admissible, DirConstraint::OrthogonalTo(vertex - prev))
                .map_err(|e| Error::Construction(k, e.to_string()))?
        };
        // The direction must send the oracle to the opposite base corner.
        let target = if even { Vec2::new(-1.0, 0.0) } else { Vec2::new(1.0, 0.0) };
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

    Ok(Instance {
        id: CeId::Ce1,
        constraint: Feasible::Polygon(constraint),
        spec: SketchSpec {
            polytopes,
            marks,
            margins,
            domain,
            smoothness_degree: 2,
        },
        strategy: StrategyKind::LineSearch(1e-12),
        policy: LmoPolicy::SpecifiedLexicographic,
        start: StartPoint::MarkIndex(0),
        solution_set: SolutionSet::Segment(Segment::new(
            Vec2::new(-0.25, 0.0),
            Vec2::new(0.25, 0.0),
        )),
        build: BuildParams {
            r_scale: 1e-4,
            eta0: 1.0,
            gap_ratio_floor: None,
        },
        expected: CertTemplate {
            non_cauchy_epsilon: 0.4,
            non_cauchy_window: 2,
            band_half_width: Some(0.25),
            displacement_threshold: None,
            oracle_segment: None,
            gamma_decay: false,
        },
        adversarial: false,
        exact: ExactData::Ce1,
    })
}
