//! Tall-box instance for the closed-loop strategy: pairs of flat sketch
//! polytopes leaning alternately left and right, halving in height each
//! pair, over the constraint box [-1,1] x [0, 2^K]. The marked top chords
//! tilt the gradient's horizontal component to the sign (-1)^k inside the
//! box, so the oracle alternates between the bottom corners and the iterate
//! keeps crossing horizontally while it descends. There is no closed-form
//! iterate reference; runs are certified by strip-displacement counts.

use super::instance::{
    CeId, CertTemplate, ExactData, Instance, SolutionSet, StartPoint, StrategyKind,
};
use super::pick::{pick_direction, DirConstraint};
use crate::error::{Error, Result};
use crate::exact::{pow2, rat, rint, Rat, RVec2};
use crate::fw::{Feasible, LmoPolicy};
use crate::geom2d::{cones_at_vertex, nesting_margin, ConeSector, ConvexPolygon, Segment, Vec2};
use crate::sketch::{BuildParams, Mark, SketchSpec};

/// Exact vertex data for pair k: the wide level {Y, A, B, Z, X_even} and
/// the narrow level {Y', D', D, C, C', Z', X_odd}.
#[derive(Clone, Debug)]
pub struct PairRow {
    pub a: RVec2,
    pub b: RVec2,
    pub c: RVec2,
    pub d: RVec2,
    pub c_inner: RVec2,
    pub d_inner: RVec2,
    pub y: RVec2,
    pub z: RVec2,
    pub y_inner: RVec2,
    pub z_inner: RVec2,
    pub x_even: RVec2,
    pub x_odd: RVec2,
}

/// Strip corner heights for level pair k: outer band at 7/4, inner band at
/// 13/8, exit band at 5/4 (times the pair height scale).
#[derive(Clone, Copy, Debug)]
pub struct StripRow {
    pub k: usize,
    pub e: Vec2,
    pub f: Vec2,
    pub i: Vec2,
    pub j: Vec2,
    pub h: Vec2,
    pub g: Vec2,
}

fn sgn(k: usize) -> Rat {
    if k.is_multiple_of(2) {
        rint(1)
    } else {
        rint(-1)
    }
}

/// Height scale of pair k: 1 / 2^{k+1-K}.
fn scale(k: usize, k_param: u32) -> Rat {
    pow2(k_param as i32 - k as i32 - 1)
}

pub fn pair_row(k: usize, k_param: u32) -> PairRow {
    let s = scale(k, k_param);
    let w = rat(61, 35);
    let lo = sgn(k); // (-1)^k
    let hi = -sgn(k); // (-1)^{k+1}
    let half = pow2(-(k as i32)); // 1/2^k
    let y_abs = if k.is_multiple_of(2) {
        &w * (rint(1) + &half)
    } else {
        &w * (rint(1) + rat(17, 18) * &half)
    };
    let z_abs = if k.is_multiple_of(2) {
        &w * (rint(1) + &half)
    } else {
        &w * (rint(1) + rat(18, 17) * &half)
    };
    PairRow {
        a: RVec2::new(&hi * &w, rat(9, 8) * &w * &s),
        b: RVec2::new(&lo * &w, rat(17, 16) * &w * &s),
        d: RVec2::new(hi.clone(), rat(9, 8) * &s),
        c: RVec2::new(lo.clone(), rat(17, 16) * &s),
        d_inner: RVec2::new(&hi * &w, s.clone()),
        c_inner: RVec2::new(&lo * &w, s.clone()),
        y: RVec2::new(-y_abs, rint(0)),
        z: RVec2::new(z_abs, rint(0)),
        y_inner: RVec2::new(-(&w + rat(8, 9) * &half), rint(0)),
        z_inner: RVec2::new(&w + rat(16, 17) * &half, rint(0)),
        x_even: RVec2::new(rint(0), -(rint(1) + rat(1, 2 * k as i64 + 1))),
        x_odd: RVec2::new(rint(0), -(rint(1) + rat(1, 2 * k as i64 + 2))),
    }
}

pub fn strip_row(k: usize, k_param: u32) -> StripRow {
    let s = crate::exact::rat_to_f64(&scale(k, k_param));
    let lo = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let hi = -lo;
    StripRow {
        k,
        e: Vec2::new(hi, 1.75 * s),
        f: Vec2::new(lo, 1.75 * s),
        i: Vec2::new(hi, 1.625 * s),
        j: Vec2::new(lo, 1.625 * s),
        h: Vec2::new(hi, 1.25 * s),
        g: Vec2::new(lo, 1.25 * s),
    }
}

/// The wide level polygon 2k (pentagon).
pub fn level_even(row: &PairRow, k: usize) -> Result<ConvexPolygon> {
    let verts = if k.is_multiple_of(2) {
        [&row.x_even, &row.z, &row.b, &row.a, &row.y]
    } else {
        [&row.x_even, &row.z, &row.a, &row.b, &row.y]
    };
    ConvexPolygon::new(verts.iter().map(|v| v.to_f64()).collect())
}

/// The narrow level polygon 2k+1 (heptagon).
pub fn level_odd(row: &PairRow, k: usize) -> Result<ConvexPolygon> {
    let verts = if k.is_multiple_of(2) {
        [
            &row.x_odd,
            &row.z_inner,
            &row.c_inner,
            &row.c,
            &row.d,
            &row.d_inner,
            &row.y_inner,
        ]
    } else {
        [
            &row.x_odd,
            &row.z_inner,
            &row.d_inner,
            &row.d,
            &row.c,
            &row.c_inner,
            &row.y_inner,
        ]
    };
    ConvexPolygon::new(verts.iter().map(|v| v.to_f64()).collect())
}

pub fn constraint_polygon(k_param: u32) -> ConvexPolygon {
    let top = 2.0f64.powi(k_param as i32);
    ConvexPolygon::new(vec![
        Vec2::new(-1.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, top),
        Vec2::new(-1.0, top),
    ])
    .unwrap()
}

pub fn generate(k_param: u32, depth: usize) -> Result<Instance> {
    if depth < 4 {
        return Err(Error::Construction(depth, "depth must be at least 4".into()));
    }
    let pairs = depth / 2 + 1;
    let rows: Vec<PairRow> = (0..=pairs).map(|k| pair_row(k, k_param)).collect();

    let mut polytopes = Vec::with_capacity(depth + 1);
    for level in 0..=depth {
        let k = level / 2;
        let p = if level % 2 == 0 {
            level_even(&rows[k], k)?
        } else {
            level_odd(&rows[k], k)?
        };
        polytopes.push(p);
    }

    // Marked directions: pick at the narrow level (the top chord D-C) in
    // the open quadrant with horizontal sign (-1)^k, then reuse the same
    // direction at the wide level's chord endpoint above it (the admissible
    // cone there contains the narrow one, which realizes equal gradient
    // directions along the two aligned tracks through the origin).
    let mut marks = Vec::new();
    for k in 0.. {
        let (even_level, odd_level) = (2 * k, 2 * k + 1);
        if even_level > depth {
            break;
        }
        let row = &rows[k];
        let quadrant = if k % 2 == 0 {
            ConeSector::from_angles(0.0, std::f64::consts::FRAC_PI_2)
        } else {
            ConeSector::from_angles(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
        };
        if odd_level <= depth {
            let odd_poly = &polytopes[odd_level];
            let (_, _, cone_d) = cones_at_vertex(odd_poly, row.d.to_f64())
                .map_err(|e| Error::Construction(k, e.to_string()))?;
            let u_d = pick_direction(&cone_d, DirConstraint::Inside(quadrant))
                .map_err(|e| Error::Construction(k, format!("sign constraint unsatisfiable: {e}")))?;
            let (_, _, cone_c) = cones_at_vertex(odd_poly, row.c.to_f64())
                .map_err(|e| Error::Construction(k, e.to_string()))?;
            let u_c = pick_direction(&cone_c, DirConstraint::Inside(quadrant))
                .map_err(|e| Error::Construction(k, format!("sign constraint unsatisfiable: {e}")))?;

            let even_poly = &polytopes[even_level];
            let (_, _, cone_a) = cones_at_vertex(even_poly, row.a.to_f64())
                .map_err(|e| Error::Construction(k, e.to_string()))?;
            if !cone_a.contains(u_d, 1e-9) {
                return Err(Error::Construction(
                    k,
                    "direction at the narrow chord leaves the wide cone".into(),
                ));
            }
            let (_, _, cone_b) = cones_at_vertex(even_poly, row.b.to_f64())
                .map_err(|e| Error::Construction(k, e.to_string()))?;
            if !cone_b.contains(u_c, 1e-9) {
                return Err(Error::Construction(
                    k,
                    "direction at the narrow chord leaves the wide cone".into(),
                ));
            }
            marks.push(Mark { level: even_level, vertex: row.a.to_f64(), dir: u_d });
            marks.push(Mark { level: even_level, vertex: row.b.to_f64(), dir: u_c });
            marks.push(Mark { level: odd_level, vertex: row.d.to_f64(), dir: u_d });
            marks.push(Mark { level: odd_level, vertex: row.c.to_f64(), dir: u_c });
        } else {
            // Final unpaired wide level: mark with plain cone midpoints.
            let even_poly = &polytopes[even_level];
            for v in [row.a.to_f64(), row.b.to_f64()] {
                let (_, _, cone) = cones_at_vertex(even_poly, v)
                    .map_err(|e| Error::Construction(k, e.to_string()))?;
                let dir = pick_direction(&cone, DirConstraint::Inside(quadrant))
                    .map_err(|e| Error::Construction(k, e.to_string()))?;
                marks.push(Mark { level: even_level, vertex: v, dir });
            }
        }
    }

    let mut margins = Vec::with_capacity(depth);
    for l in 0..depth {
        let m = nesting_margin(&polytopes[l], &polytopes[l + 1])?;
        if m <= 0.0 {
            return Err(Error::Construction(l, "levels do not nest".into()));
        }
        margins.push(m * (1.0 - 1e-9));
    }

    let constraint = constraint_polygon(k_param);
    let mut cloud: Vec<Vec2> = polytopes[0].vertices().to_vec();
    cloud.extend(constraint.vertices().iter().copied());
    let domain = ConvexPolygon::hull_of(&cloud)?.inflate(1.3);

    // Feasible start: the constraint box clips the top-left sketch corner,
    // so start on the left wall at the height of the outermost chord.
    let start_y = rows[0].a.to_f64().y.min(2.0f64.powi(k_param as i32));
    let start = StartPoint::Point(Vec2::new(-1.0, start_y));

    Ok(Instance {
        id: CeId::Ce3,
        constraint: Feasible::Polygon(constraint),
        spec: SketchSpec {
            polytopes,
            marks,
            margins,
            domain,
            smoothness_degree: 2,
        },
        strategy: StrategyKind::Closed(None),
        policy: LmoPolicy::SpecifiedLexicographic,
        start,
        solution_set: SolutionSet::Segment(Segment::new(
            Vec2::new(-1.0, 0.0),
            Vec2::new(1.0, 0.0),
        )),
        build: BuildParams {
            r_scale: 1e-3,
            eta0: 1.0,
            gap_ratio_floor: Some(0.5),
        },
        expected: CertTemplate {
            non_cauchy_epsilon: 3.0 / 26.0,
            non_cauchy_window: 0, // auto: a fifth of the horizon
            band_half_width: Some(0.25),
            displacement_threshold: Some(3.0 / 26.0),
            oracle_segment: Some(Segment::new(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0))),
            gamma_decay: true,
        },
        adversarial: false,
        exact: ExactData::Ce3 { k_param },
    })
}
