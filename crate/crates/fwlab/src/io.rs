//! File formats: polygon literals, instance documents, exact references.
//!
//! Polygon JSON is {"vertices": [[x, y], ...]} where each coordinate is a
//! number or a rational string such as "61/35". Rationals parse exactly and
//! convert once to the floating backend.

use crate::counterexamples::{Instance, SolutionSet};
use crate::error::{Error, Result};
use crate::exact::{format_rat, parse_rat, rat_to_f64, RVec2};
use crate::geom2d::{ConvexPolygon, Vec2};
use serde::{Deserialize, Serialize};
use serde_json::Value;

fn coord_from_value(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::Other("non-finite coordinate".into())),
        Value::String(s) => parse_rat(s)
            .map(|r| rat_to_f64(&r))
            .ok_or_else(|| Error::Other(format!("bad rational literal: {s}"))),
        other => Err(Error::Other(format!("bad coordinate: {other}"))),
    }
}

/// Parse {"vertices": [[x, y], ...]}; numbers may be rational strings.
pub fn polygon_from_json(text: &str) -> Result<ConvexPolygon> {
    let value: Value = serde_json::from_str(text)?;
    let verts = value
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Other("missing vertices array".into()))?;
    let mut out = Vec::with_capacity(verts.len());
    for v in verts {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Other("vertex is not a pair".into()))?;
        out.push(Vec2::new(coord_from_value(&pair[0])?, coord_from_value(&pair[1])?));
    }
    ConvexPolygon::new(out)
}

pub fn polygon_to_json(p: &ConvexPolygon) -> Value {
    serde_json::json!({
        "vertices": p.vertices().iter().map(|v| vec![v.x, v.y]).collect::<Vec<_>>(),
    })
}

/// Plot- and report-facing snapshot of an instance.
#[derive(Serialize, Deserialize)]
pub struct InstanceDoc {
    pub id: String,
    pub strategy: String,
    pub adversarial: bool,
    pub constraint: Vec<[f64; 2]>,
    pub polytopes: Vec<Vec<[f64; 2]>>,
    pub solution_set: Vec<[f64; 2]>,
    pub marks: Vec<MarkDoc>,
    pub smoothness_degree: u32,
}

#[derive(Serialize, Deserialize)]
pub struct MarkDoc {
    pub level: usize,
    pub vertex: [f64; 2],
    pub dir: [f64; 2],
}

impl InstanceDoc {
    pub fn from_instance(inst: &Instance) -> Self {
        let constraint = inst
            .constraint
            .vertices()
            .iter()
            .map(|v| [v.x, v.y])
            .collect();
        let polytopes = inst
            .spec
            .polytopes
            .iter()
            .map(|p| p.vertices().iter().map(|v| [v.x, v.y]).collect())
            .collect();
        let solution_set = match &inst.solution_set {
            SolutionSet::Segment(s) => vec![[s.a.x, s.a.y], [s.b.x, s.b.y]],
            SolutionSet::Polygon(p) => p.vertices().iter().map(|v| [v.x, v.y]).collect(),
        };
        InstanceDoc {
            id: inst.id.name().to_string(),
            strategy: inst.strategy.name().to_string(),
            adversarial: inst.adversarial,
            constraint,
            polytopes,
            solution_set,
            marks: inst
                .spec
                .marks
                .iter()
                .map(|m| MarkDoc {
                    level: m.level,
                    vertex: [m.vertex.x, m.vertex.y],
                    dir: [m.dir.x, m.dir.y],
                })
                .collect(),
            smoothness_degree: inst.spec.smoothness_degree,
        }
    }
}

/// One exact reference record: rational coordinates and float mirrors.
#[derive(Serialize, Deserialize)]
pub struct ReferenceRow {
    pub t: usize,
    pub x: [String; 2],
    pub x_float: [f64; 2],
}

pub fn reference_rows(points: &[RVec2]) -> Vec<ReferenceRow> {
    points
        .iter()
        .enumerate()
        .map(|(t, p)| ReferenceRow {
            t,
            x: [format_rat(&p.x), format_rat(&p.y)],
            x_float: [rat_to_f64(&p.x), rat_to_f64(&p.y)],
        })
        .collect()
}
