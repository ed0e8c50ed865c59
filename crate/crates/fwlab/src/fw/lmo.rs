//! Linear minimization oracle over a polytope's vertices.

use crate::error::{Error, Result};
use crate::geom2d::{ConvexPolygon, Segment, Vec2};
use serde::{Deserialize, Serialize};

/// Feasible set for the solver: a polygon or a (degenerate) segment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Feasible {
    Polygon(ConvexPolygon),
    Segment(Segment),
}

impl Feasible {
    pub fn vertices(&self) -> Vec<Vec2> {
        match self {
            Feasible::Polygon(p) => p.vertices().to_vec(),
            Feasible::Segment(s) => vec![s.a, s.b],
        }
    }

    pub fn contains(&self, x: Vec2, tol: f64) -> bool {
        match self {
            Feasible::Polygon(p) => p.contains(x, tol),
            Feasible::Segment(s) => s.contains(x, tol),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Feasible::Polygon(p) => p.diameter(),
            Feasible::Segment(s) => s.length(),
        }
    }
}

/// Oracle policy.
///
/// The specified policy is a genuine function of the ray of the input:
/// it returns the inner-product minimizer, breaking ties by the
/// lexicographically smallest vertex (x, then y). The zero vector ties
/// every vertex and resolves the same way, so a zero gradient still yields
/// a deterministic answer.
///
/// A scripted policy replays a fixed vertex choice per iteration and is
/// only legal while every scripted vertex is a true minimizer; it models
/// a misspecified oracle without ever violating the oracle's contract.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum LmoPolicy {
    SpecifiedLexicographic,
    Scripted { vertex_by_iteration: Vec<usize> },
}

fn lex_less(a: Vec2, b: Vec2) -> bool {
    a.x < b.x || (a.x == b.x && a.y < b.y)
}

/// Vertex of `set` minimizing <v, u>.
pub fn lmo(set: &Feasible, u: Vec2, policy: &LmoPolicy, t: usize) -> Result<Vec2> {
    let verts = set.vertices();
    let scores: Vec<f64> = verts.iter().map(|v| v.dot(u)).collect();
    let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
    match policy {
        LmoPolicy::SpecifiedLexicographic => {
            let mut best: Option<Vec2> = None;
            for (i, &v) in verts.iter().enumerate() {
                if scores[i] == min && best.is_none_or(|b| lex_less(v, b)) {
                    best = Some(v);
                }
            }
            Ok(best.expect("nonempty vertex set"))
        }
        LmoPolicy::Scripted { vertex_by_iteration } => {
            let idx = *vertex_by_iteration
                .get(t)
                .ok_or(Error::ScriptExhausted { t })?;
            if idx >= verts.len() {
                return Err(Error::ScriptViolation { t });
            }
            let scale = scores.iter().fold(0.0f64, |m, s| m.max(s.abs())).max(1.0);
            if scores[idx] > min + 1e-12 * scale {
                return Err(Error::ScriptViolation { t });
            }
            Ok(verts[idx])
        }
    }
}
