//! Sketch specifications: nested polytopes with marked vertices, prescribed
//! gradient directions and nesting margins, plus hypothesis validation.

use crate::geom2d::{cones_at_vertex, nesting_margin, ConvexPolygon, Vec2};
use serde::{Deserialize, Serialize};

/// A marked vertex: the objective's gradient at (the boundary point near)
/// `vertex` of polytope `level` must be positively colinear to `dir`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Mark {
    pub level: usize,
    pub vertex: Vec2,
    /// Unit direction in the admissible cone at the vertex.
    pub dir: Vec2,
}

/// Nested polytope sketch: the input from which a convex objective with
/// prescribed level sets and gradient directions is synthesized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SketchSpec {
    /// P_0 (outermost) .. P_max (innermost), each containing the origin.
    pub polytopes: Vec<ConvexPolygon>,
    pub marks: Vec<Mark>,
    /// The l-th margin is the scaling slack of P_{l+1} inside P_l, in (0, 1).
    pub margins: Vec<f64>,
    /// Open working domain; must contain the outermost polytope strictly
    /// (and, for solver instances, the constraint set).
    pub domain: ConvexPolygon,
    /// Recorded smoothness request; metadata only.
    pub smoothness_degree: u32,
}

impl SketchSpec {
    pub fn depth(&self) -> usize {
        self.polytopes.len() - 1
    }

    /// Margin governing level l (the last level reuses the final margin).
    pub fn margin_at(&self, level: usize) -> f64 {
        let last = self.margins.len().saturating_sub(1);
        self.margins[level.min(last)]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub hypothesis: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub checks: Vec<HypothesisCheck>,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<&HypothesisCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn summary(&self) -> String {
        if self.pass {
            "all hypotheses hold".to_string()
        } else {
            self.failures()
                .iter()
                .map(|c| {
                    format!(
                        "{} failed ({})",
                        c.hypothesis,
                        c.witness.as_deref().unwrap_or("no witness")
                    )
                })
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}

/// Check the three sketch hypotheses and the domain sanity condition.
/// Failures are report entries, never errors.
///
/// 1. every marked direction lies in the admissible cone (normal cone
///    intersected with the negated tangent cone) at its marked vertex;
/// 2. consecutive polytopes nest with at least the declared margin;
/// 3. the origin is interior to every polytope.
pub fn validate_sketch(spec: &SketchSpec) -> ValidationReport {
    let mut checks = Vec::new();

    let mut dir_pass = true;
    let mut dir_witness = None;
    for (k, mark) in spec.marks.iter().enumerate() {
        if mark.level >= spec.polytopes.len() {
            dir_pass = false;
            dir_witness = Some(format!("mark {k}: level {} out of range", mark.level));
            break;
        }
        match cones_at_vertex(&spec.polytopes[mark.level], mark.vertex) {
            Ok((_, _, admissible)) => {
                if !admissible.contains(mark.dir, 1e-9) {
                    dir_pass = false;
                    dir_witness = Some(format!(
                        "mark {k}: direction ({}, {}) outside the admissible cone",
                        mark.dir.x, mark.dir.y
                    ));
                    break;
                }
            }
            Err(_) => {
                dir_pass = false;
                dir_witness = Some(format!(
                    "mark {k}: ({}, {}) is not a vertex of polytope {}",
                    mark.vertex.x, mark.vertex.y, mark.level
                ));
                break;
            }
        }
    }
    checks.push(HypothesisCheck {
        hypothesis: "admissible-direction".into(),
        pass: dir_pass,
        witness: dir_witness,
    });

    let mut nest_pass = spec.margins.len() + 1 == spec.polytopes.len();
    let mut nest_witness = if nest_pass {
        None
    } else {
        Some(format!(
            "{} margins for {} polytopes",
            spec.margins.len(),
            spec.polytopes.len()
        ))
    };
    if nest_pass {
        for l in 0..spec.margins.len() {
            let d = spec.margins[l];
            if !(d > 0.0 && d < 1.0) {
                nest_pass = false;
                nest_witness = Some(format!("margin {l} = {d} outside (0, 1)"));
                break;
            }
            let m = match nesting_margin(&spec.polytopes[l], &spec.polytopes[l + 1]) {
                Ok(m) => m,
                Err(_) => {
                    nest_pass = false;
                    nest_witness = Some(format!("levels {l}/{}: origin not interior", l + 1));
                    break;
                }
            };
            if m < d {
                nest_pass = false;
                nest_witness = Some(format!("levels {l}/{}: margin {m} < declared {d}", l + 1));
                break;
            }
        }
    }
    checks.push(HypothesisCheck {
        hypothesis: "nested-with-margin".into(),
        pass: nest_pass,
        witness: nest_witness,
    });

    let mut origin_pass = true;
    let mut origin_witness = None;
    for (l, p) in spec.polytopes.iter().enumerate() {
        if !p.contains_strict(Vec2::zero()) {
            origin_pass = false;
            origin_witness = Some(format!("polytope {l}"));
            break;
        }
    }
    checks.push(HypothesisCheck {
        hypothesis: "origin-interior".into(),
        pass: origin_pass,
        witness: origin_witness,
    });

    let dom_pass = spec
        .polytopes
        .first()
        .map(|p0| p0.vertices().iter().all(|&v| spec.domain.contains_strict(v)))
        .unwrap_or(false);
    checks.push(HypothesisCheck {
        hypothesis: "domain-contains-sketch".into(),
        pass: dom_pass,
        witness: if dom_pass { None } else { Some("outermost polytope escapes the domain".into()) },
    });

    ValidationReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}
