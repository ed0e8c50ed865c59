//! Sketch-to-objective synthesis: validate the nested-polytope hypotheses
//! and build an evaluable convex objective whose level sets are the rounded
//! sketch polytopes and whose gradient directions match the marked ones.

mod objective;
mod probes;
mod spec;

pub use objective::{
    build_objective, lipschitz_estimate, BuildParams, MarkedPoint, Shell, SketchObjective,
};
pub use probes::{finite_difference_check, midpoint_convexity_violations, FiniteDiffReport};
pub use spec::{validate_sketch, HypothesisCheck, Mark, SketchSpec, ValidationReport};
