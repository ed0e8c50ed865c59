//! Generators for the four non-convergence instances and the two
//! misspecification demos, with exact reference dynamics where closed
//! forms exist.

pub mod ce1;
pub mod ce2;
pub mod ce3;
pub mod ce4;
pub mod demos;
mod instance;
mod pick;

pub use demos::{gen_demo_a, gen_demo_b, gen_mis_demos, DEMO_A_DEFAULT_HORIZON};
pub use instance::{
    CeId, CertTemplate, ExactData, Instance, SolutionSet, StartPoint, StrategyKind,
};
pub use pick::{pick_direction, DirConstraint};

use crate::error::{Error, Result};
use crate::exact::RVec2;

pub fn gen_ce1(depth: usize) -> Result<Instance> {
    ce1::generate(depth)
}

pub fn gen_ce2(depth: usize) -> Result<Instance> {
    ce2::generate(depth)
}

pub fn gen_ce3(k_param: u32, depth: usize) -> Result<Instance> {
    ce3::generate(k_param, depth)
}

pub fn gen_ce4(open2: bool, depth: usize) -> Result<Instance> {
    ce4::generate(open2, depth)
}

/// Exact rational iterate list of length `iterations + 1`, computed from
/// the closed-form dynamics and independent of the numeric objective.
pub fn reference_trajectory(instance: &Instance, iterations: usize) -> Result<Vec<RVec2>> {
    match &instance.exact {
        ExactData::Ce1 => Ok(ce1::reference(iterations)),
        ExactData::Ce2 => Ok(ce2::reference(iterations)),
        ExactData::Ce3 { .. } => Err(Error::NoReference),
        ExactData::Ce4 { open2 } => Ok(ce4::reference(*open2, iterations)),
        ExactData::MisA { script } => demos::demo_a_reference(script, iterations),
        ExactData::MisB { reference, .. } => {
            if iterations + 1 > reference.len() {
                return Err(Error::ScriptExhausted { t: reference.len() });
            }
            Ok(reference[..=iterations].to_vec())
        }
    }
}
