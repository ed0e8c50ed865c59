//! Projection-free convex optimization lab in the plane.
//!
//! Builds convex objectives from nested polygonal sketches, runs the
//! Frank-Wolfe algorithm under the four standard step-size strategies,
//! replays the exact reference dynamics of the classical non-convergence
//! instances, and certifies oscillation numerically.

pub mod analysis;
pub mod cli;
pub mod counterexamples;
pub mod error;
pub mod exact;
pub mod fw;
pub mod geom2d;
pub mod io;
pub mod plot;
pub mod rng;
pub mod runner;
pub mod sketch;

pub use error::{Error, Result};
