//! Deterministic direction choices inside admissible cones.

use crate::error::{Error, Result};
use crate::geom2d::{ConeSector, Vec2};

#[derive(Clone, Copy, Debug)]
pub enum DirConstraint {
    /// Angular midpoint of the cone.
    None,
    /// The unique unit vector in the cone orthogonal to the given vector.
    OrthogonalTo(Vec2),
    /// Angular midpoint of the intersection with another sector.
    Inside(ConeSector),
}

fn sector_str(s: &ConeSector) -> String {
    format!(
        "[{:.6} rad, {:.6} rad]",
        s.start_angle(),
        s.start_angle() + s.angle
    )
}

/// Pick a unit direction in `cone` subject to the constraint.
pub fn pick_direction(cone: &ConeSector, constraint: DirConstraint) -> Result<Vec2> {
    match constraint {
        DirConstraint::None => Ok(cone.midpoint()),
        DirConstraint::OrthogonalTo(w) => {
            if w.is_zero() {
                return Err(Error::DegenerateDirection);
            }
            let u = w.perp().unit();
            let in_pos = cone.contains(u, 1e-12);
            let in_neg = cone.contains(-u, 1e-12);
            match (in_pos, in_neg) {
                (true, false) => Ok(u),
                (false, true) => Ok(-u),
                (true, true) => Err(Error::EmptyCone(format!(
                    "both orthogonal signs lie in {}",
                    sector_str(cone)
                ))),
                (false, false) => Err(Error::EmptyCone(format!(
                    "no orthogonal direction to ({}, {}) in {}",
                    w.x,
                    w.y,
                    sector_str(cone)
                ))),
            }
        }
        DirConstraint::Inside(other) => {
            let inter = cone.intersect(&other).filter(|s| s.angle > 1e-9);
            match inter {
                Some(s) => Ok(s.midpoint()),
                None => Err(Error::EmptyCone(format!(
                    "{} does not meet {}",
                    sector_str(cone),
                    sector_str(&other)
                ))),
            }
        }
    }
}
