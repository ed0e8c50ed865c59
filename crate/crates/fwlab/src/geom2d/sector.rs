//! Closed circular sectors of directions.
//!
//! Every cone arising at a vertex of a 2-D polytope is a sector swept
//! counterclockwise from one boundary unit direction to another. The full
//! plane and half-planes are representable via angle = 2*pi or pi.

use super::vec2::Vec2;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConeSector {
    pub lo: Vec2,
    pub hi: Vec2,
    /// Swept angle from lo counterclockwise to hi, in [0, 2*pi].
    pub angle: f64,
}

fn norm_angle(a: f64) -> f64 {
    let mut a = a % TAU;
    if a < 0.0 {
        a += TAU;
    }
    a
}

impl ConeSector {
    /// Sector swept counterclockwise from `lo` to `hi`.
    pub fn from_units(lo: Vec2, hi: Vec2) -> Self {
        let lo = lo.unit();
        let hi = hi.unit();
        let angle = norm_angle(hi.angle() - lo.angle());
        ConeSector { lo, hi, angle }
    }

    pub fn from_angles(start: f64, sweep: f64) -> Self {
        ConeSector {
            lo: Vec2::from_angle(start),
            hi: Vec2::from_angle(start + sweep),
            angle: sweep,
        }
    }

    pub fn full_plane() -> Self {
        ConeSector {
            lo: Vec2::new(1.0, 0.0),
            hi: Vec2::new(1.0, 0.0),
            angle: TAU,
        }
    }

    pub fn start_angle(&self) -> f64 {
        self.lo.angle()
    }

    /// Membership of a direction, with an angular tolerance in radians.
    pub fn contains(&self, dir: Vec2, tol: f64) -> bool {
        if self.angle >= TAU - 1e-15 {
            return true;
        }
        let rel = norm_angle(dir.angle() - self.start_angle());
        rel <= self.angle + tol || rel >= TAU - tol
    }

    /// The negated sector {-d : d in self}.
    pub fn negate(&self) -> ConeSector {
        ConeSector {
            lo: -self.lo,
            hi: -self.hi,
            angle: self.angle,
        }
    }

    /// Direction bisecting the sector.
    pub fn midpoint(&self) -> Vec2 {
        Vec2::from_angle(self.start_angle() + self.angle / 2.0)
    }

    /// Intersection of two sectors. Sectors in this crate have angle < 2*pi
    /// except for the full plane; when the set intersection has two arcs
    /// (possible only for very wide inputs) the longer arc is returned.
    pub fn intersect(&self, other: &ConeSector) -> Option<ConeSector> {
        if self.angle >= TAU - 1e-15 {
            return Some(*other);
        }
        if other.angle >= TAU - 1e-15 {
            return Some(*self);
        }
        let s1 = self.angle;
        let r = norm_angle(other.start_angle() - self.start_angle());
        let s2 = other.angle;
        // Candidate arcs in the frame where self spans [0, s1].
        let mut best: Option<(f64, f64)> = None; // (start, sweep)
        let mut offer = |start: f64, end: f64| {
            if end >= start - 1e-12 {
                let cand = (start, (end - start).max(0.0));
                if best.is_none_or(|b| cand.1 > b.1) {
                    best = Some(cand);
                }
            }
        };
        // Piece of other starting at r.
        if r <= s1 + 1e-12 {
            offer(r.min(s1), (r + s2).min(s1));
        }
        // Wrapped piece of other starting at r - 2*pi.
        if r + s2 >= TAU {
            offer(0.0, (r + s2 - TAU).min(s1));
        }
        best.map(|(start, sweep)| ConeSector::from_angles(self.start_angle() + start, sweep))
    }
}
