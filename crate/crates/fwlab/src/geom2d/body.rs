//! Rounded convex bodies: an inner core (point, segment or polygon given as
//! a CCW vertex list) Minkowski-summed with a disc.
//!
//! The boundary consists of straight pieces (core edges pushed out by the
//! radius) and circular arcs (around core vertices, spanning the vertex
//! normal fan), so the outward normal is defined and continuous everywhere.

use super::polygon::ConvexPolygon;
use super::vec2::Vec2;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Body {
    /// Core vertices, counterclockwise. One vertex encodes a disc center,
    /// two a stadium, three or more a rounded polygon.
    core: Vec<Vec2>,
    radius: f64,
}

/// Which boundary piece a ray hit landed on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    /// Straight piece from core edge `i`.
    Edge(usize),
    /// Arc around core vertex `i`.
    Arc(usize),
}

/// Result of shooting a ray from the origin at the boundary.
#[derive(Clone, Copy, Debug)]
pub struct RayHit {
    /// Parameter along the unit ray direction.
    pub t: f64,
    /// Outward unit normal at the hit point.
    pub normal: Vec2,
    pub piece: Piece,
}

impl Body {
    pub fn new(core: Vec<Vec2>, radius: f64) -> Self {
        debug_assert!(!core.is_empty() && radius >= 0.0);
        Body { core, radius }
    }

    pub fn from_polygon(p: &ConvexPolygon) -> Self {
        Body::new(p.vertices().to_vec(), 0.0)
    }

    pub fn disc(center: Vec2, radius: f64) -> Self {
        Body::new(vec![center], radius)
    }

    pub fn core(&self) -> &[Vec2] {
        &self.core
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Support function; positively homogeneous in u.
    pub fn support(&self, u: Vec2) -> Result<f64> {
        if u.is_zero() {
            return Err(Error::DegenerateDirection);
        }
        let hc = self
            .core
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(hc + self.radius * u.norm())
    }

    /// Unit outward normal of core edge i (i -> i+1). Only for cores with
    /// at least 2 vertices.
    fn edge_normal(&self, i: usize) -> Vec2 {
        let n = self.core.len();
        (self.core[(i + 1) % n] - self.core[i]).perp_cw().unit()
    }

    /// The boundary point whose outward normal is `u` (unique when `u` lies
    /// strictly inside some vertex normal fan, which is the case for marked
    /// directions). For an edge-normal direction the edge start is used.
    pub fn boundary_point_with_normal(&self, u: Vec2) -> Vec2 {
        let u = u.unit();
        let mut best = 0;
        let mut val = f64::NEG_INFINITY;
        for (i, v) in self.core.iter().enumerate() {
            let d = v.dot(u);
            if d > val {
                val = d;
                best = i;
            }
        }
        self.core[best] + u * self.radius
    }

    /// Shoot a unit ray from the origin; the origin must be interior.
    ///
    /// Every boundary piece yields a candidate crossing with a "violation"
    /// measuring how far the hit lies outside the piece's extent. A ray
    /// through the interior always crosses the boundary, but near piece
    /// junctions (or almost tangent to a corner arc) floating rounding can
    /// push the hit just outside every strict window, so the candidate with
    /// the smallest violation wins; exact in-window hits have violation 0.
    pub fn ray_hit(&self, dir: Vec2) -> Option<RayHit> {
        let dir = dir.unit();
        let n = self.core.len();
        let r = self.radius;
        let mut best: Option<(f64, RayHit)> = None;
        // Violations are in position units; the clean window must stay at
        // rounding scale so it never becomes a dead band that blurs which
        // piece (and hence which normal) a near-junction hit belongs to.
        let mut offer = |violation: f64, hit: RayHit| {
            if !violation.is_finite() || !hit.t.is_finite() || hit.t <= 0.0 {
                return;
            }
            let better = match &best {
                None => true,
                Some((bv, bh)) => {
                    let tol = 1e-13 * (1.0 + hit.t.abs());
                    match (violation <= tol, *bv <= tol) {
                        (true, true) => hit.t < bh.t,
                        (true, false) => true,
                        (false, true) => false,
                        (false, false) => violation < *bv,
                    }
                }
            };
            if better {
                best = Some((violation, hit));
            }
        };
        if n >= 2 {
            for i in 0..n {
                let a = self.core[i];
                let b = self.core[(i + 1) % n];
                let len = (b - a).norm();
                if len == 0.0 {
                    continue;
                }
                let nrm = self.edge_normal(i);
                let denom = dir.dot(nrm);
                if denom <= 1e-18 {
                    continue;
                }
                let offset = a.dot(nrm) + r;
                let t = offset / denom;
                let p = dir * t;
                let d = (b - a) * (1.0 / len);
                let s = (p - (a + nrm * r)).dot(d);
                let violation = if s < 0.0 {
                    -s
                } else if s > len {
                    s - len
                } else {
                    0.0
                };
                offer(violation, RayHit { t, normal: nrm, piece: Piece::Edge(i) });
            }
        }
        if r > 0.0 {
            for i in 0..n {
                let c = self.core[i];
                // |t*dir - c|^2 = r^2, larger root (outward crossing),
                // written through the perpendicular from the center to the
                // ray: the textbook discriminant bq^2 - (|c|^2 - r^2)
                // cancels catastrophically when r is far below |c|.
                let bq = dir.dot(c);
                let perp = c - dir * bq;
                let disc = r * r - perp.norm_sq();
                if disc < -1e-13 * (r * r + perp.norm_sq()) {
                    continue;
                }
                let t = bq + disc.max(0.0).sqrt();
                if t <= 0.0 {
                    continue;
                }
                let mvec = dir * t - c;
                if mvec.norm() == 0.0 {
                    continue;
                }
                let m = mvec.unit();
                let violation = if n >= 2 {
                    let fan_lo = self.edge_normal((i + n - 1) % n);
                    let fan_hi = self.edge_normal(i);
                    if !fan_lo.is_finite() || !fan_hi.is_finite() {
                        continue;
                    }
                    let sec = super::sector::ConeSector::from_units(fan_lo, fan_hi);
                    // A corner fan of a convex body spans less than pi
                    // (pi exactly for segment endcaps). Anything wider is a
                    // degenerate fan between near-parallel merged edges
                    // whose normals came out microscopically reversed.
                    let excess = if sec.angle > std::f64::consts::PI + 1e-9 {
                        angular_excess(
                            &super::sector::ConeSector::from_angles(fan_lo.angle(), 0.0),
                            m,
                        )
                    } else {
                        angular_excess(&sec, m)
                    };
                    // Position units, comparable with edge-slab violations.
                    excess * r
                } else {
                    0.0
                };
                offer(violation, RayHit { t, normal: m, piece: Piece::Arc(i) });
            }
        }
        best.map(|(_, hit)| hit)
    }

    /// Gauge of x with respect to this body (origin must be interior):
    /// the smallest g >= 0 with x in g * body. Boundary points have gauge 1.
    pub fn gauge(&self, x: Vec2) -> f64 {
        let nx = x.norm();
        if nx == 0.0 {
            return 0.0;
        }
        match self.ray_hit(x * (1.0 / nx)) {
            Some(hit) => nx / hit.t,
            None => f64::INFINITY,
        }
    }

    pub fn contains(&self, x: Vec2, tol: f64) -> bool {
        self.gauge(x) <= 1.0 + tol
    }
}

/// Angular distance (radians) of a direction outside a sector; 0 inside.
fn angular_excess(sec: &super::sector::ConeSector, dir: Vec2) -> f64 {
    if sec.contains(dir, 0.0) {
        return 0.0;
    }
    let tau = std::f64::consts::TAU;
    let rel = {
        let mut a = (dir.angle() - sec.start_angle()) % tau;
        if a < 0.0 {
            a += tau;
        }
        a
    };
    // rel > sec.angle here; excess is the shorter way back onto the sector.
    (rel - sec.angle).min(tau - rel)
}

trait FiniteVec {
    fn is_finite(&self) -> bool;
}

impl FiniteVec for Vec2 {
    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Precomputed edge-normal merge of two cores. The merged structure does not
/// depend on the (positive) blend weights, so one merge serves a whole shell:
/// blend vertices are affine in the weights.
#[derive(Clone, Debug)]
pub struct MergedFan {
    a_start: usize,
    b_start: usize,
    /// Edge schedule: (from_first_core, edge_index), sorted by normal angle.
    edges: Vec<(bool, usize)>,
}

fn lowest_vertex(core: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, v) in core.iter().enumerate() {
        let b = core[best];
        if v.y < b.y - 1e-15 || (v.y < b.y + 1e-15 && v.x < b.x) {
            best = i;
        }
    }
    best
}

fn edge_angle(core: &[Vec2], i: usize) -> f64 {
    let n = core.len();
    let e = core[(i + 1) % n] - core[i];
    // Angles measured from the +x axis; starting at the lowest vertex the
    // CCW edge sequence has increasing angle in [0, 2*pi).
    let a = e.angle();
    if a < -1e-12 {
        a + std::f64::consts::TAU
    } else {
        a.max(0.0)
    }
}

impl MergedFan {
    pub fn new(a: &[Vec2], b: &[Vec2]) -> Self {
        let a_start = lowest_vertex(a);
        let b_start = lowest_vertex(b);
        let na = if a.len() >= 2 { a.len() } else { 0 };
        let nb = if b.len() >= 2 { b.len() } else { 0 };
        let mut edges = Vec::with_capacity(na + nb);
        let (mut i, mut j) = (0, 0);
        while i < na || j < nb {
            let pick_a = if i >= na {
                false
            } else if j >= nb {
                true
            } else {
                let ang_a = edge_angle(a, (a_start + i) % na);
                let ang_b = edge_angle(b, (b_start + j) % nb);
                ang_a <= ang_b
            };
            if pick_a {
                edges.push((true, (a_start + i) % na));
                i += 1;
            } else {
                edges.push((false, (b_start + j) % nb));
                j += 1;
            }
        }
        MergedFan { a_start, b_start, edges }
    }

    /// Vertices of wa * A + wb * B (Minkowski), counterclockwise.
    pub fn blend(&self, a: &[Vec2], b: &[Vec2], wa: f64, wb: f64) -> Vec<Vec2> {
        let mut v = a[self.a_start] * wa + b[self.b_start] * wb;
        let mut out = Vec::with_capacity(self.edges.len().max(1));
        out.push(v);
        if self.edges.is_empty() {
            return out;
        }
        for &(from_a, idx) in &self.edges[..self.edges.len() - 1] {
            let e = if from_a {
                (a[(idx + 1) % a.len()] - a[idx]) * wa
            } else {
                (b[(idx + 1) % b.len()] - b[idx]) * wb
            };
            v = v + e;
            out.push(v);
        }
        out
    }
}

/// Body with support function alpha * h_a + beta * h_b.
pub fn minkowski_combination(a: &Body, b: &Body, alpha: f64, beta: f64) -> Result<Body> {
    if alpha < 0.0 || beta < 0.0 || alpha + beta <= 0.0 {
        return Err(Error::EmptyCombination);
    }
    let core = if alpha == 0.0 {
        b.core().iter().map(|&v| v * beta).collect()
    } else if beta == 0.0 {
        a.core().iter().map(|&v| v * alpha).collect()
    } else {
        MergedFan::new(a.core(), b.core()).blend(a.core(), b.core(), alpha, beta)
    };
    Ok(Body::new(core, alpha * a.radius() + beta * b.radius()))
}
