//! Convex polygons with strictly convex counterclockwise vertex lists.

use super::vec2::Vec2;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A 2-D compact convex polytope given by its vertices in counterclockwise
/// order. Every vertex is a corner: three consecutive vertices are never
/// collinear (checked relative to edge lengths, so small polygons deep in a
/// nested sequence still validate).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolygon(format!(
                "{} vertices",
                vertices.len()
            )));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let e1 = b - a;
            let e2 = c - b;
            let cr = e1.cross(e2);
            if cr <= 1e-12 * e1.norm() * e2.norm() {
                return Err(Error::DegeneratePolygon(format!(
                    "vertices {}..{} not strictly convex (ccw)",
                    i,
                    (i + 2) % n
                )));
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Convex hull of a point cloud (monotone chain), then validated.
    pub fn hull_of(points: &[Vec2]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        pts.dedup_by(|a, b| a.dist(*b) < 1e-14);
        if pts.len() < 3 {
            return Err(Error::DegeneratePolygon("hull of < 3 points".into()));
        }
        let mut lower: Vec<Vec2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 {
                let q = lower[lower.len() - 1];
                let r = lower[lower.len() - 2];
                if (q - r).cross(p - q) <= 1e-14 * (q - r).norm() * (p - q).norm() {
                    lower.pop();
                } else {
                    break;
                }
            }
            lower.push(p);
        }
        let mut upper: Vec<Vec2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 {
                let q = upper[upper.len() - 1];
                let r = upper[upper.len() - 2];
                if (q - r).cross(p - q) <= 1e-14 * (q - r).norm() * (p - q).norm() {
                    upper.pop();
                } else {
                    break;
                }
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon::new(lower)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Support function h(u) = max over vertices of <v, u>.
    pub fn support(&self, u: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of a vertex attaining the support in direction u.
    pub fn support_vertex(&self, u: Vec2) -> usize {
        let mut best = 0;
        let mut val = f64::NEG_INFINITY;
        for (i, v) in self.vertices.iter().enumerate() {
            let d = v.dot(u);
            if d > val {
                val = d;
                best = i;
            }
        }
        best
    }

    /// Unit outward normal of edge i (from vertex i to vertex i+1).
    pub fn edge_normal(&self, i: usize) -> Vec2 {
        let n = self.vertices.len();
        (self.vertices[(i + 1) % n] - self.vertices[i]).perp_cw().unit()
    }

    pub fn edge_normals(&self) -> Vec<Vec2> {
        (0..self.vertices.len()).map(|i| self.edge_normal(i)).collect()
    }

    /// Signed "inside slack": min over edges of the distance from p to the
    /// edge line, positive inside, negative outside.
    pub fn inside_slack(&self, p: Vec2) -> f64 {
        let n = self.vertices.len();
        let mut slack = f64::INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            let s = e.cross(p - a) / e.norm();
            slack = slack.min(s);
        }
        slack
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.inside_slack(p) >= -tol
    }

    pub fn contains_strict(&self, p: Vec2) -> bool {
        self.inside_slack(p) > 0.0
    }

    pub fn scale(&self, lambda: f64) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v * lambda).collect(),
        }
    }

    /// Inflate about the vertex centroid by factor >= 1 (used to build
    /// domain hulls with slack around a set of polygons).
    pub fn inflate(&self, factor: f64) -> ConvexPolygon {
        let c = self.centroid();
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| c + (v - c) * factor).collect(),
        }
    }

    pub fn centroid(&self) -> Vec2 {
        let mut s = Vec2::zero();
        for &v in &self.vertices {
            s = s + v;
        }
        s * (1.0 / self.vertices.len() as f64)
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                d = d.max(self.vertices[i].dist(self.vertices[j]));
            }
        }
        d
    }

    /// Interior angle at vertex i, in (0, pi).
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.vertices.len();
        let v = self.vertices[i];
        let prev = self.vertices[(i + n - 1) % n];
        let next = self.vertices[(i + 1) % n];
        let a = prev - v;
        let b = next - v;
        a.cross(b).abs().atan2(a.dot(b))
    }

    /// Largest admissible inward offset: each edge keeps positive length.
    ///
    /// Offset vertices move linearly in r along the corner "bisector"
    /// b_i with <b_i, n_{i-1}> = <b_i, n_i> = 1, so each edge length is
    /// linear in r and the limit is the smallest positive collapse root.
    pub fn offset_limit(&self) -> f64 {
        let n = self.vertices.len();
        let bis: Vec<Vec2> = (0..n).map(|i| self.offset_rate(i)).collect();
        let mut limit = f64::INFINITY;
        for i in 0..n {
            let j = (i + 1) % n;
            let d = (self.vertices[j] - self.vertices[i]).unit();
            let len0 = (self.vertices[j] - self.vertices[i]).norm();
            let shrink = (bis[j] - bis[i]).dot(d);
            if shrink > 1e-15 {
                limit = limit.min(len0 / shrink);
            }
        }
        limit
    }

    /// Velocity of vertex i under inward offset (solves the 2x2 system for
    /// the intersection of the two adjacent offset lines).
    fn offset_rate(&self, i: usize) -> Vec2 {
        let n = self.vertices.len();
        let n_in = self.edge_normal((i + n - 1) % n);
        let n_out = self.edge_normal(i);
        // b with <b, n_in> = 1 and <b, n_out> = 1.
        let det = n_in.x * n_out.y - n_in.y * n_out.x;
        Vec2::new((n_out.y - n_in.y) / det, (n_in.x - n_out.x) / det)
    }

    /// Polygon with every edge moved inward by r, keeping edge order.
    pub fn inner_offset(&self, r: f64) -> Result<ConvexPolygon> {
        if r == 0.0 {
            return Ok(self.clone());
        }
        let limit = self.offset_limit();
        if r < 0.0 || r >= limit {
            return Err(Error::RoundingRadius { r, limit });
        }
        let n = self.vertices.len();
        let verts: Vec<Vec2> = (0..n)
            .map(|i| self.vertices[i] - self.offset_rate(i) * r)
            .collect();
        // Edge directions must be preserved.
        for i in 0..n {
            let j = (i + 1) % n;
            let d0 = self.vertices[j] - self.vertices[i];
            let d1 = verts[j] - verts[i];
            if d1.dot(d0) <= 0.0 {
                return Err(Error::RoundingRadius { r, limit });
            }
        }
        ConvexPolygon::new(verts)
    }
}
