//! Cone, nesting, distance and rounding operations on polygons and bodies.

use super::body::Body;
use super::polygon::ConvexPolygon;
use super::sector::ConeSector;
use super::vec2::Vec2;
use crate::error::{Error, Result};

/// Normal cone, tangent cone and admissible cone (N intersected with -T)
/// at a vertex of a polygon. The input must coincide with a vertex; points
/// on edges or outside are rejected.
pub fn cones_at_vertex(p: &ConvexPolygon, v: Vec2) -> Result<(ConeSector, ConeSector, ConeSector)> {
    let n = p.len();
    let idx = (0..n)
        .find(|&i| p.vertex(i).dist(v) <= 1e-12 * (1.0 + v.norm()))
        .ok_or(Error::NotAVertex(v.x, v.y))?;
    let prev = p.vertex((idx + n - 1) % n);
    let next = p.vertex((idx + 1) % n);
    let n_in = (v - prev).perp_cw().unit();
    let n_out = (next - v).perp_cw().unit();
    let normal = ConeSector::from_units(n_in, n_out);
    let tangent = ConeSector::from_units((next - v).unit(), (prev - v).unit());
    let admissible = normal
        .intersect(&tangent.negate())
        .unwrap_or(ConeSector::from_units(n_in, n_in));
    Ok((normal, tangent, admissible))
}

/// Largest margin d in [0, 1) such that scaling the inner polygon by any
/// factor in [1-d, 1+d] keeps it strictly inside the outer polygon.
/// Both polygons must contain the origin strictly; computed by bisection
/// to absolute tolerance 1e-12.
pub fn nesting_margin(outer: &ConvexPolygon, inner: &ConvexPolygon) -> Result<f64> {
    if !outer.contains_strict(Vec2::zero()) || !inner.contains_strict(Vec2::zero()) {
        return Err(Error::OriginNotInterior);
    }
    let ok = |delta: f64| -> bool {
        for &lam in &[1.0 - delta, 1.0 + delta] {
            for &v in inner.vertices() {
                if !outer.contains_strict(v * lam) {
                    return false;
                }
            }
        }
        true
    };
    if !ok(0.0) {
        return Ok(0.0);
    }
    let cap = 1.0 - 1e-15;
    if ok(cap) {
        return Ok(cap);
    }
    let (mut lo, mut hi) = (0.0f64, cap);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Hausdorff distance between convex bodies via the support-gap identity
/// sup over unit u of |h_a(u) - h_b(u)|. Candidate directions are the edge
/// normals of both cores, the pairwise core-vertex difference directions
/// (where a gap cell can attain an interior extremum), and a uniform sweep.
/// Exact for polygon and rounded-polygon pairs up to fp rounding.
pub fn hausdorff(a: &Body, b: &Body, n_dirs: usize) -> f64 {
    let n_dirs = n_dirs.max(8);
    let mut dirs: Vec<Vec2> = Vec::new();
    for body in [a, b] {
        let core = body.core();
        if core.len() >= 2 {
            for i in 0..core.len() {
                let e = core[(i + 1) % core.len()] - core[i];
                if e.norm() > 0.0 {
                    dirs.push(e.perp_cw().unit());
                }
            }
        }
    }
    for &va in a.core() {
        for &vb in b.core() {
            let d = va - vb;
            if d.norm() > 1e-300 {
                dirs.push(d.unit());
                dirs.push(-d.unit());
            }
        }
    }
    for k in 0..n_dirs {
        dirs.push(Vec2::from_angle(k as f64 * std::f64::consts::TAU / n_dirs as f64));
    }
    let mut best = 0.0f64;
    for u in dirs {
        let gap = (a.support(u).unwrap() - b.support(u).unwrap()).abs();
        best = best.max(gap);
    }
    best
}

/// Collinearity of three points with a relative tolerance.
pub fn aligned(p: Vec2, q: Vec2, r: Vec2, tol: f64) -> bool {
    let u = q - p;
    let v = r - p;
    u.cross(v).abs() <= tol * (u.norm() * v.norm()).max(1.0)
}

/// Angle in [0, pi] at B formed by the rays toward A and C.
pub fn angle_at(a: Vec2, b: Vec2, c: Vec2) -> Result<f64> {
    let u = a - b;
    let v = c - b;
    let scale = 1.0 + a.norm() + b.norm() + c.norm();
    if u.norm() <= 1e-15 * scale || v.norm() <= 1e-15 * scale {
        return Err(Error::DegenerateDirection);
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// A polygon rounded by radius r: the core is the inner offset (each edge
/// moved inward by r) and the body adds the disc of radius r back. Returns
/// the body together with the exact Hausdorff distance to the original
/// polygon, max over corners of r * (csc(interior/2) - 1); this is at most
/// r * sec(max exterior half-angle).
pub fn rounded_body(p: &ConvexPolygon, r: f64) -> Result<(Body, f64)> {
    if r == 0.0 {
        return Ok((Body::from_polygon(p), 0.0));
    }
    let core = p.inner_offset(r)?;
    let mut gap = 0.0f64;
    for i in 0..p.len() {
        let half = 0.5 * p.interior_angle(i);
        gap = gap.max(r * (1.0 / half.sin() - 1.0));
    }
    Ok((Body::new(core.vertices().to_vec(), r), gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn poly(v: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(v.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).unwrap()
    }

    fn centered_square(h: f64) -> ConvexPolygon {
        poly(&[(-h, -h), (h, -h), (h, h), (-h, h)])
    }

    /// First nested octagon family polygon (hexagonal after merging the
    /// coincident axis vertices): corners at (-1/2,0), (-1/4,+-3/4),
    /// (1/4,+-3/4), (1/2,0).
    fn sketch_hexagon() -> ConvexPolygon {
        poly(&[
            (-0.5, 0.0),
            (-0.25, -0.75),
            (0.25, -0.75),
            (0.5, 0.0),
            (0.25, 0.75),
            (-0.25, 0.75),
        ])
    }

    #[test]
    fn cones_symmetric_square_corner() {
        let sq = centered_square(1.0);
        let (n, t, k) = cones_at_vertex(&sq, Vec2::new(1.0, 1.0)).unwrap();
        assert!(n.contains(Vec2::new(1.0, 0.0), 1e-9));
        assert!(n.contains(Vec2::new(0.0, 1.0), 1e-9));
        assert!(!n.contains(Vec2::new(-1.0, 0.1), 1e-9));
        assert!(t.contains(Vec2::new(-1.0, 0.0), 1e-9));
        assert!(t.contains(Vec2::new(0.0, -1.0), 1e-9));
        // K = sector from (1,0) to (0,1).
        assert!((k.lo.angle() - 0.0).abs() < 1e-12);
        assert!((k.hi.angle() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn cones_reject_non_vertices() {
        let sq = centered_square(1.0);
        assert!(cones_at_vertex(&sq, Vec2::new(1.0, 0.0)).is_err());
        assert!(cones_at_vertex(&sq, Vec2::new(2.0, 2.0)).is_err());
    }

    #[test]
    fn cones_hexagon_upper_right_vertex() {
        // Derived case: at (1/4, 3/4) the normal cone runs from the
        // edge normal (3,1)/sqrt(10) to (0,1), and K = N.
        let hx = sketch_hexagon();
        let v = Vec2::new(0.25, 0.75);
        let (n, _t, k) = cones_at_vertex(&hx, v).unwrap();
        let lo_expect = Vec2::new(3.0, 1.0).unit();
        assert!(n.lo.dist(lo_expect) < 1e-12);
        assert!(n.hi.dist(Vec2::new(0.0, 1.0)) < 1e-12);
        assert!(k.lo.dist(n.lo) < 1e-12 && k.hi.dist(n.hi) < 1e-12);
        // Brute force: every direction inside K separates v from the rest.
        let mut rng = Rng::new(11);
        for _ in 0..500 {
            let (ux, uy) = rng.unit_dir();
            let u = Vec2::new(ux, uy);
            if k.contains(u, -1e-9) {
                for &w in hx.vertices() {
                    if w.dist(v) > 1e-12 {
                        assert!((w - v).dot(u) < 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn cones_triangle_apex() {
        let tri = poly(&[(-1.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let (n, _, _) = cones_at_vertex(&tri, Vec2::new(0.0, 1.0)).unwrap();
        assert!(n.lo.dist(Vec2::new(1.0, 1.0).unit()) < 1e-12);
        assert!(n.hi.dist(Vec2::new(-1.0, 1.0).unit()) < 1e-12);
    }

    #[test]
    fn nesting_margin_examples() {
        let outer = centered_square(1.0);
        let inner = centered_square(0.5);
        let m = nesting_margin(&outer, &inner).unwrap();
        assert!(m >= 0.999, "homothets margin {m}");
        assert_eq!(nesting_margin(&outer, &outer).unwrap(), 0.0);
        // Bisection agrees with the closed form on generic homothets:
        // (1+d) * 0.7 < 1  =>  d = 3/7.
        let inner2 = centered_square(0.7);
        let m2 = nesting_margin(&outer, &inner2).unwrap();
        assert!((m2 - 3.0 / 7.0).abs() < 1e-9, "margin {m2}");
    }

    #[test]
    fn nesting_margin_requires_origin() {
        let shifted = poly(&[(1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (1.0, 2.0)]);
        assert!(matches!(
            nesting_margin(&shifted, &shifted),
            Err(Error::OriginNotInterior)
        ));
    }

    #[test]
    fn nesting_margin_scaled_vertices_stay_inside() {
        let outer = sketch_hexagon();
        let inner = sketch_hexagon().scale(0.6);
        let d = nesting_margin(&outer, &inner).unwrap();
        assert!(d > 0.0);
        for &lam in &[1.0 - d, 1.0, 1.0 + d] {
            for &v in inner.vertices() {
                assert!(outer.contains_strict(v * lam));
            }
        }
    }

    #[test]
    fn hausdorff_examples() {
        let p = Body::from_polygon(&centered_square(1.0));
        assert_eq!(hausdorff(&p, &p, 64), 0.0);
        let (rounded, gap) = rounded_body(&centered_square(1.0), 0.1).unwrap();
        let h = hausdorff(&p, &rounded, 64);
        // Square corners: gap = r (csc(45 deg) - 1) = r (sqrt(2) - 1).
        let expect = 0.1 * (std::f64::consts::SQRT_2 - 1.0);
        assert!((h - expect).abs() < 1e-12, "h {h}");
        assert!((gap - expect).abs() < 1e-12);
        // Body differing only in radius: gap equals the radius difference.
        let b = Body::new(centered_square(1.0).vertices().to_vec(), 0.1);
        assert!((hausdorff(&p, &b, 64) - 0.1).abs() < 1e-12);
        // Nested homothetic squares: the sup of support gaps sits on the
        // diagonal (corner-to-corner distance), sqrt(2) here.
        let big = Body::from_polygon(&centered_square(2.0));
        let h2 = hausdorff(&p, &big, 64);
        assert!((h2 - std::f64::consts::SQRT_2).abs() < 1e-12, "h2 {h2}");
    }

    #[test]
    fn aligned_examples() {
        assert!(aligned(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(2.0, 2.0),
            1e-12
        ));
        assert!(!aligned(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            1e-12
        ));
        // Second sketch level: (-1/4, 3/4), (1/4, 9/20) and (1, 0) are
        // collinear (checked exactly in the rational backend as well).
        assert!(aligned(
            Vec2::new(-0.25, 0.75),
            Vec2::new(0.25, 0.45),
            Vec2::new(1.0, 0.0),
            1e-12
        ));
    }

    #[test]
    fn angle_examples() {
        let right = angle_at(Vec2::new(1.0, 0.0), Vec2::zero(), Vec2::new(0.0, 1.0)).unwrap();
        assert!((right - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let flat = angle_at(Vec2::new(1.0, 0.0), Vec2::zero(), Vec2::new(-1.0, 0.0)).unwrap();
        assert!((flat - std::f64::consts::PI).abs() < 1e-15);
        assert!(angle_at(Vec2::zero(), Vec2::zero(), Vec2::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn rounding_examples() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let (b0, g0) = rounded_body(&sq, 0.0).unwrap();
        assert_eq!(b0.radius(), 0.0);
        assert_eq!(g0, 0.0);
        let (b, _) = rounded_body(&sq, 0.1).unwrap();
        assert_eq!(b.core().len(), 4);
        assert!((b.core()[0].dist(Vec2::new(0.1, 0.1))) < 1e-12);
        let hx = sketch_hexagon();
        let (bh, _) = rounded_body(&hx, 1e-3).unwrap();
        assert_eq!(bh.core().len(), 6);
        let too_big = rounded_body(&sq, 0.7);
        assert!(matches!(too_big, Err(Error::RoundingRadius { .. })));
    }

    #[test]
    fn support_additivity_under_combination() {
        // support(alpha a + beta b, u) = alpha h_a(u) + beta h_b(u)
        // over 1000 seeded directions, within 1e-10.
        let a = Body::from_polygon(&sketch_hexagon());
        let (b, _) = rounded_body(&centered_square(0.4), 0.05).unwrap();
        let c = super::super::body::minkowski_combination(&a, &b, 0.7, 0.6).unwrap();
        let mut rng = Rng::new(99);
        for _ in 0..1000 {
            let (x, y) = rng.unit_dir();
            let u = Vec2::new(x, y);
            let lhs = c.support(u).unwrap();
            let rhs = 0.7 * a.support(u).unwrap() + 0.6 * b.support(u).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
