//! Objective synthesis from a validated sketch.
//!
//! Level bodies are the sketch polytopes rounded by a small radius; level
//! values decrease by the largest per-level gap that keeps the slope of the
//! radial profile nondecreasing outward in every support direction. Between
//! two consecutive bodies the level sets are their Minkowski blends, so a
//! point is evaluated by locating its shell, solving for the blend weight
//! sigma, and reading the boundary normal there:
//!
//!   f = (1 - sigma) eta_l + sigma eta_{l+1},
//!   grad = m n,  m = (eta_l - eta_{l+1}) / (h_l(n) - h_{l+1}(n)).
//!
//! Outside the outermost body the profile continues per-direction with the
//! outermost slope, as the upper envelope over support directions; inside
//! the innermost body the objective is identically zero.

use super::spec::{validate_sketch, SketchSpec};
use crate::error::{Error, Result};
use crate::fw::Objective;
use crate::geom2d::{rounded_body, Body, ConvexPolygon, MergedFan, Vec2};
use crate::rng::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BuildParams {
    /// Upper bound for the rounding radii.
    pub r_scale: f64,
    /// Value of the objective on the outermost body boundary.
    pub eta0: f64,
    /// Optional floor for the per-level gap ratio. The unfloored rule is
    /// the largest convex choice; a floor keeps gradient magnitudes from
    /// collapsing on sketches with pinched support gaps at the price of
    /// exact convexity near the pinches (recorded in `floored_levels`).
    pub gap_ratio_floor: Option<f64>,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            r_scale: 1e-4,
            eta0: 1.0,
            gap_ratio_floor: None,
        }
    }
}

/// Where an evaluation landed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shell {
    /// Interior of the innermost body: f = 0.
    Core,
    /// Between body `level` and body `level + 1`, at blend weight sigma.
    Between { level: usize, sigma: f64 },
    /// Outside the outermost body, at homothety excess s (gauge - 1).
    Beyond { s: f64 },
}

/// Marked boundary point realizing a marked vertex: the unique point of the
/// level body whose outward normal is the marked direction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub level: usize,
    pub vertex: Vec2,
    pub dir: Vec2,
    pub point: Vec2,
}

#[derive(Clone, Debug)]
pub struct SketchObjective {
    bodies: Vec<Body>,
    radii: Vec<f64>,
    /// eta_0 > eta_1 > ... > eta_max = 0.
    levels: Vec<f64>,
    gaps: Vec<f64>,
    fans: Vec<MergedFan>,
    floored_levels: Vec<usize>,
    marked: Vec<MarkedPoint>,
    domain: ConvexPolygon,
    outer_dirs: Vec<Vec2>,
}

const SIGMA_TOL: f64 = 1e-13;

fn support_dirs(polys: &[&ConvexPolygon], uniform: usize) -> Vec<Vec2> {
    let mut dirs = Vec::new();
    for p in polys {
        dirs.extend(p.edge_normals());
    }
    for k in 0..uniform {
        dirs.push(Vec2::from_angle(k as f64 * std::f64::consts::TAU / uniform as f64));
    }
    dirs
}

pub fn build_objective(spec: &SketchSpec, params: &BuildParams) -> Result<SketchObjective> {
    let report = validate_sketch(spec);
    if !report.pass {
        return Err(Error::InvalidSketch(report.summary()));
    }
    let n_levels = spec.polytopes.len();

    // Rounding radii: capped by the scale parameter, by a tenth of the level
    // margin discounted by corner sharpness (so the rounded body stays within
    // the margin of its polytope in Hausdorff distance), and by the offset
    // limit of the polygon.
    let mut bodies = Vec::with_capacity(n_levels);
    let mut radii = Vec::with_capacity(n_levels);
    for (l, p) in spec.polytopes.iter().enumerate() {
        let mut corner = 1.0f64;
        for i in 0..p.len() {
            let half = 0.5 * p.interior_angle(i);
            corner = corner.max(1.0 / half.sin() - 1.0);
        }
        let r = params
            .r_scale
            .min(0.1 * spec.margin_at(l) / corner)
            .min(0.5 * p.offset_limit())
            .max(0.0);
        let (body, gap) = rounded_body(p, r).map_err(|_| Error::RoundingInfeasible(l))?;
        debug_assert!(gap <= spec.margin_at(l) + 1e-15);
        radii.push(r);
        bodies.push(body);
    }

    // Largest convex gap ratios: min over support directions of the ratio of
    // consecutive support gaps. Ratios of support gaps are monotone within a
    // normal-fan cell, so edge normals plus a uniform sweep suffice; a local
    // ternary refinement tightens the winning cell.
    let mut ratios = Vec::with_capacity(n_levels.saturating_sub(2));
    let mut floored_levels = Vec::new();
    for l in 0..n_levels.saturating_sub(2) {
        let dirs = support_dirs(
            &[&spec.polytopes[l], &spec.polytopes[l + 1], &spec.polytopes[l + 2]],
            512,
        );
        let ratio_at = |u: Vec2| -> Result<f64> {
            let h0 = bodies[l].support(u)?;
            let h1 = bodies[l + 1].support(u)?;
            let h2 = bodies[l + 2].support(u)?;
            let denom = h0 - h1;
            let numer = h1 - h2;
            let scale = h0.abs().max(1e-30);
            if denom <= 1e-14 * scale || numer <= 1e-14 * scale {
                return Err(Error::NotNested(u.x, u.y));
            }
            Ok(numer / denom)
        };
        let mut best = f64::INFINITY;
        let mut best_angle = 0.0f64;
        for u in &dirs {
            let r = ratio_at(*u)?;
            if r < best {
                best = r;
                best_angle = u.angle();
            }
        }
        // Ternary refinement around the best sampled direction.
        let mut lo = best_angle - std::f64::consts::TAU / 512.0;
        let mut hi = best_angle + std::f64::consts::TAU / 512.0;
        for _ in 0..80 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            let r1 = ratio_at(Vec2::from_angle(m1))?;
            let r2 = ratio_at(Vec2::from_angle(m2))?;
            if r1 < r2 {
                hi = m2;
            } else {
                lo = m1;
            }
            best = best.min(r1.min(r2));
        }
        let applied = match params.gap_ratio_floor {
            Some(floor) if best < floor => {
                floored_levels.push(l);
                floor
            }
            _ => best,
        };
        ratios.push(applied);
    }
    // The innermost shell's support gap must also be positive.
    if n_levels >= 2 {
        let l = n_levels - 2;
        for u in support_dirs(&[&spec.polytopes[l], &spec.polytopes[l + 1]], 512) {
            let gap = bodies[l].support(u)? - bodies[l + 1].support(u)?;
            if gap <= 1e-14 * bodies[l].support(u)?.abs().max(1e-30) {
                return Err(Error::NotNested(u.x, u.y));
            }
        }
    }

    // Level values: eta_max = 0, gaps follow the ratio recursion, scaled so
    // eta_0 matches the requested value.
    let mut gaps = vec![0.0; n_levels.saturating_sub(1)];
    if !gaps.is_empty() {
        gaps[0] = 1.0;
        for l in 1..gaps.len() {
            gaps[l] = gaps[l - 1] * ratios[l - 1];
        }
        let total: f64 = gaps.iter().sum();
        for g in gaps.iter_mut() {
            *g *= params.eta0 / total;
        }
    }
    let mut levels = vec![0.0; n_levels];
    for l in (0..n_levels.saturating_sub(1)).rev() {
        levels[l] = levels[l + 1] + gaps[l];
    }

    let fans: Vec<MergedFan> = (0..n_levels.saturating_sub(1))
        .map(|l| MergedFan::new(bodies[l].core(), bodies[l + 1].core()))
        .collect();

    let marked = spec
        .marks
        .iter()
        .map(|m| MarkedPoint {
            level: m.level,
            vertex: m.vertex,
            dir: m.dir,
            point: bodies[m.level].boundary_point_with_normal(m.dir),
        })
        .collect();

    let outer_dirs = support_dirs(
        &[&spec.polytopes[0], &spec.polytopes[1.min(n_levels - 1)]],
        1024,
    );

    Ok(SketchObjective {
        bodies,
        radii,
        levels,
        gaps,
        fans,
        floored_levels,
        marked,
        domain: spec.domain.clone(),
        outer_dirs,
    })
}

impl SketchObjective {
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn marked_points(&self) -> &[MarkedPoint] {
        &self.marked
    }

    pub fn floored_levels(&self) -> &[usize] {
        &self.floored_levels
    }

    pub fn domain(&self) -> &ConvexPolygon {
        &self.domain
    }

    pub fn depth(&self) -> usize {
        self.bodies.len() - 1
    }

    fn blend_body(&self, level: usize, sigma: f64) -> Body {
        let core = self.fans[level].blend(
            self.bodies[level].core(),
            self.bodies[level + 1].core(),
            1.0 - sigma,
            sigma,
        );
        let r = (1.0 - sigma) * self.radii[level] + sigma * self.radii[level + 1];
        Body::new(core, r)
    }

    /// Boundary point of the interpolated level-set at blend weight `sigma`
    /// in shell `level` whose outward normal is `dir`.
    pub fn shell_point(&self, level: usize, sigma: f64, dir: Vec2) -> Vec2 {
        self.blend_body(level, sigma).boundary_point_with_normal(dir)
    }

    /// Slope of the radial profile in shell `level` for boundary normal `n`.
    fn slope(&self, level: usize, n: Vec2) -> Result<f64> {
        let h0 = self.bodies[level].support(n)?;
        let h1 = self.bodies[level + 1].support(n)?;
        Ok(self.gaps[level] / (h0 - h1))
    }

    /// Locate x and evaluate value, gradient and shell.
    pub fn eval_with_shell(&self, x: Vec2) -> Result<(f64, Vec2, Shell)> {
        let scale = 1.0 + x.norm();
        if !self.domain.contains(x, 1e-9 * scale) {
            return Err(Error::OutsideDomain);
        }
        let last = self.bodies.len() - 1;
        if self.bodies[last].gauge(x) < 1.0 - SIGMA_TOL {
            return Ok((0.0, Vec2::zero(), Shell::Core));
        }
        // Points within a hair of the outermost boundary evaluate through
        // the shell path: its ray-hit normal is far better conditioned than
        // the direction search of the outer envelope.
        let g0 = self.bodies[0].gauge(x);
        if g0 > 1.0 + 1e-9 {
            return self.eval_beyond(x, g0);
        }
        // Largest level whose body still contains x (gauges are monotone
        // increasing in the level index). Points within tolerance of the
        // innermost boundary evaluate from the shell side.
        let level = if self.bodies[last].gauge(x) <= 1.0 + SIGMA_TOL {
            last - 1
        } else {
            let (mut lo, mut hi) = (0usize, last);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if self.bodies[mid].gauge(x) <= 1.0 + SIGMA_TOL {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        // Blend weight: gauge of the interpolated body crosses 1 at sigma.
        // Refined to floating fixed point (well past the guaranteed 1e-13):
        // a residual offset of delta in sigma tilts the reported boundary
        // normal by about delta x (corner travel distance) / (arc radius),
        // which matters at marked points.
        let (mut slo, mut shi) = (0.0f64, 1.0f64);
        loop {
            let mid = 0.5 * (slo + shi);
            if mid <= slo || mid >= shi {
                break;
            }
            if self.blend_body(level, mid).gauge(x) <= 1.0 {
                slo = mid;
            } else {
                shi = mid;
            }
        }
        let sigma = 0.5 * (slo + shi);
        // Next to a level boundary the blend degenerates (vertex pairs of
        // the two cores collapse to the same floats); the pure body's
        // boundary geometry is exact there, so read the normal from it.
        let hit = if sigma <= 1e-6 {
            self.bodies[level].ray_hit(x)
        } else if sigma >= 1.0 - 1e-6 {
            self.bodies[level + 1].ray_hit(x)
        } else {
            self.blend_body(level, sigma).ray_hit(x)
        };
        let hit = hit.ok_or(Error::Other("shell boundary hit failed".into()))?;
        let n = hit.normal;
        let f = (1.0 - sigma) * self.levels[level] + sigma * self.levels[level + 1];
        let m = self.slope(level, n)?;
        Ok((f, n * m, Shell::Between { level, sigma }))
    }

    /// Beyond the outermost body: upper envelope, over support directions,
    /// of the per-direction linear continuation of the outermost shell.
    fn eval_beyond(&self, x: Vec2, gauge0: f64) -> Result<(f64, Vec2, Shell)> {
        let score = |u: Vec2| -> Result<(f64, f64)> {
            let h0 = self.bodies[0].support(u)?;
            let h1 = self.bodies[1].support(u)?;
            let m = self.gaps[0] / (h0 - h1);
            Ok((self.levels[0] + m * (x.dot(u) - h0), m))
        };
        let mut best = (f64::NEG_INFINITY, Vec2::new(1.0, 0.0));
        for u in &self.outer_dirs {
            let (s, _) = score(*u)?;
            if s > best.0 {
                best = (s, *u);
            }
        }
        let span = std::f64::consts::TAU / 1024.0;
        let (mut lo, mut hi) = (best.1.angle() - span, best.1.angle() + span);
        for _ in 0..90 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            let u1 = Vec2::from_angle(m1);
            let u2 = Vec2::from_angle(m2);
            let s1 = score(u1)?.0;
            let s2 = score(u2)?.0;
            if s1 > best.0 {
                best = (s1, u1);
            }
            if s2 > best.0 {
                best = (s2, u2);
            }
            if s1 < s2 {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let (f, m) = score(best.1)?;
        Ok((f, best.1 * m, Shell::Beyond { s: gauge0 - 1.0 }))
    }
}

impl Objective for SketchObjective {
    fn eval(&self, x: Vec2) -> Result<(f64, Vec2)> {
        let (f, g, _) = self.eval_with_shell(x)?;
        Ok((f, g))
    }
}

/// Sampled lower estimate of the gradient Lipschitz constant over a region:
/// max over sampled point pairs of |grad(y) - grad(x)| / |y - x|.
///
/// Pairs are probes at a fixed separation (1e-3 of the region diameter, in
/// a random direction). Fixing the probe scale keeps the estimate stable
/// across seeds even where the gradient field has kinks; it remains a lower
/// estimate of the true constant. Deterministic for a fixed seed.
pub fn lipschitz_estimate(
    obj: &dyn Objective,
    region: &ConvexPolygon,
    n_samples: usize,
    seed: u64,
) -> f64 {
    assert!(n_samples >= 100, "need at least 100 sample pairs");
    let mut rng = Rng::new(seed);
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for v in region.vertices() {
        xmin = xmin.min(v.x);
        xmax = xmax.max(v.x);
        ymin = ymin.min(v.y);
        ymax = ymax.max(v.y);
    }
    let sep = 1e-3 * region.diameter();
    let mut best = 0.0f64;
    let mut done = 0;
    let mut attempts = 0usize;
    while done < n_samples && attempts < n_samples * 100 {
        attempts += 1;
        let x = Vec2::new(rng.range(xmin, xmax), rng.range(ymin, ymax));
        let (dx, dy) = rng.unit_dir();
        let y = x + Vec2::new(dx, dy) * sep;
        if !region.contains(x, 0.0) || !region.contains(y, 0.0) {
            continue;
        }
        let (gx, gy) = match (obj.gradient(x), obj.gradient(y)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        best = best.max((gy - gx).norm() / sep);
        done += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom2d::{hausdorff, nesting_margin};
    use crate::sketch::spec::Mark;

    fn square(h: f64) -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Vec2::new(-h, -h),
            Vec2::new(h, -h),
            Vec2::new(h, h),
            Vec2::new(-h, h),
        ])
        .unwrap()
    }

    fn homothetic_spec(depth: usize) -> SketchSpec {
        let polytopes: Vec<ConvexPolygon> =
            (0..=depth).map(|l| square(2.0f64.powi(-(l as i32)))).collect();
        let margins: Vec<f64> = (0..depth)
            .map(|l| nesting_margin(&polytopes[l], &polytopes[l + 1]).unwrap())
            .collect();
        SketchSpec {
            polytopes,
            marks: vec![Mark {
                level: 1,
                vertex: Vec2::new(0.5, 0.5),
                dir: Vec2::new(1.0, 1.0).unit(),
            }],
            margins,
            domain: square(3.0),
            smoothness_degree: 2,
        }
    }

    #[test]
    fn homothetic_gaps_halve() {
        let spec = homothetic_spec(8);
        let obj = build_objective(&spec, &BuildParams { r_scale: 0.0, ..Default::default() }).unwrap();
        for l in 0..7 {
            let ratio = obj.gaps[l + 1] / obj.gaps[l];
            assert!((ratio - 0.5).abs() < 1e-9, "level {l}: ratio {ratio}");
        }
        assert!((obj.levels[0] - 1.0).abs() < 1e-12);
        assert_eq!(*obj.levels.last().unwrap(), 0.0);
        assert!(obj.floored_levels.is_empty());
    }

    #[test]
    fn gauge_like_values_on_homothets() {
        // With square levels at half-sides 2^-l and r = 0, the objective on
        // the positive x-axis is piecewise linear with kinks at 2^-l.
        let spec = homothetic_spec(8);
        let obj = build_objective(&spec, &BuildParams { r_scale: 0.0, ..Default::default() }).unwrap();
        let (f, g, _) = obj.eval_with_shell(Vec2::new(1.0, 0.0)).unwrap();
        assert!((f - obj.levels[0]).abs() < 1e-9);
        assert!(g.unit().dist(Vec2::new(1.0, 0.0)) < 1e-9);
        let (f_mid, _, shell) = obj.eval_with_shell(Vec2::new(0.75, 0.0)).unwrap();
        let expect = 0.5 * (obj.levels[0] + obj.levels[1]);
        assert!((f_mid - expect).abs() < 1e-9, "{f_mid} vs {expect}");
        match shell {
            Shell::Between { level: 0, sigma } => assert!((sigma - 0.5).abs() < 1e-9),
            s => panic!("unexpected shell {s:?}"),
        }
        // Interior of the innermost body.
        let (f0, g0, shell0) = obj.eval_with_shell(Vec2::zero()).unwrap();
        assert_eq!(f0, 0.0);
        assert!(g0.is_zero());
        assert_eq!(shell0, Shell::Core);
    }

    #[test]
    fn boundary_values_match_levels() {
        let spec = homothetic_spec(6);
        let obj = build_objective(&spec, &BuildParams::default()).unwrap();
        for l in 0..=6 {
            let p = obj.bodies()[l].boundary_point_with_normal(Vec2::new(0.3, 1.0).unit());
            let (f, _, _) = obj.eval_with_shell(p).unwrap();
            assert!(
                (f - obj.levels[l]).abs() <= 1e-12 + 1e-9 * obj.levels[l].abs(),
                "level {l}: f = {f}, eta = {}",
                obj.levels[l]
            );
        }
    }

    #[test]
    fn outer_extension_continues_slope() {
        let spec = homothetic_spec(5);
        let obj = build_objective(&spec, &BuildParams { r_scale: 0.0, ..Default::default() }).unwrap();
        // Homothetic squares: slope along +x in shell 0 is gap0 / (1 - 1/2).
        let m = obj.gaps[0] / 0.5;
        let (f, g, shell) = obj.eval_with_shell(Vec2::new(1.5, 0.0)).unwrap();
        assert!(matches!(shell, Shell::Beyond { .. }));
        assert!((f - (obj.levels[0] + 0.5 * m)).abs() < 1e-6, "f = {f}");
        assert!(g.unit().dist(Vec2::new(1.0, 0.0)) < 1e-6);
        // Continuity across the outermost boundary.
        let (f_in, _, _) = obj.eval_with_shell(Vec2::new(1.0 - 1e-9, 0.0)).unwrap();
        let (f_out, _, _) = obj.eval_with_shell(Vec2::new(1.0 + 1e-9, 0.0)).unwrap();
        assert!((f_in - f_out).abs() < 1e-6);
    }

    #[test]
    fn outside_domain_rejected() {
        let spec = homothetic_spec(4);
        let obj = build_objective(&spec, &BuildParams::default()).unwrap();
        assert!(matches!(
            obj.eval_with_shell(Vec2::new(10.0, 0.0)),
            Err(Error::OutsideDomain)
        ));
    }

    #[test]
    fn touching_levels_rejected() {
        // P_1 touches the boundary of P_0: validation already fails, and the
        // builder reports the broken sketch.
        let p0 = square(1.0);
        let p1 = square(1.0);
        let spec = SketchSpec {
            polytopes: vec![p0, p1, square(0.25)],
            marks: vec![],
            margins: vec![0.5, 0.5],
            domain: square(3.0),
            smoothness_degree: 2,
        };
        assert!(build_objective(&spec, &BuildParams::default()).is_err());
    }

    #[test]
    fn rounded_bodies_stay_within_margins() {
        let spec = homothetic_spec(8);
        let obj = build_objective(&spec, &BuildParams { r_scale: 1e-3, ..Default::default() }).unwrap();
        for l in 0..=8 {
            let poly = Body::from_polygon(&spec.polytopes[l]);
            let h = hausdorff(&obj.bodies()[l], &poly, 64);
            assert!(h <= spec.margin_at(l), "level {l}: {h}");
        }
    }

    #[test]
    fn marked_point_gradient_colinear() {
        let spec = homothetic_spec(6);
        let obj = build_objective(&spec, &BuildParams { r_scale: 1e-3, ..Default::default() }).unwrap();
        let mp = &obj.marked_points()[0];
        assert!(mp.point.dist(mp.vertex) <= obj.radii()[mp.level] * 2.0);
        let (_, g, _) = obj.eval_with_shell(mp.point).unwrap();
        let angle = g.unit().cross(mp.dir).abs().asin();
        assert!(angle <= 1e-9, "angular error {angle}");
        assert!(g.dot(mp.dir) > 0.0);
    }

    #[test]
    fn lipschitz_zero_for_constant() {
        let l = lipschitz_estimate(&crate::fw::ZeroObjective, &square(1.0), 200, 1);
        assert_eq!(l, 0.0);
    }

    #[test]
    fn lipschitz_stable_across_seeds() {
        let spec = homothetic_spec(6);
        let obj = build_objective(&spec, &BuildParams { r_scale: 0.0, ..Default::default() }).unwrap();
        let a = lipschitz_estimate(&obj, &square(1.0), 4000, 1);
        let b = lipschitz_estimate(&obj, &square(1.0), 4000, 2);
        assert!(a > 0.0 && b > 0.0);
        assert!((a - b).abs() <= 0.05 * a.max(b), "a = {a}, b = {b}");
    }
}
