//! SVG rendering of instances and trajectories, plus the gap-versus-bound
//! table. Coordinates are written with fixed precision so tests can recover
//! them from the markup.

use crate::analysis::rate_bound;
use crate::fw::{StepStrategy, TrajectoryPoint};
use crate::io::InstanceDoc;
use std::fmt::Write as _;

const W: f64 = 900.0;
const H: f64 = 700.0;
const MARGIN: f64 = 40.0;

struct Frame {
    sx: f64,
    sy: f64,
    x0: f64,
    y1: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = [f64; 2]>) -> Frame {
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for [x, y] in xs {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        let sx = (W - 2.0 * MARGIN) / (xmax - xmin).max(1e-9);
        let sy = (H - 2.0 * MARGIN) / (ymax - ymin).max(1e-9);
        let s = sx.min(sy);
        Frame { sx: s, sy: s, x0: xmin, y1: ymax }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.x0) * self.sx,
            MARGIN + (self.y1 - p[1]) * self.sy,
        )
    }
}

fn path_points(frame: &Frame, pts: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = frame.map(p);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.6},{y:.6}");
    }
    s
}

/// Figure with the constraint set (black), the polytope sketches (orange),
/// the solution set (crimson) and the trajectory arrows (blue).
pub fn render_svg(doc: &InstanceDoc, trajectory: &[TrajectoryPoint]) -> String {
    let all = doc
        .constraint
        .iter()
        .copied()
        .chain(doc.polytopes.first().into_iter().flatten().copied())
        .chain(trajectory.iter().map(|p| [p.x.x, p.x.y]));
    let frame = Frame::fit(all);
    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    svg.push_str(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="steelblue"/></marker></defs>"#,
    );
    for poly in &doc.polytopes {
        let _ = write!(
            svg,
            r#"<polygon class="sketch" points="{}" fill="none" stroke="orange" stroke-width="1"/>"#,
            path_points(&frame, poly)
        );
    }
    let _ = write!(
        svg,
        r#"<polygon class="constraint" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        path_points(&frame, &doc.constraint)
    );
    if doc.solution_set.len() == 2 {
        let (x1, y1) = frame.map(doc.solution_set[0]);
        let (x2, y2) = frame.map(doc.solution_set[1]);
        let _ = write!(
            svg,
            r#"<line class="solution" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="crimson" stroke-width="3"/>"#
        );
    } else if doc.solution_set.len() > 2 {
        let _ = write!(
            svg,
            r#"<polygon class="solution" points="{}" fill="crimson" stroke="crimson"/>"#,
            path_points(&frame, &doc.solution_set)
        );
    }
    for w in trajectory.windows(2) {
        let (x1, y1) = frame.map([w[0].x.x, w[0].x.y]);
        let (x2, y2) = frame.map([w[1].x.x, w[1].x.y]);
        let _ = write!(
            svg,
            r#"<line class="step" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="steelblue" stroke-width="1.2" marker-end="url(#arrow)"/>"#
        );
    }
    svg.push_str("</svg>");
    svg
}

/// CSV of the Frank-Wolfe gap, the primal gap, and the worst-case bound per
/// iteration (log-log ready).
pub fn gap_bound_csv(
    points: &[TrajectoryPoint],
    strategy: &StepStrategy,
    l: f64,
    diam: f64,
    f_min: f64,
) -> String {
    let mut out = String::from("t,gap,primal,bound\n");
    for p in points.iter().skip(1) {
        let bound = rate_bound(strategy, l, diam, p.t).unwrap_or(f64::NAN);
        let _ = writeln!(out, "{},{},{},{}", p.t, p.gap, p.f - f_min, bound);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::gen_ce1;
    use crate::geom2d::Vec2;

    #[test]
    fn svg_contains_layers_and_coordinates() {
        let inst = gen_ce1(3).unwrap();
        let doc = InstanceDoc::from_instance(&inst);
        let pts = vec![
            TrajectoryPoint {
                t: 0,
                x: Vec2::new(0.25, 0.75),
                v: Vec2::new(-1.0, 0.0),
                gamma: 0.4,
                f: 1.0,
                gap: 1.0,
            },
            TrajectoryPoint {
                t: 1,
                x: Vec2::new(-0.25, 0.45),
                v: Vec2::new(1.0, 0.0),
                gamma: 0.4,
                f: 0.6,
                gap: 0.8,
            },
        ];
        let svg = render_svg(&doc, &pts);
        assert!(svg.contains("class=\"constraint\""));
        assert!(svg.contains("class=\"sketch\""));
        assert!(svg.contains("class=\"solution\""));
        assert!(svg.contains("class=\"step\""));
        // Identical input renders identical bytes.
        assert_eq!(svg, render_svg(&doc, &pts));
    }

    #[test]
    fn csv_has_bound_column() {
        let pts = vec![
            TrajectoryPoint {
                t: 0,
                x: Vec2::zero(),
                v: Vec2::zero(),
                gamma: 0.0,
                f: 1.0,
                gap: 1.0,
            },
            TrajectoryPoint {
                t: 1,
                x: Vec2::zero(),
                v: Vec2::zero(),
                gamma: 0.0,
                f: 0.5,
                gap: 0.6,
            },
        ];
        let csv = gap_bound_csv(&pts, &StepStrategy::Open1, 1.0, 2.0, 0.0);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,gap,primal,bound");
        assert!(lines[1].starts_with("1,0.6,0.5,2"));
    }
}
