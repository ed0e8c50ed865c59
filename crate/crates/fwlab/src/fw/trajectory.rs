//! Trajectory recording and serialization (JSON lines and CSV).

use crate::error::Result;
use crate::geom2d::Vec2;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub t: usize,
    pub x: Vec2,
    pub v: Vec2,
    pub gamma: f64,
    pub f: f64,
    /// Frank-Wolfe gap <x - v, grad f(x)>.
    pub gap: f64,
}

/// Record of a full run. The final entry reports the horizon state x_T with
/// its oracle answer and gap; no step is taken from it, so its gamma is 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub strategy: String,
    pub x0: Vec2,
    pub l_constant: Option<f64>,
    pub diameter: f64,
    pub points: Vec<TrajectoryPoint>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    t: usize,
    x: [f64; 2],
    v: [f64; 2],
    gamma: f64,
    f: f64,
    gap: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn positions(&self) -> Vec<Vec2> {
        self.points.iter().map(|p| p.x).collect()
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for p in &self.points {
            let row = Row {
                t: p.t,
                x: [p.x.x, p.x.y],
                v: [p.v.x, p.v.y],
                gamma: p.gamma,
                f: p.f,
                gap: p.gap,
            };
            serde_json::to_writer(&mut w, &row)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<TrajectoryPoint>> {
        let mut out = Vec::new();
        for line in r.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Row = serde_json::from_str(&line)?;
            out.push(TrajectoryPoint {
                t: row.t,
                x: Vec2::new(row.x[0], row.x[1]),
                v: Vec2::new(row.v[0], row.v[1]),
                gamma: row.gamma,
                f: row.f,
                gap: row.gap,
            });
        }
        Ok(out)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,x0,x1,v0,v1,gamma,f,gap")?;
        for p in &self.points {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                p.t, p.x.x, p.x.y, p.v.x, p.v.y, p.gamma, p.f, p.gap
            )?;
        }
        Ok(())
    }
}
