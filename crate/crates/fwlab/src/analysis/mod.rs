//! Trajectory analysis: worst-case rate checks, non-Cauchy certificates,
//! band crossings, strip displacement counts, and the bundled verdict.

use crate::counterexamples::{ce3, reference_trajectory, CeId, ExactData, Instance};
use crate::error::{Error, Result};
use crate::fw::{StepStrategy, Trajectory, TrajectoryPoint};
use crate::geom2d::{Segment, Vec2};
use serde::{Deserialize, Serialize};

/// Worst-case primal-gap bound at iteration t for each strategy.
pub fn rate_bound(strategy: &StepStrategy, l: f64, diam: f64, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::RateAtZero);
    }
    let t_f = t as f64;
    let d2 = diam * diam;
    Ok(match strategy {
        StepStrategy::Open1 => l * d2 * (1.0 + t_f.ln()) / (2.0 * t_f),
        StepStrategy::Open2 => 2.0 * l * d2 / (t_f + 2.0),
        StepStrategy::Closed { .. } | StepStrategy::LineSearch { .. } => {
            4.0 * l * d2 / (t_f + 2.0)
        }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RateReport {
    pub pass: bool,
    pub l: f64,
    pub diameter: f64,
    pub first_violation: Option<RateViolation>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RateViolation {
    pub t: usize,
    pub gap: f64,
    pub bound: f64,
}

/// Verify f(x_t) - f_min <= bound(t) * (1 + 1e-9) for every t >= 1.
pub fn check_rates(traj: &Trajectory, l: f64, diam: f64, f_min: f64) -> RateReport {
    let strategy = strategy_of(traj);
    let mut first_violation = None;
    for p in traj.points.iter().skip(1) {
        let bound = match rate_bound(&strategy, l, diam, p.t) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let gap = p.f - f_min;
        if gap > bound * (1.0 + 1e-9) {
            first_violation = Some(RateViolation { t: p.t, gap, bound });
            break;
        }
    }
    RateReport {
        pass: first_violation.is_none(),
        l,
        diameter: diam,
        first_violation,
    }
}

fn strategy_of(traj: &Trajectory) -> StepStrategy {
    match traj.strategy.as_str() {
        "open1" => StepStrategy::Open1,
        "open2" => StepStrategy::Open2,
        "closed" => StepStrategy::Closed { l: traj.l_constant.unwrap_or(1.0) },
        _ => StepStrategy::LineSearch { tol: 1e-12 },
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NonCauchyEvent {
    pub t: usize,
    pub t_prime: usize,
    pub displacement: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonCauchyReport {
    pub epsilon: f64,
    pub window: usize,
    pub events: Vec<NonCauchyEvent>,
    /// True when every window start up to the horizon minus the window
    /// produced an event.
    pub all_window_starts: bool,
}

/// For each window start t, record the in-window displacement maximum when
/// it reaches epsilon.
pub fn non_cauchy_certificate(
    positions: &[Vec2],
    epsilon: f64,
    window: usize,
) -> Result<NonCauchyReport> {
    if window == 0 || window >= positions.len() {
        return Err(Error::WindowTooLarge);
    }
    let mut events = Vec::new();
    let mut all = true;
    for t in 0..positions.len() - window {
        let mut best = (t, 0.0f64);
        for tp in t + 1..=t + window {
            let d = positions[tp].dist(positions[t]);
            if d > best.1 {
                best = (tp, d);
            }
        }
        if best.1 >= epsilon {
            events.push(NonCauchyEvent { t, t_prime: best.0, displacement: best.1 });
        } else {
            all = false;
        }
    }
    Ok(NonCauchyReport {
        epsilon,
        window,
        events,
        all_window_starts: all,
    })
}

/// Counts of iterates at or beyond the band edges.
pub fn band_crossings(positions: &[Vec2], half_width: f64) -> (usize, usize) {
    let left = positions.iter().filter(|p| p.x <= -half_width).count();
    let right = positions.iter().filter(|p| p.x >= half_width).count();
    (left, right)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DisplacementEvent {
    pub strip: usize,
    pub t_enter: usize,
    pub t_exit: usize,
    pub drop: f64,
    pub fired: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DisplacementReport {
    pub threshold: f64,
    pub count: usize,
    pub visits: Vec<DisplacementEvent>,
}

/// For each strip level with an iterate in its upper band, measure the
/// horizontal displacement accumulated by the time the ordinate falls below
/// the band floor, and count the displacements at or above the threshold.
pub fn displacement_events(
    positions: &[Vec2],
    threshold: f64,
    strips: &[ce3::StripRow],
) -> DisplacementReport {
    let mut visits = Vec::new();
    let mut count = 0;
    for s in strips {
        let enter = positions
            .iter()
            .position(|p| p.y <= s.e.y && p.y >= s.i.y && p.x.abs() <= 1.0 + 1e-12);
        let Some(t_enter) = enter else { continue };
        let exit = positions[t_enter..].iter().position(|p| p.y < s.h.y);
        let Some(off) = exit else { continue };
        let t_exit = t_enter + off;
        let drop = (positions[t_enter].x - positions[t_exit].x).abs();
        let fired = drop >= threshold;
        if fired {
            count += 1;
        }
        visits.push(DisplacementEvent { strip: s.k, t_enter, t_exit, drop, fired });
    }
    DisplacementReport { threshold, count, visits }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Oscillating,
    Converged,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaTrend {
    pub first_decile_mean: f64,
    pub last_decile_mean: f64,
    pub max: f64,
    pub all_below_one: bool,
    /// Last-decile mean at most half the first-decile mean.
    pub decaying: bool,
}

pub fn gamma_trend(traj: &Trajectory) -> GammaTrend {
    let gammas: Vec<f64> = traj
        .points
        .iter()
        .take(traj.points.len().saturating_sub(1))
        .map(|p| p.gamma)
        .collect();
    let dec = (gammas.len() / 10).max(1);
    let first: f64 = gammas.iter().take(dec).sum::<f64>() / dec as f64;
    let last: f64 = gammas.iter().rev().take(dec).sum::<f64>() / dec as f64;
    let max = gammas.iter().cloned().fold(0.0, f64::max);
    GammaTrend {
        first_decile_mean: first,
        last_decile_mean: last,
        max,
        all_below_one: gammas.iter().all(|&g| g < 1.0),
        decaying: last <= 0.5 * first,
    }
}

/// Analysis verdict for one run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub instance: String,
    pub rate: RateReport,
    pub non_cauchy: NonCauchyReport,
    pub band_crossings: Option<(usize, usize)>,
    pub displacement: Option<DisplacementReport>,
    pub gamma: GammaTrend,
    pub min_step: f64,
    pub oracle_on_segment: Option<bool>,
    pub strip_oracle_sign_ok: Option<bool>,
    pub heights_positive: Option<bool>,
    /// Exact-reference checks (band crossings and height positivity),
    /// evaluated at the same horizon where a closed form exists.
    pub reference_band_crossings: Option<(usize, usize)>,
    pub reference_heights_positive: Option<bool>,
    pub verdict: Verdict,
}

fn min_step(points: &[TrajectoryPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| w[0].x.dist(w[1].x))
        .fold(f64::INFINITY, f64::min)
}

/// Run every check relevant to the instance and aggregate the verdict.
/// The verdict is "oscillating" only when the non-Cauchy certificate covers
/// every window start and the instance's structural events all hold.
pub fn certify(inst: &Instance, traj: &Trajectory, l_rate: f64) -> Result<Certificate> {
    let positions: Vec<Vec2> = traj.positions();
    let template = &inst.expected;
    let horizon = positions.len() - 1;
    let window = if template.non_cauchy_window == 0 {
        (horizon / 5).max(2).min(horizon)
    } else {
        template.non_cauchy_window
    };
    let rate = check_rates(traj, l_rate, traj.diameter, 0.0);
    let non_cauchy = non_cauchy_certificate(&positions, template.non_cauchy_epsilon, window)?;
    let bands = template
        .band_half_width
        .map(|w| band_crossings(&positions, w));
    let displacement = match (&inst.exact, template.displacement_threshold) {
        (ExactData::Ce3 { k_param }, Some(threshold)) => {
            let strips: Vec<ce3::StripRow> =
                (0..=horizon.min(64)).map(|k| ce3::strip_row(k, *k_param)).collect();
            Some(displacement_events(&positions, threshold, &strips))
        }
        _ => None,
    };
    let gamma = gamma_trend(traj);
    let oracle_on_segment = template.oracle_segment.map(|seg: Segment| {
        traj.points.iter().all(|p| seg.contains(p.v, 1e-9))
    });
    let strip_oracle_sign_ok = match &inst.exact {
        ExactData::Ce3 { k_param } => Some(strip_oracle_signs(traj, *k_param)),
        _ => None,
    };
    let heights_positive = match inst.id {
        CeId::Ce4 => Some(positions.iter().all(|p| p.y > 0.0)),
        _ => None,
    };
    let (reference_band_crossings, reference_heights_positive) = match inst.id {
        CeId::Ce4 => {
            let reference = reference_trajectory(inst, horizon)?;
            let ref_pos: Vec<Vec2> = reference.iter().map(|p| p.to_f64()).collect();
            let bands = template
                .band_half_width
                .map(|w| band_crossings(&ref_pos, w));
            (bands, Some(ref_pos.iter().all(|p| p.y > 0.0)))
        }
        _ => (None, None),
    };

    let structural_ok = match inst.id {
        CeId::Ce1 | CeId::Ce2 => rate.pass,
        CeId::Ce3 => {
            oracle_on_segment.unwrap_or(false)
                && gamma.all_below_one
                && displacement.as_ref().is_some_and(|d| d.count >= 1)
                && strip_oracle_sign_ok.unwrap_or(false)
        }
        CeId::Ce4 => {
            bands.is_some_and(|(l, r)| l >= 1 && r >= 1)
                && reference_band_crossings.is_some_and(|(l, r)| l >= 1 && r >= 1)
                && reference_heights_positive.unwrap_or(false)
        }
        CeId::MisA | CeId::MisB => true,
    };
    // Open-loop band crossings are log-periodic, so no sublinear window is
    // covered at every start; their oscillation witness is a nonempty event
    // list plus the band counts. The line-search and closed-loop instances
    // recur fast enough for full window coverage.
    let oscillation_witness = match inst.id {
        CeId::Ce4 | CeId::MisA => !non_cauchy.events.is_empty(),
        _ => non_cauchy.all_window_starts,
    };
    let verdict = if oscillation_witness && structural_ok {
        Verdict::Oscillating
    } else if min_step(&traj.points) < 1e-12 && !non_cauchy.all_window_starts {
        Verdict::Converged
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        instance: inst.id.name().to_string(),
        rate,
        non_cauchy,
        band_crossings: bands,
        displacement,
        gamma,
        min_step: min_step(&traj.points),
        oracle_on_segment,
        strip_oracle_sign_ok,
        heights_positive,
        reference_band_crossings,
        reference_heights_positive,
        verdict,
    })
}

/// Whenever an iterate sits in the full strip band of level k, the oracle
/// answer must be the bottom corner on the side (-1)^{k+1}.
fn strip_oracle_signs(traj: &Trajectory, k_param: u32) -> bool {
    for k in 0..64 {
        let s = ce3::strip_row(k, k_param);
        let expect_x = if k % 2 == 0 { -1.0 } else { 1.0 };
        for p in &traj.points {
            if p.x.y <= s.e.y && p.x.y >= s.h.y && p.x.x.abs() <= 1.0 + 1e-12
                && ((p.v.x - expect_x).abs() > 1e-9 || p.v.y.abs() > 1e-9) {
                    return false;
                }
        }
    }
    true
}
