//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate direction")]
    DegenerateDirection,

    #[error("not a vertex: ({0}, {1})")]
    NotAVertex(f64, f64),

    #[error("empty combination: both weights are zero")]
    EmptyCombination,

    #[error("origin not interior")]
    OriginNotInterior,

    #[error("rounding radius exceeds offset limit: r = {r}, limit = {limit}")]
    RoundingRadius { r: f64, limit: f64 },

    #[error("rounding infeasible at level {0}")]
    RoundingInfeasible(usize),

    #[error("levels not strictly nested in direction ({0}, {1})")]
    NotNested(f64, f64),

    #[error("outside domain")]
    OutsideDomain,

    #[error("sketch validation failed: {0}")]
    InvalidSketch(String),

    #[error("script violates oracle contract at iteration {t}")]
    ScriptViolation { t: usize },

    #[error("script exhausted at iteration {t}")]
    ScriptExhausted { t: usize },

    #[error("objective not convex along segment (f* = {f_star}, f0 = {f0}, f1 = {f1})")]
    NonConvexSegment { f_star: f64, f0: f64, f1: f64 },

    #[error("objective evaluation failed at iteration {t}: {source}")]
    ObjectiveAt {
        t: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("start point not feasible")]
    InfeasibleStart,

    #[error("construction violated at k = {0}: {1}")]
    Construction(usize, String),

    #[error("no closed-form reference; use certificates")]
    NoReference,

    #[error("empty cone intersection: {0}")]
    EmptyCone(String),

    #[error("bounds start at t = 1")]
    RateAtZero,

    #[error("window larger than trajectory")]
    WindowTooLarge,

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("strategy {strategy} is not the intended one for {instance} (use --force to override)")]
    StrategyMismatch { strategy: String, instance: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
