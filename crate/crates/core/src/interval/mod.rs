//! Piecewise-linear set-valued maps on a compact interval, in exact rational
//! arithmetic.
//!
//! Fibers are single intervals `[l(x), u(x)]`, so the image of an interval
//! is again an interval and iteration stays exact. Mixing on an interval
//! cannot be decided in finite time; [`classify_at_resolution`] reports
//! covering evidence at a grid resolution and an iteration horizon, upgraded
//! to a proof only when the image sequence provably cycles.

mod dynamics;
mod pwl;
mod rational;
mod union;

use thiserror::Error;

pub use dynamics::{
    classify_at_resolution, cover_trace, covers, fixed_point_set, image, iterate_image, periodic_density_check,
    periodic_point_set, sample_orbit, CellWitness, ClassificationRecord, CoverTrace, Covering, DensityReport,
    OrbitPolicy, PairCover, PairHit, MAX_RESOLUTION,
};
pub use pwl::{compose, compose_capped, power, PwlBoundary, PwlMultimap, DEFAULT_BREAKPOINT_CAP};
pub use rational::{int, parse_rational, rat, Rational, RationalInterval};
pub use union::IntervalUnion;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval [{lo}, {hi}] has lo > hi")]
    InvertedInterval { lo: String, hi: String },
    #[error("cannot parse {0:?} as a rational (expected \"p/q\" or \"p\")")]
    ParseRational(String),
    #[error("cannot parse {0:?} as an interval (expected \"lo,hi\")")]
    ParseInterval(String),
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("domain must be a nondegenerate interval")]
    DegenerateDomain,
    #[error("lower boundary {lower} exceeds upper boundary {upper} at x = {x}")]
    FiberOrder { x: String, lower: String, upper: String },
    #[error("fiber at x = {x} leaves the domain {domain}")]
    ValueOutOfRange { x: String, domain: String },
    #[error("{what} is not contained in the domain {domain}")]
    OutsideDomain { what: String, domain: String },
    #[error("cannot compose maps on {outer} and {inner}")]
    DomainMismatch { outer: String, inner: String },
    #[error("composition exceeded the cap of {cap} breakpoints")]
    BreakpointCap { cap: usize },
    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),
    #[error("source interval must be nondegenerate")]
    DegenerateSource,
    #[error("target {target} must lie strictly inside the domain {domain}")]
    TargetTouchesBoundary { target: String, domain: String },
    #[error("resolution {resolution} exceeds the maximum of {max}")]
    ResolutionTooLarge { resolution: u32, max: u32 },
}

impl IntervalError {
    /// Errors caused by exceeding a resource limit rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, IntervalError::BreakpointCap { .. })
    }
}
