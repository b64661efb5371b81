//! Semi-analytical revisit-time analysis for satellite constellations over a
//! latitude ring.
//!
//! Passes over the target latitude are generated from secular J2 rates, each
//! pass's footprint is swept across a longitude grid, and per-point gaps are
//! reduced into maximum and average revisit times. The [`oracle`] module
//! propagates the orbits directly for cross-checking.

// `!(x <= y)` is used on purpose so NaN inputs fall into the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Golden values keep the integer part ungrouped.
#![allow(clippy::inconsistent_digit_grouping)]

pub mod coverage;
pub mod earth;
pub mod error;
pub mod oracle;
pub mod pass_schedule;
pub mod sensor;

mod par;

pub use coverage::{
    analyze, Constellation, CoverageResult, CoverageSettings, FootprintShape, RevisitReport,
};
pub use earth::EarthConstants;
pub use error::{Result, RevisitError};
pub use par::Parallelism;
pub use pass_schedule::{Direction, NodalPeriodForm, OrbitElements, Pass, PassSet, WalkerConfig};
pub use sensor::SensorSpec;
