//! Grid-point access windows and revisit statistics for a latitude ring.

mod access;
mod engine;
mod grid;
pub(crate) mod stats;

pub use access::{in_footprint, pass_accesses, FootprintShape, FootprintTrack, PassAccess};
pub use engine::{
    analyze, branch_tracks, evaluate_passes, AccessIntervals, Constellation, CoverageResult,
    CoverageSettings,
};
pub use grid::{build_grid, LongitudeGrid};
pub use stats::{revisit_stats, PointStats, RevisitReport};
