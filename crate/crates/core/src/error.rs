use thiserror::Error;

/// Errors raised while building a revisit analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RevisitError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "latitude {latitude_deg:.3} deg is never crossed by an orbit inclined at {inclination_deg:.3} deg"
    )]
    LatitudeUnreachable {
        latitude_deg: f64,
        inclination_deg: f64,
    },

    #[error(
        "footprint of half ground range {ground_range_deg:.3} deg reaches over the pole at latitude {latitude_deg:.3} deg"
    )]
    PoleOverlap {
        ground_range_deg: f64,
        latitude_deg: f64,
    },

    #[error("no sun-synchronous inclination exists for a = {semi_major_axis_km:.1} km, e = {eccentricity}")]
    NoSunSynchronousSolution {
        semi_major_axis_km: f64,
        eccentricity: f64,
    },

    #[error("Kepler's equation did not converge (M = {mean_anomaly}, e = {eccentricity})")]
    KeplerNonConvergence {
        mean_anomaly: f64,
        eccentricity: f64,
    },
}

impl RevisitError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        RevisitError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = RevisitError> = std::result::Result<T, E>;
