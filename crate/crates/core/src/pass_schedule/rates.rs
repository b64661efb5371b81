use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::OrbitElements;
use crate::earth::EarthConstants;

/// Which first-order J2 nodal-period expansion to use.
///
/// `Standard` carries the `(Ra/p)^2` factor of the usual secular expansion;
/// `LinearRatio` uses a single `Ra/p` factor. Only `Standard` reproduces the
/// reference revisit times, so it is the default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodalPeriodForm {
    #[default]
    Standard,
    LinearRatio,
}

/// Two-body period `2 pi sqrt(a^3 / mu)` in seconds.
pub fn keplerian_period(earth: &EarthConstants, a: f64) -> f64 {
    TAU * (a.powi(3) / earth.mu).sqrt()
}

/// Time between successive ascending-node passages under secular J2.
pub fn nodal_period(earth: &EarthConstants, a: f64, e: f64, i: f64, form: NodalPeriodForm) -> f64 {
    let p = a * (1.0 - e * e);
    let ratio = earth.equatorial_radius / p;
    let factor = match form {
        NodalPeriodForm::Standard => ratio * ratio,
        NodalPeriodForm::LinearRatio => ratio,
    };
    let s2 = i.sin().powi(2);
    let bracket = (1.0 - e * e).sqrt() * (2.0 - 3.0 * s2) + (4.0 - 5.0 * s2);
    keplerian_period(earth, a) / (1.0 + 0.75 * earth.j2 * factor * bracket)
}

/// Secular RAAN drift (rad/s) including the J2^2 term.
pub fn raan_drift_rate(earth: &EarthConstants, a: f64, e: f64, i: f64) -> f64 {
    let n = (earth.mu / a.powi(3)).sqrt();
    let p = a * (1.0 - e * e);
    let r2 = (earth.equatorial_radius / p).powi(2);
    let (s, c) = i.sin_cos();
    let first = -1.5 * n * earth.j2 * r2 * c;
    let second = 3.0 / 32.0
        * n
        * earth.j2_squared()
        * r2
        * r2
        * c
        * (12.0 - 4.0 * e * e - (80.0 + 5.0 * e * e) * s * s);
    first + second
}

/// Westward (negative) longitude shift of the ground track per nodal period.
pub fn ground_track_shift(earth: &EarthConstants, nodal_period: f64, raan_rate: f64) -> f64 {
    nodal_period * (-earth.rotation_rate + raan_rate)
}

/// Secular argument-of-perigee and mean-anomaly rates (rad/s) from first-order J2.
pub fn perigee_and_mean_rates(earth: &EarthConstants, a: f64, e: f64, i: f64) -> (f64, f64) {
    let n = (earth.mu / a.powi(3)).sqrt();
    let p = a * (1.0 - e * e);
    let k = 0.75 * n * earth.j2 * (earth.equatorial_radius / p).powi(2);
    let s2 = i.sin().powi(2);
    let perigee = k * (4.0 - 5.0 * s2);
    let mean = n + k * (1.0 - e * e).sqrt() * (2.0 - 3.0 * s2);
    (perigee, mean)
}

/// Nodal period, RAAN drift and ground-track shift of one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackRates {
    pub nodal_period: f64,
    pub raan_rate: f64,
    pub ground_track_shift: f64,
}

impl TrackRates {
    pub fn new(earth: &EarthConstants, el: &OrbitElements, form: NodalPeriodForm) -> Self {
        let (a, e, i) = (el.semi_major_axis, el.eccentricity, el.inclination);
        let nodal_period = nodal_period(earth, a, e, i, form);
        let raan_rate = raan_drift_rate(earth, a, e, i);
        TrackRates {
            nodal_period,
            raan_rate,
            ground_track_shift: ground_track_shift(earth, nodal_period, raan_rate),
        }
    }
}
