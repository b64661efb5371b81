//! Physical constants and oblate-spheroid Earth geometry.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RevisitError};
use crate::pass_schedule::raan_drift_rate;

/// Seconds in one mean tropical year.
pub const TROPICAL_YEAR_S: f64 = 365.242_189_7 * 86_400.0;

/// Mean nodal regression rate of a sun-synchronous orbit (rad/s).
pub const SUN_SYNCHRONOUS_RATE: f64 = 2.0 * PI / TROPICAL_YEAR_S;

/// Earth shape, rotation and gravity constants. Lengths in km, time in s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EarthConstants {
    pub equatorial_radius: f64,
    pub polar_radius: f64,
    pub rotation_rate: f64,
    pub mu: f64,
    pub j2: f64,
}

impl EarthConstants {
    /// WGS-84 radii and rotation rate with EGM96 J2.
    pub const WGS84: EarthConstants = EarthConstants {
        equatorial_radius: 6378.137,
        polar_radius: 6356.752_314_2,
        rotation_rate: 7.292_115_855_3e-5,
        mu: 398_600.441_8,
        j2: 1.082_626_68e-3,
    };

    pub fn validate(&self) -> Result<()> {
        let ok = self.polar_radius > 0.0
            && self.equatorial_radius > self.polar_radius
            && self.rotation_rate > 0.0
            && self.mu > 0.0
            && self.j2 > 0.0
            && self.j2 < 0.01;
        if ok {
            Ok(())
        } else {
            Err(RevisitError::invalid(
                "earth",
                format!("constants out of range: {self:?}"),
            ))
        }
    }

    pub fn j2_squared(&self) -> f64 {
        self.j2 * self.j2
    }

    /// Same body with the J2 term switched off.
    pub fn without_j2(&self) -> EarthConstants {
        EarthConstants { j2: 0.0, ..*self }
    }

    /// Radius of the spheroid surface at latitude `lat` (rad), in km.
    pub fn geodetic_radius(&self, lat: f64) -> f64 {
        let (s, c) = lat.sin_cos();
        let a = self.equatorial_radius;
        let b = self.polar_radius;
        let num = (a * a * c).powi(2) + (b * b * s).powi(2);
        let den = (a * c).powi(2) + (b * s).powi(2);
        (num / den).sqrt()
    }

    /// Inclination (rad) that makes the J2 nodal regression equal the mean
    /// solar rate for an orbit of semi-major axis `a` (km) and eccentricity `e`.
    pub fn sso_inclination(&self, a: f64, e: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&e) {
            return Err(RevisitError::invalid(
                "eccentricity",
                format!("{e} not in [0, 1)"),
            ));
        }
        if a * (1.0 - e) <= self.polar_radius {
            return Err(RevisitError::invalid(
                "semi_major_axis",
                format!(
                    "perigee radius {:.1} km is below the surface",
                    a * (1.0 - e)
                ),
            ));
        }
        let target = SUN_SYNCHRONOUS_RATE;
        let residual = |i: f64| raan_drift_rate(self, a, e, i) - target;

        // residual(pi/2) = -target < 0; it rises monotonically towards i = pi.
        let mut lo = PI / 2.0;
        let mut hi = PI;
        if residual(hi) < 0.0 {
            return Err(RevisitError::NoSunSynchronousSolution {
                semi_major_axis_km: a,
                eccentricity: e,
            });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if residual(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

impl Default for EarthConstants {
    fn default() -> Self {
        Self::WGS84
    }
}
