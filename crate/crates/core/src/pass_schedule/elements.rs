use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::earth::EarthConstants;
use crate::error::{Result, RevisitError};

/// Classical elements of one plane's reference satellite. Angles in radians,
/// lengths in km.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitElements {
    pub semi_major_axis: f64,
    pub eccentricity: f64,
    pub inclination: f64,
    pub raan: f64,
    pub arg_perigee: f64,
    /// True anomaly at the start of the analysis.
    pub true_anomaly: f64,
}

impl OrbitElements {
    /// Circular orbit at `altitude` km above the equatorial radius.
    pub fn circular(earth: &EarthConstants, altitude: f64, inclination: f64) -> Self {
        OrbitElements {
            semi_major_axis: earth.equatorial_radius + altitude,
            eccentricity: 0.0,
            inclination,
            raan: 0.0,
            arg_perigee: 0.0,
            true_anomaly: 0.0,
        }
    }

    pub fn with_raan(mut self, raan: f64) -> Self {
        self.raan = raan;
        self
    }

    pub fn validate(&self, earth: &EarthConstants) -> Result<()> {
        let e = self.eccentricity;
        if !(0.0..1.0).contains(&e) || !e.is_finite() {
            return Err(RevisitError::invalid(
                "eccentricity",
                format!("{e} not in [0, 1)"),
            ));
        }
        if !(self.semi_major_axis * (1.0 - e) > earth.polar_radius) {
            return Err(RevisitError::invalid(
                "semi_major_axis",
                format!(
                    "perigee radius {:.3} km is below the polar radius",
                    self.semi_major_axis * (1.0 - e)
                ),
            ));
        }
        if !(0.0..=PI).contains(&self.inclination) {
            return Err(RevisitError::invalid(
                "inclination",
                format!("{} rad not in [0, pi]", self.inclination),
            ));
        }
        for (name, v) in [
            ("raan", self.raan),
            ("arg_perigee", self.arg_perigee),
            ("true_anomaly", self.true_anomaly),
        ] {
            if !v.is_finite() {
                return Err(RevisitError::invalid(name, "not finite"));
            }
        }
        Ok(())
    }

    pub fn semi_latus_rectum(&self) -> f64 {
        self.semi_major_axis * (1.0 - self.eccentricity * self.eccentricity)
    }

    /// Orbit radius at true anomaly `nu`.
    pub fn radius_at(&self, nu: f64) -> f64 {
        self.semi_latus_rectum() / (1.0 + self.eccentricity * nu.cos())
    }

    /// Argument of latitude at the start of the analysis.
    pub fn initial_arg_latitude(&self) -> f64 {
        self.arg_perigee + self.true_anomaly
    }

    /// Fraction of a nodal revolution elapsed between the ascending node and
    /// argument of latitude `u`, in [0, 1).
    pub fn node_fraction(&self, u: f64) -> f64 {
        let m_node = true_to_mean(-self.arg_perigee, self.eccentricity);
        let m = true_to_mean(u - self.arg_perigee, self.eccentricity);
        ((m - m_node) / TAU).rem_euclid(1.0)
    }
}

/// Wrap an angle into [-pi, pi).
pub fn wrap_pi(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    // rem_euclid can return TAU for tiny negative inputs
    if y >= PI {
        y - TAU
    } else {
        y
    }
}

pub fn true_to_eccentric(nu: f64, e: f64) -> f64 {
    let (s, c) = nu.sin_cos();
    let sq = (1.0 - e * e).sqrt();
    let ecc = (sq * s).atan2(e + c);
    // keep the same revolution as nu
    ecc + TAU * ((nu - ecc) / TAU).round()
}

pub fn true_to_mean(nu: f64, e: f64) -> f64 {
    if e == 0.0 {
        return nu;
    }
    let ecc = true_to_eccentric(nu, e);
    ecc - e * ecc.sin()
}

/// Newton iteration on Kepler's equation, tolerance 1e-12 rad, 50 iterations.
pub fn mean_to_eccentric(m: f64, e: f64) -> Result<f64> {
    if e == 0.0 {
        return Ok(m);
    }
    let revs = (m / TAU).round() * TAU;
    let m = m - revs;
    let mut ecc = if e < 0.8 { m } else { PI.copysign(m) };
    for _ in 0..50 {
        let f = ecc - e * ecc.sin() - m;
        let step = f / (1.0 - e * ecc.cos());
        ecc -= step;
        if step.abs() < 1e-12 {
            return Ok(ecc + revs);
        }
    }
    Err(RevisitError::KeplerNonConvergence {
        mean_anomaly: m + revs,
        eccentricity: e,
    })
}

pub fn eccentric_to_true(ecc: f64, e: f64) -> f64 {
    let (s, c) = ecc.sin_cos();
    let nu = ((1.0 - e * e).sqrt() * s).atan2(c - e);
    nu + TAU * ((ecc - nu) / TAU).round()
}
