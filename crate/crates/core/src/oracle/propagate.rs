use std::f64::consts::TAU;

use crate::earth::EarthConstants;
use crate::error::Result;
use crate::pass_schedule::{
    eccentric_to_true, mean_to_eccentric, perigee_and_mean_rates, raan_drift_rate, true_to_mean,
    OrbitElements,
};

/// Satellite state from the secular propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatState {
    /// Inertial position (km).
    pub inertial: [f64; 3],
    /// Earth-fixed position (km).
    pub fixed: [f64; 3],
    /// Geocentric latitude of the sub-satellite point (rad).
    pub latitude: f64,
    /// Earth-fixed longitude of the sub-satellite point (rad, [-pi, pi)).
    pub longitude: f64,
}

/// Secular-J2 propagator: RAAN, argument of perigee and mean anomaly advance
/// linearly; shape and inclination stay fixed.
#[derive(Debug, Clone, Copy)]
pub struct J2Propagator {
    el: OrbitElements,
    mean_anomaly0: f64,
    raan_rate: f64,
    perigee_rate: f64,
    mean_rate: f64,
    rotation_rate: f64,
}

impl J2Propagator {
    pub fn new(earth: &EarthConstants, el: &OrbitElements) -> Result<Self> {
        el.validate(earth)?;
        let (a, e, i) = (el.semi_major_axis, el.eccentricity, el.inclination);
        let (perigee_rate, mean_rate) = perigee_and_mean_rates(earth, a, e, i);
        Ok(J2Propagator {
            el: *el,
            mean_anomaly0: true_to_mean(el.true_anomaly, e),
            raan_rate: raan_drift_rate(earth, a, e, i),
            perigee_rate,
            mean_rate,
            rotation_rate: earth.rotation_rate,
        })
    }

    pub fn elements(&self) -> &OrbitElements {
        &self.el
    }

    /// Argument-of-latitude rate (rad/s).
    pub fn arg_latitude_rate(&self) -> f64 {
        self.perigee_rate + self.mean_rate
    }

    /// Inertial position only; cheaper than [`J2Propagator::state`].
    pub fn inertial(&self, t: f64) -> Result<[f64; 3]> {
        let e = self.el.eccentricity;
        let m = (self.mean_anomaly0 + self.mean_rate * t).rem_euclid(TAU);
        let nu = if e == 0.0 {
            m
        } else {
            eccentric_to_true(mean_to_eccentric(m, e)?, e)
        };
        let u = self.el.arg_perigee + self.perigee_rate * t + nu;
        let raan = self.el.raan + self.raan_rate * t;
        let r = self.el.radius_at(nu);
        let (su, cu) = u.sin_cos();
        let (so, co) = raan.sin_cos();
        let (si, ci) = self.el.inclination.sin_cos();
        Ok([
            r * (cu * co - su * so * ci),
            r * (cu * so + su * co * ci),
            r * su * si,
        ])
    }

    /// Earth-fixed position, Greenwich aligned with the inertial x axis at t = 0.
    pub fn fixed(&self, t: f64) -> Result<[f64; 3]> {
        let p = self.inertial(t)?;
        Ok(rotate_z(p, -self.rotation_rate * t))
    }

    pub fn state(&self, t: f64) -> Result<SatState> {
        let inertial = self.inertial(t)?;
        let fixed = rotate_z(inertial, -self.rotation_rate * t);
        let rho = (fixed[0] * fixed[0] + fixed[1] * fixed[1]).sqrt();
        Ok(SatState {
            inertial,
            fixed,
            latitude: fixed[2].atan2(rho),
            longitude: crate::pass_schedule::wrap_pi(fixed[1].atan2(fixed[0])),
        })
    }
}

fn rotate_z(p: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]]
}

/// State of `el` at time `t` under secular J2.
pub fn propagate_j2(earth: &EarthConstants, el: &OrbitElements, t: f64) -> Result<SatState> {
    J2Propagator::new(earth, el)?.state(t)
}
