//! Sensor field of regard resolved into ground-range and longitude half-angles
//! at the target latitude.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::earth::EarthConstants;
use crate::error::{Result, RevisitError};
use crate::pass_schedule::OrbitElements;

/// Field of regard, either as a boresight half-cone or an elevation mask.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensorSpec {
    /// Half-cone angle about nadir (rad).
    Boresight { half_cone: f64 },
    /// Minimum elevation above the local horizon (rad).
    Elevation { min_elevation: f64 },
}

impl SensorSpec {
    pub fn boresight_deg(deg: f64) -> Self {
        SensorSpec::Boresight {
            half_cone: deg.to_radians(),
        }
    }

    pub fn elevation_deg(deg: f64) -> Self {
        SensorSpec::Elevation {
            min_elevation: deg.to_radians(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SensorSpec::Boresight { half_cone } if !(0.0..FRAC_PI_2).contains(&half_cone) => Err(
                RevisitError::invalid("boresight", format!("{half_cone} rad not in [0, pi/2)")),
            ),
            SensorSpec::Elevation { min_elevation }
                if !(0.0..=FRAC_PI_2).contains(&min_elevation) =>
            {
                Err(RevisitError::invalid(
                    "elevation",
                    format!("{min_elevation} rad not in [0, pi/2]"),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// Orbit radius and true anomalies where the track crosses a latitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatitudeRadius {
    pub radius_ascending: f64,
    pub radius_descending: f64,
    pub nu_ascending: f64,
    pub nu_descending: f64,
}

/// Satellite radius over the target latitude on the ascending and descending
/// branches.
pub fn radius_at_latitude(el: &OrbitElements, lat: f64) -> Result<LatitudeRadius> {
    let ratio = lat.sin() / el.inclination.sin();
    if !(ratio.abs() <= 1.0) {
        return Err(RevisitError::LatitudeUnreachable {
            latitude_deg: lat.to_degrees(),
            inclination_deg: el.inclination.to_degrees(),
        });
    }
    let u = ratio.asin();
    let nu_ascending = u - el.arg_perigee;
    let nu_descending = PI - u - el.arg_perigee;
    Ok(LatitudeRadius {
        radius_ascending: el.radius_at(nu_ascending),
        radius_descending: el.radius_at(nu_descending),
        nu_ascending,
        nu_descending,
    })
}

/// Earth-central angle from nadir to the point seen at elevation `eps`.
pub fn ground_range_from_elevation(r_lat: f64, r_s: f64, eps: f64) -> f64 {
    ((r_lat / r_s * eps.cos()).clamp(-1.0, 1.0).acos() - eps).max(0.0)
}

/// Triangle Earth-centre / satellite / footprint edge for a boresight cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoresightGeometry {
    pub ground_range: f64,
    /// Angle at the footprint edge (obtuse branch).
    pub gamma: f64,
    pub slant_range: f64,
    /// Cone wider than the Earth's limb; ground range held at the horizon.
    pub clamped: bool,
}

pub fn ground_range_from_boresight(r_lat: f64, r_s: f64, psi: f64) -> BoresightGeometry {
    let sin_gamma = r_s * psi.sin() / r_lat;
    if sin_gamma >= 1.0 {
        let horizon = (r_lat / r_s).acos();
        return BoresightGeometry {
            ground_range: horizon,
            gamma: FRAC_PI_2,
            slant_range: (r_s * r_s - r_lat * r_lat).sqrt(),
            clamped: true,
        };
    }
    let gamma = PI - sin_gamma.asin();
    let slant_range = r_lat * gamma.cos() + r_s * psi.cos();
    let ground_range = (slant_range * psi.sin() / r_lat).clamp(-1.0, 1.0).asin();
    debug_assert!(slant_range >= 0.0);
    debug_assert!((ground_range - (PI - gamma - psi)).abs() < 1e-9);
    BoresightGeometry {
        ground_range,
        gamma,
        slant_range,
        clamped: false,
    }
}

/// Half-width in longitude of a footprint of half ground range `theta`
/// centred on latitude `lat`.
pub fn dihedral_half_angle(theta: f64, lat: f64) -> Result<f64> {
    let c2 = lat.cos().powi(2);
    let arg = (theta.cos() - lat.sin().powi(2)) / c2;
    if !(arg >= -1.0 - 1e-12) {
        return Err(RevisitError::PoleOverlap {
            ground_range_deg: theta.to_degrees(),
            latitude_deg: lat.to_degrees(),
        });
    }
    Ok(arg.clamp(-1.0, 1.0).acos())
}

/// Footprint half-angles at the target latitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FootprintAtLatitude {
    /// Half ground-range angle (rad), the latitude semi-axis of the footprint.
    pub ground_range: f64,
    /// Half dihedral angle (rad), the longitude semi-axis.
    pub dihedral_half: f64,
    pub slant_range: f64,
    pub gamma: f64,
    pub clamped: bool,
}

/// Resolve `sensor` for a satellite at radius `r_s` over latitude `lat`.
pub fn resolve_footprint(
    earth: &EarthConstants,
    sensor: &SensorSpec,
    r_s: f64,
    lat: f64,
) -> Result<FootprintAtLatitude> {
    sensor.validate()?;
    let r_lat = earth.geodetic_radius(lat);
    if !(r_s > r_lat) {
        return Err(RevisitError::invalid(
            "orbit_radius",
            format!("{r_s:.3} km is not above the surface radius {r_lat:.3} km"),
        ));
    }
    let (ground_range, gamma, slant_range, clamped) = match *sensor {
        SensorSpec::Elevation { min_elevation } => {
            let theta = ground_range_from_elevation(r_lat, r_s, min_elevation);
            let slant = r_s * theta.sin() / min_elevation.cos().max(f64::MIN_POSITIVE);
            (theta, min_elevation + FRAC_PI_2, slant, false)
        }
        SensorSpec::Boresight { half_cone } => {
            let g = ground_range_from_boresight(r_lat, r_s, half_cone);
            (g.ground_range, g.gamma, g.slant_range, g.clamped)
        }
    };
    let dihedral_half = dihedral_half_angle(ground_range, lat)?;
    Ok(FootprintAtLatitude {
        ground_range,
        dihedral_half,
        slant_range,
        gamma,
        clamped,
    })
}
