use std::f64::consts::{PI, TAU};

use super::{wrap_pi, Direction, OrbitElements};
use crate::error::{Result, RevisitError};

/// Where and when (relative to the ascending node) the track crosses a latitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatitudeCrossing {
    pub direction: Direction,
    /// Argument of latitude at the crossing, in [0, 2 pi).
    pub arg_latitude: f64,
    /// Fraction of the nodal period elapsed since the ascending node, in [0, 1).
    pub node_fraction: f64,
    /// Earth-fixed longitude, counted from a node passage over longitude `raan`.
    pub longitude: f64,
}

/// Right ascension of the point at argument of latitude `u`, relative to the node.
pub(crate) fn longitude_from_node(u: f64, inclination: f64) -> f64 {
    (u.sin() * inclination.cos()).atan2(u.cos())
}

/// Argument of latitude of the ascending-branch crossing of `lat`, in [-pi/2, pi/2].
pub(crate) fn ascending_arg_latitude(el: &OrbitElements, lat: f64) -> Result<f64> {
    let ratio = lat.sin() / el.inclination.sin();
    if !(ratio.abs() <= 1.0) {
        return Err(RevisitError::LatitudeUnreachable {
            latitude_deg: lat.to_degrees(),
            inclination_deg: el.inclination.to_degrees(),
        });
    }
    Ok(ratio.asin())
}

/// Ascending and descending crossings of latitude `lat`.
pub fn latitude_crossings(
    el: &OrbitElements,
    lat: f64,
    ground_track_shift: f64,
) -> Result<[LatitudeCrossing; 2]> {
    let u_asc = ascending_arg_latitude(el, lat)?;
    let make = |direction, u: f64| {
        let u = u.rem_euclid(TAU);
        let (s, c) = u.sin_cos();
        let (so, co) = el.raan.sin_cos();
        let ci = el.inclination.cos();
        let inertial = (c * so + s * co * ci).atan2(c * co - s * so * ci);
        let node_fraction = el.node_fraction(u);
        LatitudeCrossing {
            direction,
            arg_latitude: u,
            node_fraction,
            longitude: wrap_pi(inertial + node_fraction * ground_track_shift),
        }
    };
    Ok([
        make(Direction::Ascending, u_asc),
        make(Direction::Descending, PI - u_asc),
    ])
}

/// Longitudes of the ascending and descending crossings of `lat`.
pub fn crossing_longitude(
    el: &OrbitElements,
    lat: f64,
    ground_track_shift: f64,
) -> Result<(f64, f64)> {
    let [asc, desc] = latitude_crossings(el, lat, ground_track_shift)?;
    Ok((asc.longitude, desc.longitude))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::earth::EarthConstants;
    use approx::assert_abs_diff_eq;

    const E: EarthConstants = EarthConstants::WGS84;

    #[test]
    fn node_at_prime_meridian() {
        let el = OrbitElements::circular(&E, 500.0, 0.7);
        let (asc, desc) = crossing_longitude(&el, 0.0, -0.4).unwrap();
        assert_abs_diff_eq!(asc, 0.0);
        // descending node half a revolution later, opposite side plus half the shift
        assert_abs_diff_eq!(desc, wrap_pi(PI - 0.2), epsilon = 1e-12);
    }

    #[test]
    fn polar_track_follows_meridian() {
        let el = OrbitElements::circular(&E, 500.0, PI / 2.0);
        let [asc, _] = latitude_crossings(&el, 45f64.to_radians(), 0.0).unwrap();
        assert_abs_diff_eq!(asc.longitude, 0.0, epsilon = 1e-12);
        let [asc, _] = latitude_crossings(&el, 45f64.to_radians(), -0.4).unwrap();
        assert_abs_diff_eq!(asc.longitude, -0.4 * 0.125, epsilon = 1e-12);
    }

    #[test]
    fn unreachable_is_error() {
        let el = OrbitElements::circular(&E, 500.0, 0.3);
        assert!(matches!(
            latitude_crossings(&el, 0.5, 0.0),
            Err(RevisitError::LatitudeUnreachable { .. })
        ));
    }

    #[test]
    fn node_fraction_consistency() {
        let el = OrbitElements::circular(&E, 700.0, 1.2);
        let [asc, desc] = latitude_crossings(&el, -0.4, -0.4).unwrap();
        assert!(asc.node_fraction > 0.75 && asc.node_fraction < 1.0);
        assert!(desc.node_fraction > 0.5 && desc.node_fraction < 0.75);
    }
}
