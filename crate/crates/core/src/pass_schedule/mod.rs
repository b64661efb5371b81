//! Pass epochs and crossing longitudes over a target latitude.

mod crossing;
mod elements;
mod rates;
mod segment;
mod walker;

use serde::{Deserialize, Serialize};

pub use crossing::{crossing_longitude, latitude_crossings, LatitudeCrossing};
pub use elements::{
    eccentric_to_true, mean_to_eccentric, true_to_eccentric, true_to_mean, wrap_pi, OrbitElements,
};
pub use rates::{
    ground_track_shift, keplerian_period, nodal_period, perigee_and_mean_rates, raan_drift_rate,
    NodalPeriodForm, TrackRates,
};
pub use segment::{ground_track_segment, TrackSample, TrackSegment};
pub use walker::{
    expand_slots, slot_elements, slots_from_overrides, walker_expand, PlaneOverride, SatelliteSlot,
    WalkerConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Ascending,
    Descending,
}

impl Direction {
    pub fn index(self) -> usize {
        match self {
            Direction::Ascending => 0,
            Direction::Descending => 1,
        }
    }
}

/// One crossing of the target latitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pass {
    /// Earth-fixed longitude of the crossing (rad, [-pi, pi)).
    pub longitude: f64,
    /// Seconds since the start of the window.
    pub epoch: f64,
    pub direction: Direction,
    pub plane_index: u32,
    pub sat_index: u32,
    /// Revolutions since this satellite's first crossing on this branch.
    pub revolution: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PassSet {
    pub passes: Vec<Pass>,
    pub ground_track_shift: f64,
    pub nodal_period: f64,
}

impl PassSet {
    pub fn len(&self) -> usize {
        self.passes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passes.is_empty()
    }

    /// Sort by epoch, breaking ties by satellite and branch.
    pub fn sort(&mut self) {
        self.passes.sort_by(|a, b| {
            a.epoch
                .total_cmp(&b.epoch)
                .then(a.sat_index.cmp(&b.sat_index))
                .then(a.direction.cmp(&b.direction))
        });
    }

    /// Rotate every crossing east by `delta` radians.
    pub fn rotated(&self, delta: f64) -> PassSet {
        let mut out = self.clone();
        for p in &mut out.passes {
            p.longitude = wrap_pi(p.longitude + delta);
        }
        out
    }
}

/// Crossings of one satellite inside `[0, window)`.
///
/// The clock starts at the satellite's initial argument of latitude. Each
/// branch yields `floor(window / nodal_period)` passes, the first within one
/// nodal period of the start.
pub fn pass_series(
    el: &OrbitElements,
    lat: f64,
    rates: &TrackRates,
    window: f64,
) -> crate::Result<PassSet> {
    let period = rates.nodal_period;
    let shift = rates.ground_track_shift;
    let start = el.node_fraction(el.initial_arg_latitude());
    let count = if window > 0.0 {
        (window / period).floor() as u32
    } else {
        0
    };
    let mut passes = Vec::with_capacity(2 * count as usize);
    for c in latitude_crossings(el, lat, shift)? {
        let frac = (c.node_fraction - start).rem_euclid(1.0);
        let lon = c.longitude + (frac - c.node_fraction) * shift;
        for j in 0..count {
            passes.push(Pass {
                longitude: wrap_pi(lon + j as f64 * shift),
                epoch: (frac + j as f64) * period,
                direction: c.direction,
                plane_index: 0,
                sat_index: 0,
                revolution: j,
            });
        }
    }
    let mut set = PassSet {
        passes,
        ground_track_shift: shift,
        nodal_period: period,
    };
    set.sort();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::earth::EarthConstants;
    use approx::assert_abs_diff_eq;

    const E: EarthConstants = EarthConstants::WGS84;

    #[test]
    fn series_spacing() {
        let el = OrbitElements::circular(&E, 550.0, 53f64.to_radians());
        let rates = TrackRates::new(&E, &el, NodalPeriodForm::Standard);
        let lat = 30f64.to_radians();
        let set = pass_series(&el, lat, &rates, 86_400.0).unwrap();
        let n = (86_400.0 / rates.nodal_period).floor() as usize;
        assert_eq!(set.len(), 2 * n);
        let asc: Vec<_> = set
            .passes
            .iter()
            .filter(|p| p.direction == Direction::Ascending)
            .collect();
        for w in asc.windows(2) {
            assert_abs_diff_eq!(w[1].epoch - w[0].epoch, rates.nodal_period, epsilon = 1e-6);
            assert_abs_diff_eq!(
                wrap_pi(w[1].longitude - w[0].longitude),
                rates.ground_track_shift,
                epsilon = 1e-9
            );
        }
        assert!(set
            .passes
            .iter()
            .all(|p| p.epoch >= 0.0 && p.epoch < 86_400.0));
    }

    #[test]
    fn start_offset_moves_epochs() {
        let el = OrbitElements::circular(&E, 550.0, 53f64.to_radians());
        let rates = TrackRates::new(&E, &el, NodalPeriodForm::Standard);
        let lat = 0.2;
        let a = pass_series(&el, lat, &rates, 20_000.0).unwrap();
        let mut moved = el;
        moved.true_anomaly = 0.1;
        let b = pass_series(&moved, lat, &rates, 20_000.0).unwrap();
        let dt = 0.1 / std::f64::consts::TAU * rates.nodal_period;
        let pa = a
            .passes
            .iter()
            .find(|p| p.direction == Direction::Ascending)
            .unwrap();
        let pb = b
            .passes
            .iter()
            .find(|p| p.direction == Direction::Ascending)
            .unwrap();
        assert_abs_diff_eq!(pa.epoch - pb.epoch, dt, epsilon = 1e-6);
        assert_abs_diff_eq!(
            wrap_pi(pa.longitude - pb.longitude),
            dt / rates.nodal_period * rates.ground_track_shift,
            epsilon = 1e-9
        );
    }

    #[test]
    fn empty_window() {
        let el = OrbitElements::circular(&E, 550.0, 1.0);
        let rates = TrackRates::new(&E, &el, NodalPeriodForm::Standard);
        assert!(pass_series(&el, 0.0, &rates, 100.0).unwrap().is_empty());
    }
}
