use std::f64::consts::{PI, TAU};

use super::crossing::{ascending_arg_latitude, longitude_from_node};
use super::{true_to_mean, wrap_pi, Direction, OrbitElements, TrackRates};
use crate::error::{Result, RevisitError};

/// Sub-satellite point relative to a latitude crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackSample {
    /// Longitude offset from the crossing (rad), Earth rotation included.
    pub dlon: f64,
    /// Geocentric latitude of the sub-satellite point (rad).
    pub lat: f64,
    /// Time offset from the crossing (s).
    pub dt: f64,
}

/// Samples of the ground track around one crossing, ordered in time.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackSegment {
    pub direction: Direction,
    pub samples: Vec<TrackSample>,
    /// Index of the sample that sits on the crossing.
    pub crossing_index: usize,
    /// Largest time gap between consecutive samples (s).
    pub max_step: f64,
}

/// Fractional padding applied on each side of the reachable span.
const SPAN_PADDING: f64 = 0.10;

/// Sample the ground track where a footprint of half ground range `reach`
/// centred on the track can still touch latitude `lat`.
pub fn ground_track_segment(
    el: &OrbitElements,
    lat: f64,
    reach: f64,
    rates: &TrackRates,
    direction: Direction,
    n_points: usize,
) -> Result<TrackSegment> {
    if n_points < 3 {
        return Err(RevisitError::invalid(
            "segment_samples",
            format!("{n_points} < 3"),
        ));
    }
    let u_cross = ascending_arg_latitude(el, lat)?;
    let sin_i = el.inclination.sin();
    let max_lat = sin_i.asin();
    let lat_lo = (lat - reach).max(-max_lat);
    let lat_hi = (lat + reach).min(max_lat);
    let u_of = |l: f64| (l.sin() / sin_i).clamp(-1.0, 1.0).asin();
    let (u_lo, u_hi) = (u_of(lat_lo), u_of(lat_hi));
    let pad = SPAN_PADDING * (u_hi - u_lo);
    let (start, cross, end) = match direction {
        Direction::Ascending => (u_lo - pad, u_cross, u_hi + pad),
        Direction::Descending => (PI - u_hi - pad, PI - u_cross, PI - u_lo + pad),
    };

    // Split the samples so that one lands exactly on the crossing.
    let intervals = n_points - 1;
    let span = end - start;
    let k_cross = if span > 0.0 {
        (((cross - start) / span) * intervals as f64).round() as usize
    } else {
        0
    };
    let k_cross = k_cross.clamp(1, intervals - 1);
    let arg_at = |k: usize| {
        if k <= k_cross {
            start + (cross - start) * k as f64 / k_cross as f64
        } else {
            cross + (end - cross) * (k - k_cross) as f64 / (intervals - k_cross) as f64
        }
    };

    let period = rates.nodal_period;
    let shift = rates.ground_track_shift;
    let e = el.eccentricity;
    let w = el.arg_perigee;
    let m_cross = true_to_mean(cross - w, e);
    let alpha_cross = longitude_from_node(cross, el.inclination);

    let mut samples = Vec::with_capacity(n_points);
    let mut prev_alpha: Option<f64> = None;
    for k in 0..n_points {
        let u = if k == k_cross { cross } else { arg_at(k) };
        let dt = (true_to_mean(u - w, e) - m_cross) / TAU * period;
        let raw = wrap_pi(longitude_from_node(u, el.inclination) - alpha_cross);
        // unwrap against the previous sample so the offset stays continuous
        let alpha = match prev_alpha {
            Some(p) => p + wrap_pi(raw - p),
            None => raw,
        };
        prev_alpha = Some(alpha);
        samples.push(TrackSample {
            dlon: alpha + dt / period * shift,
            lat: (sin_i * u.sin()).clamp(-1.0, 1.0).asin(),
            dt,
        });
    }
    // Re-anchor so the crossing sample is exactly (0, lat, 0).
    let anchor = samples[k_cross];
    let alpha_anchor = anchor.dlon - anchor.dt / period * shift;
    for s in &mut samples {
        s.dlon -= alpha_anchor;
    }
    samples[k_cross] = TrackSample {
        dlon: 0.0,
        lat,
        dt: 0.0,
    };

    let max_step = samples
        .windows(2)
        .map(|w| w[1].dt - w[0].dt)
        .fold(0.0, f64::max);
    Ok(TrackSegment {
        direction,
        samples,
        crossing_index: k_cross,
        max_step,
    })
}
