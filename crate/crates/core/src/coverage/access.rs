use serde::{Deserialize, Serialize};

use crate::pass_schedule::{Pass, TrackSegment};
use crate::sensor::FootprintAtLatitude;

use super::grid::LongitudeGrid;

/// Elliptical footprint test in (longitude, latitude) offsets from the
/// sub-satellite point: `dlon^2 / Lambda^2 + dlat^2 / theta^2 <= 1`.
pub fn in_footprint(dlon: f64, dlat: f64, dihedral_half: f64, ground_range: f64) -> bool {
    if !(ground_range > 0.0 && dihedral_half > 0.0) {
        return false;
    }
    let x = dlon / dihedral_half;
    let y = dlat / ground_range;
    x * x + y * y <= 1.0
}

/// Footprint outline used for the per-sample visibility test.
///
/// `Ellipse` is the `(Lambda, theta)` ellipse around each sample. `SmallCircle`
/// takes the longitude half-width of the true ground-range circle at the
/// target latitude; both give `Lambda` when the sample sits on that latitude.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FootprintShape {
    #[default]
    Ellipse,
    SmallCircle,
}

impl FootprintShape {
    /// Visible half-width in longitude at `lat` for a sub-satellite point at
    /// `sample_lat`, or `None` when the footprint misses that latitude.
    pub fn half_width(
        self,
        lat: f64,
        sample_lat: f64,
        dihedral_half: f64,
        ground_range: f64,
    ) -> Option<f64> {
        let q = (lat - sample_lat) / ground_range;
        if !(q.abs() <= 1.0) {
            return None;
        }
        Some(match self {
            FootprintShape::Ellipse => dihedral_half * (1.0 - q * q).sqrt(),
            FootprintShape::SmallCircle => {
                let c = (ground_range.cos() - lat.sin() * sample_lat.sin())
                    / (lat.cos() * sample_lat.cos());
                c.clamp(-1.0, 1.0).acos()
            }
        })
    }
}

/// Ground-track samples of one branch paired with the footprint's visible
/// half-width in longitude at the target latitude.
#[derive(Debug, Clone, PartialEq)]
pub struct FootprintTrack {
    /// (longitude offset from the crossing, time offset, half-width)
    samples: Vec<(f64, f64, f64)>,
    max_step: f64,
    max_offset: f64,
}

impl FootprintTrack {
    pub fn new(
        segment: &TrackSegment,
        footprint: &FootprintAtLatitude,
        lat: f64,
        shape: FootprintShape,
    ) -> Self {
        let theta = footprint.ground_range;
        let lambda = footprint.dihedral_half;
        let mut samples = Vec::new();
        if theta > 0.0 && lambda > 0.0 {
            for s in &segment.samples {
                if let Some(w) = shape.half_width(lat, s.lat, lambda, theta) {
                    samples.push((s.dlon, s.dt, w));
                }
            }
        }
        let max_offset = segment
            .samples
            .iter()
            .map(|s| s.dt.abs())
            .fold(0.0, f64::max);
        FootprintTrack {
            samples,
            max_step: segment.max_step,
            max_offset,
        }
    }

    /// Largest time between consecutive samples.
    pub fn max_step(&self) -> f64 {
        self.max_step
    }

    /// Largest time offset from the crossing covered by the segment.
    pub fn max_offset(&self) -> f64 {
        self.max_offset
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// First and last visibility times of a run of consecutive grid indices
/// during one pass.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PassAccess {
    /// Unwrapped index of the first entry.
    pub first_index: i64,
    pub start: Vec<f64>,
    pub end: Vec<f64>,
}

impl PassAccess {
    pub fn is_empty(&self) -> bool {
        self.start.is_empty()
    }

    /// Wrapped grid index and clamped interval of each visible point.
    pub fn iter<'a>(
        &'a self,
        grid: &'a LongitudeGrid,
        window: f64,
    ) -> impl Iterator<Item = (usize, f64, f64)> + 'a {
        self.start
            .iter()
            .zip(&self.end)
            .enumerate()
            .filter_map(move |(k, (&s, &e))| {
                if !(s <= e) || e < 0.0 || s > window {
                    return None;
                }
                Some((
                    grid.wrap(self.first_index + k as i64),
                    s.max(0.0),
                    e.min(window),
                ))
            })
    }
}

/// Visible grid points and their access windows for one pass.
pub fn pass_accesses(pass: &Pass, track: &FootprintTrack, grid: &LongitudeGrid) -> PassAccess {
    let spans: Vec<(i64, i64, f64)> = track
        .samples
        .iter()
        .filter_map(|&(dlon, dt, half)| {
            let (lo, hi) = grid.index_span(pass.longitude + dlon, half);
            (lo <= hi).then_some((lo, hi, pass.epoch + dt))
        })
        .collect();
    if spans.is_empty() {
        return PassAccess::default();
    }
    let lo = spans.iter().map(|s| s.0).min().unwrap();
    let hi = spans.iter().map(|s| s.1).max().unwrap();
    let width = (hi - lo + 1) as usize;
    let mut start = vec![f64::INFINITY; width];
    let mut end = vec![f64::NEG_INFINITY; width];
    if !sweep(spans.iter(), lo, &mut start) || !sweep(spans.iter().rev(), lo, &mut end) {
        // Footprint spans were not contiguous; fall back to a full scan.
        start.fill(f64::INFINITY);
        end.fill(f64::NEG_INFINITY);
        for &(a, b, t) in &spans {
            for i in a..=b {
                let k = (i - lo) as usize;
                start[k] = start[k].min(t);
                end[k] = end[k].max(t);
            }
        }
    }
    PassAccess {
        first_index: lo,
        start,
        end,
    }
}

/// Assign each index the time of the first span (in iteration order) that
/// covers it, growing a contiguous union. Returns false if a span is disjoint
/// from the union so far.
fn sweep<'a>(spans: impl Iterator<Item = &'a (i64, i64, f64)>, base: i64, out: &mut [f64]) -> bool {
    let mut union: Option<(i64, i64)> = None;
    for &(a, b, t) in spans {
        match union {
            None => {
                out[(a - base) as usize..=(b - base) as usize].fill(t);
                union = Some((a, b));
            }
            Some((u0, u1)) => {
                if a > u1 + 1 || b < u0 - 1 {
                    return false;
                }
                if a < u0 {
                    out[(a - base) as usize..(u0 - base) as usize].fill(t);
                }
                if b > u1 {
                    out[(u1 + 1 - base) as usize..=(b - base) as usize].fill(t);
                }
                union = Some((a.min(u0), b.max(u1)));
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pass_schedule::{Direction, TrackSample};
    use std::f64::consts::PI;

    #[test]
    fn shapes_agree_on_the_target_latitude() {
        let (lat, theta) = (0.7, 0.2);
        let lambda = crate::sensor::dihedral_half_angle(theta, lat).unwrap();
        for shape in [FootprintShape::Ellipse, FootprintShape::SmallCircle] {
            assert!((shape.half_width(lat, lat, lambda, theta).unwrap() - lambda).abs() < 1e-12);
            assert!(shape.half_width(lat, lat + theta, lambda, theta).unwrap() < 1e-6);
            assert_eq!(
                shape.half_width(lat, lat - 1.01 * theta, lambda, theta),
                None
            );
        }
        // the true circle bulges poleward of the ellipse
        let up = FootprintShape::SmallCircle
            .half_width(lat, lat + 0.1, lambda, theta)
            .unwrap();
        let down = FootprintShape::SmallCircle
            .half_width(lat, lat - 0.1, lambda, theta)
            .unwrap();
        let ell = FootprintShape::Ellipse
            .half_width(lat, lat + 0.1, lambda, theta)
            .unwrap();
        assert!(up > down && up > ell);
    }

    fn pass(lon: f64, epoch: f64) -> Pass {
        Pass {
            longitude: lon,
            epoch,
            direction: Direction::Ascending,
            plane_index: 0,
            sat_index: 0,
            revolution: 0,
        }
    }

    fn straight_track(n: usize, lat: f64, theta: f64, lambda: f64) -> FootprintTrack {
        // track moving north across the target latitude with no longitude drift
        let samples = (0..n)
            .map(|k| {
                let f = k as f64 / (n - 1) as f64 * 2.0 - 1.0;
                TrackSample {
                    dlon: 0.0,
                    lat: lat + 1.2 * theta * f,
                    dt: 100.0 * f,
                }
            })
            .collect();
        let seg = TrackSegment {
            direction: Direction::Ascending,
            samples,
            crossing_index: n / 2,
            max_step: 200.0 / (n - 1) as f64,
        };
        let fp = FootprintAtLatitude {
            ground_range: theta,
            dihedral_half: lambda,
            slant_range: 0.0,
            gamma: 0.0,
            clamped: false,
        };
        FootprintTrack::new(&seg, &fp, lat, FootprintShape::Ellipse)
    }

    #[test]
    fn predicate() {
        assert!(in_footprint(0.0, 0.0, 0.1, 0.1));
        assert!(in_footprint(0.1, 0.0, 0.1, 0.2));
        assert!(!in_footprint(0.08, 0.08, 0.1, 0.1));
        assert!(!in_footprint(0.0, 0.0, 0.0, 0.1));
    }

    #[test]
    fn centre_point_sees_whole_pass() {
        let grid = LongitudeGrid::with_count(360);
        let track = straight_track(1001, 0.5, 0.1, 0.2);
        let acc = pass_accesses(&pass(grid.longitude(100), 5000.0), &track, &grid);
        let pts: Vec<_> = acc.iter(&grid, 1e9).collect();
        let centre = pts.iter().find(|p| p.0 == 100).unwrap();
        // visible while |dlat| <= theta, i.e. for dt in [-100/1.2, 100/1.2]
        assert!((centre.1 - (5000.0 - 100.0 / 1.2)).abs() < 0.3);
        assert!((centre.2 - (5000.0 + 100.0 / 1.2)).abs() < 0.3);
        // half-width 0.2 rad at 1 deg spacing covers 11 points each side
        assert_eq!(pts.len(), 23);
        let edge = pts.iter().find(|p| p.0 == 111).unwrap();
        assert!(edge.2 - edge.1 < centre.2 - centre.1);
    }

    #[test]
    fn wraps_across_antimeridian() {
        let grid = LongitudeGrid::with_count(360);
        let track = straight_track(301, 0.5, 0.1, 0.05);
        let acc = pass_accesses(&pass(PI - 0.01, 0.0), &track, &grid);
        let idx: Vec<usize> = acc.iter(&grid, 1e9).map(|p| p.0).collect();
        assert!(idx.contains(&0) && idx.contains(&359));
    }

    #[test]
    fn clamps_to_window() {
        let grid = LongitudeGrid::with_count(360);
        let track = straight_track(301, 0.5, 0.1, 0.05);
        let acc = pass_accesses(&pass(0.0, 10.0), &track, &grid);
        for (_, s, e) in acc.iter(&grid, 50.0) {
            assert!(s >= 0.0 && e <= 50.0 && s <= e);
        }
    }

    #[test]
    fn degenerate_footprint_sees_nothing() {
        let grid = LongitudeGrid::with_count(360);
        let track = straight_track(301, 0.5, 0.0, 0.0);
        assert!(track.is_empty());
        assert!(pass_accesses(&pass(0.0, 0.0), &track, &grid).is_empty());
    }
}
