use serde::{Deserialize, Serialize};

use super::access::{pass_accesses, FootprintShape, FootprintTrack};
use super::grid::LongitudeGrid;
use super::stats::{revisit_stats, PointAccumulator, PointStats, RevisitReport};
use crate::earth::EarthConstants;
use crate::error::{Result, RevisitError};
use crate::par::{for_each_mut, map_ordered, Parallelism};
use crate::pass_schedule::{
    expand_slots, ground_track_segment, pass_series, slots_from_overrides, Direction,
    NodalPeriodForm, OrbitElements, PassSet, PlaneOverride, SatelliteSlot, TrackRates,
    WalkerConfig,
};
use crate::sensor::{radius_at_latitude, resolve_footprint, FootprintAtLatitude, SensorSpec};

/// Passes handed to the workers between two merges of the per-point state.
const CHUNK: usize = 512;

/// Merged access intervals `(start, end)` in seconds, one list per grid point.
pub type AccessIntervals = Vec<Vec<(f64, f64)>>;

/// Numerical settings of a coverage run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageSettings {
    /// Analysis window (s).
    pub window: f64,
    /// Longitude grid spacing (rad).
    pub grid_resolution: f64,
    /// Ground-track samples per branch segment.
    pub segment_samples: usize,
    pub nodal_form: NodalPeriodForm,
    #[serde(default)]
    pub footprint_shape: FootprintShape,
    pub parallelism: Parallelism,
    /// Retain every merged access interval in the result.
    pub keep_intervals: bool,
}

impl Default for CoverageSettings {
    fn default() -> Self {
        CoverageSettings {
            window: 60.0 * 86_400.0,
            grid_resolution: 0.1f64.to_radians(),
            segment_samples: 1000,
            nodal_form: NodalPeriodForm::Standard,
            footprint_shape: FootprintShape::Ellipse,
            parallelism: Parallelism::default(),
            keep_intervals: false,
        }
    }
}

impl CoverageSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.window.is_finite() && self.window > 0.0) {
            return Err(RevisitError::invalid(
                "window",
                format!("{} s", self.window),
            ));
        }
        if self.segment_samples < 3 {
            return Err(RevisitError::invalid(
                "segment_samples",
                format!("{} < 3", self.segment_samples),
            ));
        }
        LongitudeGrid::new(self.grid_resolution)?;
        Ok(())
    }
}

/// Reference orbit plus the relative slots of every satellite.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub reference: OrbitElements,
    pub slots: Vec<SatelliteSlot>,
}

impl Constellation {
    pub fn single(reference: OrbitElements) -> Self {
        Constellation::walker(reference, &WalkerConfig::single())
    }

    pub fn walker(reference: OrbitElements, cfg: &WalkerConfig) -> Self {
        Constellation {
            reference,
            slots: cfg.slots(),
        }
    }

    pub fn custom(reference: OrbitElements, planes: &[PlaneOverride]) -> Result<Self> {
        Ok(Constellation {
            reference,
            slots: slots_from_overrides(planes)?,
        })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Everything the engine derived for one scenario.
#[derive(Debug, Clone)]
pub struct CoverageResult {
    pub report: RevisitReport,
    pub points: Vec<PointStats>,
    /// Merged access intervals per grid point, if requested.
    pub intervals: Option<AccessIntervals>,
    pub rates: TrackRates,
    /// Footprint at the target latitude on the ascending and descending branch.
    pub footprints: [FootprintAtLatitude; 2],
    pub grid: LongitudeGrid,
}

/// Sampled footprints of both branches for one orbit.
pub fn branch_tracks(
    earth: &EarthConstants,
    el: &OrbitElements,
    sensor: &SensorSpec,
    lat: f64,
    rates: &TrackRates,
    samples: usize,
    shape: FootprintShape,
) -> Result<([FootprintTrack; 2], [FootprintAtLatitude; 2])> {
    let radius = radius_at_latitude(el, lat)?;
    let mut tracks = Vec::with_capacity(2);
    let mut footprints = Vec::with_capacity(2);
    for (dir, r) in [
        (Direction::Ascending, radius.radius_ascending),
        (Direction::Descending, radius.radius_descending),
    ] {
        let fp = resolve_footprint(earth, sensor, r, lat)?;
        let seg = ground_track_segment(el, lat, fp.ground_range, rates, dir, samples)?;
        tracks.push(FootprintTrack::new(&seg, &fp, lat, shape));
        footprints.push(fp);
    }
    let tracks: [FootprintTrack; 2] = tracks.try_into().expect("two branches");
    Ok((tracks, [footprints[0], footprints[1]]))
}

/// Accumulate per-point revisit statistics over an epoch-sorted pass set.
pub fn evaluate_passes(
    passes: &PassSet,
    tracks: &[FootprintTrack; 2],
    grid: &LongitudeGrid,
    window: f64,
    parallelism: Parallelism,
    keep_intervals: bool,
) -> (Vec<PointStats>, Option<AccessIntervals>) {
    let tol = tracks[0].max_step().max(tracks[1].max_step());
    let reach = tracks[0].max_offset().max(tracks[1].max_offset()) + tol;
    let mut acc: Vec<PointAccumulator> = (0..grid.len())
        .map(|_| PointAccumulator::new(keep_intervals))
        .collect();
    let chunks: Vec<_> = passes.passes.chunks(CHUNK).collect();
    for (c, chunk) in chunks.iter().enumerate() {
        let found = map_ordered(chunk, parallelism, |p| {
            pass_accesses(p, &tracks[p.direction.index()], grid)
        });
        for pa in &found {
            for (j, s, e) in pa.iter(grid, window) {
                acc[j].push_pending(s, e);
            }
        }
        // Later passes cannot produce accesses before this time.
        let watermark = chunks
            .get(c + 1)
            .map_or(f64::INFINITY, |next| next[0].epoch - reach);
        for_each_mut(&mut acc, parallelism, |a| a.flush(watermark, tol));
    }
    let mut points = Vec::with_capacity(acc.len());
    let mut intervals = keep_intervals.then(|| Vec::with_capacity(acc.len()));
    for a in acc {
        let (st, iv) = a.finish(tol);
        points.push(st);
        if let (Some(all), Some(iv)) = (&mut intervals, iv) {
            all.push(iv);
        }
    }
    (points, intervals)
}

/// Revisit statistics of a constellation over a latitude ring.
pub fn analyze(
    earth: &EarthConstants,
    constellation: &Constellation,
    sensor: &SensorSpec,
    lat: f64,
    settings: &CoverageSettings,
) -> Result<CoverageResult> {
    earth.validate()?;
    settings.validate()?;
    sensor.validate()?;
    let el = &constellation.reference;
    el.validate(earth)?;
    if !(lat.abs() <= std::f64::consts::FRAC_PI_2) {
        return Err(RevisitError::invalid("latitude", format!("{lat} rad")));
    }
    if constellation.is_empty() {
        return Err(RevisitError::invalid("constellation", "no satellites"));
    }
    let grid = LongitudeGrid::new(settings.grid_resolution)?;
    let rates = TrackRates::new(earth, el, settings.nodal_form);
    let (tracks, footprints) = branch_tracks(
        earth,
        el,
        sensor,
        lat,
        &rates,
        settings.segment_samples,
        settings.footprint_shape,
    )?;
    let base = pass_series(el, lat, &rates, settings.window)?;
    let passes = expand_slots(&base, &constellation.slots);
    let (points, intervals) = evaluate_passes(
        &passes,
        &tracks,
        &grid,
        settings.window,
        settings.parallelism,
        settings.keep_intervals,
    );
    Ok(CoverageResult {
        report: revisit_stats(&points, passes.len()),
        points,
        intervals,
        rates,
        footprints,
        grid,
    })
}
