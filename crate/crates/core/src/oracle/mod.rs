//! Brute-force point-coverage simulation used to cross-check the
//! semi-analytical engine.
//!
//! Every satellite is propagated with secular J2 at a fixed step; each target
//! point's visibility is evaluated directly from the line of sight and access
//! boundaries are refined by bisection.

mod propagate;

use serde::{Deserialize, Serialize};

pub use propagate::{propagate_j2, J2Propagator, SatState};

use crate::coverage::stats::PointAccumulator;
use crate::coverage::{revisit_stats, Constellation, LongitudeGrid, PointStats, RevisitReport};
use crate::earth::EarthConstants;
use crate::error::{Result, RevisitError};
use crate::par::{map_ordered, Parallelism};
use crate::pass_schedule::{slot_elements, OrbitElements};
use crate::sensor::SensorSpec;

/// Extra central angle (rad) kept when pruning targets far from the satellite.
const PRUNE_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Sampling step (s).
    pub step: f64,
    /// Bisection tolerance on access boundaries (s).
    pub refine_tol: f64,
    /// Analysis window (s).
    pub window: f64,
    pub parallelism: Parallelism,
    pub keep_intervals: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            step: 10.0,
            refine_tol: 0.1,
            window: 60.0 * 86_400.0,
            parallelism: Parallelism::default(),
            keep_intervals: false,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(RevisitError::invalid("step", format!("{} s", self.step)));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol < self.step) {
            return Err(RevisitError::invalid(
                "refine_tol",
                format!("{} s must lie in (0, step)", self.refine_tol),
            ));
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            return Err(RevisitError::invalid(
                "window",
                format!("{} s", self.window),
            ));
        }
        Ok(())
    }
}

/// Ground target at geocentric latitude/longitude (rad).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundPoint {
    pub latitude: f64,
    pub longitude: f64,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub report: RevisitReport,
    pub points: Vec<PointStats>,
    pub intervals: Option<Vec<Vec<(f64, f64)>>>,
}

/// Targets sharing one latitude, sorted by longitude.
struct Ring {
    latitude: f64,
    sin_lat: f64,
    cos_lat: f64,
    surface_radius: f64,
    /// (longitude, target index, Earth-fixed position)
    members: Vec<(f64, usize, [f64; 3])>,
}

fn build_rings(earth: &EarthConstants, targets: &[GroundPoint]) -> Vec<Ring> {
    let mut rings: Vec<Ring> = Vec::new();
    for (k, p) in targets.iter().enumerate() {
        let ring = match rings.iter_mut().position(|r| r.latitude == p.latitude) {
            Some(i) => &mut rings[i],
            None => {
                rings.push(Ring {
                    latitude: p.latitude,
                    sin_lat: p.latitude.sin(),
                    cos_lat: p.latitude.cos(),
                    surface_radius: earth.geodetic_radius(p.latitude),
                    members: Vec::new(),
                });
                rings.last_mut().unwrap()
            }
        };
        let r = ring.surface_radius;
        let lon = crate::pass_schedule::wrap_pi(p.longitude);
        let pos = [
            r * ring.cos_lat * lon.cos(),
            r * ring.cos_lat * lon.sin(),
            r * ring.sin_lat,
        ];
        ring.members.push((lon, k, pos));
    }
    for r in &mut rings {
        r.members
            .sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    }
    rings
}

/// Line-of-sight visibility of a satellite at `sat` from a station at `station`.
fn visible(sensor: &SensorSpec, sat: [f64; 3], station: [f64; 3]) -> bool {
    let los = sub(sat, station);
    let los_n = norm(los);
    let st_n = norm(station);
    let sin_el = dot(los, station) / (los_n * st_n);
    match *sensor {
        SensorSpec::Elevation { min_elevation } => sin_el >= min_elevation.sin(),
        SensorSpec::Boresight { half_cone } => {
            if sin_el < 0.0 {
                return false;
            }
            let nadir_cos = dot(sat, los) / (norm(sat) * los_n);
            nadir_cos >= half_cone.cos()
        }
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Push every target of `ring` that could see a satellite at `sat` into `out`.
fn candidates(ring: &Ring, sat: [f64; 3], out: &mut Vec<usize>) {
    let r = norm(sat);
    if r <= ring.surface_radius {
        return;
    }
    let horizon = (ring.surface_radius / r).acos() + PRUNE_MARGIN;
    let rho = sat[0].hypot(sat[1]);
    let (sin_s, cos_s) = (sat[2] / r, rho / r);
    let (lat_s, lon_s) = (sat[2].atan2(rho), sat[1].atan2(sat[0]));
    if (lat_s - ring.latitude).abs() > horizon {
        return;
    }
    let denom = ring.cos_lat * cos_s;
    let arg = (horizon.cos() - ring.sin_lat * sin_s) / denom;
    let members = &ring.members;
    if !(arg > -1.0) || denom < 1e-12 {
        out.extend(0..members.len());
        return;
    }
    if arg > 1.0 {
        return;
    }
    let half = arg.acos();
    let (lo, hi) = (lon_s - half, lon_s + half);
    let mut take = |a: f64, b: f64| {
        let start = members.partition_point(|m| m.0 < a);
        let end = members.partition_point(|m| m.0 <= b);
        out.extend(start..end.max(start));
    };
    use std::f64::consts::{PI, TAU};
    if lo < -PI {
        take(lo + TAU, PI);
        take(-PI, hi);
    } else if hi >= PI {
        take(lo, PI);
        take(-PI, hi - TAU);
    } else {
        take(lo, hi);
    }
}

/// Access intervals of one satellite over all targets, as
/// (target index, start, end).
fn satellite_accesses(
    prop: &J2Propagator,
    rings: &[Ring],
    sensor: &SensorSpec,
    cfg: &SimConfig,
) -> Result<Vec<(usize, f64, f64)>> {
    let n_targets: usize = rings.iter().map(|r| r.members.len()).sum();
    // rise time of currently visible targets, keyed by (ring, member)
    let mut rise: Vec<Vec<Option<f64>>> =
        rings.iter().map(|r| vec![None; r.members.len()]).collect();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); rings.len()];
    let mut out = Vec::with_capacity(n_targets);
    let mut cand = Vec::new();
    let mut now_up = Vec::new();

    let steps = (cfg.window / cfg.step).ceil() as usize;
    let mut prev_t = 0.0;
    for k in 0..=steps {
        let t = (k as f64 * cfg.step).min(cfg.window);
        let sat = prop.fixed(t)?;
        for (ri, ring) in rings.iter().enumerate() {
            cand.clear();
            candidates(ring, sat, &mut cand);
            now_up.clear();
            for &m in &cand {
                if visible(sensor, sat, ring.members[m].2) {
                    now_up.push(m);
                }
            }
            // rises
            for &m in &now_up {
                if rise[ri][m].is_none() {
                    let start = if k == 0 {
                        0.0
                    } else {
                        refine(
                            prop,
                            sensor,
                            ring.members[m].2,
                            prev_t,
                            t,
                            false,
                            cfg.refine_tol,
                        )?
                    };
                    rise[ri][m] = Some(start);
                }
            }
            // sets: previously up, not up now
            now_up.sort_unstable();
            for &m in &up[ri] {
                if now_up.binary_search(&m).is_err() {
                    let end = refine(
                        prop,
                        sensor,
                        ring.members[m].2,
                        prev_t,
                        t,
                        true,
                        cfg.refine_tol,
                    )?;
                    let start = rise[ri][m].take().expect("visible target has a rise time");
                    out.push((ring.members[m].1, start, end));
                }
            }
            std::mem::swap(&mut up[ri], &mut now_up);
        }
        prev_t = t;
    }
    for (ri, ring) in rings.iter().enumerate() {
        for &m in &up[ri] {
            if let Some(start) = rise[ri][m] {
                out.push((ring.members[m].1, start, cfg.window));
            }
        }
    }
    Ok(out)
}

/// Bisect the visibility transition inside `(a, b)`. `was_visible` is the
/// state at `a`.
fn refine(
    prop: &J2Propagator,
    sensor: &SensorSpec,
    station: [f64; 3],
    mut a: f64,
    mut b: f64,
    was_visible: bool,
    tol: f64,
) -> Result<f64> {
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if visible(sensor, prop.fixed(mid)?, station) == was_visible {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Simulate every satellite against every target and reduce the accesses
/// with the same conventions as the semi-analytical engine.
pub fn simulate_coverage(
    earth: &EarthConstants,
    satellites: &[OrbitElements],
    sensor: &SensorSpec,
    targets: &[GroundPoint],
    cfg: &SimConfig,
) -> Result<OracleResult> {
    cfg.validate()?;
    sensor.validate()?;
    let props = satellites
        .iter()
        .map(|el| J2Propagator::new(earth, el))
        .collect::<Result<Vec<_>>>()?;
    let rings = build_rings(earth, targets);
    let per_sat = map_ordered(&props, cfg.parallelism, |p| {
        satellite_accesses(p, &rings, sensor, cfg)
    });
    let mut acc: Vec<PointAccumulator> = (0..targets.len())
        .map(|_| PointAccumulator::new(cfg.keep_intervals))
        .collect();
    for found in per_sat {
        for (j, s, e) in found? {
            acc[j].push_pending(s, e);
        }
    }
    let mut points = Vec::with_capacity(targets.len());
    let mut intervals = cfg
        .keep_intervals
        .then(|| Vec::with_capacity(targets.len()));
    for a in acc {
        let (st, iv) = a.finish(cfg.refine_tol);
        points.push(st);
        if let (Some(all), Some(iv)) = (&mut intervals, iv) {
            all.push(iv);
        }
    }
    Ok(OracleResult {
        report: revisit_stats(&points, 0),
        points,
        intervals,
    })
}

/// Satellites of a constellation as individual element sets.
pub fn constellation_elements(constellation: &Constellation) -> Result<Vec<OrbitElements>> {
    constellation
        .slots
        .iter()
        .map(|s| slot_elements(&constellation.reference, s))
        .collect()
}

/// Simulate a constellation over a full latitude ring sampled on `grid`.
pub fn simulate_ring(
    earth: &EarthConstants,
    constellation: &Constellation,
    sensor: &SensorSpec,
    lat: f64,
    grid: &LongitudeGrid,
    cfg: &SimConfig,
) -> Result<OracleResult> {
    let sats = constellation_elements(constellation)?;
    let targets: Vec<GroundPoint> = grid
        .longitudes()
        .map(|longitude| GroundPoint {
            latitude: lat,
            longitude,
        })
        .collect();
    let mut res = simulate_coverage(earth, &sats, sensor, &targets, cfg)?;
    let mut crossings = 0;
    for el in &sats {
        crossings += latitude_crossings_in(earth, el, lat, cfg.window, cfg.step)?.len();
    }
    res.report.pass_count = crossings;
    Ok(res)
}

/// Times at which the sub-satellite point crosses latitude `lat` within
/// `[0, window)`, refined to 1 ms.
pub fn latitude_crossings_in(
    earth: &EarthConstants,
    el: &OrbitElements,
    lat: f64,
    window: f64,
    step: f64,
) -> Result<Vec<f64>> {
    let prop = J2Propagator::new(earth, el)?;
    let f = |t: f64| -> Result<f64> { Ok(prop.state(t)?.latitude - lat) };
    let mut out = Vec::new();
    let mut a = 0.0;
    let mut fa = f(a)?;
    if fa == 0.0 {
        out.push(0.0);
    }
    while a < window {
        let b = (a + step).min(window);
        let fb = f(b)?;
        if (fa < 0.0 && fb >= 0.0) || (fa > 0.0 && fb <= 0.0) {
            let (mut lo, mut hi, flo) = (a, b, fa);
            while hi - lo > 1e-3 {
                let mid = 0.5 * (lo + hi);
                if (f(mid)? < 0.0) == (flo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            if t < window {
                out.push(t);
            }
        }
        a = b;
        fa = fb;
    }
    Ok(out)
}
