use std::io::Write;

use revisit_core::coverage::{analyze, build_grid, RevisitReport};
use revisit_core::oracle::{simulate_ring, SimConfig};
use revisit_core::sensor::FootprintAtLatitude;
use revisit_core::{EarthConstants, Parallelism};
use serde::Serialize;

use crate::config::{CaseConfig, SweepSpec};
use crate::CliError;

/// Result of one case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub report: RevisitReport,
    pub inclination_deg: f64,
    pub satellites: usize,
    pub nodal_period_s: f64,
    pub ground_track_shift_deg: f64,
    pub footprints: [FootprintAtLatitude; 2],
    pub warnings: Vec<String>,
}

pub fn run_case(cfg: &CaseConfig, parallelism: Parallelism) -> Result<CaseOutcome, CliError> {
    let earth = EarthConstants::WGS84;
    let case = cfg.resolve(&earth, parallelism)?;
    let res = analyze(
        &earth,
        &case.constellation,
        &case.sensor,
        case.latitude,
        &case.settings,
    )?;
    let mut warnings = Vec::new();
    if res.footprints.iter().any(|f| f.clamped) {
        warnings.push(format!(
            "boresight half-cone {} deg reaches past the horizon; ground range held at the horizon",
            cfg.sensor.degrees()
        ));
    }
    if res.report.window_exceeded {
        warnings.push(format!(
            "window_exceeded: {} of {} grid points never accessed in {} days",
            res.report.uncovered_count, res.report.point_count, cfg.window_days
        ));
    }
    Ok(CaseOutcome {
        report: res.report,
        inclination_deg: case.constellation.reference.inclination.to_degrees(),
        satellites: case.constellation.len(),
        nodal_period_s: res.rates.nodal_period,
        ground_track_shift_deg: res.rates.ground_track_shift.to_degrees(),
        footprints: res.footprints,
        warnings,
    })
}

/// Same case through the propagation oracle.
pub fn run_oracle(cfg: &CaseConfig, parallelism: Parallelism) -> Result<RevisitReport, CliError> {
    let earth = EarthConstants::WGS84;
    let case = cfg.resolve(&earth, parallelism)?;
    let grid = build_grid(case.settings.grid_resolution)?;
    let sim = SimConfig {
        window: case.settings.window,
        parallelism,
        ..SimConfig::default()
    };
    Ok(simulate_ring(
        &earth,
        &case.constellation,
        &case.sensor,
        case.latitude,
        &grid,
        &sim,
    )?
    .report)
}

/// One CSV row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub case_id: usize,
    pub alt_km: Option<f64>,
    pub inc_deg: Option<f64>,
    pub ecc: f64,
    pub lat_deg: f64,
    pub sensor_mode: &'static str,
    pub sensor_deg: f64,
    pub t: Option<u32>,
    pub p: Option<u32>,
    pub f: Option<u32>,
    pub window_days: f64,
    pub mrt_h: Option<f64>,
    pub art_h: Option<f64>,
    pub coverage_frac: Option<f64>,
    pub ttc_h: Option<f64>,
    pub pass_count: Option<usize>,
    pub error: String,
}

impl SweepRow {
    pub fn new(case_id: usize, cfg: &CaseConfig, outcome: &Result<CaseOutcome, CliError>) -> Self {
        let earth = EarthConstants::WGS84;
        let walker = cfg.walker_config().ok().flatten();
        let (t, p) = match (&cfg.planes, walker) {
            (Some(planes), _) => (
                Some(planes.iter().map(|p| p.phase_deg.len() as u32).sum()),
                Some(planes.len() as u32),
            ),
            (None, Some(w)) => (Some(w.total), Some(w.planes)),
            (None, None) => (Some(1), Some(1)),
        };
        let f = match (&cfg.planes, walker) {
            (Some(_), _) => None,
            (None, Some(w)) => Some(w.phasing),
            (None, None) => Some(0),
        };
        let mut row = SweepRow {
            case_id,
            alt_km: cfg.altitude(&earth).ok(),
            inc_deg: None,
            ecc: cfg.eccentricity,
            lat_deg: cfg.latitude_deg,
            sensor_mode: cfg.sensor.mode(),
            sensor_deg: cfg.sensor.degrees(),
            t,
            p,
            f,
            window_days: cfg.window_days,
            mrt_h: None,
            art_h: None,
            coverage_frac: None,
            ttc_h: None,
            pass_count: None,
            error: String::new(),
        };
        match outcome {
            Ok(o) => {
                let r = &o.report;
                row.inc_deg = Some(o.inclination_deg);
                row.mrt_h = r.mrt_hours;
                row.art_h = r.art_hours;
                row.coverage_frac = Some(r.coverage_fraction);
                row.ttc_h = r.time_to_full_coverage_hours;
                row.pass_count = Some(r.pass_count);
                if r.window_exceeded {
                    row.error = "window_exceeded".into();
                }
            }
            Err(e) => {
                row.inc_deg = cfg.inclination(&earth).ok().map(f64::to_degrees);
                row.error = e.to_string();
            }
        }
        row
    }

    /// Failed for a reason other than the window being too short.
    pub fn is_failure(&self) -> bool {
        !self.error.is_empty() && self.error != "window_exceeded"
    }
}

/// Run every cell of a sweep. Cells run concurrently when `parallelism`
/// allows; rows come back in sweep order.
pub fn run_sweep(spec: &SweepSpec, parallelism: Parallelism) -> Result<Vec<SweepRow>, CliError> {
    let cells = spec.cells()?;
    let one = |(k, cfg): (usize, &CaseConfig)| {
        // parallelism is spent across cells, so each cell runs serially
        let outcome = run_case(cfg, Parallelism::Sequential);
        SweepRow::new(k, cfg, &outcome)
    };
    let rows = match parallelism {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => {
            use rayon::prelude::*;
            cells.par_iter().enumerate().map(one).collect()
        }
        _ => cells.iter().enumerate().map(one).collect(),
    };
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
