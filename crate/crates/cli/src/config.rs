//! JSON case and sweep configuration.
//!
//! Degrees and kilometres at this boundary; everything handed to the core
//! crate is in radians.

use std::path::Path;

use revisit_core::coverage::{CoverageSettings, FootprintShape};
use revisit_core::pass_schedule::{OrbitElements, PlaneOverride};
use revisit_core::{Constellation, EarthConstants, Parallelism, SensorSpec, WalkerConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Inclination {
    Degrees(f64),
    Keyword(InclinationKeyword),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InclinationKeyword {
    /// Solve for the sun-synchronous inclination.
    Sso,
}

/// Field of regard, written `{"elevation_deg": 10}` or `{"boresight_deg": 45}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensorConfig {
    ElevationDeg(f64),
    BoresightDeg(f64),
}

impl SensorConfig {
    pub fn mode(&self) -> &'static str {
        match self {
            SensorConfig::ElevationDeg(_) => "elevation",
            SensorConfig::BoresightDeg(_) => "boresight",
        }
    }

    pub fn degrees(&self) -> f64 {
        match *self {
            SensorConfig::ElevationDeg(d) | SensorConfig::BoresightDeg(d) => d,
        }
    }

    pub fn with_degrees(&self, deg: f64) -> Self {
        match self {
            SensorConfig::ElevationDeg(_) => SensorConfig::ElevationDeg(deg),
            SensorConfig::BoresightDeg(_) => SensorConfig::BoresightDeg(deg),
        }
    }

    pub fn to_spec(&self) -> SensorSpec {
        match *self {
            SensorConfig::ElevationDeg(d) => SensorSpec::elevation_deg(d),
            SensorConfig::BoresightDeg(d) => SensorSpec::boresight_deg(d),
        }
    }
}

/// Explicit plane for non-Walker layouts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneConfig {
    /// RAAN offset from the reference plane.
    pub raan_offset_deg: f64,
    /// In-track lead of each satellite, in degrees of argument of latitude.
    pub phase_deg: Vec<f64>,
}

fn default_window_days() -> f64 {
    60.0
}

fn default_grid_res_deg() -> f64 {
    0.1
}

fn default_segment_samples() -> usize {
    1000
}

/// One analysis case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    /// Altitude above the equatorial radius; alternative to `semi_major_axis_km`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub altitude_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semi_major_axis_km: Option<f64>,
    #[serde(default)]
    pub eccentricity: f64,
    pub inclination_deg: Inclination,
    #[serde(default)]
    pub raan_deg: f64,
    #[serde(default)]
    pub arg_perigee_deg: f64,
    #[serde(default)]
    pub true_anomaly_deg: f64,
    pub sensor: SensorConfig,
    pub latitude_deg: f64,
    /// Walker pattern `t/p/f`; a single satellite when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walker: Option<String>,
    /// Explicit plane layout; replaces `walker`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planes: Option<Vec<PlaneConfig>>,
    #[serde(default = "default_window_days")]
    pub window_days: f64,
    #[serde(default = "default_grid_res_deg")]
    pub grid_res_deg: f64,
    #[serde(default = "default_segment_samples")]
    pub segment_samples: usize,
    /// `ellipse` (default) or `small_circle`.
    #[serde(default)]
    pub footprint: FootprintShape,
}

/// A case converted to core types.
#[derive(Debug, Clone)]
pub struct ResolvedCase {
    pub constellation: Constellation,
    pub sensor: SensorSpec,
    pub latitude: f64,
    pub settings: CoverageSettings,
    pub walker: Option<WalkerConfig>,
}

impl CaseConfig {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("reading {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("case config: {e}")))
    }

    pub fn semi_major_axis(&self, earth: &EarthConstants) -> Result<f64, CliError> {
        match (self.altitude_km, self.semi_major_axis_km) {
            (Some(h), None) => Ok(earth.equatorial_radius + h),
            (None, Some(a)) => Ok(a),
            (Some(_), Some(_)) => Err(CliError::Config(
                "give either altitude_km or semi_major_axis_km, not both".into(),
            )),
            (None, None) => Err(CliError::Config(
                "altitude_km or semi_major_axis_km is required".into(),
            )),
        }
    }

    /// Altitude of the semi-major axis above the equatorial radius.
    pub fn altitude(&self, earth: &EarthConstants) -> Result<f64, CliError> {
        Ok(self.semi_major_axis(earth)? - earth.equatorial_radius)
    }

    pub fn inclination(&self, earth: &EarthConstants) -> Result<f64, CliError> {
        match self.inclination_deg {
            Inclination::Degrees(d) => Ok(d.to_radians()),
            Inclination::Keyword(InclinationKeyword::Sso) => {
                Ok(earth.sso_inclination(self.semi_major_axis(earth)?, self.eccentricity)?)
            }
        }
    }

    pub fn walker_config(&self) -> Result<Option<WalkerConfig>, CliError> {
        self.walker
            .as_deref()
            .map(str::parse)
            .transpose()
            .map_err(CliError::from)
    }

    pub fn resolve(
        &self,
        earth: &EarthConstants,
        parallelism: Parallelism,
    ) -> Result<ResolvedCase, CliError> {
        if !(self.window_days > 0.0 && self.window_days.is_finite()) {
            return Err(CliError::Config(format!(
                "window_days must be positive, got {}",
                self.window_days
            )));
        }
        let reference = OrbitElements {
            semi_major_axis: self.semi_major_axis(earth)?,
            eccentricity: self.eccentricity,
            inclination: self.inclination(earth)?,
            raan: self.raan_deg.to_radians(),
            arg_perigee: self.arg_perigee_deg.to_radians(),
            true_anomaly: self.true_anomaly_deg.to_radians(),
        };
        let walker = self.walker_config()?;
        let constellation = match (&self.planes, walker) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "give either walker or planes, not both".into(),
                ));
            }
            (Some(planes), None) => {
                let planes: Vec<PlaneOverride> = planes
                    .iter()
                    .map(|p| PlaneOverride {
                        raan_offset: p.raan_offset_deg.to_radians(),
                        phase_leads: p.phase_deg.iter().map(|d| d.to_radians()).collect(),
                    })
                    .collect();
                Constellation::custom(reference, &planes)?
            }
            (None, Some(w)) => Constellation::walker(reference, &w),
            (None, None) => Constellation::single(reference),
        };
        Ok(ResolvedCase {
            constellation,
            sensor: self.sensor.to_spec(),
            latitude: self.latitude_deg.to_radians(),
            settings: CoverageSettings {
                window: self.window_days * 86_400.0,
                grid_resolution: self.grid_res_deg.to_radians(),
                segment_samples: self.segment_samples,
                footprint_shape: self.footprint,
                parallelism,
                ..CoverageSettings::default()
            },
            walker,
        })
    }
}

/// Parameters a sweep axis may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    AltitudeKm,
    InclinationDeg,
    Eccentricity,
    LatitudeDeg,
    /// Value of whichever sensor mode the base case uses.
    SensorDeg,
    WindowDays,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl SweepAxis {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let SweepAxis { min, max, step, .. } = *self;
        if !(step > 0.0 && step.is_finite()) {
            return Err(CliError::Config(format!(
                "sweep step must be positive, got {step}"
            )));
        }
        if !(max >= min && min.is_finite() && max.is_finite()) {
            return Err(CliError::Config(format!(
                "empty sweep range [{min}, {max}]"
            )));
        }
        let n = ((max - min) / step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|k| min + k as f64 * step).collect())
    }
}

/// One or two swept parameters over a fixed base case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: CaseConfig,
    pub axes: Vec<SweepAxis>,
}

impl SweepSpec {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("reading {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("sweep config: {e}")))
    }

    /// Every cell of the sweep, first axis varying slowest.
    pub fn cells(&self) -> Result<Vec<CaseConfig>, CliError> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(CliError::Config(format!(
                "a sweep needs 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(CliError::Config(
                "sweep axes must vary different parameters".into(),
            ));
        }
        let mut cells = vec![self.base.clone()];
        for axis in &self.axes {
            let values = axis.values()?;
            cells = cells
                .iter()
                .flat_map(|c| values.iter().map(move |&v| apply(c, axis.param, v)))
                .collect();
        }
        Ok(cells)
    }
}

fn apply(base: &CaseConfig, param: SweepParam, v: f64) -> CaseConfig {
    let mut c = base.clone();
    match param {
        SweepParam::AltitudeKm => {
            c.altitude_km = Some(v);
            c.semi_major_axis_km = None;
        }
        SweepParam::InclinationDeg => c.inclination_deg = Inclination::Degrees(v),
        SweepParam::Eccentricity => c.eccentricity = v,
        SweepParam::LatitudeDeg => c.latitude_deg = v,
        SweepParam::SensorDeg => c.sensor = c.sensor.with_degrees(v),
        SweepParam::WindowDays => c.window_days = v,
    }
    c
}
