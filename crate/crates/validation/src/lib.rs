//! Maximum-revisit-time reference values and helpers for checking
//! the engine against them.

use revisit_core::coverage::{analyze, CoverageResult, CoverageSettings};
use revisit_core::pass_schedule::OrbitElements;
use revisit_core::{Constellation, EarthConstants, Result, SensorSpec, WalkerConfig};

/// Single satellite over the equator with an elevation mask.
#[derive(Debug, Clone, Copy)]
pub struct EquatorCase {
    pub altitude_km: f64,
    pub inclination_deg: f64,
    pub elevation_deg: f64,
    pub mrt_hours: f64,
}

const fn eq(
    altitude_km: f64,
    inclination_deg: f64,
    elevation_deg: f64,
    mrt_hours: f64,
) -> EquatorCase {
    EquatorCase {
        altitude_km,
        inclination_deg,
        elevation_deg,
        mrt_hours,
    }
}

pub const EQUATOR_CASES: [EquatorCase; 10] = [
    eq(400.0, 20.0, 10.0, 9.78),
    eq(400.0, 20.0, 40.0, 24.65),
    eq(400.0, 60.0, 10.0, 13.08),
    eq(400.0, 60.0, 40.0, 59.37),
    eq(800.0, 20.0, 10.0, 5.32),
    eq(800.0, 20.0, 40.0, 10.79),
    eq(800.0, 60.0, 10.0, 10.76),
    eq(800.0, 60.0, 40.0, 23.48),
    eq(550.0, 97.59, 20.0, 109.30),
    eq(700.0, 98.19, 30.0, 35.38),
];

/// Sun-synchronous 500 km orbit, 30 deg elevation mask, varying latitude.
pub const LATITUDE_ORBIT: (f64, f64, f64) = (500.0, 97.41, 30.0);

/// (latitude deg, MRT h)
pub const LATITUDE_CASES: [(f64, f64); 17] = [
    (0.0, 72.59),
    (5.0, 84.38),
    (10.0, 60.66),
    (15.0, 60.60),
    (20.0, 36.88),
    (25.0, 36.83),
    (30.0, 23.65),
    (35.0, 35.78),
    (40.0, 35.83),
    (45.0, 35.88),
    (50.0, 25.23),
    (55.0, 14.46),
    (60.0, 14.41),
    (65.0, 14.36),
    (70.0, 14.32),
    (75.0, 14.28),
    (80.0, 14.24),
];

/// Three-satellite Walker constellations over the equator.
#[derive(Debug, Clone, Copy)]
pub struct WalkerCase {
    pub inclination_deg: f64,
    pub pattern: &'static str,
    pub altitude_km: f64,
    pub elevation_deg: f64,
    pub mrt_hours: f64,
    /// Earlier, less accurate analytical estimates for the same case.
    pub earlier_estimates: &'static [f64],
}

pub const WALKER_CASES: [WalkerCase; 3] = [
    WalkerCase {
        inclination_deg: 90.0,
        pattern: "3/3/0",
        altitude_km: 700.0,
        elevation_deg: 0.0,
        mrt_hours: 2.30,
        earlier_estimates: &[2.60],
    },
    WalkerCase {
        inclination_deg: 86.0,
        pattern: "3/3/0",
        altitude_km: 1100.0,
        elevation_deg: 10.0,
        mrt_hours: 4.25,
        earlier_estimates: &[4.35, 4.46],
    },
    WalkerCase {
        inclination_deg: 96.0,
        pattern: "3/3/1",
        altitude_km: 1500.0,
        elevation_deg: 20.0,
        mrt_hours: 3.38,
        earlier_estimates: &[3.78],
    },
];

pub fn run_equator_case(c: &EquatorCase, settings: &CoverageSettings) -> Result<CoverageResult> {
    let earth = EarthConstants::WGS84;
    let el = OrbitElements::circular(&earth, c.altitude_km, c.inclination_deg.to_radians());
    analyze(
        &earth,
        &Constellation::single(el),
        &SensorSpec::elevation_deg(c.elevation_deg),
        0.0,
        settings,
    )
}

pub fn run_latitude_case(lat_deg: f64, settings: &CoverageSettings) -> Result<CoverageResult> {
    let earth = EarthConstants::WGS84;
    let (h, i, eps) = LATITUDE_ORBIT;
    let el = OrbitElements::circular(&earth, h, i.to_radians());
    analyze(
        &earth,
        &Constellation::single(el),
        &SensorSpec::elevation_deg(eps),
        lat_deg.to_radians(),
        settings,
    )
}

pub fn run_walker_case(c: &WalkerCase, settings: &CoverageSettings) -> Result<CoverageResult> {
    let earth = EarthConstants::WGS84;
    let el = OrbitElements::circular(&earth, c.altitude_km, c.inclination_deg.to_radians());
    let pattern: WalkerConfig = c.pattern.parse()?;
    analyze(
        &earth,
        &Constellation::walker(el, &pattern),
        &SensorSpec::elevation_deg(c.elevation_deg),
        0.0,
        settings,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_equator_case_within_tolerance() {
        let r = run_equator_case(&EQUATOR_CASES[0], &CoverageSettings::default()).unwrap();
        assert!((r.report.mrt_hours.unwrap() - 9.78).abs() <= 0.02);
    }

    #[test]
    fn walker_patterns_parse() {
        for c in &WALKER_CASES {
            assert!(c.pattern.parse::<WalkerConfig>().is_ok());
        }
    }
}
