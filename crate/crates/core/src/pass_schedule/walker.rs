use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    eccentric_to_true, mean_to_eccentric, true_to_mean, wrap_pi, OrbitElements, Pass, PassSet,
};
use crate::error::{Result, RevisitError};

/// Walker delta pattern `t/p/f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkerConfig {
    pub total: u32,
    pub planes: u32,
    pub phasing: u32,
}

impl WalkerConfig {
    pub fn new(total: u32, planes: u32, phasing: u32) -> Result<Self> {
        let cfg = WalkerConfig {
            total,
            planes,
            phasing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn single() -> Self {
        WalkerConfig {
            total: 1,
            planes: 1,
            phasing: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let WalkerConfig {
            total,
            planes,
            phasing,
        } = *self;
        if planes == 0 || total == 0 {
            return Err(RevisitError::invalid(
                "walker",
                format!("{self}: t and p must be positive"),
            ));
        }
        if total % planes != 0 {
            return Err(RevisitError::invalid(
                "walker",
                format!("{self}: p does not divide t"),
            ));
        }
        if phasing >= planes {
            return Err(RevisitError::invalid(
                "walker",
                format!("{self}: f must be below p"),
            ));
        }
        Ok(())
    }

    pub fn sats_per_plane(&self) -> u32 {
        self.total / self.planes
    }

    /// One slot per satellite, plane-major.
    pub fn slots(&self) -> Vec<SatelliteSlot> {
        let s = self.sats_per_plane();
        let (t, p, f) = (self.total as f64, self.planes as f64, self.phasing as f64);
        let mut out = Vec::with_capacity(self.total as usize);
        for m in 0..self.planes {
            for l in 0..s {
                out.push(SatelliteSlot {
                    plane: m,
                    index: l,
                    raan_offset: TAU * m as f64 / p,
                    phase_lead: (l as f64 / s as f64 + m as f64 * f / t).rem_euclid(1.0),
                });
            }
        }
        out
    }
}

impl fmt::Display for WalkerConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.total, self.planes, self.phasing)
    }
}

impl FromStr for WalkerConfig {
    type Err = RevisitError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('/').collect();
        let bad = || RevisitError::invalid("walker", format!("expected t/p/f, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n = |x: &str| x.trim().parse::<u32>().map_err(|_| bad());
        WalkerConfig::new(n(parts[0])?, n(parts[1])?, n(parts[2])?)
    }
}

/// Position of one satellite relative to the reference satellite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatelliteSlot {
    pub plane: u32,
    pub index: u32,
    /// RAAN offset from the reference plane (rad).
    pub raan_offset: f64,
    /// Fraction of a revolution this satellite leads the reference, in [0, 1).
    pub phase_lead: f64,
}

/// Explicit plane layout for non-Walker constellations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneOverride {
    /// RAAN offset from the reference plane (rad).
    pub raan_offset: f64,
    /// In-track lead of each satellite in the plane (rad of argument of latitude).
    pub phase_leads: Vec<f64>,
}

pub fn slots_from_overrides(planes: &[PlaneOverride]) -> Result<Vec<SatelliteSlot>> {
    if planes.is_empty() || planes.iter().any(|p| p.phase_leads.is_empty()) {
        return Err(RevisitError::invalid(
            "planes",
            "every plane needs at least one satellite",
        ));
    }
    let mut out = Vec::new();
    for (m, plane) in planes.iter().enumerate() {
        if !plane.raan_offset.is_finite() || plane.phase_leads.iter().any(|x| !x.is_finite()) {
            return Err(RevisitError::invalid("planes", "offsets must be finite"));
        }
        for (l, lead) in plane.phase_leads.iter().enumerate() {
            out.push(SatelliteSlot {
                plane: m as u32,
                index: l as u32,
                raan_offset: plane.raan_offset,
                phase_lead: (lead / TAU).rem_euclid(1.0),
            });
        }
    }
    Ok(out)
}

/// Replicate the reference satellite's passes for every slot.
///
/// A satellite leading by a fraction `x` of a revolution reaches each crossing
/// `x` nodal periods earlier, where the Earth has turned `x` ground-track
/// shifts less. Passes that would fall before the window are replaced by the
/// same satellite's next revolution, so every slot keeps the reference pass
/// count.
pub fn expand_slots(base: &PassSet, slots: &[SatelliteSlot]) -> PassSet {
    let period = base.nodal_period;
    let shift = base.ground_track_shift;
    let mut passes = Vec::with_capacity(base.passes.len() * slots.len());
    for (k, slot) in slots.iter().enumerate() {
        for pass in &base.passes {
            let first = pass.epoch - pass.revolution as f64 * period;
            let wrap = if first - slot.phase_lead * period < 0.0 {
                1.0
            } else {
                0.0
            };
            let step = wrap - slot.phase_lead;
            passes.push(Pass {
                longitude: wrap_pi(pass.longitude + slot.raan_offset + step * shift),
                epoch: pass.epoch + step * period,
                direction: pass.direction,
                plane_index: slot.plane,
                sat_index: k as u32,
                revolution: pass.revolution,
            });
        }
    }
    let mut out = PassSet {
        passes,
        ground_track_shift: shift,
        nodal_period: period,
    };
    out.sort();
    out
}

pub fn walker_expand(base: &PassSet, cfg: &WalkerConfig) -> PassSet {
    expand_slots(base, &cfg.slots())
}

/// Initial elements of the satellite occupying `slot`.
pub fn slot_elements(base: &OrbitElements, slot: &SatelliteSlot) -> Result<OrbitElements> {
    let e = base.eccentricity;
    let m0 = true_to_mean(base.true_anomaly, e) + TAU * slot.phase_lead;
    let nu = eccentric_to_true(mean_to_eccentric(m0, e)?, e);
    Ok(OrbitElements {
        raan: base.raan + slot.raan_offset,
        true_anomaly: wrap_pi(nu),
        ..*base
    })
}
