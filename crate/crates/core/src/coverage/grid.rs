use std::f64::consts::{PI, TAU};

use crate::error::{Result, RevisitError};

/// Tolerance, in grid cells, for a point sitting on a footprint edge.
const EDGE_EPS: f64 = 1e-9;

/// Equally spaced longitudes around a latitude ring, starting at -pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongitudeGrid {
    count: usize,
    spacing: f64,
}

impl LongitudeGrid {
    /// Grid with spacing close to `resolution` (rad) that divides the circle
    /// exactly. The resolution must lie in (0, 1 deg].
    pub fn new(resolution: f64) -> Result<Self> {
        if !(resolution > 0.0 && resolution <= 1f64.to_radians() * (1.0 + 1e-12)) {
            return Err(RevisitError::invalid(
                "grid_resolution",
                format!("{} deg not in (0, 1]", resolution.to_degrees()),
            ));
        }
        let count = (TAU / resolution).round() as usize;
        Ok(LongitudeGrid::with_count(count))
    }

    pub fn with_count(count: usize) -> Self {
        assert!(count > 0);
        LongitudeGrid {
            count,
            spacing: TAU / count as f64,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn longitude(&self, j: usize) -> f64 {
        -PI + j as f64 * self.spacing
    }

    pub fn longitudes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|j| self.longitude(j))
    }

    /// Unwrapped index range `[lo, hi]` of grid points inside the closed
    /// longitude interval `[lon - half, lon + half]`. Empty when `lo > hi`.
    pub(crate) fn index_span(&self, lon: f64, half: f64) -> (i64, i64) {
        let x_lo = (lon - half + PI) / self.spacing;
        let x_hi = (lon + half + PI) / self.spacing;
        (
            (x_lo - EDGE_EPS).ceil() as i64,
            (x_hi + EDGE_EPS).floor() as i64,
        )
    }

    pub(crate) fn wrap(&self, i: i64) -> usize {
        i.rem_euclid(self.count as i64) as usize
    }
}

pub fn build_grid(resolution: f64) -> Result<LongitudeGrid> {
    LongitudeGrid::new(resolution)
}
