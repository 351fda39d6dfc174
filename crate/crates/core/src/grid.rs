use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform arc-length grid with `n` intervals (`n + 1` samples).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub s_min: f64,
    pub s_max: f64,
    pub n: usize,
}

/// Relative spacing deviation accepted when reading tabulated grids.
const UNIFORM_RTOL: f64 = 1e-9;

impl Grid {
    pub fn new(s_min: f64, s_max: f64, n: usize) -> Result<Self> {
        if !(s_min.is_finite() && s_max.is_finite()) {
            return Err(Error::InvalidGrid("grid bounds must be finite".into()));
        }
        if s_max <= s_min {
            return Err(Error::InvalidGrid(format!("s_max ({s_max}) must exceed s_min ({s_min})")));
        }
        if n == 0 {
            return Err(Error::InvalidGrid("at least one interval required".into()));
        }
        Ok(Grid { s_min, s_max, n })
    }

    /// Recover the grid from tabulated sample positions, rejecting non-uniform spacing.
    ///
    /// `first_row` is the row number of `samples[0]` for error messages.
    pub fn from_samples(samples: &[f64], first_row: usize) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidGrid(format!("{} samples, at least 2 required", samples.len())));
        }
        let n = samples.len() - 1;
        let h = (samples[n] - samples[0]) / n as f64;
        if !(h > 0.0) {
            return Err(Error::NonUniformGrid { row: first_row + 1, expected: h, found: samples[1] - samples[0] });
        }
        for (i, w) in samples.windows(2).enumerate() {
            let found = w[1] - w[0];
            if !((found - h).abs() <= UNIFORM_RTOL * h) {
                return Err(Error::NonUniformGrid { row: first_row + i + 1, expected: h, found });
            }
        }
        Grid::new(samples[0], samples[n], n)
    }

    pub fn h(&self) -> f64 {
        (self.s_max - self.s_min) / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn s(&self, i: usize) -> f64 {
        if i == self.n {
            self.s_max
        } else {
            self.s_min + i as f64 * self.h()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.s(i)).collect()
    }

    /// Grids agree when their bounds and sizes match to round-off.
    pub fn matches(&self, other: &Grid) -> bool {
        let tol = 1e-12 * self.s_min.abs().max(self.s_max.abs()).max(1.0);
        self.n == other.n && (self.s_min - other.s_min).abs() <= tol && (self.s_max - other.s_max).abs() <= tol
    }
}
