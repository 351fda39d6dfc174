use std::sync::Arc;

use crate::grid::Grid;

/// Scalar function of arc length.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub fn constant(c: f64) -> ScalarFn {
    Arc::new(move |_| c)
}

/// Samples on a uniform grid, evaluated between nodes by four-point Lagrange
/// interpolation (fourth-order, matching the RK4 stage points).
#[derive(Clone, Debug)]
pub struct Tabulated {
    grid: Grid,
    values: Vec<f64>,
}

impl Tabulated {
    pub fn new(grid: Grid, values: Vec<f64>) -> Self {
        assert_eq!(grid.len(), values.len(), "one value per grid sample");
        Tabulated { grid, values }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let h = self.grid.h();
        let n = self.grid.n;
        let t = (s - self.grid.s_min) / h;
        let i = t.floor().clamp(0.0, n as f64) as usize;
        if n < 3 {
            // linear fallback for tiny grids
            let i = i.min(n - 1);
            let w = t - i as f64;
            return self.values[i] * (1.0 - w) + self.values[i + 1] * w;
        }
        let start = i.saturating_sub(1).min(n - 3);
        let x = t - start as f64;
        let nodes = [0.0, 1.0, 2.0, 3.0];
        let mut acc = 0.0;
        for j in 0..4 {
            let mut l = 1.0;
            for k in 0..4 {
                if k != j {
                    l *= (x - nodes[k]) / (nodes[j] - nodes[k]);
                }
            }
            acc += l * self.values[start + j];
        }
        acc
    }

    pub fn into_fn(self) -> ScalarFn {
        Arc::new(move |s| self.eval(s))
    }
}
