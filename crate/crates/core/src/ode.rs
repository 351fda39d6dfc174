//! Fixed-step classical Runge–Kutta integration on a uniform grid.

use crate::grid::Grid;

/// Integrates `y' = rhs(s, y)` with one RK4 step per grid interval and returns
/// the state at every grid sample.
pub fn rk4<const M: usize, F>(grid: &Grid, y0: [f64; M], mut rhs: F) -> Vec<[f64; M]>
where
    F: FnMut(f64, &[f64; M]) -> [f64; M],
{
    let h = grid.h();
    let mut out = Vec::with_capacity(grid.len());
    let mut y = y0;
    out.push(y);
    for i in 0..grid.n {
        let s = grid.s(i);
        let k1 = rhs(s, &y);
        let k2 = rhs(s + 0.5 * h, &axpy(&y, 0.5 * h, &k1));
        let k3 = rhs(s + 0.5 * h, &axpy(&y, 0.5 * h, &k2));
        let k4 = rhs(s + h, &axpy(&y, h, &k3));
        for j in 0..M {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        out.push(y);
    }
    out
}

fn axpy<const M: usize>(y: &[f64; M], a: f64, k: &[f64; M]) -> [f64; M] {
    let mut r = *y;
    for j in 0..M {
        r[j] += a * k[j];
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_fourth_order() {
        let err = |n| {
            let g = Grid::new(0.0, 1.0, n).unwrap();
            let ys = rk4(&g, [1.0], |_, y| [y[0]]);
            (ys[n][0] - 1f64.exp()).abs()
        };
        let ratio = err(32) / err(64);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn zero_rhs_is_stationary() {
        let g = Grid::new(0.0, 3.0, 17).unwrap();
        let ys = rk4(&g, [0.25, -1.0], |_, _| [0.0, 0.0]);
        assert!(ys.iter().all(|y| *y == [0.25, -1.0]));
    }
}
