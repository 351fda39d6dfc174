//! Second-order finite-difference derivatives of uniformly sampled data.
//!
//! Central three-point stencils for orders 1–2, the four-point central stencil
//! for order 3, one-sided second-order stencils where the central ones do not fit.

/// Derivative of the given order (1..=3) at sample `i`.
///
/// Requires at least `order + 2` samples.
pub fn derivative(f: &[f64], h: f64, i: usize, order: usize) -> f64 {
    let n = f.len();
    debug_assert!(n >= order + 2, "too few samples for order {order}");
    match order {
        1 => {
            if i == 0 {
                (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            }
        }
        2 => {
            if i == 0 {
                (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h)
            } else if i == n - 1 {
                (2.0 * f[i] - 5.0 * f[i - 1] + 4.0 * f[i - 2] - f[i - 3]) / (h * h)
            } else {
                (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h)
            }
        }
        3 => {
            let h3 = 2.0 * h * h * h;
            if i < 2 {
                (-5.0 * f[i] + 18.0 * f[i + 1] - 24.0 * f[i + 2] + 14.0 * f[i + 3] - 3.0 * f[i + 4]) / h3
            } else if i + 2 >= n {
                (5.0 * f[i] - 18.0 * f[i - 1] + 24.0 * f[i - 2] - 14.0 * f[i - 3] + 3.0 * f[i - 4]) / h3
            } else {
                (f[i + 2] - 2.0 * f[i + 1] + 2.0 * f[i - 1] - f[i - 2]) / h3
            }
        }
        _ => panic!("unsupported derivative order {order}"),
    }
}

/// Number of boundary samples on each side that use one-sided stencils.
pub const BOUNDARY: usize = 2;
