//! Grid-based numerical kernels shared by the curve modules: finite-difference
//! stencils on arbitrary strictly increasing grids, cumulative quadrature, and
//! the interpolation machinery used for arc-length work.

pub mod fd;
pub mod interp;
pub mod quad;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use num_complex::Complex64;

/// Values that live in a real vector space: enough structure for quadrature
/// and interpolation of real-, complex-, and quaternion-valued samples.
pub trait Linear: Copy {
    const ZERO: Self;
    fn add(self, rhs: Self) -> Self;
    fn scale(self, s: f64) -> Self;
}

impl Linear for f64 {
    const ZERO: f64 = 0.0;
    fn add(self, rhs: f64) -> f64 {
        self + rhs
    }
    fn scale(self, s: f64) -> f64 {
        self * s
    }
}

impl Linear for Complex64 {
    const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
    fn add(self, rhs: Complex64) -> Complex64 {
        self + rhs
    }
    fn scale(self, s: f64) -> Complex64 {
        self * s
    }
}

impl Linear for Quaternion {
    const ZERO: Quaternion = Quaternion::ZERO;
    fn add(self, rhs: Quaternion) -> Quaternion {
        self + rhs
    }
    fn scale(self, s: f64) -> Quaternion {
        Quaternion::scale(&self, s)
    }
}

/// Validates a parameter grid: finite values, strictly increasing.
pub fn validate_grid(ts: &[f64]) -> Result<()> {
    for (i, &t) in ts.iter().enumerate() {
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!("grid value at index {i} is not finite")));
        }
        if i > 0 && t <= ts[i - 1] {
            return Err(Error::InvalidInput(format!(
                "grid is not strictly increasing at index {i} ({} then {t})",
                ts[i - 1]
            )));
        }
    }
    Ok(())
}

/// Index `k` such that `xs[k] <= x < xs[k+1]`, clamped to `[0, n-2]`.
/// Assumes `xs` strictly increasing with at least two entries.
pub(crate) fn bracket(xs: &[f64], x: f64) -> usize {
    let k = xs.partition_point(|&v| v <= x);
    k.saturating_sub(1).min(xs.len() - 2)
}
