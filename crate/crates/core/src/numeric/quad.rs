//! Cumulative composite quadrature on strictly increasing grids.
//!
//! Each consecutive node triple carries a quadratic interpolant; every
//! interior interval receives the estimates from both triples containing it
//! and takes their mean. On uniform grids the leading error terms of the two
//! estimates cancel, giving 4th-order accuracy (the cumulative counterpart of
//! composite Simpson); end intervals keep a single estimate.

use super::{validate_grid, Linear};
use crate::error::{Error, Result};

/// Cumulative integral `F[i] = ∫_{t₀}^{tᵢ} f`, with `F[0] = 0`.
///
/// Sample types may be real, complex, or quaternion-valued. Requires at
/// least two nodes; with exactly two, the trapezoid rule is used.
pub fn cumulative_integral<T: Linear>(ts: &[f64], values: &[T]) -> Result<Vec<T>> {
    validate_grid(ts)?;
    let n = ts.len();
    if n != values.len() {
        return Err(Error::InvalidInput(format!(
            "grid and sample lengths differ: {n} vs {}",
            values.len()
        )));
    }
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 samples to integrate".into()));
    }
    if n == 2 {
        let h = ts[1] - ts[0];
        return Ok(vec![T::ZERO, values[0].add(values[1]).scale(0.5 * h)]);
    }

    // Accumulate per-interval estimates from each covering triple.
    let mut sums = vec![T::ZERO; n - 1];
    let mut counts = vec![0u32; n - 1];
    for i in 0..n - 2 {
        let (f0, f1, f2) = (values[i], values[i + 1], values[i + 2]);
        let h0 = ts[i + 1] - ts[i];
        let h1 = ts[i + 2] - ts[i + 1];
        let total = h0 + h1;
        // integral of the interpolating quadratic over the left subinterval
        let left = f0
            .scale(h0 * (2.0 * h0 + 3.0 * h1) / (6.0 * total))
            .add(f1.scale(h0 * (h0 + 3.0 * h1) / (6.0 * h1)))
            .add(f2.scale(-h0 * h0 * h0 / (6.0 * total * h1)));
        // ... and over the right subinterval
        let right = f2
            .scale(h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * total))
            .add(f1.scale(h1 * (h1 + 3.0 * h0) / (6.0 * h0)))
            .add(f0.scale(-h1 * h1 * h1 / (6.0 * total * h0)));
        sums[i] = sums[i].add(left);
        counts[i] += 1;
        sums[i + 1] = sums[i + 1].add(right);
        counts[i + 1] += 1;
    }

    let mut out = Vec::with_capacity(n);
    out.push(T::ZERO);
    let mut acc = T::ZERO;
    for (sum, count) in sums.into_iter().zip(counts) {
        acc = acc.add(sum.scale(1.0 / f64::from(count)));
        out.push(acc);
    }
    Ok(out)
}

/// Definite integral over the whole grid.
pub fn integral<T: Linear>(ts: &[f64], values: &[T]) -> Result<T> {
    Ok(*cumulative_integral(ts, values)?.last().unwrap())
}
