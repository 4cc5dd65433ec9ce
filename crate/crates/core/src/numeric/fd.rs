//! Finite-difference differentiation on arbitrary strictly increasing grids.
//!
//! Weights come from Fornberg's recurrence, so stencils stay exact on
//! polynomials up to the stencil's design order even on non-uniform grids.
//! Interior nodes get a centered five-point stencil (4th order for the first
//! derivative on uniform grids); the two nodes at each end fall back to
//! one-sided stencils (2nd order).

use super::{validate_grid, Linear};
use crate::error::{Error, Result};

/// Fornberg weights: differentiate order-`m` at point `z` from nodes `xs`.
///
/// Returns one weight per node; `sum_j w_j f(x_j)` approximates the m-th
/// derivative at `z` and is exact for polynomials of degree `< xs.len()`.
pub fn fornberg_weights(z: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(n > m, "need more than {m} nodes for derivative order {m}");
    // c[j][k]: weight of node j for derivative order k
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// First- and second-derivative weights anchored at one grid node.
#[derive(Debug, Clone)]
pub struct NodeStencil {
    /// Index of the first grid node the weights apply to.
    pub start: usize,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

/// Per-node differentiation stencils for a whole grid.
#[derive(Debug, Clone)]
pub struct StencilSet {
    pub nodes: Vec<NodeStencil>,
}

/// Design order of the interior stencils.
pub const STENCIL_ORDER: usize = 4;

/// Minimum grid length the stencil layout supports.
pub const MIN_GRID_LEN: usize = 5;

/// Builds differentiation stencils for every node of `ts`.
///
/// Interior nodes (two or more nodes from each end) use the centered
/// five-point stencil. Each boundary pair uses a one-sided three-point
/// stencil for the first derivative and a four-point one for the second.
pub fn derivative_stencils(ts: &[f64]) -> Result<StencilSet> {
    validate_grid(ts)?;
    let n = ts.len();
    if n < MIN_GRID_LEN {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_GRID_LEN} grid nodes for differentiation, got {n}"
        )));
    }
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let stencil = if i >= 2 && i + 2 < n {
            let start = i - 2;
            let xs = &ts[start..start + 5];
            NodeStencil {
                start,
                d1: fornberg_weights(ts[i], xs, 1),
                d2: fornberg_weights(ts[i], xs, 2),
            }
        } else {
            let (s1, s2) = if i < 2 { (0, 0) } else { (n - 3, n - 4) };
            NodeStencil {
                start: s2,
                d1: padded(fornberg_weights(ts[i], &ts[s1..s1 + 3], 1), s1 - s2, 4),
                d2: fornberg_weights(ts[i], &ts[s2..s2 + 4], 2),
            }
        };
        nodes.push(stencil);
    }
    Ok(StencilSet { nodes })
}

/// Embeds a short weight row into a wider stencil window at `offset`.
fn padded(w: Vec<f64>, offset: usize, width: usize) -> Vec<f64> {
    let mut out = vec![0.0; width];
    out[offset..offset + w.len()].copy_from_slice(&w);
    out
}

impl StencilSet {
    /// Applies one node's weight row to a sample buffer.
    fn apply_row<T: Linear>(&self, i: usize, weights: &[f64], values: &[T]) -> T {
        let start = self.nodes[i].start;
        weights
            .iter()
            .enumerate()
            .fold(T::ZERO, |acc, (j, &w)| acc.add(values[start + j].scale(w)))
    }

    /// First derivative at node `i`.
    pub fn d1_at<T: Linear>(&self, i: usize, values: &[T]) -> T {
        self.apply_row(i, &self.nodes[i].d1, values)
    }

    /// Second derivative at node `i`.
    pub fn d2_at<T: Linear>(&self, i: usize, values: &[T]) -> T {
        self.apply_row(i, &self.nodes[i].d2, values)
    }
}
