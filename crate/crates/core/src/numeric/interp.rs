//! Interpolation utilities: natural cubic splines for resampling curve
//! components, C¹ monotone cubic maps (value + slope data) with numerical
//! inversion for arc-length work, and piecewise-linear lookup.

use super::{bracket, validate_grid, Linear};
use crate::error::{Error, Result};

// ── Natural cubic spline ─────────────────────────────────────────────

/// Natural cubic spline through `(xs, ys)`; second derivative zero at ends.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the nodes.
    m: Vec<f64>,
}

impl CubicSpline {
    /// Natural spline: second derivative zero at both ends.
    pub fn new(xs: &[f64], ys: &[f64]) -> Result<Self> {
        Self::build(xs, ys, None)
    }

    /// Clamped spline: first derivatives prescribed at both ends. Exact on
    /// cubics and free of the natural spline's end-condition error when the
    /// true end slopes are known.
    pub fn clamped(xs: &[f64], ys: &[f64], d_first: f64, d_last: f64) -> Result<Self> {
        Self::build(xs, ys, Some((d_first, d_last)))
    }

    fn build(xs: &[f64], ys: &[f64], end_slopes: Option<(f64, f64)>) -> Result<Self> {
        validate_grid(xs)?;
        let n = xs.len();
        if n != ys.len() {
            return Err(Error::InvalidInput(format!(
                "node and value lengths differ: {n} vs {}",
                ys.len()
            )));
        }
        if n < 2 {
            return Err(Error::InvalidInput("spline needs at least 2 nodes".into()));
        }
        // Tridiagonal system over the node second derivatives M. Natural
        // splines pin the end values to zero; clamped splines get boundary
        // equations from the prescribed end slopes.
        let mut lower = vec![0.0; n];
        let mut diag = vec![1.0; n];
        let mut upper = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            lower[i] = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
        }
        if let Some((d0, dn)) = end_slopes {
            let h0 = xs[1] - xs[0];
            diag[0] = h0 / 3.0;
            upper[0] = h0 / 6.0;
            rhs[0] = (ys[1] - ys[0]) / h0 - d0;
            let hn = xs[n - 1] - xs[n - 2];
            lower[n - 1] = hn / 6.0;
            diag[n - 1] = hn / 3.0;
            rhs[n - 1] = dn - (ys[n - 1] - ys[n - 2]) / hn;
        }
        // Thomas solve
        let mut m = vec![0.0; n];
        for i in 1..n {
            let w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }
        Ok(CubicSpline { xs: xs.to_vec(), ys: ys.to_vec(), m })
    }

    /// Evaluates the spline; `x` is clamped to the node span.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], self.xs[self.xs.len() - 1]);
        let k = bracket(&self.xs, x);
        let h = self.xs[k + 1] - self.xs[k];
        let a = self.xs[k + 1] - x;
        let b = x - self.xs[k];
        self.m[k] * a * a * a / (6.0 * h)
            + self.m[k + 1] * b * b * b / (6.0 * h)
            + (self.ys[k] / h - self.m[k] * h / 6.0) * a
            + (self.ys[k + 1] / h - self.m[k + 1] * h / 6.0) * b
    }
}

// ── Monotone cubic map (Hermite data) ────────────────────────────────

/// C¹ piecewise-cubic map built from values and slopes at the nodes,
/// intended for strictly increasing data (e.g. cumulative arc length with
/// the speed as slope). Supports numerical inversion.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    dys: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: &[f64], ys: &[f64], dys: &[f64]) -> Result<Self> {
        validate_grid(xs)?;
        if xs.len() != ys.len() || xs.len() != dys.len() {
            return Err(Error::InvalidInput("value/slope lengths must match the grid".into()));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput("monotone map needs at least 2 nodes".into()));
        }
        if ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("map values must be strictly increasing".into()));
        }
        Ok(MonotoneCubic { xs: xs.to_vec(), ys: ys.to_vec(), dys: dys.to_vec() })
    }

    pub fn x_span(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn y_span(&self) -> (f64, f64) {
        (self.ys[0], self.ys[self.ys.len() - 1])
    }

    /// Evaluates the map; `x` is clamped to the node span.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], self.xs[self.xs.len() - 1]);
        let k = bracket(&self.xs, x);
        let h = self.xs[k + 1] - self.xs[k];
        let u = (x - self.xs[k]) / h;
        let (u2, u3) = (u * u, u * u * u);
        self.ys[k] * (2.0 * u3 - 3.0 * u2 + 1.0)
            + h * self.dys[k] * (u3 - 2.0 * u2 + u)
            + self.ys[k + 1] * (-2.0 * u3 + 3.0 * u2)
            + h * self.dys[k + 1] * (u3 - u2)
    }

    /// Derivative of the map at `x` (clamped).
    pub fn derivative(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], self.xs[self.xs.len() - 1]);
        let k = bracket(&self.xs, x);
        let h = self.xs[k + 1] - self.xs[k];
        let u = (x - self.xs[k]) / h;
        let u2 = u * u;
        (self.ys[k] * (6.0 * u2 - 6.0 * u)
            + h * self.dys[k] * (3.0 * u2 - 4.0 * u + 1.0)
            + self.ys[k + 1] * (-6.0 * u2 + 6.0 * u)
            + h * self.dys[k + 1] * (3.0 * u2 - 2.0 * u))
            / h
    }

    /// Solves `eval(x) = y` by safeguarded Newton iteration.
    ///
    /// `y` may exceed the value span by a relative slack of 1e-9 (clamped);
    /// beyond that the query is a domain error.
    pub fn invert(&self, y: f64) -> Result<f64> {
        let (y0, y1) = self.y_span();
        let slack = 1e-9 * (y1 - y0).abs().max(1.0);
        if y < y0 - slack || y > y1 + slack {
            return Err(Error::InvalidInput(format!(
                "inverse query {y} outside the value span [{y0}, {y1}]"
            )));
        }
        let y = y.clamp(y0, y1);
        // locate the node interval in y, then refine in x
        let k = self.ys.partition_point(|&v| v <= y).saturating_sub(1).min(self.xs.len() - 2);
        let (mut lo, mut hi) = (self.xs[k], self.xs[k + 1]);
        let mut x = 0.5 * (lo + hi);
        let tol = 1e-14 * (self.xs[self.xs.len() - 1] - self.xs[0]).abs().max(1.0);
        for _ in 0..100 {
            let f = self.eval(x) - y;
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.derivative(x);
            let newton = if d > 0.0 { x - f / d } else { f64::NAN };
            x = if newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo < tol {
                break;
            }
        }
        Ok(x)
    }
}

// ── Piecewise-linear lookup ──────────────────────────────────────────

/// Piecewise-linear interpolation of sampled values; `x` clamps to the span.
pub fn linear_interp<T: Linear>(xs: &[f64], values: &[T], x: f64) -> T {
    debug_assert_eq!(xs.len(), values.len());
    let x = x.clamp(xs[0], xs[xs.len() - 1]);
    let k = bracket(xs, x);
    let u = (x - xs[k]) / (xs[k + 1] - xs[k]);
    values[k].scale(1.0 - u).add(values[k + 1].scale(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn spline_reproduces_lines_and_tracks_sine() {
        let xs = uniform(0.0, 5.0, 11);
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x - 1.0).collect();
        let s = CubicSpline::new(&xs, &ys).unwrap();
        for t in [0.0, 0.37, 1.9, 4.99, 5.0] {
            assert!((s.eval(t) - (2.0 * t - 1.0)).abs() < 1e-12);
        }

        let xs = uniform(0.0, std::f64::consts::TAU, 101);
        let ys: Vec<f64> = xs.iter().map(|x| x.sin()).collect();
        let s = CubicSpline::new(&xs, &ys).unwrap();
        let mut max_err = 0.0f64;
        let mut max_mid = 0.0f64;
        for i in 0..1000 {
            let t = std::f64::consts::TAU * i as f64 / 999.0;
            let e = (s.eval(t) - t.sin()).abs();
            max_err = max_err.max(e);
            if t > 1.0 && t < std::f64::consts::TAU - 1.0 {
                max_mid = max_mid.max(e);
            }
        }
        // natural end conditions cost accuracy near the ends only
        assert!(max_err < 1e-2, "global error {max_err}");
        assert!(max_mid < 1e-5, "interior error {max_mid}");
    }

    #[test]
    fn clamped_spline_reproduces_cubics() {
        let xs = uniform(0.0, 2.0, 9);
        let ys: Vec<f64> = xs.iter().map(|x| x.powi(3) - x).collect();
        let s = CubicSpline::clamped(&xs, &ys, -1.0, 11.0).unwrap();
        for i in 0..=100 {
            let t = 2.0 * i as f64 / 100.0;
            assert!((s.eval(t) - (t.powi(3) - t)).abs() < 1e-12, "at {t}");
        }
    }

    #[test]
    fn monotone_cubic_exact_on_quadratics() {
        // F(t) = t + t²/2 with slope 1 + t: Hermite cubic reproduces it
        let xs = uniform(0.0, 1.0, 9);
        let ys: Vec<f64> = xs.iter().map(|t| t + t * t / 2.0).collect();
        let dys: Vec<f64> = xs.iter().map(|t| 1.0 + t).collect();
        let m = MonotoneCubic::new(&xs, &ys, &dys).unwrap();
        for i in 0..=50 {
            let t = i as f64 / 50.0;
            let exact = t + t * t / 2.0;
            assert!((m.eval(t) - exact).abs() < 1e-14);
            assert!((m.derivative(t) - (1.0 + t)).abs() < 1e-13);
            // analytic inverse: t = -1 + sqrt(1 + 2s)
            let t_back = m.invert(exact).unwrap();
            assert!((t_back - t).abs() < 1e-12, "invert at {t}: {t_back}");
        }
    }

    #[test]
    fn monotone_cubic_rejects_bad_input() {
        assert!(MonotoneCubic::new(&[0.0, 1.0], &[1.0, 0.5], &[1.0, 1.0]).is_err());
        let m = MonotoneCubic::new(&[0.0, 1.0], &[0.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!(m.invert(2.0).is_err());
        assert!(m.invert(-0.5).is_err());
        assert!((m.invert(1.0 + 1e-12).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn linear_interp_clamps() {
        let xs = [0.0, 1.0, 3.0];
        let vs = [0.0, 2.0, 6.0];
        assert_eq!(linear_interp(&xs, &vs, 0.5), 1.0);
        assert_eq!(linear_interp(&xs, &vs, 2.0), 4.0);
        assert_eq!(linear_interp(&xs, &vs, -5.0), 0.0);
        assert_eq!(linear_interp(&xs, &vs, 9.0), 6.0);
    }
}
