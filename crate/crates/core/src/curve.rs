//! Sampled quaternion-valued curves: validated sample buffers, numerical
//! derivatives, regularity checks, arc length, and reparametrization by arc
//! length, plus the two built-in constant-curvature families.

use crate::error::{Error, Result};
use crate::numeric::fd::{derivative_stencils, MIN_GRID_LEN, STENCIL_ORDER};
use crate::numeric::interp::{CubicSpline, MonotoneCubic};
use crate::numeric::quad::cumulative_integral;
use crate::numeric::validate_grid;
use crate::parallel;
use crate::quat::{to_polar, Quaternion};
use num_complex::Complex64;

/// Default regularity threshold, relative to the largest node speed.
pub const DEFAULT_REGULARITY_REL: f64 = 1e-8;

/// Default tolerance on `| |q'| - 1 |` for operations that require an
/// arc-length parametrized input.
pub const DEFAULT_UNIT_SPEED_TOL: f64 = 1e-3;

// ── Sample container ─────────────────────────────────────────────────

/// A curve sampled on a strictly increasing parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    ts: Vec<f64>,
    qs: Vec<Quaternion>,
    meta: Option<String>,
}

impl CurveSamples {
    /// Validates and wraps a sample set: equal lengths, at least
    /// [`MIN_GRID_LEN`] nodes, strictly increasing finite grid, finite values.
    pub fn new(ts: Vec<f64>, qs: Vec<Quaternion>) -> Result<Self> {
        validate_grid(&ts)?;
        if ts.len() != qs.len() {
            return Err(Error::InvalidInput(format!(
                "grid and sample lengths differ: {} vs {}",
                ts.len(),
                qs.len()
            )));
        }
        if ts.len() < MIN_GRID_LEN {
            return Err(Error::InvalidInput(format!(
                "need at least {MIN_GRID_LEN} samples, got {}",
                ts.len()
            )));
        }
        if let Some(i) = qs.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite sample at index {i}")));
        }
        Ok(CurveSamples { ts, qs, meta: None })
    }

    /// Attaches a provenance tag (builtin name, "ingested", ...).
    pub fn with_meta(mut self, meta: impl Into<String>) -> Self {
        self.meta = Some(meta.into());
        self
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn qs(&self) -> &[Quaternion] {
        &self.qs
    }

    pub fn meta(&self) -> Option<&str> {
        self.meta.as_deref()
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    /// First and last grid values.
    pub fn span(&self) -> (f64, f64) {
        (self.ts[0], self.ts[self.ts.len() - 1])
    }
}

// ── Derivatives ──────────────────────────────────────────────────────

/// Per-node first and second derivative estimates.
#[derive(Debug, Clone)]
pub struct CurveDerivatives {
    pub ts: Vec<f64>,
    pub d1: Vec<Quaternion>,
    pub d2: Vec<Quaternion>,
    /// Design order of the interior stencils.
    pub stencil_order: usize,
}

impl CurveDerivatives {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    /// Node speeds `|q'|`.
    pub fn speeds(&self) -> Vec<f64> {
        parallel::map_slice(&self.d1, Quaternion::norm)
    }
}

/// First and second derivatives at every node by finite differences
/// (centered five-point stencils inside, one-sided at the two boundary
/// nodes on each side).
pub fn derivatives(c: &CurveSamples) -> CurveDerivatives {
    let stencils =
        derivative_stencils(c.ts()).expect("grid validated by CurveSamples construction");
    let pairs = parallel::map_indices(c.len(), |i| {
        (stencils.d1_at(i, c.qs()), stencils.d2_at(i, c.qs()))
    });
    let (d1, d2) = pairs.into_iter().unzip();
    CurveDerivatives { ts: c.ts().to_vec(), d1, d2, stencil_order: STENCIL_ORDER }
}

/// Fails with the first irregular node if any speed is at or below
/// `rel × max_speed`.
pub fn check_regular(d: &CurveDerivatives, rel: f64) -> Result<()> {
    let speeds = d.speeds();
    let max = speeds.iter().cloned().fold(0.0f64, f64::max);
    let threshold = rel * max;
    match speeds.iter().position(|&s| s <= threshold) {
        None => Ok(()),
        Some(i) => Err(Error::IrregularCurve { t: d.ts[i], speed: speeds[i], threshold }),
    }
}

/// Unit tangents `T = q'/|q'|` at every node.
pub fn tangent(c: &CurveSamples) -> Result<Vec<Quaternion>> {
    let d = derivatives(c);
    check_regular(&d, DEFAULT_REGULARITY_REL)?;
    Ok(parallel::map_slice(&d.d1, |v| v.scale(1.0 / v.norm())))
}

/// Largest deviation of the node speeds from 1.
pub fn max_unit_speed_deviation(c: &CurveSamples) -> f64 {
    derivatives(c).speeds().iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max)
}

/// Errors unless the curve is arc-length parametrized within `tol`.
pub fn require_unit_speed(c: &CurveSamples, tol: f64) -> Result<()> {
    let deviation = max_unit_speed_deviation(c);
    if deviation > tol {
        return Err(Error::NotUnitSpeed { deviation });
    }
    Ok(())
}

// ── Arc length ───────────────────────────────────────────────────────

/// The cumulative arc-length map `L(t)` of a regular curve, evaluable and
/// invertible anywhere inside the grid span.
///
/// Between nodes the map is the C¹ cubic through the quadrature values with
/// the node speeds as slopes, so `L(a,b) + L(b,c) = L(a,c)` holds exactly.
#[derive(Debug, Clone)]
pub struct ArcLength {
    map: MonotoneCubic,
    span: (f64, f64),
}

impl ArcLength {
    pub fn new(c: &CurveSamples) -> Result<Self> {
        let d = derivatives(c);
        check_regular(&d, DEFAULT_REGULARITY_REL)?;
        Self::from_speeds(c.ts(), &d.speeds())
    }

    pub(crate) fn from_speeds(ts: &[f64], speeds: &[f64]) -> Result<Self> {
        let cum = cumulative_integral(ts, speeds)?;
        let map = MonotoneCubic::new(ts, &cum, speeds)?;
        Ok(ArcLength { map, span: (ts[0], ts[ts.len() - 1]) })
    }

    fn check_in_span(&self, t: f64) -> Result<()> {
        let slack = 1e-12 * (self.span.1 - self.span.0).abs().max(1.0);
        if t < self.span.0 - slack || t > self.span.1 + slack {
            return Err(Error::InvalidInput(format!(
                "parameter {t} outside the grid span [{}, {}]",
                self.span.0, self.span.1
            )));
        }
        Ok(())
    }

    /// Arc length accumulated from the grid start to `t`.
    pub fn at(&self, t: f64) -> Result<f64> {
        self.check_in_span(t)?;
        Ok(self.map.eval(t))
    }

    /// Signed arc length between two parameters inside the span.
    pub fn between(&self, from: f64, to: f64) -> Result<f64> {
        Ok(self.at(to)? - self.at(from)?)
    }

    /// Total length over the grid.
    pub fn total(&self) -> f64 {
        self.map.y_span().1
    }

    /// The parameter at which the accumulated length reaches `s`.
    pub fn param_at_length(&self, s: f64) -> Result<f64> {
        self.map.invert(s)
    }
}

/// Arc length of `c` between `from` and `to` (signed if `from > to`).
pub fn arc_length(c: &CurveSamples, from: f64, to: f64) -> Result<f64> {
    ArcLength::new(c)?.between(from, to)
}

// ── Reparametrization ────────────────────────────────────────────────

/// A curve resampled at uniform arc-length steps.
#[derive(Debug, Clone)]
pub struct Reparametrized {
    /// The resampled curve; its grid is the arc length `s`.
    pub curve: CurveSamples,
    /// Source parameter `t` behind each output node.
    pub source_params: Vec<f64>,
}

/// Resamples a regular curve at uniform arc-length steps (same node count),
/// so the result has `|dq/ds| = 1` up to interpolation error.
///
/// Components are resampled with clamped cubic splines (end slopes from the
/// numerical derivatives), the grid by inverting the arc-length map.
pub fn reparametrize_by_arc_length(c: &CurveSamples) -> Result<Reparametrized> {
    let d = derivatives(c);
    check_regular(&d, DEFAULT_REGULARITY_REL)?;
    let al = ArcLength::from_speeds(c.ts(), &d.speeds())?;
    let n = c.len();
    let total = al.total();
    let (t0, t1) = c.span();

    let source_params: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 {
                Ok(t0)
            } else if i == n - 1 {
                Ok(t1)
            } else {
                al.param_at_length(total * i as f64 / (n - 1) as f64)
            }
        })
        .collect::<Result<_>>()?;

    let components: Vec<CubicSpline> = (0..4)
        .map(|k| {
            let ys: Vec<f64> = c.qs().iter().map(|q| q.components()[k]).collect();
            CubicSpline::clamped(c.ts(), &ys, d.d1[0].components()[k], d.d1[n - 1].components()[k])
        })
        .collect::<Result<_>>()?;

    let qs: Vec<Quaternion> = parallel::map_slice(&source_params, |&t| {
        Quaternion::new(
            components[0].eval(t),
            components[1].eval(t),
            components[2].eval(t),
            components[3].eval(t),
        )
    });

    let s_grid: Vec<f64> = (0..n).map(|i| total * i as f64 / (n - 1) as f64).collect();
    let mut curve = CurveSamples::new(s_grid, qs)?;
    if let Some(meta) = c.meta() {
        curve = curve.with_meta(format!("{meta}; arc-length reparametrized"));
    } else {
        curve = curve.with_meta("arc-length reparametrized");
    }
    Ok(Reparametrized { curve, source_params })
}

// ── Built-in families ────────────────────────────────────────────────

/// A uniform grid of `n` nodes over `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::InvalidInput(format!("invalid grid bounds [{a}, {b}]")));
    }
    if n < MIN_GRID_LEN {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_GRID_LEN} grid nodes, got {n}"
        )));
    }
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}

/// The unit-speed curve of constant quaternionic curvature `κ`:
/// `q(t) = (1/|κ|)[cos(|κ|t+φ₀) + ω sin(|κ|t+φ₀)]` with `ω = κ/|κ|`.
///
/// `κ` must be pure imaginary and nonzero.
pub fn builtin_constant_curvature(
    kappa: Quaternion,
    phi0: f64,
    ts: &[f64],
) -> Result<CurveSamples> {
    let mag = kappa.norm();
    if mag == 0.0 {
        return Err(Error::Domain("constant-curvature family needs κ ≠ 0".into()));
    }
    if kappa.x0.abs() > 1e-12 * mag {
        return Err(Error::Domain(format!(
            "curvature must be pure imaginary, got real part {}",
            kappa.x0
        )));
    }
    let omega = to_polar(kappa)?.omega;
    let qs: Vec<Quaternion> = ts
        .iter()
        .map(|&t| {
            let phase = mag * t + phi0;
            (Quaternion::real(phase.cos()) + omega.scale(phase.sin())).scale(1.0 / mag)
        })
        .collect();
    Ok(CurveSamples::new(ts.to_vec(), qs)?
        .with_meta(format!("constant-curvature builtin |κ|={mag}, φ₀={phi0}")))
}

/// The unit-speed curve of constant complex (symplectic) curvature `c`:
/// `q(t) = (1/|c|)[cos(|c|t+φ₀)e^{-iθ/2} + sin(|c|t+φ₀)e^{iθ/2}j]`
/// with `c = |c|e^{iθ}`.
pub fn builtin_constant_symplectic(c: Complex64, phi0: f64, ts: &[f64]) -> Result<CurveSamples> {
    let mag = c.norm();
    if mag == 0.0 {
        return Err(Error::Domain("constant-symplectic family needs c ≠ 0".into()));
    }
    let theta = c.arg();
    let qs: Vec<Quaternion> = ts
        .iter()
        .map(|&t| {
            let phase = mag * t + phi0;
            let z0 = Complex64::from_polar(phase.cos() / mag, -theta / 2.0);
            let z1 = Complex64::from_polar(phase.sin() / mag, theta / 2.0);
            Quaternion::new(z0.re, z0.im, z1.re, z1.im)
        })
        .collect();
    Ok(CurveSamples::new(ts.to_vec(), qs)?
        .with_meta(format!("constant-symplectic builtin |c|={mag}, φ₀={phi0}")))
}

// ── Tests ────────────────────────────────────────────────────────────
