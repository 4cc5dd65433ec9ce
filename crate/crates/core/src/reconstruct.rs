//! Curve reconstruction from curvature data: a closed form for constant
//! plane direction ω (nested cumulative quadrature), a general RK4
//! integrator for `q″ = κ(t)q′`, and the symplectic general solution built
//! from `z0′ = exp(i∫|c|)`.

use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::frenet::CurvatureProfile;
use crate::numeric::interp::linear_interp;
use crate::numeric::quad::cumulative_integral;
use crate::numeric::validate_grid;
use crate::quat::{from_symplectic, scalar_product, Quaternion, SymplecticForm};
use num_complex::Complex64;

/// Tolerance on `|ω| − 1`, `|ω.x0|`, and `|V0| − 1` when validating inputs.
pub const UNIT_INPUT_TOL: f64 = 1e-9;
/// Tolerance on the out-of-plane part of a supplied initial velocity.
pub const PLANE_INPUT_TOL: f64 = 1e-6;
/// Default integrator step bound.
pub const DEFAULT_MAX_STEP: f64 = 1e-3;

// ── Reconstruction data ──────────────────────────────────────────────

/// Data determining a curve with curvature of constant direction:
/// `κ(t) = |κ|(t)·ω` with ω a fixed unit pure-imaginary quaternion,
/// starting at `p0` with unit velocity `v0 = −sin(φ0) + ω·cos(φ0)`.
#[derive(Debug, Clone)]
pub struct ReconstructionSpec {
    pub ts: Vec<f64>,
    pub kappa_mag: Vec<f64>,
    pub omega: Quaternion,
    pub phi0: f64,
    pub p0: Quaternion,
    pub v0: Quaternion,
}

fn validate_omega(omega: Quaternion) -> Result<()> {
    if !omega.is_finite() {
        return Err(Error::InvalidInput("plane direction must be finite".into()));
    }
    if (omega.norm() - 1.0).abs() > UNIT_INPUT_TOL {
        return Err(Error::InvalidInput(format!(
            "plane direction must be a unit quaternion, |omega| = {}",
            omega.norm()
        )));
    }
    if omega.x0.abs() > UNIT_INPUT_TOL {
        return Err(Error::InvalidInput(format!(
            "plane direction must be pure imaginary, real part = {}",
            omega.x0
        )));
    }
    Ok(())
}

fn validate_kappa_mag(ts: &[f64], kappa_mag: &[f64]) -> Result<()> {
    validate_grid(ts)?;
    if kappa_mag.len() != ts.len() {
        return Err(Error::InvalidInput(format!(
            "curvature magnitude length {} does not match grid length {}",
            kappa_mag.len(),
            ts.len()
        )));
    }
    for (i, &k) in kappa_mag.iter().enumerate() {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::InvalidInput(format!(
                "curvature magnitude must be finite and nonnegative, got {k} at node {i}"
            )));
        }
    }
    Ok(())
}

impl ReconstructionSpec {
    /// Builds a spec from a phase: `v0 = −sin(φ0) + ω·cos(φ0)`.
    pub fn new(
        ts: Vec<f64>,
        kappa_mag: Vec<f64>,
        omega: Quaternion,
        phi0: f64,
        p0: Quaternion,
    ) -> Result<Self> {
        validate_kappa_mag(&ts, &kappa_mag)?;
        validate_omega(omega)?;
        if !p0.is_finite() || !phi0.is_finite() {
            return Err(Error::InvalidInput("initial data must be finite".into()));
        }
        let v0 = Quaternion::real(-phi0.sin()) + omega.scale(phi0.cos());
        Ok(ReconstructionSpec { ts, kappa_mag, omega, phi0, p0, v0 })
    }

    /// Builds a spec from an explicit unit initial velocity, which must lie
    /// in the plane spanned by 1 and ω; the phase is derived from it.
    pub fn with_velocity(
        ts: Vec<f64>,
        kappa_mag: Vec<f64>,
        omega: Quaternion,
        p0: Quaternion,
        v0: Quaternion,
    ) -> Result<Self> {
        validate_kappa_mag(&ts, &kappa_mag)?;
        validate_omega(omega)?;
        if !p0.is_finite() || !v0.is_finite() {
            return Err(Error::InvalidInput("initial data must be finite".into()));
        }
        if (v0.norm() - 1.0).abs() > UNIT_INPUT_TOL {
            return Err(Error::InvalidInput(format!(
                "initial velocity must be unit, |v0| = {}",
                v0.norm()
            )));
        }
        let a = v0.x0;
        let b = scalar_product(v0, omega);
        let off_plane = v0 - Quaternion::real(a) - omega.scale(b);
        if off_plane.norm() > PLANE_INPUT_TOL {
            return Err(Error::InvalidInput(format!(
                "initial velocity must lie in the plane of 1 and omega; \
                 out-of-plane part has norm {}",
                off_plane.norm()
            )));
        }
        let phi0 = (-a).atan2(b);
        Ok(ReconstructionSpec { ts, kappa_mag, omega, phi0, p0, v0 })
    }

    /// The curvature profile `κ(t) = |κ|(t)·ω` in component form.
    pub fn to_profile(&self) -> CurvatureProfile {
        let k1 = self.kappa_mag.iter().map(|k| k * self.omega.x1).collect();
        let k2 = self.kappa_mag.iter().map(|k| k * self.omega.x2).collect();
        let k3 = self.kappa_mag.iter().map(|k| k * self.omega.x3).collect();
        CurvatureProfile::from_components(self.ts.clone(), k1, k2, k3)
            .expect("grid and components validated by ReconstructionSpec construction")
    }
}

// ── Closed form ──────────────────────────────────────────────────────

/// Closed-form reconstruction for constant plane direction:
/// `q(t) = p0 + X(t) + ω·Y(t)` with `X = ∫−sin(Λ+φ0)`, `Y = ∫cos(Λ+φ0)`,
/// and `Λ = ∫|κ|`, all as cumulative quadratures over the grid.
///
/// The result is unit speed and stays in the plane `p0 + span{1, ω}`.
pub fn reconstruct_closed_form(spec: &ReconstructionSpec) -> Result<CurveSamples> {
    let lambda = cumulative_integral(&spec.ts, &spec.kappa_mag)?;
    let dx: Vec<f64> = lambda.iter().map(|l| -(l + spec.phi0).sin()).collect();
    let dy: Vec<f64> = lambda.iter().map(|l| (l + spec.phi0).cos()).collect();
    let xs = cumulative_integral(&spec.ts, &dx)?;
    let ys = cumulative_integral(&spec.ts, &dy)?;
    let qs: Vec<Quaternion> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| spec.p0 + Quaternion::real(x) + spec.omega.scale(y))
        .collect();
    CurveSamples::new(spec.ts.clone(), qs).map(|c| c.with_meta("closed-form reconstruction"))
}

// ── RK4 integrator ───────────────────────────────────────────────────

/// Fixed-step RK4 on the system `(q, v)′ = (v, accel(t, v))`, marching
/// interval by interval so every grid node is hit exactly; each interval is
/// subdivided into equal substeps no longer than `max_step`. Returns
/// positions and velocities at the grid nodes.
fn rk4_integrate<F>(
    ts: &[f64],
    max_step: f64,
    p0: Quaternion,
    v0: Quaternion,
    accel: F,
) -> (Vec<Quaternion>, Vec<Quaternion>)
where
    F: Fn(f64, Quaternion) -> Quaternion,
{
    let n = ts.len();
    let mut qs = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    let mut q = p0;
    let mut v = v0;
    qs.push(q);
    vs.push(v);
    for i in 0..n - 1 {
        let dt = ts[i + 1] - ts[i];
        let m = (dt / max_step).ceil().max(1.0) as usize;
        let h = dt / m as f64;
        for k in 0..m {
            let t = ts[i] + k as f64 * h;
            let k1q = v;
            let k1v = accel(t, v);
            let k2q = v + k1v.scale(h / 2.0);
            let k2v = accel(t + h / 2.0, k2q);
            let k3q = v + k2v.scale(h / 2.0);
            let k3v = accel(t + h / 2.0, k3q);
            let k4q = v + k3v.scale(h);
            let k4v = accel(t + h, k4q);
            q = q + (k1q + k2q.scale(2.0) + k3q.scale(2.0) + k4q).scale(h / 6.0);
            v = v + (k1v + k2v.scale(2.0) + k3v.scale(2.0) + k4v).scale(h / 6.0);
        }
        qs.push(q);
        vs.push(v);
    }
    (qs, vs)
}

/// Integrates `q″ = κ(t)·q′` by RK4 from `(p0, v0)`, with the curvature
/// components interpolated linearly between the profile's nodes (linear
/// interpolation preserves nonnegativity of sampled magnitudes). `v0` must
/// be unit to within 1e−3 and is normalized exactly before integrating.
pub fn reconstruct_ode(
    kappa: &CurvatureProfile,
    p0: Quaternion,
    v0: Quaternion,
    max_step: f64,
) -> Result<CurveSamples> {
    validate_grid(&kappa.ts)?;
    let n = kappa.ts.len();
    if kappa.k1.len() != n || kappa.k2.len() != n || kappa.k3.len() != n {
        return Err(Error::InvalidInput(
            "curvature profile component lengths do not match its grid".into(),
        ));
    }
    if !(max_step.is_finite() && max_step > 0.0) {
        return Err(Error::InvalidInput(format!("step bound must be positive, got {max_step}")));
    }
    if !p0.is_finite() || !v0.is_finite() {
        return Err(Error::InvalidInput("initial data must be finite".into()));
    }
    if (v0.norm() - 1.0).abs() > 1e-3 {
        return Err(Error::InvalidInput(format!(
            "initial velocity must be unit to within 1e-3, |v0| = {}",
            v0.norm()
        )));
    }
    let v0 = v0.normalized()?;
    let accel = |t: f64, v: Quaternion| {
        let k = Quaternion::imaginary(
            linear_interp(&kappa.ts, &kappa.k1, t),
            linear_interp(&kappa.ts, &kappa.k2, t),
            linear_interp(&kappa.ts, &kappa.k3, t),
        );
        k * v
    };
    let (qs, _) = rk4_integrate(&kappa.ts, max_step, p0, v0, accel);
    CurveSamples::new(kappa.ts.clone(), qs).map(|c| c.with_meta("RK4 reconstruction"))
}

// ── Symplectic general solution ──────────────────────────────────────

/// Builds the general solution of the symplectic Frenet system from a
/// sampled curvature magnitude: `z0′ = exp(i∫|c|)`, `z1′ = z0′·e^{iφ0}`,
/// integrated cumulatively, with `z0(t0) = p0`, `z1(t0) = q0`.
///
/// The component speeds are each 1, so the assembled curve has constant
/// speed √2; the complex curvature in this parametrization (the coefficient
/// of `q″ = q′cj`) is `|c|·e^{i(φ0+π/2)}`, and the arc-length-normalized
/// value reported by curvature extraction is that divided by √2.
pub fn reconstruct_symplectic(
    ts: &[f64],
    c_mag: &[f64],
    phi0: f64,
    p0: Complex64,
    q0: Complex64,
) -> Result<CurveSamples> {
    validate_kappa_mag(ts, c_mag)?;
    if !phi0.is_finite() || !p0.is_finite() || !q0.is_finite() {
        return Err(Error::InvalidInput("initial data must be finite".into()));
    }
    let inner = cumulative_integral(ts, c_mag)?;
    let dz0: Vec<Complex64> = inner.iter().map(|&l| Complex64::from_polar(1.0, l)).collect();
    let z = cumulative_integral(ts, &dz0)?;
    let rot = Complex64::from_polar(1.0, phi0);
    let qs: Vec<Quaternion> = z
        .iter()
        .map(|&zi| from_symplectic(&SymplecticForm { z0: p0 + zi, z1: q0 + rot * zi }))
        .collect();
    CurveSamples::new(ts.to_vec(), qs).map(|c| c.with_meta("symplectic reconstruction"))
}

// ── Uniqueness check ─────────────────────────────────────────────────

/// How to produce the second, independent reconstruction.
#[derive(Debug, Clone, Copy)]
pub enum Perturbation {
    /// Closed form vs RK4 at the given step bound.
    AlternateIntegrator { max_step: f64 },
    /// RK4 at two different step bounds.
    StepSizes { coarse: f64, fine: f64 },
}

/// Outcome of a uniqueness check: two independent reconstructions of the
/// same data, compared pointwise.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub max_deviation: f64,
    pub node_of_max: usize,
    pub methods: (String, String),
}

/// Reconstructs the same spec twice by independent routes and reports the
/// maximum pointwise deviation — small deviations operationalize the
/// uniqueness statement of the fundamental theorem.
pub fn uniqueness_check(
    spec: &ReconstructionSpec,
    perturbation: Perturbation,
) -> Result<UniquenessReport> {
    let (a, b, methods) = match perturbation {
        Perturbation::AlternateIntegrator { max_step } => {
            let a = reconstruct_closed_form(spec)?;
            let b = reconstruct_ode(&spec.to_profile(), spec.p0, spec.v0, max_step)?;
            (a, b, ("closed form".to_string(), format!("RK4, step {max_step}")))
        }
        Perturbation::StepSizes { coarse, fine } => {
            let profile = spec.to_profile();
            let a = reconstruct_ode(&profile, spec.p0, spec.v0, coarse)?;
            let b = reconstruct_ode(&profile, spec.p0, spec.v0, fine)?;
            (a, b, (format!("RK4, step {coarse}"), format!("RK4, step {fine}")))
        }
    };
    let mut max_deviation = 0.0f64;
    let mut node_of_max = 0usize;
    for (i, (qa, qb)) in a.qs().iter().zip(b.qs()).enumerate() {
        let d = (*qa - *qb).norm();
        if d > max_deviation {
            max_deviation = d;
            node_of_max = i;
        }
    }
    Ok(UniquenessReport { max_deviation, node_of_max, methods })
}

// ── Tests ────────────────────────────────────────────────────────────
