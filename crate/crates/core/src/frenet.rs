//! Curvature extraction: the quaternionic curvature κ (three real components
//! along i, j, k), the complex curvature c of the symplectic picture, and the
//! matrix forms of both Frenet-type equations.
//!
//! Curvature components are computed with the parametrization-independent
//! normalization (projections of q″ onto the unit normal frame, divided by
//! |q′|²), so they equal the arc-length-gauge values on any regular curve.
//! Residuals — the defect of `q″ = κq′` resp. `q″ = q′cj` — are only
//! meaningful at unit speed, so they are evaluated after an internal
//! arc-length reparametrization whenever the input is not already unit-speed.

use crate::curve::{
    check_regular, derivatives, max_unit_speed_deviation, reparametrize_by_arc_length,
    CurveDerivatives, CurveSamples, DEFAULT_REGULARITY_REL, DEFAULT_UNIT_SPEED_TOL,
};
use crate::error::{Error, Result};
use crate::numeric::interp::linear_interp;
use crate::numeric::validate_grid;
use crate::parallel;
use crate::quat::{scalar_product, Quaternion};
use num_complex::Complex64;

// ── Profiles ─────────────────────────────────────────────────────────

/// Per-node quaternionic curvature data.
#[derive(Debug, Clone)]
pub struct CurvatureProfile {
    pub ts: Vec<f64>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    pub k3: Vec<f64>,
    /// `|κ| = sqrt(k1² + k2² + k3²)` per node.
    pub kappa_mag: Vec<f64>,
    /// Defect of the Frenet equation `q″ = κq′` in arc-length gauge,
    /// `|q″ − κq′| / max(1, |q″|)` per node; zero for synthetic profiles.
    pub residual: Vec<f64>,
}

impl CurvatureProfile {
    /// Builds a synthetic profile from curvature components (residual zero).
    pub fn from_components(
        ts: Vec<f64>,
        k1: Vec<f64>,
        k2: Vec<f64>,
        k3: Vec<f64>,
    ) -> Result<Self> {
        validate_grid(&ts)?;
        let n = ts.len();
        if k1.len() != n || k2.len() != n || k3.len() != n {
            return Err(Error::InvalidInput(
                "curvature component lengths must match the grid".into(),
            ));
        }
        let kappa_mag = (0..n)
            .map(|i| (k1[i] * k1[i] + k2[i] * k2[i] + k3[i] * k3[i]).sqrt())
            .collect();
        let residual = vec![0.0; n];
        Ok(CurvatureProfile { ts, k1, k2, k3, kappa_mag, residual })
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    /// The curvature at node `i` as a pure-imaginary quaternion.
    pub fn kappa_at(&self, i: usize) -> Quaternion {
        Quaternion::imaginary(self.k1[i], self.k2[i], self.k3[i])
    }
}

/// Per-node complex (symplectic) curvature data.
#[derive(Debug, Clone)]
pub struct SymplecticCurvatureProfile {
    pub ts: Vec<f64>,
    pub c: Vec<Complex64>,
    /// Defect of `q″ = q′cj` in arc-length gauge. Large values flag curves
    /// whose normal acceleration leaves the plane `q′·span{j,k}` — the only
    /// class the complex curvature can encode.
    pub residual: Vec<f64>,
}

impl SymplecticCurvatureProfile {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }
}

// ── Normal frame ─────────────────────────────────────────────────────

/// The orthonormal normal frame `Nᵢ = eᵢ·q′/|q′|` at one node.
pub fn normal_frame(
    c: &CurveSamples,
    node: usize,
) -> Result<(Quaternion, Quaternion, Quaternion)> {
    if node >= c.len() {
        return Err(Error::InvalidInput(format!(
            "node {node} out of range for a curve with {} samples",
            c.len()
        )));
    }
    let d = derivatives(c);
    let speeds = d.speeds();
    let threshold = DEFAULT_REGULARITY_REL * speeds.iter().cloned().fold(0.0f64, f64::max);
    if speeds[node] <= threshold {
        return Err(Error::IrregularCurve {
            t: d.ts[node],
            speed: speeds[node],
            threshold,
        });
    }
    let t = d.d1[node].scale(1.0 / speeds[node]);
    Ok((Quaternion::I * t, Quaternion::J * t, Quaternion::K * t))
}

// ── Curvature extraction ─────────────────────────────────────────────

/// κ components at one node from derivative data: `κᵢ = ⟨q″, Nᵢ⟩/|q′|²`.
fn kappa_components(d: &CurveDerivatives, i: usize) -> [f64; 3] {
    let speed = d.d1[i].norm();
    let inv = 1.0 / (speed * speed * speed);
    [
        scalar_product(d.d2[i], Quaternion::I * d.d1[i]) * inv,
        scalar_product(d.d2[i], Quaternion::J * d.d1[i]) * inv,
        scalar_product(d.d2[i], Quaternion::K * d.d1[i]) * inv,
    ]
}

/// Complex curvature at one node: projections of q″ onto `q′j/|q′|` and
/// `q′k/|q′|`, divided by `|q′|²`.
fn c_components(d: &CurveDerivatives, i: usize) -> Complex64 {
    let speed = d.d1[i].norm();
    let inv = 1.0 / (speed * speed * speed);
    Complex64::new(
        scalar_product(d.d2[i], d.d1[i] * Quaternion::J) * inv,
        scalar_product(d.d2[i], d.d1[i] * Quaternion::K) * inv,
    )
}

/// Evaluates a per-node defect in arc-length gauge: directly when the curve
/// is already unit-speed, otherwise on an internally reparametrized copy
/// with the values mapped back to the source nodes.
fn residuals_in_arc_length_gauge<F>(c: &CurveSamples, defect: F) -> Result<Vec<f64>>
where
    F: Fn(&CurveDerivatives, usize) -> f64 + Sync + Send,
{
    if max_unit_speed_deviation(c) <= DEFAULT_UNIT_SPEED_TOL {
        let d = derivatives(c);
        return Ok(parallel::map_indices(c.len(), |i| defect(&d, i)));
    }
    let r = reparametrize_by_arc_length(c)?;
    let dr = derivatives(&r.curve);
    let res_s = parallel::map_indices(r.curve.len(), |i| defect(&dr, i));
    // map back: source node tᵢ sits at arc length s(tᵢ) = interp of the
    // (source param → s) correspondence recorded by the reparametrization
    Ok(parallel::map_slice(c.ts(), |&t| {
        linear_interp(&r.source_params, &res_s, t)
    }))
}

/// Quaternionic curvature profile of a regular curve.
pub fn curvature_cartesian(c: &CurveSamples) -> Result<CurvatureProfile> {
    let d = derivatives(c);
    check_regular(&d, DEFAULT_REGULARITY_REL)?;
    let comps = parallel::map_indices(c.len(), |i| kappa_components(&d, i));
    let k1: Vec<f64> = comps.iter().map(|k| k[0]).collect();
    let k2: Vec<f64> = comps.iter().map(|k| k[1]).collect();
    let k3: Vec<f64> = comps.iter().map(|k| k[2]).collect();
    let kappa_mag = comps
        .iter()
        .map(|k| (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt())
        .collect();
    let residual = residuals_in_arc_length_gauge(c, |d, i| {
        let k = kappa_components(d, i);
        let kappa = Quaternion::imaginary(k[0], k[1], k[2]);
        (d.d2[i] - kappa * d.d1[i]).norm() / d.d2[i].norm().max(1.0)
    })?;
    Ok(CurvatureProfile { ts: c.ts().to_vec(), k1, k2, k3, kappa_mag, residual })
}

/// Complex curvature profile of a regular curve.
///
/// The residual is diagnostic, not an error: it stays small only on curves
/// whose normal acceleration lies in `q′·span{j,k}`.
pub fn curvature_symplectic(c: &CurveSamples) -> Result<SymplecticCurvatureProfile> {
    let d = derivatives(c);
    check_regular(&d, DEFAULT_REGULARITY_REL)?;
    let cs = parallel::map_indices(c.len(), |i| c_components(&d, i));
    let residual = residuals_in_arc_length_gauge(c, |d, i| {
        let cv = c_components(d, i);
        let cq = Quaternion::new(cv.re, cv.im, 0.0, 0.0);
        (d.d2[i] - d.d1[i] * cq * Quaternion::J).norm() / d.d2[i].norm().max(1.0)
    })?;
    Ok(SymplecticCurvatureProfile { ts: c.ts().to_vec(), c: cs, residual })
}

// ── Matrix forms ─────────────────────────────────────────────────────

/// The 4×4 left-multiplication matrix of the pure-imaginary quaternion
/// `κ = k1·i + k2·j + k3·k`, generated column-by-column from the Hamilton
/// product with the basis.
pub fn curvature_matrix(k: [f64; 3]) -> [[f64; 4]; 4] {
    let kappa = Quaternion::imaginary(k[0], k[1], k[2]);
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut m = [[0.0; 4]; 4];
    for (col, e) in basis.iter().enumerate() {
        let prod = (kappa * *e).components();
        for (row, entry) in prod.iter().enumerate() {
            m[row][col] = *entry;
        }
    }
    m
}

/// Applies the matrix form of the Frenet equation: the left-multiplication
/// matrix of κ acting on `v` as a 4-vector. Agrees with `mul(κ, v)`.
pub fn frenet_matrix_apply(k: [f64; 3], v: Quaternion) -> Quaternion {
    let m = curvature_matrix(k);
    let vc = v.components();
    let mut out = [0.0; 4];
    for (row, o) in out.iter_mut().enumerate() {
        *o = m[row][0] * vc[0] + m[row][1] * vc[1] + m[row][2] * vc[2] + m[row][3] * vc[3];
    }
    Quaternion::from_components(out)
}

/// Applies the 2×2 complex matrix of the symplectic Frenet equation to the
/// component pair: `(z0, z1) ↦ (−c̄·z1, c·z0)`. Agrees with the symplectic
/// components of the right product `q′·c·j`.
pub fn symplectic_matrix_apply(
    c: Complex64,
    z: (Complex64, Complex64),
) -> (Complex64, Complex64) {
    (-c.conj() * z.1, c * z.0)
}

// ── Tests ────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{builtin_constant_curvature, builtin_constant_symplectic, uniform_grid};
    use crate::numeric::fd::derivative_stencils;
    use crate::quat::{to_symplectic, from_symplectic, SymplecticForm};
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn circle(kappa: Quaternion, phi0: f64, n: usize) -> CurveSamples {
        let ts = uniform_grid(0.0, TAU, n).unwrap();
        builtin_constant_curvature(kappa, phi0, &ts).unwrap()
    }

    #[test]
    fn normal_frame_for_unit_tangent() {
        // straight line along the real axis: T = 1, frame = (i, j, k)
        let ts = uniform_grid(0.0, 1.0, 11).unwrap();
        let qs: Vec<Quaternion> = ts.iter().map(|&t| Quaternion::real(t)).collect();
        let c = CurveSamples::new(ts, qs).unwrap();
        let (n1, n2, n3) = normal_frame(&c, 5).unwrap();
        assert!((n1 - Quaternion::I).norm() < 1e-10);
        assert!((n2 - Quaternion::J).norm() < 1e-10);
        assert!((n3 - Quaternion::K).norm() < 1e-10);
    }

    #[test]
    fn normal_frame_orthonormality() {
        let c = circle(Quaternion::new(0.0, 1.0, 2.0, -0.5), 0.3, 301);
        let d = derivatives(&c);
        let t10 = d.d1[10].scale(1.0 / d.d1[10].norm());
        let (n1, n2, n3) = normal_frame(&c, 10).unwrap();
        for n in [n1, n2, n3] {
            assert!((n.norm() - 1.0).abs() < 1e-12);
            assert!(scalar_product(n, t10).abs() < 1e-12);
        }
        assert!(scalar_product(n1, n2).abs() < 1e-12);
        assert!(scalar_product(n1, n3).abs() < 1e-12);
        assert!(scalar_product(n2, n3).abs() < 1e-12);

        assert!(normal_frame(&c, 10_000).is_err());
    }

    #[test]
    fn constant_curvature_recovery() {
        for (kappa, expect) in [
            (Quaternion::I, [1.0, 0.0, 0.0]),
            (Quaternion::J.scale(2.0), [0.0, 2.0, 0.0]),
        ] {
            let c = circle(kappa, 0.7, 1001);
            let p = curvature_cartesian(&c).unwrap();
            for i in 2..999 {
                assert!((p.k1[i] - expect[0]).abs() < 1e-6, "k1 node {i}");
                assert!((p.k2[i] - expect[1]).abs() < 1e-6, "k2 node {i}");
                assert!((p.k3[i] - expect[2]).abs() < 1e-6, "k3 node {i}");
                assert!(p.residual[i] < 1e-5, "residual node {i}: {}", p.residual[i]);
                let mag2 = p.k1[i].powi(2) + p.k2[i].powi(2) + p.k3[i].powi(2);
                assert!((p.kappa_mag[i].powi(2) - mag2).abs() <= 1e-12 * mag2);
            }
        }
    }

    #[test]
    fn straight_line_curvature_vanishes() {
        let ts = uniform_grid(0.0, 3.0, 101).unwrap();
        let dir = Quaternion::new(1.0, 1.0, 0.0, 0.0).scale(1.0 / 2.0f64.sqrt());
        let qs: Vec<Quaternion> = ts.iter().map(|&t| dir.scale(t)).collect();
        let line = CurveSamples::new(ts, qs).unwrap();
        let p = curvature_cartesian(&line).unwrap();
        for i in 0..p.len() {
            assert!(p.kappa_mag[i] < 1e-9, "node {i}");
        }
        let sp = curvature_symplectic(&line).unwrap();
        for v in &sp.c {
            assert!(v.norm() < 1e-9);
        }
    }

    #[test]
    fn symplectic_curvature_recovery() {
        // constant c = 1: recovered c ≈ 1 + 0i with small residual
        let ts = uniform_grid(0.0, TAU, 1001).unwrap();
        let c = builtin_constant_symplectic(Complex64::new(1.0, 0.0), 0.0, &ts).unwrap();
        let p = curvature_symplectic(&c).unwrap();
        for i in 2..999 {
            assert!((p.c[i] - Complex64::new(1.0, 0.0)).norm() < 1e-5, "node {i}: {}", p.c[i]);
            assert!(p.residual[i] < 1e-5, "residual node {i}");
        }

        // a rotated constant c exercises both components
        let cval = Complex64::from_polar(1.5, 0.8);
        let c2 = builtin_constant_symplectic(cval, 0.2, &ts).unwrap();
        let p2 = curvature_symplectic(&c2).unwrap();
        for i in 2..999 {
            assert!((p2.c[i] - cval).norm() < 1e-5, "node {i}: {}", p2.c[i]);
            assert!(p2.residual[i] < 1e-5);
        }
    }

    #[test]
    fn symplectic_residual_flags_unrepresentable_curves() {
        // normal acceleration along i·q′ cannot be encoded by c
        let c = circle(Quaternion::I, 0.0, 1001);
        let p = curvature_symplectic(&c).unwrap();
        let min_interior = p.residual[2..999].iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min_interior > 0.1, "residual should flag the restriction: {min_interior}");
    }

    #[test]
    fn curvature_is_gauge_invariant() {
        // same circle, non-uniform parameter speed: κ components unchanged
        let ts = uniform_grid(0.0, TAU, 1001).unwrap();
        let qs: Vec<Quaternion> = ts
            .iter()
            .map(|&t| {
                let g = t + 0.3 * t.sin();
                Quaternion::new(g.cos(), g.sin(), 0.0, 0.0)
            })
            .collect();
        let c = CurveSamples::new(ts, qs).unwrap();
        let p = curvature_cartesian(&c).unwrap();
        for i in 2..999 {
            assert!((p.k1[i] - 1.0).abs() < 1e-5, "k1 node {i}: {}", p.k1[i]);
            assert!(p.k2[i].abs() < 1e-5);
            assert!(p.k3[i].abs() < 1e-5);
        }
        // residual is evaluated after internal reparametrization, which has a
        // few-node boundary layer of its own — check away from it
        for i in 8..993 {
            assert!(p.residual[i] < 1e-4, "residual node {i}: {}", p.residual[i]);
        }
    }

    #[test]
    fn tangent_rate_matches_curvature_in_any_gauge() {
        // d/dt (q'/|q'|) = κ q' holds for non-unit-speed parametrizations
        let ts = uniform_grid(0.0, TAU, 1001).unwrap();
        let qs: Vec<Quaternion> = ts
            .iter()
            .map(|&t| {
                let g = t + 0.4 * (2.0 * t).sin();
                Quaternion::new(g.cos(), 0.0, g.sin(), 0.0)
            })
            .collect();
        let c = CurveSamples::new(ts.clone(), qs).unwrap();
        let d = derivatives(&c);
        let tangents: Vec<Quaternion> =
            d.d1.iter().map(|v| v.scale(1.0 / v.norm())).collect();
        let st = derivative_stencils(&ts).unwrap();
        let p = curvature_cartesian(&c).unwrap();
        let mut max_rel = 0.0f64;
        for i in 2..999 {
            let dt_dt: Quaternion = st.d1_at(i, &tangents);
            let expect = p.kappa_at(i) * d.d1[i];
            let rel = (dt_dt - expect).norm() / expect.norm().max(1e-12);
            max_rel = max_rel.max(rel);
        }
        assert!(max_rel < 1e-3, "max relative defect {max_rel}");
    }

    #[test]
    fn cartesian_residual_small_for_generic_unit_speed_curve() {
        // a genuinely 4-dimensional curve, reparametrized to unit speed
        let ts = uniform_grid(0.0, TAU, 1501).unwrap();
        let qs: Vec<Quaternion> = ts
            .iter()
            .map(|&t| {
                Quaternion::new(t.cos(), t.sin(), 0.3 * (2.0 * t).cos(), 0.2 * (3.0 * t).sin())
            })
            .collect();
        let c = CurveSamples::new(ts, qs).unwrap();
        let r = crate::curve::reparametrize_by_arc_length(&c).unwrap();
        let d = derivatives(&r.curve);
        let n = r.curve.len();
        // acceleration is orthogonal to velocity at unit speed
        for i in 5..n - 5 {
            let ip = scalar_product(d.d1[i], d.d2[i]).abs();
            assert!(ip < 1e-4 * d.d2[i].norm().max(1e-9), "orthogonality node {i}");
        }
        let p = curvature_cartesian(&r.curve).unwrap();
        for i in 5..n - 5 {
            assert!(p.residual[i] < 5e-4, "completeness node {i}: {}", p.residual[i]);
        }
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(frenet_matrix_apply([1.0, 0.0, 0.0], Quaternion::ONE), Quaternion::I);
        assert_eq!(
            frenet_matrix_apply([0.0, 1.0, 0.0], Quaternion::K),
            Quaternion::J * Quaternion::K
        );
        let (a, b) = symplectic_matrix_apply(
            Complex64::new(1.0, 0.0),
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        );
        assert_eq!(a, Complex64::new(0.0, 0.0));
        assert_eq!(b, Complex64::new(1.0, 0.0));

        let (a, b) = symplectic_matrix_apply(
            Complex64::new(0.0, 1.0),
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        );
        assert_eq!(a, Complex64::new(0.0, 1.0));
        assert_eq!(b, Complex64::new(0.0, 0.0));

        let (a, b) = symplectic_matrix_apply(
            Complex64::new(0.0, 0.0),
            (Complex64::new(2.0, 1.0), Complex64::new(-1.0, 3.0)),
        );
        assert_eq!((a, b), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }

    proptest! {
        #[test]
        fn prop_matrix_equals_left_product(
            k in prop::array::uniform3(-10.0..10.0f64),
            v in prop::array::uniform4(-10.0..10.0f64),
        ) {
            let vq = Quaternion::from_components(v);
            let kappa = Quaternion::imaginary(k[0], k[1], k[2]);
            let via_matrix = frenet_matrix_apply(k, vq);
            let direct = kappa * vq;
            prop_assert!(
                (via_matrix - direct).norm() <= 1e-14 * (1.0 + kappa.norm() * vq.norm())
            );
        }

        #[test]
        fn prop_symplectic_matrix_equals_right_product(
            c in prop::array::uniform2(-10.0..10.0f64),
            z in prop::array::uniform4(-10.0..10.0f64),
        ) {
            let cval = Complex64::new(c[0], c[1]);
            let zpair = (Complex64::new(z[0], z[1]), Complex64::new(z[2], z[3]));
            let q = from_symplectic(&SymplecticForm { z0: zpair.0, z1: zpair.1 });
            let cq = Quaternion::new(c[0], c[1], 0.0, 0.0);
            let direct = to_symplectic(q * cq * Quaternion::J);
            let (a, b) = symplectic_matrix_apply(cval, zpair);
            let bound = 1e-14 * (1.0 + cval.norm() * q.norm());
            prop_assert!((a - direct.z0).norm() <= bound);
            prop_assert!((b - direct.z1).norm() <= bound);
        }
    }
}
