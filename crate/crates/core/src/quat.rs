//! Quaternion arithmetic and the three parametrizations used throughout the
//! crate: Cartesian components, the polar form `ρ(cos θ + ω sin θ)` with a
//! per-quaternion imaginary unit ω, and the symplectic form `z0 + z1·j` with
//! its own polar angles.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Comparison tolerance for floating data: `|a-b| <= abs + rel*max(|a|,|b|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    pub fn eq_f64(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }

    pub fn eq_quat(&self, a: Quaternion, b: Quaternion) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }
}

/// A quaternion `x0 + x1·i + x2·j + x3·k` with real coordinates.
///
/// The units anti-commute and satisfy `i² = j² = k² = ijk = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

// ── Construction and constants ───────────────────────────────────────

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion { x0, x1, x2, x3 }
    }

    /// A real quaternion `r + 0i + 0j + 0k`.
    pub const fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    /// A pure-imaginary quaternion `0 + x1·i + x2·j + x3·k`.
    pub const fn imaginary(x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion::new(0.0, x1, x2, x3)
    }

    pub fn components(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub fn is_finite(&self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

// ── Algebra ──────────────────────────────────────────────────────────

impl Quaternion {
    /// Quaternionic conjugate: negates the imaginary part.
    pub fn conj(&self) -> Self {
        Quaternion::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// The scalar part `x0`.
    pub fn scalar_part(&self) -> f64 {
        self.x0
    }

    /// The imaginary (vector) part as a pure-imaginary quaternion.
    pub fn imag_part(&self) -> Self {
        Quaternion::imaginary(self.x1, self.x2, self.x3)
    }

    /// Euclidean norm of the imaginary part.
    pub fn imag_norm(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }

    /// Multiplicative inverse `conj(q)/|q|²`.
    ///
    /// Fails on the zero quaternion, the only non-invertible element.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::Domain("non-invertible: zero quaternion".into()));
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// `q/|q|`; fails on the zero quaternion.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero quaternion".into()));
        }
        Ok(self.scale(1.0 / n))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.x0 + rhs.x0,
            self.x1 + rhs.x1,
            self.x2 + rhs.x2,
            self.x3 + rhs.x3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.x0 - rhs.x0,
            self.x1 - rhs.x1,
            self.x2 - rhs.x2,
            self.x3 - rhs.x3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

/// Hamilton product. Non-commutative; `|p·q| = |p|·|q|`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (self.x0, self.x1, self.x2, self.x3);
        let (b0, b1, b2, b3) = (rhs.x0, rhs.x1, rhs.x2, rhs.x3);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        rhs.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, rhs: f64) -> Quaternion {
        self.scale(1.0 / rhs)
    }
}

/// Hamilton product of `p` and `q` as a free function.
pub fn mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// Scalar product `⟨p, q⟩ = Re[p·conj(q)]`, the Euclidean inner product of
/// the four components.
pub fn scalar_product(p: Quaternion, q: Quaternion) -> f64 {
    p.x0 * q.x0 + p.x1 * q.x1 + p.x2 * q.x2 + p.x3 * q.x3
}

/// `|⟨p,q⟩| <= tol·|p|·|q|`. Zero inputs count as orthogonal.
pub fn is_orthogonal(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    scalar_product(p, q).abs() <= tol * p.norm() * q.norm()
}

/// Parallel when `p·conj(q)` has negligible imaginary part, so that
/// `⟨p,q⟩ = p·conj(q)`. Zero inputs count as parallel (and orthogonal).
pub fn is_parallel(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    (p * q.conj()).imag_norm() <= tol * p.norm() * q.norm()
}

// ── Polar form ───────────────────────────────────────────────────────

/// Polar data of a quaternion: `q = ρ(cos θ + ω sin θ)` with `θ ∈ [0, π]`
/// and ω a unit pure-imaginary quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub rho: f64,
    pub theta: f64,
    pub omega: Quaternion,
    /// Set when the source quaternion was pure real, so ω carries no
    /// information and the conventional ω = i was substituted.
    pub degenerate: bool,
}

/// Polar decomposition. `θ = atan2(|x⃗|, x0)` lands in `[0, π]` because the
/// imaginary magnitude is never negative.
///
/// Pure-real quaternions get the conventional ω = i and the `degenerate`
/// flag; the zero quaternion has no polar form.
pub fn to_polar(q: Quaternion) -> Result<PolarForm> {
    let rho = q.norm();
    if rho == 0.0 {
        return Err(Error::Domain("zero quaternion has no polar form".into()));
    }
    let v = q.imag_norm();
    let theta = v.atan2(q.x0);
    let (omega, degenerate) = if v == 0.0 {
        (Quaternion::I, true)
    } else {
        (q.imag_part().scale(1.0 / v), false)
    };
    Ok(PolarForm { rho, theta, omega, degenerate })
}

/// Reassemble `ρ(cos θ + ω sin θ)`.
pub fn from_polar(p: &PolarForm) -> Quaternion {
    Quaternion::real(p.rho * p.theta.cos()) + p.omega.scale(p.rho * p.theta.sin())
}

/// Normalized polar form of `ωⁿ·q`, where ω is q's own polar unit.
///
/// Multiplying by ω advances θ by π/2; folding the accumulated angle back
/// into `[0, π]` flips ω to -ω on odd turns. Works for negative `n` via
/// `ω⁻¹ = -ω`.
pub fn polar_unit_power(q: Quaternion, n: i32) -> Result<PolarForm> {
    let p = to_polar(q)?;
    let theta_raw = p.theta + f64::from(n) * FRAC_PI_2;
    let m = (theta_raw / PI).floor();
    let theta0 = (theta_raw - m * PI).clamp(0.0, PI);
    let odd = (m as i64).rem_euclid(2) == 1;
    let (theta, omega) = if odd {
        (PI - theta0, -p.omega)
    } else {
        (theta0, p.omega)
    };
    Ok(PolarForm { rho: p.rho, theta, omega, degenerate: p.degenerate })
}

// ── Symplectic form ──────────────────────────────────────────────────

/// Symplectic data `q = z0 + z1·j` with `z0 = x0 + x1·i`, `z1 = x2 + x3·i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticForm {
    pub z0: Complex64,
    pub z1: Complex64,
}

/// Symplectic polar data `q = ρ(cos ϑ e^{iφ} + sin ϑ e^{iψ} j)` with
/// `ϑ ∈ [0, π/2]` and phases in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticPolarForm {
    pub rho: f64,
    pub vartheta: f64,
    pub phi: f64,
    pub psi: f64,
}

pub fn to_symplectic(q: Quaternion) -> SymplecticForm {
    SymplecticForm {
        z0: Complex64::new(q.x0, q.x1),
        z1: Complex64::new(q.x2, q.x3),
    }
}

pub fn from_symplectic(s: &SymplecticForm) -> Quaternion {
    Quaternion::new(s.z0.re, s.z0.im, s.z1.re, s.z1.im)
}

fn wrap_phase(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Symplectic polar decomposition; a vanishing component gets phase 0.
pub fn to_symplectic_polar(q: Quaternion) -> Result<SymplecticPolarForm> {
    let rho = q.norm();
    if rho == 0.0 {
        return Err(Error::Domain("zero quaternion has no symplectic polar form".into()));
    }
    let s = to_symplectic(q);
    let a = s.z0.norm();
    let b = s.z1.norm();
    let vartheta = b.atan2(a);
    let phi = if a == 0.0 { 0.0 } else { wrap_phase(s.z0.arg()) };
    let psi = if b == 0.0 { 0.0 } else { wrap_phase(s.z1.arg()) };
    Ok(SymplecticPolarForm { rho, vartheta, phi, psi })
}

pub fn from_symplectic_polar(p: &SymplecticPolarForm) -> Quaternion {
    let z0 = Complex64::from_polar(p.rho * p.vartheta.cos(), p.phi);
    let z1 = Complex64::from_polar(p.rho * p.vartheta.sin(), p.psi);
    from_symplectic(&SymplecticForm { z0, z1 })
}

/// Normalized symplectic polar data of `q·jⁿ`.
///
/// Right-multiplication by j maps the complex pair `(z0, z1)` to
/// `(-z1, z0)`, which on polar data swaps the components, reflects
/// `ϑ → π/2 - ϑ` and shifts the phase that picked up the sign by π.
/// The four residues of `n mod 4` give the full table.
pub fn symplectic_unit_power(q: Quaternion, n: i32) -> Result<SymplecticPolarForm> {
    let p = to_symplectic_polar(q)?;
    let (vartheta, phi_raw, psi_raw) = match n.rem_euclid(4) {
        0 => (p.vartheta, p.phi, p.psi),
        1 => (FRAC_PI_2 - p.vartheta, p.psi - PI, p.phi),
        2 => (p.vartheta, p.phi - PI, p.psi - PI),
        3 => (FRAC_PI_2 - p.vartheta, p.psi, p.phi - PI),
        _ => unreachable!(),
    };
    // A component that vanishes keeps the conventional phase 0. ϑ hits the
    // range ends exactly when a source component was exactly zero.
    let phi = if vartheta == FRAC_PI_2 { 0.0 } else { wrap_phase(phi_raw) };
    let psi = if vartheta == 0.0 { 0.0 } else { wrap_phase(psi_raw) };
    Ok(SymplecticPolarForm { rho: p.rho, vartheta, phi, psi })
}

// ── Tests ────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EPS: f64 = 1e-12;

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < EPS
    }

    fn quat_approx(a: Quaternion, b: Quaternion) -> bool {
        (a - b).norm() < EPS * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn basis_products() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::I * Q::I, -Q::ONE);
        assert_eq!(Q::J * Q::J, -Q::ONE);
        assert_eq!(Q::K * Q::K, -Q::ONE);
        // ijk = -1
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn mul_identity_and_expansion() {
        let q = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        assert_eq!(q * Quaternion::ONE, q);
        assert_eq!(Quaternion::ONE * q, q);
        // (1+i)(1+j) = 1 + i + j + k, expanded over basis products
        let p = Quaternion::new(1.0, 1.0, 0.0, 0.0) * Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(p, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_norm_inverse() {
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(q.conj(), Quaternion::new(1.0, -1.0, -1.0, -1.0));
        assert_eq!(q.conj().conj(), q);
        assert_eq!(q.norm(), 2.0);
        // q·conj(q) = |q|²
        assert!(quat_approx(q * q.conj(), Quaternion::real(4.0)));

        // inverse(2i) = -i/2, checked by 2i·(-i/2) = 1
        let two_i = Quaternion::I.scale(2.0);
        let inv = two_i.inverse().unwrap();
        assert!(quat_approx(inv, Quaternion::I.scale(-0.5)));
        assert!(quat_approx(two_i * inv, Quaternion::ONE));

        assert!(Quaternion::ZERO.inverse().is_err());
    }

    #[test]
    fn scalar_product_basics() {
        assert_eq!(scalar_product(Quaternion::I, Quaternion::J), 0.0);
        let q = Quaternion::new(1.0, 0.0, 2.0, 0.0);
        assert_eq!(scalar_product(q, q), 5.0);
        // ⟨q, i·q⟩ = 0 for any q
        let q = Quaternion::new(0.4, -0.9, 1.3, 2.2);
        assert_eq!(scalar_product(q, Quaternion::I * q), 0.0);
    }

    #[test]
    fn orthogonality_and_parallelism() {
        let q = Quaternion::new(0.8, -0.4, 1.1, 0.3);
        let omega = to_polar(q).unwrap().omega;
        assert!(is_orthogonal(q, omega * q, 1e-12));
        assert!(is_orthogonal(q, q * Quaternion::J, 1e-12));
        assert!(is_parallel(q, q.scale(3.0), 1e-12));
        assert!(!is_parallel(q, omega * q, 1e-6));
        // zero inputs report both, by convention
        assert!(is_orthogonal(Quaternion::ZERO, q, 1e-12));
        assert!(is_parallel(Quaternion::ZERO, q, 1e-12));
    }

    #[test]
    fn polar_decomposition() {
        let p = to_polar(Quaternion::new(1.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(approx(p.rho, 2.0f64.sqrt()));
        assert!(approx(p.theta, PI / 4.0));
        assert!(quat_approx(p.omega, Quaternion::I));
        assert!(!p.degenerate);

        // negative pure real: θ = π, conventional ω
        let p = to_polar(Quaternion::real(-1.0)).unwrap();
        assert!(approx(p.rho, 1.0));
        assert!(approx(p.theta, PI));
        assert!(p.degenerate);
        assert!(quat_approx(from_polar(&p), Quaternion::real(-1.0)));

        let p = to_polar(Quaternion::J.scale(2.0)).unwrap();
        assert!(approx(p.rho, 2.0));
        assert!(approx(p.theta, FRAC_PI_2));
        assert!(quat_approx(p.omega, Quaternion::J));

        assert!(to_polar(Quaternion::ZERO).is_err());
    }

    #[test]
    fn polar_unit_power_table() {
        // θ = π/3, n = 2: even power of ω folds to (π - θ, -ω)
        let q = from_polar(&PolarForm {
            rho: 1.5,
            theta: PI / 3.0,
            omega: Quaternion::J,
            degenerate: false,
        });
        let p = polar_unit_power(q, 2).unwrap();
        assert!(approx(p.theta, 2.0 * PI / 3.0));
        assert!(quat_approx(p.omega, -Quaternion::J));

        // n = 0 leaves the form unchanged
        let p0 = polar_unit_power(q, 0).unwrap();
        assert!(approx(p0.theta, PI / 3.0));
        assert!(quat_approx(p0.omega, Quaternion::J));

        // θ = π/6, n = 1: stays in range, ω unchanged
        let q = from_polar(&PolarForm {
            rho: 2.0,
            theta: PI / 6.0,
            omega: Quaternion::K,
            degenerate: false,
        });
        let p = polar_unit_power(q, 1).unwrap();
        assert!(approx(p.theta, PI / 6.0 + FRAC_PI_2));
        assert!(quat_approx(p.omega, Quaternion::K));
    }

    #[test]
    fn polar_unit_power_matches_direct_product() {
        // brute force over a deterministic sample and n ∈ -4..=8
        let samples = [
            Quaternion::new(0.3, -1.2, 2.5, 0.7),
            Quaternion::new(-2.0, 0.1, 0.0, 0.4),
            Quaternion::new(0.0, 0.0, 3.0, 0.0),
            Quaternion::new(5.0, 0.0, 0.0, 0.0),
            Quaternion::new(-0.2, 0.4, -0.6, 0.8),
        ];
        for q in samples {
            let omega = to_polar(q).unwrap().omega;
            for n in -4..=8 {
                let p = polar_unit_power(q, n).unwrap();
                let mut expect = q;
                for _ in 0..n.rem_euclid(4) {
                    expect = omega * expect;
                }
                let got = from_polar(&p);
                assert!(
                    (got - expect).norm() < 1e-12 * q.norm(),
                    "n={n} q={q:?} got={got:?} expect={expect:?}"
                );
                assert!(p.theta >= 0.0 && p.theta <= PI);
            }
        }
    }

    #[test]
    fn symplectic_components() {
        let s = to_symplectic(Quaternion::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(s.z0, Complex64::new(1.0, 0.0));
        assert_eq!(s.z1, Complex64::new(0.0, 1.0));
        assert_eq!(from_symplectic(&s), Quaternion::new(1.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn symplectic_polar_conventions() {
        let p = to_symplectic_polar(Quaternion::J).unwrap();
        assert!(approx(p.rho, 1.0));
        assert!(approx(p.vartheta, FRAC_PI_2));
        assert_eq!(p.phi, 0.0);
        assert_eq!(p.psi, 0.0);
        assert!(quat_approx(from_symplectic_polar(&p), Quaternion::J));

        assert!(to_symplectic_polar(Quaternion::ZERO).is_err());
    }

    #[test]
    fn symplectic_unit_power_swaps_phases() {
        // q = e^{iφ}: pure complex, ϑ = 0
        let phi = 0.9f64;
        let q = Quaternion::new(phi.cos(), phi.sin(), 0.0, 0.0);
        let p = symplectic_unit_power(q, 1).unwrap();
        assert!(approx(p.vartheta, FRAC_PI_2));
        assert_eq!(p.phi, 0.0); // z0 component vanished
        assert!(approx(p.psi, phi));
        assert!(quat_approx(from_symplectic_polar(&p), q * Quaternion::J));
    }

    #[test]
    fn symplectic_unit_power_matches_direct_product() {
        let samples = [
            Quaternion::new(0.3, -1.2, 2.5, 0.7),
            Quaternion::new(-2.0, 0.1, 0.0, 0.4),
            Quaternion::new(0.0, 0.0, 3.0, 0.0),
            Quaternion::new(5.0, 0.0, 0.0, 0.0),
        ];
        for q in samples {
            for n in -4..=8 {
                let p = symplectic_unit_power(q, n).unwrap();
                let mut expect = q;
                for _ in 0..n.rem_euclid(4) {
                    expect = expect * Quaternion::J;
                }
                let got = from_symplectic_polar(&p);
                assert!(
                    (got - expect).norm() < 1e-12 * q.norm(),
                    "n={n} q={q:?} got={got:?} expect={expect:?}"
                );
                assert!(p.vartheta >= 0.0 && p.vartheta <= FRAC_PI_2);
                assert!((0.0..TAU).contains(&p.phi));
                assert!((0.0..TAU).contains(&p.psi));
            }
        }
    }

    #[test]
    fn orthogonal_pair_decomposition() {
        // (q, ωq) and (ω²q, ω³q) are the two orthogonal pairs
        let q = Quaternion::new(0.7, -0.3, 1.9, -1.1);
        let w = to_polar(q).unwrap().omega;
        let wq = w * q;
        let w2q = w * wq;
        let w3q = w * w2q;
        assert!(is_orthogonal(q, wq, 1e-12));
        assert!(is_orthogonal(w2q, w3q, 1e-12));
        for (n, expect) in [(0, q), (1, wq), (2, w2q), (3, w3q)] {
            let p = polar_unit_power(q, n).unwrap();
            assert!(quat_approx(from_polar(&p), expect));
        }
    }

    fn arb_quat() -> impl Strategy<Value = Quaternion> {
        let c = -10.0..10.0f64;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn prop_norm_multiplicative(p in arb_quat(), q in arb_quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn prop_conj_anti_automorphism(p in arb_quat(), q in arb_quat()) {
            let lhs = (p * q).conj();
            let rhs = q.conj() * p.conj();
            // identical term sets, different summation order: ulp-level only
            prop_assert!((lhs - rhs).norm() <= 1e-14 * p.norm() * q.norm());
        }

        #[test]
        fn prop_four_fold_orthogonality(q in arb_quat()) {
            prop_assume!(q.norm() > 0.0);
            let bound = 1e-12 * q.norm_sq();
            for e in [Quaternion::I, Quaternion::J, Quaternion::K] {
                prop_assert!(scalar_product(q, e * q).abs() <= bound);
                prop_assert!(scalar_product(q, q * e).abs() <= bound);
            }
        }

        #[test]
        fn prop_polar_round_trip(q in arb_quat()) {
            prop_assume!(q.norm() > 1e-6);
            let p = to_polar(q).unwrap();
            prop_assert!(p.theta >= 0.0 && p.theta <= PI);
            prop_assert!((from_polar(&p) - q).norm() <= 1e-12 * q.norm());
        }

        #[test]
        fn prop_symplectic_round_trips(q in arb_quat()) {
            prop_assume!(q.norm() > 1e-6);
            let s = to_symplectic(q);
            prop_assert_eq!(from_symplectic(&s), q);
            let p = to_symplectic_polar(q).unwrap();
            prop_assert!((from_symplectic_polar(&p) - q).norm() <= 1e-12 * q.norm());
        }

        #[test]
        fn prop_scalar_product_is_squared_norm(q in arb_quat()) {
            prop_assert!((scalar_product(q, q) - q.norm_sq()).abs() <= 1e-12 * q.norm_sq());
        }
    }
}
