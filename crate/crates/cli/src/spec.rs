//! JSON curve-spec files: the schema, loading, and conversion into curve
//! samples or reconstruction inputs.

use num_complex::Complex64;
use quatcurve::curve::{builtin_constant_curvature, builtin_constant_symplectic, uniform_grid};
use quatcurve::reconstruct::ReconstructionSpec;
use quatcurve::{CurveSamples, Quaternion};
use serde::Deserialize;

use crate::CliError;

/// Uniform grid description: `nodes` samples from `start` to `end`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub nodes: usize,
}

impl GridSpec {
    pub fn build(&self) -> Result<Vec<f64>, CliError> {
        uniform_grid(self.start, self.end, self.nodes).map_err(CliError::from)
    }
}

/// Curvature magnitude: a single constant or one sample per grid node.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum KappaSpec {
    Constant(f64),
    Samples(Vec<f64>),
}

impl KappaSpec {
    fn materialize(&self, nodes: usize) -> Result<Vec<f64>, CliError> {
        match self {
            KappaSpec::Constant(k) => Ok(vec![*k; nodes]),
            KappaSpec::Samples(v) => {
                if v.len() != nodes {
                    return Err(CliError::input(format!(
                        "kappa has {} samples but the grid has {} nodes",
                        v.len(),
                        nodes
                    )));
                }
                Ok(v.clone())
            }
        }
    }
}

/// A curve description: explicit samples, a built-in constant-curvature or
/// constant-symplectic-curvature curve, or curvature data to reconstruct
/// from. Quaternions are `[x0, x1, x2, x3]`; complex numbers `[re, im]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveSpecFile {
    /// Explicit samples, one array per component.
    Samples {
        t: Vec<f64>,
        x0: Vec<f64>,
        x1: Vec<f64>,
        x2: Vec<f64>,
        x3: Vec<f64>,
    },
    /// Unit-speed curve of constant curvature κ (pure imaginary, nonzero)
    /// with initial phase φ0.
    BuiltinPolar {
        kappa: [f64; 4],
        #[serde(default)]
        phi0: f64,
        grid: GridSpec,
    },
    /// Curve of constant complex (symplectic) curvature c with initial
    /// phase φ0. Its speed is √2 in this parametrization.
    BuiltinSymplectic {
        c: [f64; 2],
        #[serde(default)]
        phi0: f64,
        grid: GridSpec,
    },
    /// Curvature data for the reconstruction commands: |κ(t)| on a grid,
    /// a plane direction ω, and initial data. Give either the phase `phi0`
    /// or an explicit unit initial velocity `v0` in the plane of 1 and ω.
    Reconstruction {
        grid: GridSpec,
        kappa: KappaSpec,
        omega: [f64; 4],
        #[serde(default)]
        phi0: Option<f64>,
        p0: [f64; 4],
        #[serde(default)]
        v0: Option<[f64; 4]>,
    },
}

/// Reads and parses a spec file; parse errors carry serde's line-addressed
/// message.
pub fn load(path: &std::path::Path) -> Result<CurveSpecFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn quat(c: [f64; 4]) -> Quaternion {
    Quaternion::new(c[0], c[1], c[2], c[3])
}

impl CurveSpecFile {
    /// Builds the curve samples this spec describes. For `reconstruction`
    /// specs this runs the closed-form reconstruction.
    pub fn curve(&self) -> Result<CurveSamples, CliError> {
        match self {
            CurveSpecFile::Samples { t, x0, x1, x2, x3 } => {
                let n = t.len();
                if [x0.len(), x1.len(), x2.len(), x3.len()] != [n, n, n, n] {
                    return Err(CliError::input(format!(
                        "component arrays must all have the grid's length {n}: \
                         got x0:{}, x1:{}, x2:{}, x3:{}",
                        x0.len(),
                        x1.len(),
                        x2.len(),
                        x3.len()
                    )));
                }
                let qs = (0..n)
                    .map(|i| Quaternion::new(x0[i], x1[i], x2[i], x3[i]))
                    .collect();
                CurveSamples::new(t.clone(), qs).map_err(CliError::from)
            }
            CurveSpecFile::BuiltinPolar { kappa, phi0, grid } => {
                let ts = grid.build()?;
                builtin_constant_curvature(quat(*kappa), *phi0, &ts).map_err(CliError::from)
            }
            CurveSpecFile::BuiltinSymplectic { c, phi0, grid } => {
                let ts = grid.build()?;
                builtin_constant_symplectic(Complex64::new(c[0], c[1]), *phi0, &ts)
                    .map_err(CliError::from)
            }
            CurveSpecFile::Reconstruction { .. } => {
                let spec = self
                    .reconstruction_spec()?
                    .expect("reconstruction variant always yields a spec");
                quatcurve::reconstruct_closed_form(&spec).map_err(CliError::from)
            }
        }
    }

    /// The reconstruction input this spec carries, if it is of the
    /// `reconstruction` kind.
    pub fn reconstruction_spec(&self) -> Result<Option<ReconstructionSpec>, CliError> {
        let CurveSpecFile::Reconstruction { grid, kappa, omega, phi0, p0, v0 } = self else {
            return Ok(None);
        };
        let ts = grid.build()?;
        let mags = kappa.materialize(ts.len())?;
        let spec = match (phi0, v0) {
            (Some(_), Some(_)) => {
                return Err(CliError::input(
                    "give either phi0 or v0, not both".to_string(),
                ));
            }
            (_, Some(v)) => {
                ReconstructionSpec::with_velocity(ts, mags, quat(*omega), quat(*p0), quat(*v))?
            }
            (phi, None) => {
                ReconstructionSpec::new(ts, mags, quat(*omega), phi.unwrap_or(0.0), quat(*p0))?
            }
        };
        Ok(Some(spec))
    }
}
