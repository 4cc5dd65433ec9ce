//! `quatcurve` — sample quaternionic curves, extract curvature profiles,
//! build evolutes and evolvents, reconstruct curves from curvature data,
//! and verify geometric invariants.
//!
//! Exit codes: 0 success, 1 verification failure (`verify` only),
//! 2 input/validation error. Data goes to the named output files;
//! diagnostics go to stderr.

mod output;
mod spec;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use quatcurve::curve::ArcLength;
use quatcurve::evolve::SINGULAR_THRESHOLD;
use quatcurve::{
    curvature_cartesian, curvature_symplectic, evolute, evolute_symplectic, evolvent,
    reconstruct_closed_form, reconstruct_ode, reconstruct_symplectic,
};
use serde::Serialize;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// A CLI-level failure: every variant maps to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed, or mathematically invalid input → exit 2.
    Input(String),
}

impl CliError {
    fn input(msg: String) -> Self {
        CliError::Input(msg)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl From<quatcurve::Error> for CliError {
    fn from(e: quatcurve::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "quatcurve",
    version,
    about = "Differential geometry of quaternionic curves: sampling, curvature, \
             evolutes, evolvents, reconstruction, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Picture {
    /// Pure-imaginary curvature κ acting by left multiplication.
    Cartesian,
    /// Complex curvature c acting by right multiplication with j.
    Symplectic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed-form phase-integral reconstruction.
    Closed,
    /// Fixed-step RK4 integration of the Frenet equation.
    Ode,
    /// Symplectic general solution from |c(t)| and a phase.
    Symplectic,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the curve a spec file describes to CSV (t,x0,x1,x2,x3)
    Sample { spec: PathBuf, out: PathBuf },
    /// Extract the curvature profile of the curve
    Curvature {
        spec: PathBuf,
        out: PathBuf,
        /// Which curvature picture to extract
        #[arg(long, value_enum, default_value = "cartesian")]
        picture: Picture,
    },
    /// Build the evolute (center-of-curvature curve); singular nodes go to
    /// a `.sidecar.json` next to the output
    Evolute {
        spec: PathBuf,
        out: PathBuf,
        /// Which curvature picture to build from
        #[arg(long, value_enum, default_value = "cartesian")]
        picture: Picture,
    },
    /// Build the evolvent (involute) for a length offset λ0; cusp nodes go
    /// to a `.sidecar.json` next to the output
    Evolvent {
        spec: PathBuf,
        out: PathBuf,
        /// Length offset λ0 in `q + (λ0 − L(t))·q′`
        #[arg(long)]
        lambda0: f64,
    },
    /// Reconstruct a curve from curvature data (spec kind `reconstruction`)
    Reconstruct {
        spec: PathBuf,
        out: PathBuf,
        /// Reconstruction method
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        /// RK4 step bound (ode method)
        #[arg(long, default_value_t = 1e-3)]
        max_step: f64,
    },
    /// Run the invariant check suite and write a JSON report
    Verify { spec: PathBuf, report: PathBuf },
}

#[derive(Serialize)]
struct EvoluteSidecar {
    /// Source parameters excluded because the curvature magnitude was
    /// within the singular threshold of zero.
    singular_nodes: Vec<f64>,
    kept_nodes: usize,
    source_nodes: usize,
}

#[derive(Serialize)]
struct EvolventSidecar {
    /// Source parameters where λ0 − L(t) is within the singular threshold
    /// of zero: the evolvent touches the source curve (cusps).
    cusp_nodes: Vec<f64>,
    lambda0: f64,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".sidecar.json");
    PathBuf::from(s)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Sample { spec, out } => {
            let curve = spec::load(&spec)?.curve()?;
            output::write_curve_csv(&out, &curve)?;
        }
        Command::Curvature { spec, out, picture } => {
            let curve = spec::load(&spec)?.curve()?;
            match picture {
                Picture::Cartesian => {
                    let profile = curvature_cartesian(&curve)?;
                    output::write_cartesian_profile_csv(&out, &profile)?;
                }
                Picture::Symplectic => {
                    let profile = curvature_symplectic(&curve)?;
                    let worst = profile.residual.iter().cloned().fold(0.0f64, f64::max);
                    if worst > 0.1 {
                        eprintln!(
                            "warning: symplectic residual reaches {worst:.3e}; the complex \
                             curvature cannot represent this curve's normal acceleration"
                        );
                    }
                    output::write_symplectic_profile_csv(&out, &profile)?;
                }
            }
        }
        Command::Evolute { spec, out, picture } => {
            let curve = spec::load(&spec)?.curve()?;
            let ev = match picture {
                Picture::Cartesian => evolute(&curve)?,
                Picture::Symplectic => evolute_symplectic(&curve)?,
            };
            output::write_curve_csv(&out, &ev.curve)?;
            output::write_json(
                &sidecar_path(&out),
                &EvoluteSidecar {
                    singular_nodes: ev.singular_nodes.clone(),
                    kept_nodes: ev.curve.len(),
                    source_nodes: curve.len(),
                },
            )?;
        }
        Command::Evolvent { spec, out, lambda0 } => {
            let curve = spec::load(&spec)?.curve()?;
            let inv = evolvent(&curve, lambda0)?;
            let al = ArcLength::new(&curve)?;
            let cusp_nodes: Vec<f64> = curve
                .ts()
                .iter()
                .copied()
                .filter(|&t| {
                    (lambda0 - al.at(t).expect("node within span")).abs() <= SINGULAR_THRESHOLD
                })
                .collect();
            output::write_curve_csv(&out, &inv)?;
            output::write_json(&sidecar_path(&out), &EvolventSidecar { cusp_nodes, lambda0 })?;
        }
        Command::Reconstruct { spec, out, method, max_step } => {
            let parsed = spec::load(&spec)?;
            let rspec = parsed.reconstruction_spec()?.ok_or_else(|| {
                CliError::input(
                    "reconstruct requires a spec of kind \"reconstruction\"".to_string(),
                )
            })?;
            let curve = match method {
                Method::Closed => reconstruct_closed_form(&rspec)?,
                Method::Ode => reconstruct_ode(&rspec.to_profile(), rspec.p0, rspec.v0, max_step)?,
                Method::Symplectic => {
                    // reuse |κ| as |c| and split the start point into its
                    // complex pair; the plane direction plays no role here
                    let s = quatcurve::quat::to_symplectic(rspec.p0);
                    reconstruct_symplectic(&rspec.ts, &rspec.kappa_mag, rspec.phi0, s.z0, s.z1)?
                }
            };
            output::write_curve_csv(&out, &curve)?;
        }
        Command::Verify { spec, report } => {
            let curve = spec::load(&spec)?.curve()?;
            let result = verify::run_checks(&spec.display().to_string(), &curve)?;
            output::write_json(&report, &result)?;
            if !result.all_passed() {
                for c in result.checks.iter().filter(|c| c.status == verify::Status::Fail) {
                    eprintln!(
                        "check failed: {} (measured {:.3e}, tolerance {:.3e})",
                        c.name,
                        c.measured.unwrap_or(f64::NAN),
                        c.tolerance.unwrap_or(f64::NAN)
                    );
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
