//! CSV and JSON writers. All floats are written with 17 significant digits
//! (`{:.16e}`), "." decimal separator, so outputs are locale-independent,
//! full-precision, and byte-identical across runs.

use quatcurve::{CurvatureProfile, CurveSamples, SymplecticCurvatureProfile};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

use crate::CliError;

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", path.display())))?;
    f.write_all(contents.as_bytes())
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Curve samples as `t,x0,x1,x2,x3`.
pub fn write_curve_csv(path: &Path, c: &CurveSamples) -> Result<(), CliError> {
    let mut out = String::with_capacity(24 + c.len() * 120);
    out.push_str("t,x0,x1,x2,x3\n");
    for (t, q) in c.ts().iter().zip(c.qs()) {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            t, q.x0, q.x1, q.x2, q.x3
        ));
    }
    write_file(path, &out)
}

/// Cartesian curvature profile as `t,k1,k2,k3,kmag,residual`.
pub fn write_cartesian_profile_csv(path: &Path, p: &CurvatureProfile) -> Result<(), CliError> {
    let mut out = String::with_capacity(40 + p.ts.len() * 140);
    out.push_str("t,k1,k2,k3,kmag,residual\n");
    for i in 0..p.ts.len() {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            p.ts[i], p.k1[i], p.k2[i], p.k3[i], p.kappa_mag[i], p.residual[i]
        ));
    }
    write_file(path, &out)
}

/// Symplectic curvature profile as `t,re_c,im_c,residual`.
pub fn write_symplectic_profile_csv(
    path: &Path,
    p: &SymplecticCurvatureProfile,
) -> Result<(), CliError> {
    let mut out = String::with_capacity(30 + p.ts.len() * 100);
    out.push_str("t,re_c,im_c,residual\n");
    for i in 0..p.ts.len() {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            p.ts[i], p.c[i].re, p.c[i].im, p.residual[i]
        ));
    }
    write_file(path, &out)
}

/// Pretty-printed JSON with a trailing newline (serde_json field order is
/// the struct order, so this is deterministic).
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::input(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    write_file(path, &text)
}
