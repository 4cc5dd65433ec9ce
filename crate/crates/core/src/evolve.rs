//! Evolutes (center-of-curvature curves) and evolvents (involutes) of
//! unit-speed quaternionic curves, with the curvature relations that tie a
//! curve to its evolute and the evolute-of-evolvent round trip.
//!
//! The defining formulas divide by `|κ|` (evolute) or vanish with
//! `λ0 − L(t)` (evolvent), so nodes within `SINGULAR_THRESHOLD` of those
//! degeneracies are excluded and reported rather than extrapolated.
//!
//! Derived-curve curvature (needed by the relation checks and the round
//! trip) is extracted with parametrization-independent formulas on a
//! stride-subsampled copy of the derived curve. Subsampling keeps the
//! per-step displacement well above the sample-noise floor — resampling a
//! short evolute onto a fine grid would amplify position noise by 1/h² —
//! and the gauge-invariant extraction equals the unit-speed (arc-length)
//! curvature by the chain rule, so the comparisons still happen in the
//! arc-length gauge the relations presume.

use crate::curve::{
    derivatives, require_unit_speed, ArcLength, CurveSamples, DEFAULT_UNIT_SPEED_TOL,
};
use crate::error::{Error, Result};
use crate::frenet::{curvature_cartesian, curvature_symplectic, CurvatureProfile};
use crate::numeric::fd::MIN_GRID_LEN;
use crate::parallel;
use crate::quat::{scalar_product, Quaternion};

/// Magnitudes at or below this are treated as singular (formula blows up).
pub const SINGULAR_THRESHOLD: f64 = 1e-6;

/// Target node count for subsampled derived-curve measurements.
const SUBSAMPLE_TARGET: usize = 200;

/// Width (in source nodes) of the band at each run end polluted by
/// one-sided derivative stencils in the quantities being measured.
const BOUNDARY_BAND: usize = 4;

// ── Evolute ──────────────────────────────────────────────────────────

/// An evolute with its per-node construction data.
#[derive(Debug, Clone)]
pub struct EvoluteResult {
    /// The evolute samples, on the source grid minus singular nodes.
    pub curve: CurveSamples,
    /// Per kept node, the unit pure-imaginary direction used (κ/|κ| for the
    /// Cartesian construction).
    pub omega_used: Vec<Quaternion>,
    /// Source parameter values excluded because |κ| (or |c|) ≈ 0 there.
    pub singular_nodes: Vec<f64>,
    /// Indices of the kept nodes in the source grid.
    pub source_indices: Vec<usize>,
}

fn assemble_evolute(
    c: &CurveSamples,
    offsets: &[Option<(Quaternion, Quaternion)>], // (offset, direction) per node
    meta: &str,
) -> Result<EvoluteResult> {
    let n = c.len();
    let mut ts = Vec::new();
    let mut qs = Vec::new();
    let mut omega_used = Vec::new();
    let mut singular_nodes = Vec::new();
    let mut source_indices = Vec::new();
    for i in 0..n {
        match offsets[i] {
            Some((offset, dir)) => {
                ts.push(c.ts()[i]);
                qs.push(c.qs()[i] + offset);
                omega_used.push(dir);
                source_indices.push(i);
            }
            None => singular_nodes.push(c.ts()[i]),
        }
    }
    if ts.len() < MIN_GRID_LEN {
        if singular_nodes.len() == n {
            return Err(Error::Degenerate(
                "straight line has no evolute (curvature vanishes everywhere)".into(),
            ));
        }
        return Err(Error::Degenerate(format!(
            "too few nonsingular nodes ({}) to form the evolute",
            ts.len()
        )));
    }
    let curve = CurveSamples::new(ts, qs)?.with_meta(meta);
    Ok(EvoluteResult { curve, omega_used, singular_nodes, source_indices })
}

/// The center-of-curvature curve `q_E = q + ω·(1/|κ|)·q′` with `ω = κ/|κ|`
/// taken per node from the source curve's extracted curvature.
///
/// The source must be unit-speed; nodes with `|κ|` at or below
/// [`SINGULAR_THRESHOLD`] are excluded and listed.
pub fn evolute(c: &CurveSamples) -> Result<EvoluteResult> {
    require_unit_speed(c, DEFAULT_UNIT_SPEED_TOL)?;
    let profile = curvature_cartesian(c)?;
    let d = derivatives(c);
    let offsets: Vec<Option<(Quaternion, Quaternion)>> = parallel::map_indices(c.len(), |i| {
        let mag = profile.kappa_mag[i];
        if mag <= SINGULAR_THRESHOLD {
            return None;
        }
        let omega = profile.kappa_at(i).scale(1.0 / mag);
        Some((omega.scale(1.0 / mag) * d.d1[i], omega))
    });
    assemble_evolute(c, &offsets, "evolute")
}

/// The evolute in symplectic form, `q_E = q + q′·(c/|c|²)·j`, built from the
/// extracted complex curvature. Agrees with [`evolute`] on curves whose
/// normal acceleration the complex curvature can represent.
pub fn evolute_symplectic(c: &CurveSamples) -> Result<EvoluteResult> {
    require_unit_speed(c, DEFAULT_UNIT_SPEED_TOL)?;
    let profile = curvature_symplectic(c)?;
    let d = derivatives(c);
    let offsets: Vec<Option<(Quaternion, Quaternion)>> = parallel::map_indices(c.len(), |i| {
        let cv = profile.c[i];
        let mag = cv.norm();
        if mag <= SINGULAR_THRESHOLD {
            return None;
        }
        let unit = cv / mag;
        let unit_q = Quaternion::new(unit.re, unit.im, 0.0, 0.0);
        let offset = d.d1[i] * unit_q.scale(1.0 / mag) * Quaternion::J;
        // the equivalent plane direction: conjugate the unit offset back
        let dir = (d.d1[i] * unit_q * Quaternion::J * d.d1[i].conj())
            .scale(1.0 / d.d1[i].norm_sq());
        Some((offset, dir))
    });
    assemble_evolute(c, &offsets, "symplectic evolute")
}

// ── Run selection and subsampling ────────────────────────────────────

fn longest_true_run(keep: &[bool]) -> Option<std::ops::Range<usize>> {
    let mut best: Option<std::ops::Range<usize>> = None;
    let mut start: Option<usize> = None;
    for i in 0..=keep.len() {
        let on = i < keep.len() && keep[i];
        match (on, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if best.as_ref().map_or(true, |b| i - s > b.len()) {
                    best = Some(s..i);
                }
                start = None;
            }
            _ => {}
        }
    }
    best
}

/// A subsampled regular run: the picked source indices and the interior
/// margin (in subsampled nodes) comparisons must keep from each end.
struct SubRun {
    idx: Vec<usize>,
    margin: usize,
}

/// Longest run of indices where `speeds` is above the singular threshold,
/// subsampled toward [`SUBSAMPLE_TARGET`] nodes. Errors with the given
/// degeneracy message when no usable run exists. The margin clears the
/// boundary band in source-grid units plus this extraction's own stencil.
fn subsampled_regular_run(speeds: &[f64], msg: &str) -> Result<SubRun> {
    let keep: Vec<bool> = speeds.iter().map(|&s| s > SINGULAR_THRESHOLD).collect();
    let run = longest_true_run(&keep).ok_or_else(|| Error::Degenerate(msg.to_string()))?;
    let stride = (run.len() / SUBSAMPLE_TARGET).max(1);
    let idx: Vec<usize> = run.step_by(stride).collect();
    let margin = 2 + BOUNDARY_BAND.div_ceil(stride);
    if idx.len() < 2 * margin + MIN_GRID_LEN {
        return Err(Error::Degenerate(msg.to_string()));
    }
    Ok(SubRun { idx, margin })
}

fn take_indices(c: &CurveSamples, idx: &[usize]) -> Result<CurveSamples> {
    let ts: Vec<f64> = idx.iter().map(|&i| c.ts()[i]).collect();
    let qs: Vec<Quaternion> = idx.iter().map(|&i| c.qs()[i]).collect();
    CurveSamples::new(ts, qs)
}

// ── Evolute diagnostics ──────────────────────────────────────────────

/// Outcome of the evolute-tangent orthogonality check.
#[derive(Debug, Clone)]
pub struct TangentReport {
    /// Max over interior nodes of |⟨q_E′, q′⟩| / (|q_E′|·|q′|), counting
    /// only nodes where the evolute tangent is above the singular threshold.
    pub max_interior_ratio: f64,
    /// True when the evolute tangent vanishes everywhere (the evolute is a
    /// point, as for constant |κ|) and the check is vacuous.
    pub vacuous: bool,
    /// Vacuous, or the interior ratio stayed below 1e−3.
    pub pass: bool,
}

/// Checks that the evolute's tangent is normal to the source tangent at the
/// matching nodes.
pub fn evolute_tangent_check(c: &CurveSamples, e: &EvoluteResult) -> Result<TangentReport> {
    let d = derivatives(c);
    let de = derivatives(&e.curve);
    let m = e.curve.len();
    let margin = 5usize;
    let mut max_ratio = 0.0f64;
    let mut measured = 0usize;
    for j in margin..m.saturating_sub(margin) {
        let te = de.d1[j];
        if te.norm() <= SINGULAR_THRESHOLD {
            continue;
        }
        let ts = d.d1[e.source_indices[j]];
        let ratio = scalar_product(te, ts).abs() / (te.norm() * ts.norm());
        max_ratio = max_ratio.max(ratio);
        measured += 1;
    }
    let vacuous = measured == 0;
    Ok(TangentReport {
        max_interior_ratio: max_ratio,
        vacuous,
        pass: vacuous || max_ratio < 1e-3,
    })
}

/// Outcome of a curvature-relation comparison between a curve and a curve
/// derived from it.
#[derive(Debug, Clone)]
pub struct CurvatureRelationReport {
    pub max_relative_deviation: f64,
    pub nodes_compared: usize,
    /// Source-parameter range actually tested.
    pub param_range: (f64, f64),
}

/// Checks the evolute curvature relation `κ_Ei·|q_E′| = κ_i` componentwise.
/// The evolute's arc-length curvature is extracted on a subsampled copy of
/// its longest regular run and scaled by the evolute's speed (derivative
/// with respect to the source's arc-length parameter); both sides are then
/// compared at the shared source nodes.
pub fn evolute_curvature_relation(
    c: &CurveSamples,
    e: &EvoluteResult,
) -> Result<CurvatureRelationReport> {
    let source = curvature_cartesian(c)?;
    let de = derivatives(&e.curve);
    let run = subsampled_regular_run(&de.speeds(), "relation untestable, evolute degenerate")?;
    let sub = take_indices(&e.curve, &run.idx)?;
    let ke = curvature_cartesian(&sub)?;
    let dsub = derivatives(&sub);
    let m = run.idx.len();
    let mut max_dev = 0.0f64;
    let mut compared = 0usize;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    for j in run.margin..m - run.margin {
        let i_src = e.source_indices[run.idx[j]];
        let scaled = ke.kappa_at(j).scale(dsub.d1[j].norm());
        let expect = source.kappa_at(i_src);
        let dev = (scaled - expect).norm() / expect.norm().max(1e-12);
        max_dev = max_dev.max(dev);
        compared += 1;
        let t = c.ts()[i_src];
        range.0 = range.0.min(t);
        range.1 = range.1.max(t);
    }
    Ok(CurvatureRelationReport {
        max_relative_deviation: max_dev,
        nodes_compared: compared,
        param_range: range,
    })
}

/// The symplectic analogue: `Re[c_E]·|q_E′| = Re[c]` and
/// `Im[c_E]·|q_E′| = Im[c]`, compared on the evolute's longest regular run.
pub fn evolute_curvature_relation_symplectic(
    c: &CurveSamples,
    e: &EvoluteResult,
) -> Result<CurvatureRelationReport> {
    let source = curvature_symplectic(c)?;
    let de = derivatives(&e.curve);
    let run = subsampled_regular_run(&de.speeds(), "relation untestable, evolute degenerate")?;
    let sub = take_indices(&e.curve, &run.idx)?;
    let ce = curvature_symplectic(&sub)?;
    let dsub = derivatives(&sub);
    let m = run.idx.len();
    let mut max_dev = 0.0f64;
    let mut compared = 0usize;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    for j in run.margin..m - run.margin {
        let i_src = e.source_indices[run.idx[j]];
        let scaled = ce.c[j] * dsub.d1[j].norm();
        let expect = source.c[i_src];
        let dev = (scaled - expect).norm() / expect.norm().max(1e-12);
        max_dev = max_dev.max(dev);
        compared += 1;
        let t = c.ts()[i_src];
        range.0 = range.0.min(t);
        range.1 = range.1.max(t);
    }
    Ok(CurvatureRelationReport {
        max_relative_deviation: max_dev,
        nodes_compared: compared,
        param_range: range,
    })
}

// ── Evolvent ─────────────────────────────────────────────────────────

/// The evolvent (involute) `q_I = q + (λ0 − L(t))·q′`, with arc length `L`
/// measured from the grid start. The source must be unit-speed. Every node
/// is kept: where `λ0 = L(t)` the evolvent touches the source curve (a cusp
/// of the involute), which downstream curvature operations flag.
pub fn evolvent(c: &CurveSamples, lambda0: f64) -> Result<CurveSamples> {
    if !lambda0.is_finite() {
        return Err(Error::InvalidInput(format!("length offset must be finite, got {lambda0}")));
    }
    require_unit_speed(c, DEFAULT_UNIT_SPEED_TOL)?;
    let al = ArcLength::new(c)?;
    let d = derivatives(c);
    let qs: Vec<Quaternion> = parallel::map_indices(c.len(), |i| {
        c.qs()[i] + d.d1[i].scale(lambda0 - al.at(c.ts()[i]).expect("node within span"))
    });
    CurveSamples::new(c.ts().to_vec(), qs).map(|s| s.with_meta("evolvent"))
}

/// Evolvent curvature law: predictions and a numerical cross-check.
#[derive(Debug, Clone)]
pub struct EvolventCurvatureReport {
    /// The predicted profile `κ_I = ω/|λ0 − L|` on the non-cusp nodes whose
    /// source direction is defined.
    pub predicted: CurvatureProfile,
    /// Source parameters where `λ0 − L(t)` is below the singular threshold.
    pub cusp_nodes: Vec<f64>,
    /// Source parameters where the evolvent curvature was measured.
    pub ts_measured: Vec<f64>,
    /// Numerically extracted |κ_I| at those parameters.
    pub measured_mag: Vec<f64>,
    /// Predicted 1/|λ0 − L| at the same parameters.
    pub predicted_at_measured: Vec<f64>,
    /// Max relative |measured − predicted|/predicted over the measured set.
    pub max_relative_error: f64,
}

/// Predicts the evolvent's curvature magnitude `1/|λ0 − L(t)|` (direction
/// from the source curvature) and verifies it by extracting the evolvent's
/// arc-length curvature on a subsampled copy of its longest regular run.
pub fn evolvent_curvature(c: &CurveSamples, lambda0: f64) -> Result<EvolventCurvatureReport> {
    let inv = evolvent(c, lambda0)?;
    let al = ArcLength::new(c)?;
    let source = curvature_cartesian(c)?;
    let n = c.len();
    let ls: Vec<f64> = c
        .ts()
        .iter()
        .map(|&t| al.at(t).expect("node within span"))
        .collect();

    let mut cusp_nodes = Vec::new();
    let mut pts = Vec::new();
    let mut pk = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        let gap = lambda0 - ls[i];
        if gap.abs() <= SINGULAR_THRESHOLD {
            cusp_nodes.push(c.ts()[i]);
            continue;
        }
        // the direction needs a well-defined source curvature direction
        if source.kappa_mag[i] <= SINGULAR_THRESHOLD {
            continue;
        }
        let omega = source.kappa_at(i).scale(1.0 / source.kappa_mag[i]);
        let mag = 1.0 / gap.abs();
        pts.push(c.ts()[i]);
        pk.0.push(omega.x1 * mag);
        pk.1.push(omega.x2 * mag);
        pk.2.push(omega.x3 * mag);
    }
    let predicted = CurvatureProfile::from_components(pts, pk.0, pk.1, pk.2)?;

    // measure: evolvent speed is |λ0 − L|·|κ|, regular away from cusps and
    // source curvature zeros
    let speeds: Vec<f64> = (0..n)
        .map(|i| (lambda0 - ls[i]).abs() * source.kappa_mag[i])
        .collect();
    let run =
        subsampled_regular_run(&speeds, "curvature law untestable, evolvent degenerate")?;
    let sub = take_indices(&inv, &run.idx)?;
    let ki = curvature_cartesian(&sub)?;
    let m = run.idx.len();
    let mut ts_measured = Vec::new();
    let mut measured_mag = Vec::new();
    let mut predicted_at_measured = Vec::new();
    let mut max_rel = 0.0f64;
    for j in run.margin..m - run.margin {
        let i_src = run.idx[j];
        let predicted_here = 1.0 / (lambda0 - ls[i_src]).abs();
        ts_measured.push(c.ts()[i_src]);
        measured_mag.push(ki.kappa_mag[j]);
        predicted_at_measured.push(predicted_here);
        max_rel = max_rel.max((ki.kappa_mag[j] - predicted_here).abs() / predicted_here);
    }
    Ok(EvolventCurvatureReport {
        predicted,
        cusp_nodes,
        ts_measured,
        measured_mag,
        predicted_at_measured,
        max_relative_error: max_rel,
    })
}

// ── Round trip ───────────────────────────────────────────────────────

/// Outcome of the evolute-of-evolvent round trip.
#[derive(Debug, Clone)]
pub struct RoundTripReport {
    /// Max pointwise distance between the recovered curve and the source,
    /// over interior compared nodes.
    pub max_deviation: f64,
    pub nodes_compared: usize,
    /// Source-parameter range actually compared.
    pub param_range: (f64, f64),
}

/// A curve is the evolute of any of its evolvents: builds the evolvent,
/// takes the evolute of its longest regular run (center-of-curvature
/// construction in parametrization-independent form), and compares against
/// the source samples at the shared nodes.
pub fn evolute_of_evolvent_roundtrip(c: &CurveSamples, lambda0: f64) -> Result<RoundTripReport> {
    let inv = evolvent(c, lambda0)?;
    let al = ArcLength::new(c)?;
    let source = curvature_cartesian(c)?;
    let n = c.len();
    let speeds: Vec<f64> = (0..n)
        .map(|i| {
            (lambda0 - al.at(c.ts()[i]).expect("node within span")).abs() * source.kappa_mag[i]
        })
        .collect();
    let run = subsampled_regular_run(&speeds, "round trip untestable, evolvent degenerate")?;
    let sub = take_indices(&inv, &run.idx)?;
    let ki = curvature_cartesian(&sub)?;
    let dsub = derivatives(&sub);
    let m = run.idx.len();
    let mut max_dev = 0.0f64;
    let mut compared = 0usize;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    for j in run.margin..m - run.margin {
        let mag = ki.kappa_mag[j];
        if mag <= SINGULAR_THRESHOLD {
            continue;
        }
        let omega = ki.kappa_at(j).scale(1.0 / mag);
        let unit_tangent = dsub.d1[j].scale(1.0 / dsub.d1[j].norm());
        let recovered = sub.qs()[j] + omega.scale(1.0 / mag) * unit_tangent;
        let i_src = run.idx[j];
        let dev = (recovered - c.qs()[i_src]).norm();
        max_dev = max_dev.max(dev);
        compared += 1;
        let t = c.ts()[i_src];
        range.0 = range.0.min(t);
        range.1 = range.1.max(t);
    }
    if compared == 0 {
        return Err(Error::Degenerate(
            "round trip untestable, no nonsingular interior nodes".into(),
        ));
    }
    Ok(RoundTripReport { max_deviation: max_dev, nodes_compared: compared, param_range: range })
}

// ── Tests ────────────────────────────────────────────────────────────
