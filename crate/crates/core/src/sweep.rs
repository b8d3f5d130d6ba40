//! Parameter sweeps over the squeezing grid and crossover-point solves.

use crate::densecoding::{i_mixed, i_pure, i_sq, SignalParams};
use crate::error::{Error, Result};
use crate::fock::{mean_photon_mixed, mean_photon_sq, pure_subtracted_state, ModelParams};
use crate::negativity::{
    build_pt_blocks, negativity_from_blocks, schmidt_negativity, sv_negativity,
};
use crate::teleport::{fid_mixed, fid_pure, fid_sq};
use crate::Resource;
use rayon::prelude::*;

/// Default bisection tolerance in lambda.
pub const DEFAULT_CROSSING_TOL: f64 = 1e-4;
/// Default sweep grid: 50 uniform points on [0.05, 0.9].
pub const DEFAULT_GRID: (f64, f64, usize) = (0.05, 0.9, 50);
/// Default beta ladder for the dense-coding small-signal study.
pub const DEFAULT_LIMIT_BETAS: [f64; 7] = [1.5, 1.0, 0.7, 0.4, 0.2, 0.1, 0.05];

/// Measures that can be swept over lambda.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    LogNeg,
    Neg,
    Fidelity,
    MutualInfo,
    MeanPhoton,
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Measure::LogNeg => "logneg",
            Measure::Neg => "neg",
            Measure::Fidelity => "fidelity",
            Measure::MutualInfo => "mutualinfo",
            Measure::MeanPhoton => "meanphoton",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logneg" => Ok(Measure::LogNeg),
            "neg" => Ok(Measure::Neg),
            "fidelity" => Ok(Measure::Fidelity),
            "mutualinfo" => Ok(Measure::MutualInfo),
            "meanphoton" => Ok(Measure::MeanPhoton),
            _ => Err(Error::Parse(format!(
                "unknown measure `{s}` (expected logneg|neg|fidelity|mutualinfo|meanphoton)"
            ))),
        }
    }
}

/// One grid point: the three resource curves of one measure. `None` marks a
/// point where the value is unavailable (conditional state undefined, or the
/// measure has no curve for that resource).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub lambda: f64,
    pub value_sq: Option<f64>,
    pub value_pure: Option<f64>,
    pub value_mixed: Option<f64>,
    pub measure: Measure,
}

/// Evaluate `measure` on `kind` at `base.at_lambda(lambda)`.
///
/// `Ok(None)` means the combination has no defined curve (mean photon number
/// is only defined for the squeezed vacuum and the mixed state).
pub fn eval_measure(
    measure: Measure,
    kind: Resource,
    lambda: f64,
    base: &ModelParams,
    signal: Option<&SignalParams>,
) -> Result<Option<f64>> {
    let params = base.at_lambda(lambda)?;
    let value = match (measure, kind) {
        (Measure::LogNeg | Measure::Neg, kind) => {
            let report = match kind {
                Resource::Sq => sv_negativity(lambda)?,
                Resource::Pure => schmidt_negativity(&pure_subtracted_state(&params)?),
                Resource::Mixed => negativity_from_blocks(&build_pt_blocks(&params)?)?,
            };
            Some(match measure {
                Measure::LogNeg => report.log_negativity,
                _ => report.negativity,
            })
        }
        (Measure::Fidelity, Resource::Sq) => Some(fid_sq(lambda)?.value),
        (Measure::Fidelity, Resource::Pure) => Some(fid_pure(&params)?.value),
        (Measure::Fidelity, Resource::Mixed) => Some(fid_mixed(&params)?.value),
        (Measure::MutualInfo, kind) => {
            let signal = signal.ok_or(Error::Domain {
                name: "signal",
                value: f64::NAN,
                expected: "a SignalParams for mutualinfo",
            })?;
            Some(match kind {
                Resource::Sq => i_sq(lambda, signal.beta)?,
                Resource::Pure => i_pure(&params, signal)?,
                Resource::Mixed => i_mixed(&params, signal)?,
            })
        }
        (Measure::MeanPhoton, Resource::Sq) => Some(mean_photon_sq(lambda)?),
        (Measure::MeanPhoton, Resource::Mixed) => Some(mean_photon_mixed(&params)?),
        (Measure::MeanPhoton, Resource::Pure) => None,
    };
    Ok(value)
}

/// Sweep one measure over a lambda grid. Points are independent and evaluated
/// in parallel; the output order follows the grid, so identical inputs give
/// bit-identical output. Per-point errors are recorded as unavailable values.
pub fn sweep(
    measure: Measure,
    grid: &[f64],
    base: &ModelParams,
    signal: Option<&SignalParams>,
) -> Vec<SweepRecord> {
    grid.par_iter()
        .map(|&lambda| {
            let one = |kind| match eval_measure(measure, kind, lambda, base, signal) {
                Ok(v) => v,
                Err(e) => {
                    log::warn!("{measure} ({kind}) unavailable at lambda = {lambda}: {e}");
                    None
                }
            };
            SweepRecord {
                lambda,
                value_sq: one(Resource::Sq),
                value_pure: one(Resource::Pure),
                value_mixed: one(Resource::Mixed),
                measure,
            }
        })
        .collect()
}

/// `n` uniform points on `[a, b]` (inclusive).
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Outcome of one bisection solve for `f = g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub lambda_star: f64,
    pub bracket: (f64, f64),
    /// `|f - g|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Bisection for the intersection of two curves inside a bracket where
/// `f - g` changes sign. Stops when the bracket is shorter than `tol`.
pub fn find_crossing<F, G>(f: F, g: G, bracket: (f64, f64), tol: f64) -> Result<CrossoverResult>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain { name: "tol", value: tol, expected: "> 0" });
    }
    let h = |x: f64| -> Result<f64> { Ok(f(x)? - g(x)?) };
    let (mut lo, mut hi) = bracket;
    let mut h_lo = h(lo)?;
    let h_hi = h(hi)?;
    if h_lo == 0.0 {
        return Ok(CrossoverResult { lambda_star: lo, bracket, residual: 0.0, iterations: 0 });
    }
    if h_hi == 0.0 {
        return Ok(CrossoverResult { lambda_star: hi, bracket, residual: 0.0, iterations: 0 });
    }
    if h_lo.signum() == h_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        let h_mid = h(mid)?;
        iterations += 1;
        if h_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if h_mid.signum() == h_lo.signum() {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    let lambda_star = 0.5 * (lo + hi);
    let residual = h(lambda_star)?.abs();
    Ok(CrossoverResult { lambda_star, bracket, residual, iterations })
}

/// Locate the gain-to-loss intersection of a subtracted-resource curve with
/// the squeezed-vacuum curve: scan a coarse grid for the last sign change,
/// then bisect inside it.
pub fn find_measure_crossing(
    measure: Measure,
    kind: Resource,
    base: &ModelParams,
    signal: Option<&SignalParams>,
    scan: (f64, f64, usize),
    tol: f64,
) -> Result<CrossoverResult> {
    let sig = signal.copied();
    let curve = move |lambda: f64| -> Result<f64> {
        eval_measure(measure, kind, lambda, base, sig.as_ref())?.ok_or(Error::Domain {
            name: "measure",
            value: f64::NAN,
            expected: "a defined curve for this resource",
        })
    };
    let reference = move |lambda: f64| -> Result<f64> {
        eval_measure(measure, Resource::Sq, lambda, base, sig.as_ref())?.ok_or(Error::Domain {
            name: "measure",
            value: f64::NAN,
            expected: "a defined squeezed-vacuum curve",
        })
    };
    let (a, b, n) = scan;
    let grid = uniform_grid(a, b, n.max(2));
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for &x in &grid {
        let d = curve(x)? - reference(x)?;
        if let Some((px, pd)) = prev {
            if pd > 0.0 && d <= 0.0 {
                bracket = Some((px, x));
            }
        }
        prev = Some((x, d));
    }
    let bracket = bracket.ok_or(Error::NoSignChange { lo: a, hi: b })?;
    find_crossing(curve, reference, bracket, tol)
}

/// Per-beta intersections of the pure/mixed dense-coding curves with the
/// squeezed-vacuum curve.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLimitRecord {
    pub beta: f64,
    pub lambda_star_pure: Option<f64>,
    pub lambda_star_mixed: Option<f64>,
}

/// Walk the beta ladder and record both intersections at each step. A missing
/// sign change is recorded, not fatal.
pub fn dense_coding_limit_study(betas: &[f64], base: &ModelParams) -> Vec<DenseLimitRecord> {
    betas
        .iter()
        .map(|&beta| {
            let solve = |kind| match SignalParams::new(beta).and_then(|sig| {
                find_measure_crossing(
                    Measure::MutualInfo,
                    kind,
                    base,
                    Some(&sig),
                    (0.02, 0.985, 60),
                    DEFAULT_CROSSING_TOL,
                )
            }) {
                Ok(r) => Some(r.lambda_star),
                Err(e) => {
                    log::warn!("dense-coding crossing ({kind}) missing at beta = {beta}: {e}");
                    None
                }
            };
            DenseLimitRecord {
                beta,
                lambda_star_pure: solve(Resource::Pure),
                lambda_star_mixed: solve(Resource::Mixed),
            }
        })
        .collect()
}
