//! Average fidelity of continuous-variable teleportation of a coherent state,
//! with the photon-subtracted resources and the squeezed vacuum.
//!
//! Closed forms only; the Bell-outcome-resolved integrands are exposed so the
//! closed forms can be cross-checked by quadrature.

use crate::error::{Error, Result};
use crate::fock::{check_lambda, pdet_mixed, pdet_pure, ModelParams};
use crate::Resource;
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

/// Average teleportation fidelity, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityResult {
    pub value: f64,
}

/// `(1 + lambda)/2` with the squeezed-vacuum resource.
pub fn fid_sq(lambda: f64) -> Result<FidelityResult> {
    check_lambda(lambda)?;
    Ok(FidelityResult { value: 0.5 * (1.0 + lambda) })
}

/// Closed form with the pure photon-subtracted resource.
pub fn fid_pure(params: &ModelParams) -> Result<FidelityResult> {
    let p1 = pdet_pure(params);
    if p1 == 0.0 {
        return Err(Error::ZeroDetectionProbability);
    }
    let lam = params.lambda;
    let t = params.transmittance;
    let r = params.reflectance();
    let lt = lam * t;
    let value = (1.0 - lam * lam) * lam * lam * t * t * (1.0 - lt + 0.5 * lt * lt)
        / (2.0 * p1 * (1.0 - lt).powi(3))
        * (r / t).powi(2);
    Ok(FidelityResult { value })
}

/// Closed form with the on/off (mixed) resource:
/// `sum_{ij} (-1)^{i+j} F_ij` with
/// `F_ij = (1/2P)(1-lambda^2)/[1 - lambda T - lambda^2 g_i g_j - (lambda^2 T/2)(g_i+g_j)]`,
/// `g_1 = R`, `g_0 = 0`.
pub fn fid_mixed(params: &ModelParams) -> Result<FidelityResult> {
    let p = pdet_mixed(params);
    if p == 0.0 {
        return Err(Error::ZeroDetectionProbability);
    }
    let lam = params.lambda;
    let l2 = lam * lam;
    let t = params.transmittance;
    let g = [0.0, params.reflectance()];
    let mut value = 0.0;
    for (i, &gi) in g.iter().enumerate() {
        for (j, &gj) in g.iter().enumerate() {
            let f = 0.5 / p * (1.0 - l2)
                / (1.0 - lam * t - l2 * gi * gj - 0.5 * l2 * t * (gi + gj));
            value += sign(i + j) * f;
        }
    }
    Ok(FidelityResult { value })
}

/// Bell-outcome-resolved integrand `P^(tlp)(x,p) F(x,p)` whose `(x,p)`
/// integral is the average fidelity.
///
/// For the pure resource the two auxiliary-parameter derivatives factorize
/// and expand to `C lambda^2 (1 + lambda T q)^2 e^{-2(1 - lambda T) q}` with
/// `q = |Q|^2` and `Q = (x + ip)/sqrt(2) - alpha0`.
pub fn fid_xp_integrand(
    kind: Resource,
    x: f64,
    p: f64,
    alpha0: Complex64,
    params: &ModelParams,
) -> Result<f64> {
    let lam = params.lambda;
    let l2 = lam * lam;
    let t = params.transmittance;
    let r = params.reflectance();
    match kind {
        Resource::Pure => {
            let p1 = pdet_pure(params);
            if p1 == 0.0 {
                return Err(Error::ZeroDetectionProbability);
            }
            let q = (x / SQRT_2 - alpha0.re).powi(2) + (p / SQRT_2 - alpha0.im).powi(2);
            let c = r * r * (1.0 - l2) / (2.0 * PI * p1);
            Ok(c * l2 * (1.0 + lam * t * q).powi(2) * (-2.0 * (1.0 - lam * t) * q).exp())
        }
        Resource::Mixed => {
            let pd = pdet_mixed(params);
            if pd == 0.0 {
                return Err(Error::ZeroDetectionProbability);
            }
            let g = [0.0, r];
            let rho2 = (x - SQRT_2 * alpha0.re).powi(2) + (p - SQRT_2 * alpha0.im).powi(2);
            let mut value = 0.0;
            for (i, &gi) in g.iter().enumerate() {
                for (j, &gj) in g.iter().enumerate() {
                    let dij = 1.0 - l2 * gi * gj;
                    let kij =
                        (1.0 - lam * t - l2 * gi * gj - 0.5 * l2 * t * (gi + gj)) / dij;
                    value += sign(i + j) * 0.5 / (PI * pd) * (1.0 - l2) / dij
                        * (-kij * rho2).exp();
                }
            }
            Ok(value)
        }
        Resource::Sq => Err(Error::Domain {
            name: "kind",
            value: f64::NAN,
            expected: "pure or mixed",
        }),
    }
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}
