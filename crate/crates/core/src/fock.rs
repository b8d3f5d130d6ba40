//! Closed-form Fock-space coefficients of the tapped two-mode squeezed vacuum:
//! state constructions, detection probabilities and mean photon numbers.
//!
//! Geometry: the two arms of a squeezed vacuum with Schmidt coefficients
//! `alpha_n = sqrt(1-lambda^2) lambda^n` are each tapped by a beam splitter of
//! transmittance `T`; conditioning on the tap detectors yields either the pure
//! subtracted state (number-resolving detectors, one photon in each arm) or
//! the mixed one (on/off detectors).

use crate::error::{Error, Result};
use crate::special::ln_binomial;

/// Default tap transmittance.
pub const DEFAULT_TRANSMITTANCE: f64 = 0.9;
/// Default Fock cutoff.
pub const DEFAULT_KMAX: usize = 50;
/// Default relative tail-truncation tolerance for infinite sums.
pub const DEFAULT_TAIL_REL_TOL: f64 = 1e-16;

/// Hard cap on the reduced sum index in [`mixed_density_element`]; the terms
/// decay geometrically, so this is only a guard against pathological
/// parameters near `lambda -> 1`.
const SUM_CAP: u64 = 500;

/// Squeezing, tap transmittance, Fock cutoff and tail tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Squeezing parameter `lambda = tanh r`, in `[0, 1)`.
    pub lambda: f64,
    /// Tap transmittance `T`, in `(0, 1]`. The reflectance `R = 1 - T` is
    /// always derived, never stored.
    pub transmittance: f64,
    /// Fock cutoff `K_max`.
    pub kmax: usize,
    /// Relative tail tolerance for truncating infinite sums.
    pub tail_rel_tol: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, transmittance: f64, kmax: usize, tail_rel_tol: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !(transmittance > 0.0 && transmittance <= 1.0) {
            return Err(Error::Domain {
                name: "transmittance",
                value: transmittance,
                expected: "(0, 1]",
            });
        }
        if !(tail_rel_tol > 0.0 && tail_rel_tol.is_finite()) {
            return Err(Error::Domain {
                name: "tail_rel_tol",
                value: tail_rel_tol,
                expected: "(0, inf)",
            });
        }
        Ok(Self { lambda, transmittance, kmax, tail_rel_tol })
    }

    /// `T = 0.9`, `K_max = 50`, `tail_rel_tol = 1e-16`.
    pub fn with_defaults(lambda: f64) -> Result<Self> {
        Self::new(lambda, DEFAULT_TRANSMITTANCE, DEFAULT_KMAX, DEFAULT_TAIL_REL_TOL)
    }

    /// Same parameters at a different squeezing value.
    pub fn at_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(lambda, self.transmittance, self.kmax, self.tail_rel_tol)
    }

    /// Reflectance `R = 1 - T`.
    pub fn reflectance(&self) -> f64 {
        1.0 - self.transmittance
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::Domain { name: "lambda", value: lambda, expected: "[0, 1)" });
    }
    Ok(())
}

/// Non-negative Schmidt coefficients of a pure two-mode state
/// `sum_n c_n |n>|n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtState {
    coeffs: Vec<f64>,
}

impl SchmidtState {
    /// Rejects negative or non-finite coefficients and empty vectors.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain {
                name: "coeffs.len",
                value: 0.0,
                expected: "at least one coefficient",
            });
        }
        for &c in &coeffs {
            if !(c >= 0.0 && c.is_finite()) {
                return Err(Error::Domain {
                    name: "schmidt coefficient",
                    value: c,
                    expected: "finite and >= 0",
                });
            }
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Largest Fock index carried by the state.
    pub fn max_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `sum_n c_n`.
    pub fn coeff_sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `sum_n c_n^2`; 1 up to the truncation tail.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

/// Fock indices of one density-matrix element
/// `<m1, n1| rho |m2, n2>` (mode A carries m, mode B carries n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DensityElementKey {
    pub m1: usize,
    pub m2: usize,
    pub n1: usize,
    pub n2: usize,
}

impl DensityElementKey {
    pub fn new(m1: usize, m2: usize, n1: usize, n2: usize) -> Self {
        Self { m1, m2, n1, n2 }
    }

    /// Selection rule: the element can be nonzero only if `m1 - n1 = m2 - n2`.
    pub fn is_allowed(&self) -> bool {
        self.m1 as i64 - self.n1 as i64 == self.m2 as i64 - self.n2 as i64
    }
}

/// Schmidt coefficient `alpha_n = sqrt(1 - lambda^2) lambda^n` of the
/// two-mode squeezed vacuum.
pub fn schmidt_coeff(lambda: f64, n: usize) -> Result<f64> {
    check_lambda(lambda)?;
    Ok((1.0 - lambda * lambda).sqrt() * powi(lambda, n))
}

/// Beam-splitter coefficient
/// `xi_{nk} = (-1)^k sqrt(C(n,k)) T^{(n-k)/2} R^{k/2}`, evaluated in log
/// space so large `n` stays finite.
pub fn bs_coeff(n: u64, k: u64, transmittance: f64) -> Result<f64> {
    if !(transmittance > 0.0 && transmittance <= 1.0) {
        return Err(Error::Domain {
            name: "transmittance",
            value: transmittance,
            expected: "(0, 1]",
        });
    }
    if k > n {
        return Err(Error::Domain { name: "k", value: k as f64, expected: "0 <= k <= n" });
    }
    if k == 0 {
        return Ok((0.5 * n as f64 * transmittance.ln()).exp());
    }
    let r = 1.0 - transmittance;
    if r == 0.0 {
        return Ok(0.0);
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let ln_mag = 0.5
        * (ln_binomial(n, k) + (n - k) as f64 * transmittance.ln() + k as f64 * r.ln());
    Ok(sign * ln_mag.exp())
}

/// Heralding probability `P_det^(1)` of exactly one photon in each tap arm.
pub fn pdet_pure(params: &ModelParams) -> f64 {
    let l2 = params.lambda * params.lambda;
    let t = params.transmittance;
    let r = params.reflectance();
    let l2t2 = l2 * t * t;
    (1.0 - l2) * l2 * t * t * (1.0 + l2t2) / (1.0 - l2t2).powi(3) * (r / t).powi(2)
}

/// Heralding probability `P_det` of at least one photon in each tap arm.
pub fn pdet_mixed(params: &ModelParams) -> f64 {
    let l2 = params.lambda * params.lambda;
    let t = params.transmittance;
    let r = params.reflectance();
    l2 * r * r * (1.0 + l2 * t) / ((1.0 - l2 * t) * (1.0 - l2 * t * t))
}

/// Schmidt coefficients of the pure photon-subtracted state,
/// `c_n = alpha_{n+1} xi_{(n+1),1}^2 / sqrt(P_det^(1))` for `n = 0..=K_max`.
pub fn pure_subtracted_state(params: &ModelParams) -> Result<SchmidtState> {
    let p1 = pdet_pure(params);
    if p1 == 0.0 {
        return Err(Error::ZeroDetectionProbability);
    }
    let norm = p1.sqrt();
    let lam = params.lambda;
    let t = params.transmittance;
    let r = params.reflectance();
    let front = (1.0 - lam * lam).sqrt() * r / norm;
    let coeffs = (0..=params.kmax)
        .map(|n| front * powi(lam, n + 1) * (n as f64 + 1.0) * powi(t, n))
        .collect();
    SchmidtState::new(coeffs)
}

/// Schmidt coefficients `alpha_n` of the unsubtracted squeezed vacuum,
/// truncated at `n = kmax`. Feed to the block pipeline to cross-check the
/// analytic squeezed-vacuum negativity.
pub fn squeezed_vacuum_state(lambda: f64, kmax: usize) -> Result<SchmidtState> {
    check_lambda(lambda)?;
    let front = (1.0 - lambda * lambda).sqrt();
    SchmidtState::new((0..=kmax).map(|n| front * powi(lambda, n)).collect())
}

/// Fock element `<m1, n1| rho_NG |m2, n2>` of the on/off-conditioned mixed
/// state.
///
/// The double sum over tap outcomes `(i, j)` carries two Kronecker deltas
/// that pin `j = i + (m1 - n1)`, so it collapses to a single sum over
/// `i >= max(1, 1 - (m1 - n1))`. Every surviving term is positive (the four
/// beam-splitter signs pair up), so the running sum is monotone and the tail
/// cut at `tail_rel_tol` is safe. Terms decay geometrically like
/// `(lambda R)^{2i}` times a polynomial.
pub fn mixed_density_element(key: DensityElementKey, params: &ModelParams) -> Result<f64> {
    if !key.is_allowed() {
        return Ok(0.0);
    }
    // Hermiticity holds bitwise: normalize to m1 <= m2 so swapped keys take
    // the identical arithmetic path.
    if key.m1 > key.m2 {
        return mixed_density_element(
            DensityElementKey::new(key.m2, key.m1, key.n2, key.n1),
            params,
        );
    }
    let p = pdet_mixed(params);
    if p == 0.0 {
        return Err(Error::ZeroDetectionProbability);
    }
    let lam = params.lambda;
    let t = params.transmittance;
    let r = params.reflectance();
    let (ln_lam, ln_t, ln_r) = (lam.ln(), t.ln(), r.ln());
    let ln_front = (1.0 - lam * lam).ln()
        + 0.5 * (key.m1 + key.m2 + key.n1 + key.n2) as f64 * ln_t;
    let d = key.m1 as i64 - key.n1 as i64;
    let i0 = (1 - d).max(1) as u64;
    let mut sum = 0.0;
    for i in i0..=SUM_CAP {
        let j = (i as i64 + d) as u64;
        let na = key.m1 as u64 + i;
        let nb = key.m2 as u64 + i;
        let ln_term = ln_front
            + (na + nb) as f64 * ln_lam
            + 0.5 * (ln_binomial(na, i) + ln_binomial(na, j) + ln_binomial(nb, i) + ln_binomial(nb, j))
            + (i + j) as f64 * ln_r;
        let term = ln_term.exp();
        sum += term;
        if term <= params.tail_rel_tol * sum {
            break;
        }
    }
    Ok(sum / p)
}

/// Mean photon number `Tr[rho_NG (N_A + N_B)]` of the conditioned mixed
/// state.
pub fn mean_photon_mixed(params: &ModelParams) -> Result<f64> {
    let p = pdet_mixed(params);
    if p == 0.0 {
        return Err(Error::ZeroDetectionProbability);
    }
    let l2 = params.lambda * params.lambda;
    let t = params.transmittance;
    let bracket = l2 * t / (1.0 - l2).powi(2) - l2 * t / (1.0 - l2 * t).powi(2)
        - l2 * t * t / (1.0 - l2 * t).powi(2)
        + l2 * t * t / (1.0 - l2 * t * t).powi(2);
    Ok(2.0 * (1.0 - l2) / p * bracket)
}

/// Mean photon number `2 lambda^2 / (1 - lambda^2)` of the two-mode squeezed
/// vacuum.
pub fn mean_photon_sq(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(2.0 * lambda * lambda / (1.0 - lambda * lambda))
}

/// `x^n` by binary exponentiation on a usize exponent.
fn powi(x: f64, n: usize) -> f64 {
    let mut result = 1.0;
    let mut base = x;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    result
}
