//! Special functions: the error function and log-space binomial coefficients.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};
use std::sync::OnceLock;

/// Error function `erf(x) = (2/sqrt(pi)) int_0^x e^{-t^2} dt`.
///
/// Power series (all terms positive) for `|x| <= 2`, Laplace continued
/// fraction for the complementary function beyond. Absolute error stays below
/// ~1e-15 on the whole real line.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    if ax <= 2.0 {
        erf_series(x)
    } else if ax.is_infinite() {
        x.signum()
    } else {
        x.signum() * (1.0 - erfc_cf(ax))
    }
}

/// Complementary error function `erfc(x) = 1 - erf(x)`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x <= 2.0 {
        1.0 - erf_series(x)
    } else if x.is_infinite() {
        0.0
    } else {
        erfc_cf(x)
    }
}

/// erf via the scaled Maclaurin series
/// `erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_n (2x^2)^n / (2n+1)!!`.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..200u32 {
        term *= 2.0 * x2 / (2.0 * f64::from(n) + 1.0);
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
    }
    FRAC_2_SQRT_PI * x * (-x2).exp() * sum
}

/// erfc via the Laplace continued fraction
/// `sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`,
/// evaluated with the modified Lentz scheme. Valid for x >= 2.
fn erfc_cf(x: f64) -> f64 {
    if x > 27.0 {
        // e^{-x^2} underflows; erfc < 1e-318
        return 0.0;
    }
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for m in 1..=300u32 {
        let a = f64::from(m) / 2.0;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

const LN_FACT_TABLE_LEN: usize = 4096;

static LN_FACT: OnceLock<Vec<f64>> = OnceLock::new();

fn ln_fact_table() -> &'static [f64] {
    LN_FACT.get_or_init(|| {
        let mut t = vec![0.0; LN_FACT_TABLE_LEN];
        for i in 2..LN_FACT_TABLE_LEN {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    })
}

/// `ln C(n, k)` for `0 <= k <= n`. Table lookup for n < 4096, direct product
/// beyond.
pub(crate) fn ln_binomial(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    if k == 0 || k == n {
        return 0.0;
    }
    if (n as usize) < LN_FACT_TABLE_LEN {
        let t = ln_fact_table();
        t[n as usize] - t[k as usize] - t[(n - k) as usize]
    } else {
        let k = k.min(n - k);
        (1..=k).map(|i| (((n - k + i) as f64) / (i as f64)).ln()).sum()
    }
}
