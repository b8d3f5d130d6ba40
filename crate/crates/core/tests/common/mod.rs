//! Shared oracles for the integration suites. Everything here recomputes the
//! physics from first principles along routes independent of the library:
//! a literal four-mode state construction, direct (non-log-space) binomials,
//! and an inertia-count bisection eigensolver.

#![allow(dead_code)]

use ndarray::Array2;

/// Binomial coefficient by the multiplicative formula, in plain f64.
pub fn binomial_direct(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// Beam-splitter coefficient evaluated directly (no log space).
pub fn xi_direct(n: usize, k: usize, t: f64) -> f64 {
    let r = 1.0 - t;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * binomial_direct(n, k).sqrt()
        * t.powf(0.5 * (n - k) as f64)
        * r.powf(0.5 * k as f64)
}

pub fn alpha_direct(lambda: f64, n: usize) -> f64 {
    (1.0 - lambda * lambda).sqrt() * lambda.powf(n as f64)
}

/// The four-mode state after both tap beam splitters, expanded literally:
/// amplitude of |a>_A |b>_B |i>_C |j>_D for every total photon number
/// n = a + i = b + j up to `nmax`. Stored dense so element traces stay cheap.
pub struct FourModeOracle {
    nmax: usize,
    dim: usize,
    amps: Vec<f64>,
    pdet_on_on: f64,
}

impl FourModeOracle {
    pub fn build(lambda: f64, t: f64, nmax: usize) -> Self {
        let dim = nmax + 1;
        let mut amps = vec![0.0; dim * dim * dim * dim];
        let at = |a: usize, b: usize, i: usize, j: usize| ((a * dim + b) * dim + i) * dim + j;
        for n in 0..=nmax {
            let an = alpha_direct(lambda, n);
            for i in 0..=n {
                let xi_i = xi_direct(n, i, t);
                for j in 0..=n {
                    amps[at(n - i, n - j, i, j)] = an * xi_i * xi_direct(n, j, t);
                }
            }
        }
        let mut pdet_on_on = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for i in 1..dim {
                    for j in 1..dim {
                        let v = amps[at(a, b, i, j)];
                        pdet_on_on += v * v;
                    }
                }
            }
        }
        Self { nmax, dim, amps, pdet_on_on }
    }

    fn amp(&self, a: usize, b: usize, i: usize, j: usize) -> f64 {
        self.amps[((a * self.dim + b) * self.dim + i) * self.dim + j]
    }

    /// Probability of at least one photon in each tap arm.
    pub fn pdet_mixed(&self) -> f64 {
        self.pdet_on_on
    }

    /// Probability of exactly one photon in each tap arm.
    pub fn pdet_pure(&self) -> f64 {
        let mut s = 0.0;
        for a in 0..self.dim {
            for b in 0..self.dim {
                let v = self.amp(a, b, 1, 1);
                s += v * v;
            }
        }
        s
    }

    /// `<m1, n1| rho_NG |m2, n2>` by tracing the on/on POVM over the tap arms.
    pub fn mixed_element(&self, m1: usize, m2: usize, n1: usize, n2: usize) -> f64 {
        let mut s = 0.0;
        for i in 1..=self.nmax {
            for j in 1..=self.nmax {
                s += self.amp(m1, n1, i, j) * self.amp(m2, n2, i, j);
            }
        }
        s / self.pdet_on_on
    }

    /// Renormalized Schmidt coefficients of the <1|_C <1|_D projection.
    pub fn pure_projection(&self) -> Vec<f64> {
        let raw: Vec<f64> = (0..self.nmax).map(|n| self.amp(n, n, 1, 1)).collect();
        let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
        raw.into_iter().map(|c| c / norm).collect()
    }
}

/// Number of eigenvalues of `a` strictly below `x`, by Sylvester inertia of
/// the LDL^T factorization of `a - x I`. Pivots that collapse to zero are
/// dodged by nudging `x` one part in 1e12.
fn count_below(a: &Array2<f64>, x: f64) -> usize {
    let n = a.nrows();
    let mut m = a.clone();
    let mut shift = x;
    'retry: loop {
        for i in 0..n {
            m[(i, i)] = a[(i, i)] - shift;
            for j in 0..i {
                m[(i, j)] = a[(i, j)];
                m[(j, i)] = a[(j, i)];
            }
        }
        let mut neg = 0;
        for k in 0..n {
            let pivot = m[(k, k)];
            if pivot == 0.0 {
                shift += shift.abs().max(1.0) * 1e-12;
                continue 'retry;
            }
            if pivot < 0.0 {
                neg += 1;
            }
            for i in (k + 1)..n {
                let f = m[(i, k)] / pivot;
                for j in (k + 1)..=i {
                    let v = m[(i, j)] - f * m[(k, j)];
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
        }
        return neg;
    }
}

/// All eigenvalues of a symmetric matrix by inertia-count bisection between
/// Gershgorin bounds. Independent of the Jacobi path.
pub fn eigenvalues_by_inertia(a: &Array2<f64>, tol: f64) -> Vec<f64> {
    let n = a.nrows();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
        lo = lo.min(a[(i, i)] - radius);
        hi = hi.max(a[(i, i)] + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    (0..n)
        .map(|k| {
            // k-th smallest eigenvalue: bisect on count_below
            let (mut a_lo, mut a_hi) = (lo, hi);
            while a_hi - a_lo > tol {
                let mid = 0.5 * (a_lo + a_hi);
                if count_below(a, mid) > k {
                    a_hi = mid;
                } else {
                    a_lo = mid;
                }
            }
            0.5 * (a_lo + a_hi)
        })
        .collect()
}

/// Central second difference with one Richardson step: f''(x) to O(h^4).
pub fn second_derivative<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Central first difference with one Richardson step: f'(x) to O(h^4).
pub fn first_derivative<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}
