//! Cyclic Jacobi eigensolver for real symmetric matrices.
//!
//! The partial-transpose blocks are small (a few hundred rows at most), dense
//! and symmetric; plain Jacobi rotations are robust and dependency-free at
//! this size.

use crate::error::{Error, Result};
use ndarray::Array2;

/// Inputs must be symmetric within this absolute tolerance.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Converged when the off-diagonal Frobenius norm falls below this times
/// `||A||_F`.
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a real symmetric matrix (unordered).
///
/// Rotations preserve the trace, so `sum(eigenvalues) = tr A` up to
/// round-off.
pub fn symmetric_eigenvalues(matrix: &Array2<f64>) -> Result<Vec<f64>> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::Domain {
            name: "matrix.ncols",
            value: matrix.ncols() as f64,
            expected: "a square matrix",
        });
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain {
            name: "matrix entry",
            value: f64::NAN,
            expected: "finite entries",
        });
    }
    let mut max_asym = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            max_asym = max_asym.max((matrix[(i, j)] - matrix[(j, i)]).abs());
        }
    }
    if max_asym > SYMMETRY_TOL {
        return Err(Error::NonSymmetric { max_asym });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![matrix[(0, 0)]]);
    }

    let mut a = matrix.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let fro = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if fro == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let target = OFF_DIAG_TOL * fro;

    for _ in 0..MAX_SWEEPS {
        let off = off_diag_fro(&a, n);
        if off <= target {
            return Ok((0..n).map(|i| a[(i, i)]).collect());
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (a[(q, q)] - a[(p, p)]) / apq;
                let den = theta.abs() + (theta * theta + 1.0).sqrt();
                let t = if theta < 0.0 { -1.0 / den } else { 1.0 / den };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[(p, p)] -= t * apq;
                a[(q, q)] += t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp - s * (akq + tau * akp);
                    let new_kq = akq + s * (akp - tau * akq);
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp;
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq;
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// `sqrt(2 sum_{i<j} a_ij^2)`.
fn off_diag_fro(a: &Array2<f64>, n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[(i, j)] * a[(i, j)];
        }
    }
    (2.0 * s).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn one_by_one() {
        let m = array![[3.25]];
        assert_eq!(symmetric_eigenvalues(&m).unwrap(), vec![3.25]);
    }

    #[test]
    fn exchange_matrix() {
        let m = array![[0.0, 1.0], [1.0, 0.0]];
        let ev = sorted(symmetric_eigenvalues(&m).unwrap());
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn known_three_by_three() {
        // eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2 and 2 -+ sqrt(2)
        let m = array![[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]];
        let ev = sorted(symmetric_eigenvalues(&m).unwrap());
        let r2 = 2.0f64.sqrt();
        assert_abs_diff_eq!(ev[0], 2.0 - r2, epsilon = 1e-13);
        assert_abs_diff_eq!(ev[1], 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(ev[2], 2.0 + r2, epsilon = 1e-13);
    }

    #[test]
    fn trace_preserved() {
        let m = array![
            [4.0, 1.5, -0.3, 0.0],
            [1.5, -2.0, 0.7, 0.2],
            [-0.3, 0.7, 1.0, -1.1],
            [0.0, 0.2, -1.1, 0.5]
        ];
        let tr: f64 = (0..4).map(|i| m[(i, i)]).sum();
        let fro = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        let ev = symmetric_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev.iter().sum::<f64>(), tr, epsilon = 1e-12 * fro);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = array![[1.0, 2.0], [2.1, 1.0]];
        match symmetric_eigenvalues(&m) {
            Err(Error::NonSymmetric { max_asym }) => assert_abs_diff_eq!(max_asym, 0.1, epsilon = 1e-12),
            other => panic!("expected NonSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn zero_matrix() {
        let m = Array2::<f64>::zeros((5, 5));
        assert_eq!(symmetric_eigenvalues(&m).unwrap(), vec![0.0; 5]);
    }
}
