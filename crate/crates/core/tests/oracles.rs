//! Independent-oracle checks: brute-force four-mode construction, quadrature
//! of the outcome-resolved densities, finite-difference derivative
//! validation, and an inertia-bisection eigensolver.

mod common;

use approx::assert_abs_diff_eq;
use common::{
    eigenvalues_by_inertia, first_derivative, second_derivative, FourModeOracle,
};
use ndarray::Array2;
use num_complex::Complex64;
use photsub::{
    build_pt_blocks, channel_matrix, erf, fid_mixed, fid_pure, fid_xp_integrand, i_mixed, i_pure,
    i_sq, limit_t1_negativity, mean_photon_mixed, mixed_density_element, mutual_information,
    negativity_from_blocks, pdet_mixed, pdet_pure, pure_subtracted_state, quad, schmidt_negativity,
    schmidt_pt_blocks, squeezed_vacuum_state, sv_negativity, sweep::find_measure_crossing,
    symmetric_eigenvalues, DensityElementKey, Measure, ModelParams, Resource, SignalParams,
};
use rand::prelude::*;
use std::f64::consts::SQRT_2;

fn params(lam: f64) -> ModelParams {
    ModelParams::with_defaults(lam).unwrap()
}

#[test]
fn pure_state_matches_four_mode_projection() {
    let p = params(0.5);
    let oracle = FourModeOracle::build(0.5, 0.9, 40);
    let brute = oracle.pure_projection();
    let state = pure_subtracted_state(&p).unwrap();
    for (n, &c) in state.coeffs().iter().enumerate().take(30) {
        assert_abs_diff_eq!(c, brute[n], epsilon = 1e-13);
    }
}

#[test]
fn pdet_values_match_four_mode_trace() {
    let oracle = FourModeOracle::build(0.5, 0.9, 40);
    let p = params(0.5);
    assert_abs_diff_eq!(pdet_mixed(&p) / oracle.pdet_mixed(), 1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(pdet_pure(&p) / oracle.pdet_pure(), 1.0, epsilon = 1e-10);
}

#[test]
fn density_elements_match_four_mode_povm() {
    // spot grid here; the full <= 8 sweep over six parameter sets is in the
    // acceptance suite
    let p = params(0.5);
    let oracle = FourModeOracle::build(0.5, 0.9, 40);
    for m1 in 0..6 {
        for m2 in 0..6 {
            for n1 in 0..6 {
                let n2 = m2 as i64 - m1 as i64 + n1 as i64;
                if !(0..6).contains(&n2) {
                    continue;
                }
                let key = DensityElementKey::new(m1, m2, n1, n2 as usize);
                let lib = mixed_density_element(key, &p).unwrap();
                let brute = oracle.mixed_element(m1, m2, n1, n2 as usize);
                assert_abs_diff_eq!(lib / brute, 1.0, epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn mean_photon_matches_fock_trace() {
    let p = ModelParams::new(0.5, 0.9, 60, 1e-16).unwrap();
    let mut trace = 0.0;
    for m in 0..=60usize {
        for n in 0..=60usize {
            trace += (m + n) as f64
                * mixed_density_element(DensityElementKey::new(m, m, n, n), &p).unwrap();
        }
    }
    assert_abs_diff_eq!(mean_photon_mixed(&p).unwrap() / trace, 1.0, epsilon = 1e-6);
}

#[test]
fn jacobi_matches_inertia_bisection() {
    let mut rng = StdRng::seed_from_u64(42);
    for trial in 0..3 {
        let n = 10;
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..=i {
                let v = rng.random_range(-1.0..1.0);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let mut jacobi = symmetric_eigenvalues(&m).unwrap();
        jacobi.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let oracle = eigenvalues_by_inertia(&m, 1e-12);
        for (a, b) in jacobi.iter().zip(oracle.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
        let _ = trial;
    }
}

#[test]
fn sv_pipeline_reproduces_closed_form_midrange() {
    for lam in [0.2, 0.5, 0.7] {
        let state = squeezed_vacuum_state(lam, 60).unwrap();
        let numeric = negativity_from_blocks(&schmidt_pt_blocks(&state)).unwrap();
        let closed = sv_negativity(lam).unwrap();
        assert_abs_diff_eq!(numeric.negativity, closed.negativity, epsilon = 1e-6);
        assert_abs_diff_eq!(numeric.log_negativity, closed.log_negativity, epsilon = 1e-6);
    }
}

#[test]
fn fidelity_closed_forms_match_quadrature() {
    let p = params(0.5);
    let a0 = Complex64::new(1.0, 2.0);
    let (x0, p0) = (SQRT_2 * a0.re, SQRT_2 * a0.im);
    for (kind, closed) in [
        (Resource::Pure, fid_pure(&p).unwrap().value),
        (Resource::Mixed, fid_mixed(&p).unwrap().value),
    ] {
        let integral = quad::integrate_2d(
            &|x, y| fid_xp_integrand(kind, x, y, a0, &p).unwrap(),
            x0 - 12.0,
            x0 + 12.0,
            p0 - 12.0,
            p0 + 12.0,
            1e-10,
        );
        assert_abs_diff_eq!(integral, closed, epsilon = 1e-8);
    }
}

#[test]
fn fidelity_quadrature_is_alpha0_independent() {
    let p = params(0.5);
    for (kind, closed) in [
        (Resource::Mixed, fid_mixed(&p).unwrap().value),
        (Resource::Pure, fid_pure(&p).unwrap().value),
    ] {
        for a0 in [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 2.0),
            Complex64::new(0.0, -3.0),
        ] {
            let (x0, p0) = (SQRT_2 * a0.re, SQRT_2 * a0.im);
            let integral = quad::integrate_2d(
                &|x, y| fid_xp_integrand(kind, x, y, a0, &p).unwrap(),
                x0 - 12.0,
                x0 + 12.0,
                p0 - 12.0,
                p0 + 12.0,
                1e-10,
            );
            assert_abs_diff_eq!(integral, closed, epsilon = 1e-8);
        }
    }
}

#[test]
fn teleport_mu_derivatives_match_finite_differences() {
    // the pure-resource integrand expands d^2/dmu1 dmu2 of
    // f(mu1, mu2) = exp[-(2 - h(mu1) - h(mu2)) q] / ((1 - l mu1)(1 - l mu2))
    // at mu = 0; rebuild it literally and difference it
    let (lam, t) = (0.5, 0.9);
    let p = params(lam);
    let p1 = pdet_pure(&p);
    let r = 0.1;
    for (x, y) in [(0.3, -0.8), (1.5, 0.4), (0.0, 0.0)] {
        let q: f64 = (x / SQRT_2).powi(2) + (y / SQRT_2).powi(2);
        let f = |mu1: f64, mu2: f64| {
            let g1 = 1.0 / (1.0 - lam * mu1);
            let g2 = 1.0 / (1.0 - lam * mu2);
            g1 * g2 * (-(2.0 - lam * t * g1 - lam * t * g2) * q).exp()
        };
        let h = 1e-4;
        let cross = |h: f64| {
            (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h)
        };
        let fd = (4.0 * cross(h / 2.0) - cross(h)) / 3.0;
        let prefactor = r * r * (1.0 - lam * lam) / (2.0 * std::f64::consts::PI * p1);
        let expanded =
            fid_xp_integrand(Resource::Pure, x, y, Complex64::new(0.0, 0.0), &p).unwrap();
        assert_abs_diff_eq!(prefactor * fd, expanded, epsilon = 1e-7);
    }
}

#[test]
fn densecoding_mu_derivatives_match_finite_differences() {
    // rebuild the auxiliary-parameter operand g(mu) = V(erf(beta sqrt(c mu)))/mu
    // literally, difference it, and compare the combined terms against the
    // public channel entries (each entry is term/4)
    let (lam, t, beta) = (0.5, 0.9, 1.5);
    let p = params(lam);
    let sig = SignalParams::new(beta).unwrap();
    let p1 = pdet_pure(&p);
    let r = 0.1;
    let lt = lam * t;
    let c = (1.0 + lt) / (1.0 - lt);
    let pref = (1.0 - lam * lam) * lam * lam * t * t
        / (p1 * (1.0 - lt).powi(2) * (1.0 - lam * lam * t * t))
        * (r / t).powi(2);
    let a1 = 2.0 * lt / (1.0 + lt);
    let a2 = (lt / (1.0 + lt)).powi(2);
    let h = 1e-4;

    let channel = channel_matrix(Resource::Pure, &p, &sig).unwrap();
    let entries = [channel.probs[0][0], channel.probs[0][1], channel.probs[0][3]];
    for (slot, entry) in entries.iter().enumerate() {
        let g = move |mu: f64| {
            let e = erf((c * mu).sqrt() * beta);
            let v = match slot {
                0 => (1.0 + e) * (1.0 + e),
                1 => 1.0 - e * e,
                _ => (1.0 - e) * (1.0 - e),
            };
            v / mu
        };
        let term = pref
            * (a2 * second_derivative(&g, 1.0, h) + a1 * first_derivative(&g, 1.0, h) + g(1.0));
        assert_abs_diff_eq!(term / 4.0, entry, epsilon = 1e-7);
    }
}

#[test]
fn channel_entries_match_quadrant_quadrature() {
    // both parameter sets from the invariants table
    for (lam, t, beta) in [(0.5, 0.9, 1.5), (0.3, 0.8, 0.7)] {
        let p = ModelParams::new(lam, t, 50, 1e-16).unwrap();
        let sig = SignalParams::new(beta).unwrap();
        let (xs, ps) = (SQRT_2 * beta, SQRT_2 * beta);
        let x_out = SQRT_2 * beta + 12.0;
        for kind in [Resource::Sq, Resource::Pure, Resource::Mixed] {
            let ch = channel_matrix(kind, &p, &sig).unwrap();
            let density = |x: f64, y: f64| {
                photsub::densecoding::homodyne_density(kind, x, y, xs, ps, &p).unwrap()
            };
            // decoded quadrants given a_00: (+,+) correct, (+,-) one-axis,
            // (-,-) two-axis
            let q_pp = quad::integrate_2d(&density, 0.0, x_out, 0.0, x_out, 1e-8);
            let q_pm = quad::integrate_2d(&density, 0.0, x_out, -x_out, 0.0, 1e-8);
            let q_mm = quad::integrate_2d(&density, -x_out, 0.0, -x_out, 0.0, 1e-8);
            assert_abs_diff_eq!(ch.probs[0][0], q_pp, epsilon = 1e-6);
            assert_abs_diff_eq!(ch.probs[0][1], q_pm, epsilon = 1e-6);
            assert_abs_diff_eq!(ch.probs[0][3], q_mm, epsilon = 1e-6);
        }
    }
}

#[test]
fn mixed_logneg_monotone_and_cutoff_stable() {
    let mut last = -1.0;
    for i in 0..9 {
        let lam = 0.05 + 0.1 * i as f64;
        let r = negativity_from_blocks(&build_pt_blocks(&params(lam)).unwrap()).unwrap();
        assert!(
            r.log_negativity > last,
            "log-negativity not increasing at lambda = {lam}"
        );
        last = r.log_negativity;
        // subtraction still pays off below the 0.772 crossing
        if lam <= 0.75 {
            let sv = sv_negativity(lam).unwrap().log_negativity;
            assert!(r.log_negativity > sv, "no gain at lambda = {lam}");
        }
    }
    // kmax 50 vs 60 moves E_N by less than 1e-3 at lambda = 0.8
    let a = negativity_from_blocks(
        &build_pt_blocks(&ModelParams::new(0.8, 0.9, 50, 1e-16).unwrap()).unwrap(),
    )
    .unwrap();
    let b = negativity_from_blocks(
        &build_pt_blocks(&ModelParams::new(0.8, 0.9, 60, 1e-16).unwrap()).unwrap(),
    )
    .unwrap();
    assert_abs_diff_eq!(a.log_negativity, b.log_negativity, epsilon = 1e-3);
}

#[test]
fn truncated_trace_stays_close_to_one() {
    let pt = build_pt_blocks(&params(0.88)).unwrap();
    assert!(pt.delta_trace >= 0.993, "Delta = {}", pt.delta_trace);
    assert!(pt.delta_trace <= 1.0 + 1e-12);
}

#[test]
fn t_to_one_limits_are_consistent() {
    let near = ModelParams::new(0.5, 0.9999, 60, 1e-16).unwrap();
    // negativity route
    let schmidt = schmidt_negativity(&pure_subtracted_state(&near).unwrap());
    let limit = limit_t1_negativity(0.5).unwrap();
    assert_abs_diff_eq!(schmidt.log_negativity, limit.log_negativity, epsilon = 1e-3);
    // fidelity route
    assert_abs_diff_eq!(
        fid_mixed(&near).unwrap().value,
        fid_pure(&near).unwrap().value,
        epsilon = 1e-3
    );
    // dense-coding route
    let sig = SignalParams::new(1.0).unwrap();
    assert_abs_diff_eq!(i_mixed(&near, &sig).unwrap(), i_pure(&near, &sig).unwrap(), epsilon = 1e-3);
}

#[test]
fn gain_region_widens_as_beta_shrinks() {
    let base = params(0.1);
    let narrow = find_measure_crossing(
        Measure::MutualInfo,
        Resource::Mixed,
        &base,
        Some(&SignalParams::new(1.5).unwrap()),
        (0.02, 0.985, 60),
        1e-4,
    )
    .unwrap();
    let wide = find_measure_crossing(
        Measure::MutualInfo,
        Resource::Mixed,
        &base,
        Some(&SignalParams::new(0.7).unwrap()),
        (0.02, 0.985, 60),
        1e-4,
    )
    .unwrap();
    assert!(narrow.lambda_star < wide.lambda_star);
}

#[test]
fn crossover_ordering_across_measures() {
    // lambda_T < lambda_LN and lambda_D <= lambda_LN for both resources
    let base = params(0.1);
    let scan = (0.5, 0.95, 10);
    let tol = 1e-4;
    let sig = SignalParams::new(0.05).unwrap();
    for kind in [Resource::Pure, Resource::Mixed] {
        let t = find_measure_crossing(Measure::Fidelity, kind, &base, None, scan, tol)
            .unwrap()
            .lambda_star;
        let ln = find_measure_crossing(Measure::LogNeg, kind, &base, None, scan, tol)
            .unwrap()
            .lambda_star;
        let d = find_measure_crossing(Measure::MutualInfo, kind, &base, Some(&sig), scan, tol)
            .unwrap()
            .lambda_star;
        assert!(t < ln, "{kind}: lambda_T = {t} !< lambda_LN = {ln}");
        assert!(d <= ln + tol, "{kind}: lambda_D = {d} !<= lambda_LN = {ln}");
    }
}

#[test]
fn closed_form_info_matches_channel_pipeline_structurally() {
    // the identity holds across parameters, not just at one point
    for (lam, t, beta) in [(0.2, 0.9, 0.7), (0.6, 0.8, 1.1), (0.85, 0.9, 0.3)] {
        let p = ModelParams::new(lam, t, 50, 1e-16).unwrap();
        let sig = SignalParams::new(beta).unwrap();
        let sq = mutual_information(&channel_matrix(Resource::Sq, &p, &sig).unwrap());
        assert_abs_diff_eq!(i_sq(lam, beta).unwrap(), sq, epsilon = 1e-10);
        let pu = mutual_information(&channel_matrix(Resource::Pure, &p, &sig).unwrap());
        assert_abs_diff_eq!(i_pure(&p, &sig).unwrap(), pu, epsilon = 1e-10);
        let mx = mutual_information(&channel_matrix(Resource::Mixed, &p, &sig).unwrap());
        assert_abs_diff_eq!(i_mixed(&p, &sig).unwrap(), mx, epsilon = 1e-10);
    }
}
