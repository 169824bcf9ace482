//! Cross-module invariants: the exact moment engine, the fits, and the
//! diagonalization oracle all describing the same physics.

use prony_cmx::catalog::{find, standard_catalog};
use prony_cmx::cmx::{order_scan, zn_from_moments};
use prony_cmx::moments::MomentSequence;
use prony_cmx::reference::{diagonalize, exact_c2_ho, exact_e_ho, oracle_moments, rrk_oracle};
use prony_cmx::scalar::ratio_to_f64;
use prony_cmx::state::normalize;

#[test]
fn oracle_moments_match_exact_engine() {
    // vᵀM^j v on a truncation covering the reach of M^12 reproduces the
    // exact μ_j through order 12 on every standard entry
    for e in standard_catalog() {
        let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 12).unwrap();
        let basis = if e.hamiltonian.dims() == 1 { 128 } else { 64 };
        let om = oracle_moments(&e.hamiltonian, &e.trial, basis, 12).unwrap();
        for j in 0..=12 {
            let exact = ratio_to_f64(&m.mu()[j]);
            let rel = (om[j] - exact).abs() / exact.abs().max(1.0);
            assert!(
                rel <= 1e-9,
                "{} moment {j}: oracle {} vs exact {exact} (rel {rel:.2e})",
                e.name,
                om[j]
            );
        }
    }
}

#[test]
fn ritz_values_respect_the_variational_bound() {
    for e in standard_catalog() {
        let r = diagonalize(&e.hamiltonian, &e.trial, e.oracle_m_start, 1e-10).unwrap();
        let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 9).unwrap();
        for n in 1..=5 {
            let (w, _) = rrk_oracle(&m, n).unwrap();
            assert!(
                w[0] >= r.energies[0] - 1e-9,
                "{} order {n}: Ritz value {} below ground energy {}",
                e.name,
                w[0],
                r.energies[0]
            );
        }
    }
}

#[test]
fn reference_energy_curve_is_monotone() {
    for e in standard_catalog() {
        let r = diagonalize(&e.hamiltonian, &e.trial, e.oracle_m_start, 1e-10).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=400 {
            let t = 5.0 * i as f64 / 400.0;
            let et = r.e(t);
            assert!(
                et <= prev + 1e-12,
                "{}: E({t}) = {et} above previous {prev}",
                e.name
            );
            prev = et;
        }
    }
}

#[test]
fn oracle_reproduces_both_closed_forms() {
    let e = find("ho").unwrap();
    let r = diagonalize(&e.hamiltonian, &e.trial, 16, 1e-10).unwrap();
    for i in 0..=50 {
        let t = 5.0 * i as f64 / 50.0;
        assert!((r.e(t) - exact_e_ho(t)).abs() <= 1e-8, "E({t})");
    }
    let g = find("ho_gauss").unwrap();
    let rg = diagonalize(&g.hamiltonian, &g.trial, 16, 1e-10).unwrap();
    for i in 0..=100 {
        let tau = std::f64::consts::FRAC_PI_2 * i as f64 / 100.0;
        assert!(
            (rg.correlation_sq(tau) - exact_c2_ho(tau)).abs() <= 1e-8,
            "C2({tau})"
        );
    }
}

#[test]
fn amplitudes_stay_positive_for_definite_hankel() {
    // positive-definite moment Hankel: all fitted weights non-negative and
    // all exponents real
    for e in standard_catalog() {
        let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 9).unwrap();
        assert!(m.hankel_is_psd(), "{}", e.name);
        for n in 1..=5 {
            let z = zn_from_moments(&m, n).unwrap();
            for (&a, &w) in z.amplitudes.iter().zip(&z.exponents) {
                assert!(a >= -1e-9, "{} order {n}: amplitude {a}", e.name);
                assert!(w.is_finite(), "{} order {n}: exponent {w}", e.name);
            }
            assert!(
                z.warnings.iter().all(|w| !w.contains("imaginary part")),
                "{} order {n}: {:?}",
                e.name,
                z.warnings
            );
        }
    }
}

#[test]
fn scan_reports_shared_budgets_and_the_energy_column() {
    let e = find("ho").unwrap();
    let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 9).unwrap();
    let rows = order_scan(&m, 3).unwrap();
    let want_a0 = [4.932, 5.015, 5.002];
    for (row, want) in rows.iter().zip(want_a0) {
        assert_eq!(row.highest_moment_index, 2 * row.n + 1);
        let c = row.cmx.as_ref().unwrap();
        assert!((c.a0 - want).abs() <= 0.002);
        // the companion fit at order n+1 uses the same highest moment
        let z = row.zn.as_ref().unwrap();
        assert_eq!(2 * z.order - 1, row.highest_moment_index);
    }
}

#[test]
fn normalization_does_not_change_moments() {
    for e in standard_catalog() {
        let m1 = MomentSequence::compute(&e.hamiltonian, &e.trial, 6).unwrap();
        let normalized = normalize(&e.trial).unwrap();
        let m2 = MomentSequence::compute(&e.hamiltonian, &normalized, 6).unwrap();
        assert_eq!(m1.mu(), m2.mu(), "{}", e.name);
    }
}

#[test]
fn double_well_reference_is_available() {
    // the localized displaced trial has no parity reduction; the oracle still
    // converges and splits its weight across the low doublet
    let e = find("double_well").unwrap();
    let r = diagonalize(&e.hamiltonian, &e.trial, 32, 1e-9).unwrap();
    let total: f64 = r.overlaps.iter().sum();
    assert!(total <= 1.0 + 1e-9 && total >= 1.0 - 1e-9);
    assert!(r.overlaps[0] > 0.4 && r.overlaps[1] > 0.3);
    let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 12).unwrap();
    let om = oracle_moments(&e.hamiltonian, &e.trial, 128, 12).unwrap();
    for j in 0..=12 {
        let exact = ratio_to_f64(&m.mu()[j]);
        assert!(
            (om[j] - exact).abs() / exact.abs().max(1.0) <= 1e-9,
            "moment {j}: {} vs {exact}",
            om[j]
        );
    }
}
