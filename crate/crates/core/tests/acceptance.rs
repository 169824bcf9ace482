//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and pinning its tolerance in code. Run with `--nocapture` to see the
//! lines for passing criteria.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prony_cmx::catalog::{find, standard_catalog};
use prony_cmx::cmx::{
    cmx_from_connected, cmx_matching_error, correlation_squared, zn_from_moments,
    zn_matching_error,
};
use prony_cmx::moments::{connected_moments, MomentSequence};
use prony_cmx::prony::{solve_linear_prony, solve_secular, LimitBehavior, PronyProblem};
use prony_cmx::reference::{diagonalize, exact_c2_ho, exact_e_ho, rrk_oracle};
use prony_cmx::scalar::ratio_to_f64;

fn pass(criterion: u32, detail: &str) {
    println!("criterion {criterion}: PASS - {detail}");
}

fn fail(criterion: u32, detail: &str) -> ! {
    println!("criterion {criterion}: FAIL - {detail}");
    panic!("criterion {criterion} failed: {detail}");
}

fn ho_connected(j: usize) -> prony_cmx::moments::ConnectedMoments {
    let e = find("ho").unwrap();
    let m = MomentSequence::compute(&e.hamiltonian, &e.trial, j).unwrap();
    connected_moments(&m)
}

#[test]
fn acceptance_01_connected_moments_match_reference_list() {
    let start = Instant::now();
    let i = ho_connected(7);
    let reference = [5.13, 0.665, 2.12, 11.2, 40.0, 216.0, 979.0];
    let mut failures = Vec::new();
    for (k, &r) in reference.iter().enumerate() {
        let got = ratio_to_f64(i.get(k + 1));
        let rel = (got - r).abs() / r.abs();
        if rel > 0.01 {
            failures.push(format!(
                "I_{} = {:.6} vs tabulated {} (rel {:.4})",
                k + 1,
                got,
                r,
                rel
            ));
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    if failures.is_empty() {
        pass(1, &format!("I_1..I_7 within 1% of the tabulated list, {elapsed:?}"));
    } else {
        // The tabulated third entry is internally inconsistent: the exact
        // Taylor coefficients of the closed-form E(t) give
        // I_3 = 2331886111/1061208000 = 2.19739, and the order-3 expansion
        // parameters in the same table only reproduce with this value. The
        // criterion is asserted as stated and fails on that single entry.
        fail(1, &failures.join("; "));
    }
}

#[test]
fn acceptance_02_order3_parameters_and_root_signs() {
    let start = Instant::now();
    let i = ho_connected(11);
    let c3 = cmx_from_connected(&i, 3).unwrap();
    let want_b = [-3.87, 4.04, 9.29];
    let want_a = [-0.0170, 0.147, 0.000617];
    for k in 0..3 {
        let db = (c3.exponents[k].re - want_b[k]).abs() / want_b[k].abs();
        let da = (c3.amplitudes[k].re - want_a[k]).abs() / want_a[k].abs();
        assert!(db <= 0.02, "b_{k}: {} vs {}", c3.exponents[k].re, want_b[k]);
        assert!(da <= 0.02, "A_{k}: {} vs {}", c3.amplitudes[k].re, want_a[k]);
        assert!(c3.exponents[k].im.abs() < 1e-9);
    }
    for (n, expect_neg) in [(2usize, 1usize), (3, 1), (4, 2), (5, 2)] {
        let c = cmx_from_connected(&i, n).unwrap();
        assert_eq!(
            c.diagnostics.negative_real_roots.len(),
            expect_neg,
            "negative-root count at order {n}"
        );
        if n >= 4 {
            assert_eq!(
                c.diagnostics.limit_behavior,
                LimitBehavior::DivergesPlus,
                "limit behaviour at order {n}"
            );
        } else {
            assert_eq!(c.diagnostics.limit_behavior, LimitBehavior::DivergesMinus);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(
        2,
        &format!("order-3 parameters within 2%, negative-root pattern 1/1/2/2 with +inf limit at 4..5, {elapsed:?}"),
    );
}

#[test]
fn acceptance_03_ground_energy_column() {
    let start = Instant::now();
    let i = ho_connected(7);
    let want = [4.932, 5.015, 5.002];
    for (n, w) in want.iter().enumerate() {
        let c = cmx_from_connected(&i, n + 1).unwrap();
        assert!(
            (c.a0 - w).abs() <= 0.002,
            "A0 at order {}: {} vs {}",
            n + 1,
            c.a0,
            w
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(3, &format!("A0 = 4.932, 5.015, 5.002 within ±0.002, {elapsed:?}"));
}

#[test]
fn acceptance_04_exact_reference_cross_check() {
    let e = find("ho").unwrap();
    let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 1).unwrap();
    let i1 = ratio_to_f64(&m.mu()[1]);
    let e0 = exact_e_ho(0.0);
    assert!((e0 - 8376800.0 / 1632000.0).abs() < 1e-12);
    assert!((e0 - i1).abs() / i1 <= 1e-9, "{e0} vs {i1}");
    assert!((exact_e_ho(10.0) - 1.0).abs() <= 1e-9);
    pass(4, "closed-form E(0) equals I_1 to 1e-9; E(10) = 1 to 1e-9");
}

#[test]
fn acceptance_05_correlation_convergence() {
    let e = find("ho_gauss").unwrap();
    let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 9).unwrap();
    let taus: Vec<f64> = (0..=200)
        .map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / 200.0)
        .collect();
    let mut prev = f64::INFINITY;
    let mut dev_at_5 = 0.0;
    for n in 2..=5 {
        let z = zn_from_moments(&m, n).unwrap();
        let at0 = correlation_squared(&z, 0.0);
        assert!((at0 - 1.0).abs() <= 1e-10, "C2(0) at order {n}: {at0}");
        let dev = taus
            .iter()
            .map(|&t| (correlation_squared(&z, t) - exact_c2_ho(t)).abs())
            .fold(0.0f64, f64::max);
        assert!(dev < prev, "deviation not decreasing at order {n}: {dev} vs {prev}");
        prev = dev;
        dev_at_5 = dev;
    }
    assert!(dev_at_5 < 0.02, "order-5 deviation {dev_at_5}");
    pass(
        5,
        &format!("max deviation decreasing across orders 2..5, {dev_at_5:.4} at order 5, C2(0) = 1 to 1e-10"),
    );
}

#[test]
fn acceptance_06_overlap_estimates() {
    let e = find("ho_gauss").unwrap();
    let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 9).unwrap();
    let z = zn_from_moments(&m, 5).unwrap();
    let target = 2.0 * 2f64.sqrt() / 3.0;
    assert!(
        (z.amplitudes[0] - target).abs() <= 1e-4,
        "oscillator overlap estimate {} vs {}",
        z.amplitudes[0],
        target
    );

    let q = find("quartic").unwrap();
    let mq = MomentSequence::compute(&q.hamiltonian, &q.trial, 9).unwrap();
    let zq = zn_from_moments(&mq, 5).unwrap();
    assert!(
        (zq.amplitudes[0] - 0.981).abs() <= 0.002,
        "quartic overlap estimate {}",
        zq.amplitudes[0]
    );
    let oracle = diagonalize(&q.hamiltonian, &q.trial, 32, 1e-9).unwrap();
    assert!(
        (zq.amplitudes[0] - oracle.overlaps[0]).abs() <= 2e-3,
        "quartic estimate {} vs oracle {}",
        zq.amplitudes[0],
        oracle.overlaps[0]
    );
    pass(
        6,
        &format!(
            "overlap estimates {:.6} (target 2*sqrt(2)/3 = {:.6}) and {:.4} (oracle {:.4})",
            z.amplitudes[0], target, zq.amplitudes[0], oracle.overlaps[0]
        ),
    );
}

#[test]
fn acceptance_07_two_route_equivalence_randomized() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0FFEE);
    // instance family: distinct real exponents in [0.5, 5] kept at least 0.7
    // apart and amplitudes in [-2, 2] bounded away from zero, so that double
    // precision can certify the 1e-8 agreement being asserted
    for case in 0..1000 {
        let n: usize = rng.gen_range(1..=5);
        let shift = if rng.gen_bool(0.5) { 0 } else { -1 };
        let b: Vec<f64> = loop {
            let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..5.0)).collect();
            b.sort_by(|x, y| x.partial_cmp(y).unwrap());
            if n == 1 || b.windows(2).all(|w| w[1] - w[0] >= 0.7) {
                break b;
            }
        };
        let a: Vec<f64> = (0..n)
            .map(|_| {
                let v: f64 = rng.gen_range(-2.0..2.0);
                if v.abs() < 0.3 {
                    if v >= 0.0 {
                        0.3
                    } else {
                        -0.3
                    }
                } else {
                    v
                }
            })
            .collect();
        let f: Vec<f64> = (1..=2 * n)
            .map(|k| {
                b.iter()
                    .zip(&a)
                    .map(|(&bb, &aa)| aa * bb.powi(k as i32 + shift))
                    .sum()
            })
            .collect();
        let p = PronyProblem::new(f, shift);
        let s1 = solve_linear_prony(&p)
            .unwrap_or_else(|e| panic!("case {case}: polynomial route failed: {e}"));
        let s2 = solve_secular(&p)
            .unwrap_or_else(|e| panic!("case {case}: pencil route failed: {e}"));
        for (x, y) in s1.exponents.iter().zip(&s2.exponents) {
            let tol = 1e-8 * x.norm().max(1.0);
            assert!(
                (x - y).norm() <= tol,
                "case {case}: routes disagree: {x} vs {y}"
            );
        }
        assert!(s1.residual <= 1e-8, "case {case}: residual {}", s1.residual);
        assert!(s2.residual <= 1e-8, "case {case}: residual {}", s2.residual);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(
        7,
        &format!("1000 randomized instances agree to 1e-8 with residuals <= 1e-8, {elapsed:?}"),
    );
}

#[test]
fn acceptance_08_krylov_identity_across_catalog() {
    for e in standard_catalog() {
        let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 9).unwrap();
        for n in 1..=5 {
            let z = zn_from_moments(&m, n)
                .unwrap_or_else(|err| panic!("{} order {n}: {err}", e.name));
            let (w, a) =
                rrk_oracle(&m, n).unwrap_or_else(|err| panic!("{} order {n}: {err}", e.name));
            for k in 0..n {
                let dw = (z.exponents[k] - w[k]).abs();
                assert!(
                    dw <= 1e-8 * w[k].abs().max(1.0),
                    "{} order {n}: value {k}: {} vs {}",
                    e.name,
                    z.exponents[k],
                    w[k]
                );
                let da = (z.amplitudes[k] - a[k]).abs();
                assert!(
                    da <= 1e-8,
                    "{} order {n}: overlap {k}: {} vs {}",
                    e.name,
                    z.amplitudes[k],
                    a[k]
                );
            }
        }
    }
    pass(
        8,
        "generating-function fit equals the Krylov Rayleigh-Ritz construction to 1e-8 on the catalog, orders 1..5",
    );
}

#[test]
fn acceptance_09_series_matching_invariants() {
    let mut worst: f64 = 0.0;
    let mut built = 0usize;
    let mut declined = 0usize;
    for e in standard_catalog() {
        let m = MomentSequence::compute(&e.hamiltonian, &e.trial, 11).unwrap();
        let i = connected_moments(&m);
        let mu = m.mu_f64();
        for n in 1..=5 {
            let z = zn_from_moments(&m, n).unwrap();
            let ze = zn_matching_error(&z, &mu);
            assert!(ze <= 1e-9, "{} Z fit order {n}: matching error {ze}", e.name);
            worst = worst.max(ze);
            built += 1;
            // a fit the solver refuses on conditioning grounds was never
            // built; the invariant binds every fit that exists
            match cmx_from_connected(&i, n) {
                Ok(c) => {
                    let ce = cmx_matching_error(&c, &i);
                    assert!(ce <= 1e-9, "{} expansion order {n}: matching error {ce}", e.name);
                    worst = worst.max(ce);
                    built += 1;
                }
                Err(prony_cmx::cmx::CmxError::Prony(
                    prony_cmx::prony::PronyError::DegenerateProblem { .. },
                )) => declined += 1,
                Err(other) => panic!("{} expansion order {n}: {other}", e.name),
            }
        }
    }
    assert!(built >= 35, "only {built} fits built");
    pass(
        9,
        &format!("{built} fits reproduce their defining equations (worst mismatch {worst:.2e}); {declined} declined as ill-conditioned"),
    );
}

#[test]
fn acceptance_10_positivity_counterexample() {
    let i = ho_connected(7);
    for k in 1..=7 {
        assert!(ratio_to_f64(i.get(k)) > 0.0, "I_{k} should be positive");
    }
    let i11 = ho_connected(11);
    let c3 = cmx_from_connected(&i11, 3).unwrap();
    assert_eq!(
        c3.diagnostics.negative_real_roots.len(),
        1,
        "expected exactly one negative root despite all-positive cumulants"
    );

    let g = find("ho_gauss").unwrap();
    let mg = MomentSequence::compute(&g.hamiltonian, &g.trial, 5).unwrap();
    let ig = connected_moments(&mg);
    for n in 1..=2 {
        let c = cmx_from_connected(&ig, n).unwrap();
        assert!(c.diagnostics.all_real, "Gaussian trial order {n}");
        assert!(c.diagnostics.all_positive, "Gaussian trial order {n}");
    }
    pass(
        10,
        "all-positive cumulants coexist with a negative order-3 root; Gaussian trial roots all real positive at orders 1..2",
    );
}

#[test]
fn acceptance_11_figure_data_emission() {
    let bin = env!("CARGO_BIN_EXE_cmx");
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        ("fig1", vec!["zfit", "--model", "ho", "--N", "2..5", "--t", "0:3:121", "--out", "fig1"]),
        ("fig2", vec!["cmx", "--model", "ho", "--N", "2..5", "--t", "0:3:121", "--out", "fig2"]),
        ("fig4", vec!["correlation", "--model", "quartic", "--N", "2..5", "--t", "0:3.2:161", "--out", "fig4"]),
        ("fig5", vec!["correlation", "--model", "coupled2d", "--N", "2..5", "--t", "0:3.2:161", "--out", "fig5"]),
    ];
    for (name, args) in &runs {
        let start = Instant::now();
        let out = std::process::Command::new(bin)
            .args(args)
            .current_dir(dir.path())
            .output()
            .unwrap();
        let elapsed = start.elapsed();
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(elapsed.as_secs_f64() < 60.0, "{name} took {elapsed:?}");
        assert!(dir.path().join(format!("{name}.csv")).exists());
    }

    // correlation curves: tau = 0 normalization and shrinking deviation from
    // the diagonalization reference as the order grows
    for name in ["fig4", "fig5"] {
        let text = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(header[0], "tau");
        assert_eq!(header[1], "reference");
        let rows: Vec<Vec<f64>> = lines
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
            .collect();
        for col in 1..header.len() {
            assert!(
                (rows[0][col] - 1.0).abs() <= 1e-9,
                "{name} {} at tau=0: {}",
                header[col],
                rows[0][col]
            );
        }
        let mut prev = f64::INFINITY;
        for col in 2..header.len() {
            let dev = rows
                .iter()
                .map(|r| (r[col] - r[1]).abs())
                .fold(0.0f64, f64::max);
            assert!(
                dev < prev,
                "{name}: {} deviation {dev} not below previous {prev}",
                header[col]
            );
            prev = dev;
        }
    }
    pass(11, "figure files emitted in time; correlation curves normalized and converging to the reference");
}
