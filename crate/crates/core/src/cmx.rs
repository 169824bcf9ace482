//! The two exponential approximants built from one moment sequence:
//! Z_N(t) = Σ A_j e^(−t W_j) matched to the moments, and
//! E^(N)(t) = A_0 + Σ A_n e^(−b_n t) matched to the connected moments.
//! A_0 of the second form is the ground-energy estimate; its root diagnostics
//! tell whether the estimate deserves trust.

use num::{BigRational, Signed, Zero};
use num_complex::Complex64;
use thiserror::Error;

use crate::moments::{ConnectedMoments, MomentSequence};
use crate::prony::{
    classify_roots, solve_with, PronyError, PronyProblem, RootDiagnostics, SolveMethod,
};
use crate::scalar::ratio_to_f64;

#[derive(Debug, Error)]
pub enum CmxError {
    #[error(transparent)]
    Prony(#[from] PronyError),
    #[error("need moments up to order {needed}, sequence stops at {have}")]
    InsufficientMoments { needed: usize, have: usize },
    #[error("pole encountered: |Z_N({t})| below 1e-14")]
    PoleEncountered { t: f64 },
}

/// Exponential fit of the moment generating function. Exponents approximate
/// energies, amplitudes approximate squared overlaps with the eigenstates, so
/// both are real-intended; departures are recorded as warnings rather than
/// silently dropped.
#[derive(Clone, Debug)]
pub struct ZnApproximant {
    pub order: usize,
    pub amplitudes: Vec<f64>,
    pub exponents: Vec<f64>,
    pub residual: f64,
    pub provenance: String,
    pub warnings: Vec<String>,
}

/// Leading principal minors of the two Hankel blocks of connected moments,
/// [I_{i+j}] and [I_{i+j+1}] with i,j = 1..N. Reported signed; positivity of
/// these minors has been proposed as a criterion for well-behaved roots.
#[derive(Clone, Debug)]
pub struct HadamardMinors {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Connected-moments expansion of E(t) at order N.
#[derive(Clone, Debug)]
pub struct CmxApproximant {
    pub order: usize,
    /// ground-energy estimate A_0 = I_1 − Σ A_n
    pub a0: f64,
    pub amplitudes: Vec<Complex64>,
    pub exponents: Vec<Complex64>,
    pub residual: f64,
    pub diagnostics: RootDiagnostics,
    pub hadamard: HadamardMinors,
    pub provenance: String,
}

fn require(m: &MomentSequence, needed: usize) -> Result<(), CmxError> {
    if m.j_max() < needed {
        return Err(CmxError::InsufficientMoments {
            needed,
            have: m.j_max(),
        });
    }
    Ok(())
}

/// Fit Z_N from μ_0..μ_{2N−1}: the defining equations are F_k = μ_{k−1} with
/// s = −1, so the k = 1 equation forces Σ A_j = μ_0 = 1.
pub fn zn_from_moments(m: &MomentSequence, n: usize) -> Result<ZnApproximant, CmxError> {
    zn_from_moments_with(m, n, SolveMethod::SecularPencil)
}

pub fn zn_from_moments_with(
    m: &MomentSequence,
    n: usize,
    method: SolveMethod,
) -> Result<ZnApproximant, CmxError> {
    assert!(n >= 1);
    require(m, 2 * n - 1)?;
    let mu = m.mu_f64();
    let problem = PronyProblem::new(mu[..2 * n].to_vec(), -1);
    let sol = solve_with(&problem, method)?;
    let mut warnings = Vec::new();
    for (j, (b, a)) in sol.exponents.iter().zip(&sol.amplitudes).enumerate() {
        if b.im.abs() > 1e-9 * (1.0 + b.re.abs()) {
            warnings.push(format!("exponent W_{j} has imaginary part {:.3e}", b.im));
        }
        if a.im.abs() > 1e-9 {
            warnings.push(format!("amplitude A_{j} has imaginary part {:.3e}", a.im));
        }
        if a.re < -1e-9 {
            warnings.push(format!("amplitude A_{j} is negative: {:.6e}", a.re));
        }
    }
    Ok(ZnApproximant {
        order: n,
        amplitudes: sol.amplitudes.iter().map(|a| a.re).collect(),
        exponents: sol.exponents.iter().map(|b| b.re).collect(),
        residual: sol.residual,
        provenance: format!("{}; {}", m.model_id(), m.state_id()),
        warnings,
    })
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let pivot_row = match (col..n).max_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs())) {
            Some(r) => r,
            None => return BigRational::zero(),
        };
        if m[pivot_row][col].is_zero() {
            return BigRational::zero();
        }
        if pivot_row != col {
            m.swap(col, pivot_row);
            det = -det;
        }
        det *= &m[col][col];
        for row in (col + 1)..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &m[col][col];
            for k in col..n {
                let delta = &factor * &m[col][k];
                m[row][k] -= delta;
            }
        }
    }
    det
}

fn hadamard_minors(i: &ConnectedMoments, n: usize) -> HadamardMinors {
    let minors = |base: usize| -> Vec<f64> {
        (1..=n)
            .map(|k| {
                let m: Vec<Vec<BigRational>> = (1..=k)
                    .map(|r| (1..=k).map(|c| i.get(r + c + base).clone()).collect())
                    .collect();
                ratio_to_f64(&rational_det(m))
            })
            .collect()
    };
    HadamardMinors {
        lower: minors(0),
        upper: minors(1),
    }
}

/// Build E^(N) from I_1..I_{2N+1}: the nonlinear system is F_k = I_{k+1} with
/// s = 0, and the constant term follows as A_0 = I_1 − Σ A_n.
pub fn cmx_from_connected(i: &ConnectedMoments, n: usize) -> Result<CmxApproximant, CmxError> {
    cmx_from_connected_with(i, n, SolveMethod::SecularPencil)
}

pub fn cmx_from_connected_with(
    i: &ConnectedMoments,
    n: usize,
    method: SolveMethod,
) -> Result<CmxApproximant, CmxError> {
    assert!(n >= 1);
    if i.j_max() < 2 * n + 1 {
        return Err(CmxError::InsufficientMoments {
            needed: 2 * n + 1,
            have: i.j_max(),
        });
    }
    let f: Vec<f64> = (1..=2 * n).map(|k| ratio_to_f64(i.get(k + 1))).collect();
    let problem = PronyProblem::new(f, 0);
    let sol = solve_with(&problem, method)?;
    let amp_sum: Complex64 = sol.amplitudes.iter().sum();
    let a0 = ratio_to_f64(i.get(1)) - amp_sum.re;
    let diagnostics = classify_roots(&sol);
    Ok(CmxApproximant {
        order: n,
        a0,
        amplitudes: sol.amplitudes.clone(),
        exponents: sol.exponents.clone(),
        residual: sol.residual,
        diagnostics,
        hadamard: hadamard_minors(i, n),
        provenance: String::new(),
    })
}

/// E^(N)(t) = A_0 + Σ A_n e^(−b_n t); conjugate pairs cancel the imaginary
/// residue for real data.
pub fn eval_en(c: &CmxApproximant, t: f64) -> f64 {
    let sum: Complex64 = c
        .exponents
        .iter()
        .zip(&c.amplitudes)
        .map(|(&b, &a)| a * (-b * t).exp())
        .sum();
    debug_assert!(
        sum.im.abs() <= 1e-9 * (1.0 + sum.re.abs()),
        "imaginary residue {} at t = {}",
        sum.im,
        t
    );
    c.a0 + sum.re
}

/// Z_N at complex argument; purely imaginary t gives the autocorrelation
/// amplitude.
pub fn eval_zn(z: &ZnApproximant, t: Complex64) -> Complex64 {
    z.exponents
        .iter()
        .zip(&z.amplitudes)
        .map(|(&w, &a)| Complex64::new(a, 0.0) * (-t * w).exp())
        .sum()
}

/// U^(N)(t) = −Z_N′(t)/Z_N(t).
pub fn eval_un(z: &ZnApproximant, t: f64) -> Result<f64, CmxError> {
    let den: f64 = z
        .exponents
        .iter()
        .zip(&z.amplitudes)
        .map(|(&w, &a)| a * (-w * t).exp())
        .sum();
    if den.abs() < 1e-14 {
        return Err(CmxError::PoleEncountered { t });
    }
    let num: f64 = z
        .exponents
        .iter()
        .zip(&z.amplitudes)
        .map(|(&w, &a)| a * w * (-w * t).exp())
        .sum();
    Ok(num / den)
}

/// |Z_N(iτ)|², the model autocorrelation (survival) probability.
pub fn correlation_squared(z: &ZnApproximant, tau: f64) -> f64 {
    eval_zn(z, Complex64::new(0.0, tau)).norm_sqr()
}

/// Worst relative mismatch of Σ A_j W_j^k against μ_k over k = 0..2N−1 — the
/// defining equations re-read as series matching at the origin.
pub fn zn_matching_error(z: &ZnApproximant, mu: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (k, &target) in mu.iter().enumerate().take(2 * z.order) {
        let lhs: f64 = z
            .exponents
            .iter()
            .zip(&z.amplitudes)
            .map(|(&w, &a)| a * w.powi(k as i32))
            .sum();
        worst = worst.max((lhs - target).abs() / target.abs().max(1.0));
    }
    worst
}

/// Worst relative mismatch of the E^(N) matching conditions: A_0 + Σ A_n
/// against I_1 and Σ A_n b_n^k against I_{k+1}, k = 1..2N.
pub fn cmx_matching_error(c: &CmxApproximant, i: &ConnectedMoments) -> f64 {
    let mut worst = 0.0f64;
    let sum_a: Complex64 = c.amplitudes.iter().sum();
    let i1 = ratio_to_f64(i.get(1));
    worst = worst.max((c.a0 + sum_a.re - i1).abs() / i1.abs().max(1.0));
    for k in 1..=2 * c.order {
        let lhs: Complex64 = c
            .exponents
            .iter()
            .zip(&c.amplitudes)
            .map(|(&b, &a)| a * b.powi(k as i32))
            .sum();
        let target = ratio_to_f64(i.get(k + 1));
        let err = ((lhs.re - target).abs().max(lhs.im.abs())) / target.abs().max(1.0);
        worst = worst.max(err);
    }
    worst
}

/// One order of the scan: both approximants built from the same moment
/// budget. E^(N) and Z_{N+1} each consume μ_0..μ_{2N+1}.
pub struct ScanRow {
    pub n: usize,
    pub highest_moment_index: usize,
    pub cmx: Result<CmxApproximant, CmxError>,
    pub zn: Result<ZnApproximant, CmxError>,
}

/// Scan orders N = 1..N_max; solver failures are recorded per row so a range
/// continues past a degenerate order.
pub fn order_scan(m: &MomentSequence, n_max: usize) -> Result<Vec<ScanRow>, CmxError> {
    require(m, 2 * n_max + 1)?;
    let i = crate::moments::connected_moments(m);
    Ok((1..=n_max)
        .map(|n| ScanRow {
            n,
            highest_moment_index: 2 * n + 1,
            cmx: cmx_from_connected(&i, n),
            zn: zn_from_moments(m, n + 1),
        })
        .collect())
}
