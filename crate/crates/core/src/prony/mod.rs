//! Solvers for the exponential-sum equations
//! F_k = Σ_{n=1}^N A_n b_n^{k+s}, k = 1..2N,
//! by the two classical routes: the Hankel linear system for the coefficients
//! of p(b) = Π (b − b_n) followed by root extraction, and the eigenvalues of
//! the Hankel pencil det(F_{i+j} − b·F_{i+j−1}) = 0. The two root sets are
//! mathematically identical; computing both is a consistency check.

pub mod exact;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Conditioning limit for the Hankel and Vandermonde solves in double
/// precision.
pub const COND_LIMIT: f64 = 1e12;
/// Relative tolerance below which two roots count as coincident.
pub const REPEATED_ROOT_TOL: f64 = 1e-8;
/// Relative imaginary tolerance below which a root counts as real.
pub const REAL_ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum PronyError {
    #[error("degenerate problem: Hankel condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}; reduce N or increase precision")]
    DegenerateProblem { cond: f64 },
    #[error("repeated roots: |b_{i} - b_{j}| within {REPEATED_ROOT_TOL:.0e} relative; confluent systems are unsupported")]
    RepeatedRoots { i: usize, j: usize },
    #[error("ill-conditioned Vandermonde system: condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}")]
    IllConditionedVandermonde { cond: f64 },
}

/// Which route produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Polynomial coefficients from the Hankel linear system, roots from the
    /// companion matrix.
    LinearHankel,
    /// Eigenvalues of the pencil (F1, F0).
    SecularPencil,
}

/// The 2N data values F_1..F_2N together with the index shift s.
#[derive(Clone, Debug)]
pub struct PronyProblem {
    f: Vec<f64>,
    shift: i32,
}

impl PronyProblem {
    /// `f` holds F_1..F_2N; the length fixes N.
    pub fn new(f: Vec<f64>, shift: i32) -> Self {
        assert!(!f.is_empty() && f.len() % 2 == 0, "need 2N values, N >= 1");
        PronyProblem { f, shift }
    }

    pub fn order(&self) -> usize {
        self.f.len() / 2
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// F_k, 1-based.
    pub fn value(&self, k: usize) -> f64 {
        self.f[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.f
    }
}

/// The two Hankel blocks and the right-hand side of the coefficient system:
/// F0[i][j] = F_{i+j}, F1[i][j] = F_{i+j+1} (i = 1..N, j = 0..N−1),
/// rhs[i] = −F_{i+N}.
pub struct HankelSystem {
    pub f0: DMatrix<f64>,
    pub f1: DMatrix<f64>,
    pub rhs: DVector<f64>,
}

pub fn build_hankel(p: &PronyProblem) -> HankelSystem {
    let n = p.order();
    let f0 = DMatrix::from_fn(n, n, |r, c| p.f[r + c]);
    let f1 = DMatrix::from_fn(n, n, |r, c| p.f[r + c + 1]);
    let rhs = DVector::from_fn(n, |r, _| -p.f[r + n]);
    HankelSystem { f0, f1, rhs }
}

/// Recovered exponents and amplitudes, with conditioning and consistency
/// diagnostics. Exponents are sorted by ascending real part with conjugate
/// partners adjacent.
#[derive(Clone, Debug)]
pub struct PronySolution {
    pub exponents: Vec<Complex64>,
    pub amplitudes: Vec<Complex64>,
    /// max_k |F_k − Σ A_n b_n^{k+s}| / max(1, |F_k|)
    pub residual: f64,
    pub hankel_cond: f64,
    pub amplitude_cond: f64,
    pub method: SolveMethod,
}

impl PronySolution {
    /// A solution whose residual exceeds 1e−6 should not be trusted.
    pub fn is_flagged(&self) -> bool {
        !self.residual.is_finite() || self.residual > 1e-6
    }
}

/// Long-time behaviour of Σ A_n e^{−b_n t} and the root-sign diagnostics used
/// to judge an expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDiagnostics {
    pub all_real: bool,
    pub all_positive: bool,
    pub negative_real_roots: Vec<f64>,
    pub limit_behavior: LimitBehavior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitBehavior {
    Converges,
    DivergesMinus,
    DivergesPlus,
    Oscillates,
}

fn cond_from_singular_values(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let mut smax = 0.0f64;
    let mut smin = f64::INFINITY;
    for &s in sv.iter() {
        smax = smax.max(s);
        smin = smin.min(s);
    }
    if smin <= 0.0 || !smax.is_finite() {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Parlett–Reinsch balancing: diagonal similarity with powers of two, so the
/// spectrum is untouched while row and column norms are equalized.
fn balance_in_place(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].abs()).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
            if c != 0.0 && r != 0.0 && c.is_finite() && r.is_finite() {
                let mut f = 1.0;
                let s = c + r;
                let mut g = r / radix;
                while c < g {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while c > g {
                    f /= radix;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= ginv;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Roots of the monic polynomial b^N + p_{N-1} b^{N-1} + ... + p_0 via the
/// balanced companion matrix.
pub fn monic_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Complex64::new(-coeffs[0], 0.0)];
    }
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i];
    }
    balance_in_place(&mut companion);
    companion.complex_eigenvalues().iter().copied().collect()
}

fn check_distinct(roots: &[Complex64]) -> Result<(), PronyError> {
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= REPEATED_ROOT_TOL * scale {
                return Err(PronyError::RepeatedRoots { i, j });
            }
        }
    }
    Ok(())
}

fn sort_solution(b: &mut [Complex64], a: &mut [Complex64]) {
    let mut idx: Vec<usize> = (0..b.len()).collect();
    idx.sort_by(|&i, &j| {
        (b[i].re, b[i].im.abs(), b[i].im)
            .partial_cmp(&(b[j].re, b[j].im.abs(), b[j].im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let bs: Vec<_> = idx.iter().map(|&i| b[i]).collect();
    let as_: Vec<_> = idx.iter().map(|&i| a[i]).collect();
    b.copy_from_slice(&bs);
    a.copy_from_slice(&as_);
}

fn power(base: Complex64, exp: i32) -> Complex64 {
    debug_assert!(exp >= 0, "exponent k+s stays non-negative for s >= -1");
    base.powi(exp)
}

/// Reconstruction residual of a candidate (b, A) pair against the data.
pub fn reconstruction_residual(p: &PronyProblem, b: &[Complex64], a: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for k in 1..=2 * p.order() {
        let model: Complex64 = b
            .iter()
            .zip(a)
            .map(|(&bn, &an)| an * power(bn, k as i32 + p.shift))
            .sum();
        let err = (model.re - p.value(k)).abs().max(model.im.abs());
        worst = worst.max(err / p.value(k).abs().max(1.0));
    }
    worst
}

/// Least-squares amplitude solve over all 2N equations of the defining
/// system, with rows weighted by 1/max(1,|F_k|) (the reported residual
/// metric) and columns equilibrated before the SVD. Returns amplitudes, the
/// reconstruction residual, and the condition estimate of the scaled system.
pub fn solve_amplitudes(
    p: &PronyProblem,
    exponents: &[Complex64],
) -> Result<(Vec<Complex64>, f64, f64), PronyError> {
    let n = exponents.len();
    let rows = 2 * p.order();
    let mut v = DMatrix::<Complex64>::zeros(rows, n);
    let mut rhs = DVector::<Complex64>::zeros(rows);
    for k in 0..rows {
        let w = 1.0 / p.f[k].abs().max(1.0);
        rhs[k] = Complex64::new(p.f[k] * w, 0.0);
        for (j, &b) in exponents.iter().enumerate() {
            v[(k, j)] = power(b, (k + 1) as i32 + p.shift) * w;
        }
    }
    let mut col_scale = vec![1.0f64; n];
    for j in 0..n {
        let m = (0..rows).map(|k| v[(k, j)].norm()).fold(0.0f64, f64::max);
        if m > 0.0 && m.is_finite() {
            col_scale[j] = m;
            for k in 0..rows {
                v[(k, j)] /= m;
            }
        }
    }
    let svd = v.svd(true, true);
    let mut smax = 0.0f64;
    let mut smin = f64::INFINITY;
    for &s in svd.singular_values.iter() {
        smax = smax.max(s);
        smin = smin.min(s);
    }
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(PronyError::IllConditionedVandermonde { cond });
    }
    let x = svd
        .solve(&rhs, 0.0)
        .map_err(|_| PronyError::IllConditionedVandermonde { cond })?;
    let amplitudes: Vec<Complex64> = (0..n).map(|j| x[j] / col_scale[j]).collect();
    let residual = reconstruction_residual(p, exponents, &amplitudes);
    Ok((amplitudes, residual, cond))
}

fn finish(
    p: &PronyProblem,
    mut roots: Vec<Complex64>,
    hankel_cond: f64,
    method: SolveMethod,
) -> Result<PronySolution, PronyError> {
    check_distinct(&roots)?;
    let (mut amplitudes, residual, amplitude_cond) = solve_amplitudes(p, &roots)?;
    sort_solution(&mut roots, &mut amplitudes);
    Ok(PronySolution {
        exponents: roots,
        amplitudes,
        residual,
        hankel_cond,
        amplitude_cond,
        method,
    })
}

fn hankel_guard(f0: &DMatrix<f64>) -> Result<f64, PronyError> {
    let cond = cond_from_singular_values(f0);
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(PronyError::DegenerateProblem { cond });
    }
    Ok(cond)
}

/// Classic route: solve the Hankel system for the coefficients of p(b) with
/// p_N = 1, then extract the roots and the amplitudes.
pub fn solve_linear_prony(p: &PronyProblem) -> Result<PronySolution, PronyError> {
    let sys = build_hankel(p);
    let cond = hankel_guard(&sys.f0)?;
    let coeffs = sys
        .f0
        .clone()
        .lu()
        .solve(&sys.rhs)
        .ok_or(PronyError::DegenerateProblem { cond: f64::INFINITY })?;
    let roots = monic_roots(coeffs.as_slice());
    finish(p, roots, cond, SolveMethod::LinearHankel)
}

/// Pencil route: the exponents solve det(F1 − b·F0) = 0, computed as the
/// eigenvalues of F0⁻¹F1.
pub fn solve_secular(p: &PronyProblem) -> Result<PronySolution, PronyError> {
    let sys = build_hankel(p);
    let cond = hankel_guard(&sys.f0)?;
    let mut m = sys
        .f0
        .clone()
        .lu()
        .solve(&sys.f1)
        .ok_or(PronyError::DegenerateProblem { cond: f64::INFINITY })?;
    balance_in_place(&mut m);
    let roots: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
    finish(p, roots, cond, SolveMethod::SecularPencil)
}

pub fn solve_with(p: &PronyProblem, method: SolveMethod) -> Result<PronySolution, PronyError> {
    match method {
        SolveMethod::LinearHankel => solve_linear_prony(p),
        SolveMethod::SecularPencil => solve_secular(p),
    }
}

pub fn is_real_root(b: Complex64) -> bool {
    b.im.abs() <= REAL_ROOT_TOL * (1.0 + b.re.abs())
}

/// Sign diagnostics and the t → ∞ behaviour of Σ A_n e^{−b_n t}.
pub fn classify_roots(sol: &PronySolution) -> RootDiagnostics {
    let b = &sol.exponents;
    let all_real = b.iter().all(|&z| is_real_root(z));
    let all_positive = b.iter().all(|z| z.re > 0.0);
    let mut negative_real_roots: Vec<f64> = b
        .iter()
        .filter(|&&z| is_real_root(z) && z.re < 0.0)
        .map(|z| z.re)
        .collect();
    negative_real_roots.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let limit_behavior = if all_positive {
        LimitBehavior::Converges
    } else {
        // the root with the most negative real part dominates as t → ∞
        let dom_re = b.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let dom_tol = 1e-9 * (1.0 + dom_re.abs());
        let dominant: Vec<usize> = (0..b.len())
            .filter(|&i| (b[i].re - dom_re).abs() <= dom_tol)
            .collect();
        if dominant.iter().any(|&i| !is_real_root(b[i])) || dom_re == 0.0 {
            LimitBehavior::Oscillates
        } else {
            let amp: f64 = dominant.iter().map(|&i| sol.amplitudes[i].re).sum();
            if amp > 0.0 {
                LimitBehavior::DivergesPlus
            } else if amp < 0.0 {
                LimitBehavior::DivergesMinus
            } else {
                LimitBehavior::Oscillates
            }
        }
    };
    RootDiagnostics {
        all_real,
        all_positive,
        negative_real_roots,
        limit_behavior,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hankel_layout_smallest_case() {
        let p = PronyProblem::new(vec![6.0, 18.0], 0);
        let sys = build_hankel(&p);
        assert_eq!(sys.f0[(0, 0)], 6.0);
        assert_eq!(sys.f1[(0, 0)], 18.0);
        assert_eq!(sys.rhs[0], -18.0);
    }

    #[test]
    fn hankel_layout_n2() {
        let p = PronyProblem::new(vec![1.0, 2.0, 3.0, 4.0], 0);
        let sys = build_hankel(&p);
        assert_eq!(sys.f0, DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 3.0]));
        assert_eq!(sys.f1, DMatrix::from_row_slice(2, 2, &[2.0, 3.0, 3.0, 4.0]));
        assert_eq!(sys.rhs, DVector::from_column_slice(&[-3.0, -4.0]));
        // the two blocks share everything but one anti-diagonal
        assert_eq!(sys.f0[(0, 1)], sys.f1[(0, 0)]);
        assert_eq!(sys.f0[(1, 1)], sys.f1[(1, 0)]);
    }

    #[test]
    fn single_exponential() {
        let p = PronyProblem::new(vec![6.0, 18.0], 0);
        let sol = solve_linear_prony(&p).unwrap();
        assert!((sol.exponents[0] - c(3.0, 0.0)).norm() < 1e-12);
        assert!((sol.amplitudes[0] - c(2.0, 0.0)).norm() < 1e-12);
        assert!(sol.residual < 1e-12);
    }

    #[test]
    fn two_exponentials_exact_data() {
        // A = (1, 1), b = (1, 2): F = (3, 5, 9, 17)
        let p = PronyProblem::new(vec![3.0, 5.0, 9.0, 17.0], 0);
        for sol in [solve_linear_prony(&p).unwrap(), solve_secular(&p).unwrap()] {
            assert!((sol.exponents[0] - c(1.0, 0.0)).norm() < 1e-10);
            assert!((sol.exponents[1] - c(2.0, 0.0)).norm() < 1e-10);
            assert!((sol.amplitudes[0] - c(1.0, 0.0)).norm() < 1e-10);
            assert!((sol.amplitudes[1] - c(1.0, 0.0)).norm() < 1e-10);
            assert!(sol.residual < 1e-12);
        }
    }

    #[test]
    fn secular_one_by_one_pencil() {
        let p = PronyProblem::new(vec![4.0, 10.0], 0);
        let sol = solve_secular(&p).unwrap();
        assert!((sol.exponents[0].re - 2.5).abs() < 1e-14);
        assert_eq!(sol.method, SolveMethod::SecularPencil);
    }

    #[test]
    fn routes_agree_on_mixed_signs() {
        let b = [-3.87f64, 4.04, 9.29];
        let a = [-0.017f64, 0.147, 0.000617];
        let f: Vec<f64> = (1..=6)
            .map(|k| b.iter().zip(&a).map(|(&bb, &aa)| aa * bb.powi(k)).sum())
            .collect();
        let p = PronyProblem::new(f, 0);
        let s1 = solve_linear_prony(&p).unwrap();
        let s2 = solve_secular(&p).unwrap();
        for (x, y) in s1.exponents.iter().zip(&s2.exponents) {
            assert!((x - y).norm() < 1e-8 * (1.0 + x.norm()));
        }
        for (i, &bb) in b.iter().enumerate() {
            assert!((s1.exponents[i].re - bb).abs() < 1e-8 * bb.abs());
        }
    }

    #[test]
    fn shifted_problem_scales_amplitudes() {
        // same data solved with s and s−1: identical b, A′ = A·b
        let b = [0.8f64, 2.0, 3.5];
        let a = [1.0f64, -0.5, 0.25];
        let f: Vec<f64> = (1..=6)
            .map(|k| b.iter().zip(&a).map(|(&bb, &aa)| aa * bb.powi(k)).sum())
            .collect();
        let s0 = solve_secular(&PronyProblem::new(f.clone(), 0)).unwrap();
        let sm1 = solve_secular(&PronyProblem::new(f, -1)).unwrap();
        for i in 0..3 {
            assert!((s0.exponents[i] - sm1.exponents[i]).norm() < 1e-9);
            // reading the same data at shift s−1 multiplies amplitudes by b
            let expect = s0.amplitudes[i] * s0.exponents[i];
            assert!((sm1.amplitudes[i] - expect).norm() < 1e-9);
        }
    }

    #[test]
    fn degenerate_rank_one_data() {
        // rank-one Hankel (single exponential posed at N = 2)
        let f: Vec<f64> = (1..=4).map(|k| 2.0f64.powi(k)).collect();
        let p = PronyProblem::new(f, 0);
        match solve_linear_prony(&p) {
            Err(PronyError::DegenerateProblem { .. }) => {}
            other => panic!("expected DegenerateProblem, got {other:?}"),
        }
    }

    #[test]
    fn confluent_data_reports_repeated_roots() {
        // F_k = k·2^k has a double root at b = 2 with nonsingular Hankel
        let f: Vec<f64> = (1..=4).map(|k| k as f64 * 2.0f64.powi(k)).collect();
        let p = PronyProblem::new(f, 0);
        match solve_linear_prony(&p) {
            Err(PronyError::RepeatedRoots { .. }) => {}
            other => panic!("expected RepeatedRoots, got {other:?}"),
        }
    }

    #[test]
    fn near_coincident_exponents_flagged_ill_conditioned() {
        let b = [c(1.0, 0.0), c(1.0 + 1e-13, 0.0)];
        let p = PronyProblem::new(vec![2.0, 2.0, 2.0, 2.0], 0);
        match solve_amplitudes(&p, &b) {
            Err(PronyError::IllConditionedVandermonde { .. }) => {}
            other => panic!("expected IllConditionedVandermonde, got {other:?}"),
        }
    }

    #[test]
    fn classify_mixed_sign_roots() {
        let sol = PronySolution {
            exponents: vec![c(-3.87, 0.0), c(4.04, 0.0), c(9.29, 0.0)],
            amplitudes: vec![c(-0.017, 0.0), c(0.147, 0.0), c(0.000617, 0.0)],
            residual: 0.0,
            hankel_cond: 1.0,
            amplitude_cond: 1.0,
            method: SolveMethod::LinearHankel,
        };
        let d = classify_roots(&sol);
        assert!(!d.all_positive);
        assert!(d.all_real);
        assert_eq!(d.negative_real_roots, vec![-3.87]);
        assert_eq!(d.limit_behavior, LimitBehavior::DivergesMinus);
    }

    #[test]
    fn classify_positive_and_conjugate_cases() {
        let pos = PronySolution {
            exponents: vec![c(1.0, 0.0), c(2.0, 0.0)],
            amplitudes: vec![c(1.0, 0.0), c(1.0, 0.0)],
            residual: 0.0,
            hankel_cond: 1.0,
            amplitude_cond: 1.0,
            method: SolveMethod::LinearHankel,
        };
        assert_eq!(classify_roots(&pos).limit_behavior, LimitBehavior::Converges);

        let conj = PronySolution {
            exponents: vec![c(1.5, -0.7), c(1.5, 0.7)],
            amplitudes: vec![c(0.5, 0.1), c(0.5, -0.1)],
            residual: 0.0,
            hankel_cond: 1.0,
            amplitude_cond: 1.0,
            method: SolveMethod::LinearHankel,
        };
        let d = classify_roots(&conj);
        assert!(!d.all_real);
        assert!(d.all_positive);
        assert_eq!(d.limit_behavior, LimitBehavior::Converges);
    }

    #[test]
    fn root_ordering_is_deterministic() {
        let mut b = vec![c(2.0, 0.5), c(-1.0, 0.0), c(2.0, -0.5)];
        let mut a = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        sort_solution(&mut b, &mut a);
        assert_eq!(b, vec![c(-1.0, 0.0), c(2.0, -0.5), c(2.0, 0.5)]);
        assert_eq!(a, vec![c(2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)]);
    }
}
