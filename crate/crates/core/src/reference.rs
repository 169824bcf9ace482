//! Ground truth: closed-form reference curves for the oscillator test case
//! and an independent dense-basis diagonalization oracle (plus the
//! Rayleigh–Ritz-in-Krylov-space construction) for every model.
//!
//! The oracle works in the number basis of −d²/dx² + x², whose x-operator
//! matrix elements are known in closed form; powers of x are formed on a
//! padded matrix so the truncated block is exact, and trial-state overlaps
//! come from the exact Gaussian-polynomial integrals. No quadrature anywhere.

use nalgebra::{Cholesky, DMatrix, DVector};
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::moments::MomentSequence;
use crate::poly::Poly;
use crate::scalar::ratio_to_f64;
use crate::state::{raw_inner, GaussianPolyState, StateError};

#[derive(Debug, Error)]
pub enum RefError {
    #[error("oracle unconverged at basis size {m}: gap {gap:.3e} above tolerance {tol:.3e}")]
    Unconverged { m: usize, gap: f64, tol: f64 },
    #[error("degenerate problem: Krylov Gram matrix is numerically singular")]
    DegenerateGram,
    #[error(transparent)]
    State(#[from] StateError),
}

/// Exact generating function E(t) for the oscillator with the widened
/// quadratic trial state, as a rational function of u = e^(−4t).
pub fn exact_e_ho(t: f64) -> f64 {
    let u = (-4.0 * t).exp();
    (121.0 * u.powi(3) + 189199.0 * u.powi(2) + 8180919.0 * u + 6561.0)
        / ((81.0 - u) * (121.0 * u.powi(2) + 20198.0 * u + 81.0))
}

/// Exact survival probability |C(τ)|² for the oscillator with the normalized
/// width-1 Gaussian trial: 4√2 / √(41 − 9 cos 4τ).
pub fn exact_c2_ho(tau: f64) -> f64 {
    4.0 * 2f64.sqrt() / (41.0 - 9.0 * (4.0 * tau).cos()).sqrt()
}

/// Spectral decomposition restricted to the symmetry block of the trial
/// state: ascending energies and squared overlaps |⟨φ|ψ_j⟩|². States excluded
/// by parity have exactly zero overlap and are not listed.
#[derive(Clone, Debug)]
pub struct SpectralReference {
    /// basis truncation per dimension at which the result was accepted
    pub m_per_dim: usize,
    pub energies: Vec<f64>,
    pub overlaps: Vec<f64>,
    /// max change in retained energies/overlaps between M/2 and M
    pub convergence_gap: f64,
}

impl SpectralReference {
    /// Z(t) = Σ c_j e^(−E_j t); the truncation deficit is bounded by the
    /// unassigned overlap mass.
    pub fn z(&self, t: f64) -> f64 {
        self.energies
            .iter()
            .zip(&self.overlaps)
            .map(|(&e, &c)| c * (-e * t).exp())
            .sum()
    }

    /// E(t) = −Z′(t)/Z(t).
    pub fn e(&self, t: f64) -> f64 {
        let z = self.z(t);
        let dz: f64 = self
            .energies
            .iter()
            .zip(&self.overlaps)
            .map(|(&e, &c)| c * e * (-e * t).exp())
            .sum();
        dz / z
    }

    /// |C(τ)|² = |Z(iτ)|².
    pub fn correlation_sq(&self, tau: f64) -> f64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&e, &c) in self.energies.iter().zip(&self.overlaps) {
            re += c * (e * tau).cos();
            im -= c * (e * tau).sin();
        }
        re * re + im * im
    }
}

/// (Z, E, |C|²) of the reference at the same argument.
pub fn reference_z_e_c(r: &SpectralReference, t: f64) -> (f64, f64, f64) {
    (r.z(t), r.e(t), r.correlation_sq(t))
}

#[cfg(test)]
fn hermite_polys(n_max: usize) -> Vec<Poly> {
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(Poly::constant(1, BigRational::one()));
    if n_max >= 1 {
        h.push(Poly::from_terms(
            1,
            [(vec![1], BigRational::from_integer(2.into()))],
        ));
    }
    for n in 1..n_max {
        let two_x = Poly::from_terms(1, [(vec![1], BigRational::from_integer(2.into()))]);
        let next = two_x.mul(&h[n]).add(
            &h[n - 1].scale(&BigRational::from_integer((-2 * n as i64).into())),
        );
        h.push(next);
    }
    h
}

/// Per-dimension parity of the trial state, when defined and preserved by V.
#[derive(Clone, Copy, PartialEq)]
enum Parity {
    Even,
    Odd,
    None,
}

fn symmetry_blocks(v: &Poly, phi: &GaussianPolyState) -> Vec<Parity> {
    (0..phi.dims())
        .map(|d| {
            if !v.even_in(d) || !phi.lin()[d].is_zero() {
                return Parity::None;
            }
            if phi.poly().even_in(d) {
                Parity::Even
            } else if phi.poly().odd_in(d) {
                Parity::Odd
            } else {
                Parity::None
            }
        })
        .collect()
}

fn selected_indices(m: usize, parity: Parity) -> Vec<usize> {
    match parity {
        Parity::Even => (0..m).step_by(2).collect(),
        Parity::Odd => (1..m).step_by(2).collect(),
        Parity::None => (0..m).collect(),
    }
}

/// ⟨m|x^k|n⟩ on the truncated basis, exact because the product is formed on a
/// matrix padded by k rows before truncation.
fn x_power_matrix(m: usize, k: u32) -> DMatrix<f64> {
    let big = m + k as usize;
    let mut x = DMatrix::<f64>::zeros(big, big);
    for n in 0..big - 1 {
        let v = ((n + 1) as f64 / 2.0).sqrt();
        x[(n, n + 1)] = v;
        x[(n + 1, n)] = v;
    }
    let mut acc = DMatrix::<f64>::identity(big, big);
    for _ in 0..k {
        acc = &acc * &x;
    }
    acc.view((0, 0), (m, m)).into_owned()
}

fn submatrix(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])])
}

/// Exact table h[m][n] of the rational parts of ∫ x^m H_n(x) e^(−Bx²+Γx) dx
/// relative to the common factor e^(Γ²/4B)·√(π/B), built by three-term
/// recurrences instead of expanding Hermite coefficients:
///   h[0][n+1] = (Γ/B)·h[0][n] + 2n·(1/B − 1)·h[0][n−1]
///   h[m+1][n] = (Γ·h[m][n] + m·h[m−1][n] + 2n·h[m][n−1]) / (2B)
fn hermite_moment_table(
    m_max: usize,
    n_max: usize,
    b: &BigRational,
    gamma: &BigRational,
) -> Vec<Vec<BigRational>> {
    let mut h = vec![vec![BigRational::zero(); n_max + 1]; m_max + 1];
    h[0][0] = BigRational::one();
    let g_over_b = gamma / b;
    let decay = BigRational::one() / b - BigRational::one();
    if n_max >= 1 {
        h[0][1] = g_over_b.clone();
    }
    for n in 1..n_max {
        let two_n = BigRational::from_integer((2 * n).into());
        let next = &g_over_b * &h[0][n] + &two_n * &decay * &h[0][n - 1];
        h[0][n + 1] = next;
    }
    let two_b = b + b;
    for m in 0..m_max {
        for n in 0..=n_max {
            let mut acc = gamma * &h[m][n];
            if m >= 1 {
                acc += BigRational::from_integer(m.into()) * &h[m - 1][n];
            }
            if n >= 1 {
                acc += BigRational::from_integer((2 * n).into()) * &h[m][n - 1];
            }
            h[m + 1][n] = acc / &two_b;
        }
    }
    h
}

fn factorial(n: usize) -> num::BigInt {
    let mut r = num::BigInt::one();
    for k in 2..=n {
        r *= k;
    }
    r
}

/// Signed overlap from exact parts: raw pairing integral and the two squared
/// norms. Factorially large normalizations cancel inside the exact ratio
/// before anything reaches floating point.
fn overlap_from_parts(
    raw: &crate::scalar::ExactScalar,
    chi_norm_sq: &crate::scalar::ExactScalar,
    phi_norm_sq: &crate::scalar::ExactScalar,
) -> f64 {
    if raw.is_zero() {
        return 0.0;
    }
    let num_sq = raw * raw;
    let den = chi_norm_sq * phi_norm_sq;
    let ratio = num_sq.try_div(&den).expect("positive norms");
    let sign = if raw.rat.is_negative() { -1.0 } else { 1.0 };
    sign * ratio.to_f64().max(0.0).sqrt()
}

struct TruncationResult {
    energies: Vec<f64>,
    overlaps: Vec<f64>,
}

struct BasisBlock {
    hmat: DMatrix<f64>,
    /// overlap of the normalized trial with each (normalized) basis function
    tvec: DVector<f64>,
}

fn diagonalize_at(
    h: &crate::state::PolynomialHamiltonian,
    phi: &GaussianPolyState,
    m: usize,
    blocks: &[Parity],
) -> Result<TruncationResult, RefError> {
    let block = build_block(h, phi, m, blocks)?;
    let eig = block.hmat.symmetric_eigen();
    let proj = eig.eigenvectors.transpose() * block.tvec;
    let total = proj.len();
    let mut pairs: Vec<(f64, f64)> = (0..total)
        .map(|j| (eig.eigenvalues[j], proj[j] * proj[j]))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(TruncationResult {
        energies: pairs.iter().map(|p| p.0).collect(),
        overlaps: pairs.iter().map(|p| p.1).collect(),
    })
}

fn build_block(
    h: &crate::state::PolynomialHamiltonian,
    phi: &GaussianPolyState,
    m: usize,
    blocks: &[Parity],
) -> Result<BasisBlock, RefError> {
    let dims = phi.dims();
    let v = h.potential();
    let max_pow = v
        .terms()
        .flat_map(|(e, _)| e.iter().copied())
        .max()
        .unwrap_or(0)
        .max(2);

    let idx_per_dim: Vec<Vec<usize>> = blocks.iter().map(|&b| selected_indices(m, b)).collect();
    let xk_full: Vec<DMatrix<f64>> = (0..=max_pow).map(|k| x_power_matrix(m, k)).collect();

    // one-dimensional kinetic-plus-harmonic block: p² = (p² + x²) − x²
    let p2_sub: Vec<DMatrix<f64>> = (0..dims)
        .map(|d| {
            let idx = &idx_per_dim[d];
            let mut p2 = submatrix(&xk_full[2], idx);
            p2 = -p2;
            for (r, &i) in idx.iter().enumerate() {
                p2[(r, r)] += 2.0 * i as f64 + 1.0;
            }
            p2
        })
        .collect();

    let sizes: Vec<usize> = idx_per_dim.iter().map(|v| v.len()).collect();
    let total: usize = sizes.iter().product();
    let mut hmat = DMatrix::<f64>::zeros(total, total);

    // index helpers for the tensor basis (row-major over dims)
    let unrank = |mut r: usize| -> Vec<usize> {
        let mut out = vec![0; dims];
        for d in (0..dims).rev() {
            out[d] = r % sizes[d];
            r /= sizes[d];
        }
        out
    };

    let all_multi: Vec<Vec<usize>> = (0..total).map(unrank).collect();
    for (r, mi) in all_multi.iter().enumerate() {
        for (c, mj) in all_multi.iter().enumerate() {
            let mut val = 0.0;
            // kinetic terms: diagonal in every other dimension
            for d in 0..dims {
                if (0..dims).all(|e| e == d || mi[e] == mj[e]) {
                    val += p2_sub[d][(mi[d], mj[d])];
                }
            }
            // potential terms as products of one-dimensional factors
            for (e, coeff) in v.terms() {
                let mut term = ratio_to_f64(coeff);
                for d in 0..dims {
                    let idx = &idx_per_dim[d];
                    term *= xk_full[e[d] as usize][(idx[mi[d]], idx[mj[d]])];
                }
                val += term;
            }
            hmat[(r, c)] = val;
        }
    }
    // enforce exact symmetry against accumulation order
    for r in 0..total {
        for c in (r + 1)..total {
            let avg = 0.5 * (hmat[(r, c)] + hmat[(c, r)]);
            hmat[(r, c)] = avg;
            hmat[(c, r)] = avg;
        }
    }

    // trial overlaps with each tensor basis function, via the exact
    // Hermite-moment recurrences per dimension
    let phi_norm_sq = raw_inner(phi, phi)?;
    let half = BigRational::new(1.into(), 2.into());
    let deg_per_dim: Vec<usize> = (0..dims)
        .map(|d| {
            phi.poly()
                .terms()
                .map(|(e, _)| e[d] as usize)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let tables: Vec<Vec<Vec<BigRational>>> = (0..dims)
        .map(|d| {
            let b = &phi.quad()[d] + &half;
            hermite_moment_table(deg_per_dim[d], m - 1, &b, &phi.lin()[d])
        })
        .collect();
    // shared irrational factor of the raw pairing integral
    let mut rad = BigRational::one();
    let mut exp_arg = BigRational::zero();
    let four = BigRational::from_integer(4.into());
    for d in 0..dims {
        let bsum = &phi.quad()[d] + &half;
        rad /= &bsum;
        exp_arg += &phi.lin()[d] * &phi.lin()[d] / (&four * &bsum);
    }
    let mut tvec = DVector::<f64>::zeros(total);
    for (r, mi) in all_multi.iter().enumerate() {
        let mut t_rat = BigRational::zero();
        for (e, c) in phi.poly().terms() {
            let mut term = c.clone();
            for d in 0..dims {
                term *= &tables[d][e[d] as usize][idx_per_dim[d][mi[d]]];
            }
            t_rat += term;
        }
        let raw = crate::scalar::ExactScalar::new(
            t_rat,
            rad.clone(),
            dims as i32,
            exp_arg.clone(),
        );
        // basis normalization: ∫ (Π H_{n_d} e^(−x_d²/2))² = Π 2^{n_d} n_d! π^{dims/2}
        let mut chi_rat = BigRational::one();
        for d in 0..dims {
            let n = idx_per_dim[d][mi[d]];
            chi_rat *= BigRational::from_integer(factorial(n) << n);
        }
        let chi_norm_sq = crate::scalar::ExactScalar::new(
            chi_rat,
            BigRational::one(),
            dims as i32,
            BigRational::zero(),
        );
        tvec[r] = overlap_from_parts(&raw, &chi_norm_sq, &phi_norm_sq);
    }

    Ok(BasisBlock { hmat, tvec })
}

/// Moments μ_j = vᵀ M^j v / vᵀv of the truncated Hamiltonian matrix against
/// the trial projection v, by iterated matrix-vector products. This avoids
/// the spectral decomposition entirely: high powers amplify eigenvector
/// rounding, while the direct products stay as well-conditioned as the
/// moments themselves. The truncation must cover the reach of M^j from the
/// support of v (j·deg(V)/... levels above it).
pub fn oracle_moments(
    h: &crate::state::PolynomialHamiltonian,
    phi: &GaussianPolyState,
    m_per_dim: usize,
    j_max: usize,
) -> Result<Vec<f64>, RefError> {
    if h.dims() != phi.dims() {
        return Err(StateError::DimensionMismatch(h.dims(), phi.dims()).into());
    }
    let blocks = symmetry_blocks(h.potential(), phi);
    let block = build_block(h, phi, m_per_dim, &blocks)?;
    let norm = block.tvec.dot(&block.tvec);
    let mut w = block.tvec.clone();
    let mut out = Vec::with_capacity(j_max + 1);
    out.push(1.0);
    for _ in 1..=j_max {
        w = &block.hmat * w;
        out.push(block.tvec.dot(&w) / norm);
    }
    Ok(out)
}

/// Overlap-weighted change between truncations: |Δc_j| and c_j·|ΔE_j| per
/// matched state. This is what bounds the movement of Z, E and |C|² curves;
/// energies of near-zero-overlap states are allowed to drift.
fn gap_between(small: &TruncationResult, big: &TruncationResult) -> f64 {
    let mut gap = 0.0f64;
    for j in 0..small.energies.len().min(big.energies.len()) {
        let c = big.overlaps[j].max(0.0);
        gap = gap.max(c * (small.energies[j] - big.energies[j]).abs());
        gap = gap.max((small.overlaps[j] - big.overlaps[j]).abs());
    }
    gap
}

/// Diagonalize H in the (symmetry-reduced) number basis, doubling the
/// truncation from `m_start` until retained energies and overlaps move by
/// less than `tol`, or the size cap is reached.
pub fn diagonalize(
    h: &crate::state::PolynomialHamiltonian,
    phi: &GaussianPolyState,
    m_start: usize,
    tol: f64,
) -> Result<SpectralReference, RefError> {
    assert!(m_start >= 8, "basis truncation below 8 is meaningless");
    if h.dims() != phi.dims() {
        return Err(StateError::DimensionMismatch(h.dims(), phi.dims()).into());
    }
    let blocks = symmetry_blocks(h.potential(), phi);
    let matrix_cap = 768usize;
    let mut m = m_start;
    let mut prev = diagonalize_at(h, phi, m, &blocks)?;
    let mut last_gap = f64::NAN;
    loop {
        let next_m = 2 * m;
        let next_size: usize = blocks
            .iter()
            .map(|&b| selected_indices(next_m, b).len())
            .product();
        if next_size > matrix_cap {
            return Err(RefError::Unconverged {
                m,
                gap: last_gap,
                tol,
            });
        }
        let cur = diagonalize_at(h, phi, next_m, &blocks)?;
        let gap = gap_between(&prev, &cur);
        if gap < tol {
            return Ok(SpectralReference {
                m_per_dim: next_m,
                energies: cur.energies,
                overlaps: cur.overlaps,
                convergence_gap: gap,
            });
        }
        last_gap = gap;
        prev = cur;
        m = next_m;
    }
}

/// Ritz values and squared trial projections from the Krylov space spanned by
/// H^i|φ⟩, i = 0..N−1: the Gram matrix is S[i][j] = μ_{i+j} and the operator
/// matrix is K[i][j] = μ_{i+j+1}; the symmetric-definite pencil is reduced by
/// Cholesky. Independent numerical route from the Hankel-pencil solver.
pub fn rrk_oracle(m: &MomentSequence, n: usize) -> Result<(Vec<f64>, Vec<f64>), RefError> {
    assert!(n >= 1);
    assert!(m.j_max() >= 2 * n - 1, "need moments through 2N-1");
    let mu = m.mu_f64();
    let s = DMatrix::from_fn(n, n, |i, j| mu[i + j]);
    let k = DMatrix::from_fn(n, n, |i, j| mu[i + j + 1]);
    let chol = Cholesky::new(s.clone()).ok_or(RefError::DegenerateGram)?;
    let l = chol.l();
    let c1 = l
        .solve_lower_triangular(&k)
        .ok_or(RefError::DegenerateGram)?;
    let c2 = l
        .solve_lower_triangular(&c1.transpose())
        .ok_or(RefError::DegenerateGram)?;
    let mut b = c2.transpose();
    for r in 0..n {
        for c in (r + 1)..n {
            let avg = 0.5 * (b[(r, c)] + b[(c, r)]);
            b[(r, c)] = avg;
            b[(c, r)] = avg;
        }
    }
    let eig = b.symmetric_eigen();
    let lt = l.transpose();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let y = eig.eigenvectors.column(j).into_owned();
            let c = lt
                .solve_upper_triangular(&y)
                .expect("Cholesky factor is invertible");
            let overlap: f64 = (0..n).map(|i| c[i] * mu[i]).sum();
            (eig.eigenvalues[j], overlap * overlap)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok((
        pairs.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.1).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::state::PolynomialHamiltonian;

    fn ho() -> PolynomialHamiltonian {
        PolynomialHamiltonian::new(Poly::from_terms(1, [(vec![2], rational(1, 1))]))
    }

    #[test]
    fn exact_e_ho_values() {
        // t = 0 is 8376800/1632000; the limit is the ground energy 1
        assert!((exact_e_ho(0.0) - 8376800.0 / 1632000.0).abs() < 1e-12);
        assert!((exact_e_ho(10.0) - 1.0).abs() < 1e-9);
        // nearest pole of the u-denominator sits near u = −0.0040
        let disc = (20198.0f64 * 20198.0 - 4.0 * 121.0 * 81.0).sqrt();
        let pole = (-20198.0 + disc) / (2.0 * 121.0);
        assert!((pole - (-0.0040)).abs() < 2e-4);
    }

    #[test]
    fn exact_c2_values() {
        assert!((exact_c2_ho(0.0) - 1.0).abs() < 1e-15);
        assert!((exact_c2_ho(std::f64::consts::PI / 4.0) - 0.8).abs() < 1e-15);
        for tau in [0.3, 0.9, 1.4] {
            let p = std::f64::consts::PI / 2.0;
            assert!((exact_c2_ho(tau) - exact_c2_ho(tau + p)).abs() < 1e-12);
        }
    }

    #[test]
    fn hermite_recurrence() {
        let h = hermite_polys(4);
        // H_4 = 16x⁴ − 48x² + 12
        assert_eq!(h[4].coeff(&[4]), rational(16, 1));
        assert_eq!(h[4].coeff(&[2]), rational(-48, 1));
        assert_eq!(h[4].coeff(&[0]), rational(12, 1));
    }

    #[test]
    fn oracle_on_exact_eigenstate() {
        let psi = GaussianPolyState::gaussian_1d(rational(1, 2));
        let r = diagonalize(&ho(), &psi, 8, 1e-10).unwrap();
        // even block: energies 1, 5, 9, ...
        assert!((r.energies[0] - 1.0).abs() < 1e-10);
        assert!((r.energies[1] - 5.0).abs() < 1e-9);
        assert!((r.overlaps[0] - 1.0).abs() < 1e-12);
        assert!(r.overlaps[1].abs() < 1e-12);
    }

    #[test]
    fn oracle_gauss_trial_overlap() {
        // |⟨(2/π)^{1/4}e^{−x²} | ψ_0⟩|² = 2√2/3
        let phi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let r = diagonalize(&ho(), &phi, 16, 1e-10).unwrap();
        assert!((r.overlaps[0] - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
        assert!((r.energies[0] - 1.0).abs() < 1e-10);
        let total: f64 = r.overlaps.iter().sum();
        assert!(total <= 1.0 + 1e-9);
        assert!(total > 1.0 - 1e-9);
    }

    #[test]
    fn rrk_order_one_is_rayleigh_quotient() {
        let phi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let m = MomentSequence::compute(&ho(), &phi, 3).unwrap();
        let (w, a) = rrk_oracle(&m, 1).unwrap();
        assert!((w[0] - 1.25).abs() < 1e-14);
        assert!((a[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rrk_degenerate_gram_detected() {
        // eigenstate moments give a rank-one Gram matrix
        let psi = GaussianPolyState::gaussian_1d(rational(1, 2));
        let m = MomentSequence::compute(&ho(), &psi, 5).unwrap();
        assert!(matches!(rrk_oracle(&m, 3), Err(RefError::DegenerateGram)));
    }

    #[test]
    fn reference_curves_match_closed_forms() {
        let trial = GaussianPolyState::new(
            Poly::from_terms(1, [(vec![2], rational(1, 1)), (vec![0], rational(-1, 2))]),
            vec![rational(2, 5)],
            vec![rational(0, 1)],
        )
        .unwrap();
        let r = diagonalize(&ho(), &trial, 16, 1e-10).unwrap();
        for i in 0..=20 {
            let t = 0.25 * i as f64;
            assert!(
                (r.e(t) - exact_e_ho(t)).abs() < 1e-8,
                "t = {t}: {} vs {}",
                r.e(t),
                exact_e_ho(t)
            );
        }
        let (z0, e0, c0) = reference_z_e_c(&r, 0.0);
        assert!((z0 - 1.0).abs() < 1e-10);
        assert!((e0 - exact_e_ho(0.0)).abs() < 1e-9);
        assert!((c0 - 1.0).abs() < 1e-10);
    }
}
