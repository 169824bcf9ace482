//! Hamiltonian moments μ_j = ⟨φ|H^j|φ⟩/⟨φ|φ⟩ and the connected moments
//! (cumulants) I_j, all in exact rational arithmetic.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

use crate::series::energy_series_from_moments;
use crate::state::{apply_hamiltonian, raw_inner, GaussianPolyState, PolynomialHamiltonian, StateError};

/// Normalized moment sequence μ_0..μ_J with μ_0 = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    mu: Vec<BigRational>,
    model_id: String,
    state_id: String,
}

impl MomentSequence {
    /// μ_j for j = 0..J by iterated application of H. The scalar factors of
    /// φ cancel in the ratio, so normalization of the input is irrelevant.
    pub fn compute(
        h: &PolynomialHamiltonian,
        phi: &GaussianPolyState,
        j_max: usize,
    ) -> Result<Self, StateError> {
        assert!(j_max >= 1, "need at least mu_0, mu_1");
        let norm = raw_inner(phi, phi)?;
        let mut mu = Vec::with_capacity(j_max + 1);
        mu.push(BigRational::one());
        let mut psi = phi.clone();
        for _ in 1..=j_max {
            psi = apply_hamiltonian(h, &psi)?;
            let num = raw_inner(phi, &psi)?;
            let ratio = num
                .ratio(&norm)
                .expect("shared envelope makes the moment ratio rational");
            mu.push(ratio);
        }
        Ok(MomentSequence {
            mu,
            model_id: format!("V = {}", h.potential()),
            state_id: format!("poly = {}", phi.poly()),
        })
    }

    /// Wrap an explicit sequence; μ_0 must be 1.
    pub fn from_values(mu: Vec<BigRational>, model_id: &str, state_id: &str) -> Self {
        assert!(!mu.is_empty() && mu[0].is_one(), "sequence must be normalized (mu_0 = 1)");
        MomentSequence {
            mu,
            model_id: model_id.into(),
            state_id: state_id.into(),
        }
    }

    pub fn j_max(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mu(&self) -> &[BigRational] {
        &self.mu
    }

    pub fn mu_f64(&self) -> Vec<f64> {
        self.mu.iter().map(crate::scalar::ratio_to_f64).collect()
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn state_id(&self) -> &str {
        &self.state_id
    }

    pub fn with_ids(mut self, model_id: &str, state_id: &str) -> Self {
        self.model_id = model_id.into();
        self.state_id = state_id.into();
        self
    }

    /// Exact positive-semidefiniteness of the Hankel matrix [μ_{i+j}],
    /// i,j = 0..⌊J/2⌋, via symmetric elimination with diagonal pivoting.
    pub fn hankel_is_psd(&self) -> bool {
        let n = self.j_max() / 2 + 1;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| self.mu[i + j].clone()).collect())
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            // pick the largest remaining diagonal entry as pivot
            let (pos, piv_idx) = match active
                .iter()
                .enumerate()
                .max_by(|a, b| m[*a.1][*a.1].abs().cmp(&m[*b.1][*b.1].abs()))
            {
                Some((p, &i)) => (p, i),
                None => break,
            };
            let pivot = m[piv_idx][piv_idx].clone();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                // all remaining diagonals are zero; PSD requires the whole
                // remaining block to vanish
                return active
                    .iter()
                    .all(|&i| active.iter().all(|&j| m[i][j].is_zero()));
            }
            active.remove(pos);
            for &i in &active {
                let f = &m[i][piv_idx] / &pivot;
                for &j in &active {
                    let delta = &f * &m[piv_idx][j];
                    m[i][j] -= delta;
                }
            }
        }
        true
    }
}

/// Connected moments I_1..I_J (stored zero-based: i[k] = I_{k+1}).
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectedMoments {
    i: Vec<BigRational>,
}

impl ConnectedMoments {
    pub fn j_max(&self) -> usize {
        self.i.len()
    }

    /// I_k for k = 1..J (1-based, matching the usual notation).
    pub fn get(&self, k: usize) -> &BigRational {
        &self.i[k - 1]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.i
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.i.iter().map(crate::scalar::ratio_to_f64).collect()
    }

    pub fn from_values(i: Vec<BigRational>) -> Self {
        assert!(!i.is_empty());
        ConnectedMoments { i }
    }
}

/// Binomial recurrence from moments to cumulants:
/// I_1 = μ_1, I_{j+1} = μ_{j+1} − Σ_{i=0}^{j−1} C(j,i) I_{i+1} μ_{j−i}.
pub fn connected_moments(m: &MomentSequence) -> ConnectedMoments {
    let mu = m.mu();
    let j_max = m.j_max();
    let mut i_vals: Vec<BigRational> = Vec::with_capacity(j_max);
    i_vals.push(mu[1].clone());
    for j in 1..j_max {
        let mut acc = mu[j + 1].clone();
        for i in 0..j {
            let c = num::integer::binomial(BigInt::from(j), BigInt::from(i));
            acc -= BigRational::from_integer(c) * &i_vals[i] * &mu[j - i];
        }
        i_vals.push(acc);
    }
    ConnectedMoments { i: i_vals }
}

/// Run the recurrence forward: rebuild μ_1..μ_J from I_1..I_J (μ_0 = 1).
pub fn moments_from_connected(i: &ConnectedMoments) -> Vec<BigRational> {
    let j_max = i.j_max();
    let mut mu = vec![BigRational::one(), i.get(1).clone()];
    for j in 1..j_max {
        let mut acc = i.get(j + 1).clone();
        for k in 0..j {
            let c = num::integer::binomial(BigInt::from(j), BigInt::from(k));
            acc += BigRational::from_integer(c) * i.get(k + 1) * &mu[j - k];
        }
        mu.push(acc);
    }
    mu
}

/// Series-level identity: the t^j coefficient of −Z′/Z equals
/// (−1)^j I_{j+1}/j!. Returns the largest order checked.
pub fn verify_series_identity(m: &MomentSequence, i: &ConnectedMoments) -> bool {
    let e = energy_series_from_moments(m.mu());
    let mut fact = BigRational::one();
    for (j, coeff) in e.iter().enumerate() {
        if j > 0 {
            fact *= BigRational::from_integer(j.into());
        }
        if j >= i.j_max() {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let expected = BigRational::from_integer(sign.into()) * i.get(j + 1) / &fact;
        if *coeff != expected {
            return false;
        }
    }
    true
}
