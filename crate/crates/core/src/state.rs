//! States of the form (polynomial) · exp(−Σ a_d x_d² + Σ β_d x_d) and the
//! polynomial-potential Schrödinger operators acting on them.
//!
//! The class is closed under H = −Σ ∂²/∂x_d² + V for polynomial V, and every
//! pairing integral has a closed form, so Hamiltonian moments come out as
//! exact rationals. Floating point only enters once sequences leave this
//! module.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::ExactScalar;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("dimension mismatch: operator has {0} dimensions, state has {1}")]
    DimensionMismatch(usize, usize),
    #[error("non-normalizable combination: quadratic exponent {0} in dimension {1} is not positive")]
    NonNormalizable(String, usize),
    #[error("invalid state: {0}")]
    Invalid(String),
}

/// Wavefunction s · P(x) · exp(−Σ_d a_d x_d² + Σ_d β_d x_d), with the overall
/// scalar s carried as its exact square (normalization factors are fourth
/// roots and live outside the rational class).
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPolyState {
    poly: Poly,
    quad: Vec<BigRational>,
    lin: Vec<BigRational>,
    scale_sq: ExactScalar,
}

impl GaussianPolyState {
    pub fn new(
        poly: Poly,
        quad: Vec<BigRational>,
        lin: Vec<BigRational>,
    ) -> Result<Self, StateError> {
        if poly.is_zero() {
            return Err(StateError::Invalid("polynomial part is identically zero".into()));
        }
        if quad.len() != poly.dims() || lin.len() != poly.dims() {
            return Err(StateError::DimensionMismatch(quad.len(), poly.dims()));
        }
        for (d, a) in quad.iter().enumerate() {
            if !a.is_positive() {
                return Err(StateError::NonNormalizable(a.to_string(), d));
            }
        }
        Ok(GaussianPolyState {
            poly,
            quad,
            lin,
            scale_sq: ExactScalar::one(),
        })
    }

    /// Centered Gaussian exp(−a x²) in one dimension.
    pub fn gaussian_1d(a: BigRational) -> Self {
        GaussianPolyState::new(
            Poly::constant(1, BigRational::one()),
            vec![a],
            vec![BigRational::zero()],
        )
        .expect("valid gaussian")
    }

    pub fn dims(&self) -> usize {
        self.poly.dims()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn quad(&self) -> &[BigRational] {
        &self.quad
    }

    pub fn lin(&self) -> &[BigRational] {
        &self.lin
    }

    /// Square of the overall scalar factor.
    pub fn scale_sq(&self) -> &ExactScalar {
        &self.scale_sq
    }

    pub fn scale(&self) -> f64 {
        self.scale_sq.to_f64().sqrt()
    }

    /// Same exponential envelope, new polynomial part.
    pub fn with_poly(&self, poly: Poly) -> Self {
        GaussianPolyState {
            poly,
            quad: self.quad.clone(),
            lin: self.lin.clone(),
            scale_sq: self.scale_sq.clone(),
        }
    }

    /// Multiply the state by a rational constant.
    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut s = self.clone();
        s.poly = s.poly.scale(c);
        s
    }

    /// ψ(x) as f64, including the scalar factor.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut g = 0.0;
        for d in 0..self.dims() {
            g += -crate::scalar::ratio_to_f64(&self.quad[d]) * x[d] * x[d]
                + crate::scalar::ratio_to_f64(&self.lin[d]) * x[d];
        }
        self.scale() * self.poly.eval_f64(x) * g.exp()
    }
}

/// H = −Σ_d ∂²/∂x_d² + V with V a rational-coefficient polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialHamiltonian {
    potential: Poly,
}

impl PolynomialHamiltonian {
    pub fn new(potential: Poly) -> Self {
        PolynomialHamiltonian { potential }
    }

    pub fn dims(&self) -> usize {
        self.potential.dims()
    }

    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    /// Heuristic check that V is bounded below, by sampling a coarse grid on
    /// [−L, L]^d and comparing the boundary shell against the interior
    /// minimum. A potential decreasing outward at the boundary earns a
    /// warning from callers.
    pub fn looks_bounded_below(&self) -> bool {
        let d = self.dims();
        let l = 10.0;
        let steps = if d == 1 { 201 } else { 41 };
        let grid: Vec<f64> = (0..steps)
            .map(|i| -l + 2.0 * l * i as f64 / (steps - 1) as f64)
            .collect();
        let mut interior_min = f64::INFINITY;
        let mut boundary_min = f64::INFINITY;
        let mut idx = vec![0usize; d];
        loop {
            let x: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
            let v = self.potential.eval_f64(&x);
            let on_boundary = idx.iter().any(|&i| i == 0 || i == steps - 1);
            if on_boundary {
                boundary_min = boundary_min.min(v);
            } else {
                interior_min = interior_min.min(v);
            }
            let mut d0 = 0;
            loop {
                if d0 == d {
                    return boundary_min >= interior_min.min(0.0);
                }
                idx[d0] += 1;
                if idx[d0] < steps {
                    break;
                }
                idx[d0] = 0;
                d0 += 1;
            }
        }
    }
}

/// Apply H to ψ. The envelope is untouched; only the polynomial changes:
/// for each dimension, with g = −2 a x + β,
///   −∂²(P e^G) = −(P'' + 2 g P' + (g² − 2a) P) e^G.
pub fn apply_hamiltonian(
    h: &PolynomialHamiltonian,
    psi: &GaussianPolyState,
) -> Result<GaussianPolyState, StateError> {
    if h.dims() != psi.dims() {
        return Err(StateError::DimensionMismatch(h.dims(), psi.dims()));
    }
    let dims = psi.dims();
    let mut q = h.potential.mul(&psi.poly);
    for d in 0..dims {
        let mut g = Poly::zero(dims);
        let mut e = vec![0u32; dims];
        e[d] = 1;
        g.add_term(e, -(&psi.quad[d] + &psi.quad[d]));
        g.add_term(vec![0; dims], psi.lin[d].clone());

        let dp = psi.poly.diff(d);
        let d2p = dp.diff(d);
        let two = BigRational::from_integer(BigInt::from(2));
        let mut kinetic = d2p.add(&g.mul(&dp).scale(&two));
        let mut g2 = g.mul(&g);
        g2.add_term(vec![0; dims], -(&psi.quad[d] + &psi.quad[d]));
        kinetic = kinetic.add(&g2.mul(&psi.poly));
        q = q.add(&kinetic.scale(&-BigRational::one()));
    }
    Ok(psi.with_poly(q))
}

fn double_factorial(mut n: i64) -> BigInt {
    let mut r = BigInt::one();
    while n > 1 {
        r *= n;
        n -= 2;
    }
    r
}

/// Rational part of ∫ x^n exp(−B x² + Γ x) dx, the full value being that
/// rational times e^(Γ²/4B)·√(π/B). Completed-square shift y = x − Γ/2B gives
///   Σ_{k even} C(n,k) (Γ/2B)^{n−k} (k−1)!! / (2B)^{k/2}.
fn gaussian_moment_rational(n: u32, b: &BigRational, gamma: &BigRational) -> BigRational {
    let two_b = b + b;
    let c = gamma / &two_b;
    let mut acc = BigRational::zero();
    for k in (0..=n).step_by(2) {
        let binom = num::integer::binomial(BigInt::from(n), BigInt::from(k));
        let mut term = BigRational::from_integer(binom * double_factorial(k as i64 - 1));
        for _ in 0..(n - k) {
            term *= &c;
        }
        for _ in 0..(k / 2) {
            term /= &two_b;
        }
        acc += term;
    }
    acc
}

/// Pairing integral ∫ P1 P2 exp(−Σ(a1+a2)x² + Σ(β1+β2)x) over the shared
/// envelope, ignoring the scalar factors of either state.
pub(crate) fn raw_inner(
    psi1: &GaussianPolyState,
    psi2: &GaussianPolyState,
) -> Result<ExactScalar, StateError> {
    if psi1.dims() != psi2.dims() {
        return Err(StateError::DimensionMismatch(psi1.dims(), psi2.dims()));
    }
    let dims = psi1.dims();
    let mut bsum = Vec::with_capacity(dims);
    let mut gsum = Vec::with_capacity(dims);
    for d in 0..dims {
        let b = &psi1.quad[d] + &psi2.quad[d];
        if !b.is_positive() {
            return Err(StateError::NonNormalizable(b.to_string(), d));
        }
        bsum.push(b);
        gsum.push(&psi1.lin[d] + &psi2.lin[d]);
    }
    let prod = psi1.poly.mul(&psi2.poly);
    let mut rat = BigRational::zero();
    for (e, c) in prod.terms() {
        let mut term = c.clone();
        for d in 0..dims {
            term *= gaussian_moment_rational(e[d], &bsum[d], &gsum[d]);
        }
        rat += term;
    }
    let mut rad = BigRational::one();
    let mut exp_arg = BigRational::zero();
    let four = BigRational::from_integer(BigInt::from(4));
    for d in 0..dims {
        rad /= &bsum[d];
        exp_arg += &gsum[d] * &gsum[d] / (&four * &bsum[d]);
    }
    Ok(ExactScalar::new(rat, rad, dims as i32, exp_arg))
}

/// ⟨ψ1|ψ2⟩ over all space, scalar factors included. Exact whenever the
/// geometric mean of the two scale factors is representable; states built by
/// `new` (scale 1) and pairs sharing one normalization always qualify.
pub fn inner_product(
    psi1: &GaussianPolyState,
    psi2: &GaussianPolyState,
) -> Result<ExactScalar, StateError> {
    let raw = raw_inner(psi1, psi2)?;
    if psi1.scale_sq == psi2.scale_sq {
        if psi1.scale_sq == ExactScalar::one() {
            return Ok(raw);
        }
        return Ok(&raw * &psi1.scale_sq);
    }
    let prod = &psi1.scale_sq * &psi2.scale_sq;
    match prod.try_sqrt() {
        Some(s) => Ok(&raw * &s),
        None => Err(StateError::Invalid(
            "scale factors of the two states have no exact geometric mean".into(),
        )),
    }
}

/// Scale the state so ⟨φ|φ⟩ = 1. The polynomial part is first divided by the
/// magnitude of its leading coefficient, so rationally rescaled inputs
/// normalize to identical representations; the residual factor is stored as
/// an exact squared scale.
pub fn normalize(psi: &GaussianPolyState) -> Result<GaussianPolyState, StateError> {
    let lead = psi
        .poly
        .leading_coeff()
        .cloned()
        .ok_or_else(|| StateError::Invalid("cannot normalize the zero state".into()))?
        .abs();
    let mut canon = psi.clone();
    canon.poly = canon.poly.scale(&(BigRational::one() / lead));
    let raw = raw_inner(&canon, &canon)?;
    canon.scale_sq = raw
        .inverse()
        .ok_or_else(|| StateError::Invalid("zero norm".into()))?;
    Ok(canon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn ho() -> PolynomialHamiltonian {
        PolynomialHamiltonian::new(Poly::from_terms(1, [(vec![2], rational(1, 1))]))
    }

    #[test]
    fn ho_ground_state_is_eigenstate() {
        // (−d²/dx² + x²) e^{−x²/2} = 1 · e^{−x²/2}
        let psi = GaussianPolyState::gaussian_1d(rational(1, 2));
        let hpsi = apply_hamiltonian(&ho(), &psi).unwrap();
        assert_eq!(hpsi.poly(), &Poly::constant(1, rational(1, 1)));
        assert_eq!(hpsi.quad(), psi.quad());
    }

    #[test]
    fn wide_gaussian_under_ho() {
        // (−d²/dx² + x²) e^{−x²} = (2 − 3x²) e^{−x²}
        let psi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let hpsi = apply_hamiltonian(&ho(), &psi).unwrap();
        assert_eq!(hpsi.poly().coeff(&[0]), rational(2, 1));
        assert_eq!(hpsi.poly().coeff(&[2]), rational(-3, 1));
        assert_eq!(hpsi.poly().num_terms(), 2);
    }

    #[test]
    fn free_particle_on_x_gaussian() {
        // V ≡ 0 on x·e^{−x²/2}: −ψ″ = (3x − x³) e^{−x²/2}
        let free = PolynomialHamiltonian::new(Poly::zero(1));
        let psi = GaussianPolyState::new(
            Poly::from_terms(1, [(vec![1], rational(1, 1))]),
            vec![rational(1, 2)],
            vec![rational(0, 1)],
        )
        .unwrap();
        let hpsi = apply_hamiltonian(&free, &psi).unwrap();
        assert_eq!(hpsi.poly().coeff(&[1]), rational(3, 1));
        assert_eq!(hpsi.poly().coeff(&[3]), rational(-1, 1));
        assert_eq!(hpsi.poly().num_terms(), 2);
    }

    #[test]
    fn inner_product_standard_gaussian() {
        // ∫ e^{−2x²} = √(π/2)
        let psi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let ip = inner_product(&psi, &psi).unwrap();
        assert_eq!(ip.rat, rational(1, 1));
        assert_eq!(ip.rad, rational(1, 2));
        assert_eq!(ip.pi_half, 1);
        assert!((ip.to_f64() - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn inner_product_odd_integrand_vanishes() {
        let even = GaussianPolyState::gaussian_1d(rational(1, 1));
        let odd = even.with_poly(Poly::from_terms(1, [(vec![1], rational(1, 1))]));
        assert!(inner_product(&odd, &even).unwrap().is_zero());
    }

    #[test]
    fn inner_product_x2_pair() {
        // ∫ x⁴ e^{−2x²} = (3/16)·√(π/2)
        let g = GaussianPolyState::gaussian_1d(rational(1, 1));
        let x2 = g.with_poly(Poly::from_terms(1, [(vec![2], rational(1, 1))]));
        let ip = inner_product(&x2, &x2).unwrap();
        assert_eq!(ip.rat, rational(3, 16));
        assert_eq!(ip.rad, rational(1, 2));
        assert_eq!(ip.pi_half, 1);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let psi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let h2 = PolynomialHamiltonian::new(Poly::zero(2));
        assert!(matches!(
            apply_hamiltonian(&h2, &psi),
            Err(StateError::DimensionMismatch(2, 1))
        ));
    }

    #[test]
    fn non_normalizable_rejected() {
        assert!(matches!(
            GaussianPolyState::new(
                Poly::constant(1, rational(1, 1)),
                vec![rational(-1, 1)],
                vec![rational(0, 1)]
            ),
            Err(StateError::NonNormalizable(_, 0))
        ));
    }

    #[test]
    fn normalize_wide_gaussian() {
        // e^{−x²} normalizes to (2/π)^{1/4} e^{−x²}
        let psi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let n = normalize(&psi).unwrap();
        let expected = (2.0 / std::f64::consts::PI).powf(0.25);
        assert!((n.scale() - expected).abs() < 1e-15);
        let norm = inner_product(&n, &n).unwrap();
        assert_eq!(norm, ExactScalar::one());
    }

    #[test]
    fn normalize_is_idempotent_and_scale_invariant() {
        let psi = GaussianPolyState::gaussian_1d(rational(1, 1));
        let n1 = normalize(&psi).unwrap();
        let n2 = normalize(&n1).unwrap();
        assert_eq!(n1, n2);
        let scaled = psi.scaled(&rational(3, 7));
        assert_eq!(normalize(&scaled).unwrap(), n1);
    }

    #[test]
    fn displaced_gaussian_norm() {
        // e^{−x²+2x} = e·e^{−(x−1)²}: ⟨φ|φ⟩ = e²·√(π/2)
        let psi = GaussianPolyState::new(
            Poly::constant(1, rational(1, 1)),
            vec![rational(1, 1)],
            vec![rational(2, 1)],
        )
        .unwrap();
        let ip = inner_product(&psi, &psi).unwrap();
        assert_eq!(ip.exp_arg, rational(2, 1));
        let expected = (std::f64::consts::PI / 2.0).sqrt() * (2.0f64).exp();
        assert!((ip.to_f64() - expected).abs() < 1e-12);
    }

    #[test]
    fn bounded_below_heuristic() {
        assert!(ho().looks_bounded_below());
        let bad = PolynomialHamiltonian::new(Poly::from_terms(1, [(vec![2], rational(-1, 1))]));
        assert!(!bad.looks_bounded_below());
        let dw = PolynomialHamiltonian::new(Poly::from_terms(
            1,
            [
                (vec![4], rational(1, 1)),
                (vec![2], rational(-2, 1)),
                (vec![0], rational(1, 1)),
            ],
        ));
        assert!(dw.looks_bounded_below());
    }
}
