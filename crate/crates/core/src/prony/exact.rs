//! Extended-precision route: the Hankel coefficient system is eliminated in
//! exact rational arithmetic, roots are Newton-polished in complex-rational
//! arithmetic to a requested decimal accuracy, and amplitudes come from the
//! square system over the first N equations, also eliminated exactly.
//!
//! Hankel conditioning is the known failure mode of these fits in double
//! precision; this path removes it entirely at the cost of speed.

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::scalar::ratio_to_f64;

#[derive(Debug, Error)]
pub enum ExactPronyError {
    #[error("degenerate problem: exact Hankel matrix is singular; reduce N")]
    Singular,
    #[error("repeated roots detected at the requested precision; confluent systems are unsupported")]
    RepeatedRoots,
    #[error("root polishing did not reach 10^-{0} within the iteration cap")]
    NoConvergence(u32),
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn zero() -> Self {
        CRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        CRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        CRat {
            re: BigRational::from_float(re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_float(im).unwrap_or_else(BigRational::zero),
        }
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &CRat) -> CRat {
        let d = o.norm_sqr();
        CRat {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        }
    }

    pub fn scale(&self, c: &BigRational) -> CRat {
        CRat {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn powu(&self, mut e: u32) -> CRat {
        let mut base = self.clone();
        let mut acc = CRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Truncate numerators and denominators to `bits` binary digits of
    /// fractional precision, keeping Newton iterates from ballooning.
    pub fn rounded(&self, bits: u64) -> CRat {
        CRat {
            re: round_rational(&self.re, bits),
            im: round_rational(&self.im, bits),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

fn round_rational(r: &BigRational, bits: u64) -> BigRational {
    let scaled = r * BigRational::from_integer(BigInt::one() << bits);
    let rounded = scaled.round().to_integer();
    BigRational::new(rounded, BigInt::one() << bits)
}

/// Exact Gaussian elimination with partial pivoting on |entry|.
fn solve_rational_system(
    mut m: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))?;
        if m[pivot_row][col].is_zero() {
            return None;
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in (col + 1)..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &m[col][col];
            for k in col..n {
                let delta = &factor * &m[col][k];
                m[row][k] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[row] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for k in (row + 1)..n {
            acc -= &m[row][k] * &x[k];
        }
        x[row] = acc / &m[row][row];
    }
    Some(x)
}

fn solve_crat_system(mut m: Vec<Vec<CRat>>, mut rhs: Vec<CRat>) -> Option<Vec<CRat>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&a, &b| m[a][col].norm_sqr().cmp(&m[b][col].norm_sqr()))?;
        if m[pivot_row][col].is_zero() {
            return None;
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in (col + 1)..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].div(&m[col][col]);
            for k in col..n {
                let delta = factor.mul(&m[col][k]);
                m[row][k] = m[row][k].sub(&delta);
            }
            let delta = factor.mul(&rhs[col]);
            rhs[row] = rhs[row].sub(&delta);
        }
    }
    let mut x = vec![CRat::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for k in (row + 1)..n {
            acc = acc.sub(&m[row][k].mul(&x[k]));
        }
        x[row] = acc.div(&m[row][row]);
    }
    Some(x)
}

/// Solution carrying complex-rational approximants accurate to the requested
/// number of decimal digits.
#[derive(Clone, Debug)]
pub struct ExactPronySolution {
    pub exponents: Vec<CRat>,
    pub amplitudes: Vec<CRat>,
    /// max relative reconstruction error over all 2N equations
    pub residual: BigRational,
    pub digits: u32,
}

/// Solve F_k = Σ A_n b_n^{k+s} with rational data. The polynomial
/// coefficients are exact; roots are polished until the Newton update falls
/// below 10^(−digits) relative.
pub fn solve_exact(
    f: &[BigRational],
    shift: i32,
    digits: u32,
) -> Result<ExactPronySolution, ExactPronyError> {
    assert!(!f.is_empty() && f.len() % 2 == 0, "need 2N values");
    assert!(shift >= -1, "shift below -1 is not used by any caller");
    let n = f.len() / 2;
    let m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| (0..n).map(|c| f[r + c].clone()).collect())
        .collect();
    let rhs: Vec<BigRational> = (0..n).map(|r| -f[r + n].clone()).collect();
    let pcoeffs = solve_rational_system(m, rhs).ok_or(ExactPronyError::Singular)?;

    // f64 companion seeds, then complex-rational Newton on the exact p(b)
    let seeds = super::monic_roots(&pcoeffs.iter().map(ratio_to_f64).collect::<Vec<_>>());
    let work_bits = (digits as u64 * 4).max(256) + 64;
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let tol_sq = &tol * &tol;
    let mut roots = Vec::with_capacity(n);
    for seed in seeds {
        let mut z = CRat::from_f64(seed.re, seed.im).rounded(work_bits);
        let mut converged = false;
        for _ in 0..80 {
            let (pv, dv) = eval_poly_and_derivative(&pcoeffs, &z);
            if dv.is_zero() {
                break;
            }
            let step = pv.div(&dv);
            z = z.sub(&step).rounded(work_bits);
            let scale = BigRational::one() + z.norm_sqr();
            if step.norm_sqr() <= &tol_sq * &scale {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(ExactPronyError::NoConvergence(digits));
        }
        roots.push(z);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = roots[i].sub(&roots[j]).norm_sqr();
            let scale = BigRational::one() + roots[i].norm_sqr();
            if diff <= &tol_sq * &scale {
                return Err(ExactPronyError::RepeatedRoots);
            }
        }
    }
    roots.sort_by(|a, b| {
        let ka = (ratio_to_f64(&a.re), ratio_to_f64(&a.im).abs(), ratio_to_f64(&a.im));
        let kb = (ratio_to_f64(&b.re), ratio_to_f64(&b.im).abs(), ratio_to_f64(&b.im));
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });

    // amplitudes from the square system k = 1..N
    let vmat: Vec<Vec<CRat>> = (1..=n)
        .map(|k| {
            roots
                .iter()
                .map(|b| b.powu((k as i32 + shift) as u32))
                .collect()
        })
        .collect();
    let vrhs: Vec<CRat> = (0..n)
        .map(|k| CRat {
            re: f[k].clone(),
            im: BigRational::zero(),
        })
        .collect();
    let amps = solve_crat_system(vmat, vrhs).ok_or(ExactPronyError::RepeatedRoots)?;
    let amps: Vec<CRat> = amps.into_iter().map(|a| a.rounded(work_bits)).collect();

    // residual over all 2N equations
    let mut residual = BigRational::zero();
    for k in 1..=2 * n {
        let mut model = CRat::zero();
        for (b, a) in roots.iter().zip(&amps) {
            model = model.add(&a.mul(&b.powu((k as i32 + shift) as u32)));
        }
        let err_sq = model
            .sub(&CRat {
                re: f[k - 1].clone(),
                im: BigRational::zero(),
            })
            .norm_sqr();
        let scale = f[k - 1].abs().max(BigRational::one());
        let rel_sq = err_sq / (&scale * &scale);
        if rel_sq > residual {
            residual = rel_sq;
        }
    }
    residual = sqrt_upper_bound(&residual);
    Ok(ExactPronySolution {
        exponents: roots,
        amplitudes: amps,
        residual,
        digits,
    })
}

fn eval_poly_and_derivative(coeffs: &[BigRational], z: &CRat) -> (CRat, CRat) {
    // p(b) = b^n + Σ coeffs[j] b^j, Horner for value and derivative
    let n = coeffs.len();
    let mut p = CRat::one();
    let mut dp = CRat::zero();
    for j in (0..n).rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(&CRat {
            re: coeffs[j].clone(),
            im: BigRational::zero(),
        });
    }
    (p, dp)
}

/// Cheap rational upper bound on √r, adequate for a reported residual.
fn sqrt_upper_bound(r: &BigRational) -> BigRational {
    if r.is_zero() {
        return BigRational::zero();
    }
    let approx = ratio_to_f64(r).sqrt() * 1.0000001;
    BigRational::from_float(approx.max(f64::MIN_POSITIVE)).unwrap_or_else(BigRational::one)
}

/// Render a rational with the given number of significant decimal digits, in
/// scientific notation.
pub fn rational_to_decimal(r: &BigRational, sig: u32) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let sig = sig.max(1) as i64;
    // initial exponent estimate from digit counts, then corrected
    let mut e10 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    loop {
        let k = sig - 1 - e10;
        let scaled = if k >= 0 {
            &a * BigRational::from_integer(BigInt::from(10u32).pow(k as u32))
        } else {
            &a / BigRational::from_integer(BigInt::from(10u32).pow((-k) as u32))
        };
        let digits_int = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
        let (_, ds) = digits_int.to_integer().to_radix_be(10);
        let len = ds.len() as i64;
        if len == sig {
            let s: String = ds.iter().map(|d| (b'0' + d) as char).collect();
            let mantissa = if s.len() > 1 {
                format!("{}.{}", &s[..1], &s[1..])
            } else {
                s
            };
            return format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e10);
        }
        // rounding carried past the estimate (e.g. 0.999 → 1.00)
        e10 += len - sig;
    }
}

/// Sign-aware BigInt construction guard for radix digits.
#[allow(dead_code)]
fn bigint_from_digits(sign: Sign, digits: &[u8]) -> BigInt {
    BigInt::from_radix_be(sign, digits, 10).unwrap_or_default()
}
