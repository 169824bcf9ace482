//! Exact scalars of the form `rat · √rad · π^(pi_half/2) · e^(exp_arg)`.
//!
//! Gaussian integrals of polynomial × exponential integrands land in this
//! class, and ratios of two such values with matching irrational parts are
//! exact rationals. That is what keeps the whole moment pipeline rational.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul};

/// Convert a big rational to `f64` without overflowing on huge numerators or
/// denominators: the quotient is formed at ~80 bits and rescaled.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let n = r.numer().abs();
    let d = r.denom().abs();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // scale so the integer quotient carries ~80 significant bits
    let shift = nb - db - 80;
    let q = if shift > 0 {
        &n / (&d << shift as u64)
    } else {
        (&n << (-shift) as u64) / &d
    };
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    sign * qf * 2f64.powi(shift as i32)
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, when it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let sn = is_perfect_square(r.numer())?;
    let sd = is_perfect_square(r.denom())?;
    Some(BigRational::new(sn, sd))
}

/// `rat · √rad · π^(pi_half/2) · e^(exp_arg)` with all parts rational and
/// `rad > 0`. Zero is canonical: all irrational parts reset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactScalar {
    pub rat: BigRational,
    pub rad: BigRational,
    pub pi_half: i32,
    pub exp_arg: BigRational,
}

impl ExactScalar {
    pub fn from_rational(rat: BigRational) -> Self {
        ExactScalar {
            rat,
            rad: BigRational::one(),
            pi_half: 0,
            exp_arg: BigRational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(rat: BigRational, rad: BigRational, pi_half: i32, exp_arg: BigRational) -> Self {
        assert!(rad.is_positive(), "radical part must be positive");
        let mut s = ExactScalar {
            rat,
            rad,
            pi_half,
            exp_arg,
        };
        s.canonicalize();
        s
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    /// Pull any rational square root out of `rad` into `rat`; reset the
    /// irrational parts when the value is zero.
    fn canonicalize(&mut self) {
        if self.rat.is_zero() {
            self.rad = BigRational::one();
            self.pi_half = 0;
            self.exp_arg = BigRational::zero();
            return;
        }
        if let Some(s) = rational_sqrt(&self.rad) {
            self.rat *= s;
            self.rad = BigRational::one();
        }
    }

    /// Exact rational value, if the irrational parts are trivial.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.pi_half == 0 && self.exp_arg.is_zero() {
            Some(self.rat.clone() * rational_sqrt(&self.rad)?)
        } else {
            None
        }
    }

    /// Exact quotient. `None` when the irrational parts do not cancel to a
    /// representable form.
    pub fn try_div(&self, other: &ExactScalar) -> Option<ExactScalar> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ExactScalar::from_integer(0));
        }
        Some(ExactScalar::new(
            &self.rat / &other.rat,
            &self.rad / &other.rad,
            self.pi_half - other.pi_half,
            &self.exp_arg - &other.exp_arg,
        ))
    }

    /// Exact ratio as a rational; requires full cancellation of the
    /// irrational parts.
    pub fn ratio(&self, other: &ExactScalar) -> Option<BigRational> {
        self.try_div(other)?.to_rational()
    }

    /// Exact square root, when representable in the class.
    pub fn try_sqrt(&self) -> Option<ExactScalar> {
        if self.rat.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(ExactScalar::from_integer(0));
        }
        if self.pi_half % 2 != 0 {
            return None;
        }
        // √(rat·√rad) = (rat²·rad)^(1/4); representable when rat²·rad is a
        // perfect square, i.e. rad is one (after canonicalization rad has no
        // rational square root unless it is 1).
        if !self.rad.is_one() {
            return None;
        }
        Some(ExactScalar::new(
            BigRational::one(),
            self.rat.clone(),
            self.pi_half / 2,
            &self.exp_arg / BigRational::from_integer(BigInt::from(2)),
        ))
    }

    pub fn inverse(&self) -> Option<ExactScalar> {
        ExactScalar::one().try_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        let pi_sqrt = std::f64::consts::PI.sqrt();
        ratio_to_f64(&self.rat)
            * ratio_to_f64(&self.rad).sqrt()
            * pi_sqrt.powi(self.pi_half)
            * ratio_to_f64(&self.exp_arg).exp()
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    /// Sum of two scalars with identical irrational parts.
    fn add(self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert!(
            self.rad == other.rad
                && self.pi_half == other.pi_half
                && self.exp_arg == other.exp_arg,
            "cannot add exact scalars with different irrational parts"
        );
        ExactScalar::new(
            &self.rat + &other.rat,
            self.rad.clone(),
            self.pi_half,
            self.exp_arg.clone(),
        )
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() || other.is_zero() {
            return ExactScalar::from_integer(0);
        }
        ExactScalar::new(
            &self.rat * &other.rat,
            &self.rad * &other.rad,
            self.pi_half + other.pi_half,
            &self.exp_arg + &other.exp_arg,
        )
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rat)?;
        if !self.rad.is_one() {
            write!(f, "*sqrt({})", self.rad)?;
        }
        if self.pi_half != 0 {
            write!(f, "*pi^({}/2)", self.pi_half)?;
        }
        if !self.exp_arg.is_zero() {
            write!(f, "*exp({})", self.exp_arg)?;
        }
        Ok(())
    }
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
