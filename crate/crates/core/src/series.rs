//! Formal power series over the rationals, truncated at a fixed order.
//! Used to relate moment sequences, their generating function, and the
//! connected-moment expansion at the series level.

use num::{BigRational, Zero};

/// c[j] is the coefficient of t^j.
pub type RationalSeries = Vec<BigRational>;

pub fn series_mul(a: &[BigRational], b: &[BigRational], order: usize) -> RationalSeries {
    let mut r = vec![BigRational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            r[i + j] += ai * bj;
        }
    }
    r
}

/// a / b with b[0] ≠ 0, to the given order.
pub fn series_div(a: &[BigRational], b: &[BigRational], order: usize) -> RationalSeries {
    assert!(!b[0].is_zero(), "series division needs a unit constant term");
    let mut q = vec![BigRational::zero(); order + 1];
    for k in 0..=order {
        let mut acc = a.get(k).cloned().unwrap_or_else(BigRational::zero);
        for i in 0..k {
            acc -= &q[i] * b.get(k - i).cloned().unwrap_or_else(BigRational::zero);
        }
        q[k] = acc / &b[0];
    }
    q
}

pub fn series_derivative(a: &[BigRational]) -> RationalSeries {
    if a.len() <= 1 {
        return vec![BigRational::zero()];
    }
    (1..a.len())
        .map(|j| &a[j] * BigRational::from_integer(j.into()))
        .collect()
}

/// Maclaurin series of the moment generating function:
/// coefficient of t^j is (−1)^j μ_j / j!.
pub fn z_series(mu: &[BigRational]) -> RationalSeries {
    let mut fact = BigRational::from_integer(1.into());
    mu.iter()
        .enumerate()
        .map(|(j, m)| {
            if j > 0 {
                fact *= BigRational::from_integer(j.into());
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            m * BigRational::from_integer(sign.into()) / &fact
        })
        .collect()
}

/// Coefficients of −Z′(t)/Z(t) up to the order supported by `mu`.
pub fn energy_series_from_moments(mu: &[BigRational]) -> RationalSeries {
    let z = z_series(mu);
    let order = mu.len().saturating_sub(2);
    let mut neg_dz = series_derivative(&z);
    for c in &mut neg_dz {
        *c = -c.clone();
    }
    series_div(&neg_dz, &z, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn division_inverts_multiplication() {
        let a = vec![rational(1, 1), rational(2, 3), rational(-1, 5)];
        let b = vec![rational(2, 1), rational(1, 7), rational(3, 4)];
        let p = series_mul(&a, &b, 2);
        let q = series_div(&p, &b, 2);
        assert_eq!(q, a);
    }

    #[test]
    fn eigenstate_energy_series_is_constant() {
        // μ_j = E^j gives E(t) ≡ E
        let e = rational(7, 3);
        let mut mu = vec![rational(1, 1)];
        for _ in 0..5 {
            mu.push(mu.last().unwrap() * &e);
        }
        let s = energy_series_from_moments(&mu);
        assert_eq!(s[0], e);
        assert!(s[1..].iter().all(|c| c.is_zero()));
    }
}
