//! Sparse multivariate polynomials with big-rational coefficients.

use num::{BigRational, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::ratio_to_f64;

/// Polynomial as a map from per-dimension exponent tuples to coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    dims: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(dims: usize) -> Self {
        Poly {
            dims,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dims: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(dims);
        p.add_term(vec![0; dims], c);
        p
    }

    pub fn from_terms(dims: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Poly::zero(dims);
        for (e, c) in terms {
            assert_eq!(e.len(), dims, "exponent tuple length must equal dims");
            p.add_term(e, c);
        }
        p
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        use std::collections::btree_map::Entry;
        match entry {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.dims, other.dims);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dims);
        }
        Poly {
            dims: self.dims,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.dims, other.dims);
        let mut r = Poly::zero(self.dims);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// Partial derivative along dimension `d`.
    pub fn diff(&self, d: usize) -> Poly {
        let mut r = Poly::zero(self.dims);
        for (e, c) in &self.terms {
            if e[d] > 0 {
                let mut e2 = e.clone();
                e2[d] -= 1;
                r.add_term(e2, c * BigRational::from_integer(e[d].into()));
            }
        }
        r
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dims);
        self.terms
            .iter()
            .map(|(e, c)| {
                ratio_to_f64(c)
                    * e.iter()
                        .zip(x)
                        .map(|(&k, &xi)| xi.powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// Coefficient of the first (lexicographically smallest) stored term.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }

    /// All exponents even in dimension `d`.
    pub fn even_in(&self, d: usize) -> bool {
        self.terms.keys().all(|e| e[d] % 2 == 0)
    }

    /// All exponents odd in dimension `d`.
    pub fn odd_in(&self, d: usize) -> bool {
        self.terms.keys().all(|e| e[d] % 2 == 1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = ["x", "y", "z", "w"];
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            write!(f, "{}", c.abs())?;
            for (d, &k) in e.iter().enumerate() {
                if k == 1 {
                    write!(f, "*{}", vars.get(d).unwrap_or(&"v"))?;
                } else if k > 1 {
                    write!(f, "*{}^{}", vars.get(d).unwrap_or(&"v"), k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn x2_minus_half() -> Poly {
        Poly::from_terms(1, [(vec![2], rational(1, 1)), (vec![0], rational(-1, 2))])
    }

    #[test]
    fn mul_and_diff() {
        let p = x2_minus_half();
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(&[4]), rational(1, 1));
        assert_eq!(sq.coeff(&[2]), rational(-1, 1));
        assert_eq!(sq.coeff(&[0]), rational(1, 4));
        let d = sq.diff(0);
        assert_eq!(d.coeff(&[3]), rational(4, 1));
        assert_eq!(d.coeff(&[1]), rational(-2, 1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = x2_minus_half();
        let q = p.scale(&rational(-1, 1));
        assert!(p.add(&q).is_zero());
    }

    #[test]
    fn parity_predicates() {
        let p = x2_minus_half();
        assert!(p.even_in(0));
        let x = Poly::from_terms(1, [(vec![1], rational(1, 1))]);
        assert!(x.odd_in(0));
        assert!(!x.even_in(0));
    }
}
