//! Truncated exponential generating series in the divided-power basis.
//!
//! A series `Σ a_l t^l / l!` is stored as its coefficients `a_0, …, a_L`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Egf {
    coeffs: Vec<Rational>,
}

impl Egf {
    /// Wraps coefficients `a_0..=a_L` of `t^l/l!`.
    pub fn pack(values: Vec<Rational>) -> Self {
        Egf { coeffs: values }
    }

    /// Truncation bound `L`; the series holds `L + 1` coefficients.
    pub fn max_l(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn constant(c: Rational, max_l: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); max_l + 1];
        coeffs[0] = c;
        Egf { coeffs }
    }

    /// `exp(rate·t)`, whose divided-power coefficients are `rate^l`.
    pub fn exp(rate: &Rational, max_l: usize) -> Self {
        let mut coeffs = Vec::with_capacity(max_l + 1);
        let mut p = Rational::one();
        for _ in 0..=max_l {
            coeffs.push(p.clone());
            p *= rate;
        }
        Egf { coeffs }
    }

    /// Coefficient of `t^l/l!`.
    pub fn coeff(&self, l: usize) -> &Rational {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Egf {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Egf::constant(Rational::one(), self.max_l());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Egf {
    type Output = Egf;
    fn add(self, rhs: &Egf) -> Egf {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "truncation mismatch");
        Egf {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Egf {
    type Output = Egf;
    fn sub(self, rhs: &Egf) -> Egf {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "truncation mismatch");
        Egf {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Binomial convolution: `c_l = Σ_k C(l,k) a_k b_{l−k}`.
impl Mul for &Egf {
    type Output = Egf;
    fn mul(self, rhs: &Egf) -> Egf {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "truncation mismatch");
        let coeffs = (0..self.coeffs.len())
            .map(|l| {
                (0..=l).fold(Rational::zero(), |acc, k| {
                    let c = Rational::from_integer(binomial(l as i64, k as i64));
                    acc + c * &self.coeffs[k] * &rhs.coeffs[l - k]
                })
            })
            .collect();
        Egf { coeffs }
    }
}

/// Coefficients as integers, if they all are.
pub fn integer_coeffs(series: &Egf) -> Option<Vec<BigInt>> {
    series
        .coeffs
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}
