//! Univariate polynomials with cyclotomic coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{Cyclotomic, Rational};

/// Dense polynomial, `coeffs[k]` is the coefficient of `x^k`. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Cyclotomic>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Cyclotomic::one()])
    }

    /// `x`
    pub fn x() -> Self {
        UniPoly::new(vec![Cyclotomic::zero(), Cyclotomic::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Cyclotomic::from_int(c)).collect())
    }

    /// Monic polynomial `Π (x - r)`.
    pub fn from_roots(roots: &[Cyclotomic]) -> Self {
        roots.iter().fold(UniPoly::one(), |acc, r| {
            &acc * &UniPoly::new(vec![-r, Cyclotomic::one()])
        })
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyclotomic {
        self.coeffs.get(k).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Cyclotomic::is_one)
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        self.coeffs
            .iter()
            .rev()
            .fold(Cyclotomic::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&super::int(k as i64)))
                .collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }

    /// Coefficients as nonnegative integers, if they all are.
    pub fn nonnegative_integer_coeffs(&self) -> Option<Vec<u64>> {
        self.coeffs
            .iter()
            .map(|c| {
                let v = c.to_integer()?;
                u64::try_from(v).ok()
            })
            .collect()
    }

    /// Renders with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coeff = c.to_string();
            let simple = c.is_rational();
            terms.push(match (k, c.is_one()) {
                (0, _) => coeff,
                (_, true) => mono,
                _ if simple => format!("{coeff}*{mono}"),
                _ => format!("({coeff})*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

/// Truncated power-series helpers over `Cyclotomic`; a series is a coefficient
/// vector whose length is the truncation order.
pub mod series {
    use super::Cyclotomic;

    /// Inverse of a series with constant term 1, truncated to `len` terms.
    pub fn inverse_unit(f: &[Cyclotomic], len: usize) -> Vec<Cyclotomic> {
        assert!(
            f.first().is_some_and(Cyclotomic::is_one),
            "series inverse needs constant term 1"
        );
        let mut g = vec![Cyclotomic::zero(); len];
        if len == 0 {
            return g;
        }
        g[0] = Cyclotomic::one();
        for k in 1..len {
            let mut acc = Cyclotomic::zero();
            for j in 1..=k.min(f.len() - 1) {
                if !f[j].is_zero() && !g[k - j].is_zero() {
                    acc = &acc + &(&f[j] * &g[k - j]);
                }
            }
            g[k] = -acc;
        }
        g
    }

    /// Product truncated to `len` terms.
    pub fn mul(a: &[Cyclotomic], b: &[Cyclotomic], len: usize) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        out
    }

    /// Multiplies by `(1 - t^d)` in place.
    pub fn mul_one_minus_power(f: &mut [Cyclotomic], d: usize) {
        for k in (d..f.len()).rev() {
            f[k] = &f[k] - &f[k - d];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_drops_leading_zeros() {
        let p = UniPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(UniPoly::from_ints(&[0, 0]).is_zero());
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn roots_and_eval() {
        let p = UniPoly::from_roots(&[Cyclotomic::from_int(-1), Cyclotomic::from_int(1)]);
        assert_eq!(p, UniPoly::from_ints(&[-1, 0, 1]));
        assert!(p.eval(&Cyclotomic::from_int(1)).is_zero());
        let q = UniPoly::from_ints(&[0, 1, 1]);
        assert_eq!(q.derivative().eval(&Cyclotomic::one()), Cyclotomic::from_int(3));
        assert_eq!(q.display_in("q"), "q^2 + q");
    }

    #[test]
    fn series_inverse() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let f = vec![Cyclotomic::one(), Cyclotomic::from_int(-1)];
        let g = series::inverse_unit(&f, 5);
        assert!(g.iter().all(Cyclotomic::is_one));
        let mut h = g.clone();
        series::mul_one_minus_power(&mut h, 1);
        assert!(h[0].is_one() && h[1..].iter().all(Cyclotomic::is_zero));
        let sq = series::mul(&g, &g, 4);
        assert_eq!(sq[3], Cyclotomic::from_int(4));
    }
}
