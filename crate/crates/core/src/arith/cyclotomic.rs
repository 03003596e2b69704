//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element of order `m` is stored in the power basis `ζ^0, …, ζ^{φ(m)-1}` of
//! `Q[x]/Φ_m(x)`. The representation is canonical for a fixed order, so two
//! values of the same order are equal iff their coefficient vectors are equal.
//! Values of different orders are compared after embedding both into
//! `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{parse_rational, Rational};
use crate::error::ArithError;

/// Reduction data for one cyclotomic order.
#[derive(Debug)]
struct FieldData {
    phi: usize,
    /// `rows[k - phi]` holds the power-basis coordinates of `x^k` modulo `Φ_m`
    /// for `phi <= k < m`.
    rows: Vec<Vec<i64>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    let mut n = m as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m > 0, "cyclotomic order must be positive");
    if let Some(p) = poly_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Φ_d with d | m, d < m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            num = exact_monic_division(&num, &divisor);
        }
    }
    let result = Arc::new(num);
    poly_cache().write().unwrap().insert(m, result.clone());
    result
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] = rem[k + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn field_data(order: u32) -> Arc<FieldData> {
    if let Some(d) = field_cache().read().unwrap().get(&order) {
        return d.clone();
    }
    let phi = euler_phi(order);
    let poly = cyclotomic_polynomial(order);
    let mut rows = Vec::with_capacity(order as usize - phi);
    if (order as usize) > phi {
        // x^phi = -(Φ_m - x^phi)
        let mut row: Vec<i64> = poly[..phi].iter().map(|c| -c).collect();
        rows.push(row.clone());
        for _ in phi + 1..order as usize {
            let top = row[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&row[..phi - 1]);
            for (j, n) in next.iter_mut().enumerate() {
                *n = n
                    .checked_sub(top.checked_mul(poly[j]).expect("reduction overflow"))
                    .expect("reduction overflow");
            }
            row = next;
            rows.push(row.clone());
        }
    }
    let data = Arc::new(FieldData { phi, rows });
    field_cache().write().unwrap().insert(order, data.clone());
    data
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of the cyclotomic field `Q(ζ_order)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Reduces a dense coefficient vector indexed by exponent of `ζ_order`
    /// (any length) into canonical form.
    pub fn from_dense(order: u32, dense: Vec<Rational>) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let data = field_data(order);
        let m = order as usize;
        let mut folded = if dense.len() > m {
            let mut f = vec![Rational::zero(); m];
            for (k, c) in dense.into_iter().enumerate() {
                if !c.is_zero() {
                    f[k % m] += c;
                }
            }
            f
        } else {
            dense
        };
        folded.resize(folded.len().max(data.phi), Rational::zero());
        let mut coeffs: Vec<Rational> = folded.drain(..data.phi).collect();
        for (offset, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (dst, &r) in coeffs.iter_mut().zip(&data.rows[offset]) {
                if r != 0 {
                    *dst += &c * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        Cyclotomic { order, coeffs }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// `ζ_order^exponent` with `ζ_m = exp(2πi/m)`.
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        let k = exponent.rem_euclid(order as i64) as usize;
        let mut dense = vec![Rational::zero(); k + 1];
        dense[k] = Rational::one();
        Self::from_dense(order, dense)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    ///
    /// For order `m` the power basis contains `1`, so an element is rational iff
    /// only its constant coordinate is nonzero.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Image under `ζ ↦ ζ^{order/self.order}`. `order` must be a multiple of the current order.
    pub fn embed(&self, order: u32) -> Self {
        if order == self.order {
            return self.clone();
        }
        assert!(
            order % self.order == 0,
            "cannot embed Q(ζ_{}) into Q(ζ_{})",
            self.order,
            order
        );
        let step = (order / self.order) as usize;
        let mut dense = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            dense[k * step] = c.clone();
        }
        Self::from_dense(order, dense)
    }

    /// Field automorphism `ζ ↦ ζ^j`; `j` must be coprime to the order.
    pub fn galois(&self, j: i64) -> Self {
        let m = self.order as i64;
        debug_assert_eq!(j.rem_euclid(m).gcd(&m), 1);
        let mut dense = vec![Rational::zero(); self.order as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(k as i64 * j).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_dense(self.order, dense)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Product of all Galois conjugates; a rational number.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for j in 2..self.order as i64 {
            if j.gcd(&(self.order as i64)) == 1 {
                acc = &acc * &self.galois(j);
            }
        }
        acc.to_rational().expect("field norm must be rational")
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // a^{-1} = (Π_{j≠1} σ_j(a)) / N(a)
        let mut others = Cyclotomic::one().embed(self.order);
        for j in 2..self.order as i64 {
            if j.gcd(&(self.order as i64)) == 1 {
                others = &others * &self.galois(j);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm must be rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one().embed(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (a.embed(m), b.embed(m))
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        if self.order != rhs.order {
            let (a, b) = Self::common(self, rhs);
            return a.add_impl(&b, negate);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(x, y)| if negate { x - y } else { x + y })
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.order != rhs.order {
            let (a, b) = Self::common(self, rhs);
            return a.mul_impl(&b);
        }
        if self.order == 1 {
            return Self::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        let n = self.coeffs.len();
        let mut dense = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.order, dense)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(v: BigInt) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(v))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("cyclotomic division by zero"));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `a0 + a1*z(m) + a2*z(m)^2 + …`, omitting zero terms and unit
/// coefficients.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                terms.push(fmt_rational(c));
                continue;
            }
            let power = if k == 1 {
                format!("z({})", self.order)
            } else {
                format!("z({})^{}", self.order, k)
            };
            let term = if c.is_one() {
                power
            } else if (-c).is_one() {
                format!("-{power}")
            } else {
                format!("{}*{}", fmt_rational(c), power)
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FromStr for Cyclotomic {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let mut acc = Cyclotomic::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (coeff_str, power_str) = match term.find("z(") {
                None => (term, None),
                Some(pos) => {
                    let coeff = term[..pos].trim_end_matches('*');
                    (coeff, Some(&term[pos..]))
                }
            };
            let coeff = match coeff_str {
                "" => Rational::one(),
                "-" => -Rational::one(),
                c => parse_rational(c).ok_or_else(bad)?,
            };
            let value = match power_str {
                None => Cyclotomic::from_rational(coeff),
                Some(p) => {
                    let close = p.find(')').ok_or_else(bad)?;
                    let order: u32 = p[2..close].parse().map_err(|_| bad())?;
                    if order == 0 {
                        return Err(bad());
                    }
                    let rest = &p[close + 1..];
                    let exp: i64 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    };
                    Cyclotomic::root_of_unity(order, exp).scale(&coeff)
                }
            };
            acc = acc + value;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = Cyclotomic::one() + z(3, 1) + z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn self_division_is_one() {
        assert!((&z(5, 1) / &z(5, 1)).is_one());
        assert_eq!(
            Cyclotomic::one().checked_div(&Cyclotomic::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(5, 1).conjugate(), z(5, 4));
        let q = Cyclotomic::from_rational(Rational::new(3.into(), 2.into()));
        assert_eq!(q.conjugate(), q);
        let x = z(7, 1) + Cyclotomic::from_int(2);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn mixed_orders_compare_by_value() {
        // ζ_6 = 1 + ζ_3 (since ζ_6 = -ζ_3^2 = 1 + ζ_3)
        let lhs = z(6, 1);
        let rhs = Cyclotomic::one() + z(3, 1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.embed(12).coeffs(), rhs.embed(12).coeffs());
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
    }

    #[test]
    fn norm_and_inverse() {
        let x = Cyclotomic::from_int(2) + z(5, 1);
        assert!((&x * &x.inverse().unwrap()).is_one());
        // N(1 - ζ_p) = p
        let y = Cyclotomic::one() - z(7, 1);
        assert_eq!(y.norm(), Rational::from_integer(7.into()));
    }

    #[test]
    fn display_and_parse() {
        let x = Cyclotomic::from_rational(Rational::new((-3).into(), 2.into()))
            + z(12, 1)
            + z(12, 3).scale(&Rational::from_integer((-2).into()));
        let s = x.to_string();
        assert_eq!(s, "-3/2 + z(12) + -2*z(12)^3");
        assert_eq!(s.parse::<Cyclotomic>().unwrap(), x);
        assert_eq!("0".parse::<Cyclotomic>().unwrap(), Cyclotomic::zero());
        assert_eq!("-z(3)^2".parse::<Cyclotomic>().unwrap(), -z(3, 2));
        assert!("z(0)".parse::<Cyclotomic>().is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = Cyclotomic::one() + z(5, 2);
        let mut acc = Cyclotomic::one();
        for _ in 0..7 {
            acc = &acc * &x;
        }
        assert_eq!(x.pow(7), acc);
        assert_eq!(z(12, 1).pow(12), Cyclotomic::one());
    }
}
