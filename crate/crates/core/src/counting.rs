//! `N_l`, the number of ways to write the Coxeter element as a product of `l`
//! reflections, computed five ways:
//!
//! - `dp`: walk counting on the group, `v_{k+1}(g) = Σ_{r∈R} v_k(g r⁻¹)`;
//! - `spectral`: `|W| N_l = Σ_χ χ(1) (χ(S)/χ(1))^l χ(c⁻¹)` over all irreducibles;
//! - `exterior`: the same sum restricted to `∧^i Ref` with signs `(−1)^i`;
//! - `closed`: `|W| N_l = Σ_i (−1)^i C(n,i) (|R|(1 − i/n) − |R*| i/n)^l`;
//! - `egf`: coefficients of `(1/|W|)(e^{t|R|/n} − e^{−t|R*|/n})^n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, int, Cyclotomic, Egf, Rational};
use crate::character::{chi_of_s, CharacterTable, ClassFunction};
use crate::error::CountError;
use crate::group::ReflectionGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dp,
    Spectral,
    Exterior,
    Closed,
    Egf,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Dp,
        Method::Spectral,
        Method::Exterior,
        Method::Closed,
        Method::Egf,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Dp => "dp",
            Method::Spectral => "spectral",
            Method::Exterior => "exterior",
            Method::Closed => "closed",
            Method::Egf => "egf",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// Serializes big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub group: String,
    pub max_l: usize,
    pub method: Method,
    /// `N_0, …, N_L`
    #[serde(with = "decimal")]
    pub counts: Vec<BigUint>,
}

/// Default length bound `n + 6`.
pub fn default_max_l(group: &ReflectionGroup) -> usize {
    group.rank() + 6
}

#[derive(Clone, Copy, Debug)]
pub struct DpConfig {
    /// Bound on the number of index-table cells (`|W|·|R|`) plus vector cells.
    pub max_cells: u128,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            max_cells: 200_000_000,
        }
    }
}

/// Walk counting over the group elements.
pub fn count_dp(group: &ReflectionGroup, max_l: usize, config: DpConfig) -> Result<CountReport, CountError> {
    let order = group.len();
    let refl = group.reflections();
    let cells = order as u128 * refl.len() as u128 + 2 * order as u128;
    if cells > config.max_cells {
        return Err(CountError::MemoryGuard {
            cells,
            limit: config.max_cells,
        });
    }
    // maps g ↦ g·r⁻¹
    let tables: Vec<Vec<usize>> = refl
        .iter()
        .map(|&r| group.right_multiplication(group.inverse(r)))
        .collect();
    let c = group.coxeter();
    let mut v = vec![BigUint::zero(); order];
    v[group.identity()] = BigUint::from(1u32);
    let mut counts = vec![v[c].clone()];
    for _ in 0..max_l {
        let mut next = vec![BigUint::zero(); order];
        for (g, slot) in next.iter_mut().enumerate() {
            for t in &tables {
                let src = &v[t[g]];
                if !src.is_zero() {
                    *slot += src;
                }
            }
        }
        v = next;
        counts.push(v[c].clone());
    }
    Ok(CountReport {
        group: group.name(),
        max_l,
        method: Method::Dp,
        counts,
    })
}

fn divide_by_order(method: Method, l: usize, total: &Cyclotomic, order: u64) -> Result<BigUint, CountError> {
    let remainder = |value: String| CountError::Remainder {
        method: method.to_string(),
        l,
        value,
        order,
    };
    let q = total.to_rational().ok_or_else(|| remainder(total.to_string()))?;
    divide_rational(method, l, &q, order).map_err(|_| remainder(total.to_string()))
}

fn divide_rational(method: Method, l: usize, total: &Rational, order: u64) -> Result<BigUint, CountError> {
    let bad = || CountError::Remainder {
        method: method.to_string(),
        l,
        value: if total.is_integer() {
            total.numer().to_string()
        } else {
            format!("{}/{}", total.numer(), total.denom())
        },
        order,
    };
    if !total.is_integer() {
        return Err(bad());
    }
    let n = total.to_integer();
    let q = crate::arith::checked_exact_div(&n, &BigInt::from(order)).ok_or_else(bad)?;
    if q.is_negative() {
        return Err(bad());
    }
    Ok(q.to_biguint().unwrap())
}

/// `Σ_χ χ(S^l) χ(c⁻¹)` with `χ(S^l) = χ(1) (χ(S)/χ(1))^l`.
pub fn spectral_sum(group: &ReflectionGroup, table: &CharacterTable, l: usize) -> Cyclotomic {
    let c_inv_class = group.class_of(group.inverse(group.coxeter()));
    table
        .rows
        .iter()
        .map(|row| central_power_value(group, row, l) * &row.values[c_inv_class])
        .sum()
}

/// `χ(S^l)` for an irreducible (so that `S` acts as the scalar `χ(S)/χ(1)`).
pub fn central_power_value(group: &ReflectionGroup, chi: &ClassFunction, l: usize) -> Cyclotomic {
    let degree = chi.degree().clone();
    let ratio = chi_of_s(chi, group) / degree.clone();
    let mut acc = degree;
    for _ in 0..l {
        acc = &acc * &ratio;
    }
    acc
}

pub fn count_spectral(group: &ReflectionGroup, table: &CharacterTable, max_l: usize) -> Result<CountReport, CountError> {
    let counts = (0..=max_l)
        .map(|l| {
            let total = spectral_sum(group, table, l);
            divide_by_order(Method::Spectral, l, &total, group.order()).map_err(|e| {
                CountError::SpectralInconsistency {
                    l,
                    detail: e.to_string(),
                }
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(CountReport {
        group: group.name(),
        max_l,
        method: Method::Spectral,
        counts,
    })
}

/// `Σ_{i=0}^{n} (−1)^i ∧^iRef(S^l)`.
pub fn exterior_sum(group: &ReflectionGroup, wedges: &[ClassFunction], l: usize) -> Cyclotomic {
    wedges
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let v = central_power_value(group, w, l);
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

pub fn count_exterior(group: &ReflectionGroup, wedges: &[ClassFunction], max_l: usize) -> Result<CountReport, CountError> {
    let counts = (0..=max_l)
        .map(|l| divide_by_order(Method::Exterior, l, &exterior_sum(group, wedges, l), group.order()))
        .collect::<Result<_, _>>()?;
    Ok(CountReport {
        group: group.name(),
        max_l,
        method: Method::Exterior,
        counts,
    })
}

/// `∧^iRef(S) = |R|(C(n,i) − C(n−1,i−1)) − |R*| C(n−1,i−1)`.
pub fn wedge_s_closed(n: usize, reflections: u64, hyperplanes: u64, i: usize) -> BigInt {
    let (n, i) = (n as i64, i as i64);
    let lower = binomial(n - 1, i - 1);
    BigInt::from(reflections) * (binomial(n, i) - &lower) - BigInt::from(hyperplanes) * lower
}

/// `|R|(1 − i/n) − |R*| i/n`, the scalar by which `S` acts on `∧^iRef`.
pub fn wedge_ratio_closed(n: usize, reflections: u64, hyperplanes: u64, i: usize) -> Rational {
    let frac = Rational::new(BigInt::from(i), BigInt::from(n));
    int(reflections as i64) * (int(1) - &frac) - int(hyperplanes as i64) * frac
}

pub fn count_closed(
    group_name: &str,
    n: usize,
    reflections: u64,
    hyperplanes: u64,
    order: u64,
    max_l: usize,
) -> Result<CountReport, CountError> {
    let bases: Vec<Rational> = (0..=n)
        .map(|i| wedge_ratio_closed(n, reflections, hyperplanes, i))
        .collect();
    let counts = (0..=max_l)
        .map(|l| {
            let total = bases
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, base)| {
                    let mut term = Rational::from_integer(binomial(n as i64, i as i64));
                    for _ in 0..l {
                        term *= base;
                    }
                    if i % 2 == 0 {
                        acc + term
                    } else {
                        acc - term
                    }
                });
            divide_rational(Method::Closed, l, &total, order)
        })
        .collect::<Result<_, _>>()?;
    Ok(CountReport {
        group: group_name.to_string(),
        max_l,
        method: Method::Closed,
        counts,
    })
}

/// The generating series `(1/|W|)(e^{t|R|/n} − e^{−t|R*|/n})^n` by truncated
/// series multiplication.
pub fn chapuy_stump_series(n: usize, reflections: u64, hyperplanes: u64, order: u64, max_l: usize) -> Egf {
    let nr = int(n as i64);
    let a = Egf::exp(&(int(reflections as i64) / &nr), max_l);
    let b = Egf::exp(&(-int(hyperplanes as i64) / &nr), max_l);
    (&a - &b)
        .pow(n as u32)
        .scale(&Rational::new(BigInt::from(1), BigInt::from(order)))
}

pub fn count_egf(
    group_name: &str,
    n: usize,
    reflections: u64,
    hyperplanes: u64,
    order: u64,
    max_l: usize,
) -> Result<CountReport, CountError> {
    let series = chapuy_stump_series(n, reflections, hyperplanes, order, max_l);
    let counts = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(l, c)| divide_rational(Method::Egf, l, &(c * int(order as i64)), order))
        .collect::<Result<_, _>>()?;
    Ok(CountReport {
        group: group_name.to_string(),
        max_l,
        method: Method::Egf,
        counts,
    })
}

/// Runs one method, computing whatever prerequisites it needs.
pub fn count_with(
    group: &ReflectionGroup,
    table: Option<&CharacterTable>,
    method: Method,
    max_l: usize,
) -> crate::Result<CountReport> {
    let n = group.rank();
    let r = group.reflections().len() as u64;
    let rs = group.hyperplanes().len() as u64;
    let name = group.name();
    Ok(match method {
        Method::Dp => count_dp(group, max_l, DpConfig::default())?,
        Method::Spectral => {
            let owned;
            let table = match table {
                Some(t) => t,
                None => {
                    owned = CharacterTable::compute(group)?;
                    &owned
                }
            };
            count_spectral(group, table, max_l)?
        }
        Method::Exterior => {
            count_exterior(group, &crate::character::exterior_powers(group), max_l)?
        }
        Method::Closed => count_closed(&name, n, r, rs, group.order(), max_l)?,
        Method::Egf => count_egf(&name, n, r, rs, group.order(), max_l)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodFailure {
    pub method: Method,
    pub error: String,
    /// The failure is a resource guard rather than a wrong answer.
    #[serde(default)]
    pub resource_guard: bool,
}

/// Several methods run side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSummary {
    pub reports: Vec<CountReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<MethodFailure>,
    /// Whether all methods succeeded and agree; absent for a single method.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

impl CountSummary {
    pub fn hit_resource_guard(&self) -> bool {
        self.failures.iter().any(|f| f.resource_guard)
    }
}

/// Runs `methods` in order, building the character table at most once.
pub fn count_methods(
    group: &ReflectionGroup,
    methods: &[Method],
    max_l: usize,
    dp: DpConfig,
) -> CountSummary {
    let mut table: Option<Result<CharacterTable, crate::Error>> = None;
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for &method in methods {
        let result = match method {
            Method::Dp => count_dp(group, max_l, dp).map_err(crate::Error::from),
            Method::Spectral => {
                let t = table.get_or_insert_with(|| CharacterTable::compute(group).map_err(Into::into));
                match t {
                    Ok(t) => count_spectral(group, t, max_l).map_err(Into::into),
                    Err(e) => Err(e.clone()),
                }
            }
            other => count_with(group, None, other, max_l),
        };
        match result {
            Ok(r) => reports.push(r),
            Err(e) => failures.push(MethodFailure {
                method,
                resource_guard: matches!(e, crate::Error::Count(CountError::MemoryGuard { .. })),
                error: e.to_string(),
            }),
        }
    }
    let agreement = (methods.len() > 1).then(|| {
        failures.is_empty() && reports.windows(2).all(|w| w[0].counts == w[1].counts)
    });
    CountSummary {
        reports,
        failures,
        agreement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn group(name: &str) -> ReflectionGroup {
        ReflectionGroup::build(GroupSpec::parse(name).unwrap()).unwrap()
    }

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn dp_small_cases() {
        let a1 = count_dp(&group("A1"), 3, DpConfig::default()).unwrap();
        assert_eq!(a1.counts, nums(&[0, 1, 0, 1]));
        let a2 = count_dp(&group("A2"), 2, DpConfig::default()).unwrap();
        assert_eq!(a2.counts[2], BigUint::from(3u32));
        let a3 = count_dp(&group("A3"), 3, DpConfig::default()).unwrap();
        assert_eq!(a3.counts[3], BigUint::from(16u32));
    }

    #[test]
    fn dp_guard() {
        let err = count_dp(&group("B3"), 2, DpConfig { max_cells: 10 }).unwrap_err();
        assert!(matches!(err, CountError::MemoryGuard { .. }));
    }

    #[test]
    fn closed_form_examples() {
        // A3, l = 3: (216 − 24 − 24 + 216)/24
        let a3 = count_closed("A3", 3, 6, 6, 24, 3).unwrap();
        assert_eq!(a3.counts[3], BigUint::from(16u32));
        // G4, l = 2: (64 − 8 + 16)/24
        let g4 = count_closed("ST4", 2, 8, 4, 24, 2).unwrap();
        assert_eq!(g4.counts[2], BigUint::from(3u32));
        let b2 = count_closed("B2", 2, 4, 4, 8, 4).unwrap();
        assert_eq!(b2.counts[4], BigUint::from(64u32));
        let a1 = count_closed("A1", 1, 1, 1, 2, 4).unwrap();
        assert_eq!(a1.counts, nums(&[0, 1, 0, 1, 0]));
    }

    #[test]
    fn closed_form_remainder_is_an_error() {
        // n = 2, |R| = |R*| = 6, |W| = 16 gives 72/16 at l = 2
        let err = count_closed("G(4,2,2)", 2, 6, 6, 16, 2).unwrap_err();
        assert!(matches!(err, CountError::Remainder { l: 2, .. }));
    }

    #[test]
    fn wedge_closed_values() {
        assert_eq!(wedge_s_closed(2, 3, 3, 0), BigInt::from(3));
        assert_eq!(wedge_s_closed(2, 3, 3, 1), BigInt::from(0));
        assert_eq!(wedge_s_closed(2, 8, 4, 1), BigInt::from(4));
        assert_eq!(wedge_ratio_closed(2, 8, 4, 1), int(2));
    }

    #[test]
    fn egf_examples() {
        let a1 = count_egf("A1", 1, 1, 1, 2, 5).unwrap();
        assert_eq!(a1.counts, nums(&[0, 1, 0, 1, 0, 1]));
        assert_eq!(count_egf("A2", 2, 3, 3, 6, 2).unwrap().counts[2], BigUint::from(3u32));
        assert_eq!(count_egf("G2", 2, 6, 6, 12, 2).unwrap().counts[2], BigUint::from(6u32));
    }

    #[test]
    fn report_json_uses_decimal_strings() {
        let r = CountReport {
            group: "A1".into(),
            max_l: 1,
            method: Method::Closed,
            counts: nums(&[0, 1]),
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"group":"A1","max_l":1,"method":"closed","counts":["0","1"]}"#);
        assert_eq!(serde_json::from_str::<CountReport>(&s).unwrap(), r);
    }
}
