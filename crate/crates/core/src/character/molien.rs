//! Molien series, invariant degrees and the per-class series that feed fake degrees.

use crate::arith::poly::series;
use crate::arith::{Cyclotomic, Rational};
use crate::error::GroupError;
use crate::group::ReflectionGroup;

/// Coefficients of `det(1 − t·g)` for the representative of class `k`.
pub(crate) fn det_one_minus(group: &ReflectionGroup, k: usize) -> Vec<Cyclotomic> {
    let rep = group.classes().representative(k);
    let cp = group.matrix(rep).charpoly();
    let n = group.rank();
    (0..=n).map(|j| cp.coeff(n - j)).collect()
}

/// `(1/|W|) Σ_w det(1 − t·w)^{-1}` truncated to `len` terms.
pub fn molien_series(group: &ReflectionGroup, len: usize) -> Vec<Rational> {
    let mut total = vec![Cyclotomic::zero(); len];
    for k in 0..group.num_classes() {
        let inv = series::inverse_unit(&det_one_minus(group, k), len);
        let weight = Cyclotomic::from_int(group.classes().size(k) as i64);
        for (t, x) in total.iter_mut().zip(inv) {
            *t = &*t + &(&weight * &x);
        }
    }
    let scale = Rational::new(1.into(), group.order().into());
    total
        .into_iter()
        .map(|c| {
            c.to_rational()
                .expect("Molien coefficients are rational")
                * &scale
        })
        .collect()
}

/// Degrees by deflating the Molien series: the lowest surviving exponent is
/// the next degree, with multiplicity equal to its coefficient.
pub fn molien_degrees(group: &ReflectionGroup) -> Result<Vec<u64>, GroupError> {
    let n = group.rank();
    let len = group.order() as usize + 1;
    let mut f: Vec<Cyclotomic> = molien_series(group, len)
        .into_iter()
        .map(Cyclotomic::from_rational)
        .collect();
    let fail = |msg: String| GroupError::NotAReflectionGroup(msg);
    let mut degrees = Vec::new();
    while degrees.len() < n {
        let Some(k) = (1..len).find(|&k| !f[k].is_zero()) else {
            return Err(fail(format!("Molien series deflated after {degrees:?}")));
        };
        let mult = f[k]
            .to_integer()
            .and_then(|m| u64::try_from(m).ok())
            .filter(|&m| m > 0)
            .ok_or_else(|| fail(format!("coefficient of t^{k} is {}", f[k])))?;
        for _ in 0..mult {
            degrees.push(k as u64);
            series::mul_one_minus_power(&mut f, k);
        }
    }
    if degrees.len() != n || !f[0].is_one() || f[1..].iter().any(|c| !c.is_zero()) {
        return Err(fail(format!(
            "Molien series is not Π(1 − t^d)^(-1) for degrees {degrees:?}"
        )));
    }
    Ok(degrees)
}

/// `Π_i (1 − t^{d_i}) / det(1 − t·g_k)` for every class, truncated to `len` terms.
pub(crate) fn class_series(group: &ReflectionGroup, len: usize) -> Vec<Vec<Cyclotomic>> {
    (0..group.num_classes())
        .map(|k| {
            let mut s = series::inverse_unit(&det_one_minus(group, k), len);
            for &d in group.degrees() {
                series::mul_one_minus_power(&mut s, d as usize);
            }
            s
        })
        .collect()
}
