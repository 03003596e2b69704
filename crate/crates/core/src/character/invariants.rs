//! Reflection character, its exterior powers, fake degrees, `N(χ)`, `χ(S)`
//! and the hyperplane multiplicity identities.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::molien;
use super::table::{CharacterTable, ClassFunction};
use crate::arith::{int, Cyclotomic, Rational, UniPoly};
use crate::error::CharacterError;
use crate::group::ReflectionGroup;

/// `Ref`: trace of the defining representation on each class.
pub fn reflection_character(group: &ReflectionGroup) -> ClassFunction {
    ClassFunction::new(
        (0..group.num_classes())
            .map(|k| group.matrix(group.classes().representative(k)).trace())
            .collect(),
    )
}

/// `traces[k][j − 1] = Ref(g_k^j)` for `1 <= j <= max_power`.
pub fn power_traces(group: &ReflectionGroup, max_power: usize) -> Vec<Vec<Cyclotomic>> {
    let refl = reflection_character(group);
    let e = group.exponent() as usize;
    group
        .classes()
        .power_map
        .iter()
        .map(|pm| (1..=max_power).map(|j| refl.values[pm[j % e]].clone()).collect())
        .collect()
}

/// `∧^i Ref` from power sums of eigenvalues by Newton's identities:
/// `k e_k = Σ_{j=1}^{k} (−1)^{j−1} e_{k−j} p_j`.
pub fn exterior_power(power_traces: &[Vec<Cyclotomic>], i: usize) -> ClassFunction {
    ClassFunction::new(
        power_traces
            .iter()
            .map(|p| {
                let mut e = vec![Cyclotomic::one()];
                for k in 1..=i {
                    let mut acc = Cyclotomic::zero();
                    for j in 1..=k {
                        let term = &e[k - j] * &p[j - 1];
                        acc = if j % 2 == 1 { acc + term } else { acc - term };
                    }
                    e.push(acc.scale(&int(k as i64).recip()));
                }
                e.pop().unwrap()
            })
            .collect(),
    )
}

/// `∧^0 Ref, …, ∧^n Ref`.
pub fn exterior_powers(group: &ReflectionGroup) -> Vec<ClassFunction> {
    let n = group.rank();
    let traces = power_traces(group, n);
    (0..=n).map(|i| exterior_power(&traces, i)).collect()
}

/// Number of reflections in each class.
pub fn reflections_per_class(group: &ReflectionGroup) -> Vec<u64> {
    let mut counts = vec![0u64; group.num_classes()];
    for &r in group.reflections() {
        counts[group.class_of(r)] += 1;
    }
    counts
}

/// `χ(S)` for `S = Σ_{r ∈ R} r`.
pub fn chi_of_s(chi: &ClassFunction, group: &ReflectionGroup) -> Cyclotomic {
    reflections_per_class(group)
        .into_iter()
        .zip(&chi.values)
        .filter(|(c, _)| *c > 0)
        .map(|(c, v)| v.scale(&int(c as i64)))
        .sum()
}

/// Per-class series `Π(1 − q^{d_i}) / det(1 − q·g)`, shared by all fake degrees.
pub struct FakeDegreeContext {
    series: Vec<Vec<Cyclotomic>>,
    sizes: Vec<u64>,
    order: u64,
    /// Degree above the top of the coinvariant algebra, checked to vanish.
    guard_degree: usize,
}

impl FakeDegreeContext {
    pub fn new(group: &ReflectionGroup) -> Self {
        let top: u64 = group.degrees().iter().map(|d| d - 1).sum();
        let guard_degree = top as usize + 1;
        FakeDegreeContext {
            series: molien::class_series(group, guard_degree + 1),
            sizes: group.classes().sizes(),
            order: group.order(),
            guard_degree,
        }
    }

    /// Graded multiplicity `Π(1 − q^{d_i}) · (1/|W|) Σ_w conj(χ(w)) / det(1 − q·w)`.
    pub fn fake_degree(&self, chi: &ClassFunction, index: usize) -> Result<UniPoly, CharacterError> {
        let len = self.guard_degree + 1;
        let mut acc = vec![Cyclotomic::zero(); len];
        for ((s, v), &size) in self.series.iter().zip(&chi.values).zip(&self.sizes) {
            let w = v.conjugate().scale(&int(size as i64));
            for (a, x) in acc.iter_mut().zip(s) {
                if !x.is_zero() {
                    *a = &*a + &(&w * x);
                }
            }
        }
        let scale = Rational::new(BigInt::one(), BigInt::from(self.order));
        let coeffs: Vec<Cyclotomic> = acc.into_iter().map(|c| c.scale(&scale)).collect();
        if !coeffs[self.guard_degree].is_zero() {
            return Err(CharacterError::ConventionViolated {
                index,
                detail: format!(
                    "series does not terminate: coefficient of q^{} is {}",
                    self.guard_degree, coeffs[self.guard_degree]
                ),
            });
        }
        let poly = UniPoly::new(coeffs);
        if poly.nonnegative_integer_coeffs().is_none() {
            return Err(CharacterError::ConventionViolated {
                index,
                detail: format!("coefficients are not nonnegative integers: {poly}"),
            });
        }
        Ok(poly)
    }
}

/// Fake degree of a single character.
pub fn fake_degree(chi: &ClassFunction, group: &ReflectionGroup) -> Result<UniPoly, CharacterError> {
    FakeDegreeContext::new(group).fake_degree(chi, 0)
}

/// `N = Σ e_i` for a fake degree `Σ q^{e_i}`, i.e. its derivative at 1.
pub fn exponent_sum(fake: &UniPoly) -> u64 {
    fake.nonnegative_integer_coeffs()
        .unwrap_or_default()
        .iter()
        .enumerate()
        .map(|(k, &c)| k as u64 * c)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharInvariants {
    pub fake_degree: UniPoly,
    /// Exponents `e_i` of the fake degree, with multiplicity.
    pub exponents: Vec<u64>,
    /// `N(χ)`
    pub n: u64,
    /// `N(χ*)`
    pub n_conj: u64,
    /// Row index of `χ*`.
    pub conj_index: usize,
    /// `χ(S)`
    pub chi_s: Cyclotomic,
}

/// Invariants for every row of the table.
pub fn char_invariants(
    group: &ReflectionGroup,
    table: &CharacterTable,
) -> Result<Vec<CharInvariants>, CharacterError> {
    let ctx = FakeDegreeContext::new(group);
    let fakes: Vec<UniPoly> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| ctx.fake_degree(r, i))
        .collect::<Result<_, _>>()?;
    let ns: Vec<u64> = fakes.iter().map(exponent_sum).collect();
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let conj_index = table.conjugate_index(i).ok_or_else(|| {
                CharacterError::ConventionViolated {
                    index: i,
                    detail: "complex conjugate row missing from table".into(),
                }
            })?;
            let exponents = fakes[i]
                .nonnegative_integer_coeffs()
                .unwrap_or_default()
                .iter()
                .enumerate()
                .flat_map(|(k, &c)| std::iter::repeat_n(k as u64, c as usize))
                .collect();
            Ok(CharInvariants {
                fake_degree: fakes[i].clone(),
                exponents,
                n: ns[i],
                n_conj: ns[conj_index],
                conj_index,
                chi_s: chi_of_s(row, group),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Entry {
    pub index: usize,
    pub chi_s: String,
    /// `|R|χ(1) − N(χ) − N(χ*)`
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lemma1Outcome {
    /// The fixator orders `e_H` are not all equal.
    NotApplicable { fixator_orders: Vec<u32> },
    Checked { e: u32, entries: Vec<Lemma1Entry> },
}

/// `χ(S) = |R|χ(1) − N(χ) − N(χ*)` for every irreducible, when `e_H` is constant.
pub fn verify_lemma1(
    group: &ReflectionGroup,
    table: &CharacterTable,
    invariants: &[CharInvariants],
) -> Lemma1Outcome {
    let Some(e) = group.common_fixator_order() else {
        let mut fixator_orders: Vec<u32> =
            group.hyperplanes().iter().map(|h| h.fixator_order).collect();
        fixator_orders.sort_unstable();
        fixator_orders.dedup();
        return Lemma1Outcome::NotApplicable { fixator_orders };
    };
    let r = group.reflections().len() as i64;
    let entries = invariants
        .iter()
        .enumerate()
        .map(|(i, inv)| {
            let rhs = r * table.degrees[i] as i64 - inv.n as i64 - inv.n_conj as i64;
            let rhs = Cyclotomic::from_int(rhs);
            Lemma1Entry {
                index: i,
                holds: inv.chi_s == rhs,
                chi_s: inv.chi_s.to_string(),
                rhs: rhs.to_string(),
            }
        })
        .collect();
    Lemma1Outcome::Checked { e, entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityCheck {
    pub index: usize,
    /// `Σ_H Σ_{i=1}^{e−1} m_{H,i}(χ)`
    pub nontrivial_sum: String,
    /// `(N(χ) + N(χ*)) / e`
    pub nontrivial_expected: String,
    /// `Σ_H m_{H,0}(χ)`
    pub trivial_sum: String,
    /// `|R|χ(1)/(e − 1) − (N(χ) + N(χ*)) / e`
    pub trivial_expected: String,
    pub nontrivial_holds: bool,
    pub trivial_holds: bool,
}

/// Eigenvalue multiplicities `m_{H,i}(χ)` of `s_H` for each hyperplane, by
/// inverse discrete Fourier transform over `Z/e_H`.
pub fn hyperplane_multiplicities(group: &ReflectionGroup, chi: &ClassFunction) -> Vec<Vec<Cyclotomic>> {
    group
        .hyperplanes()
        .iter()
        .map(|h| {
            let e = h.fixator_order;
            let values: Vec<&Cyclotomic> = (0..e as u64)
                .map(|j| &chi.values[group.class_of(group.pow(h.generator, j))])
                .collect();
            let inv_e = Rational::new(BigInt::one(), BigInt::from(e));
            (0..e as i64)
                .map(|i| {
                    let s: Cyclotomic = values
                        .iter()
                        .enumerate()
                        .map(|(j, v)| *v * &Cyclotomic::root_of_unity(e, -i * j as i64))
                        .sum();
                    s.scale(&inv_e)
                })
                .collect()
        })
        .collect()
}

/// Both multiplicity identities for row `index`; `None` unless `e_H` is constant.
pub fn multiplicity_identities(
    group: &ReflectionGroup,
    table: &CharacterTable,
    invariants: &[CharInvariants],
    index: usize,
) -> Option<MultiplicityCheck> {
    let e = group.common_fixator_order()?;
    let mults = hyperplane_multiplicities(group, &table.rows[index]);
    let mut nontrivial = Cyclotomic::zero();
    let mut trivial = Cyclotomic::zero();
    for m in &mults {
        trivial = trivial + &m[0];
        for x in &m[1..] {
            nontrivial = nontrivial + x;
        }
    }
    let inv = &invariants[index];
    let n_sum = Rational::from_integer(BigInt::from(inv.n + inv.n_conj));
    let e_r = int(e as i64);
    let nontrivial_expected = &n_sum / &e_r;
    let r = int(group.reflections().len() as i64);
    let trivial_expected =
        r * int(table.degrees[index] as i64) / (&e_r - int(1)) - &nontrivial_expected;
    let nontrivial_expected = Cyclotomic::from_rational(nontrivial_expected);
    let trivial_expected = Cyclotomic::from_rational(trivial_expected);
    Some(MultiplicityCheck {
        index,
        nontrivial_holds: nontrivial == nontrivial_expected,
        trivial_holds: trivial == trivial_expected,
        nontrivial_sum: nontrivial.to_string(),
        nontrivial_expected: nontrivial_expected.to_string(),
        trivial_sum: trivial.to_string(),
        trivial_expected: trivial_expected.to_string(),
    })
}

/// True when every `m_{H,i}(χ)` is a nonnegative integer.
pub fn multiplicities_are_natural(mults: &[Vec<Cyclotomic>]) -> bool {
    mults.iter().flatten().all(|m| {
        m.to_rational()
            .is_some_and(|q| q.is_integer() && q >= Rational::zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn setup(name: &str) -> (ReflectionGroup, CharacterTable) {
        let g = ReflectionGroup::build(GroupSpec::parse(name).unwrap()).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        (g, t)
    }

    #[test]
    fn reflection_character_values() {
        let (g, t) = setup("A2");
        let refl = reflection_character(&g);
        assert_eq!(refl.values[0], Cyclotomic::from_int(2));
        let transposition_class = g.class_of(g.reflections()[0]);
        assert!(refl.values[transposition_class].is_zero());
        assert!(chi_of_s(&refl, &g).is_zero());
        assert!(t.find_row(&refl).is_some());
    }

    #[test]
    fn g4_coxeter_trace() {
        let (g, _) = setup("ST4");
        let refl = reflection_character(&g);
        let expected = Cyclotomic::root_of_unity(6, 3) + Cyclotomic::root_of_unity(6, 5);
        assert_eq!(refl.values[g.class_of(g.coxeter())], expected);
    }

    #[test]
    fn exterior_extremes() {
        let (g, t) = setup("A2");
        let wedges = exterior_powers(&g);
        assert!(wedges[0].values.iter().all(Cyclotomic::is_one));
        // top power is the determinant, here the sign character
        let det = ClassFunction::new(
            (0..g.num_classes())
                .map(|k| g.matrix(g.classes().representative(k)).det())
                .collect(),
        );
        assert_eq!(wedges[2], det);
        assert_eq!(chi_of_s(&wedges[2], &g), Cyclotomic::from_int(-3));
        assert!(t.find_row(&wedges[2]).is_some());
    }

    #[test]
    fn a2_fake_degrees() {
        let (g, t) = setup("A2");
        let inv = char_invariants(&g, &t).unwrap();
        let refl = t.find_row(&reflection_character(&g)).unwrap();
        let sign = t.find_row(&exterior_powers(&g)[2]).unwrap();
        assert_eq!(inv[0].fake_degree, UniPoly::one());
        assert_eq!(inv[refl].fake_degree, UniPoly::from_ints(&[0, 1, 1]));
        assert_eq!(inv[refl].n, 3);
        assert_eq!(inv[sign].fake_degree, UniPoly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn lemma1_on_a2_and_g4() {
        for name in ["A2", "ST4"] {
            let (g, t) = setup(name);
            let inv = char_invariants(&g, &t).unwrap();
            match verify_lemma1(&g, &t, &inv) {
                Lemma1Outcome::Checked { entries, .. } => assert!(entries.iter().all(|e| e.holds)),
                other => panic!("{name}: {other:?}"),
            }
            for i in 0..t.num_rows() {
                let m = multiplicity_identities(&g, &t, &inv, i).unwrap();
                assert!(m.nontrivial_holds && m.trivial_holds, "{name} {m:?}");
            }
        }
    }

    #[test]
    fn a2_reflection_multiplicities() {
        let (g, t) = setup("A2");
        let inv = char_invariants(&g, &t).unwrap();
        let refl = t.find_row(&reflection_character(&g)).unwrap();
        let m = multiplicity_identities(&g, &t, &inv, refl).unwrap();
        assert_eq!(m.nontrivial_sum, "3");
        assert_eq!(m.nontrivial_expected, "3");
    }

    #[test]
    fn lemma1_not_applicable_for_mixed_fixators() {
        let (g, t) = setup("G(4,1,2)");
        let inv = char_invariants(&g, &t).unwrap();
        assert_eq!(
            verify_lemma1(&g, &t, &inv),
            Lemma1Outcome::NotApplicable {
                fixator_orders: vec![2, 4]
            }
        );
        assert!(multiplicity_identities(&g, &t, &inv, 0).is_none());
    }
}
