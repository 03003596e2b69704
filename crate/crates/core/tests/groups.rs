use coxfact_core::arith::Cyclotomic;
use coxfact_core::character::{
    char_invariants, chi_of_s, exterior_power, exterior_powers, fake_degree, inner_product,
    multiplicity_identities, power_traces, reflection_character, verify_lemma1, CharacterTable,
    Lemma1Outcome,
};
use coxfact_core::group::{GroupSpec, ReflectionGroup};

fn group(name: &str) -> ReflectionGroup {
    ReflectionGroup::build(GroupSpec::parse(name).unwrap()).unwrap()
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

#[test]
fn orders_and_reflections() {
    assert_eq!(group("A1").order(), 2);
    let a2 = group("A2");
    assert_eq!((a2.order(), a2.reflections().len()), (6, 3));
    assert_eq!(group("B2").reflections().len(), 4);
    // (de)^n n!/e with d = 1, e = 3, n = 3
    assert_eq!(group("G(3,3,3)").order(), 27 * 6 / 3);
}

#[test]
fn hyperplanes_and_fixators() {
    let g4 = group("ST4");
    assert_eq!(g4.reflections().len(), 8);
    assert_eq!(g4.hyperplanes().len(), 4);
    assert!(g4.hyperplanes().iter().all(|h| h.fixator_order == 3));
    let a2 = group("A2");
    assert_eq!(a2.hyperplanes().len(), 3);
    assert_eq!(a2.common_fixator_order(), Some(2));
    // G(4,1,2): coordinate hyperplanes have e_H = 4, the others 2
    let mixed = group("G(4,1,2)");
    assert_eq!(mixed.common_fixator_order(), None);
    let mut e: Vec<u32> = mixed.hyperplanes().iter().map(|h| h.fixator_order).collect();
    e.sort_unstable();
    assert_eq!(e, vec![2, 2, 2, 2, 4, 4]);
}

#[test]
fn coxeter_elements() {
    let a2 = group("A2");
    assert_eq!(a2.element_order(a2.coxeter()), 3);
    let b2 = group("B2");
    assert_eq!(b2.element_order(b2.coxeter()), 4);
    let g4 = group("ST4");
    assert_eq!(g4.element_order(g4.coxeter()), 6);
    assert_eq!(g4.coxeter_number(), 6);
}

#[test]
fn conjugacy_classes() {
    assert_eq!(group("A1").classes().sizes(), vec![1, 1]);
    assert_eq!(sorted(group("A2").classes().sizes()), vec![1, 2, 3]);
    assert_eq!(group("B2").num_classes(), 5);
}

#[test]
fn invariant_degrees() {
    assert_eq!(group("A2").degrees(), &[2, 3]);
    assert_eq!(group("B2").degrees(), &[2, 4]);
    assert_eq!(group("ST4").degrees(), &[4, 6]);
    assert_eq!(group("H3").degrees(), &[2, 6, 10]);
    assert_eq!(group("D4").degrees(), &[2, 4, 4, 6]);
}

#[test]
fn character_tables() {
    let a1 = CharacterTable::compute(&group("A1")).unwrap();
    let values: Vec<Vec<Cyclotomic>> = a1.rows.iter().map(|r| r.values.clone()).collect();
    assert_eq!(
        values,
        vec![
            vec![Cyclotomic::one(), Cyclotomic::one()],
            vec![Cyclotomic::one(), Cyclotomic::from_int(-1)],
        ]
    );
    assert_eq!(sorted(CharacterTable::compute(&group("A2")).unwrap().degrees), vec![1, 1, 2]);
    assert_eq!(sorted(CharacterTable::compute(&group("B2")).unwrap().degrees), vec![1, 1, 1, 1, 2]);
}

#[test]
fn reflection_character_values() {
    let a2 = group("A2");
    let chi = reflection_character(&a2);
    assert_eq!(chi.values[0], Cyclotomic::from_int(2));
    let r = a2.reflections()[0];
    assert!(chi.values[a2.class_of(r)].is_zero());

    let g4 = group("ST4");
    let chi = reflection_character(&g4);
    let at_c = &chi.values[g4.class_of(g4.coxeter())];
    let expected = Cyclotomic::root_of_unity(6, 3) + Cyclotomic::root_of_unity(6, 5);
    assert_eq!(at_c, &expected);
}

#[test]
fn exterior_powers_and_steinberg() {
    let a2 = group("A2");
    let w = exterior_powers(&a2);
    assert!(w[0].values.iter().all(Cyclotomic::is_one));
    // ∧^2 is the determinant, here the sign character
    let r = a2.reflections()[0];
    assert_eq!(w[2].values[a2.class_of(r)], Cyclotomic::from_int(-1));

    let a3 = group("A3");
    let traces = power_traces(&a3, 3);
    let sizes = a3.classes().sizes();
    for i in 1..=3 {
        let e = exterior_power(&traces, i);
        assert!(inner_product(&e, &e, &sizes, a3.order()).is_one(), "i = {i}");
    }
}

#[test]
fn central_element_values() {
    let a2 = group("A2");
    let t = CharacterTable::compute(&a2).unwrap();
    let trivial = &t.rows[0];
    assert_eq!(chi_of_s(trivial, &a2), Cyclotomic::from_int(3));
    let sign = t.rows.iter().find(|r| r.degree().is_one() && r != &trivial).unwrap();
    assert_eq!(chi_of_s(sign, &a2), Cyclotomic::from_int(-3));
    assert!(chi_of_s(&reflection_character(&a2), &a2).is_zero());
}

#[test]
fn fake_degrees_a2() {
    let a2 = group("A2");
    let t = CharacterTable::compute(&a2).unwrap();
    let sign = t.rows.iter().skip(1).find(|r| r.degree().is_one()).unwrap();
    assert_eq!(fake_degree(&t.rows[0], &a2).unwrap().to_string(), "1");
    let refl = fake_degree(&reflection_character(&a2), &a2).unwrap();
    assert_eq!(refl.nonnegative_integer_coeffs(), Some(vec![0, 1, 1]));
    let sgn = fake_degree(sign, &a2).unwrap();
    assert_eq!(sgn.nonnegative_integer_coeffs(), Some(vec![0, 0, 0, 1]));
}

#[test]
fn lemma1_on_constant_e_groups() {
    for name in ["A2", "ST4", "B2", "H3"] {
        let g = group(name);
        let t = CharacterTable::compute(&g).unwrap();
        let inv = char_invariants(&g, &t).unwrap();
        match verify_lemma1(&g, &t, &inv) {
            Lemma1Outcome::Checked { entries, .. } => {
                assert!(entries.iter().all(|e| e.holds), "{name}: {entries:?}")
            }
            other => panic!("{name}: {other:?}"),
        }
        for i in 0..t.rows.len() {
            let m = multiplicity_identities(&g, &t, &inv, i).unwrap();
            assert!(m.nontrivial_holds && m.trivial_holds, "{name}: {m:?}");
        }
    }
}

#[test]
fn lemma1_a2_reflection_character() {
    let a2 = group("A2");
    let t = CharacterTable::compute(&a2).unwrap();
    let inv = char_invariants(&a2, &t).unwrap();
    let k = t.find_row(&reflection_character(&a2)).unwrap();
    // 0 = 3·2 − 3 − 3
    assert_eq!((inv[k].n, inv[k].n_conj), (3, 3));
    assert!(inv[k].chi_s.is_zero());
    let m = multiplicity_identities(&a2, &t, &inv, k).unwrap();
    assert_eq!(m.nontrivial_sum, "3");
    assert_eq!(m.nontrivial_expected, "3");
    // trivial character: no nontrivial eigenvalues anywhere
    assert_eq!(multiplicity_identities(&a2, &t, &inv, 0).unwrap().nontrivial_sum, "0");
}

#[test]
fn lemma1_not_applicable_for_mixed_fixators() {
    let g = group("G(4,1,2)");
    let t = CharacterTable::compute(&g).unwrap();
    let inv = char_invariants(&g, &t).unwrap();
    assert!(matches!(verify_lemma1(&g, &t, &inv), Lemma1Outcome::NotApplicable { .. }));
    assert!(multiplicity_identities(&g, &t, &inv, 0).is_none());
}
