use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use coxfact_core::character::{exterior_powers, CharacterTable};
use coxfact_core::counting::{
    count_closed, count_dp, count_egf, count_exterior, count_methods, count_spectral,
    wedge_s_closed, CountReport, DpConfig, Method,
};
use coxfact_core::group::{GroupSpec, ReflectionGroup};

fn group(name: &str) -> ReflectionGroup {
    ReflectionGroup::build(GroupSpec::parse(name).unwrap()).unwrap()
}

fn n(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn dp_examples() {
    let a1 = count_dp(&group("A1"), 3, DpConfig::default()).unwrap();
    assert_eq!(a1.counts[1..], [n(1), n(0), n(1)]);
    assert_eq!(count_dp(&group("A2"), 2, DpConfig::default()).unwrap().counts[2], n(3));
    // n^{n−2} minimal factorizations of a 4-cycle
    assert_eq!(count_dp(&group("A3"), 3, DpConfig::default()).unwrap().counts[3], n(16));
}

#[test]
fn spectral_examples() {
    for (name, l, want) in [("A2", 2, 3), ("B2", 2, 4), ("A2", 4, 27), ("G2", 2, 6)] {
        let g = group(name);
        let t = CharacterTable::compute(&g).unwrap();
        let r = count_spectral(&g, &t, l).unwrap();
        assert_eq!(r.counts[l], n(want), "{name} l = {l}");
        // c ≠ 1, so the empty product never counts
        assert_eq!(r.counts[0], n(0));
    }
    let a1 = group("A1");
    let t = CharacterTable::compute(&a1).unwrap();
    let r = count_spectral(&a1, &t, 8).unwrap();
    assert!(r.counts.iter().step_by(2).all(|c| *c == n(0)));
}

#[test]
fn wedge_closed_examples() {
    assert_eq!(wedge_s_closed(2, 3, 3, 0), BigInt::from(3));
    assert_eq!(wedge_s_closed(2, 3, 3, 1), BigInt::from(0));
    assert_eq!(wedge_s_closed(2, 8, 4, 1), BigInt::from(4));
}

#[test]
fn closed_and_egf_examples() {
    assert_eq!(count_closed("A3", 3, 6, 6, 24, 3).unwrap().counts[3], n(16));
    assert_eq!(count_closed("ST4", 2, 8, 4, 24, 2).unwrap().counts[2], n(3));
    assert_eq!(count_closed("B2", 2, 4, 4, 8, 4).unwrap().counts[4], n(64));
    let a1 = count_egf("A1", 1, 1, 1, 2, 7).unwrap();
    assert_eq!(a1.counts, (0..=7u64).map(|l| n(l % 2)).collect::<Vec<_>>());
    assert_eq!(count_egf("A2", 2, 3, 3, 6, 2).unwrap().counts[2], n(3));
    assert_eq!(count_egf("G2", 2, 6, 6, 12, 2).unwrap().counts[2], n(6));
}

#[test]
fn five_methods_agree_on_st4() {
    let g = group("ST4");
    let s = count_methods(&g, &Method::ALL, 8, DpConfig::default());
    assert!(s.failures.is_empty(), "{:?}", s.failures);
    assert_eq!(s.agreement, Some(true));
    assert_eq!(s.reports[0].counts[2], n(3));
}

#[test]
fn lengths_below_rank_vanish() {
    for name in ["A3", "B3", "H3", "G(3,3,3)"] {
        let g = group(name);
        let r = count_dp(&g, g.rank(), DpConfig::default()).unwrap();
        assert!(r.counts[..g.rank()].iter().all(|c| *c == n(0)), "{name}");
        assert!(r.counts[g.rank()] > n(0), "{name}");
    }
}

#[test]
fn memory_guard_is_reported() {
    let g = group("B3");
    let s = count_methods(&g, &[Method::Dp], 3, DpConfig { max_cells: 100 });
    assert!(s.hit_resource_guard());
}

#[test]
fn report_json_round_trip() {
    let r = count_exterior(&group("B2"), &exterior_powers(&group("B2")), 6).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains(r#""counts":["0","0","4","0","64","0","1024"]"#), "{text}");
    assert_eq!(serde_json::from_str::<CountReport>(&text).unwrap(), r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dp_matches_closed_form(
        name in prop::sample::select(vec!["A1", "A2", "B2", "G2", "I2(5)", "ST4", "A3"]),
        l in 0usize..9,
    ) {
        let g = group(name);
        let dp = count_dp(&g, l, DpConfig::default()).unwrap();
        let closed = count_closed(
            name,
            g.rank(),
            g.reflections().len() as u64,
            g.hyperplanes().len() as u64,
            g.order(),
            l,
        )
        .unwrap();
        prop_assert_eq!(dp.counts, closed.counts);
    }
}
