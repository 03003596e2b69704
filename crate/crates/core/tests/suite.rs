use coxfact_core::group::GroupSpec;
use coxfact_core::harness::{run_suite, Status, SuiteOptions, VerificationReport, CHECK_IDS};

fn suite(name: &str, l: usize) -> VerificationReport {
    run_suite(GroupSpec::parse(name).unwrap(), l, SuiteOptions::default()).unwrap()
}

fn assert_all_pass(r: &VerificationReport) {
    let failed: Vec<_> = r.failures().collect();
    assert!(failed.is_empty(), "{}: {failed:#?}", r.group);
}

#[test]
fn a2_passes() {
    assert_all_pass(&suite("A2", 8));
}

#[test]
fn st4_passes_with_asymmetric_counts() {
    let r = suite("ST4", 8);
    assert_all_pass(&r);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn g2_and_a1_pass() {
    assert_all_pass(&suite("G2", 8));
    assert_all_pass(&suite("A1", 7));
}

#[test]
fn every_check_appears_once() {
    let r = suite("B3", 4);
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, CHECK_IDS.to_vec());
}

#[test]
fn mixed_fixators_are_not_applicable() {
    let r = suite("G(4,1,2)", 6);
    assert_all_pass(&r);
    for id in ["lemma1.identity", "lemma1.multiplicity_nontrivial", "lemma1.multiplicity_trivial"] {
        assert_eq!(r.check(id).unwrap().status, Status::NotApplicable, "{id}");
    }
}

#[test]
fn not_well_generated_group_fails_count_agreement() {
    // G(4,2,2) needs three generating reflections; its e_H are all 2, so
    // Lemma 1 applies, but the closed form leaves a remainder at l = 2.
    let r = suite("G(4,2,2)", 6);
    assert_eq!(r.check("lemma1.identity").unwrap().status, Status::Pass);
    let four_way = r.check("counts.four_way").unwrap();
    assert_eq!(four_way.status, Status::Fail);
    assert!(four_way.witness.as_ref().unwrap().to_string().contains("not divisible"));
}

#[test]
fn deterministic_and_round_trips() {
    let a = suite("B2", 6);
    let b = suite("B2", 6);
    assert_eq!(a.verdicts(), b.verdicts());
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<VerificationReport>(&text).unwrap(), a);
}

#[test]
fn fault_injection_is_caught() {
    for name in ["A2", "B2", "ST4", "H3"] {
        for seed in 0..5 {
            let options = SuiteOptions {
                fault_seed: Some(seed),
                ..Default::default()
            };
            let r = run_suite(GroupSpec::parse(name).unwrap(), 4, options).unwrap();
            assert!(r.failures().count() > 0, "{name} seed {seed}");
        }
    }
}
