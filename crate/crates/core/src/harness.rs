//! Runs the full identity suite on one group and records a verdict per check.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{Cyclotomic, UniPoly};
use crate::character::{
    char_invariants, chi_of_s, exterior_powers, multiplicity_identities, verify_lemma1,
    CharInvariants, CharacterTable, Lemma1Outcome,
};
use crate::counting::{
    count_closed, count_dp, count_egf, count_exterior, count_spectral, exterior_sum,
    spectral_sum, wedge_ratio_closed, wedge_s_closed, CountReport, DpConfig, Method,
};
use crate::group::{GroupConfig, GroupSpec, ReflectionGroup};

/// Check ids, in execution order.
pub const CHECK_IDS: [&str; 24] = [
    "group.order",
    "group.reflections",
    "group.classes",
    "group.coxeter",
    "degrees.product",
    "degrees.sum",
    "degrees.expected",
    "table.row_orthogonality",
    "table.column_orthogonality",
    "table.degree_sum",
    "table.class_count",
    "table.conjugation_routes",
    "fake_degree.valid",
    "lemma1.identity",
    "lemma1.multiplicity_nontrivial",
    "lemma1.multiplicity_trivial",
    "wedge.closed_form",
    "wedge.ratio",
    "counts.vanish_below_rank",
    "counts.dp_anchor",
    "counts.four_way",
    "counts.exterior_collapse",
    "steinberg.irreducible",
    "steinberg.in_table",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// Counterexample payload on failure, reason when not applicable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub duration_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaultInjection {
    pub seed: u64,
    pub row: usize,
    pub class: usize,
}

/// Facts recorded without being asserted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Observations {
    /// Smallest `l` with `N_l ≠ 0` in the dp output, if any up to `L`.
    pub first_nonzero_l: Option<usize>,
    /// `l ≤ L` with `N_l = 0`.
    pub zero_lengths: Vec<usize>,
    /// `∧^iRef(c⁻¹)` for `i = 0..=n`.
    pub wedge_at_coxeter_inverse: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub max_l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault_injection: Option<FaultInjection>,
    pub checks: Vec<Check>,
    pub observations: Observations,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountReport>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// The report without timings, for determinism comparisons.
    pub fn verdicts(&self) -> Vec<(String, Status, Option<Value>)> {
        self.checks
            .iter()
            .map(|c| (c.id.clone(), c.status, c.witness.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub group: GroupConfig,
    pub dp: DpConfig,
    /// Perturb one character-table entry chosen by this seed.
    pub fault_seed: Option<u64>,
}

enum Outcome {
    Pass,
    Fail(Value),
    NotApplicable(Value),
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn run(&mut self, id: &str, f: impl FnOnce() -> Outcome) {
        debug_assert!(CHECK_IDS.contains(&id));
        let start = Instant::now();
        let outcome = f();
        let duration_us = start.elapsed().as_micros() as u64;
        let (status, witness) = match outcome {
            Outcome::Pass => (Status::Pass, None),
            Outcome::Fail(w) => (Status::Fail, Some(w)),
            Outcome::NotApplicable(w) => (Status::NotApplicable, Some(w)),
        };
        self.checks.push(Check {
            id: id.to_string(),
            status,
            witness,
            duration_us,
        });
    }
}

fn verdict(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

/// First failing item of a per-instance check, with the number of failures.
fn first_failure<T>(items: impl IntoIterator<Item = T>, fail: impl Fn(&T) -> Option<Value>) -> Outcome {
    let witnesses: Vec<Value> = items.into_iter().filter_map(|x| fail(&x)).collect();
    match witnesses.first() {
        None => Outcome::Pass,
        Some(w) => Outcome::Fail(json!({ "first": w, "failures": witnesses.len() })),
    }
}

fn missing(what: &str, err: &str) -> Outcome {
    Outcome::Fail(json!({ "prerequisite": what, "error": err }))
}

/// Builds the group and runs every check. Only group construction errors are
/// returned as `Err`; everything downstream becomes a failed check.
pub fn run_suite(spec: GroupSpec, max_l: usize, options: SuiteOptions) -> crate::Result<VerificationReport> {
    let group = ReflectionGroup::build_with(spec, options.group)?;
    Ok(run_suite_on(&group, max_l, options))
}

pub fn run_suite_on(group: &ReflectionGroup, max_l: usize, options: SuiteOptions) -> VerificationReport {
    let mut rec = Recorder { checks: Vec::new() };
    let n = group.rank();
    let order = group.order();
    let r_count = group.reflections().len() as u64;
    let h_count = group.hyperplanes().len() as u64;
    let degrees = group.degrees().to_vec();

    // group sanity
    rec.run("group.order", || {
        let expected = group.spec().expected_order;
        verdict(order == expected && group.len() as u64 == expected, || {
            json!({ "closure": group.len(), "expected": expected })
        })
    });
    rec.run("group.reflections", || {
        let sum: u64 = group
            .hyperplanes()
            .iter()
            .map(|h| h.fixator_order as u64 - 1)
            .sum();
        verdict(sum == r_count, || json!({ "sum_e_minus_1": sum, "reflections": r_count }))
    });
    rec.run("group.classes", || {
        let sizes = group.classes().sizes();
        let total: u64 = sizes.iter().sum();
        let divides = sizes.iter().all(|s| order % s == 0);
        verdict(total == order && divides, || json!({ "sizes": sizes, "order": order }))
    });
    rec.run("group.coxeter", || {
        let h = group.coxeter_number();
        let c = group.coxeter();
        let c_order = group.element_order(c);
        let roots: Vec<Cyclotomic> = degrees
            .iter()
            .map(|&d| Cyclotomic::root_of_unity(h as u32, d as i64 - 1))
            .collect();
        let expected = UniPoly::from_roots(&roots);
        let actual = group.matrix(c).charpoly();
        verdict(c_order == h && actual == expected, || {
            json!({
                "order": c_order,
                "h": h,
                "charpoly": actual.to_string(),
                "expected": expected.to_string(),
            })
        })
    });

    // degree identities
    rec.run("degrees.product", || {
        let prod: u64 = degrees.iter().product();
        verdict(prod == order, || json!({ "product": prod, "order": order }))
    });
    rec.run("degrees.sum", || {
        let sum: u64 = degrees.iter().map(|d| d - 1).sum();
        verdict(sum == r_count, || json!({ "sum_d_minus_1": sum, "reflections": r_count }))
    });
    rec.run("degrees.expected", || {
        let expected = &group.spec().expected_degrees;
        verdict(&degrees == expected, || json!({ "molien": degrees, "catalog": expected }))
    });

    // character table
    let mut fault = None;
    let table = CharacterTable::compute(group).map(|mut t| {
        if let Some(seed) = options.fault_seed {
            let mut rng = StdRng::seed_from_u64(seed);
            let row = rng.gen_range(0..t.rows.len());
            let class = rng.gen_range(0..t.class_sizes.len());
            let v = &mut t.rows[row].values[class];
            *v = &*v + &Cyclotomic::one();
            fault = Some(FaultInjection { seed, row, class });
        }
        t
    });
    let table_err = table.as_ref().err().map(|e| e.to_string());
    let table = table.ok();

    macro_rules! need_table {
        () => {
            match &table {
                Some(t) => t,
                None => return missing("character table", table_err.as_deref().unwrap_or("")),
            }
        };
    }

    rec.run("table.row_orthogonality", || {
        let t = need_table!();
        let f = t.row_orthogonality_failures();
        verdict(f.is_empty(), || json!({ "first": f[0], "failures": f.len() }))
    });
    rec.run("table.column_orthogonality", || {
        let t = need_table!();
        let f = t.column_orthogonality_failures();
        verdict(f.is_empty(), || json!({ "first": f[0], "failures": f.len() }))
    });
    rec.run("table.degree_sum", || {
        let t = need_table!();
        let sum: Cyclotomic = t.rows.iter().map(|r| r.degree() * r.degree()).sum();
        verdict(sum == Cyclotomic::from_int(order as i64), || {
            json!({ "sum": sum.to_string(), "order": order })
        })
    });
    rec.run("table.class_count", || {
        let t = need_table!();
        verdict(t.rows.len() == group.num_classes(), || {
            json!({ "rows": t.rows.len(), "classes": group.num_classes() })
        })
    });
    rec.run("table.conjugation_routes", || {
        let t = need_table!();
        first_failure(t.rows.iter().enumerate(), |(i, row)| {
            let by_value = row.conjugate();
            let by_class = row.permute_inverse(&t.inverse_class);
            if by_value != by_class {
                Some(json!({ "row": i, "reason": "complex conjugate differs from inverse-class permutation" }))
            } else if t.find_row(&by_value).is_none() {
                Some(json!({ "row": i, "reason": "conjugate is not a row of the table" }))
            } else {
                None
            }
        })
    });

    let invariants: Result<Vec<CharInvariants>, String> = match &table {
        Some(t) => char_invariants(group, t).map_err(|e| e.to_string()),
        None => Err(table_err.clone().unwrap_or_default()),
    };

    macro_rules! need_invariants {
        () => {
            match &invariants {
                Ok(v) => v,
                Err(e) => return missing("fake degrees", e),
            }
        };
    }

    rec.run("fake_degree.valid", || {
        let t = need_table!();
        let inv = need_invariants!();
        first_failure(inv.iter().enumerate(), |(i, ci)| {
            let degree = t.rows[*i].degree();
            let natural = ci.fake_degree.nonnegative_integer_coeffs().is_some();
            let at_one = ci.fake_degree.eval(&Cyclotomic::one());
            (!natural || &at_one != degree).then(|| {
                json!({
                    "row": i,
                    "fake_degree": ci.fake_degree.display_in("q"),
                    "degree": degree.to_string(),
                })
            })
        })
    });

    // Lemma 1 and the multiplicity identities
    let not_applicable = |orders: &[u32]| {
        Outcome::NotApplicable(json!({ "reason": "e_H not constant", "fixator_orders": orders }))
    };
    rec.run("lemma1.identity", || {
        let t = need_table!();
        let inv = need_invariants!();
        match verify_lemma1(group, t, inv) {
            Lemma1Outcome::NotApplicable { fixator_orders } => not_applicable(&fixator_orders),
            Lemma1Outcome::Checked { entries, .. } => {
                first_failure(entries, |e| (!e.holds).then(|| json!(e)))
            }
        }
    });
    let fixator_orders: Vec<u32> = {
        let mut v: Vec<u32> = group.hyperplanes().iter().map(|h| h.fixator_order).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let multiplicity_check = |nontrivial: bool| {
        let t = need_table!();
        let inv = need_invariants!();
        if group.common_fixator_order().is_none() {
            return not_applicable(&fixator_orders);
        }
        first_failure(0..t.rows.len(), |&i| {
            let m = multiplicity_identities(group, t, inv, i)?;
            let holds = if nontrivial { m.nontrivial_holds } else { m.trivial_holds };
            (!holds).then(|| json!(m))
        })
    };
    rec.run("lemma1.multiplicity_nontrivial", || multiplicity_check(true));
    rec.run("lemma1.multiplicity_trivial", || multiplicity_check(false));

    // exterior powers of the reflection character
    let wedges = exterior_powers(group);
    rec.run("wedge.closed_form", || {
        first_failure(wedges.iter().enumerate(), |(i, w)| {
            let from_table = chi_of_s(w, group);
            let closed = Cyclotomic::from(wedge_s_closed(n, r_count, h_count, *i));
            (from_table != closed).then(|| {
                json!({ "i": i, "table": from_table.to_string(), "closed": closed.to_string() })
            })
        })
    });
    rec.run("wedge.ratio", || {
        first_failure(wedges.iter().enumerate(), |(i, w)| {
            let ratio = chi_of_s(w, group) / w.degree().clone();
            let closed = Cyclotomic::from(wedge_ratio_closed(n, r_count, h_count, *i));
            (ratio != closed).then(|| {
                json!({ "i": i, "ratio": ratio.to_string(), "closed": closed.to_string() })
            })
        })
    });

    // counts
    let name = group.name();
    let dp = count_dp(group, max_l, options.dp);
    let c_inv_class = group.class_of(group.inverse(group.coxeter()));
    let mut observations = Observations {
        wedge_at_coxeter_inverse: wedges
            .iter()
            .map(|w| w.values[c_inv_class].to_string())
            .collect(),
        ..Default::default()
    };
    if let Ok(report) = &dp {
        observations.first_nonzero_l = report.counts.iter().position(|c| !c.is_zero());
        observations.zero_lengths = (0..report.counts.len())
            .filter(|&l| report.counts[l].is_zero())
            .collect();
    }

    rec.run("counts.vanish_below_rank", || match &dp {
        Err(e) => missing("dp counts", &e.to_string()),
        Ok(report) => first_failure(report.counts.iter().enumerate().take(n), |(l, c)| {
            (!c.is_zero()).then(|| json!({ "l": l, "count": c.to_string() }))
        }),
    });
    rec.run("counts.dp_anchor", || match &dp {
        Err(e) => missing("dp counts", &e.to_string()),
        // N_n > 0: the Coxeter element has reflection length n
        Ok(report) => match report.counts.get(n) {
            None => Outcome::NotApplicable(json!({ "reason": "L < n" })),
            Some(c) => verdict(!c.is_zero(), || json!({ "l": n, "count": "0" })),
        },
    });
    rec.run("counts.four_way", || {
        let mut reports: Vec<(Method, Result<CountReport, String>)> = vec![
            (Method::Dp, dp.clone().map_err(|e| e.to_string())),
            (
                Method::Spectral,
                match &table {
                    Some(t) => count_spectral(group, t, max_l).map_err(|e| e.to_string()),
                    None => Err(format!("no table: {}", table_err.as_deref().unwrap_or(""))),
                },
            ),
            (Method::Exterior, count_exterior(group, &wedges, max_l).map_err(|e| e.to_string())),
            (
                Method::Closed,
                count_closed(&name, n, r_count, h_count, order, max_l).map_err(|e| e.to_string()),
            ),
            (
                Method::Egf,
                count_egf(&name, n, r_count, h_count, order, max_l).map_err(|e| e.to_string()),
            ),
        ];
        let errors: Vec<Value> = reports
            .iter()
            .filter_map(|(m, r)| r.as_ref().err().map(|e| json!({ "method": m, "error": e })))
            .collect();
        if !errors.is_empty() {
            return Outcome::Fail(json!({ "errors": errors }));
        }
        let counts: Vec<(Method, Vec<BigUint>)> = reports
            .drain(..)
            .map(|(m, r)| (m, r.unwrap().counts))
            .collect();
        let reference = &counts[0].1;
        first_failure(0..=max_l, |&l| {
            counts.iter().any(|(_, c)| c[l] != reference[l]).then(|| {
                let values: serde_json::Map<String, Value> = counts
                    .iter()
                    .map(|(m, c)| (m.to_string(), json!(c[l].to_string())))
                    .collect();
                json!({ "l": l, "values": values })
            })
        })
    });
    rec.run("counts.exterior_collapse", || {
        let t = need_table!();
        first_failure(0..=max_l, |&l| {
            let full = spectral_sum(group, t, l);
            let ext = exterior_sum(group, &wedges, l);
            (full != ext).then(|| json!({ "l": l, "all_irreducibles": full.to_string(), "exterior": ext.to_string() }))
        })
    });

    // Steinberg
    rec.run("steinberg.irreducible", || {
        let sizes = group.classes().sizes();
        first_failure(wedges.iter().enumerate(), |(i, w)| {
            let norm = crate::character::inner_product(w, w, &sizes, order);
            (!norm.is_one()).then(|| json!({ "i": i, "norm": norm.to_string() }))
        })
    });
    rec.run("steinberg.in_table", || {
        let t = need_table!();
        first_failure(wedges.iter().enumerate(), |(i, w)| {
            t.find_row(w).is_none().then(|| json!({ "i": i }))
        })
    });

    // present the checks in the fixed order
    rec.checks
        .sort_by_key(|c| CHECK_IDS.iter().position(|id| *id == c.id).unwrap_or(usize::MAX));

    VerificationReport {
        group: name,
        max_l,
        fault_injection: fault,
        checks: rec.checks,
        observations,
        counts: dp.ok(),
    }
}
