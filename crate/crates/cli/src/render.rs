//! Text and CSV renderings of the reports.

use std::fmt::Write;

use coxfact_core::character::TableReport;
use coxfact_core::counting::CountSummary;
use coxfact_core::group::GroupInfo;
use coxfact_core::harness::{Status, VerificationReport};

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn fixators(info: &GroupInfo) -> String {
    info.fixator_orders
        .iter()
        .map(|(e, k)| format!("{k}×{e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn info_rows(info: &GroupInfo) -> Vec<(&'static str, String)> {
    vec![
        ("group", info.group.clone()),
        ("rank", info.rank.to_string()),
        ("order", info.order.to_string()),
        ("reflections", info.reflections.to_string()),
        ("hyperplanes", info.hyperplanes.to_string()),
        ("degrees", join(&info.degrees, " ")),
        ("coxeter_number", info.coxeter_number.to_string()),
        ("coxeter_order", info.coxeter_order.to_string()),
        ("fixator_orders", fixators(info)),
        ("classes", info.classes.to_string()),
        ("generators", info.generators.to_string()),
        (
            "field",
            match info.field_order {
                1 | 2 => "Q".to_string(),
                m => format!("Q(z({m}))"),
            },
        ),
    ]
}

pub fn info_text(info: &GroupInfo) -> String {
    let mut out = String::new();
    for (k, v) in info_rows(info) {
        writeln!(out, "{k:<16}{v}").unwrap();
    }
    out
}

/// Writes records through the csv crate and returns the text.
fn csv_text(records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn info_csv(info: &GroupInfo) -> String {
    let rows = info_rows(info)
        .into_iter()
        .map(|(k, v)| vec![k.to_string(), v]);
    csv_text(std::iter::once(vec!["key".into(), "value".into()]).chain(rows))
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
    }
    out
}

fn table_rows(t: &TableReport) -> Vec<Vec<String>> {
    let k = t.class_sizes.len();
    let mut rows = vec![
        std::iter::once("class".to_string())
            .chain((0..k).map(|c| c.to_string()))
            .collect(),
        std::iter::once("size".to_string())
            .chain(t.class_sizes.iter().map(ToString::to_string))
            .collect(),
        std::iter::once("order".to_string())
            .chain(t.class_orders.iter().map(ToString::to_string))
            .collect(),
    ];
    for (i, r) in t.rows.iter().enumerate() {
        rows.push(std::iter::once(format!("chi_{i}")).chain(r.iter().cloned()).collect());
    }
    rows
}

pub fn table_text(t: &TableReport) -> String {
    format!(
        "{}: {} irreducible characters, degrees {}\n{}",
        t.group,
        t.rows.len(),
        join(&t.degrees, " "),
        aligned(&table_rows(t))
    )
}

pub fn table_csv(t: &TableReport) -> String {
    csv_text(table_rows(t))
}

fn count_rows(s: &CountSummary) -> Vec<Vec<String>> {
    let header = std::iter::once("l".to_string())
        .chain(s.reports.iter().map(|r| r.method.to_string()))
        .collect();
    let len = s.reports.iter().map(|r| r.counts.len()).max().unwrap_or(0);
    let body = (0..len).map(|l| {
        std::iter::once(l.to_string())
            .chain(s.reports.iter().map(|r| r.counts[l].to_string()))
            .collect()
    });
    std::iter::once(header).chain(body).collect()
}

pub fn count_text(group: &str, s: &CountSummary) -> String {
    let mut out = format!("{group}: N_l = number of length-l reflection factorizations of c\n");
    out += &aligned(&count_rows(s));
    for f in &s.failures {
        writeln!(out, "{} failed: {}", f.method, f.error).unwrap();
    }
    match s.agreement {
        Some(true) => out += "agreement: all methods agree\n",
        Some(false) => out += "agreement: FAILED\n",
        None => {}
    }
    out
}

pub fn count_csv(s: &CountSummary) -> String {
    csv_text(count_rows(s))
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "not-applicable",
    }
}

pub fn verify_text(r: &VerificationReport) -> String {
    let mut out = format!("{}: identity suite up to l = {}\n", r.group, r.max_l);
    if let Some(f) = &r.fault_injection {
        writeln!(out, "fault injected: seed {}, row {}, class {}", f.seed, f.row, f.class).unwrap();
    }
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A ",
        };
        writeln!(out, "{tag}  {:<34}{:>9} µs", c.id, c.duration_us).unwrap();
        if c.status == Status::Fail {
            if let Some(w) = &c.witness {
                writeln!(out, "      witness: {w}").unwrap();
            }
        }
    }
    let o = &r.observations;
    if let Some(l) = o.first_nonzero_l {
        writeln!(out, "first nonzero N_l at l = {l}").unwrap();
    }
    writeln!(out, "wedge^i Ref(c^-1): {}", o.wedge_at_coxeter_inverse.join(", ")).unwrap();
    let failed = r.failures().count();
    if failed == 0 {
        out += "verdict: all checks passed\n";
    } else {
        writeln!(out, "verdict: {failed} check(s) failed").unwrap();
    }
    out
}

pub fn verify_csv(r: &VerificationReport) -> String {
    let header = ["id", "status", "duration_us", "witness"].map(String::from).to_vec();
    let rows = r.checks.iter().map(|c| {
        vec![
            c.id.clone(),
            status_str(c.status).to_string(),
            c.duration_us.to_string(),
            c.witness.as_ref().map(ToString::to_string).unwrap_or_default(),
        ]
    });
    csv_text(std::iter::once(header).chain(rows))
}
