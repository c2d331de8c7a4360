use std::fmt::Write as _;

use clap::ValueEnum;
use fracpow::laws::AuditSummary;
use fracpow::{ConePair, DataSet, Exponent, SpectraRow, ValidationReport};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
    Csv,
}

pub const RECORD_COLUMNS: &str = "kind,l,order,g0,a,b,cones";

/// `"k1:m1;k2:m2"`, always quoted.
pub fn csv_cones(cones: &[ConePair]) -> String {
    let body: Vec<String> = cones.iter().map(|c| format!("{}:{}", c.k, c.m)).collect();
    format!("\"{}\"", body.join(";"))
}

pub fn csv_record(d: &DataSet) -> String {
    match d {
        DataSet::Sp(d) => format!("SP,{},{},{},{},{},{}", d.l, d.n, d.g0, d.a, d.b, csv_cones(&d.cones)),
        DataSet::Se(d) => format!("SE,{},{},{},{},,{}", d.l, d.two_n, d.g0, d.a, csv_cones(&d.cones)),
    }
}

pub fn json_record(d: &DataSet) -> Value {
    serde_json::to_value(d).expect("data sets serialize")
}

fn report_json(r: &ValidationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "genus": r.genus,
        "failures": r.failures().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

/// Listing of canonical, sorted data sets. Text output groups by exponent.
pub fn listing(sets: &[DataSet], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            let mixed = sets.windows(2).any(|w| w[0].kind() != w[1].kind());
            let mut current: Option<(fracpow::Kind, Exponent)> = None;
            for d in sets {
                let key = (d.kind(), d.exponent());
                if current.map(|c| c.0) != Some(key.0) && mixed {
                    if current.is_some() {
                        out.push('\n');
                    }
                    writeln!(out, "[{}]", key.0).unwrap();
                }
                if current != Some(key) {
                    if current.is_some_and(|c| c.0 == key.0) {
                        out.push('\n');
                    }
                    writeln!(out, "Exponent {}", key.1).unwrap();
                    current = Some(key);
                }
                writeln!(out, "  {d}").unwrap();
            }
        }
        Format::JsonLines => {
            for d in sets {
                writeln!(out, "{}", json_record(d)).unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "{RECORD_COLUMNS}").unwrap();
            for d in sets {
                writeln!(out, "{}", csv_record(d)).unwrap();
            }
        }
    }
    out
}

pub fn validation(rows: &[(usize, DataSet, ValidationReport)], format: Format) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        writeln!(out, "line,{RECORD_COLUMNS},valid,genus,failures").unwrap();
    }
    for (line, d, r) in rows {
        match format {
            Format::Text => writeln!(out, "{d}  {r}").unwrap(),
            Format::JsonLines => {
                let v = merge(json!({"line": line, "data_set": json_record(d)}), report_json(r));
                writeln!(out, "{v}").unwrap();
            }
            Format::Csv => {
                let failures: Vec<String> = r.failures().iter().map(ToString::to_string).collect();
                let genus = r.genus.map(|g| g.to_string()).unwrap_or_default();
                writeln!(out, "{line},{},{},{genus},\"{}\"", csv_record(d), r.is_valid(), failures.join(";")).unwrap();
            }
        }
    }
    out
}

pub fn spectra(rows: &[SpectraRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "{:>13} {:>6} {:>6} {:>6} {:>6}", "surface_genus", "e_sp", "e_se", "n_sp", "n_se").unwrap();
            for r in rows {
                writeln!(out, "{:>13} {:>6} {:>6} {:>6} {:>6}", r.genus_plus_one, r.e_sp, r.e_se, r.n_sp, r.n_se)
                    .unwrap();
            }
        }
        Format::JsonLines => {
            for r in rows {
                let v = json!({
                    "surface_genus": r.genus_plus_one,
                    "e_sp": r.e_sp,
                    "e_se": r.e_se,
                    "n_sp": r.n_sp,
                    "n_se": r.n_se,
                });
                writeln!(out, "{v}").unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "surface_genus,e_sp,e_se,n_sp,n_se").unwrap();
            for r in rows {
                writeln!(out, "{},{},{},{},{}", r.genus_plus_one, r.e_sp, r.e_se, r.n_sp, r.n_se).unwrap();
            }
        }
    }
    out
}

/// One line per adjusted cone of an SE decomposition.
pub struct AdjustmentLine {
    pub cone: ConePair,
    pub index: usize,
    pub raw: i64,
    pub chosen: Option<i64>,
}

pub fn decomposition(status: &str, result: Option<&DataSet>, adjustments: &[AdjustmentLine], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            if let Some(d) = result {
                writeln!(out, "{d}").unwrap();
            }
            writeln!(out, "status: {status}").unwrap();
            for a in adjustments {
                let chosen = a.chosen.map_or_else(|| "no unit lift".to_string(), |k| k.to_string());
                writeln!(out, "adjusted cone {} {}: r*k = {} -> {chosen}", a.index + 1, a.cone, a.raw).unwrap();
            }
        }
        Format::JsonLines => {
            let adj: Vec<Value> = adjustments
                .iter()
                .map(|a| json!({"cone": a.index + 1, "m": a.cone.m, "raw": a.raw, "chosen": a.chosen}))
                .collect();
            let v = json!({"status": status, "data_set": result.map(json_record), "adjustments": adj});
            writeln!(out, "{v}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "status,{RECORD_COLUMNS},adjusted_cones").unwrap();
            let rec = result.map_or_else(|| ",,,,,,".to_string(), csv_record);
            let idx: Vec<String> = adjustments.iter().map(|a| (a.index + 1).to_string()).collect();
            writeln!(out, "{status},{rec},\"{}\"", idx.join(";")).unwrap();
        }
    }
    out
}

pub fn families(rows: &[(&str, DataSet, ValidationReport, bool)], format: Format) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        writeln!(out, "family,{RECORD_COLUMNS},valid,genus,essential").unwrap();
    }
    for (name, d, r, essential) in rows {
        match format {
            Format::Text => {
                let tag = if *essential { ", essential" } else { ", not essential" };
                writeln!(out, "{name:<7} {:<10} {d}  {r}{tag}", d.exponent().to_string()).unwrap();
            }
            Format::JsonLines => {
                let v =
                    merge(json!({"family": name, "data_set": json_record(d), "essential": essential}), report_json(r));
                writeln!(out, "{v}").unwrap();
            }
            Format::Csv => {
                let genus = r.genus.map(|g| g.to_string()).unwrap_or_default();
                writeln!(out, "{name},{},{},{genus},{essential}", csv_record(d), r.is_valid()).unwrap();
            }
        }
    }
    out
}

pub fn audit(summaries: &[AuditSummary], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for s in summaries {
                writeln!(
                    out,
                    "genus {} {}: {} data sets, {} violations",
                    s.genus,
                    s.kind,
                    s.data_sets,
                    s.violations.len()
                )
                .unwrap();
                let held: Vec<String> = s.held.iter().map(|(law, c)| format!("{law} {c}/{}", s.data_sets)).collect();
                writeln!(out, "  held: {}", held.join(", ")).unwrap();
                for v in &s.violations {
                    let w = v.witness.as_ref().map(ToString::to_string).unwrap_or_default();
                    writeln!(out, "  violation {} ({}): {w}", v.law, v.law.description()).unwrap();
                }
            }
            let total: usize = summaries.iter().map(|s| s.data_sets).sum();
            let bad: usize = summaries.iter().map(|s| s.violations.len()).sum();
            writeln!(out, "total: {total} data sets, {bad} violations").unwrap();
        }
        Format::JsonLines => {
            for s in summaries {
                let held: serde_json::Map<String, Value> =
                    s.held.iter().map(|(law, c)| (law.to_string(), json!(c))).collect();
                let violations: Vec<Value> = s
                    .violations
                    .iter()
                    .map(|v| json!({"law": v.law.to_string(), "witness": v.witness.as_ref().map(json_record)}))
                    .collect();
                let v = json!({
                    "genus": s.genus,
                    "kind": s.kind.to_string(),
                    "data_sets": s.data_sets,
                    "held": held,
                    "violations": violations,
                });
                writeln!(out, "{v}").unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "genus,kind,law,checked,held,violations").unwrap();
            for s in summaries {
                for (law, held) in &s.held {
                    let bad = s.violations.iter().filter(|v| v.law == *law).count();
                    writeln!(out, "{},{},{law},{},{held},{bad}", s.genus, s.kind, s.data_sets).unwrap();
                }
            }
        }
    }
    out
}
