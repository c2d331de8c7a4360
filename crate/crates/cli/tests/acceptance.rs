//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use fracpow::enumerate::{enumerate, Exec};
use fracpow::notation::parse_data_set;
use fracpow::{canonicalize_se, canonicalize_sp, validate_se, validate_sp, DataSet, Exponent, Filters};

const S5_SP: &str = include_str!("../../core/tests/data/s5_sp_listing.txt");
const S5_SE: &str = include_str!("../../core/tests/data/s5_se_listing.txt");
const TABLE: &str = include_str!("data/spectra_19_29.csv");

type Check = Result<Vec<String>, String>;

/// Number, name, time limit, check.
type Criterion = (u8, &'static str, Option<Duration>, fn() -> Check);

fn fracpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpow")).args(args).output().expect("run fracpow")
}

fn fracpow_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_fracpow"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn fracpow");
    let mut stdin = child.stdin.take().unwrap();
    let input = input.to_string();
    let writer = std::thread::spawn(move || stdin.write_all(input.as_bytes()));
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap().unwrap();
    out
}

fn success(o: &Output, what: &str) -> Result<String, String> {
    if o.status.code() != Some(0) {
        return Err(format!("{what}: exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    Ok(String::from_utf8(o.stdout.clone()).expect("utf-8 output"))
}

fn listing(text: &str) -> Vec<(Exponent, DataSet)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (hdr, tuple) = l.split_once('|').expect("header | tuple");
            (hdr.trim().parse().expect("header"), parse_data_set(tuple.trim(), None).expect("tuple"))
        })
        .collect()
}

fn json_sets(text: &str) -> Result<Vec<DataSet>, String> {
    text.lines().map(|l| serde_json::from_str(l).map_err(|e| format!("{e}: {l}"))).collect()
}

fn criterion_1() -> Check {
    let reference: BTreeSet<DataSet> = listing(S5_SP).into_iter().map(|(_, d)| d.canonicalize()).collect();
    let mut expected = String::new();
    let mut last: Option<Exponent> = None;
    for d in &reference {
        if last != Some(d.exponent()) {
            if last.is_some() {
                expected.push('\n');
            }
            writeln!(expected, "Exponent {}", d.exponent()).unwrap();
            last = Some(d.exponent());
        }
        writeln!(expected, "  {d}").unwrap();
    }
    let got = success(&fracpow(&["enumerate", "--genus", "4", "--kind", "sp", "--essential"]), "enumerate")?;
    let exps: BTreeSet<Exponent> = reference.iter().map(DataSet::exponent).collect();
    if reference.len() != 26 || exps.len() != 13 {
        return Err(format!("fixture has {} sets over {} exponents", reference.len(), exps.len()));
    }
    if got != expected {
        return Err(format!("listing differs:\n--- expected\n{expected}--- got\n{got}"));
    }
    Ok(vec![format!("26 sets over 13 exponents, byte-identical")])
}

fn criterion_2() -> Check {
    let got = success(
        &fracpow(&["enumerate", "--genus", "4", "--kind", "se", "--essential", "--format", "json-lines"]),
        "enumerate",
    )?;
    let enumerated: BTreeSet<DataSet> = json_sets(&got)?.into_iter().collect();
    let reference = listing(S5_SE);
    let mut log = Vec::new();
    let mut missing = Vec::new();
    let mut seen = BTreeSet::new();
    for (hdr, d) in &reference {
        let r = d.validate();
        if !r.is_valid() || r.genus != Some(4) {
            missing.push(format!("{d} does not validate with genus 4: {r}"));
        }
        let c = d.canonicalize();
        if !enumerated.contains(&c) {
            missing.push(format!("{d} not enumerated"));
        }
        if d.exponent() != *hdr {
            log.push(format!("discrepancy: {d} listed under header {hdr}, its exponent is {}", d.exponent()));
        }
        seen.insert(c);
    }
    for d in enumerated.difference(&seen) {
        log.push(format!("discrepancy: enumerated {d} is not in the reference listing"));
    }
    log.push(format!(
        "{} reference tuples, {} enumerated, {} discrepancies",
        reference.len(),
        enumerated.len(),
        log.len()
    ));
    if reference.len() != 33 {
        missing.push(format!("fixture has {} tuples", reference.len()));
    }
    if missing.is_empty() {
        Ok(log)
    } else {
        Err(missing.join("\n"))
    }
}

fn criterion_3() -> Check {
    let got = success(&fracpow(&["spectra", "--from", "19", "--to", "29", "--format", "csv"]), "spectra")?;
    let want: Vec<&str> = TABLE.lines().collect();
    let have: Vec<&str> = got.lines().collect();
    if have.first() != want.first() {
        return Err(format!("header {:?}", have.first()));
    }
    let mut bad = Vec::new();
    let mut cells = 0;
    let cols: Vec<&str> = want[0].split(',').collect();
    for (w, h) in want.iter().zip(&have).skip(1) {
        let wc: Vec<&str> = w.split(',').collect();
        let hc: Vec<&str> = h.split(',').collect();
        for c in 1..cols.len() {
            cells += 1;
            if wc.get(c) != hc.get(c) {
                bad.push(format!("surface genus {}: {} expected {}, got {:?}", wc[0], cols[c], wc[c], hc.get(c)));
            }
        }
    }
    if have.len() != want.len() {
        bad.push(format!("{} rows, expected {}", have.len() - 1, want.len() - 1));
    }
    if bad.is_empty() {
        Ok(vec![format!("{cells} of 44 cells match")])
    } else {
        Err(bad.join("\n"))
    }
}

fn criterion_4() -> Check {
    let sp = success(&fracpow(&["decompose", "((2,9),0,(1,1);(7,9))"]), "SP decompose")?;
    if sp != "((1, 9), 0, (2, 2); (5, 9))\nstatus: exact\n" {
        return Err(format!("SP example gave\n{sp}"));
    }
    let se = success(&fracpow(&["decompose", "((6,10),0,2;(3,10),(3,10))", "--r", "2"]), "SE decompose")?;
    let mut lines = se.lines();
    if lines.next() != Some("((3, 10), 0, 4; (1, 10), (1, 10))") || lines.next() != Some("status: adjusted") {
        return Err(format!("SE example gave\n{se}"));
    }
    Ok(vec![
        "2/9 -> ((1, 9), 0, (2, 2); (5, 9)) exact; 6/10, r = 2 -> ((3, 10), 0, 4; (1, 10), (1, 10)) adjusted".into()
    ])
}

fn criterion_5() -> Check {
    let mut bad = Vec::new();
    for g in 1..=200i64 {
        let text = success(&fracpow(&["families", "--genus", &g.to_string(), "--format", "json-lines"]), "families")?;
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
            let d: DataSet = serde_json::from_value(v["data_set"].clone()).map_err(|e| e.to_string())?;
            let r = d.validate();
            let order = d.exponent().order;
            let boundary = match v["family"].as_str() {
                Some("sp-top") => 2 * g + 1,
                Some("sp-4g") => 4 * g,
                Some("se-max") => 4 * g + 2,
                Some("se-min") => 2 * g + 2,
                other => return Err(format!("unknown family {other:?}")),
            };
            if !r.is_valid() || r.genus != Some(g) || !d.is_essential() || order != boundary {
                bad.push(format!("g = {g}: {} {d} {r}", v["family"]));
            }
        }
        if text.lines().count() != 6 {
            bad.push(format!("g = {g}: {} family records", text.lines().count()));
        }
    }
    if bad.is_empty() {
        Ok(vec!["1200 records valid, essential, genus g, on the boundary".into()])
    } else {
        Err(bad.join("\n"))
    }
}

fn criterion_6() -> Check {
    let mut notes = Vec::new();
    for g in 1..=8 {
        let o = fracpow(&["enumerate", "--genus", &g.to_string(), "--kind", "both", "--oracle", "--format", "csv"]);
        success(&o, &format!("oracle g = {g}"))?;
        notes.push(format!("g = {g}: {}", String::from_utf8_lossy(&o.stderr).trim()));
    }
    Ok(notes)
}

fn criterion_7() -> Check {
    let text = success(&fracpow(&["audit", "--from", "1", "--to", "12", "--kind", "both"]), "audit")?;
    let total = text.lines().last().unwrap_or_default().to_string();
    if !total.ends_with(" 0 violations") {
        return Err(total);
    }
    Ok(vec![total])
}

fn shifted_notation(d: &DataSet, s: i64) -> String {
    match d {
        DataSet::Sp(x) => {
            let mut y = x.clone();
            y.a += s * x.n;
            y.b -= 2 * s * x.n;
            y.cones.iter_mut().for_each(|c| c.k += s * c.m);
            std::mem::swap(&mut y.a, &mut y.b);
            y.cones.reverse();
            y.to_string()
        }
        DataSet::Se(x) => {
            let mut y = x.clone();
            y.a += s * x.n();
            y.cones.iter_mut().for_each(|c| c.k -= s * c.m);
            y.cones.reverse();
            y.to_string()
        }
    }
}

/// Genus-5 data sets and one-step perturbations of them, valid and invalid.
fn sample_tuples() -> Vec<DataSet> {
    let mut out = Vec::new();
    for d in enumerate(5, &Filters::default(), Exec::Sequential).unwrap() {
        for step in 0..4 {
            let mut v = d.clone();
            match &mut v {
                DataSet::Sp(x) => match step {
                    1 => x.a += 1,
                    2 => x.l += 1,
                    3 => x.cones[0].k += 1,
                    _ => {}
                },
                DataSet::Se(x) => match step {
                    1 => x.a += 1,
                    2 => x.l += 1,
                    3 => x.cones[0].k += 1,
                    _ => {}
                },
            }
            out.push(v);
        }
    }
    out
}

fn criterion_8() -> Check {
    let mut notes = Vec::new();

    // schedule independence
    for format in ["text", "json-lines", "csv"] {
        let runs: Vec<Vec<u8>> = [&["--jobs", "1"][..], &["--jobs", "4"], &[]]
            .iter()
            .map(|jobs| {
                let mut args = vec!["enumerate", "--genus", "10", "--format", format];
                args.extend_from_slice(jobs);
                fracpow(&args).stdout
            })
            .collect();
        if runs[0].is_empty() || runs.iter().any(|r| *r != runs[0]) {
            return Err(format!("{format} output depends on --jobs"));
        }
    }
    let a = fracpow(&["spectra", "--from", "19", "--to", "23", "--jobs", "1"]).stdout;
    let b = fracpow(&["spectra", "--from", "19", "--to", "23", "--jobs", "3"]).stdout;
    if a != b {
        return Err("spectra output depends on --jobs".into());
    }
    notes.push("identical bytes for --jobs 1, 4 and default".into());

    // serialization round trip
    let text = success(&fracpow(&["enumerate", "--genus", "7", "--format", "json-lines"]), "enumerate")?;
    let sets = json_sets(&text)?;
    for (d, line) in sets.iter().zip(text.lines()) {
        if serde_json::to_string(d).map_err(|e| e.to_string())? != line || d.canonicalize() != *d {
            return Err(format!("round trip changed {line}"));
        }
        let back = parse_data_set(&d.to_string(), Some(d.kind())).map_err(|e| e.to_string())?;
        if back != *d {
            return Err(format!("notation round trip changed {d}"));
        }
    }
    notes.push(format!("{} records round-trip through JSON and notation", sets.len()));

    // canonicalization idempotence and representative independence on valid sets
    let mut shifted = String::new();
    for (i, d) in sets.iter().enumerate() {
        let s = (i % 5) as i64 - 2;
        let variant = parse_data_set(&shifted_notation(d, s), Some(d.kind())).map_err(|e| e.to_string())?;
        if variant.canonicalize() != *d || variant.canonicalize().canonicalize() != variant.canonicalize() {
            return Err(format!("canonical form of {variant} is not {d}"));
        }
        writeln!(shifted, "{variant}").unwrap();
    }
    let o = fracpow_stdin(&["validate", "--format", "json-lines"], &shifted);
    let reports = success(&o, "validate shifted")?;
    if reports.lines().count() != sets.len() {
        return Err("validate dropped records".into());
    }
    for line in reports.lines() {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        if v["valid"] != true || v["genus"] != 7 {
            return Err(format!("shifted record rejected: {line}"));
        }
    }

    // representative independence on arbitrary tuples, valid or not
    let sample = sample_tuples();
    let plain: String = sample.iter().map(|d| format!("{d}\n")).collect();
    let moved: String =
        sample.iter().enumerate().map(|(i, d)| format!("{}\n", shifted_notation(d, (i % 3) as i64 + 1))).collect();
    let strip = |o: Output| -> Vec<(String, String, String)> {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                (v["valid"].to_string(), v["genus"].to_string(), v["failures"].to_string())
            })
            .collect()
    };
    let left = strip(fracpow_stdin(&["validate", "--format", "json-lines"], &plain));
    let right = strip(fracpow_stdin(&["validate", "--format", "json-lines"], &moved));
    if left.len() != sample.len() || left != right {
        return Err("validation depends on residue representatives".into());
    }
    let valid = left.iter().filter(|r| r.0 == "true").count();
    for d in &sample {
        let ok = match d {
            DataSet::Sp(x) => {
                canonicalize_sp(&canonicalize_sp(x)) == canonicalize_sp(x)
                    && validate_sp(&canonicalize_sp(x)) == validate_sp(x)
            }
            DataSet::Se(x) => {
                canonicalize_se(&canonicalize_se(x)) == canonicalize_se(x)
                    && validate_se(&canonicalize_se(x)) == validate_se(x)
            }
        };
        if !ok {
            return Err(format!("canonicalization not idempotent or not report-preserving on {d}"));
        }
    }
    notes.push(format!(
        "{} enumerated and {} sampled tuples ({valid} valid) keep their reports under shifts",
        sets.len(),
        sample.len()
    ));
    Ok(notes)
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "SP golden listing at genus 4", Some(Duration::from_secs(1)), criterion_1),
        (2, "SE reference listing at genus 4", Some(Duration::from_secs(1)), criterion_2),
        (3, "spectra for surface genus 20..30", Some(Duration::from_secs(60)), criterion_3),
        (4, "decomposition examples", None, criterion_4),
        (5, "families for g = 1..200", Some(Duration::from_secs(5)), criterion_5),
        (6, "oracle equivalence for g <= 8", Some(Duration::from_secs(120)), criterion_6),
        (7, "law audit for g <= 12", Some(Duration::from_secs(120)), criterion_7),
        (8, "property suite", None, criterion_8),
    ];
    let mut failed = 0;
    let mut summary: BTreeMap<u8, bool> = BTreeMap::new();
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (pass, details) = match result {
            Ok(notes) => match limit {
                Some(l) if elapsed > l => (false, vec![format!("took {elapsed:.2?}, limit {l:?}")]),
                _ => (true, notes),
            },
            Err(e) => (false, e.lines().map(String::from).collect()),
        };
        println!("criterion {n} {}: {name} ({elapsed:.2?})", if pass { "PASS" } else { "FAIL" });
        for d in details {
            println!("    {d}");
        }
        summary.insert(n, pass);
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", summary.len() - failed, summary.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
