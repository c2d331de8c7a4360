//! `fracpow`: enumerate, validate and decompose data sets of fractional powers
//! of a nonseparating Dehn twist.

mod render;

use std::collections::BTreeSet;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracpow::enumerate::{enumerate, enumerate_oracle, spectra_with, Exec, ORACLE_MAX_GENUS};
use fracpow::laws::audit;
use fracpow::notation::parse_data_set;
use fracpow::relations::{
    family_se_max, family_se_min, family_sp_4g, family_sp_top, se_power_decompose, sp_root_decompose,
};
use fracpow::{DataSet, EnumerateError, Exponent, Filters, Kind, KindFilter, RelationError};
use render::{AdjustmentLine, Format};
use thiserror::Error;

/// Largest genus accepted by range commands.
const MAX_RANGE_GENUS: i64 = 100;

#[derive(Debug, Parser)]
#[command(name = "fracpow", version, about = "Data sets of fractional powers of a nonseparating Dehn twist")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Sp,
    Se,
    Both,
}

impl KindArg {
    fn filter(self) -> KindFilter {
        match self {
            KindArg::Sp => KindFilter::Sp,
            KindArg::Se => KindFilter::Se,
            KindArg::Both => KindFilter::Both,
        }
    }

    fn single(self) -> Option<Kind> {
        match self {
            KindArg::Sp => Some(Kind::Sp),
            KindArg::Se => Some(Kind::Se),
            KindArg::Both => None,
        }
    }

    fn kinds(self) -> Vec<Kind> {
        [Kind::Sp, Kind::Se].into_iter().filter(|&k| self.filter().includes(k)).collect()
    }
}

#[derive(Debug, Args)]
struct GenusRange {
    /// Single genus (shorthand for --from G --to G).
    #[arg(long, conflicts_with_all = ["from", "to"])]
    genus: Option<i64>,
    #[arg(long)]
    from: Option<i64>,
    #[arg(long)]
    to: Option<i64>,
}

impl GenusRange {
    fn resolve(&self) -> Result<std::ops::RangeInclusive<i64>, CliError> {
        let from = self.genus.or(self.from).or(self.to);
        let to = self.genus.or(self.to).or(self.from);
        let (Some(from), Some(to)) = (from, to) else {
            return Err(CliError::Input("give --genus or --from/--to".into()));
        };
        if from < 1 || to < from || to > MAX_RANGE_GENUS {
            return Err(CliError::Input(format!("genus range {from}..={to} must lie within 1..={MAX_RANGE_GENUS}")));
        }
        Ok(from..=to)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate data sets read one per line (tuple notation or JSON).
    Validate {
        /// Input file; standard input when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
    /// List every canonical data set of a genus.
    Enumerate {
        #[arg(long)]
        genus: i64,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        /// Only essential data sets.
        #[arg(long)]
        essential: bool,
        /// Exponent written L/ORDER, unreduced.
        #[arg(long, value_name = "L/ORDER")]
        exponent: Option<Exponent>,
        #[arg(long)]
        g0: Option<i64>,
        /// Exact number of cone points.
        #[arg(long)]
        cones: Option<usize>,
        /// Cross-check against the brute-force enumerator.
        #[arg(long)]
        oracle: bool,
    },
    /// Exponent counts of essential data sets, per surface genus g + 1.
    Spectra {
        #[command(flatten)]
        range: GenusRange,
    },
    /// Decompose a data set: SP into a root power, SE into an r-th power.
    Decompose {
        record: String,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        #[arg(long)]
        r: Option<i64>,
    },
    /// The four explicit families at one genus.
    Families {
        #[arg(long)]
        genus: i64,
    },
    /// Check the bound and parity laws on every data set.
    Audit {
        #[command(flatten)]
        range: GenusRange,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RelationError> for CliError {
    fn from(e: RelationError) -> Self {
        CliError::Input(e.to_string())
    }
}

const EXIT_INVALID: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

/// Rendered output plus diagnostics for standard error.
struct Outcome {
    body: String,
    notes: Vec<String>,
    code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, notes: Vec::new(), code: 0 }
    }
}

fn exec(jobs: Option<u16>) -> Exec {
    jobs.map_or(Exec::Parallel, |j| Exec::Threads(j.into()))
}

fn parse_line(text: &str, kind: Option<Kind>) -> Result<DataSet, String> {
    if text.starts_with('{') {
        let d: DataSet = serde_json::from_str(text).map_err(|e| e.to_string())?;
        match kind {
            Some(k) if k != d.kind() => Err(format!("expected an {k} record, found {}", d.kind())),
            _ => Ok(d),
        }
    } else {
        parse_data_set(text, kind).map_err(|e| e.to_string())
    }
}

fn cmd_validate(input: Option<PathBuf>, kind: KindArg, format: Format) -> Result<Outcome, CliError> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let d = parse_line(line, kind.single()).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        let report = d.validate();
        rows.push((i + 1, d, report));
    }
    let invalid = rows.iter().filter(|(_, _, r)| !r.is_valid()).count();
    let mut out = Outcome::ok(render::validation(&rows, format));
    if invalid > 0 {
        out.code = EXIT_INVALID;
        out.notes.push(format!("{invalid} of {} records invalid", rows.len()));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    genus: i64,
    kind: KindArg,
    essential: bool,
    exponent: Option<Exponent>,
    g0: Option<i64>,
    cones: Option<usize>,
    oracle: bool,
    format: Format,
    exec: Exec,
) -> Result<Outcome, CliError> {
    let filters = Filters { kind: kind.filter(), essential_only: essential, exponent, g0, cone_count: cones };
    let sets = enumerate(genus, &filters, exec)?;
    let mut out = Outcome::ok(render::listing(&sets, format));
    if !oracle {
        return Ok(out);
    }
    if genus > ORACLE_MAX_GENUS {
        return Err(CliError::Input(format!("--oracle supports genus up to {ORACLE_MAX_GENUS}")));
    }
    let everything = Filters { kind: kind.filter(), ..Filters::default() };
    let pruned: BTreeSet<DataSet> = enumerate(genus, &everything, exec)?.into_iter().collect();
    let mut naive = BTreeSet::new();
    for k in kind.kinds() {
        naive.extend(enumerate_oracle(genus, k)?);
    }
    let missing: Vec<_> = naive.difference(&pruned).collect();
    let extra: Vec<_> = pruned.difference(&naive).collect();
    if missing.is_empty() && extra.is_empty() {
        out.notes.push(format!("oracle: {} data sets agree", pruned.len()));
    } else {
        out.code = EXIT_INCONSISTENT;
        out.notes.push(format!("oracle mismatch: {} missing, {} extra", missing.len(), extra.len()));
        out.notes.extend(missing.iter().map(|d| format!("missing {d}")));
        out.notes.extend(extra.iter().map(|d| format!("extra {d}")));
    }
    Ok(out)
}

fn cmd_spectra(range: &GenusRange, format: Format, exec: Exec) -> Result<Outcome, CliError> {
    let rows = range.resolve()?.map(|g| spectra_with(g, exec)).collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::ok(render::spectra(&rows, format)))
}

fn cmd_decompose(record: &str, kind: KindArg, r: Option<i64>, format: Format) -> Result<Outcome, CliError> {
    let d = parse_line(record.trim(), kind.single()).map_err(CliError::Input)?;
    match d {
        DataSet::Sp(d) => {
            if r.is_some() {
                return Err(CliError::Input("--r applies to SE data sets only".into()));
            }
            let root = DataSet::Sp(sp_root_decompose(&d)?);
            Ok(Outcome::ok(render::decomposition("exact", Some(&root), &[], format)))
        }
        DataSet::Se(d) => {
            let r = r.ok_or_else(|| CliError::Input("SE decomposition needs --r".into()))?;
            let res = se_power_decompose(&d, r)?;
            let adjustments: Vec<AdjustmentLine> = res
                .adjustments
                .iter()
                .map(|a| AdjustmentLine {
                    cone: d.cones[a.cone_index],
                    index: a.cone_index,
                    raw: a.raw_product,
                    chosen: a.chosen,
                })
                .collect();
            let result = res.result.map(DataSet::Se);
            let mut out =
                Outcome::ok(render::decomposition(&res.status.to_string(), result.as_ref(), &adjustments, format));
            if result.is_none() {
                out.code = EXIT_INVALID;
                out.notes.push(format!("no valid {r}-th power decomposition of {d}"));
            }
            Ok(out)
        }
    }
}

fn cmd_families(genus: i64, format: Format) -> Result<Outcome, CliError> {
    if genus < 1 {
        return Err(EnumerateError::BadGenus(genus).into());
    }
    let [top1, top2] = family_sp_top(genus);
    let [q1, q2] = family_sp_4g(genus);
    let sets: Vec<(&str, DataSet)> = vec![
        ("sp-top", top1.into()),
        ("sp-top", top2.into()),
        ("sp-4g", q1.into()),
        ("sp-4g", q2.into()),
        ("se-max", family_se_max(genus).into()),
        ("se-min", family_se_min(genus).into()),
    ];
    let rows: Vec<_> = sets
        .into_iter()
        .map(|(name, d)| {
            let r = d.validate();
            let essential = d.is_essential();
            (name, d, r, essential)
        })
        .collect();
    let mut out = Outcome::ok(render::families(&rows, format));
    for (name, d, r, essential) in &rows {
        if !r.is_valid() || r.genus != Some(genus) || !essential {
            out.code = EXIT_INCONSISTENT;
            out.notes.push(format!("family {name} at genus {genus} is broken: {d}  {r}"));
        }
    }
    Ok(out)
}

fn cmd_audit(range: &GenusRange, kind: KindArg, format: Format) -> Result<Outcome, CliError> {
    let mut summaries = Vec::new();
    for g in range.resolve()? {
        for k in kind.kinds() {
            summaries.push(audit(g, k)?);
        }
    }
    let mut out = Outcome::ok(render::audit(&summaries, format));
    let bad: usize = summaries.iter().map(|s| s.violations.len()).sum();
    if bad > 0 {
        out.code = EXIT_INCONSISTENT;
        out.notes.push(format!("{bad} law violations"));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let exec = exec(cli.jobs);
    let format = cli.format;
    match cli.command {
        Command::Validate { input, kind } => cmd_validate(input, kind, format),
        Command::Enumerate { genus, kind, essential, exponent, g0, cones, oracle } => {
            cmd_enumerate(genus, kind, essential, exponent, g0, cones, oracle, format, exec)
        }
        Command::Spectra { range } => cmd_spectra(&range, format, exec),
        Command::Decompose { record, kind, r } => cmd_decompose(&record, kind, r, format),
        Command::Families { genus } => cmd_families(genus, format),
        Command::Audit { range, kind } => cmd_audit(&range, kind, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let output = cli.output.clone();
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    ExitCode::from(outcome.code)
}
