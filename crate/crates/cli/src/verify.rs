use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use hyplab::verify::{family_names, run_suite, FamilyResult, SuiteOptions, DEFAULT_SEED};
use serde::Serialize;

use crate::output::{csv_writer, finish_csv, num, write_atomic};
use crate::Format;

pub const HELP: &str = "\
Output files, in the directory given by --out (default hyplab-report):
  summary.csv   one row per check: family,check,lhs,rhs,slack,tolerance,pass,notes
  summary.json  the same rows as a JSON array (with --format json)
  FAMILY.json   {\"family\", \"reports\": [{name, lhs, rhs, slack, pass, params, notes}]}
CSV files have a header row, ',' separators, '.' decimals and LF line endings.
Exit status: 0 when every check passes, 1 when any fails, 2 on usage errors.";

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run every family (the default).
    #[arg(long, conflicts_with = "only")]
    all: bool,
    /// Run only these families (repeat or separate with commas).
    #[arg(long, value_delimiter = ',', value_name = "NAME")]
    only: Vec<String>,
    /// Override the tolerance of every check in a family.
    #[arg(long = "tol", value_name = "NAME=V", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    /// Output directory.
    #[arg(long, default_value = "hyplab-report")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=V, got {s:?}"))?;
    let v: f64 = value.parse().map_err(|_| format!("tolerance {value:?} is not a number"))?;
    if !(v >= 0.0 && v.is_finite()) {
        return Err(format!("tolerance {v} must be finite and nonnegative"));
    }
    Ok((name.to_string(), v))
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    family: &'a str,
    check: &'a str,
    lhs: f64,
    rhs: f64,
    slack: f64,
    tolerance: f64,
    pass: bool,
    notes: &'a str,
}

fn summary_rows(results: &[FamilyResult]) -> Vec<SummaryRow<'_>> {
    results
        .iter()
        .flat_map(|f| {
            f.reports.iter().map(move |r| SummaryRow {
                family: &f.family,
                check: &r.name,
                lhs: r.lhs,
                rhs: r.rhs,
                slack: r.slack,
                tolerance: r.tolerance(),
                pass: r.pass,
                notes: &r.notes,
            })
        })
        .collect()
}

fn summary_csv(rows: &[SummaryRow]) -> Result<Vec<u8>, String> {
    let mut w = csv_writer();
    let header = ["family", "check", "lhs", "rhs", "slack", "tolerance", "pass", "notes"];
    w.write_record(header).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.check.to_string(),
            num(r.lhs),
            num(r.rhs),
            num(r.slack),
            num(r.tolerance),
            r.pass.to_string(),
            r.notes.to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    finish_csv(w)
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, String> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| e.to_string())?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Serialize)]
struct FamilyFile<'a> {
    family: &'a str,
    reports: &'a [hyplab::InequalityReport],
}

pub fn run(args: &VerifyArgs) -> Result<bool, String> {
    let only = if args.all || args.only.is_empty() { None } else { Some(args.only.clone()) };
    if let Some(list) = &only {
        let known = family_names();
        if let Some(bad) = list.iter().find(|n| !known.contains(&n.as_str())) {
            return Err(format!("unknown family {bad}; known: {}", known.join(", ")));
        }
    }
    let tolerances: BTreeMap<String, f64> = args.tolerances.iter().cloned().collect();
    let options = SuiteOptions { seed: args.seed, only, tolerances };
    let results = run_suite(&options).map_err(|e| e.to_string())?;

    let rows = summary_rows(&results);
    let summary = match args.format {
        Format::Csv => ("summary.csv", summary_csv(&rows)?),
        Format::Json => ("summary.json", to_json(&rows)?),
    };
    write_atomic(&args.out.join(summary.0), &summary.1)?;
    for f in &results {
        let file = FamilyFile { family: &f.family, reports: &f.reports };
        write_atomic(&args.out.join(format!("{}.json", f.family)), &to_json(&file)?)?;
    }

    let mut all_pass = true;
    for f in &results {
        let status = if f.pass() { "PASS" } else { "FAIL" };
        println!("{status} {:<20} {:>3} checks {:>8.2}s", f.family, f.reports.len(), f.seconds);
        all_pass &= f.pass();
    }
    let failures: Vec<&SummaryRow> = rows.iter().filter(|r| !r.pass).collect();
    for r in &failures {
        eprintln!(
            "failed: {}/{}: lhs {} rhs {} slack {} {}",
            r.family,
            r.check,
            num(r.lhs),
            num(r.rhs),
            num(r.slack),
            r.notes
        );
    }
    println!(
        "{} of {} checks passed; reports in {}",
        rows.len() - failures.len(),
        rows.len(),
        args.out.display()
    );
    Ok(all_pass)
}
