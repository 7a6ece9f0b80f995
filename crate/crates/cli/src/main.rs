//! `prym`: certificates, parameter scans and invariant tables for the Prym
//! varieties of `y^p = x·u(x²)`, `u = x^m - x - c`, `m = pr - 1`.
//!
//! Exit codes: 0 deterministic verdict, 1 refuted (or a certificate that does not
//! replay), 2 probabilistic or inconclusive, 3 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use prym_core::galoiscert::{
    certify_prym, certify_wdm_over_q, chebotarev_verdict, replay, Certificate, CertifyConfig, ChebotarevOutcome,
    Verdict,
};
use prym_core::intpoly::{condition_p_r, IntPoly};
use prym_core::primes::odd_primes_up_to;
use prym_core::prymcalc::{
    dim_prym, genus_curve, multiplicities_coprime, multiplicities_distinct, multiplicity_table,
    non_jacobian_inequality, FamilyParams,
};
use prym_core::GroupDescriptor;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_DETERMINISTIC: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "prym", version, about = "Certify Galois groups and Prym invariants for x^m - x - c families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for (p, r) and write its certificate
    Verify(VerifyArgs),
    /// Tabulate the descent conditions over a range of (p, r)
    Scan(ScanArgs),
    /// Certify or sample the Galois group of a polynomial
    Galois(GaloisArgs),
    /// Print genus, dimension and multiplicity data for (p, r)
    Invariants(InvariantArgs),
    /// Recompute every leaf of a certificate file and re-run its invocation
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Sampling {
    /// Number of unramified primes to sample
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    /// Seed for subsampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep a seeded random subset of this many sampled primes
    #[arg(long)]
    subsample: Option<usize>,
    /// Largest prime tried when looking for irreducibility or Jordan witnesses
    #[arg(long, default_value_t = 500)]
    prime_budget: u64,
}

impl Sampling {
    fn config(&self) -> CertifyConfig {
        CertifyConfig {
            samples: self.samples,
            seed: self.seed,
            prime_budget: self.prime_budget,
            subsample: self.subsample,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the JSON result here as well
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    c: i64,
    #[command(flatten)]
    sampling: Sampling,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    p_max: u64,
    #[arg(long)]
    r_max: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Certify,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// W(D_m)
    Wdm,
    /// 2^m·S_m
    Hyperoctahedral,
    /// (Z/2)^m
    Em,
    /// Even sign changes in (Z/2)^m
    Em0,
}

#[derive(Args)]
struct GaloisArgs {
    /// Polynomial h of even degree 2m, e.g. "x^6-x^2-1"
    #[arg(long, conflicts_with = "m")]
    poly: Option<String>,
    /// Use h = u(x^2) with u = x^m - x - c
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    c: i64,
    #[arg(long, value_enum, default_value = "certify")]
    mode: Mode,
    /// Group the sampled cycle types are tested against
    #[arg(long, value_enum, default_value = "wdm")]
    target: Target,
    #[command(flatten)]
    sampling: Sampling,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct InvariantArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ReplayArgs {
    /// Certificate JSON file
    file: PathBuf,
    #[command(flatten)]
    out: Output,
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    bail!(msg.into())
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Deterministic => EXIT_DETERMINISTIC,
        Verdict::Refuted { .. } => EXIT_REFUTED,
        Verdict::Probabilistic { .. } | Verdict::Inconclusive { .. } => EXIT_UNDECIDED,
    }
}

/// Indented plain-text rendering of a JSON value.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object() || e.is_array())) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        x => x.to_string(),
    }
}

fn emit(value: &Value, out: &Output) -> Result<()> {
    let pretty = serde_json::to_string_pretty(value)?;
    if let Some(path) = &out.output {
        fs::write(path, format!("{pretty}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    match out.format {
        Format::Json => println!("{pretty}"),
        Format::Text => {
            let mut s = String::new();
            render_text(value, 0, &mut s);
            print!("{s}");
        }
        Format::Csv => usage("csv output is only available for scan")?,
    }
    Ok(())
}

fn check_family(p: u64, r: u64, c: i64) -> Result<FamilyParams> {
    FamilyParams::new(p, r, c).or_else(|e| usage(e.to_string()))
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8> {
    check_family(a.p, a.r, a.c)?;
    if a.out.format == Format::Csv {
        return usage("csv output is only available for scan");
    }
    let cert = certify_prym(a.p, a.r, a.c, &a.sampling.config())?;
    emit(&serde_json::to_value(&cert)?, &a.out)?;
    Ok(verdict_code(&cert.verdict))
}

#[derive(Serialize)]
struct ScanRow {
    p: u64,
    r: u64,
    m: u64,
    /// r ≡ 2 mod (p-1)
    cond1: bool,
    /// 2^(r-2) < p-1
    cond2: bool,
    /// p ∤ 1 + 2^(r-2)
    cond3: bool,
    det_eligible: bool,
    dim_prym: u64,
}

fn cmd_scan(a: &ScanArgs) -> Result<u8> {
    if a.p_max < 2 || a.r_max < 2 {
        return usage("p-max and r-max must be at least 2");
    }
    let cells: Vec<(u64, u64)> = odd_primes_up_to(a.p_max)
        .into_iter()
        .flat_map(|p| (2..=a.r_max).step_by(2).map(move |r| (p, r)))
        .collect();
    let rows: Vec<ScanRow> = cells
        .par_iter()
        .map(|&(p, r)| {
            let cond = condition_p_r(p, r)?;
            let m = p * r - 1;
            Ok(ScanRow {
                p,
                r,
                m,
                cond1: cond.shortcut_congruence,
                cond2: cond.shortcut_small_r,
                cond3: cond.pass,
                det_eligible: m >= 9,
                dim_prym: dim_prym(p, m),
            })
        })
        .collect::<Result<_>>()?;
    if a.out.format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &rows {
            w.serialize(row)?;
        }
        let text = String::from_utf8(w.into_inner()?)?;
        if let Some(path) = &a.out.output {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        }
        print!("{text}");
    } else {
        emit(&serde_json::to_value(&rows)?, &a.out)?;
    }
    Ok(EXIT_DETERMINISTIC)
}

fn target_group(t: Target, m: usize) -> GroupDescriptor {
    match t {
        Target::Wdm => GroupDescriptor::WDm { m },
        Target::Hyperoctahedral => {
            let long: Vec<usize> = (1..=m).map(|i| i % m + 1).collect();
            let mut swap: Vec<usize> = (1..=m).collect();
            if m > 1 {
                swap.swap(0, 1);
            }
            GroupDescriptor::TwoMG { m, generators: vec![long, swap] }
        }
        Target::Em => GroupDescriptor::Em { m },
        Target::Em0 => GroupDescriptor::Em0 { m },
    }
}

/// `(m, c)` when `h = x^(2m) - x^2 - c`.
fn family_form(h: &IntPoly) -> Option<(u64, i64)> {
    let u = h.even_part_root()?;
    let m = u.degree()?;
    let c = i64::try_from(-u.coeff(0)).ok()?;
    (m >= 3 && u == IntPoly::trinomial(m, c)).then_some((m as u64, c))
}

fn cmd_galois(a: &GaloisArgs) -> Result<u8> {
    if a.out.format == Format::Csv {
        return usage("csv output is only available for scan");
    }
    let h = match (&a.poly, a.m) {
        (Some(s), None) => s.parse::<IntPoly>().or_else(|e| usage(format!("cannot parse {s:?}: {e}")))?,
        (None, Some(m)) if m >= 3 => IntPoly::trinomial(m as usize, a.c).compose_x2(),
        (None, Some(m)) => return usage(format!("m must be at least 3, got {m}")),
        _ => return usage("give either --poly or --m"),
    };
    match a.mode {
        Mode::Certify => {
            let Some((m, c)) = family_form(&h) else {
                return usage(format!("certify mode needs h = x^(2m) - x^2 - c, got {h}"));
            };
            let cert = certify_wdm_over_q(m, c, &a.sampling.config())?;
            emit(&serde_json::to_value(&cert)?, &a.out)?;
            Ok(verdict_code(&cert.verdict))
        }
        Mode::Sample => {
            let Some(d) = h.degree().filter(|d| d % 2 == 0 && *d >= 2) else {
                return usage(format!("sampling needs a polynomial of positive even degree, got {h}"));
            };
            let target = target_group(a.target, d / 2);
            let outcome = chebotarev_verdict(&h, &target, &a.sampling.config().sampling())?;
            let code = match outcome {
                ChebotarevOutcome::Refuted { .. } => EXIT_REFUTED,
                ChebotarevOutcome::ConsistentWith { .. } => EXIT_UNDECIDED,
            };
            emit(&json!({ "polynomial": h, "report": outcome }), &a.out)?;
            Ok(code)
        }
    }
}

fn cmd_invariants(a: &InvariantArgs) -> Result<u8> {
    let fam = check_family(a.p, a.r, 1)?;
    let (p, r) = (a.p, a.r);
    let table = multiplicity_table(p, r)?;
    let coprime = multiplicities_coprime(p, r)?;
    let mut report = json!({
        "p": p,
        "r": r,
        "m": fam.m,
        "n": fam.n,
        "genus": genus_curve(fam.n, p)?,
        "dim_prym": dim_prym(p, fam.m),
        "multiplicities": table,
        "gcd": table.gcd(),
        "coprime": coprime,
        "distinct": multiplicities_distinct(p, r)?,
        "non_jacobian_inequality": non_jacobian_inequality(p, r)?,
    });
    if r % 2 == 1 && !coprime {
        report["note"] = json!("r odd: coprimality fails");
    }
    emit(&report, &a.out)?;
    Ok(EXIT_DETERMINISTIC)
}

fn cmd_replay(a: &ReplayArgs) -> Result<u8> {
    let text = fs::read_to_string(&a.file).or_else(|e| usage(format!("cannot read {}: {e}", a.file.display())))?;
    let cert = Certificate::from_json(&text).or_else(|e| usage(e.to_string()))?;
    let report = replay(&cert)?;
    emit(&serde_json::to_value(&report)?, &a.out)?;
    if !report.ok() {
        eprintln!("certificate does not replay");
        return Ok(EXIT_REFUTED);
    }
    Ok(verdict_code(&report.verdict))
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Galois(a) => cmd_galois(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Replay(a) => cmd_replay(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
