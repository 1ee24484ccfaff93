//! The `srnt` command line.
//!
//! Exit status: 0 on success (and for feasible pairs / certified graphs), 1 for
//! an infeasible pair or a rejected graph, 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{format_rational, Int, Rational};
use crate::bounds::{theorem7_bounds, BoundsReport};
use crate::enumeration::{
    emit_catalog, feasible_c_for_q, feasible_q_for_c, CSelector, CatalogRecord, CatalogRequest,
    Format, IntRange, JsonInt, JsonRational,
};
use crate::error::{Error, Result};
use crate::families::family_catalog;
use crate::feasibility::{check, FeasibilityVerdict};
use crate::graphcheck::{
    fixture, parse_edge_list, second_subconstituent, spectral_trace_check, verify_srnt, Rejection,
    SrntCertificate,
};
use crate::params::ParamPair;
use crate::subconstituent::{power_sums, subconstituent_spectrum, SubconstituentSpectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "srnt", version, about = "Exact parameter feasibility for triangle-free strongly regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide feasibility of (q, c) with diagnostics
    Check {
        q: Int,
        c: Int,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// All feasible q for a given c
    EnumQ {
        #[arg(long)]
        c: Int,
        /// Required for c in {2, 4, 6}
        #[arg(long)]
        limit: Option<Int>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// All feasible c for a given q
    EnumC {
        #[arg(long)]
        q: Int,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Vertex-count bounds for a given q
    Bounds {
        #[arg(long)]
        q: Int,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Second-subconstituent spectrum and power sums
    Subconstituent {
        q: Int,
        c: Int,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stream records for a grid of pairs
    Catalog {
        /// q range, `A..B` inclusive
        #[arg(long)]
        q: IntRange,
        /// c range, `A..B` inclusive
        #[arg(long, required_unless_present = "family", conflicts_with = "family")]
        c: Option<IntRange>,
        /// take c from a named family rule instead of a range
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        feasible_only: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// worker threads (0 = all cores)
        #[arg(long, env = "SRNT_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Certify an edge-list graph file (or a built-in fixture)
    VerifyGraph {
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        /// base vertex for the second-subconstituent check
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Family rules, optionally those matching a q or a c
    Families {
        #[arg(long, conflicts_with = "c")]
        q: Option<Int>,
        #[arg(long)]
        c: Option<Int>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check { q, c, format } => cmd_check(q, c, format, out),
        Command::EnumQ { c, limit, format } => {
            let qs = feasible_q_for_c(&c, limit.as_ref())?;
            write_list(out, format, ("c", &c), "q", &qs)?;
            Ok(EXIT_OK)
        }
        Command::EnumC { q, format } => {
            let cs = feasible_c_for_q(&q)?;
            write_list(out, format, ("q", &q), "c", &cs)?;
            Ok(EXIT_OK)
        }
        Command::Bounds { q, format } => {
            let report = theorem7_bounds(&q)?;
            write_bounds(out, format, &report)?;
            Ok(EXIT_OK)
        }
        Command::Subconstituent { q, c, format } => {
            let spec = subconstituent_spectrum(&ParamPair::new(q, c)?)?;
            write_subconstituent(out, format, &spec)?;
            Ok(EXIT_OK)
        }
        Command::Catalog {
            q,
            c,
            family,
            feasible_only,
            format,
            jobs,
        } => {
            let c_selector = match (c, family) {
                (Some(range), None) => CSelector::Range(range),
                (None, Some(name)) => CSelector::family(&name)?,
                _ => return Err(Error::domain("give exactly one of --c and --family")),
            };
            let req = CatalogRequest {
                q_range: q,
                c_selector,
                feasible_only,
                format,
                jobs,
            };
            emit_catalog(&req, &mut *out)?;
            Ok(EXIT_OK)
        }
        Command::VerifyGraph {
            file,
            fixture: name,
            vertex,
        } => {
            let graph = match (file, name) {
                (Some(path), None) => parse_edge_list(&fs::read_to_string(path)?)?,
                (None, Some(name)) => fixture(&name)?,
                _ => return Err(Error::domain("give exactly one of FILE and --fixture")),
            };
            let report = verification_report(&graph, vertex)?;
            let certified = report["status"] == "certificate";
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
            Ok(if certified { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Families { q, c } => {
            write_families(out, q.as_ref(), c.as_ref())?;
            Ok(EXIT_OK)
        }
    }
}

#[derive(Serialize)]
struct CheckReport<'a> {
    #[serde(flatten)]
    record: &'a CatalogRecord,
    in_range: bool,
    alpha_integral: bool,
    beta_integral: bool,
    parity_match: bool,
    alpha: JsonRational<'a>,
    beta: JsonRational<'a>,
}

fn cmd_check(q: Int, c: Int, format: Format, out: &mut dyn Write) -> Result<i32> {
    let pair = ParamPair::new(q, c)?;
    let verdict = check(&pair);
    let record = CatalogRecord::from_pair(&pair);
    match format {
        Format::Text => write_check_text(out, &verdict, &record)?,
        Format::Jsonl => {
            let report = CheckReport {
                record: &record,
                in_range: verdict.in_range,
                alpha_integral: verdict.alpha_integral,
                beta_integral: verdict.beta_integral,
                parity_match: verdict.parity_match,
                alpha: JsonRational(&verdict.alpha),
                beta: JsonRational(&verdict.beta),
            };
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header: Vec<&str> = CatalogRecord::COLUMNS.to_vec();
            header.extend(["alpha", "beta"]);
            w.write_record(&header)?;
            let mut row: Vec<String> = vec![
                record.q.to_string(),
                record.c.to_string(),
                record.k.to_string(),
                record.s.to_string(),
                record.lambda1.to_string(),
                record.lambda2.to_string(),
                format_rational(&record.m1),
                format_rational(&record.m2),
                format_rational(&record.n),
                record.feasible.to_string(),
                verdict
                    .first_failed()
                    .map(|c| c.name().to_string())
                    .unwrap_or_default(),
            ];
            row.extend([format_rational(&verdict.alpha), format_rational(&verdict.beta)]);
            w.write_record(&row)?;
            w.flush()?;
        }
    }
    Ok(if verdict.feasible { EXIT_OK } else { EXIT_NEGATIVE })
}

fn write_check_text(
    out: &mut dyn Write,
    verdict: &FeasibilityVerdict,
    record: &CatalogRecord,
) -> Result<()> {
    match verdict.first_failed() {
        None => writeln!(out, "{}: feasible", verdict.pair)?,
        Some(cond) => writeln!(out, "{}: infeasible ({cond})", verdict.pair)?,
    }
    writeln!(
        out,
        "k={} s={} lambda1={} lambda2={} m1={} m2={} n={}",
        record.k,
        record.s,
        record.lambda1,
        record.lambda2,
        format_rational(&record.m1),
        format_rational(&record.m2),
        format_rational(&record.n)
    )?;
    writeln!(
        out,
        "alpha={} beta={} in_range={} alpha_integral={} beta_integral={} parity_match={}",
        format_rational(&verdict.alpha),
        format_rational(&verdict.beta),
        verdict.in_range,
        verdict.alpha_integral,
        verdict.beta_integral,
        verdict.parity_match
    )?;
    Ok(())
}

fn write_list(
    out: &mut dyn Write,
    format: Format,
    given: (&str, &Int),
    key: &str,
    values: &[Int],
) -> Result<()> {
    match format {
        Format::Text => {
            let line: Vec<String> = values.iter().map(Int::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Format::Jsonl => {
            let list: Vec<JsonInt> = values.iter().map(JsonInt).collect();
            let mut obj = serde_json::Map::new();
            obj.insert(given.0.to_string(), serde_json::to_value(JsonInt(given.1))?);
            obj.insert(key.to_string(), serde_json::to_value(list)?);
            serde_json::to_writer(&mut *out, &obj)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([given.0, key])?;
            for v in values {
                w.write_record([given.1.to_string(), v.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_bounds(out: &mut dyn Write, format: Format, r: &BoundsReport) -> Result<()> {
    let regime = serde_json::to_value(r.regime)?;
    let regime = regime.as_str().unwrap_or_default().to_string();
    match format {
        Format::Text => writeln!(
            out,
            "q={} lower={} (c={}) upper={} (c={}) regime={}",
            r.q, r.lower, r.c_at_lower, r.upper, r.c_at_upper, regime
        )?,
        Format::Jsonl => {
            let obj = json!({
                "q": serde_json::to_value(JsonInt(&r.q))?,
                "lower": serde_json::to_value(JsonInt(&r.lower))?,
                "upper": serde_json::to_value(JsonInt(&r.upper))?,
                "c_at_lower": serde_json::to_value(JsonInt(&r.c_at_lower))?,
                "c_at_upper": serde_json::to_value(JsonInt(&r.c_at_upper))?,
                "regime": regime,
            });
            serde_json::to_writer(&mut *out, &obj)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["q", "lower", "upper", "c_at_lower", "c_at_upper", "regime"])?;
            w.write_record([
                r.q.to_string(),
                r.lower.to_string(),
                r.upper.to_string(),
                r.c_at_lower.to_string(),
                r.c_at_upper.to_string(),
                regime,
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn rationals_json(values: &[Rational]) -> Result<Value> {
    let list: Vec<JsonRational> = values.iter().map(JsonRational).collect();
    Ok(serde_json::to_value(list)?)
}

fn write_subconstituent(
    out: &mut dyn Write,
    format: Format,
    spec: &SubconstituentSpectrum,
) -> Result<()> {
    let sums = power_sums(spec);
    let fmt_all = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    let eigs = spec.eigs.iter().map(Int::to_string).collect::<Vec<_>>().join(" ");
    match format {
        Format::Text => {
            writeln!(out, "{}", spec.pair)?;
            writeln!(out, "ell={} degree={}", format_rational(&spec.ell), spec.degree)?;
            writeln!(out, "eigenvalues={eigs}")?;
            writeln!(out, "multiplicities={}", fmt_all(&spec.mults))?;
            writeln!(out, "power_sums={}", fmt_all(&sums))?;
            writeln!(out, "k2={}", format_rational(&spec.k2))?;
        }
        Format::Jsonl => {
            let eig_values: Vec<JsonInt> = spec.eigs.iter().map(JsonInt).collect();
            let obj = json!({
                "q": serde_json::to_value(JsonInt(spec.pair.q()))?,
                "c": serde_json::to_value(JsonInt(spec.pair.c()))?,
                "ell": serde_json::to_value(JsonRational(&spec.ell))?,
                "degree": serde_json::to_value(JsonInt(&spec.degree))?,
                "eigenvalues": serde_json::to_value(eig_values)?,
                "multiplicities": rationals_json(&spec.mults)?,
                "power_sums": rationals_json(&sums)?,
                "k2": serde_json::to_value(JsonRational(&spec.k2))?,
            });
            serde_json::to_writer(&mut *out, &obj)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "q", "c", "ell", "degree", "e0", "e1", "e2", "e3", "m0", "x", "y", "z", "s0", "s1",
                "s2", "s3", "k2",
            ])?;
            let mut row = vec![
                spec.pair.q().to_string(),
                spec.pair.c().to_string(),
                format_rational(&spec.ell),
                spec.degree.to_string(),
            ];
            row.extend(spec.eigs.iter().map(Int::to_string));
            row.extend(spec.mults.iter().map(format_rational));
            row.extend(sums.iter().map(format_rational));
            row.push(format_rational(&spec.k2));
            w.write_record(&row)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn certificate_json(cert: &SrntCertificate) -> Result<Value> {
    Ok(json!({
        "status": "certificate",
        "k": serde_json::to_value(JsonInt(&cert.k))?,
        "c": serde_json::to_value(JsonInt(&cert.c))?,
        "q": serde_json::to_value(JsonInt(&cert.q))?,
        "s": serde_json::to_value(JsonInt(&cert.s))?,
        "n": serde_json::to_value(JsonInt(&cert.n))?,
    }))
}

fn rejection_json(r: &Rejection) -> Value {
    json!({
        "status": "rejection",
        "axiom": r.axiom,
        "witness": r.witness,
        "detail": r.detail,
    })
}

/// The single JSON object printed by `verify-graph`. Certified graphs also get
/// their second subconstituent at `vertex` checked.
pub fn verification_report(graph: &crate::graphcheck::Graph, vertex: usize) -> Result<Value> {
    let cert = match verify_srnt(graph) {
        Ok(cert) => cert,
        Err(r) => return Ok(rejection_json(&r)),
    };
    let mut report = certificate_json(&cert)?;
    let x2 = second_subconstituent(graph, vertex)?;
    let spec = subconstituent_spectrum(&cert.matched_pair)?;
    let x2_srnt = verify_srnt(&x2).is_ok();
    report["subconstituent"] = json!({
        "vertex": vertex,
        "order": x2.order(),
        "degree": x2.degree(0),
        "connected": x2.is_connected(),
        "trace_check": spectral_trace_check(&x2, &spec)?,
        "srnt": x2_srnt,
    });
    Ok(report)
}

/// Text listing for `families`: all rules, or those with members at a given
/// `q` (with their `c`), or those containing a given `c` (with the smallest `q`).
fn write_families(out: &mut dyn Write, q: Option<&Int>, c: Option<&Int>) -> Result<()> {
    for rule in family_catalog() {
        match (q, c) {
            (Some(q), _) => {
                let cs = rule.generate(q, None);
                if !cs.is_empty() {
                    let cs: Vec<String> = cs.iter().map(Int::to_string).collect();
                    writeln!(out, "{}: c={}", rule.name, cs.join(" "))?;
                }
            }
            (None, Some(c)) => {
                if let Some(q) = rule.witness_q(c) {
                    writeln!(out, "{}: q={}", rule.name, q)?;
                }
            }
            (None, None) => writeln!(out, "{}\t{}", rule.name, rule.parameter_binding)?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("srnt").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_feasible() {
        let (code, out, _) = run_cli(&["check", "2", "1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("(q=2, c=1): feasible"));
        assert!(out.contains("k=7 ") && out.contains("n=50"));
    }

    #[test]
    fn check_infeasible() {
        let (code, out, _) = run_cli(&["check", "3", "2"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("(q=3, c=2): infeasible (parity)"));
    }

    #[test]
    fn check_usage_errors() {
        assert_eq!(run_cli(&["check", "0", "1"]).0, 2);
        assert_eq!(run_cli(&["check", "x", "1"]).0, 2);
        assert_eq!(run_cli(&["frobnicate"]).0, 2);
        assert_eq!(run_cli(&["--help"]).0, 0);
    }

    #[test]
    fn check_jsonl() {
        let (_, out, _) = run_cli(&["check", "19", "18", "--format", "jsonl"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["alpha"].to_string(), "7220");
        assert_eq!(v["beta"].to_string(), "3135");
        assert_eq!(v["parity_match"], false);
        assert_eq!(v["first_failed_condition"], "parity");
    }

    #[test]
    fn enum_q() {
        let (code, out, _) = run_cli(&["enum-q", "--c", "7"]);
        assert_eq!((code, out.as_str()), (0, "7 14 49\n"));

        let (code, _, err) = run_cli(&["enum-q", "--c", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("explicit limit"));

        let (code, out, _) = run_cli(&["enum-q", "--c", "4", "--limit", "5"]);
        assert_eq!((code, out.as_str()), (0, "2 3 4 5\n"));
    }

    #[test]
    fn enum_c_and_bounds() {
        assert_eq!(run_cli(&["enum-c", "--q", "2"]).1, "1 2 4 6\n");
        let (_, out, _) = run_cli(&["bounds", "--q", "4"]);
        assert_eq!(out, "q=4 lower=352 (c=2) upper=784 (c=20) regime=q-minus-two\n");
        let (_, out, _) = run_cli(&["bounds", "--q", "3", "--format", "jsonl"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["lower"].to_string(), "162");
    }

    #[test]
    fn subconstituent_text() {
        let (code, out, _) = run_cli(&["subconstituent", "1", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("ell=6 degree=2"));
        assert!(out.contains("multiplicities=1 2 2 1"));
        assert!(out.contains("power_sums=6 0 12 0"));
        assert_eq!(run_cli(&["subconstituent", "1", "5"]).0, 2);
    }

    #[test]
    fn catalog_requires_one_selector() {
        assert_eq!(run_cli(&["catalog", "--q", "1..2"]).0, 2);
        assert_eq!(
            run_cli(&["catalog", "--q", "1..2", "--c", "1..2", "--family", "c=q"]).0,
            2
        );
        assert_eq!(run_cli(&["catalog", "--q", "2..1", "--c", "1..2"]).0, 2);
        assert_eq!(run_cli(&["catalog", "--q", "1..2", "--family", "nope"]).0, 2);
    }

    #[test]
    fn verify_fixture() {
        let (code, out, _) = run_cli(&["verify-graph", "--fixture", "clebsch"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["k"].to_string(), "5");
        assert_eq!(v["subconstituent"]["srnt"], true);
        assert_eq!(run_cli(&["verify-graph", "--fixture", "nope"]).0, 2);
    }

    #[test]
    fn families_listing() {
        let (_, out, _) = run_cli(&["families"]);
        assert_eq!(out.lines().count(), 10);
        let (_, out, _) = run_cli(&["families", "--q", "4"]);
        assert!(out.contains("c=q(q-1)/2: c=6\n"));
        assert!(out.contains("c=4: c=4\n"));
        let (_, out, _) = run_cli(&["families", "--c", "10"]);
        assert!(out.contains("c=q(q-1)/2: q=5\n"));
    }
}
