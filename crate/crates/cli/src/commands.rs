use std::path::Path;

use ajcable_core::aj::{build_annihilator, cabled_a_polynomial, evaluate_annihilator_at_minus1};
use ajcable_core::degrees::{audit_degrees, DegreeAudit};
use ajcable_core::grid::{default_grid, parse_grid};
use ajcable_core::jones::{cabled_jones, torus_jones, CablingParams};
use ajcable_core::minimality::{default_bounds, search_bounded_annihilator, SearchBounds, SearchReport, Verdict};
use ajcable_core::pipeline::{verify_tuple, TupleReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{CableArgs, Format, TorusArgs};

pub const NOT_APPLICABLE: &str = "r strictly between 0 and pqs: theorem minimality claim not applicable";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Params(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

type CliResult = Result<Outcome, CliError>;

fn params_error(e: impl std::fmt::Display) -> CliError {
    CliError::Params(e.to_string())
}

fn cable(args: CableArgs) -> Result<CablingParams, CliError> {
    CablingParams::new(args.p, args.q, args.r, args.s).map_err(params_error)
}

fn warn_if_not_applicable(params: &CablingParams) {
    if !params.theorem_applies() {
        eprintln!("warning: {NOT_APPLICABLE}");
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// `{"meta": ..., "results": [...]}` with sorted keys.
fn emit_json(command: &str, results: Vec<Value>) {
    let doc = json!({
        "meta": {
            "tool": "ajcable",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
        },
        "results": results,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn jones_torus(args: TorusArgs, n: i64, format: Format) -> CliResult {
    let poly = torus_jones(args.p, args.q, n).map_err(params_error)?;
    match format {
        Format::Text => println!("{}", poly.to_text("t")),
        Format::Json => emit_json(
            "jones torus",
            vec![json!({ "p": args.p, "q": args.q, "n": n, "polynomial": poly.to_text("t") })],
        ),
    }
    Ok(Outcome::Pass)
}

pub fn jones_cable(args: CableArgs, n: i64, format: Format) -> CliResult {
    let params = cable(args)?;
    let poly = cabled_jones(&params, n);
    match format {
        Format::Text => println!("{}", poly.to_text("t")),
        Format::Json => {
            emit_json("jones cable", vec![json!({ "params": to_value(&params), "n": n, "polynomial": poly.to_text("t") })])
        }
    }
    Ok(Outcome::Pass)
}

pub fn apoly(args: CableArgs, format: Format) -> CliResult {
    let params = cable(args)?;
    let a = cabled_a_polynomial(&params).map_err(params_error)?;
    match format {
        Format::Text => println!("{}", a.to_text()),
        Format::Json => emit_json(
            "apoly",
            vec![json!({ "params": to_value(&params), "L_degree": a.degree(), "a_polynomial": a.to_text() })],
        ),
    }
    Ok(Outcome::Pass)
}

pub fn annihilator(args: CableArgs, at_minus1: bool, format: Format) -> CliResult {
    let params = cable(args)?;
    let bundle = build_annihilator(&params).map_err(params_error)?;
    let evaluated = if at_minus1 {
        Some(evaluate_annihilator_at_minus1(&bundle).map_err(params_error)?)
    } else {
        None
    };
    match format {
        Format::Text => {
            println!("{params}: case {}, L-degree {}", bundle.case_tag.as_str(), bundle.l_degree());
            match &evaluated {
                Some(at) => println!("P(-1, M, L) ~ {}", at.monic().to_text()),
                None => println!("P = {}", bundle.p.to_text()),
            }
        }
        Format::Json => {
            let mut record = json!({
                "params": to_value(&params),
                "case_tag": to_value(&bundle.case_tag),
                "L_degree": bundle.l_degree(),
                "factors": bundle.factors.iter().map(|f| f.to_text()).collect::<Vec<_>>(),
                "P": bundle.p.to_text(),
            });
            if let Some(at) = evaluated {
                record["P_at_minus1"] = Value::String(at.to_text());
                record["P_at_minus1_monic"] = Value::String(at.monic().to_text());
            }
            emit_json("annihilator", vec![record]);
        }
    }
    Ok(Outcome::Pass)
}

fn verify_text(r: &TupleReport) {
    let ids_ok = r.identities.iter().filter(|i| i.passed).count();
    println!("{}: case {}, L-degree {}", r.params, r.case_tag.as_str(), r.l_degree);
    println!("  identities    {} ({}/{})", mark(r.identities_ok), ids_ok, r.identities.len());
    for id in r.identities.iter().filter(|i| !i.passed) {
        println!("    {} fails at n = {:?}", id.id, id.first_failure);
    }
    println!("  annihilation  {} (n = 1..{})", mark(r.annihilates), r.n_checked);
    println!("  AJ match      {}", mark(r.aj_match));
    println!("  b(-1, M)      {}", r.b_at_minus1);
    println!("  closed forms  {}", mark(r.determinant_ok));
    println!("  degrees       {} ({} sides)", mark(r.degrees_ok), r.degrees_checked);
    if !r.theorem_applies {
        println!("  ({NOT_APPLICABLE}; verdict uses annihilation only)");
    }
    println!("verdict: {}", mark(r.passed));
}

pub fn verify(args: CableArgs, nmax: i64, format: Format) -> CliResult {
    let params = cable(args)?;
    if nmax < 2 {
        return Err(CliError::Params("--nmax must be at least 2".into()));
    }
    warn_if_not_applicable(&params);
    let report = verify_tuple(&params, nmax).map_err(params_error)?;
    match format {
        Format::Text => verify_text(&report),
        Format::Json => emit_json("verify", vec![to_value(&report)]),
    }
    Ok(Outcome::from_bool(report.passed))
}

fn degrees_text(a: &DegreeAudit) {
    println!("{}: {} sides checked, {} without a formula", a.params, a.checked, a.unpredicted);
    for m in a.mismatches() {
        println!("  {:?} n={} {:?}: predicted {} actual {}", m.knot, m.n, m.side, m.predicted, m.actual);
    }
    println!("verdict: {}", mark(a.passed));
}

pub fn degrees(args: CableArgs, nmax: i64, format: Format) -> CliResult {
    let params = cable(args)?;
    let audit = audit_degrees(&params, nmax).map_err(params_error)?;
    match format {
        Format::Text => degrees_text(&audit),
        Format::Json => emit_json("degrees", vec![to_value(&audit)]),
    }
    Ok(Outcome::from_bool(audit.passed))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOverrides {
    pub ldeg: Option<i64>,
    pub tspan: Option<i64>,
    pub mspan: Option<i64>,
    pub nmax: Option<i64>,
}

fn search_bounds(params: &CablingParams, o: SearchOverrides) -> Result<SearchBounds, CliError> {
    let base = default_bounds(params).map_err(params_error)?;
    let l_degree = o.ldeg.unwrap_or(base.l_degree);
    let m_span = o.mspan.unwrap_or(base.m_span);
    let n_hi = match (o.nmax, o.tspan) {
        (Some(n), _) => n,
        (None, Some(_)) => 12,
        (None, None) => SearchBounds::screen_n_hi(l_degree, m_span, 1),
    };
    Ok(SearchBounds { l_degree, t_span: o.tspan, m_span, n_lo: 1, n_hi })
}

/// Whether a search result agrees with the minimality claim.
fn search_ok(params: &CablingParams, constructed: i64, r: &SearchReport) -> bool {
    match r.verdict {
        Verdict::Inconclusive => false,
        _ if !params.theorem_applies() => true,
        Verdict::NoAnnihilatorWithinBounds => r.l_degree_searched < constructed,
        Verdict::Found => r.l_degree_searched >= constructed,
    }
}

fn search_text(params: &CablingParams, r: &SearchReport) {
    let mode = match r.bounds.t_span {
        Some(t) => format!("exact, t-span {t}"),
        None => "screen".to_string(),
    };
    println!(
        "{params}: L-degree {} ({mode}, M-span {}, n = {}..{}): {}",
        r.l_degree_searched,
        r.bounds.m_span,
        r.bounds.n_lo,
        r.bounds.n_hi,
        r.verdict.label()
    );
    println!("  unknowns {}, equations {}, nullity {}", r.unknowns, r.equations, r.nullity);
    if let Some(op) = &r.operator {
        println!("  operator {op}");
    }
}

pub fn minimality(args: CableArgs, overrides: SearchOverrides, format: Format) -> CliResult {
    let params = cable(args)?;
    warn_if_not_applicable(&params);
    let constructed = build_annihilator(&params).map_err(params_error)?.l_degree();
    let bounds = search_bounds(&params, overrides)?;
    let report = search_bounded_annihilator(&params, &bounds).map_err(params_error)?;
    match format {
        Format::Text => search_text(&params, &report),
        Format::Json => emit_json("minimality", vec![to_value(&report)]),
    }
    Ok(Outcome::from_bool(search_ok(&params, constructed, &report)))
}

#[derive(Debug, Serialize)]
struct GridRow {
    #[serde(flatten)]
    verify: TupleReport,
    minimality: Option<SearchReport>,
    row_passed: bool,
}

fn grid_row(params: &CablingParams, nmax: i64) -> Result<GridRow, CliError> {
    let verify = verify_tuple(params, nmax).map_err(params_error)?;
    let minimality = if params.theorem_applies() {
        let bounds = default_bounds(params).map_err(params_error)?;
        Some(search_bounded_annihilator(params, &bounds).map_err(params_error)?)
    } else {
        None
    };
    let min_ok = minimality.as_ref().map_or(true, |m| search_ok(params, verify.l_degree, m));
    let row_passed = verify.passed && min_ok;
    Ok(GridRow { verify, minimality, row_passed })
}

pub fn grid(path: Option<&Path>, nmax: i64, format: Format) -> CliResult {
    let tuples = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
            parse_grid(&text).map_err(|e| CliError::Params(format!("{}: {e}", p.display())))?
        }
        None => default_grid(),
    };
    if nmax < 2 {
        return Err(CliError::Params("--nmax must be at least 2".into()));
    }
    let rows = tuples.par_iter().map(|t| grid_row(t, nmax)).collect::<Result<Vec<_>, _>>()?;
    let all = rows.iter().all(|r| r.row_passed);
    match format {
        Format::Text => {
            for r in &rows {
                let v = &r.verify;
                let min = match &r.minimality {
                    Some(m) => m.verdict.label(),
                    None => "not applicable",
                };
                println!(
                    "{} {:<10} L{} id {} ann {} aj {} closed {} deg {} | {} | {}",
                    v.params,
                    v.case_tag.as_str(),
                    v.l_degree,
                    mark(v.identities_ok),
                    mark(v.annihilates),
                    mark(v.aj_match),
                    mark(v.determinant_ok),
                    mark(v.degrees_ok),
                    min,
                    mark(r.row_passed)
                );
            }
            let passed = rows.iter().filter(|r| r.row_passed).count();
            println!("{passed}/{} tuples pass", rows.len());
        }
        Format::Json => emit_json("grid", rows.iter().map(to_value).collect()),
    }
    Ok(Outcome::from_bool(all))
}
