//! The commands proper: compute, then render as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use lucas_lehmer::error::{Error, Result};
use lucas_lehmer::forms::{build_form, reduce_to_core, FormTarget};
use lucas_lehmer::numberfield::{field_data, FieldKey, CATALOGUED_INDICES};
use lucas_lehmer::pipeline::{enumerate_with, pull_back, MAX_INDEX, QUADRATIC_INDICES};
use lucas_lehmer::precision::Precision;
use lucas_lehmer::primdiv::{canonicalize, check_primitive_divisor, reconstruct, PairKey, SequenceKind};
use lucas_lehmer::smalln::{solve_case, solve_index, CaseSolution};
use lucas_lehmer::thue::{box_solutions, relation_set, scan as scan_box, solve_with, verify_relations};
use lucas_lehmer::thue::{LedgerRow, ThueProblem};
use rug::Integer;
use serde::Serialize;

use crate::config::{Format, RunConfig};

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// `forms N`.
pub fn forms(n: u32) -> Result<String> {
    Ok(format!("{}\n", build_form(n)?.dump_line()))
}

/// The pair attached to one solution.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Candidate {
    x: String,
    y: String,
    s: String,
    t: String,
    kind: SequenceKind,
    valid: bool,
    /// Surd notation of the canonical pair (absent for degenerate ones).
    pair: Option<String>,
}

fn candidate(x: &Integer, y: &Integer) -> Candidate {
    let c = canonicalize(&reconstruct(x, y));
    let pair = (c.kind != SequenceKind::Degenerate).then(|| PairKey::of(&c).to_string());
    Candidate {
        x: x.to_string(),
        y: y.to_string(),
        s: c.s.to_string(),
        t: c.t.to_string(),
        kind: c.kind,
        valid: c.valid,
        pair,
    }
}

/// How `solve` obtained its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// The quadratic cases.
    Quadratic,
    /// A Thue equation of the catalogue.
    Thue,
    /// Pulled back from the index in `core`.
    Reduced,
    /// Beyond the catalogue: a box search only.
    Box,
}

/// `solve N` output.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveReport {
    n: u32,
    route: Route,
    /// For reduced indices, the chain of smaller indices used.
    core: Vec<u32>,
    ledger: Option<LedgerRow>,
    cases: Vec<CaseSolution>,
    solutions: Vec<[String; 2]>,
    candidates: Vec<Candidate>,
    #[serde(rename = "X4")]
    x4: String,
    #[serde(rename = "Y4")]
    y4: String,
    wall_seconds: f64,
}

struct Solved {
    route: Route,
    core: Vec<u32>,
    ledger: Option<LedgerRow>,
    cases: Vec<CaseSolution>,
    pairs: Vec<(Integer, Integer)>,
}

fn thue_problem(n: u32, m: Option<i64>) -> Result<ThueProblem> {
    let mut p = ThueProblem::for_index(n)?;
    if let Some(m) = m {
        if !p.targets.contains(&m) {
            return Err(Error::InadmissibleRhs { n, k: m });
        }
        p.targets = vec![m];
    }
    Ok(p)
}

fn solve_inner(n: u32, m: Option<i64>, cfg: &RunConfig) -> Result<Solved> {
    build_form(n)?;
    if n > MAX_INDEX {
        if let Some(m) = m {
            if !FormTarget::new(n)?.contains(&Integer::from(m)) {
                return Err(Error::InadmissibleRhs { n, k: m });
            }
        }
        let pairs: Vec<(Integer, Integer)> = box_solutions(n, &cfg.scan_box)?
            .solutions()
            .filter(|s| m.is_none_or(|m| s.value == m))
            .map(|s| (s.x.clone(), s.y.clone()))
            .collect();
        return Ok(Solved { route: Route::Box, core: vec![], ledger: None, cases: vec![], pairs });
    }
    if QUADRATIC_INDICES.contains(&n) {
        let cases = match m {
            Some(m) => vec![solve_case(n, m)?],
            None => solve_index(n)?,
        };
        let mut pairs: Vec<(Integer, Integer)> =
            cases.iter().flat_map(|c| c.solutions.iter().map(|p| (p.x.clone(), p.y.clone()))).collect();
        pairs.sort();
        pairs.dedup();
        return Ok(Solved { route: Route::Quadratic, core: vec![], ledger: None, cases, pairs });
    }
    if CATALOGUED_INDICES.contains(&n) {
        let report = solve_with(&thue_problem(n, m)?, cfg.precision)?;
        let pairs = report.solutions.solutions().map(|s| (s.x.clone(), s.y.clone())).collect();
        return Ok(Solved { route: Route::Thue, core: vec![], ledger: Some(report.row()), cases: vec![], pairs });
    }
    let red = reduce_to_core(n)?;
    let inner = solve_inner(red.m, m, cfg)?;
    let pairs = pull_back(n, &inner.pairs)?;
    let mut core = vec![red.m];
    core.extend(inner.core);
    Ok(Solved { route: Route::Reduced, core, ledger: inner.ledger, cases: vec![], pairs })
}

fn extent(pairs: &[(Integer, Integer)]) -> (Integer, Integer) {
    let mut xm = Integer::new();
    let mut ym = Integer::new();
    for (x, y) in pairs {
        xm = xm.max(Integer::from(x.abs_ref()));
        ym = ym.max(Integer::from(y.abs_ref()));
    }
    (xm, ym)
}

/// `solve N [--m M]`.
pub fn solve(n: u32, m: Option<i64>, cfg: &RunConfig) -> Result<String> {
    let start = Instant::now();
    let solved = solve_inner(n, m, cfg)?;
    let (x4, y4) = extent(&solved.pairs);
    let report = SolveReport {
        n,
        route: solved.route,
        core: solved.core,
        ledger: solved.ledger,
        cases: solved.cases,
        solutions: solved.pairs.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect(),
        candidates: solved.pairs.iter().map(|(x, y)| candidate(x, y)).collect(),
        x4: x4.to_string(),
        y4: y4.to_string(),
        wall_seconds: start.elapsed().as_secs_f64(),
    };
    if cfg.format == Format::Json {
        return Ok(to_json(&report));
    }
    let mut s = String::new();
    let _ = writeln!(s, "n = {n} ({:?}{})", report.route, if report.core.is_empty() {
        String::new()
    } else {
        format!(" via {:?}", report.core)
    });
    if let Some(l) = &report.ledger {
        let _ = writeln!(
            s,
            "d = {}  Y1 = {}  Y2' = {}  d/C5 = {:.4}  C6 = {:.2e}  H = {:.4}  C7 = {:.2e}  C9 = {:.2e}",
            l.d, l.y1, l.y2p, l.d_over_c5, l.c6, l.h, l.c7, l.c9
        );
        let _ = writeln!(s, "d1 = {}  A1 = {}  d2 = {}  A2 = {}  Y3 = {:.2e}", l.d1, l.a1, l.d2, l.a2, l.y3);
    }
    let _ = writeln!(s, "(X4, Y4) = ({}, {})", report.x4, report.y4);
    let _ = writeln!(s, "{} solutions:", report.solutions.len());
    for c in &report.candidates {
        let _ = writeln!(
            s,
            "  ({}, {})  {:?}{}{}",
            c.x,
            c.y,
            c.kind,
            if c.valid { "" } else { " (gcd(s, y) != 1)" },
            c.pair.as_ref().map(|p| format!("  {p}")).unwrap_or_default()
        );
    }
    Ok(s)
}

#[derive(Debug, Serialize)]
struct TableEntry {
    s: String,
    t: String,
    pair: String,
}

#[derive(Debug, Serialize)]
struct TablesJson {
    lucas: BTreeMap<u32, Vec<TableEntry>>,
    lehmer: BTreeMap<u32, Vec<TableEntry>>,
}

/// `tables`.
pub fn tables(cfg: &RunConfig) -> Result<String> {
    let e = enumerate_with(cfg.check_direct, cfg.precision)?;
    if cfg.format == Format::Json {
        let conv = |t: &lucas_lehmer::primdiv::SequenceTable, lucas: bool| {
            t.iter()
                .map(|(&n, row)| {
                    let entries = row
                        .iter()
                        .map(|k| TableEntry {
                            s: k.s.to_string(),
                            t: k.t.to_string(),
                            pair: if lucas { k.display_lucas() } else { k.display_lehmer() },
                        })
                        .collect();
                    (n, entries)
                })
                .collect()
        };
        return Ok(to_json(&TablesJson { lucas: conv(&e.tables.lucas, true), lehmer: conv(&e.tables.lehmer, false) }));
    }
    Ok(format!(
        "Lucas pairs\n{}\nLehmer pairs\n{}",
        lucas_lehmer::primdiv::render_table(&e.tables.lucas, true),
        lucas_lehmer::primdiv::render_table(&e.tables.lehmer, false)
    ))
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ScanJson {
    nmin: u32,
    nmax: u32,
    #[serde(rename = "box")]
    scan_box: String,
    rows: Vec<lucas_lehmer::thue::ScanRow>,
    candidates: usize,
    verdict: String,
}

/// `scan NMIN NMAX`.
pub fn scan(nmin: u32, nmax: u32, cfg: &RunConfig) -> Result<String> {
    let rows = scan_box(nmin, nmax, &cfg.scan_box)?;
    let candidates: usize = rows.iter().map(|r| r.hits.len()).sum();
    let verdict = if candidates == 0 { "no candidates".to_string() } else { format!("{candidates} candidates") };
    for r in &rows {
        eprintln!("n = {}: {} solutions in the box, {} non-degenerate", r.n, r.solutions, r.hits.len());
    }
    if cfg.format == Format::Json {
        return Ok(to_json(&ScanJson { nmin, nmax, scan_box: cfg.scan_box.to_string(), rows, candidates, verdict }));
    }
    let mut s = String::new();
    for r in &rows {
        for h in &r.hits {
            let _ = writeln!(s, "n = {}: ({}, {}) with F_n = {}", h.n, h.x, h.y, h.value);
        }
    }
    let _ = writeln!(s, "{verdict}");
    Ok(s)
}

/// Brute force over `|x|, |y| <= bound` for the admissible values of `F_n`.
fn brute_force(n: u32, bound: i64) -> Result<Vec<(Integer, Integer)>> {
    let form = build_form(n)?;
    let target = FormTarget::new(n)?;
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if target.contains(&form.evaluate_i64(x, y)) {
                out.push((Integer::from(x), Integer::from(y)));
            }
        }
    }
    Ok(out)
}

/// `selftest`: internal consistency checks; returns the report and the
/// number of failures.
pub fn selftest(cfg: &RunConfig) -> (String, usize) {
    let mut lines = Vec::new();
    let mut failures = 0;
    let mut record = |name: &str, outcome: Result<bool>| {
        let ok = matches!(outcome, Ok(true));
        let detail = match outcome {
            Err(e) => format!(" ({e})"),
            _ => String::new(),
        };
        if !ok {
            failures += 1;
        }
        lines.push(format!("{} {name}{detail}", if ok { "PASS" } else { "FAIL" }));
    };
    record(
        "unit relations hold exactly",
        CATALOGUED_INDICES.iter().try_fold(true, |acc, &n| {
            let f = field_data(FieldKey::Cyclotomic(n), Precision::new(cfg.precision)?)?;
            let set = relation_set(FieldKey::Cyclotomic(n))?;
            Ok(acc && verify_relations(&set, &f)?.iter().all(|c| c.exact))
        }),
    );
    record("Fibonacci: u_12 has no primitive divisor, u_13 has one", {
        let key = PairKey::new(1, 5);
        check_primitive_divisor(&key, SequenceKind::Lucas, 12)
            .and_then(|a| Ok(!a && check_primitive_divisor(&key, SequenceKind::Lucas, 13)?))
    });
    record("solver agrees with brute force on |x|, |y| <= 50", {
        CATALOGUED_INDICES.iter().try_fold(true, |acc, &n| {
            let sols = solve_inner(n, None, cfg)?.pairs;
            let mut inside: Vec<_> =
                sols.into_iter().filter(|(x, y)| x.clone().abs() <= 50 && y.clone().abs() <= 50).collect();
            inside.sort();
            Ok(acc && inside == brute_force(n, 50)?)
        })
    });
    record("tables with definition-based cross-check", enumerate_with(true, cfg.precision).map(|_| true));
    let mut s = lines.join("\n");
    s.push('\n');
    (s, failures)
}
