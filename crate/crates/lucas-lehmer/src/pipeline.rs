//! The whole enumeration for `4 < n <= 30`: solve every equation, pull
//! solutions back through the index reductions, and classify the pairs.

use std::collections::BTreeMap;

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{build_form, reduce_to_core, FormTarget, CORE_PAIRS};
use crate::numberfield::CATALOGUED_INDICES;
use crate::primdiv::{emit_tables, Tables};
use crate::smalln::{solve_index, CaseSolution};
use crate::thue::{solve_all, ThueProblem, ThueReport};

/// Largest index covered by the enumeration.
pub const MAX_INDEX: u32 = 30;

/// Indices solved through the quadratic reductions.
pub const QUADRATIC_INDICES: [u32; 4] = [5, 8, 10, 12];

/// Every index `4 < n <= 30`, `n != 6`.
pub fn indices() -> impl Iterator<Item = u32> {
    (5..=MAX_INDEX).filter(|&n| n != 6)
}

/// How the solutions of one index were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Source {
    /// Quadratic case, only solutions with `x + 2y` a square.
    Quadratic,
    /// A Thue equation solved directly.
    Thue,
    /// Pulled back from a smaller index.
    Reduced {
        /// The smaller index.
        from: u32,
    },
}

/// Solutions of one index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSolutions {
    /// Index.
    pub n: u32,
    /// Where they come from.
    pub source: Source,
    /// `(x, y)`, sorted.
    pub pairs: Vec<(String, String)>,
    /// `(max |x|, max |y|)`.
    pub extent: (String, String),
}

/// Everything the enumeration produced.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Reports of the Thue equations (cyclotomic indices).
    pub thue: Vec<ThueReport>,
    /// The quartic Thue equation behind `n = 12`, `k = -2`.
    pub special: Vec<CaseSolution>,
    /// Solutions per index.
    pub solutions: BTreeMap<u32, Vec<(Integer, Integer)>>,
    /// Provenance per index.
    pub sources: BTreeMap<u32, Source>,
    /// The two tables.
    pub tables: Tables,
}

impl Enumeration {
    /// `(max |x|, max |y|)` over the solutions of `n`.
    pub fn extent(&self, n: u32) -> Option<(Integer, Integer)> {
        let list = self.solutions.get(&n)?;
        let mut xm = Integer::new();
        let mut ym = Integer::new();
        for (x, y) in list {
            xm = xm.max(Integer::from(x.abs_ref()));
            ym = ym.max(Integer::from(y.abs_ref()));
        }
        Some((xm, ym))
    }

    /// Serializable per-index summary.
    pub fn summaries(&self) -> Vec<IndexSolutions> {
        self.solutions
            .iter()
            .map(|(&n, list)| {
                let (xm, ym) = self.extent(n).unwrap_or_default();
                IndexSolutions {
                    n,
                    source: self.sources[&n],
                    pairs: list.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
                    extent: (xm.to_string(), ym.to_string()),
                }
            })
            .collect()
    }
}

/// Solutions of `n` obtained by pulling back those of its core index.
pub fn pull_back(n: u32, core: &[(Integer, Integer)]) -> Result<Vec<(Integer, Integer)>> {
    let red = reduce_to_core(n)?;
    let form = build_form(n)?;
    let target = FormTarget::new(n)?;
    let mut out = Vec::new();
    for (xp, yp) in core {
        for (x, y) in red.pullback(xp, yp) {
            if !target.contains(&form.evaluate(&x, &y)) {
                return Err(Error::Invariant(format!("pulled-back ({x}, {y}) is not a solution for n = {n}")));
            }
            out.push((x, y));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Run the enumeration.  With `check_direct`, every tabulated pair is also
/// checked against the definition of a primitive divisor.
pub fn enumerate(check_direct: bool) -> Result<Enumeration> {
    enumerate_with(check_direct, crate::thue::LEDGER_DIGITS)
}

/// [`enumerate`] with at least `min_digits` of working precision.
pub fn enumerate_with(check_direct: bool, min_digits: u32) -> Result<Enumeration> {
    let problems: Vec<ThueProblem> =
        CATALOGUED_INDICES.iter().map(|&n| ThueProblem::for_index(n)).collect::<Result<_>>()?;
    let thue: Vec<ThueReport> = solve_all(&problems, min_digits).into_iter().collect::<Result<_>>()?;
    let mut solutions = BTreeMap::new();
    let mut sources = BTreeMap::new();
    let mut special = Vec::new();
    for n in QUADRATIC_INDICES {
        let cases = solve_index(n)?;
        let mut list: Vec<(Integer, Integer)> =
            cases.iter().flat_map(|c| c.solutions.iter().map(|p| (p.x.clone(), p.y.clone()))).collect();
        list.sort();
        list.dedup();
        if n == 12 {
            special.extend(cases.into_iter().filter(|c| c.k == -2));
        }
        solutions.insert(n, list);
        sources.insert(n, Source::Quadratic);
    }
    for r in &thue {
        let n = match r.problem.key {
            crate::numberfield::FieldKey::Cyclotomic(n) => n,
            crate::numberfield::FieldKey::SpecialQuartic => continue,
        };
        let mut list: Vec<(Integer, Integer)> = r.solutions.solutions().map(|s| (s.x.clone(), s.y.clone())).collect();
        list.sort();
        solutions.insert(n, list);
        sources.insert(n, Source::Thue);
    }
    // Core pairs are listed so that every core is available before use
    // (28 reduces to 14, which reduces to 7).
    let mut pending: Vec<(u32, u32)> = CORE_PAIRS.to_vec();
    while !pending.is_empty() {
        let before = pending.len();
        let mut rest = Vec::new();
        for (n, m) in pending {
            if let Some(core) = solutions.get(&m).cloned() {
                solutions.insert(n, pull_back(n, &core)?);
                sources.insert(n, Source::Reduced { from: m });
            } else {
                rest.push((n, m));
            }
        }
        if rest.len() == before {
            return Err(Error::Invariant("core reductions do not terminate".into()));
        }
        pending = rest;
    }
    for n in indices() {
        if !solutions.contains_key(&n) {
            return Err(Error::Invariant(format!("index {n} was not solved")));
        }
    }
    let tables = emit_tables(&solutions, check_direct)?;
    Ok(Enumeration { thue, special, solutions, sources, tables })
}
