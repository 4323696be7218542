//! Parser for the plain-text unit and ideal-generator catalogue.

use crate::error::{Error, Result};

use super::FieldKey;

/// The catalogue shipped with the crate.
pub const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");

/// What a catalogue line describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    /// The fundamental unit with this (1-based) number.
    Unit(usize),
    /// The generator of the ideal of prime norm.
    IdealGenerator,
}

/// How an element is written in the catalogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    /// `sin(a pi/n)/sin(pi/n)` for the cyclotomic field of index `n`.
    SineRatio(u32),
    /// Polynomial in the field generator, increasing degree, over `denominator`.
    Polynomial { coeffs: Vec<i64>, denominator: i64 },
}

/// One parsed catalogue line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub field: FieldKey,
    pub slot: Slot,
    pub expression: Expression,
}

fn parse_field(s: &str) -> Result<FieldKey> {
    if s == "q12" {
        return Ok(FieldKey::SpecialQuartic);
    }
    s.parse::<u32>()
        .map(FieldKey::Cyclotomic)
        .map_err(|_| Error::InvalidInput(format!("bad catalogue field `{s}`")))
}

fn parse_expression(s: &str) -> Result<Expression> {
    let mut words = s.split_whitespace();
    let head = words.next().ok_or_else(|| Error::InvalidInput("empty expression".into()))?;
    let nums: Result<Vec<i64>> = words
        .map(|w| w.parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad number `{w}`"))))
        .collect();
    let nums = nums?;
    match head {
        "sin" if nums.len() == 1 && nums[0] > 1 => Ok(Expression::SineRatio(nums[0] as u32)),
        "poly" if !nums.is_empty() => Ok(Expression::Polynomial { coeffs: nums, denominator: 1 }),
        h if h.starts_with("poly/") && !nums.is_empty() => {
            let q = h[5..]
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad denominator in `{h}`")))?;
            Ok(Expression::Polynomial { coeffs: nums, denominator: q })
        }
        _ => Err(Error::InvalidInput(format!("bad expression `{s}`"))),
    }
}

/// Parse catalogue text; blank lines and `#` comments are ignored.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput(format!("bad catalogue line `{line}`")));
        }
        let field = parse_field(parts[0])?;
        let slot = if parts[1] == "mu" {
            Slot::IdealGenerator
        } else {
            Slot::Unit(
                parts[1]
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad entry `{}`", parts[1])))?,
            )
        };
        out.push(CatalogEntry { field, slot, expression: parse_expression(parts[2])? });
    }
    Ok(out)
}

/// Entries of the built-in catalogue for one field.
pub fn entries_for(field: FieldKey) -> Result<Vec<CatalogEntry>> {
    Ok(parse_catalog(CATALOG_TEXT)?.into_iter().filter(|e| e.field == field).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_lines() {
        let all = parse_catalog(CATALOG_TEXT).unwrap();
        let fields: std::collections::BTreeSet<String> =
            all.iter().map(|e| format!("{:?}", e.field)).collect();
        assert_eq!(fields.len(), 15);
        let n24 = entries_for(FieldKey::Cyclotomic(24)).unwrap();
        assert_eq!(
            n24[1].expression,
            Expression::Polynomial { coeffs: vec![-1, 2], denominator: 1 }
        );
        let q = entries_for(FieldKey::SpecialQuartic).unwrap();
        assert_eq!(
            q[0].expression,
            Expression::Polynomial { coeffs: vec![12, -10, -4, 1], denominator: 4 }
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_catalog("7 | 1").is_err());
        assert!(parse_catalog("7 | x | sin 2").is_err());
        assert!(parse_catalog("7 | 1 | cos 2").is_err());
    }
}
