//! Rule specifications, named builders and the rule-table text format.
//!
//! Rule-table files are line oriented, with `#` starting a comment:
//!
//! ```text
//! alphabet 2
//! dimension 1
//! neighborhood (-1);(0);(1)
//! default 0
//! 0,1,0 -> 1
//! 1,1,0 -> 1
//! ```
//!
//! Pattern lines list symbols in the declared neighborhood order; the
//! loaded automaton is re-sorted to canonical offset order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ca::{pattern_count, CellularAutomaton, Offset, Symbol, MAX_ALPHABET};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum RuleSpec {
    Eca { rule: u8 },
    Life,
    Clock { q: u32, k: usize },
    File { path: PathBuf },
}

impl std::fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleSpec::Eca { rule } => write!(f, "eca:{rule}"),
            RuleSpec::Life => f.write_str("life"),
            RuleSpec::Clock { q, k } => write!(f, "clock:q={q},k={k}"),
            RuleSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl std::str::FromStr for RuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rule_spec(s)
    }
}

fn parse_int<T: std::str::FromStr>(token: &str, what: &str) -> Result<T> {
    token
        .trim()
        .parse()
        .map_err(|_| Error::parse(token, format!("expected {what}")))
}

/// Parses `eca:<n>`, `life`, `clock:q=<q>,k=<k>` or `file:<path>`.
pub fn parse_rule_spec(text: &str) -> Result<RuleSpec> {
    let text = text.trim();
    let (scheme, rest) = match text.split_once(':') {
        Some((s, r)) => (s, Some(r)),
        None => (text, None),
    };
    match (scheme, rest) {
        ("life", None) => Ok(RuleSpec::Life),
        ("eca", Some(n)) => {
            let rule: u32 = parse_int(n, "a rule number")?;
            if rule > 255 {
                return Err(Error::parse(n, "ECA rule number must be in 0..=255"));
            }
            Ok(RuleSpec::Eca { rule: rule as u8 })
        }
        ("clock", Some(params)) => {
            let (mut q, mut k) = (None, None);
            for part in params.split(',') {
                match part.trim().split_once('=') {
                    Some(("q", v)) if q.is_none() => q = Some(parse_int::<u64>(v, "an integer q")?),
                    Some(("k", v)) if k.is_none() => k = Some(parse_int::<u64>(v, "an integer k")?),
                    _ => return Err(Error::parse(part, "expected q=<q> or k=<k>")),
                }
            }
            let q = q.ok_or_else(|| Error::parse(params, "missing q=<q>"))?;
            let k = k.ok_or_else(|| Error::parse(params, "missing k=<k>"))?;
            if q < 2 || q > MAX_ALPHABET as u64 {
                return Err(Error::parse(format!("q={q}"), "q must be in 2..=65536"));
            }
            if !(1..=64).contains(&k) {
                return Err(Error::parse(format!("k={k}"), "k must be in 1..=64"));
            }
            Ok(RuleSpec::Clock {
                q: q as u32,
                k: k as usize,
            })
        }
        ("file", Some(path)) if !path.is_empty() => Ok(RuleSpec::File { path: path.into() }),
        _ => Err(Error::parse(
            text,
            "expected eca:<n>, life, clock:q=<q>,k=<k> or file:<path>",
        )),
    }
}

pub fn build(spec: &RuleSpec) -> Result<CellularAutomaton> {
    match spec {
        RuleSpec::Eca { rule } => Ok(eca(*rule)),
        RuleSpec::Life => Ok(life()),
        RuleSpec::Clock { q, k } => clock(*q, *k),
        RuleSpec::File { path } => load_rule_table(path),
    }
}

/// Elementary CA with Wolfram numbering: pattern `(l, c, r)` has index
/// `4l + 2c + r` and maps to that bit of `rule`.
pub fn eca(rule: u8) -> CellularAutomaton {
    let table = (0..8).map(|b| ((rule >> b) & 1) as Symbol).collect();
    CellularAutomaton::new(2, 1, vec![vec![-1], vec![0], vec![1]], table)
        .expect("ECA table is total")
}

/// Moore neighborhood in dimension `d`, lexicographic.
pub fn moore(dimension: usize, radius: i64) -> Vec<Offset> {
    let mut out: Vec<Offset> = vec![vec![]];
    for _ in 0..dimension {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-radius..=radius).map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    out
}

/// Conway's Game of Life (B3/S23) on the 9-cell Moore neighborhood.
pub fn life() -> CellularAutomaton {
    CellularAutomaton::from_fn(2, 2, moore(2, 1), |p| {
        let center = p[4];
        let live = p.iter().map(|&c| c as u32).sum::<u32>() - center as u32;
        match (center, live) {
            (1, 2) | (1, 3) | (0, 3) => 1,
            _ => 0,
        }
    })
    .expect("life table is total")
}

/// The radius-zero clock automaton `x_v ↦ x_v + 1 mod q` on `Z^k`.
pub fn clock(q: u32, k: usize) -> Result<CellularAutomaton> {
    if q < 2 {
        return Err(Error::Modulus(q as u64));
    }
    if q > MAX_ALPHABET {
        return Err(Error::AlphabetSize(q as u64));
    }
    if k == 0 {
        return Err(Error::ClockDimension);
    }
    let table = (0..q).map(|a| ((a + 1) % q) as Symbol).collect();
    CellularAutomaton::new(q, k, vec![vec![0; k]], table)
}

pub fn load_rule_table(path: &Path) -> Result<CellularAutomaton> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_rule_table(&text, &path.display().to_string())
}

struct LineError<'a> {
    source: &'a str,
}

impl LineError<'_> {
    fn at(&self, line: usize, message: impl Into<String>) -> Error {
        Error::RuleTable {
            path: self.source.to_string(),
            line,
            message: message.into(),
        }
    }
}

fn parse_offset(text: &str) -> Option<Offset> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().ok())
        .collect()
}

/// Parses rule-table text; `source` names the input in error messages.
pub fn parse_rule_table(text: &str, source: &str) -> Result<CellularAutomaton> {
    let err = LineError { source };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |key: &str| -> Result<(usize, String)> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err.at(0, format!("missing `{key}` header")))?;
        match line.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok((no, v.trim().to_string())),
            _ => Err(err.at(no, format!("expected `{key} ...` header, found `{line}`"))),
        }
    };

    let (no, value) = header("alphabet")?;
    let alphabet_size: u32 = value
        .parse()
        .ok()
        .filter(|&a| (1..=MAX_ALPHABET).contains(&a))
        .ok_or_else(|| err.at(no, format!("alphabet size `{value}` not in 1..=65536")))?;

    let (no, value) = header("dimension")?;
    let dimension: usize = value
        .parse()
        .ok()
        .filter(|&d| d >= 1)
        .ok_or_else(|| err.at(no, format!("dimension `{value}` must be a positive integer")))?;

    let (no, value) = header("neighborhood")?;
    let mut neighborhood = Vec::new();
    for part in value.split(';') {
        let offset = parse_offset(part)
            .ok_or_else(|| err.at(no, format!("malformed offset `{}`", part.trim())))?;
        if offset.len() != dimension {
            return Err(err.at(
                no,
                format!("offset `{}` has {} coordinates, expected {dimension}", part.trim(), offset.len()),
            ));
        }
        if neighborhood.contains(&offset) {
            return Err(err.at(no, format!("duplicate offset `{}`", part.trim())));
        }
        neighborhood.push(offset);
    }
    let arity = neighborhood.len();
    let count = pattern_count(alphabet_size, arity).map_err(|e| err.at(no, e.to_string()))?;

    let symbol = |no: usize, token: &str| -> Result<Symbol> {
        token
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&s| s < alphabet_size)
            .map(|s| s as Symbol)
            .ok_or_else(|| {
                err.at(
                    no,
                    format!("symbol `{}` not in 0..{alphabet_size}", token.trim()),
                )
            })
    };

    let mut default = None;
    let mut table: Vec<Option<Symbol>> = vec![None; count];
    let mut pattern_lines = Vec::new();
    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix("default") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(err.at(no, format!("malformed line `{line}`")));
            }
            if default.is_some() {
                return Err(err.at(no, "more than one `default` line"));
            }
            default = Some(symbol(no, rest)?);
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| err.at(no, format!("expected `<pattern> -> <symbol>`, found `{line}`")))?;
        let pattern = lhs
            .split(',')
            .map(|t| symbol(no, t))
            .collect::<Result<Vec<_>>>()?;
        if pattern.len() != arity {
            return Err(err.at(
                no,
                format!("pattern has {} symbols, neighborhood has {arity}", pattern.len()),
            ));
        }
        let output = symbol(no, rhs)?;
        let index = pattern
            .iter()
            .fold(0usize, |acc, &a| acc * alphabet_size as usize + a as usize);
        match table[index] {
            Some(prev) if prev != output => {
                return Err(err.at(
                    no,
                    format!("pattern `{}` already maps to {prev}", lhs.trim()),
                ));
            }
            _ => table[index] = Some(output),
        }
        pattern_lines.push(no);
    }

    let missing = table.iter().filter(|t| t.is_none()).count();
    let rule_table = match default {
        Some(d) => table.into_iter().map(|t| t.unwrap_or(d)).collect(),
        None if missing == 0 => table.into_iter().map(|t| t.unwrap()).collect(),
        None => {
            return Err(err.at(
                0,
                format!("table is incomplete: {missing} of {count} patterns missing and no `default` line"),
            ))
        }
    };
    CellularAutomaton::with_neighborhood_order(alphabet_size, dimension, neighborhood, rule_table)
}

/// Writes an automaton in the rule-table text format, one line per pattern.
pub fn to_rule_table_text(ca: &CellularAutomaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alphabet {}", ca.alphabet_size());
    let _ = writeln!(out, "dimension {}", ca.dimension());
    let offsets: Vec<String> = ca
        .neighborhood()
        .iter()
        .map(|o| {
            let coords: Vec<String> = o.iter().map(i64::to_string).collect();
            format!("({})", coords.join(","))
        })
        .collect();
    let _ = writeln!(out, "neighborhood {}", offsets.join(";"));
    let mut pattern = vec![0; ca.neighborhood().len()];
    for (index, &output) in ca.rule_table().iter().enumerate() {
        ca.pattern_at(index, &mut pattern);
        let symbols: Vec<String> = pattern.iter().map(Symbol::to_string).collect();
        let _ = writeln!(out, "{} -> {output}", symbols.join(","));
    }
    out
}
