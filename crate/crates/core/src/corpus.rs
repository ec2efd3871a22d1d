//! Shipped reference data: the type-A label tables and the D̃6 case list.
//!
//! The files are compiled in; setting `ULG_CORPUS_DIR` makes the loaders
//! read `<dir>/<file>` instead, so the data can be audited or replaced
//! without rebuilding.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::engine::LabelVector;
use crate::error::{Error, Result};

pub const CORPUS_DIR_VAR: &str = "ULG_CORPUS_DIR";
pub const CASES_FILE: &str = "dtilde6_cases.tsv";
pub const APPENDIX_FILE: &str = "appendix_a.tsv";

const CASES: &str = include_str!("../data/dtilde6_cases.tsv");
const APPENDIX: &str = include_str!("../data/appendix_a.tsv");

fn load(file: &str, builtin: &'static str) -> Result<Cow<'static, str>> {
    match std::env::var_os(CORPUS_DIR_VAR) {
        Some(dir) => {
            let path = std::path::Path::new(&dir).join(file);
            std::fs::read_to_string(&path)
                .map(Cow::Owned)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
        }
        None => Ok(Cow::Borrowed(builtin)),
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mechanism {
    ProofHandled,
    XyxyNotReduced,
    XyxDotsXyxNotReduced,
    XyDotsYxyNotUlg,
    /// Listed as a case but in none of the four classes.
    Unlisted,
}

impl Mechanism {
    pub const ALL: [Mechanism; 5] = [
        Mechanism::ProofHandled,
        Mechanism::XyxyNotReduced,
        Mechanism::XyxDotsXyxNotReduced,
        Mechanism::XyDotsYxyNotUlg,
        Mechanism::Unlisted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mechanism::ProofHandled => "PROOF_HANDLED",
            Mechanism::XyxyNotReduced => "XYXY_NOT_REDUCED",
            Mechanism::XyxDotsXyxNotReduced => "XYX_DOTS_XYX_NOT_REDUCED",
            Mechanism::XyDotsYxyNotUlg => "XY_DOTS_YXY_NOT_ULG",
            Mechanism::Unlisted => "UNLISTED",
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mechanism::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown mechanism '{s}'")))
    }
}

/// One case word, spelled in the `Dtilde6-paper` generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRecord {
    pub id: u32,
    pub word: String,
    pub mechanisms: BTreeSet<Mechanism>,
}

pub fn parse_cases(text: &str) -> Result<Vec<CaseRecord>> {
    let mut out: Vec<CaseRecord> = Vec::new();
    for (line, l) in data_lines(text) {
        let perr = |message: String| Error::Parse { line, message };
        let f: Vec<&str> = l.split('\t').collect();
        let [id, word, mech] = f[..] else {
            return Err(perr("expected <id><TAB><word><TAB><mechanisms>".into()));
        };
        let id: u32 = id
            .parse()
            .map_err(|_| perr(format!("bad case id '{id}'")))?;
        if out.iter().any(|c| c.id == id) {
            return Err(perr(format!("duplicate case id {id}")));
        }
        let mechanisms = mech
            .split(',')
            .map(|m| m.trim().parse().map_err(|e: Error| perr(e.to_string())))
            .collect::<Result<BTreeSet<_>>>()?;
        out.push(CaseRecord {
            id,
            word: word.to_string(),
            mechanisms,
        });
    }
    out.sort_by_key(|c| c.id);
    Ok(out)
}

pub fn load_cases() -> Result<Vec<CaseRecord>> {
    parse_cases(&load(CASES_FILE, CASES)?)
}

/// Label sets per rank `n` (group `A<n>`), labels written as digit strings.
pub fn parse_appendix(text: &str) -> Result<BTreeMap<usize, BTreeSet<LabelVector>>> {
    let mut out: BTreeMap<usize, BTreeSet<LabelVector>> = BTreeMap::new();
    for (line, l) in data_lines(text) {
        let perr = |message: String| Error::Parse { line, message };
        let (group, digits) = l
            .split_once('\t')
            .ok_or_else(|| perr("expected <group><TAB><label>".into()))?;
        let n: usize = group
            .strip_prefix('A')
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| perr(format!("bad group '{group}'")))?;
        let counts = digits
            .chars()
            .map(|c| c.to_digit(10))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| perr(format!("bad label '{digits}'")))?;
        if counts.len() != n {
            return Err(perr(format!("label '{digits}' does not have {n} digits")));
        }
        if !out
            .entry(n)
            .or_default()
            .insert(LabelVector::from_slice(&counts))
        {
            return Err(perr(format!("duplicate label '{digits}'")));
        }
    }
    Ok(out)
}

pub fn load_appendix() -> Result<BTreeMap<usize, BTreeSet<LabelVector>>> {
    parse_appendix(&load(APPENDIX_FILE, APPENDIX)?)
}
