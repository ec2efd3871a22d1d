//! Sparse label polynomials (truncated generating functions) and their
//! text format.
//!
//! ```text
//! # diagram: A3
//! # radius: 6
//! # complete: true
//! 0,0,0	1
//! 0,0,1	1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::engine::LabelVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPolynomial {
    pub diagram: String,
    pub rank: usize,
    /// Largest label degree the coefficients are exact for.
    pub truncation: usize,
    /// True when the underlying ball exhausted the group.
    pub complete: bool,
    terms: BTreeMap<LabelVector, u64>,
}

impl LabelPolynomial {
    pub fn new(diagram: impl Into<String>, rank: usize, truncation: usize, complete: bool) -> Self {
        LabelPolynomial {
            diagram: diagram.into(),
            rank,
            truncation,
            complete,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `coefficient` to the monomial `label`. Zero additions are ignored
    /// so that every stored coefficient stays positive.
    pub fn add_term(&mut self, label: LabelVector, coefficient: u64) {
        assert_eq!(label.rank(), self.rank, "label arity");
        if coefficient > 0 {
            *self.terms.entry(label).or_insert(0) += coefficient;
        }
    }

    pub fn coefficient(&self, label: &LabelVector) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    /// Monomials in lexicographic label order.
    pub fn terms(&self) -> impl Iterator<Item = (&LabelVector, u64)> {
        self.terms.iter().map(|(l, &c)| (l, c))
    }

    /// Number of monomials with nonzero coefficient.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Value at t = (1, ..., 1).
    pub fn value_at_ones(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Largest degree among the monomials.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(LabelVector::degree).max()
    }

    /// The bit-exact text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# diagram: {}", self.diagram);
        let _ = writeln!(out, "# radius: {}", self.truncation);
        let _ = writeln!(out, "# complete: {}", self.complete);
        for (label, c) in &self.terms {
            let _ = writeln!(out, "{label}\t{c}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut diagram = None;
        let mut radius = None;
        let mut complete = None;
        let mut terms = BTreeMap::new();
        let mut rank = None;
        for (k, line) in text.lines().enumerate() {
            let perr = |message: String| Error::Parse {
                line: k + 1,
                message,
            };
            if line.trim().is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                let (key, value) = h
                    .split_once(':')
                    .ok_or_else(|| perr(format!("bad header '{line}'")))?;
                let value = value.trim();
                match key.trim() {
                    "diagram" => diagram = Some(value.to_string()),
                    "radius" => {
                        radius = Some(
                            value
                                .parse()
                                .map_err(|_| perr(format!("bad radius '{value}'")))?,
                        )
                    }
                    "complete" => {
                        complete = Some(
                            value
                                .parse()
                                .map_err(|_| perr(format!("bad flag '{value}'")))?,
                        )
                    }
                    _ => {}
                }
                continue;
            }
            let (label, coef) = line
                .split_once('\t')
                .ok_or_else(|| perr("expected '<label><TAB><coefficient>'".into()))?;
            let label = LabelVector::parse_csv(label).map_err(|e| perr(e.to_string()))?;
            let coef: u64 = coef
                .trim()
                .parse()
                .map_err(|_| perr(format!("bad coefficient '{coef}'")))?;
            if coef == 0 {
                return Err(perr("zero coefficient".into()));
            }
            match rank {
                None => rank = Some(label.rank()),
                Some(r) if r != label.rank() => {
                    return Err(perr("inconsistent label arity".into()))
                }
                _ => {}
            }
            if terms.insert(label, coef).is_some() {
                return Err(perr("duplicate monomial".into()));
            }
        }
        let missing = |what: &str| Error::Parse {
            line: 0,
            message: format!("missing '# {what}:' header"),
        };
        Ok(LabelPolynomial {
            diagram: diagram.ok_or_else(|| missing("diagram"))?,
            rank: rank.unwrap_or(0),
            truncation: radius.ok_or_else(|| missing("radius"))?,
            complete: complete.ok_or_else(|| missing("complete"))?,
            terms,
        })
    }
}
