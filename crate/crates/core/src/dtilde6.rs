//! The affine group D̃6 with the diagram
//!
//! ```text
//! 1       3
//!  \     /
//!   a---b
//!  /     \
//! 2       4
//! ```
//!
//! and its periodic uniquely labelled geodesics `(a1ab3ba2ab4b)^n`.

use std::fmt;

use rayon::prelude::*;

use crate::corpus::{load_cases, CaseRecord, Mechanism};
use crate::diagram::CoxeterDiagram;
use crate::engine::{GroupElement, Word};
use crate::error::{Error, Result};
use crate::geodesics::{ball_census, is_ulg, is_ulg_with_cap, DEFAULT_STATE_CAP};

pub const DIAGRAM: &str = "Dtilde6-paper";

pub fn diagram() -> CoxeterDiagram {
    CoxeterDiagram::builtin(DIAGRAM).expect("builtin diagram")
}

/// Periodic words studied for this group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `a1ab3ba2ab4b`
    W,
    /// `a1ab4ba2ab3b`, the image of `W` under 3 ↔ 4.
    W2,
    /// `a2ab3ba1ab4b`, the image of `W` under 1 ↔ 2.
    W3,
    /// `a1a2ab3b4b`, whose square is already not extendable.
    Base,
    /// `a34b12`: a product over two sets of pairwise commuting generators.
    CoxIJ,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::W,
        Variant::W2,
        Variant::W3,
        Variant::Base,
        Variant::CoxIJ,
    ];

    pub fn text(self) -> &'static str {
        match self {
            Variant::W => "a1ab3ba2ab4b",
            Variant::W2 => "a1ab4ba2ab3b",
            Variant::W3 => "a2ab3ba1ab4b",
            Variant::Base => "a1a2ab3b4b",
            Variant::CoxIJ => "a34b12",
        }
    }

    pub fn word(self) -> Word {
        diagram().word(self.text()).expect("valid word")
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::W => "w",
            Variant::W2 => "w2",
            Variant::W3 => "w3",
            Variant::Base => "base",
            Variant::CoxIJ => "coxIJ",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown word variant '{s}'")))
    }
}

pub fn paper_words() -> (Word, Word, Word) {
    (Variant::W.word(), Variant::W2.word(), Variant::W3.word())
}

/// Letter substitution on words given as pairs of generator names.
pub fn swap_letters(d: &CoxeterDiagram, word: &Word, pairs: &[(&str, &str)]) -> Word {
    let idx = |s: &str| d.index_of(s).expect("generator name");
    let pairs: Vec<(usize, usize)> = pairs.iter().map(|&(x, y)| (idx(x), idx(y))).collect();
    word.map_letters(|g| {
        pairs
            .iter()
            .find_map(|&(x, y)| {
                if g == x {
                    Some(y)
                } else if g == y {
                    Some(x)
                } else {
                    None
                }
            })
            .unwrap_or(g)
    })
}

pub fn power_length(variant: Variant, n: usize) -> Result<usize> {
    let d = diagram();
    d.evaluate(&variant.word().pow(n))?.length(&d)
}

/// Whether `variant^n` is uniquely labelled. The memoised counter runs
/// first; if it exhausts `cap` states the element is looked up in a ball
/// census instead.
pub fn power_is_ulg(variant: Variant, n: usize, cap: usize) -> Result<bool> {
    let d = diagram();
    let w = variant.word().pow(n);
    match is_ulg_with_cap(&d, &w, cap) {
        Err(Error::Resource { .. }) => {
            if !d.is_reduced(&w)? {
                return Ok(false);
            }
            let census = ball_census(&d, w.len())?;
            let e = d.evaluate(&w)?;
            let table = census
                .labels(&e)?
                .ok_or_else(|| Error::Internal("element missing from its own ball".into()))?;
            Ok(table.get(&w.label(d.rank())).is_some_and(|c| c.is_one()))
        }
        other => other,
    }
}

pub fn power_is_ulg_default(variant: Variant, n: usize) -> Result<bool> {
    power_is_ulg(variant, n, DEFAULT_STATE_CAP)
}

/// The rewriting `w^n = 1a3 · (1b23a4)^(2n−1) · 2b4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub n: usize,
    pub same_element: bool,
    pub middle_reduced: bool,
    pub middle_length: usize,
    pub length: usize,
    pub lower_bound: usize,
}

impl NormalForm {
    pub fn holds(&self) -> bool {
        self.same_element && self.middle_reduced && self.length >= self.lower_bound
    }
}

pub fn normal_form(n: usize) -> Result<NormalForm> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let d = diagram();
    let middle = d.word("1b23a4")?.pow(2 * n - 1);
    let rewritten = d.word("1a3")?.concat(&middle).concat(&d.word("2b4")?);
    let e = d.evaluate(&Variant::W.word().pow(n))?;
    Ok(NormalForm {
        n,
        same_element: e == d.evaluate(&rewritten)?,
        middle_reduced: d.is_reduced(&middle)?,
        middle_length: middle.len(),
        length: e.length(&d)?,
        lower_bound: 12 * n - 12,
    })
}

pub fn normal_form_identity(n: usize) -> Result<bool> {
    Ok(normal_form(n)?.holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Pass,
    Fail,
    /// The argument for the case is not a statement about a finite word.
    ProseOnly,
    /// The case carries no mechanism to check.
    Unlisted,
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::ProseOnly => "prose-only",
            CaseStatus::Unlisted => "unlisted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseOutcome {
    pub id: u32,
    pub claim: String,
    pub observed: String,
    pub status: CaseStatus,
}

impl CaseOutcome {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.id, self.claim, self.observed, self.status
        )
    }
}

/// Accumulates claims and observations for one case.
struct Check<'d> {
    d: &'d CoxeterDiagram,
    claims: Vec<String>,
    observed: Vec<String>,
    ok: bool,
}

impl<'d> Check<'d> {
    fn new(d: &'d CoxeterDiagram) -> Self {
        Check {
            d,
            claims: Vec::new(),
            observed: Vec::new(),
            ok: true,
        }
    }

    fn expect(&mut self, claim: impl Into<String>, observed: impl Into<String>, ok: bool) {
        self.claims.push(claim.into());
        self.observed.push(observed.into());
        self.ok &= ok;
    }

    fn not_reduced(&mut self, what: &str, text: &str) -> Result<()> {
        let w = self.d.word(text)?;
        let len = self.d.evaluate(&w)?.length(self.d)?;
        self.expect(
            format!("{what} {text} not reduced"),
            format!("length {len} of {}", w.len()),
            len < w.len(),
        );
        Ok(())
    }

    fn not_ulg(&mut self, text: &str) -> Result<()> {
        let w = self.d.word(text)?;
        let ulg = is_ulg(self.d, &w)?;
        let reduced = self.d.is_reduced(&w)?;
        self.expect(
            format!("{text} not a u.l.g."),
            format!("reduced={reduced} ulg={ulg}"),
            !ulg,
        );
        Ok(())
    }

    fn outcome(self, id: u32) -> CaseOutcome {
        CaseOutcome {
            id,
            claim: self.claims.join("; "),
            observed: self.observed.join("; "),
            status: if self.ok {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            },
        }
    }
}

/// Words displayed in the uniqueness proof for individual cases.
const CASE23_EXTENSION: &str = "a1aba2a1ab4b3ba2ab4ba1a";
const CASE27_OTHER: &str = "a14bab3b4bab3b";
const CASE52_SUFFIX: &str = "a2ab3b4ba1a2aba1a2a";

fn check_case(d: &CoxeterDiagram, case: &CaseRecord, all: &[CaseRecord]) -> Result<CaseOutcome> {
    if case.mechanisms.contains(&Mechanism::Unlisted) {
        let w = d.word(&case.word)?;
        let len = d.evaluate(&w)?.length(d)?;
        let ulg = is_ulg(d, &w)?;
        return Ok(CaseOutcome {
            id: case.id,
            claim: "none".into(),
            observed: format!("length {len} of {}; ulg={ulg}", w.len()),
            status: CaseStatus::Unlisted,
        });
    }
    if case.id == 17 {
        return Ok(CaseOutcome {
            id: 17,
            claim: "letter 1 recurs at distance 12 (periodicity argument)".into(),
            observed: "not a finite-word statement".into(),
            status: CaseStatus::ProseOnly,
        });
    }
    let mut c = Check::new(d);
    for m in &case.mechanisms {
        match m {
            Mechanism::XyxyNotReduced | Mechanism::XyxDotsXyxNotReduced => {
                c.not_reduced("case", &case.word)?
            }
            Mechanism::XyDotsYxyNotUlg => c.not_ulg(&case.word)?,
            Mechanism::ProofHandled => proof_claims(&mut c, case, all)?,
            Mechanism::Unlisted => unreachable!(),
        }
    }
    Ok(c.outcome(case.id))
}

fn word_of(all: &[CaseRecord], id: u32) -> Result<&str> {
    all.iter()
        .find(|c| c.id == id)
        .map(|c| c.word.as_str())
        .ok_or_else(|| Error::invalid(format!("case {id} missing from the corpus")))
}

fn proof_claims(c: &mut Check<'_>, case: &CaseRecord, all: &[CaseRecord]) -> Result<()> {
    let d = c.d;
    match case.id {
        28 | 33 | 36 | 59 | 60 | 62 | 68 => c.not_reduced("case", &case.word)?,
        27 => {
            let (u, v) = (d.word(&case.word)?, d.word(CASE27_OTHER)?);
            let same = d.evaluate(&u)? == d.evaluate(&v)?;
            let label = u.label(d.rank()) == v.label(d.rank());
            c.expect(
                format!("{} = {CASE27_OTHER} with equal labels", case.word),
                format!("same element={same} same label={label}"),
                same && label && u != v,
            );
            c.not_ulg(&case.word)?;
        }
        52 => {
            let suffix = case.word.ends_with(CASE52_SUFFIX);
            c.expect("displayed word is a suffix", format!("{suffix}"), suffix);
            c.not_reduced("suffix", CASE52_SUFFIX)?;
        }
        23 => {
            let ends = CASE23_EXTENSION.ends_with(&case.word);
            c.expect("extension ends with the case", format!("{ends}"), ends);
            c.not_reduced("extension", CASE23_EXTENSION)?;
        }
        31 => {
            let w23 = d.word(word_of(all, 23)?)?;
            let inverse = w23.reversed() == d.word(&case.word)?;
            c.expect("inverse of case 23", format!("{inverse}"), inverse);
            let ext = d.word(CASE23_EXTENSION)?.reversed();
            c.not_reduced("reversed extension", &ext.display(d).to_string())?;
        }
        5 => {
            // The subtree below a1a2ab3b (cases 6..=10) maps onto the one
            // below this case under 3 <-> 4.
            let prefix = swap_letters(d, &d.word("a1a2ab3b")?, &[("3", "4")]);
            let matches = prefix == d.word(&case.word)?;
            c.expect(
                "image of a1a2ab3b under 3<->4 is the case",
                format!("{matches}"),
                matches,
            );
            for id in 6..=10 {
                let src = all
                    .iter()
                    .find(|x| x.id == id)
                    .ok_or_else(|| Error::invalid(format!("case {id} missing")))?;
                let image = swap_letters(d, &d.word(&src.word)?, &[("3", "4")]);
                let text = image.display(d).to_string();
                if src.mechanisms.contains(&Mechanism::XyDotsYxyNotUlg) {
                    c.not_ulg(&text)?;
                } else {
                    c.not_reduced(&format!("image of case {id}"), &text)?;
                }
            }
        }
        other => {
            c.expect(
                format!("case {other} has a displayed argument"),
                "no mechanical check known",
                false,
            );
        }
    }
    Ok(())
}

/// Checks every case of the shipped corpus, in parallel; ordered by id.
pub fn run_case_corpus() -> Result<Vec<CaseOutcome>> {
    let cases = load_cases()?;
    run_cases(&cases)
}

pub fn run_cases(cases: &[CaseRecord]) -> Result<Vec<CaseOutcome>> {
    let d = diagram();
    let mut out = cases
        .par_iter()
        .map(|c| check_case(&d, c, cases))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|o| o.id);
    Ok(out)
}

/// Distances from the vertices of one periodic line to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FellowTravelProfile {
    pub prefix: usize,
    pub anchor_len: usize,
    /// For vertex `i` of the anchored line, the distance to the nearest
    /// vertex of the reference line within the search window.
    pub distances: Vec<usize>,
    pub min: usize,
    pub max: usize,
    /// Over `anchor_len ..= prefix − anchor_len`.
    pub interior_min: usize,
    pub interior_max: usize,
}

const HALF_WINDOW: usize = 12;

fn vertices(
    d: &CoxeterDiagram,
    start: GroupElement,
    period: &Word,
    count: usize,
) -> Result<Vec<GroupElement>> {
    let letters = period.letters();
    if letters.is_empty() {
        return Err(Error::invalid("line period must be nonempty"));
    }
    let mut cur = start;
    let mut out = Vec::with_capacity(count + 1);
    out.push(cur.clone());
    for k in 0..count {
        cur.right_multiply_in_place(d, letters[k % letters.len()])?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Compares the line `anchor · line_b^∞` against `line_a^∞` on the first
/// `prefix` steps of the former.
pub fn fellow_travel_profile(
    d: &CoxeterDiagram,
    line_a: &Word,
    line_b: &Word,
    anchor: &Word,
    prefix: usize,
) -> Result<FellowTravelProfile> {
    let k = anchor.len();
    if prefix < 2 * k {
        return Err(Error::invalid("prefix shorter than twice the anchor"));
    }
    let reach = prefix + k + HALF_WINDOW;
    let a_inv = vertices(d, d.identity(), line_a, reach)?
        .iter()
        .map(|u| u.inverse(d))
        .collect::<Result<Vec<_>>>()?;
    let b = vertices(d, d.evaluate(anchor)?, line_b, prefix)?;
    let distances = b
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let lo = i.saturating_sub(HALF_WINDOW);
            let hi = i + k + HALF_WINDOW;
            a_inv[lo..=hi]
                .iter()
                .map(|ui| ui.compose(v)?.length(d))
                .try_fold(usize::MAX, |m, x| x.map(|x| m.min(x)))
        })
        .collect::<Result<Vec<_>>>()?;
    let interior = &distances[k..=prefix - k];
    Ok(FellowTravelProfile {
        prefix,
        anchor_len: k,
        min: *distances.iter().min().unwrap(),
        max: *distances.iter().max().unwrap(),
        interior_min: *interior.iter().min().unwrap(),
        interior_max: *interior.iter().max().unwrap(),
        distances,
    })
}

/// Anchors placing the other two lines next to the `w` line.
pub const W2_ANCHOR: &str = "1a23b3";
pub const W3_ANCHOR: &str = "1a3b41";
