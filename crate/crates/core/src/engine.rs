//! Exact group arithmetic through the integer geometric representation.
//!
//! An element is stored as the matrix of its action on the simple roots:
//! column `j` holds the image of `α_j` in the simple-root basis. Right
//! multiplication by `s_g` replaces column `j` by `col_j - a(g, j) col_g`,
//! so only the columns of `g` and its neighbours change. A generator is a
//! right descent exactly when its column is a negative root.

use std::fmt;

use smallvec::SmallVec;

use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};

/// Index of a generator in the diagram's name list.
pub type Generator = usize;

/// A finite sequence of generators. Need not be reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Applies a permutation of generator indices letter by letter.
    pub fn map_letters(&self, f: impl Fn(Generator) -> Generator) -> Word {
        Word(self.0.iter().map(|&g| f(g)).collect())
    }

    /// Letter multiplicities.
    pub fn label(&self, rank: usize) -> LabelVector {
        let mut l = LabelVector::zero(rank);
        for &g in &self.0 {
            l.0[g] += 1;
        }
        l
    }

    /// Parses a word. With single-character generator names the text is
    /// read character by character (whitespace and `·` are ignored), so
    /// `a1ab3ba2ab4b` works; otherwise tokens are whitespace separated.
    pub fn parse(d: &CoxeterDiagram, text: &str) -> Result<Word> {
        let lookup = |tok: &str| {
            d.index_of(tok)
                .ok_or_else(|| Error::invalid(format!("unknown generator '{tok}' in word")))
        };
        let letters = if d.has_single_char_names() {
            let mut buf = [0u8; 4];
            text.chars()
                .filter(|c| !c.is_whitespace() && *c != '·')
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split_whitespace()
                .map(lookup)
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    /// Renders the word in the format accepted by [`Word::parse`].
    pub fn display<'a>(&'a self, d: &'a CoxeterDiagram) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            diagram: d,
        }
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    diagram: &'a CoxeterDiagram,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.diagram.has_single_char_names() {
            ""
        } else {
            " "
        };
        for (k, &g) in self.word.0.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            f.write_str(self.diagram.name(g))?;
        }
        Ok(())
    }
}

/// Letter multiplicities of a word, one coordinate per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelVector(SmallVec<[u32; 8]>);

impl LabelVector {
    pub fn zero(rank: usize) -> Self {
        LabelVector(SmallVec::from_elem(0, rank))
    }

    pub fn unit(rank: usize, g: Generator) -> Self {
        let mut l = Self::zero(rank);
        l.0[g] = 1;
        l
    }

    pub fn from_slice(counts: &[u32]) -> Self {
        LabelVector(SmallVec::from_slice(counts))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, g: Generator) -> u32 {
        self.0[g]
    }

    /// Coordinate sum, i.e. the length of any word with this label.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn plus_unit(&self, g: Generator) -> Self {
        let mut l = self.clone();
        l.0[g] += 1;
        l
    }

    pub fn minus_unit(&self, g: Generator) -> Option<Self> {
        let mut l = self.clone();
        l.0[g] = l.0[g].checked_sub(1)?;
        Some(l)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = Generator> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    /// Parses `1,2,1` (comma separated counts).
    pub fn parse_csv(text: &str) -> Result<Self> {
        let counts = text
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad label coordinate '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_slice(&counts))
    }
}

impl fmt::Display for LabelVector {
    /// Comma separated, e.g. `1,2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A group element as an exact integer matrix. Equality and hashing use
/// the row-major entry sequence, which is canonical because the
/// representation is faithful.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    rank: usize,
    entries: Box<[i32]>,
}

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        let mut entries = vec![0; rank * rank].into_boxed_slice();
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        GroupElement { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major matrix entries; the canonical hash key.
    pub fn key(&self) -> &[i32] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> i32 {
        self.entries[row * self.rank + col]
    }

    /// Image of the simple root `α_col` in simple-root coordinates.
    pub fn column(&self, col: usize) -> impl Iterator<Item = i32> + '_ {
        (0..self.rank).map(move |r| self.entries[r * self.rank + col])
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| self.entry(i, j) == i32::from(i == j)))
    }

    /// `self · s_g`.
    pub fn right_multiply(&self, d: &CoxeterDiagram, g: Generator) -> Result<Self> {
        let mut out = self.clone();
        out.right_multiply_in_place(d, g)?;
        Ok(out)
    }

    pub fn right_multiply_in_place(&mut self, d: &CoxeterDiagram, g: Generator) -> Result<()> {
        let n = self.rank;
        debug_assert_eq!(n, d.rank());
        if g >= n {
            return Err(Error::invalid(format!(
                "generator index {g} out of range for rank {n}"
            )));
        }
        let overflow = || Error::Overflow(format!("right multiplication by generator {g}"));
        for j in 0..n {
            let a = d.cartan(g, j);
            if a == 0 {
                continue;
            }
            for r in 0..n {
                let cg = self.entries[r * n + g];
                // column g itself is updated last (j == g uses a = 2)
                if j == g {
                    continue;
                }
                let v = a
                    .checked_mul(cg)
                    .and_then(|t| self.entries[r * n + j].checked_sub(t))
                    .ok_or_else(overflow)?;
                self.entries[r * n + j] = v;
            }
        }
        for r in 0..n {
            let v = self.entries[r * n + g].checked_neg().ok_or_else(overflow)?;
            self.entries[r * n + g] = v;
        }
        Ok(())
    }

    /// True iff `l(self · s_g) < l(self)`, i.e. column `g` is a negative root.
    pub fn is_right_descent(&self, g: Generator) -> bool {
        self.column(g).all(|x| x <= 0)
    }

    pub fn right_descents(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.rank).filter(move |&g| self.is_right_descent(g))
    }

    /// Length, by stripping right descents until the identity is reached.
    pub fn length(&self, d: &CoxeterDiagram) -> Result<usize> {
        Ok(self.reduced_word(d)?.len())
    }

    /// One reduced expression: repeatedly strip the smallest right descent.
    pub fn reduced_word(&self, d: &CoxeterDiagram) -> Result<Word> {
        let mut cur = self.clone();
        let mut rev = Vec::new();
        while let Some(g) = (0..cur.rank).find(|&g| cur.is_right_descent(g)) {
            cur.right_multiply_in_place(d, g)?;
            rev.push(g);
        }
        rev.reverse();
        Ok(Word(rev))
    }

    /// The inverse element. For involutive generators the inverse of a
    /// reduced word is its reversal.
    pub fn inverse(&self, d: &CoxeterDiagram) -> Result<Self> {
        d.evaluate(&self.reduced_word(d)?.reversed())
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> Result<Self> {
        let n = self.rank;
        assert_eq!(n, other.rank, "rank mismatch");
        let mut entries = vec![0i32; n * n].into_boxed_slice();
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    acc += i64::from(self.entry(i, k)) * i64::from(other.entry(k, j));
                }
                entries[i * n + j] = i32::try_from(acc)
                    .map_err(|_| Error::Overflow("matrix product".to_string()))?;
            }
        }
        Ok(GroupElement { rank: n, entries })
    }

    /// Cayley-graph distance `l(self⁻¹ · other)`.
    pub fn distance(&self, d: &CoxeterDiagram, other: &GroupElement) -> Result<usize> {
        self.inverse(d)?.compose(other)?.length(d)
    }
}

impl CoxeterDiagram {
    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank())
    }

    /// Left-to-right product of the generators of `word`.
    pub fn evaluate(&self, word: &Word) -> Result<GroupElement> {
        let mut e = self.identity();
        for &g in word.letters() {
            e.right_multiply_in_place(self, g)?;
        }
        Ok(e)
    }

    /// True iff no letter is a right descent of the prefix before it.
    pub fn is_reduced(&self, word: &Word) -> Result<bool> {
        let mut e = self.identity();
        for &g in word.letters() {
            if g >= self.rank() {
                return Err(Error::invalid(format!("generator index {g} out of range")));
            }
            if e.is_right_descent(g) {
                return Ok(false);
            }
            e.right_multiply_in_place(self, g)?;
        }
        Ok(true)
    }

    /// Parses a word in this diagram's generator names.
    pub fn word(&self, text: &str) -> Result<Word> {
        Word::parse(self, text)
    }
}
