//! Coxeter diagrams with exponents in {2, 3, ∞}.
//!
//! A diagram is stored as an ordered list of generator names plus a dense
//! symmetric exponent table. The order of the names fixes the coordinate
//! order of label vectors and of the representation matrices.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coxeter exponent m(i, j) for a pair of distinct generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    /// The generators commute.
    Two,
    /// Braid relation `ghg = hgh`.
    Three,
    /// No relation between the two generators.
    Infinite,
}

impl Exponent {
    /// Off-diagonal entry of the (symmetrised) Cartan matrix: 0, -1 or -2.
    pub fn cartan(self) -> i32 {
        match self {
            Exponent::Two => 0,
            Exponent::Three => -1,
            Exponent::Infinite => -2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoxeterDiagram {
    label: String,
    names: Vec<String>,
    // n*n, diagonal entries unused
    exponents: Vec<Exponent>,
}

impl PartialEq for CoxeterDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.exponents == other.exponents
    }
}

impl Eq for CoxeterDiagram {}

/// Names available through [`CoxeterDiagram::builtin`].
pub const BUILTIN_NAMES: &[&str] = &["A<n>", "Atilde2", "Dstar4", "Dtilde6-paper"];

fn check_token(tok: &str) -> Result<()> {
    if tok.is_empty() {
        return Err(Error::invalid("empty generator name"));
    }
    if tok
        .chars()
        .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '-' | '#' | ',' | ':'))
    {
        return Err(Error::invalid(format!("invalid generator name '{tok}'")));
    }
    Ok(())
}

impl CoxeterDiagram {
    /// Type A_n: generators "1".."n" joined in a path.
    pub fn chain(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("chain needs at least one generator"));
        }
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let braid: Vec<(String, String)> = (1..n)
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect();
        let mut d = Self::from_edges(&names, &braid, &[])?;
        d.label = format!("A{n}");
        Ok(d)
    }

    /// Builds a diagram from a name list, the exponent-3 pairs and the
    /// exponent-∞ pairs. Every other pair commutes.
    pub fn from_edges<S: AsRef<str>>(
        names: &[S],
        braid_edges: &[(S, S)],
        infinite_edges: &[(S, S)],
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::invalid("diagram needs at least one generator"));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            check_token(name)?;
            if names[..i].contains(name) {
                return Err(Error::invalid(format!("duplicate generator name '{name}'")));
            }
        }
        let n = names.len();
        let lookup = |tok: &str| -> Result<usize> {
            names
                .iter()
                .position(|x| x == tok)
                .ok_or_else(|| Error::invalid(format!("unknown generator '{tok}'")))
        };
        let mut exponents = vec![Exponent::Two; n * n];
        let mut set = |pairs: &[(S, S)], exp: Exponent| -> Result<()> {
            for (a, b) in pairs {
                let (a, b) = (a.as_ref(), b.as_ref());
                let i = lookup(a)?;
                let j = lookup(b)?;
                if i == j {
                    return Err(Error::invalid(format!("self-loop on '{a}'")));
                }
                let cur = exponents[i * n + j];
                if cur != Exponent::Two && cur != exp {
                    return Err(Error::invalid(format!(
                        "pair '{a}-{b}' listed as both braid and infinite edge"
                    )));
                }
                exponents[i * n + j] = exp;
                exponents[j * n + i] = exp;
            }
            Ok(())
        };
        set(braid_edges, Exponent::Three)?;
        set(infinite_edges, Exponent::Infinite)?;
        Ok(Self {
            label: "custom".to_string(),
            names,
            exponents,
        })
    }

    /// Named diagrams: `A<n>`, `Atilde2`, `Dstar4` and `Dtilde6-paper`.
    pub fn builtin(token: &str) -> Result<Self> {
        let mut d = match token {
            "Atilde2" => {
                Self::from_edges(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")], &[])?
            }
            "Dstar4" => Self::from_edges(
                &["0", "1", "2", "3"],
                &[("0", "1"), ("0", "2"), ("0", "3")],
                &[],
            )?,
            "Dtilde6-paper" => Self::from_edges(
                &["1", "2", "a", "b", "3", "4"],
                &[("1", "a"), ("2", "a"), ("a", "b"), ("b", "3"), ("b", "4")],
                &[],
            )?,
            _ => match token.strip_prefix('A').map(str::parse::<usize>) {
                Some(Ok(n)) if n >= 1 && !token[1..].starts_with('0') => Self::chain(n)?,
                _ => {
                    return Err(Error::invalid(format!(
                        "unknown builtin diagram '{token}'; available: {}",
                        BUILTIN_NAMES.join(", ")
                    )))
                }
            },
        };
        d.label = token.to_string();
        Ok(d)
    }

    /// Parses the line-oriented diagram format:
    ///
    /// ```text
    /// vertices: 1 2 a b 3 4
    /// edges: 1-a 2-a a-b b-3 b-4
    /// infinite:
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<Vec<String>> = None;
        let mut edges: Option<Vec<(String, String)>> = None;
        let mut infinite: Option<Vec<(String, String)>> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| perr(format!("expected '<key>: ...', got '{line}'")))?;
            let toks = rest.split_whitespace();
            match key.trim() {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(perr("duplicate 'vertices' line".into()));
                    }
                    vertices = Some(toks.map(str::to_string).collect());
                }
                k @ ("edges" | "infinite") => {
                    if vertices.is_none() {
                        return Err(perr(format!("'{k}' before 'vertices'")));
                    }
                    let mut pairs = Vec::new();
                    for tok in toks {
                        let (a, b) = tok
                            .split_once('-')
                            .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains('-'))
                            .ok_or_else(|| perr(format!("malformed edge '{tok}'")))?;
                        pairs.push((a.to_string(), b.to_string()));
                    }
                    if k == "infinite" && edges.is_none() {
                        return Err(perr("'infinite' before 'edges'".into()));
                    }
                    let slot = if k == "edges" {
                        &mut edges
                    } else {
                        &mut infinite
                    };
                    if slot.is_some() {
                        return Err(perr(format!("duplicate '{k}' line")));
                    }
                    *slot = Some(pairs);
                }
                other => return Err(perr(format!("unknown key '{other}'"))),
            }
        }
        let vertices = vertices.ok_or(Error::Parse {
            line: 0,
            message: "missing 'vertices' line".into(),
        })?;
        let edges = edges.ok_or(Error::Parse {
            line: 0,
            message: "missing 'edges' line".into(),
        })?;
        Self::from_edges(&vertices, &edges, &infinite.unwrap_or_default())
    }

    /// Serialises to the format read by [`CoxeterDiagram::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.names.join(" "));
        let pairs = |exp: Exponent| -> Vec<String> {
            self.pairs()
                .filter(|&(i, j)| self.exponent(i, j) == exp)
                .map(|(i, j)| format!("{}-{}", self.names[i], self.names[j]))
                .collect()
        };
        let edges = pairs(Exponent::Three);
        let inf = pairs(Exponent::Infinite);
        out.push_str("edges:");
        for e in &edges {
            out.push(' ');
            out.push_str(e);
        }
        out.push('\n');
        if !inf.is_empty() {
            out.push_str("infinite:");
            for e in &inf {
                out.push(' ');
                out.push_str(e);
            }
            out.push('\n');
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Descriptive label (the builtin token, or "custom").
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Exponent of the unordered pair; `None` on the diagonal.
    pub fn exponent(&self, i: usize, j: usize) -> Exponent {
        debug_assert!(i != j, "exponent(i, i) is 1");
        self.exponents[i * self.rank() + j]
    }

    /// Cartan entry a(i, j): 2 on the diagonal, else 0, -1 or -2.
    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        if i == j {
            2
        } else {
            self.exponent(i, j).cartan()
        }
    }

    /// Unordered pairs (i < j).
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Edge set: pairs whose exponent is not 2.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs()
            .filter(|&(i, j)| self.exponent(i, j) != Exponent::Two)
    }

    /// Neighbours of `i` with exponent ≠ 2.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.exponent(i, j) != Exponent::Two)
    }

    /// Neighbours of `i` in the simply-laced graph (exponent 3 only).
    pub fn braid_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.exponent(i, j) == Exponent::Three)
    }

    /// Degree of `i` in the exponent-3 graph.
    pub fn degree(&self, i: usize) -> usize {
        self.braid_neighbors(i).count()
    }

    pub fn has_infinite_edges(&self) -> bool {
        self.edges()
            .any(|(i, j)| self.exponent(i, j) == Exponent::Infinite)
    }

    /// Right-angled in the broad sense: no exponent-3 pairs.
    pub fn is_right_angled(&self) -> bool {
        self.pairs()
            .all(|(i, j)| self.exponent(i, j) != Exponent::Three)
    }

    /// True when there are no ∞ edges and the exponent-3 graph is a tree.
    pub fn is_simply_laced_tree(&self) -> bool {
        if self.has_infinite_edges() {
            return false;
        }
        let n = self.rank();
        let edge_count = self.edges().count();
        if edge_count + 1 != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.braid_neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True when every name is a single character, so words can be written
    /// without separators.
    pub fn has_single_char_names(&self) -> bool {
        self.names.iter().all(|s| s.chars().count() == 1)
    }
}

impl FromStr for CoxeterDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_edges() {
        let d = CoxeterDiagram::chain(3).unwrap();
        assert_eq!(d.names(), ["1", "2", "3"]);
        assert_eq!(d.exponent(0, 1), Exponent::Three);
        assert_eq!(d.exponent(1, 2), Exponent::Three);
        assert_eq!(d.exponent(0, 2), Exponent::Two);
        assert_eq!(d.edges().count(), 2);

        let one = CoxeterDiagram::chain(1).unwrap();
        assert_eq!(one.rank(), 1);
        assert_eq!(one.edges().count(), 0);

        let five = CoxeterDiagram::chain(5).unwrap();
        assert!(five.is_simply_laced_tree());
        assert_eq!(
            (0..5).map(|i| five.degree(i)).collect::<Vec<_>>(),
            [1, 2, 2, 2, 1]
        );
    }

    #[test]
    fn chain_zero_rejected() {
        assert!(matches!(
            CoxeterDiagram::chain(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn from_edges_examples() {
        let d = CoxeterDiagram::from_edges::<&str>(&["a", "b", "c"], &[], &[]).unwrap();
        assert_eq!(d.edges().count(), 0);

        let t = CoxeterDiagram::from_edges(
            &["1", "2", "3"],
            &[("1", "2"), ("2", "3"), ("1", "3")],
            &[],
        )
        .unwrap();
        assert_eq!(t, CoxeterDiagram::builtin("Atilde2").unwrap());
        assert!(!t.is_simply_laced_tree());

        let d6 = CoxeterDiagram::from_edges(
            &["1", "2", "a", "b", "3", "4"],
            &[("1", "a"), ("2", "a"), ("a", "b"), ("b", "3"), ("b", "4")],
            &[],
        )
        .unwrap();
        assert_eq!(d6, CoxeterDiagram::builtin("Dtilde6-paper").unwrap());
        assert_eq!(d6.degree(2), 3);
        assert_eq!(d6.degree(3), 3);
    }

    #[test]
    fn from_edges_errors_name_offender() {
        let err = |r: Result<CoxeterDiagram>| match r {
            Err(Error::InvalidArgument(m)) => m,
            other => panic!("expected invalid argument, got {other:?}"),
        };
        assert!(err(CoxeterDiagram::from_edges(&["a", "b"], &[("a", "z")], &[])).contains("'z'"));
        assert!(err(CoxeterDiagram::from_edges::<&str>(&["a", "a"], &[], &[])).contains("'a'"));
        assert!(err(CoxeterDiagram::from_edges(&["a", "b"], &[("b", "b")], &[])).contains("'b'"));
        assert!(err(CoxeterDiagram::from_edges(
            &["a", "b"],
            &[("a", "b")],
            &[("b", "a")]
        ))
        .contains("'b-a'"));
        // repeating a pair in the same list is harmless
        assert!(CoxeterDiagram::from_edges(&["a", "b"], &[("a", "b"), ("b", "a")], &[]).is_ok());
    }

    #[test]
    fn builtins() {
        assert_eq!(
            CoxeterDiagram::builtin("A3").unwrap(),
            CoxeterDiagram::chain(3).unwrap()
        );
        let star = CoxeterDiagram::builtin("Dstar4").unwrap();
        assert_eq!(star.braid_neighbors(0).collect::<Vec<_>>(), [1, 2, 3]);
        assert!(star.is_simply_laced_tree());
        let err = CoxeterDiagram::builtin("E8").unwrap_err();
        assert!(err.to_string().contains("Dtilde6-paper"));
        assert!(CoxeterDiagram::builtin("A0").is_err());
        assert!(CoxeterDiagram::builtin("A03").is_err());
    }

    #[test]
    fn parse_examples() {
        let d: CoxeterDiagram = "vertices: 1 2 3\nedges: 1-2 2-3".parse().unwrap();
        assert_eq!(d, CoxeterDiagram::chain(3).unwrap());

        let d6 =
            CoxeterDiagram::parse("vertices: 1 2 a b 3 4\nedges: 1-a 2-a a-b b-3 b-4").unwrap();
        assert_eq!(d6, CoxeterDiagram::builtin("Dtilde6-paper").unwrap());

        let one = CoxeterDiagram::parse("vertices: x\nedges:").unwrap();
        assert_eq!(one.rank(), 1);

        let ra =
            CoxeterDiagram::parse("# star\n\nvertices: c x y\nedges:\ninfinite: c-x c-y # legs\n")
                .unwrap();
        assert_eq!(ra.exponent(0, 1), Exponent::Infinite);
        assert!(ra.is_right_angled());
    }

    #[test]
    fn parse_errors_carry_line() {
        match CoxeterDiagram::parse("vertices: a b\n\nedges: a+b") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            CoxeterDiagram::parse("vertices a b"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            CoxeterDiagram::parse("vertices: a b\nedges: a-c"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(CoxeterDiagram::parse("vertices: a b").is_err());
    }

    #[test]
    fn serialise_round_trip() {
        for tok in ["A1", "A4", "Atilde2", "Dstar4", "Dtilde6-paper"] {
            let d = CoxeterDiagram::builtin(tok).unwrap();
            assert_eq!(CoxeterDiagram::parse(&d.to_text()).unwrap(), d);
        }
    }
}
