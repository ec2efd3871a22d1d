//! Words on simply-laced tree diagrams read as paths on the tree: turning
//! vertices, branching index, forbidden subwords and length bounds.
//!
//! Everything here is a necessary condition for a word to be uniquely
//! labelled; none of it certifies that a word is.

use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::CoxeterDiagram;
use crate::engine::{Generator, Word};
use crate::error::{Error, Result};

fn require_tree(d: &CoxeterDiagram) -> Result<()> {
    if d.is_simply_laced_tree() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "diagram '{}' is not a simply-laced tree",
            d.label()
        )))
    }
}

fn adjacent(d: &CoxeterDiagram, a: Generator, b: Generator) -> bool {
    a != b && d.cartan(a, b) == -1
}

/// True iff consecutive letters are adjacent vertices of the tree.
pub fn path_legal(d: &CoxeterDiagram, word: &Word) -> Result<bool> {
    require_tree(d)?;
    let w = word.letters();
    if let Some(&g) = w.iter().find(|&&g| g >= d.rank()) {
        return Err(Error::invalid(format!("generator index {g} out of range")));
    }
    Ok(w.windows(2).all(|p| adjacent(d, p[0], p[1])))
}

/// A factor `μ ν μ` of the word, located at the position of `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Turning {
    pub position: usize,
    pub vertex: Generator,
    /// The vertex the path turns back to.
    pub via: Generator,
    /// `via` is a branching vertex (degree ≥ 3).
    pub short: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurningProfile {
    pub word: Word,
    pub turnings: Vec<Turning>,
    /// First and last letter; `None` for the empty word.
    pub start: Option<Generator>,
    pub end: Option<Generator>,
    /// Number of short turnings, with repetition.
    pub branching_index: usize,
}

impl TurningProfile {
    /// Start, turnings and end as `(position, vertex)`, in path order.
    pub fn nodes(&self) -> Vec<(usize, Generator)> {
        let w = self.word.letters();
        if w.is_empty() {
            return Vec::new();
        }
        let mut out = vec![(0, w[0])];
        out.extend(self.turnings.iter().map(|t| (t.position, t.vertex)));
        out.push((w.len() - 1, w[w.len() - 1]));
        out
    }

    /// Turning list as `name` + `s`/`l`, comma separated; `-` when empty.
    pub fn turning_list(&self, d: &CoxeterDiagram) -> String {
        if self.turnings.is_empty() {
            return "-".into();
        }
        self.turnings
            .iter()
            .map(|t| format!("{}{}", d.name(t.vertex), if t.short { 's' } else { 'l' }))
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn turning_profile(d: &CoxeterDiagram, word: &Word) -> Result<TurningProfile> {
    if !path_legal(d, word)? {
        return Err(Error::invalid(format!(
            "'{}' is not a path on the diagram",
            word.display(d)
        )));
    }
    let w = word.letters();
    let turnings: Vec<Turning> = (1..w.len().saturating_sub(1))
        .filter(|&p| w[p - 1] == w[p + 1])
        .map(|p| Turning {
            position: p,
            vertex: w[p],
            via: w[p - 1],
            short: d.degree(w[p - 1]) >= 3,
        })
        .collect();
    Ok(TurningProfile {
        word: word.clone(),
        branching_index: turnings.iter().filter(|t| t.short).count(),
        turnings,
        start: w.first().copied(),
        end: w.last().copied(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finding {
    /// `αβ · v · βαβ` (`tail == false`) or `βαβ · v · βα` (`tail == true`)
    /// starting at `start`, where no letter of `v` is adjacent to `α`.
    Commute {
        start: usize,
        alpha: Generator,
        beta: Generator,
        tail: bool,
    },
    /// One of the four chain factors between chain positions `l` and `m`
    /// (1-based along the chain), `shape` in 1..=4.
    Chain {
        start: usize,
        shape: u8,
        l: usize,
        m: usize,
    },
}

/// All occurrences of the forbidden factors. On chain diagrams the four
/// chain shapes are reported in addition to the general ones.
pub fn forbidden_pattern_scan(d: &CoxeterDiagram, word: &Word) -> Result<Vec<Finding>> {
    require_tree(d)?;
    let w = word.letters();
    let len = w.len();
    let mut out = Vec::new();
    for i in 0..len {
        // αβ · v · βαβ
        if i + 1 < len && w[i] != w[i + 1] {
            let (a, b) = (w[i], w[i + 1]);
            for k in i + 2..len {
                if k + 2 < len && w[k] == b && w[k + 1] == a && w[k + 2] == b {
                    out.push(Finding::Commute {
                        start: i,
                        alpha: a,
                        beta: b,
                        tail: false,
                    });
                }
                if adjacent(d, w[k], a) {
                    break;
                }
            }
        }
        // βαβ · v · βα
        if i + 2 < len && w[i] == w[i + 2] && w[i] != w[i + 1] {
            let (b, a) = (w[i], w[i + 1]);
            for k in i + 3..len {
                if k + 1 < len && w[k] == b && w[k + 1] == a {
                    out.push(Finding::Commute {
                        start: i,
                        alpha: a,
                        beta: b,
                        tail: true,
                    });
                }
                if adjacent(d, w[k], a) {
                    break;
                }
            }
        }
    }
    if let Some(order) = chain_order(d) {
        out.extend(chain_findings(&order, w));
    }
    Ok(out)
}

/// Vertices along the chain (from the lower-indexed end) when the diagram is
/// a path graph.
pub fn chain_order(d: &CoxeterDiagram) -> Option<Vec<Generator>> {
    let n = d.rank();
    if n == 0 || !d.is_simply_laced_tree() || (0..n).any(|v| d.degree(v) > 2) {
        return None;
    }
    let mut prev = usize::MAX;
    let mut cur = (0..n).find(|&v| d.degree(v) <= 1)?;
    let mut order = vec![cur];
    while let Some(next) = d.braid_neighbors(cur).find(|&u| u != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
    }
    Some(order)
}

fn chain_findings(order: &[Generator], w: &[Generator]) -> Vec<Finding> {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k + 1;
    }
    let p: Vec<usize> = w.iter().map(|&g| pos[g]).collect();
    let mut out = Vec::new();
    for l in 1..=n {
        for m in l + 2..=n {
            let down = |a: usize, b: usize| (b..=a).rev().collect::<Vec<_>>();
            let up = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
            let cat = |parts: &[Vec<usize>]| parts.concat();
            let shapes = [
                cat(&[down(m, l + 1), up(l, m), vec![m - 1]]),
                cat(&[vec![m - 1], down(m, l + 1), up(l, m)]),
                cat(&[up(l, m - 1), down(m, l), vec![l + 1]]),
                cat(&[vec![l + 1], up(l, m - 1), down(m, l)]),
            ];
            for (s, shape) in shapes.iter().enumerate() {
                for start in 0..p.len().saturating_sub(shape.len() - 1) {
                    if p[start..start + shape.len()] == shape[..] {
                        out.push(Finding::Chain {
                            start,
                            shape: s as u8 + 1,
                            l,
                            m,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Upper bound on the length of a uniquely labelled geodesic with the given
/// branching index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthBound {
    pub value: i64,
    /// Rank ≤ 3 with branching index 0: the formula is evaluated but lies
    /// outside the regime it was derived for.
    pub small_rank: bool,
}

pub fn length_bound(d: &CoxeterDiagram, branching_index: usize) -> Result<LengthBound> {
    require_tree(d)?;
    let n = d.rank() as i64;
    let b = branching_index as i64;
    Ok(if b == 0 {
        // n²/2 + 5n/2 − 7 is always an integer
        LengthBound {
            value: n * (n + 5) / 2 - 7,
            small_rank: n <= 3,
        }
    } else {
        LengthBound {
            value: n * n * (b + 1) + n * b,
            small_rank: false,
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    /// Consecutive turning vertices differ and each subpath between them
    /// meets its endpoints once.
    A,
    /// Each turning vertex is met once within two turnings either side.
    B,
    /// A visit to a branch turns exactly once inside it.
    C,
    /// Depth condition on turnings within the same branch.
    D,
    /// A long turning in a branch has a short neighbour in that branch.
    E,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Clause::A => 'a',
            Clause::B => 'b',
            Clause::C => 'c',
            Clause::D => 'd',
            Clause::E => 'e',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub reduced: bool,
    pub legal: bool,
    /// `None` when the word is not a reduced path (checks not applicable).
    pub profile: Option<TurningProfile>,
    pub violations: BTreeSet<Clause>,
}

impl StructureReport {
    pub fn applicable(&self) -> bool {
        self.profile.is_some()
    }

    /// Applicable and no clause violated. This does not certify uniqueness.
    pub fn no_violation_found(&self) -> bool {
        self.applicable() && self.violations.is_empty()
    }

    pub const HEADER: &'static str = "word\treduced\tlegal\tturning_list\tB\tviolations";

    pub fn to_tsv(&self, d: &CoxeterDiagram, word: &Word) -> String {
        let (turns, b) = match &self.profile {
            Some(p) => (p.turning_list(d), p.branching_index.to_string()),
            None => ("-".into(), "-".into()),
        };
        let violations = if !self.applicable() {
            "n/a".to_string()
        } else if self.violations.is_empty() {
            "none".to_string()
        } else {
            self.violations
                .iter()
                .map(Clause::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            word.display(d),
            self.reduced,
            self.legal,
            turns,
            b,
            violations
        )
    }
}

/// Branch data: the component of non-branching vertices each vertex lies
/// in, and for pendant components the distance to their single branching
/// vertex.
struct Branches {
    component: Vec<Option<usize>>,
    depth: Vec<Option<usize>>,
}

impl Branches {
    fn new(d: &CoxeterDiagram) -> Self {
        let n = d.rank();
        let branching: Vec<bool> = (0..n).map(|v| d.degree(v) >= 3).collect();
        let mut component = vec![None; n];
        let mut depth = vec![None; n];
        if !branching.iter().any(|&b| b) {
            return Branches { component, depth };
        }
        let mut next = 0;
        for s in 0..n {
            if branching[s] || component[s].is_some() {
                continue;
            }
            let mut members = vec![s];
            component[s] = Some(next);
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                k += 1;
                for u in d.braid_neighbors(v) {
                    if !branching[u] && component[u].is_none() {
                        component[u] = Some(next);
                        members.push(u);
                    }
                }
            }
            let attach: BTreeSet<usize> = members
                .iter()
                .flat_map(|&v| d.braid_neighbors(v).filter(|&u| branching[u]))
                .collect();
            if attach.len() == 1 {
                let g = *attach.iter().next().unwrap();
                // breadth-first from the attaching vertex into the branch
                let mut frontier = vec![g];
                let mut dist = 0;
                let mut seen = vec![g];
                while !frontier.is_empty() {
                    dist += 1;
                    let mut nf = Vec::new();
                    for &v in &frontier {
                        for u in d.braid_neighbors(v) {
                            if component[u] == Some(next) && !seen.contains(&u) {
                                seen.push(u);
                                depth[u] = Some(dist);
                                nf.push(u);
                            }
                        }
                    }
                    frontier = nf;
                }
            }
            next += 1;
        }
        Branches { component, depth }
    }
}

fn occurrences(w: &[Generator], from: usize, to: usize, g: Generator) -> usize {
    w[from..=to].iter().filter(|&&x| x == g).count()
}

/// Checks the structural conditions a uniquely labelled geodesic on a tree
/// must satisfy. A violation proves the word is not one; a clean report
/// proves nothing.
pub fn ulg_structure_check(d: &CoxeterDiagram, word: &Word) -> Result<StructureReport> {
    let legal = path_legal(d, word)?;
    let reduced = d.is_reduced(word)?;
    let mut report = StructureReport {
        reduced,
        legal,
        profile: None,
        violations: BTreeSet::new(),
    };
    if !(legal && reduced) {
        return Ok(report);
    }
    let profile = turning_profile(d, word)?;
    let w = word.letters();
    if w.len() >= 2 {
        let nodes = profile.nodes();
        let last = nodes.len() - 1;

        for k in 0..last {
            let ((p, u), (q, v)) = (nodes[k], nodes[k + 1]);
            if u == v || occurrences(w, p, q, u) != 1 || occurrences(w, p, q, v) != 1 {
                report.violations.insert(Clause::A);
            }
        }

        for k in 1..last {
            let from = nodes[k.saturating_sub(2)].0;
            let to = nodes[(k + 2).min(last)].0;
            if occurrences(w, from, to, nodes[k].1) != 1 {
                report.violations.insert(Clause::B);
            }
        }

        let branches = Branches::new(d);
        let is_turn = |p: usize| p >= 1 && p + 1 < w.len() && w[p - 1] == w[p + 1];

        // maximal runs of letters inside one branch component
        let mut s = 0;
        while s < w.len() {
            let Some(c) = branches.component[w[s]] else {
                s += 1;
                continue;
            };
            let mut e = s;
            while e + 1 < w.len() && branches.component[w[e + 1]] == Some(c) {
                e += 1;
            }
            if s > 0 && e + 1 < w.len() && w[s - 1] == w[e + 1] {
                let turns = (s..=e).filter(|&p| is_turn(p)).count();
                if turns != 1 {
                    report.violations.insert(Clause::C);
                }
            }
            s = e + 1;
        }

        // turnings per pendant branch, in path order
        let mut per_branch: Vec<Vec<(usize, bool)>> = Vec::new();
        for t in &profile.turnings {
            if let (Some(c), Some(dep)) = (branches.component[t.vertex], branches.depth[t.vertex]) {
                if per_branch.len() <= c {
                    per_branch.resize(c + 1, Vec::new());
                }
                per_branch[c].push((dep, t.short));
            }
        }
        for list in &per_branch {
            for i in 0..list.len() {
                let mut seen = BTreeSet::new();
                seen.insert(list[i].0);
                for j in i + 1..list.len() {
                    seen.insert(list[j].0);
                    let want = (list[i].0.min(list[j].0).saturating_sub(1)).max(1);
                    if !seen.contains(&want) {
                        report.violations.insert(Clause::D);
                    }
                }
                if !list[i].1 && list[i].0 >= 2 {
                    let nb: Vec<bool> = [i.checked_sub(1), Some(i + 1)]
                        .into_iter()
                        .flatten()
                        .filter_map(|k| list.get(k).map(|x| x.1))
                        .collect();
                    if !nb.is_empty() && !nb.iter().any(|&s| s) {
                        report.violations.insert(Clause::E);
                    }
                }
            }
        }
    }
    report.profile = Some(profile);
    Ok(report)
}
