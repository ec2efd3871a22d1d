//! Geodesic censuses, uniquely labelled geodesics and the label generating
//! function.
//!
//! The census is a level-synchronous dynamic programme over the Cayley
//! ball: level `k` holds every element of length `k` together with the
//! number of reduced expressions per label. An element at level `k` is
//! reached from each parent `e` at level `k - 1` along a generator that is
//! not a right descent of `e`; pushing the parent's label table shifted by
//! that generator sums exactly over the child's right descents. Labels of
//! degree `≤ L` are therefore exact even in infinite groups.

use std::collections::BTreeMap;
use std::hash::BuildHasher;

use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::count::GeodesicCount;
use crate::diagram::CoxeterDiagram;
use crate::engine::{Generator, GroupElement, LabelVector, Word};
use crate::error::{Error, Result};
use crate::polynomial::LabelPolynomial;

/// Reduced-expression counts of one element, keyed by label.
pub type LabelTable = FxHashMap<LabelVector, GeodesicCount>;

type Shard = FxHashMap<GroupElement, LabelTable>;

// Shard count is fixed so that level contents never depend on thread count.
const SHARDS: usize = 64;

fn shard_of(e: &GroupElement) -> usize {
    (FxBuildHasher.hash_one(e.key()) % SHARDS as u64) as usize
}

/// All elements of one length with their label tables.
#[derive(Debug, Clone, Default)]
pub struct Level {
    shards: Vec<Shard>,
}

impl Level {
    fn root(rank: usize) -> Self {
        let mut shards: Vec<Shard> = (0..SHARDS).map(|_| Shard::default()).collect();
        let id = GroupElement::identity(rank);
        let mut table = LabelTable::default();
        table.insert(LabelVector::zero(rank), GeodesicCount::ONE);
        shards[shard_of(&id)].insert(id, table);
        Level { shards }
    }

    pub fn len(&self) -> usize {
        self.shards.iter().map(FxHashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, e: &GroupElement) -> Option<&LabelTable> {
        self.shards[shard_of(e)].get(e)
    }

    /// Elements in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &LabelTable)> {
        self.shards.iter().flat_map(|s| s.iter())
    }

    fn entry_count(&self) -> usize {
        self.iter().map(|(_, t)| t.len()).sum()
    }

    /// Canonically ordered snapshot (element key, sorted labels with counts).
    pub fn sorted(&self) -> Vec<(GroupElement, Vec<(LabelVector, GeodesicCount)>)> {
        let mut out: Vec<_> = self
            .iter()
            .map(|(e, t)| {
                let mut labels: Vec<_> = t.iter().map(|(l, c)| (l.clone(), c.clone())).collect();
                labels.sort_by(|a, b| a.0.cmp(&b.0));
                (e.clone(), labels)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Keep every level (needed for per-element queries and word recovery).
    pub retain_levels: bool,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
    /// Budget on stored (element, label) entries.
    pub max_entries: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            retain_levels: false,
            threads: 0,
            max_entries: 50_000_000,
        }
    }
}

impl CensusOptions {
    pub fn retained() -> Self {
        CensusOptions {
            retain_levels: true,
            ..Self::default()
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

/// Per-(element, label) geodesic counts over a Cayley ball.
#[derive(Debug, Clone)]
pub struct GeodesicCensus {
    diagram: CoxeterDiagram,
    radius: usize,
    complete: bool,
    /// Levels 0..=radius when retained, otherwise only the last one.
    levels: Vec<Level>,
    first_level: usize,
    level_sizes: Vec<usize>,
    ulg_tally: BTreeMap<LabelVector, u64>,
    unique_geodesic_elements: u64,
}

#[derive(Default)]
struct LevelStats {
    tally: BTreeMap<LabelVector, u64>,
    unique: u64,
    has_successor: bool,
}

impl LevelStats {
    fn merge(mut self, other: LevelStats) -> LevelStats {
        for (l, c) in other.tally {
            *self.tally.entry(l).or_insert(0) += c;
        }
        self.unique += other.unique;
        self.has_successor |= other.has_successor;
        self
    }
}

fn level_stats(level: &Level, rank: usize) -> LevelStats {
    level
        .shards
        .par_iter()
        .map(|shard| {
            let mut st = LevelStats::default();
            for (e, table) in shard {
                let mut total_one = table.len() == 1;
                for (label, c) in table {
                    if c.is_one() {
                        *st.tally.entry(label.clone()).or_insert(0) += 1;
                    } else {
                        total_one = false;
                    }
                }
                if total_one {
                    st.unique += 1;
                }
                if (0..rank).any(|g| !e.is_right_descent(g)) {
                    st.has_successor = true;
                }
            }
            st
        })
        .reduce(LevelStats::default, LevelStats::merge)
}

fn expand(d: &CoxeterDiagram, level: &Level) -> Result<Level> {
    let n = d.rank();
    // phase 1: children of every parent, bucketed by destination shard
    let buckets: Vec<Vec<Vec<(GroupElement, Generator, &LabelTable)>>> = level
        .shards
        .par_iter()
        .map(|shard| {
            let mut out: Vec<Vec<_>> = (0..SHARDS).map(|_| Vec::new()).collect();
            for (e, table) in shard {
                for g in 0..n {
                    if !e.is_right_descent(g) {
                        let child = e.right_multiply(d, g)?;
                        out[shard_of(&child)].push((child, g, table));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut per_target: Vec<Vec<Vec<_>>> = (0..SHARDS).map(|_| Vec::new()).collect();
    for src in buckets {
        for (t, v) in src.into_iter().enumerate() {
            per_target[t].push(v);
        }
    }
    // phase 2: merge by exact addition, one destination shard per task
    let shards = per_target
        .into_par_iter()
        .map(|sources| {
            let mut shard = Shard::default();
            for (child, g, table) in sources.into_iter().flatten() {
                let dest = shard.entry(child).or_default();
                for (label, c) in table {
                    *dest.entry(label.plus_unit(g)).or_default() += c;
                }
            }
            shard
        })
        .collect();
    Ok(Level { shards })
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Census of the ball of the given radius with default options.
pub fn ball_census(d: &CoxeterDiagram, radius: usize) -> Result<GeodesicCensus> {
    ball_census_with(d, radius, &CensusOptions::default())
}

pub fn ball_census_with(
    d: &CoxeterDiagram,
    radius: usize,
    opts: &CensusOptions,
) -> Result<GeodesicCensus> {
    with_pool(opts.threads, || build_census(d, radius, opts))?
}

fn build_census(d: &CoxeterDiagram, radius: usize, opts: &CensusOptions) -> Result<GeodesicCensus> {
    let n = d.rank();
    let mut levels = vec![Level::root(n)];
    let mut level_sizes = vec![1];
    let mut stats = level_stats(&levels[0], n);
    let mut tally = std::mem::take(&mut stats.tally);
    let mut unique = stats.unique;
    let mut complete = !stats.has_successor;
    let mut stored = 1usize;
    let mut k = 0;
    while k < radius && !complete {
        let next = expand(d, levels.last().expect("at least one level"))?;
        k += 1;
        let entries = next.entry_count();
        stored = if opts.retain_levels {
            stored + entries
        } else {
            levels.last().map_or(0, Level::entry_count) + entries
        };
        if stored > opts.max_entries {
            return Err(Error::Resource {
                what: format!("census entries at level {k}"),
                limit: opts.max_entries,
                reached: stored,
            });
        }
        let st = level_stats(&next, n);
        for (l, c) in st.tally {
            *tally.entry(l).or_insert(0) += c;
        }
        unique += st.unique;
        level_sizes.push(next.len());
        complete = !st.has_successor;
        if !opts.retain_levels {
            levels.clear();
        }
        levels.push(next);
    }
    let first_level = k + 1 - levels.len();
    Ok(GeodesicCensus {
        diagram: d.clone(),
        radius,
        complete,
        levels,
        first_level,
        level_sizes,
        ulg_tally: tally,
        unique_geodesic_elements: unique,
    })
}

impl GeodesicCensus {
    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// True iff the ball contains the whole (finite) group.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of elements of each length 0..=k explored.
    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn element_count(&self) -> usize {
        self.level_sizes.iter().sum()
    }

    /// Retained level of the given length, if any.
    pub fn level(&self, k: usize) -> Option<&Level> {
        k.checked_sub(self.first_level)
            .and_then(|i| self.levels.get(i))
    }

    pub fn retains_all_levels(&self) -> bool {
        self.first_level == 0
    }

    fn require_retained(&self) -> Result<()> {
        if self.retains_all_levels() {
            Ok(())
        } else {
            Err(Error::InvalidState(
                "census was built without level retention".to_string(),
            ))
        }
    }

    /// Label table of `e`; `Ok(None)` when `e` lies outside the ball.
    /// Without retention only elements of the last level can be queried.
    pub fn labels(&self, e: &GroupElement) -> Result<Option<&LabelTable>> {
        let k = e.length(&self.diagram)?;
        if k >= self.level_sizes.len() {
            return Ok(None);
        }
        match self.level(k) {
            Some(lvl) => Ok(lvl.get(e)),
            None => Err(Error::InvalidState(format!(
                "level {k} was not retained by this census"
            ))),
        }
    }

    /// Census value count(e, λ); zero when absent.
    pub fn count(&self, e: &GroupElement, label: &LabelVector) -> Result<GeodesicCount> {
        Ok(self
            .labels(e)?
            .and_then(|t| t.get(label))
            .cloned()
            .unwrap_or_default())
    }

    /// Every retained element with its table, level by level.
    pub fn elements(&self) -> impl Iterator<Item = (&GroupElement, &LabelTable)> {
        self.levels.iter().flat_map(Level::iter)
    }

    /// (element, label) pairs whose count is exactly one, with the unique
    /// word, sorted by (length, word).
    pub fn ulg_words(&self) -> Result<Vec<(GroupElement, LabelVector, Word)>> {
        self.require_retained()?;
        let mut out = Vec::new();
        for (e, table) in self.elements() {
            for (label, c) in table {
                if c.is_one() {
                    let w = self.unique_word(e, label)?;
                    out.push((e.clone(), label.clone(), w));
                }
            }
        }
        out.sort_by(|a, b| (a.2.len(), &a.2).cmp(&(b.2.len(), &b.2)));
        Ok(out)
    }

    /// Recovers the single reduced word of `e` with label `label` by
    /// walking back through the retained levels.
    pub fn unique_word(&self, e: &GroupElement, label: &LabelVector) -> Result<Word> {
        self.require_retained()?;
        let d = &self.diagram;
        let mut cur = e.clone();
        let mut lab = label.clone();
        let mut rev = Vec::new();
        let mut k = cur.length(d)?;
        while k > 0 {
            let mut step = None;
            for g in cur.right_descents() {
                let Some(prev_lab) = lab.minus_unit(g) else {
                    continue;
                };
                let prev = cur.right_multiply(d, g)?;
                let hit = self
                    .level(k - 1)
                    .and_then(|lvl| lvl.get(&prev))
                    .and_then(|t| t.get(&prev_lab))
                    .is_some();
                if hit {
                    if step.is_some() {
                        return Err(Error::InvalidArgument(format!(
                            "label {label} has more than one geodesic"
                        )));
                    }
                    step = Some((g, prev, prev_lab));
                }
            }
            let (g, prev, prev_lab) = step
                .ok_or_else(|| Error::InvalidArgument(format!("no geodesic with label {label}")))?;
            rev.push(g);
            cur = prev;
            lab = prev_lab;
            k -= 1;
        }
        rev.reverse();
        Ok(Word::new(rev))
    }

    /// Folded u.l.g. tally: label → number of elements with exactly one
    /// geodesic of that label.
    pub fn ulg_tally(&self) -> &BTreeMap<LabelVector, u64> {
        &self.ulg_tally
    }

    /// Canonical snapshot of all retained levels, for determinism checks.
    pub fn snapshot(&self) -> Vec<Vec<(GroupElement, Vec<(LabelVector, GeodesicCount)>)>> {
        self.levels.iter().map(Level::sorted).collect()
    }
}

/// Label generating function of a census: the coefficient of λ is the
/// number of elements with exactly one geodesic labelled λ. The zero label
/// contributes the constant term 1.
pub fn generating_series(census: &GeodesicCensus) -> LabelPolynomial {
    let d = census.diagram();
    let mut p = LabelPolynomial::new(d.label(), d.rank(), census.radius(), census.is_complete());
    for (label, &c) in census.ulg_tally() {
        p.add_term(label.clone(), c);
    }
    p
}

/// Number of elements with exactly one reduced expression, identity
/// included. Needs a census of the whole group.
pub fn unique_geodesic_elements(census: &GeodesicCensus) -> Result<u64> {
    if !census.is_complete() {
        return Err(Error::InvalidState(
            "unique-geodesic count needs a complete census".to_string(),
        ));
    }
    Ok(census.unique_geodesic_elements)
}

/// Default cap on memoised states in [`GeodesicCounter`].
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

/// Counts reduced expressions with a given label by descent recursion,
/// memoised on (element, remaining label).
pub struct GeodesicCounter<'d> {
    diagram: &'d CoxeterDiagram,
    memo: FxHashMap<(GroupElement, LabelVector), GeodesicCount>,
    cap: usize,
}

impl<'d> GeodesicCounter<'d> {
    pub fn new(diagram: &'d CoxeterDiagram) -> Self {
        Self::with_cap(diagram, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(diagram: &'d CoxeterDiagram, cap: usize) -> Self {
        GeodesicCounter {
            diagram,
            memo: FxHashMap::default(),
            cap,
        }
    }

    pub fn states(&self) -> usize {
        self.memo.len()
    }

    pub fn count(&mut self, e: &GroupElement, label: &LabelVector) -> Result<GeodesicCount> {
        if label.rank() != self.diagram.rank() {
            return Err(Error::invalid("label arity differs from diagram rank"));
        }
        if label.degree() as usize != e.length(self.diagram)? {
            return Ok(GeodesicCount::ZERO);
        }
        self.count_rec(e, label)
    }

    fn count_rec(&mut self, e: &GroupElement, label: &LabelVector) -> Result<GeodesicCount> {
        if label.is_zero() {
            return Ok(if e.is_identity() {
                GeodesicCount::ONE
            } else {
                GeodesicCount::ZERO
            });
        }
        let key = (e.clone(), label.clone());
        if let Some(c) = self.memo.get(&key) {
            return Ok(c.clone());
        }
        let mut total = GeodesicCount::ZERO;
        for g in 0..e.rank() {
            if label.get(g) == 0 || !e.is_right_descent(g) {
                continue;
            }
            let prev = e.right_multiply(self.diagram, g)?;
            let rest = label.minus_unit(g).expect("coordinate checked positive");
            total += &self.count_rec(&prev, &rest)?;
        }
        if self.memo.len() >= self.cap {
            return Err(Error::Resource {
                what: "geodesic-count states".to_string(),
                limit: self.cap,
                reached: self.memo.len(),
            });
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

/// Number of reduced expressions of `e` whose letter multiset is `label`.
pub fn geodesic_count(
    d: &CoxeterDiagram,
    e: &GroupElement,
    label: &LabelVector,
) -> Result<GeodesicCount> {
    GeodesicCounter::new(d).count(e, label)
}

/// True iff `word` is reduced and no other reduced word of the same
/// element has the same label.
pub fn is_ulg(d: &CoxeterDiagram, word: &Word) -> Result<bool> {
    is_ulg_with_cap(d, word, DEFAULT_STATE_CAP)
}

pub fn is_ulg_with_cap(d: &CoxeterDiagram, word: &Word, cap: usize) -> Result<bool> {
    if !d.is_reduced(word)? {
        return Ok(false);
    }
    let e = d.evaluate(word)?;
    let c = GeodesicCounter::with_cap(d, cap).count(&e, &word.label(d.rank()))?;
    Ok(c.is_one())
}

/// Default cap on the number of words returned by [`reduced_words`].
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

pub fn reduced_words(
    d: &CoxeterDiagram,
    e: &GroupElement,
    label_filter: Option<&LabelVector>,
) -> Result<Vec<Word>> {
    reduced_words_with_cap(d, e, label_filter, DEFAULT_WORD_CAP)
}

/// All reduced expressions of `e`, optionally restricted to one label, in
/// lexicographic order of generator indices.
pub fn reduced_words_with_cap(
    d: &CoxeterDiagram,
    e: &GroupElement,
    label_filter: Option<&LabelVector>,
    cap: usize,
) -> Result<Vec<Word>> {
    let mut counter = GeodesicCounter::new(d);
    if let Some(l) = label_filter {
        if l.rank() != d.rank() {
            return Err(Error::invalid("label arity differs from diagram rank"));
        }
        if counter.count(e, l)?.is_zero() {
            return Ok(Vec::new());
        }
    }
    let len = e.length(d)?;
    let mut out = Vec::new();
    let mut suffix = Vec::with_capacity(len);
    collect_words(
        d,
        e,
        label_filter.cloned(),
        &mut counter,
        &mut suffix,
        &mut out,
        cap,
    )?;
    out.sort();
    Ok(out)
}

fn collect_words(
    d: &CoxeterDiagram,
    e: &GroupElement,
    budget: Option<LabelVector>,
    counter: &mut GeodesicCounter<'_>,
    suffix: &mut Vec<Generator>,
    out: &mut Vec<Word>,
    cap: usize,
) -> Result<()> {
    if e.is_identity() {
        if out.len() >= cap {
            return Err(Error::Resource {
                what: "reduced words".to_string(),
                limit: cap,
                reached: out.len(),
            });
        }
        out.push(Word::new(suffix.iter().rev().copied().collect()));
        return Ok(());
    }
    for g in 0..d.rank() {
        if !e.is_right_descent(g) {
            continue;
        }
        let rest = match &budget {
            Some(b) => match b.minus_unit(g) {
                Some(r) => Some(r),
                None => continue,
            },
            None => None,
        };
        let prev = e.right_multiply(d, g)?;
        if let Some(r) = &rest {
            if counter.count_rec(&prev, r)?.is_zero() {
                continue;
            }
        }
        suffix.push(g);
        collect_words(d, &prev, rest, counter, suffix, out, cap)?;
        suffix.pop();
    }
    Ok(())
}
