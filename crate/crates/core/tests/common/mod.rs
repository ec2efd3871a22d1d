//! Oracles that share no code with the matrix engine: permutations for
//! type A and plain walk enumeration for right-angled groups.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Applies the letters (0-based adjacent transpositions) to the identity
/// permutation of `n + 1` points, acting on positions.
pub fn permutation(n: usize, letters: &[usize]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..=n as u8).collect();
    for &i in letters {
        p.swap(i, i + 1);
    }
    p
}

pub fn inversions(p: &[u8]) -> usize {
    let mut k = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                k += 1;
            }
        }
    }
    k
}

/// All permutations of 0..m.
pub fn all_permutations(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..m as u8).collect();
    heap(&mut p, m, &mut out);
    out
}

fn heap(p: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(p, k - 1, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(p, k - 1, out);
}

/// Label generating function of S_{n+1}, counted directly on permutations:
/// for every permutation and label the number of reduced words, then the
/// labels hit exactly once.
pub fn permutation_series(n: usize) -> BTreeMap<Vec<u32>, u64> {
    // level-by-level: words of length k ending in permutation p
    let mut level: HashMap<Vec<u8>, HashMap<Vec<u32>, u64>> = HashMap::new();
    level.insert((0..=n as u8).collect(), HashMap::from([(vec![0; n], 1)]));
    let mut series = BTreeMap::new();
    loop {
        for tables in level.values() {
            for (label, &c) in tables {
                if c == 1 {
                    *series.entry(label.clone()).or_insert(0) += 1;
                }
            }
        }
        let mut next: HashMap<Vec<u8>, HashMap<Vec<u32>, u64>> = HashMap::new();
        for (p, tables) in &level {
            for i in 0..n {
                if p[i] < p[i + 1] {
                    let mut q = p.clone();
                    q.swap(i, i + 1);
                    let t = next.entry(q).or_default();
                    for (label, &c) in tables {
                        let mut l = label.clone();
                        l[i] += 1;
                        *t.entry(l).or_insert(0) += c;
                    }
                }
            }
        }
        if next.is_empty() {
            return series;
        }
        level = next;
    }
}

/// Number of walks with each label of length ≤ `max_len` on a graph.
pub fn walk_series(n: usize, edges: &[(usize, usize)], max_len: usize) -> BTreeMap<Vec<u32>, u64> {
    let adj = |a: usize, b: usize| {
        edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    };
    let mut series = BTreeMap::from([(vec![0; n], 1u64)]);
    let mut frontier: Vec<(usize, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut l = vec![0; n];
            l[v] = 1;
            (v, l)
        })
        .collect();
    for _ in 1..=max_len {
        for (_, l) in &frontier {
            *series.entry(l.clone()).or_insert(0) += 1;
        }
        let mut next = Vec::new();
        for (v, l) in &frontier {
            for u in 0..n {
                if adj(*v, u) {
                    let mut m = l.clone();
                    m[u] += 1;
                    next.push((u, m));
                }
            }
        }
        frontier = next;
    }
    series
}

/// Seeded random words over `rank` letters.
pub fn random_words(seed: u64, rank: usize, count: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| rng.gen_range(0..rank)).collect()
        })
        .collect()
}
