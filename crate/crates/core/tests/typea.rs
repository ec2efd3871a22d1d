use std::collections::BTreeMap;

use ulg_core::engine::LabelVector;
use ulg_core::typea::{
    classify_label, coefficient, max_ulg_length, nonzero_coefficient_count, total_ulg_count,
    ulg_labels, unique_geodesic_count, LabelTag,
};
use ulg_core::{
    ball_census, ball_census_with, unique_geodesic_elements, CensusOptions, CoxeterDiagram,
    GeodesicCensus,
};

fn full_census(n: usize) -> GeodesicCensus {
    let d = CoxeterDiagram::chain(n).unwrap();
    let c = ball_census(&d, n * (n + 1) / 2 + 1).unwrap();
    assert!(c.is_complete());
    c
}

/// Every label with `rank` entries and total degree at most `max_degree`.
fn labels_up_to(rank: usize, max_degree: u32) -> Vec<LabelVector> {
    fn go(rank: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<LabelVector>) {
        if cur.len() == rank {
            out.push(LabelVector::from_slice(cur));
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(rank, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, max_degree, &mut Vec::new(), &mut out);
    out
}

#[test]
fn coefficients_match_census_exhaustively() {
    for n in 2..=6 {
        let c = full_census(n);
        let tally: &BTreeMap<LabelVector, u64> = c.ulg_tally();
        let max = max_ulg_length(n).unwrap() as u32;
        let labels = labels_up_to(n, max);
        for l in &labels {
            let census = tally.get(l).copied().unwrap_or(0);
            assert_eq!(coefficient(n, l).unwrap(), census, "n={n} label={l:?}");
        }
        // nothing beyond the degree bound
        assert!(
            tally.keys().all(|l| l.counts().iter().sum::<u32>() <= max),
            "n={n}"
        );
    }
}

#[test]
fn counting_formulas_match_census() {
    for n in 2..=6 {
        let c = full_census(n);
        let tally = c.ulg_tally();
        assert_eq!(
            tally.len() as u64,
            nonzero_coefficient_count(n).unwrap(),
            "n={n}"
        );
        assert_eq!(
            unique_geodesic_elements(&c).unwrap(),
            unique_geodesic_count(n),
            "n={n}"
        );
        assert_eq!(
            tally.values().sum::<u64>(),
            total_ulg_count(n, true).unwrap(),
            "n={n}"
        );
        let longest = tally
            .keys()
            .map(|l| l.counts().iter().sum::<u32>())
            .max()
            .unwrap();
        assert_eq!(longest as usize, max_ulg_length(n).unwrap(), "n={n}");
    }
}

#[test]
fn grammar_is_exactly_the_census_support() {
    for n in 1..=6 {
        let c = full_census(n);
        let support: Vec<LabelVector> = c.ulg_tally().keys().cloned().collect();
        let mut grammar = ulg_labels(n);
        grammar.sort();
        assert_eq!(grammar, support, "n={n}");
    }
}

#[test]
fn classification_rejects_everything_outside_the_support() {
    for n in 2..=5 {
        let support = full_census(n).ulg_tally().clone();
        for l in labels_up_to(n, max_ulg_length(n).unwrap() as u32 + 2) {
            let tag = classify_label(n, &l).unwrap().tag;
            assert_eq!(
                tag != LabelTag::NotUlg,
                support.contains_key(&l),
                "n={n} label={l:?}"
            );
        }
    }
}

#[test]
fn ulg_words_walk_along_the_chain() {
    for n in 2..=5 {
        let d = CoxeterDiagram::chain(n).unwrap();
        let c = ball_census_with(&d, n * (n + 1) / 2, &CensusOptions::retained()).unwrap();
        for (_, label, word) in c.ulg_words().unwrap() {
            let letters = word.letters();
            if letters.is_empty() {
                continue;
            }
            // consecutive letters are neighbours
            assert!(
                letters.windows(2).all(|p| p[0].abs_diff(p[1]) == 1),
                "n={n} word={letters:?}"
            );
            // support is an interval
            let nz: Vec<usize> = (0..n).filter(|&i| label.counts()[i] > 0).collect();
            assert_eq!(nz.last().unwrap() - nz[0] + 1, nz.len());
            // every letter occurs at most three times
            assert!(label.counts().iter().all(|&k| k <= 3));
            // one end of the support occurs once, and no end occurs three times
            let ends = [label.counts()[nz[0]], label.counts()[*nz.last().unwrap()]];
            assert!(ends.contains(&1), "n={n} word={letters:?}");
            assert!(!ends.contains(&3), "n={n} word={letters:?}");
        }
    }
}
