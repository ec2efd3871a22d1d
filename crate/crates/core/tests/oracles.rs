mod common;

use std::collections::BTreeMap;

use ulg_core::geodesics::{ball_census_with, generating_series, reduced_words, CensusOptions};
use ulg_core::{ball_census, is_ulg, CoxeterDiagram, Word};

fn series_map(d: &CoxeterDiagram, radius: usize) -> BTreeMap<Vec<u32>, u64> {
    let c = ball_census(d, radius).unwrap();
    generating_series(&c)
        .terms()
        .map(|(l, c)| (l.counts().to_vec(), c))
        .collect()
}

#[test]
fn length_matches_inversions_on_a3_a4() {
    for n in [3, 4] {
        let d = CoxeterDiagram::chain(n).unwrap();
        let c = ball_census_with(&d, n * (n + 1) / 2, &CensusOptions::retained()).unwrap();
        assert_eq!(c.element_count(), common::all_permutations(n + 1).len());
        for (e, _) in c.elements() {
            let w = e.reduced_word(&d).unwrap();
            let p = common::permutation(n, w.letters());
            assert_eq!(e.length(&d).unwrap(), common::inversions(&p));
        }
    }
}

#[test]
fn length_matches_inversions_on_random_a5_words() {
    let d = CoxeterDiagram::chain(5).unwrap();
    for w in common::random_words(0x5eed, 5, 10_000, 40) {
        let p = common::permutation(5, &w);
        let e = d.evaluate(&Word::new(w)).unwrap();
        assert_eq!(e.length(&d).unwrap(), common::inversions(&p));
    }
}

#[test]
fn type_a_series_match_permutation_counting() {
    for n in 1..=5 {
        let d = CoxeterDiagram::chain(n).unwrap();
        assert_eq!(
            series_map(&d, n * (n + 1) / 2),
            common::permutation_series(n),
            "A{n}"
        );
    }
}

#[test]
fn s4_middle_label_has_four_unique_words() {
    let d = CoxeterDiagram::chain(3).unwrap();
    let mut found = Vec::new();
    for text in ["1232", "2123", "2321", "3212"] {
        let w = d.word(text).unwrap();
        assert!(is_ulg(&d, &w).unwrap(), "{text}");
        let e = d.evaluate(&w).unwrap();
        let same: Vec<Word> = reduced_words(&d, &e, Some(&w.label(3))).unwrap();
        assert_eq!(same, vec![w.clone()]);
        found.push(e);
    }
    found.sort();
    found.dedup();
    assert_eq!(found.len(), 4);
}

#[test]
fn right_angled_series_count_walks() {
    let star = CoxeterDiagram::from_edges(
        &["c", "x", "y", "z"],
        &[],
        &[("c", "x"), ("c", "y"), ("c", "z")],
    )
    .unwrap();
    let path = CoxeterDiagram::from_edges(
        &["1", "2", "3", "4"],
        &[],
        &[("1", "2"), ("2", "3"), ("3", "4")],
    )
    .unwrap();
    for (d, edges) in [
        (star, vec![(0, 1), (0, 2), (0, 3)]),
        (path, vec![(0, 1), (1, 2), (2, 3)]),
    ] {
        assert_eq!(series_map(&d, 8), common::walk_series(4, &edges, 8));
    }
}

#[test]
fn affine_a2_prefixes_are_unique_geodesics() {
    let d = CoxeterDiagram::builtin("Atilde2").unwrap();
    let w = d.word("123").unwrap().pow(5);
    for k in 0..=w.len() {
        let p = w.prefix(k);
        assert!(is_ulg(&d, &p).unwrap(), "prefix {k}");
        let e = d.evaluate(&p).unwrap();
        assert_eq!(reduced_words(&d, &e, None).unwrap().len(), 1, "prefix {k}");
    }
}

#[test]
fn census_is_thread_count_independent() {
    for (name, r) in [("A4", 10), ("Dtilde6-paper", 10), ("Dstar4", 9)] {
        let d = CoxeterDiagram::builtin(name).unwrap();
        let one = ball_census_with(&d, r, &CensusOptions::retained().with_threads(1)).unwrap();
        let four = ball_census_with(&d, r, &CensusOptions::retained().with_threads(4)).unwrap();
        assert_eq!(one.snapshot(), four.snapshot(), "{name}");
        assert_eq!(one.ulg_tally(), four.ulg_tally());
        assert_eq!(
            generating_series(&one).to_text(),
            generating_series(&four).to_text()
        );
    }
}
