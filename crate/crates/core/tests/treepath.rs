use ulg_core::engine::LabelVector;
use ulg_core::geodesics::{is_ulg, reduced_words};
use ulg_core::treepath::{
    forbidden_pattern_scan, length_bound, path_legal, turning_profile, ulg_structure_check,
};
use ulg_core::{ball_census_with, CensusOptions, CoxeterDiagram, GeodesicCensus};

fn census(d: &CoxeterDiagram, radius: usize) -> GeodesicCensus {
    ball_census_with(d, radius, &CensusOptions::retained()).unwrap()
}

/// Every census u.l.g. passes every necessary condition; returns the longest
/// u.l.g. length seen for each branching index.
fn sweep(name: &str, radius: usize) -> Vec<usize> {
    let d = CoxeterDiagram::builtin(name).unwrap();
    let c = census(&d, radius);
    let mut longest = vec![0; 8];
    for (_, _, w) in c.ulg_words().unwrap() {
        if w.is_empty() {
            continue;
        }
        let shown = w.display(&d).to_string();
        assert!(path_legal(&d, &w).unwrap(), "{name}: {shown}");
        assert!(
            forbidden_pattern_scan(&d, &w).unwrap().is_empty(),
            "{name}: {shown}"
        );
        let report = ulg_structure_check(&d, &w).unwrap();
        assert!(
            report.no_violation_found(),
            "{name}: {shown} {:?}",
            report.violations
        );
        let b = turning_profile(&d, &w).unwrap().branching_index;
        if b <= 2 {
            let bound = length_bound(&d, b).unwrap();
            assert!(
                w.len() as i64 <= bound.value,
                "{name}: {shown} longer than {}",
                bound.value
            );
        }
        longest[b] = longest[b].max(w.len());
    }
    longest
}

#[test]
fn chains_have_no_violations() {
    for (name, radius) in [("A3", 7), ("A4", 11), ("A5", 16)] {
        let longest = sweep(name, radius);
        assert!(
            longest[1..].iter().all(|&l| l == 0),
            "{name}: chains have no short turnings"
        );
    }
}

#[test]
fn star_has_no_violations() {
    let longest = sweep("Dstar4", 10);
    assert!(
        longest[0]
            <= length_bound(&CoxeterDiagram::builtin("Dstar4").unwrap(), 0)
                .unwrap()
                .value as usize
    );
}

#[test]
fn affine_d6_has_no_violations() {
    sweep("Dtilde6-paper", 12);
}

#[test]
fn forbidden_patterns_rule_out_uniqueness_in_a4() {
    let d = CoxeterDiagram::chain(4).unwrap();
    let c = census(&d, 11);
    assert!(c.is_complete());
    let mut flagged = 0;
    for (e, _) in c.elements() {
        for w in reduced_words(&d, e, None).unwrap() {
            if !forbidden_pattern_scan(&d, &w).unwrap().is_empty() {
                flagged += 1;
                assert!(!is_ulg(&d, &w).unwrap(), "{}", w.display(&d));
            }
        }
    }
    assert!(flagged > 0);
}

#[test]
fn star_has_a_long_ulg_with_label_5211() {
    let d = CoxeterDiagram::builtin("Dstar4").unwrap();
    let c = census(&d, 9);
    let label = LabelVector::from_slice(&[5, 2, 1, 1]);
    assert!(c.ulg_tally().get(&label).copied().unwrap_or(0) > 0);
    let (e, _, w) = c
        .ulg_words()
        .unwrap()
        .into_iter()
        .find(|(_, l, _)| *l == label)
        .unwrap();
    assert_eq!(d.evaluate(&w).unwrap(), e);
    assert!(is_ulg(&d, &w).unwrap());
}

#[test]
fn star_rewrite_example() {
    let d = CoxeterDiagram::builtin("Dstar4").unwrap();
    let long = d.word("0102030102030").unwrap();
    let short = d.word("10230120302").unwrap();
    assert_eq!(d.evaluate(&long).unwrap(), d.evaluate(&short).unwrap());
    assert!(d.is_reduced(&short).unwrap());
    assert!(!d.is_reduced(&long).unwrap());
}
