use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use ulg_core::corpus::load_appendix;
use ulg_core::dtilde6::{self, CaseStatus, Variant};
use ulg_core::geodesics::{
    ball_census, ball_census_with, generating_series, is_ulg_with_cap, reduced_words_with_cap,
    CensusOptions,
};
use ulg_core::treepath::{forbidden_pattern_scan, ulg_structure_check, StructureReport};
use ulg_core::typea::{self, TypeAReportRow};
use ulg_core::{CoxeterDiagram, Error, LabelVector, Word};

use crate::{AppendixCommand, Cli, Command, Dtilde6Command};

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

type Run = Result<(String, bool), Error>;

pub fn run(cli: Cli) -> u8 {
    if cli.threads > 0 {
        // Only fails if a pool was already installed, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let result = match cli.command {
        Command::Genfun { diagram, radius } => genfun(&diagram.diagram, radius),
        Command::UlgCheck { diagram, word, cap } => ulg_check(&diagram.diagram, &word, cap),
        Command::ReducedWords {
            diagram,
            word,
            label,
            cap,
        } => reduced_words(&diagram.diagram, &word, label.as_deref(), cap),
        Command::TypeaReport { n } => typea_report(&n, cli.threads),
        Command::TreeCheck {
            diagram,
            word,
            radius,
        } => tree_check(&diagram.diagram, word.as_deref(), radius),
        Command::Dtilde6 {
            command: Dtilde6Command::Verify { nmax, cap },
        } => dtilde6_verify(nmax, cap),
        Command::Dtilde6 {
            command: Dtilde6Command::FellowTravel { n },
        } => fellow_travel(n),
        Command::Appendix {
            command: AppendixCommand::Diff { n },
        } => appendix_diff(&n),
    };
    match result {
        Ok((text, passed)) => {
            if let Err(e) = emit(cli.out.as_deref(), &text) {
                eprintln!("ulg: {e}");
                return USAGE;
            }
            if passed {
                OK
            } else {
                eprintln!("ulg: verification failed");
                CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("ulg: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Parse { .. } => USAGE,
                Error::Resource { .. } => RESOURCE,
                _ => CHECK_FAILED,
            }
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_diagram(token: &str) -> Result<CoxeterDiagram, Error> {
    match CoxeterDiagram::builtin(token) {
        Ok(d) => Ok(d),
        Err(builtin_err) => {
            let path = Path::new(token);
            if !path.is_file() {
                return Err(builtin_err);
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {token}: {e}")))?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(token);
            Ok(CoxeterDiagram::parse(&text)?.with_label(stem))
        }
    }
}

fn rank_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, Error> {
    let bad = || Error::InvalidArgument(format!("bad rank range '{text}' (expected a..b)"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), text.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn genfun(diagram: &str, radius: usize) -> Run {
    let d = load_diagram(diagram)?;
    let census = ball_census_with(&d, radius, &CensusOptions::default())?;
    Ok((generating_series(&census).to_text(), true))
}

fn ulg_check(diagram: &str, word: &str, cap: usize) -> Run {
    let d = load_diagram(diagram)?;
    let w = d.word(word)?;
    let e = d.evaluate(&w)?;
    let reduced = d.is_reduced(&w)?;
    let mut out = String::new();
    let _ = writeln!(out, "word\t{}", w.display(&d));
    let _ = writeln!(out, "letters\t{}", w.len());
    let _ = writeln!(out, "length\t{}", e.length(&d)?);
    let _ = writeln!(out, "reduced\t{reduced}");
    let _ = writeln!(out, "label\t{}", w.label(d.rank()));
    let _ = writeln!(out, "ulg\t{}", is_ulg_with_cap(&d, &w, cap)?);
    Ok((out, true))
}

fn reduced_words(diagram: &str, word: &str, label: Option<&str>, cap: usize) -> Run {
    let d = load_diagram(diagram)?;
    let e = d.evaluate(&d.word(word)?)?;
    let label = label.map(LabelVector::parse_csv).transpose()?;
    let mut out = String::new();
    for w in reduced_words_with_cap(&d, &e, label.as_ref(), cap)? {
        let _ = writeln!(out, "{}", w.display(&d));
    }
    Ok((out, true))
}

fn typea_report(range: &str, threads: usize) -> Run {
    let mut out = format!("{}\n", TypeAReportRow::HEADER);
    let mut ok = true;
    for n in rank_range(range)? {
        let row = TypeAReportRow::compute(n, threads)?;
        ok &= row.nonzero_count_formula == row.nonzero_count_oracle
            && row.total_closed_form == row.total_oracle
            && row.unique_geodesics == typea::unique_geodesic_count(n)
            && row.max_length as usize == typea::max_ulg_length(n)?;
        if row.total_formula != (row.total_oracle as i128).into() {
            eprintln!(
                "note: n={n}: published total {} differs from the census total {}",
                row.total_formula, row.total_oracle
            );
        }
        let _ = writeln!(out, "{}", row.to_tsv());
    }
    Ok((out, ok))
}

fn tree_row(d: &CoxeterDiagram, w: &Word) -> Result<(String, StructureReport, bool), Error> {
    let report = ulg_structure_check(d, w)?;
    let scan_clean = !report.legal || forbidden_pattern_scan(d, w)?.is_empty();
    Ok((report.to_tsv(d, w), report, scan_clean))
}

fn tree_check(diagram: &str, word: Option<&str>, radius: Option<usize>) -> Run {
    let d = load_diagram(diagram)?;
    let mut out = format!("{}\n", StructureReport::HEADER);
    match (word, radius) {
        (Some(word), _) => {
            let (row, _, _) = tree_row(&d, &d.word(word)?)?;
            let _ = writeln!(out, "{row}");
            Ok((out, true))
        }
        (None, Some(radius)) => {
            // Every census u.l.g. must pass every necessary condition.
            let census = ball_census_with(&d, radius, &CensusOptions::retained())?;
            let mut ok = true;
            for (_, _, w) in census.ulg_words()? {
                if w.is_empty() {
                    continue;
                }
                let (row, report, scan_clean) = tree_row(&d, &w)?;
                ok &= report.no_violation_found() && scan_clean;
                let _ = writeln!(out, "{row}");
            }
            Ok((out, ok))
        }
        (None, None) => Err(Error::InvalidArgument("give --word or --radius".into())),
    }
}

struct Checks {
    out: String,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            out: "check\tclaim\tobserved\tstatus\n".into(),
            ok: true,
        }
    }

    fn add(
        &mut self,
        check: &str,
        claim: impl std::fmt::Display,
        observed: impl std::fmt::Display,
        pass: bool,
    ) {
        self.ok &= pass;
        let _ = writeln!(
            self.out,
            "{check}\t{claim}\t{observed}\t{}",
            if pass { "pass" } else { "fail" }
        );
    }
}

fn dtilde6_verify(nmax: usize, cap: usize) -> Run {
    let mut c = Checks::new();
    for v in [Variant::W, Variant::W2, Variant::W3] {
        for n in 1..=6 {
            let len = dtilde6::power_length(v, n)?;
            c.add(
                &format!("power_length({v},{n})"),
                12 * n,
                len,
                len == 12 * n,
            );
        }
    }
    // The displayed non-reduced factor needs three periods of the base word.
    for n in [2, 3] {
        let len = dtilde6::power_length(Variant::Base, n)?;
        let bound = if n == 2 { 24 } else { 10 * n };
        c.add(
            &format!("power_length(base,{n})"),
            format!("< {bound}"),
            len,
            len < bound,
        );
    }
    for n in 1..=8 {
        let len = dtilde6::power_length(Variant::CoxIJ, n)?;
        c.add(
            &format!("power_length(coxIJ,{n})"),
            6 * n,
            len,
            len == 6 * n,
        );
    }
    for n in 1..=4 {
        let nf = dtilde6::normal_form(n)?;
        c.add(
            &format!("normal_form({n})"),
            format!("same element, reduced middle, length >= {}", nf.lower_bound),
            format!(
                "same={} middle_reduced={} length={}",
                nf.same_element, nf.middle_reduced, nf.length
            ),
            nf.holds(),
        );
    }
    for v in [Variant::W, Variant::W2, Variant::W3] {
        for n in 1..=nmax {
            let u = dtilde6::power_is_ulg(v, n, cap)?;
            c.add(&format!("power_is_ulg({v},{n})"), true, u, u);
        }
    }
    for o in dtilde6::run_case_corpus()? {
        let pass = o.status != CaseStatus::Fail;
        let _ = writeln!(
            c.out,
            "case {}\t{}\t{}\t{}",
            o.id, o.claim, o.observed, o.status
        );
        c.ok &= pass;
    }
    let star = CoxeterDiagram::builtin("Dstar4")?;
    let (u, v) = (star.word("0102030102030")?, star.word("10230120302")?);
    let same = star.evaluate(&u)? == star.evaluate(&v)?;
    let reduced = star.is_reduced(&v)?;
    c.add(
        "star_rewrite",
        "0102030102030 = 10230120302, reduced",
        format!("same={same} reduced={reduced}"),
        same && reduced,
    );
    let label = LabelVector::from_slice(&[5, 2, 1, 1]);
    let found = ball_census(&star, 9)?
        .ulg_tally()
        .get(&label)
        .copied()
        .unwrap_or(0);
    c.add("star_ulg(5,2,1,1)", "at least one", found, found > 0);
    Ok((c.out, c.ok))
}

fn fellow_travel(n: usize) -> Run {
    let d = dtilde6::diagram();
    let w = Variant::W.word();
    let mut out = String::from(
        "lines\tanchor\tmin\tmax\tinterior_min\tinterior_max\tunanchored_min\tdistances\n",
    );
    let mut ok = true;
    for (v, anchor) in [
        (Variant::W2, dtilde6::W2_ANCHOR),
        (Variant::W3, dtilde6::W3_ANCHOR),
    ] {
        let p = dtilde6::fellow_travel_profile(&d, &w, &v.word(), &d.word(anchor)?, n)?;
        let raw = dtilde6::fellow_travel_profile(&d, &w, &v.word(), &Word::empty(), n)?;
        ok &= p.max <= 5 && p.interior_min >= 2;
        let dist: Vec<String> = p.distances.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "w/{v}\t{anchor}\t{}\t{}\t{}\t{}\t{}\t{}",
            p.min,
            p.max,
            p.interior_min,
            p.interior_max,
            raw.min,
            dist.join(",")
        );
    }
    Ok((out, ok))
}

fn appendix_diff(range: &str) -> Run {
    let shipped = load_appendix()?;
    let mut out = String::from("group\tshipped\tcensus\tmissing_from_census\tmissing_from_table\n");
    let mut ok = true;
    for n in rank_range(range)? {
        let d = CoxeterDiagram::chain(n)?;
        let census = ball_census_with(&d, n * (n + 1) / 2, &CensusOptions::default())?;
        let computed: BTreeSet<LabelVector> = generating_series(&census)
            .terms()
            .map(|(l, _)| l.clone())
            .collect();
        let empty = BTreeSet::new();
        let table = shipped.get(&n).unwrap_or(&empty);
        let digits = |s: &BTreeSet<LabelVector>| -> String {
            if s.is_empty() {
                return "-".into();
            }
            s.iter()
                .map(|l| l.counts().iter().map(u32::to_string).collect::<String>())
                .collect::<Vec<_>>()
                .join(",")
        };
        let missing: BTreeSet<_> = table.difference(&computed).cloned().collect();
        let extra: BTreeSet<_> = computed.difference(table).cloned().collect();
        ok &= missing.is_empty() && extra.is_empty() && !table.is_empty();
        let _ = writeln!(
            out,
            "A{n}\t{}\t{}\t{}\t{}",
            table.len(),
            computed.len(),
            digits(&missing),
            digits(&extra)
        );
    }
    Ok((out, ok))
}
