use std::process::{Command, Output};

fn ulg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulg"))
        .args(args)
        .env_remove("ULG_CORPUS_DIR")
        .output()
        .expect("run ulg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('\t'))
}

#[test]
fn genfun_prints_the_s4_series() {
    let o = ulg(&["genfun", "--diagram", "A3", "--radius", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# complete: true"));
    let terms: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(terms.len(), 15);
    assert!(terms.contains(&"1,2,1\t4"));
    assert!(terms.contains(&"1,3,1\t2"));
}

#[test]
fn ulg_check_reports_a_verdict() {
    let o = ulg(&["ulg-check", "--diagram", "A3", "--word", "1232"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "reduced"), Some("true"));
    assert_eq!(field(&text, "label"), Some("1,2,1"));
    assert_eq!(field(&text, "ulg"), Some("true"));
    let o = ulg(&["ulg-check", "--diagram", "A3", "--word", "11"]);
    assert_eq!(field(&stdout(&o), "ulg"), Some("false"));
}

#[test]
fn reduced_words_lists_and_respects_the_cap() {
    let o = ulg(&[
        "reduced-words",
        "--diagram",
        "A3",
        "--word",
        "121321",
        "--label",
        "2,2,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| !l.is_empty()).count(), 8);
    let o = ulg(&[
        "reduced-words",
        "--diagram",
        "A3",
        "--word",
        "121321",
        "--cap",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn typea_report_has_one_row_per_rank() {
    let o = ulg(&["typea-report", "--n", "2..4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("3\t15\t15\t19\t21\t10\t5\t21"));
}

#[test]
fn tree_check_single_word_and_sweep() {
    let o = ulg(&["tree-check", "--diagram", "Dstar4", "--word", "010201"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("\tb"));
    let o = ulg(&["tree-check", "--diagram", "A4", "--radius", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with("\tnone")));
}

#[test]
fn dtilde6_subcommands() {
    let o = ulg(&["dtilde6", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).lines().any(|l| l.ends_with("\tfail")));
    let o = ulg(&["dtilde6", "fellow-travel", "--n", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn appendix_diff_and_corpus_override() {
    let o = ulg(&["appendix", "diff"]);
    assert_eq!(o.status.code(), Some(0));
    // a table with one label removed no longer matches
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("appendix_a.tsv"), "A3\t100\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ulg"))
        .args(["appendix", "diff", "--n", "3"])
        .env("ULG_CORPUS_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("A3\t1\t15"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.txt");
    let o = ulg(&[
        "--out",
        path.to_str().unwrap(),
        "genfun",
        "--diagram",
        "A2",
        "--radius",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("# diagram: A2"));
}

#[test]
fn diagram_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.txt");
    std::fs::write(&path, "vertices: p q r\nedges: p-q q-r\n").unwrap();
    let o = ulg(&[
        "genfun",
        "--diagram",
        path.to_str().unwrap(),
        "--radius",
        "6",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let a3 = ulg(&["genfun", "--diagram", "A3", "--radius", "6"]);
    let body = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.starts_with("# diagram"))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(body(&o), body(&a3));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        ulg(&["genfun", "--diagram", "Q9", "--radius", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ulg(&["genfun", "--diagram", "A3"]).status.code(), Some(2));
    assert_eq!(
        ulg(&["ulg-check", "--diagram", "A3", "--word", "1x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ulg(&["tree-check", "--diagram", "A3"]).status.code(),
        Some(2)
    );
    assert_eq!(ulg(&["typea-report", "--n", "5..2"]).status.code(), Some(2));
}
