use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const Z7_SCRAMBLED: &str = "\
7
7 5 6 1 4 2 3
5 3 1 2 6 7 4
6 1 5 3 7 4 2
1 2 3 4 5 6 7
4 6 7 5 2 3 1
2 7 4 6 3 1 5
3 4 2 7 1 5 6
";

const TWO_ELEMENT: &str = "2\n1 2\n2 2\n";
const TWO_ELEMENT_LEXMIN: &str = "2\n1 1\n1 2\n";

fn mlex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn mlex_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mlex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn cyclic(n: usize) -> String {
    let mut s = format!("{n}\n");
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| ((r + c) % n + 1).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn csv_rows(p: &str) -> Vec<csv::StringRecord> {
    let text = fs::read_to_string(p).unwrap();
    let (version, body) = text.split_once('\n').unwrap();
    assert_eq!(version, "# mlex-stats v1");
    csv::Reader::from_reader(body.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn canonize_scrambled_z7_gives_addition_mod_7() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "z7.txt", Z7_SCRAMBLED);
    let out = mlex(&["canonize", "--witness", &input]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let (witness, table) = text.split_once('\n').unwrap();
    assert!(witness.starts_with("# witness "), "{witness}");
    assert_eq!(table, cyclic(7));
}

#[test]
fn canonize_reads_standard_input() {
    let out = mlex_stdin(&["canonize", "--witness"], TWO_ELEMENT);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), format!("# witness (1 2)\n{TWO_ELEMENT_LEXMIN}"));
    let out = mlex_stdin(&["canonize", "-"], TWO_ELEMENT);
    assert_eq!(stdout(&out), TWO_ELEMENT_LEXMIN);
}

#[test]
fn canonize_keeps_batch_order_under_every_strategy() {
    let dir = TempDir::new().unwrap();
    let batch = format!("{Z7_SCRAMBLED}\n{TWO_ELEMENT}\n1\n1\n");
    let input = write(&dir, "batch.txt", &batch);
    let expected = format!("{}\n{TWO_ELEMENT_LEXMIN}\n1\n1\n", cyclic(7));
    for strategy in ["lus", "bin2"] {
        for jobs in ["1", "4"] {
            let out = mlex(&["canonize", "--jobs", jobs, "--strategy", strategy, &input]);
            assert_eq!(code(&out), 0, "{}", stderr(&out));
            assert_eq!(stdout(&out), expected, "strategy {strategy}, jobs {jobs}");
        }
    }
}

#[test]
fn canonize_writes_output_file_and_stats() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "batch.txt", &format!("{Z7_SCRAMBLED}\n{TWO_ELEMENT}"));
    let output = path(&dir, "out.txt");
    let stats = path(&dir, "stats.csv");
    let out = mlex(&[
        "canonize", "--solver", "cadical", "--no-witness", &input, "-o", &output, "--stats", &stats,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    assert_eq!(fs::read_to_string(&output).unwrap(), format!("{}\n{TWO_ELEMENT_LEXMIN}", cyclic(7)));

    let rows = csv_rows(&stats);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(row.len(), 14);
        assert_eq!(&row[2], "bin2");
        assert_eq!(&row[3], "cadical");
        assert_eq!(&row[4], "15");
        assert_eq!(&row[13], "ok");
        assert_eq!(row[12].len(), 16);
    }
    assert_eq!(&rows[0][1], "7");
    assert!(rows[0][0].ends_with("#1"));
    assert!(rows[1][0].ends_with("#2"));
}

#[test]
fn canonize_dumps_dimacs_for_a_single_table() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.txt", TWO_ELEMENT);
    let cnf = path(&dir, "run.cnf");
    let out = mlex(&["canonize", &input, "--dump-cnf", &cnf]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&cnf).unwrap();
    let header = text.lines().find(|l| l.starts_with("p cnf")).expect("problem line");
    let fields: Vec<&str> = header.split_whitespace().collect();
    assert_eq!(fields.len(), 4);
    let clauses: usize = fields[3].parse().unwrap();
    let bodies = text.lines().filter(|l| l.ends_with(" 0") || *l == "0").count();
    assert_eq!(bodies, clauses);

    let batch = write(&dir, "batch.txt", &format!("{TWO_ELEMENT}\n{TWO_ELEMENT}"));
    let out = mlex(&["canonize", &batch, "--dump-cnf", &cnf]);
    assert_eq!(code(&out), 1);
}

#[test]
fn canonize_reports_parse_errors_with_position() {
    let out = mlex_stdin(&["canonize"], "2\n1 2\n2 3\n");
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    let out = mlex_stdin(&["canonize"], "3\n1 2 3\n1 2\n1 2 3\n");
    assert_eq!(code(&out), 1);
}

#[test]
fn csv_format_round_trips() {
    let out = mlex_stdin(&["canonize", "--format", "csv"], "1,2\n2,2\n");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "1,1\n1,2\n");
}

#[test]
fn timeout_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let big = mlex(&["gen", "--kind", "latin_square", "--order", "64", "--seed", "3"]);
    assert_eq!(code(&big), 0);
    let input = write(&dir, "big.txt", &stdout(&big));
    let stats = path(&dir, "stats.csv");
    let out = mlex(&["canonize", "--timeout", "0.01", &input, "--stats", &stats]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert!(stderr(&out).contains("timed out"));
    let rows = csv_rows(&stats);
    assert_eq!(&rows[0][13], "timeout");
}

#[test]
fn isocheck_decides_isomorphism() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", Z7_SCRAMBLED);
    let b = write(&dir, "b.txt", &cyclic(7));
    let out = mlex(&["isocheck", "--witness", &a, &b]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("isomorphic\n# witness "), "{text}");

    let mut other = cyclic(7);
    other.replace_range(2..3, "2");
    let c = write(&dir, "c.txt", &other);
    let out = mlex(&["isocheck", &a, &c]);
    assert_eq!(code(&out), 10);
    assert_eq!(stdout(&out), "non-isomorphic\n");

    let d = write(&dir, "d.txt", TWO_ELEMENT);
    let out = mlex(&["isocheck", &a, &d]);
    assert_eq!(code(&out), 1);
}

#[test]
fn dedupe_groups_relabelled_copies() {
    let dir = TempDir::new().unwrap();
    let swapped = "2\n1 1\n1 2\n";
    let corpus = format!("{TWO_ELEMENT}\n{}\n{swapped}\n{Z7_SCRAMBLED}\n2\n1 1\n1 1\n", cyclic(7));
    let input = write(&dir, "corpus.txt", &corpus);
    let out = mlex(&["dedupe", &input]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with("# class")).collect();
    assert_eq!(
        headers,
        [
            "# class 1: 1 member: 5",
            "# class 2: 2 members: 1 3",
            "# class 3: 2 members: 2 4",
        ]
    );
    assert!(text.contains(&cyclic(7)));
}

#[test]
fn dedupe_of_empty_input_has_no_classes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.txt", "");
    let out = mlex(&["dedupe", &input]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("0 classes"));
}

#[test]
fn dedupe_skips_bad_tables_and_fails_at_the_end() {
    let out = mlex_stdin(&["dedupe"], &format!("{TWO_ELEMENT}\n2\n1 9\n1 1\n"));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("# class 1: 1 member: 1"));
    assert!(stderr(&out).contains("table 2"));
}

#[test]
fn bench_writes_one_row_per_run() {
    let dir = TempDir::new().unwrap();
    let corpus = write(&dir, "corpus.txt", &format!("{Z7_SCRAMBLED}\n{TWO_ELEMENT}"));
    let stats = path(&dir, "bench.csv");
    let out = mlex(&[
        "bench", &corpus, "--matrix", "ablation", "--all-strategies", "--solvers", "batsat,cadical",
        "--stats", &stats,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = csv_rows(&stats);
    // 2 instances x 2 solvers x 2 strategies x 6 masks
    assert_eq!(rows.len(), 48);
    let masks: std::collections::BTreeSet<&str> = rows.iter().map(|r| r.get(4).unwrap()).collect();
    assert_eq!(masks.into_iter().collect::<Vec<_>>(), ["15", "23", "27", "29", "30", "31"]);
    for instance in ["#1", "#2"] {
        let hashes: std::collections::BTreeSet<&str> = rows
            .iter()
            .filter(|r| r[0].ends_with(instance))
            .map(|r| r.get(12).unwrap())
            .collect();
        assert_eq!(hashes.len(), 1, "{instance}");
    }

    let out = mlex(&["bench", &corpus, "--matrix", "full"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 2 + 2 * 32);
}

#[test]
fn bench_flags_a_faulty_engine() {
    let dir = TempDir::new().unwrap();
    let latin = mlex(&["gen", "--kind", "latin_square", "--order", "6", "--count", "5"]);
    let corpus = write(&dir, "latin.txt", &stdout(&latin));
    let out = mlex(&["bench", &corpus, "--matrix", "ablation", "--inject-fault", "double-budget-decrement"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    let err = stderr(&out);
    assert!(err.contains("differs") || err.contains("engine error"), "{err}");
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--kind", "random_magma", "--order", "5", "--seed", "9", "--count", "3"];
    let a = mlex(&args);
    let b = mlex(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).split("\n\n").count(), 3);
    let c = mlex(&["gen", "--kind", "random_magma", "--order", "5", "--seed", "10"]);
    assert_ne!(stdout(&a).split("\n\n").next().unwrap().trim(), stdout(&c).trim());
    assert_eq!(stdout(&mlex(&["gen", "--kind", "cyclic_group", "--order", "7"])), cyclic(7));
}

#[test]
fn oracle_check_agrees_and_catches_faults() {
    let out = mlex(&["oracle-check", "--count", "40"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("40 instances x 1 configurations agree"));

    let out = mlex(&["oracle-check", "--exhaustive", "--all-configs"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("17 instances x 64 configurations"));

    let dir = TempDir::new().unwrap();
    let repro = path(&dir, "repro.txt");
    let out = mlex(&[
        "oracle-check", "--count", "60", "--kind", "latin_square", "--inject-fault",
        "double-budget-decrement", "--repro", &repro,
    ]);
    assert_eq!(code(&out), 4, "{}", stderr(&out));
    assert!(Path::new(&repro).exists());
    assert!(!fs::read_to_string(&repro).unwrap().is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&mlex(&[])), 1);
    assert_eq!(code(&mlex(&["canonize", "--strategy", "quadratic"])), 1);
    assert_eq!(code(&mlex(&["canonize", "--timeout", "-1"])), 1);
    assert_eq!(code(&mlex(&["canonize", "/nonexistent/table.txt"])), 1);
    assert_eq!(code(&mlex(&["gen", "--kind", "group", "--order", "3"])), 1);
    assert_eq!(code(&mlex(&["--help"])), 0);
    assert_eq!(code(&mlex(&["--version"])), 0);
}
