use std::path::Path;
use std::process::{Command, Output};

const EXAMPLE_ONE: &str = "5 4 2\n7 10 16 11\n15 17 7 7\n10 4 6 6\n7 11 18 12\n10 22 14 8\n";

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmedian-bench")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn table_report_for_example_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "example1.txt", EXAMPLE_ONE);
    write(dir.path(), "example1.opt", "35\n");
    let out = bench(&["--instance", &inst, "--nb", "2", "--nt", "4", "--evolve-limit", "10", "--repeats", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("Instance Code | n | m | p |"));
    assert!(lines[2].contains("example1"));
    assert!(lines[2].contains("6.00E+00"));
    assert!(lines[2].contains("Optimal"));
}

#[test]
fn structured_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", EXAMPLE_ONE);
    let b = write(dir.path(), "b.txt", "3 3 1\n0 4 9\n4 0 5\n9 5 0\n");
    let out_path = dir.path().join("report.jsonl");
    let out = bench(&[
        "--instance",
        &a,
        "--instance",
        &b,
        "--report",
        "structured",
        "--seed",
        "11",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let records = pmedian_core::bench::parse_structured(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].best_cost, 35);
    assert_eq!(records[0].reference_cost, None);
    assert_eq!(records[1].best_cost, 9);
    assert_eq!(records[1].seed, 11);
}

#[test]
fn explicit_reference_and_p_override() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "ex.txt", EXAMPLE_ONE);
    let reference = write(dir.path(), "ref.txt", "30");
    let out = bench(&["--instance", &inst, "--p", "3", "--reference", &reference, "--report", "structured"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rec = &pmedian_core::bench::parse_structured(&stdout(&out)).unwrap()[0];
    assert_eq!(rec.p, 3);
    assert_eq!(rec.reference_cost, Some(30));
    let brute =
        pmedian_core::exact_optimum_small(&pmedian_core::bench::parse_dense(EXAMPLE_ONE).unwrap().with_p(3).unwrap())
            .unwrap()
            .1;
    assert_eq!(rec.best_cost, brute);
}

#[test]
fn orlib_input_and_polynomial_export() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "g.txt", "4 4 2\n1 2 3\n2 3 4\n3 4 5\n4 1 6\n");
    let hbp = dir.path().join("g.hbp");
    let out = bench(&["--instance", &inst, "--format", "orlib", "--export-hbp", hbp.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let poly: pmedian_core::PseudoBooleanPolynomial = std::fs::read_to_string(&hbp).unwrap().parse().unwrap();
    let instance = pmedian_core::bench::parse_orlib(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    for open in [[0, 1], [0, 2], [1, 3], [2, 3]] {
        let c = pmedian_core::Chromosome::from_open(4, &open).unwrap();
        assert_eq!(poly.evaluate(&c).unwrap(), pmedian_core::direct_cost(&instance, &c).unwrap() as i64);
    }
    assert!(stdout(&out).lines().nth(2).unwrap().trim_start().starts_with("g |"));
}

#[test]
fn errors_exit_nonzero_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "ok.txt", EXAMPLE_ONE);
    let bad = write(dir.path(), "bad.txt", "2 2 1\n1 x\n");
    let cases: [(Vec<&str>, &str); 5] = [
        (vec!["--instance", "/nonexistent/instance.txt"], "instance.txt"),
        (vec!["--instance", &bad], "line 2"),
        (vec!["--instance", &good, "--nt", "6"], "power of two"),
        (vec!["--instance", &good, "--p", "4"], "p must be"),
        (vec!["--instance", &good, "--instance", &good, "--reference", &good], "--reference"),
    ];
    for (args, needle) in cases {
        let out = bench(&args);
        assert!(!out.status.success(), "{args:?}");
        let err = stderr(&out);
        assert!(err.starts_with("error: ") && err.contains(needle), "{args:?}: {err}");
    }
    assert!(!bench(&[]).status.success());
    assert!(!bench(&["--instance", &good, "--format", "csv"]).status.success());
}
