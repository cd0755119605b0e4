mod common;

use std::time::Duration;

use common::EXAMPLE_ONE;
use pmedian_core::bench::{
    emit_report, floyd_warshall, parse_orlib, parse_structured, read_reference, run_benchmark, sidecar_path,
    BenchmarkRecord, InstanceFormat, ReportStyle,
};
use pmedian_core::{binomial, GaConfig};
use proptest::prelude::*;

fn record(code: &str, best: u64, reference: Option<u64>) -> BenchmarkRecord {
    BenchmarkRecord {
        instance_code: code.into(),
        n: 100,
        m: 100,
        p: 5,
        search_space: binomial(100, 5).unwrap(),
        best_cost: best,
        reference_cost: reference,
        approximation_ratio: reference.map(|r| r as f64 / best as f64),
        kernel_calls: 1,
        wall_time: Duration::from_millis(2125),
        seed: 9,
    }
}

#[test]
fn example_file_benchmark_is_optimal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("example1.txt");
    std::fs::write(&path, EXAMPLE_ONE).unwrap();
    std::fs::write(sidecar_path(&path), "35\n").unwrap();
    let reference = read_reference(&sidecar_path(&path)).unwrap();
    for seed in [0, 1, 99] {
        let cfg = GaConfig { nb: 2, nt: 4, evolve_limit: 10, saturation: 3, seed, ..GaConfig::default() };
        let rec = run_benchmark(&path, InstanceFormat::Dense, None, &cfg, 3, Some(reference)).unwrap();
        assert_eq!(rec.instance_code, "example1");
        assert_eq!(rec.best_cost, 35);
        assert_eq!(rec.approximation_ratio, Some(1.0));
        assert_eq!(rec.search_space, binomial(4, 2).unwrap());
        assert_eq!(rec.seed, seed);
    }
    let cfg = GaConfig { nb: 2, nt: 4, ..GaConfig::default() };
    let rec = run_benchmark(&path, InstanceFormat::Dense, None, &cfg, 1, None).unwrap();
    assert_eq!(rec.approximation_ratio, None);
    assert!(run_benchmark(&dir.path().join("missing.txt"), InstanceFormat::Dense, None, &cfg, 1, None).is_err());
    assert!(run_benchmark(&path, InstanceFormat::Dense, None, &cfg, 0, None).is_err());
}

#[test]
fn bad_reference_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.opt");
    std::fs::write(&path, "35 36\n").unwrap();
    assert!(read_reference(&path).is_err());
}

#[test]
fn table_report_layout() {
    let empty = emit_report(&[], ReportStyle::Table);
    assert_eq!(empty.lines().count(), 2);
    assert!(empty.starts_with("Instance Code | n | m | p | Number of Potential Solutions"));

    let table = emit_report(&[record("pmed1", 5819, Some(5819))], ReportStyle::Table);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[2].contains("7.53E+07"));
    assert!(lines[2].contains("Optimal"));
    assert!(lines[2].contains("2.125"));

    let near = emit_report(&[record("pmed30", 1990, Some(1989))], ReportStyle::Table);
    assert!(near.contains("0.999497487"));
    assert!(emit_report(&[record("x", 10, None)], ReportStyle::Table).lines().nth(2).unwrap().contains(" - "));

    assert!(emit_report(&[], ReportStyle::Structured).is_empty());
}

#[test]
fn structured_field_names() {
    let text = emit_report(&[record("pmed1", 5819, None)], ReportStyle::Structured);
    let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let mut keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "approximation_ratio",
            "best_cost",
            "instance_code",
            "kernel_calls",
            "m",
            "n",
            "p",
            "reference_cost",
            "search_space",
            "seed",
            "wall_time"
        ]
    );
    assert_eq!(value["search_space"], "75287520");
}

proptest! {
    #[test]
    fn structured_report_round_trips(
        entries in prop::collection::vec(("[a-z0-9]{1,8}", 1u64..1_000_000, prop::option::of(1u64..1_000_000), 0u64..u64::MAX, 0u32..1_000_000_000), 0..6)
    ) {
        let records: Vec<BenchmarkRecord> = entries
            .into_iter()
            .map(|(code, best, reference, seed, nanos)| BenchmarkRecord {
                seed,
                wall_time: Duration::new(seed % 100_000, nanos),
                ..record(&code, best, reference)
            })
            .collect();
        let text = emit_report(&records, ReportStyle::Structured);
        prop_assert_eq!(parse_structured(&text).unwrap(), records.clone());
        prop_assert_eq!(emit_report(&records, ReportStyle::Table), emit_report(&records, ReportStyle::Table));
    }

    #[test]
    fn graph_closure_is_a_metric(
        n in 2usize..12,
        raw in prop::collection::vec((0usize..12, 0usize..12, 0u64..50), 1..40),
    ) {
        // A path through every vertex keeps the graph connected.
        let mut edges: Vec<(usize, usize, u64)> = (1..n).map(|v| (v - 1, v, 100)).collect();
        edges.extend(raw.into_iter().map(|(u, v, c)| (u % n, v % n, c)));
        let mut text = format!("{n} {} 1\n", edges.len());
        for (u, v, c) in &edges {
            text.push_str(&format!("{} {} {}\n", u + 1, v + 1, c));
        }
        let inst = parse_orlib(&text).unwrap();
        let d = |i: usize, j: usize| inst.cost(i, j);
        for i in 0..n {
            prop_assert_eq!(d(i, i), 0);
            for j in 0..n {
                prop_assert_eq!(d(i, j), d(j, i));
                for k in 0..n {
                    prop_assert!(d(i, j) <= d(i, k) + d(k, j));
                }
            }
        }
        // Agrees with the standalone closure.
        let closure = floyd_warshall(n, &{
            let mut last = std::collections::HashMap::new();
            for &(u, v, c) in &edges {
                last.insert((u.min(v), u.max(v)), c);
            }
            last.into_iter().map(|((u, v), c)| (u, v, c)).collect::<Vec<_>>()
        });
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(Some(d(i, j)), closure[i * n + j]);
            }
        }
    }
}
