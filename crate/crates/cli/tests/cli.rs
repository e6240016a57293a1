use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringcodes::oracle::oracle_code_from_presentation;
use ringcodes::{Budget, CodePresentation, RingSpec, RingVec, Submodule};
use ringcodes_cli::{parse_problem, render_code, Problem};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ringcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = ringcodes(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&out)))
}

#[test]
fn validate_exit_codes() {
    let example = fixture("example.pcs");
    let out = ringcodes(&["validate", example.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PASS\n");

    let cases = [
        ("duplicate_columns.pcs", "ii"),
        ("outside_ideal.pcs", "i"),
        ("relation.pcs", "iii"),
    ];
    for (file, condition) in cases {
        let path = fixture(file);
        let out = ringcodes(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{file}");
        assert!(stdout(&out).starts_with("FAIL: condition"), "{file}");
        let v = json(&["validate", path.to_str().unwrap()]);
        assert_eq!(v["valid"], false);
        assert_eq!(v["violation"]["condition"], condition, "{file}");
        let oracle = json(&["--oracle", "validate", path.to_str().unwrap()]);
        assert_eq!(oracle["violation"]["condition"], condition, "{file} by oracle");
    }
    let v = json(&["validate", fixture("outside_ideal.pcs").to_str().unwrap()]);
    assert_eq!(v["violation"]["row"], 1);
    assert_eq!(v["violation"]["column"], 3);
}

#[test]
fn parse_and_budget_exit_codes() {
    let out = ringcodes(&["validate", fixture("broken.pcs").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4, column 5"), "{err}");

    let out = ringcodes(&["--budget", "10", "enumerator", fixture("example.pcs").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    let out = ringcodes(&["mindist", fixture("does_not_exist.pcs").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn worked_example_numbers() {
    let example = fixture("example.pcs");
    let p = example.to_str().unwrap();
    for oracle in [false, true] {
        let flag: &[&str] = if oracle { &["--oracle"] } else { &[] };
        let args = |rest: &[&'static str]| -> Vec<&str> { flag.iter().copied().chain([rest[0], p]).chain(rest[1..].iter().copied()).collect() };
        let v = json(&args(&["mindist"]));
        assert_eq!(v["min_distance"], 2);
        let v = json(&args(&["enumerator"]));
        assert_eq!(v["distance_distribution"], serde_json::json!([216, 0, 6480, 17280, 22680]));
        assert_eq!(v["weight_enumerator"], Value::Null);
        let v = json(&args(&["fourier", "4,2,2,4"]));
        assert_eq!(v["coefficients"][0]["re"], 216.0);
        assert_eq!(v["coefficients"][0]["im"], 0.0);
        let v = json(&args(&["kernel"]));
        assert_eq!(v["cardinality"], 72);
        let v = json(&args(&["islinear"]));
        assert_eq!(v["linear"], false);
    }
    let v = json(&["fourier", p, "4,2,2,4"]);
    assert_eq!(v["coefficients"][0]["exact"]["integer"], 216);
    let all = json(&["fourier", p, "--all"]);
    let values: Vec<i64> = all["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["exact"]["integer"].as_i64().unwrap())
        .collect();
    assert_eq!(values.len(), 18);
    assert_eq!(values.iter().filter(|&&v| v == 216).count(), 3);
    assert_eq!(values.iter().filter(|&&v| v == 144).count(), 6);
    assert_eq!(values.iter().filter(|&&v| v == -72).count(), 3);
    assert_eq!(values.iter().filter(|&&v| v == 0).count(), 6);
}

#[test]
fn code_file_matches_pcs_file() {
    let a = json(&["enumerator", fixture("example.pcs").to_str().unwrap()]);
    let b = json(&["enumerator", fixture("example.code").to_str().unwrap()]);
    assert_eq!(a["distance_distribution"], b["distance_distribution"]);
    let words_pcs = json(&["--oracle", "to-code", fixture("example.pcs").to_str().unwrap()]);
    assert_eq!(words_pcs["representatives"].as_array().unwrap().len(), 216);
}

#[test]
fn example_round_trip_reproduces_s() {
    let out = ringcodes(&["to-pcs", fixture("example.code").to_str().unwrap(), "--rows", "1 1 3 5; 0 4 2 2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Z6\npcs\n1 1 3 5 | 0 1 5\n0 4 2 2 | 0 2 4\n");
    let out = ringcodes(&["to-pcs", fixture("example.code").to_str().unwrap(), "--rows", "1 1 3 5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn linear_file_has_zero_column() {
    let out = ringcodes(&["to-code", fixture("repetition.pcs").to_str().unwrap()]);
    let text = stdout(&out);
    let Problem::Code { reps, .. } = parse_problem(&text).unwrap() else { panic!("{text}") };
    assert_eq!(reps.len(), 1);
    let dir = tempdir();
    let code_path = dir.join("rep.code");
    std::fs::write(&code_path, &text).unwrap();
    let pcs = ringcodes(&["to-pcs", code_path.to_str().unwrap()]);
    let Problem::Pcs { s, .. } = parse_problem(&stdout(&pcs)).unwrap() else { panic!() };
    assert_eq!(s.ncols(), 1);
    assert!(s.column(0).is_zero());
    let v = json(&["enumerator", fixture("repetition.pcs").to_str().unwrap()]);
    assert_eq!(v["weight_enumerator"], serde_json::json!([1, 0, 0, 2]));
}

#[test]
fn decode_and_json_determinism() {
    let rep = fixture("repetition.pcs");
    let v = json(&["decode", rep.to_str().unwrap(), "2,0,2"]);
    assert_eq!(v["codeword"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["error_weight"], 1);
    let o = json(&["--oracle", "decode", rep.to_str().unwrap(), "2,0,2"]);
    assert_eq!(o["codeword"], v["codeword"]);
    let out = ringcodes(&["decode", fixture("example.pcs").to_str().unwrap(), "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));

    for cmd in ["validate", "mindist", "kernel", "islinear", "enumerator", "to-code"] {
        let a = ringcodes(&["--json", cmd, fixture("example.pcs").to_str().unwrap()]);
        let b = ringcodes(&["--json", cmd, fixture("example.pcs").to_str().unwrap()]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ringcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn random_files_round_trip_under_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let rings: [&[u64]; 5] = [&[2], &[4], &[6], &[2, 2], &[2, 3]];
    let dir = tempdir();
    for i in 0..12 {
        let spec = RingSpec::new(rings[i % rings.len()]).unwrap();
        let n = rng.gen_range(1..=3);
        let rand_vec = |rng: &mut ChaCha8Rng| -> RingVec {
            (0..n)
                .map(|_| {
                    let res: Vec<u64> = spec.factors().iter().map(|&t| rng.gen_range(0..t)).collect();
                    spec.elem(&res).unwrap()
                })
                .collect()
        };
        let gens: Vec<RingVec> = (0..rng.gen_range(0..=2)).map(|_| rand_vec(&mut rng)).collect();
        let kernel = Submodule::from_generators(&spec, n, gens.clone()).unwrap();
        let mut reps: Vec<RingVec> = Vec::new();
        let mut keys = BTreeSet::new();
        for _ in 0..3 {
            let d = rand_vec(&mut rng);
            if keys.insert(kernel.coset_representative(&d).unwrap()) {
                reps.push(d);
            }
        }
        let pres = CodePresentation::new(kernel, reps.clone()).unwrap();
        let expected: BTreeSet<RingVec> = oracle_code_from_presentation(&pres, Budget::DEFAULT)
            .unwrap()
            .words()
            .clone();

        let code_path = dir.join(format!("random{i}.code"));
        std::fs::write(&code_path, render_code(&spec, &gens, &reps)).unwrap();
        for oracle_pcs in [false, true] {
            let mut args = vec!["to-pcs", code_path.to_str().unwrap()];
            if oracle_pcs {
                args.insert(0, "--oracle");
            }
            let pcs = ringcodes(&args);
            assert_eq!(pcs.status.code(), Some(0), "instance {i}");
            let pcs_path = dir.join(format!("random{i}.pcs"));
            std::fs::write(&pcs_path, &pcs.stdout).unwrap();
            let words = ringcodes(&["--oracle", "to-code", pcs_path.to_str().unwrap()]);
            let Problem::Code { reps: got, .. } = parse_problem(&stdout(&words)).unwrap() else { panic!() };
            let got: BTreeSet<RingVec> = got.into_iter().collect();
            assert_eq!(got, expected, "instance {i}, oracle to-pcs = {oracle_pcs}");
        }
    }
}
