use std::process::{Command, Output};

use serde_json::Value;

fn kchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kchain"))
        .args(args)
        .env("KCHAIN_WORKERS", "2")
        .output()
        .expect("kchain runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = kchain(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("invalid json from {args:?}: {e}\n{}", stdout(&out))
    });
    (value, out.status.code().unwrap())
}

#[test]
fn degeneracy_all_methods_agree() {
    let (v, code) = json(&["degeneracy", "--sites", "5", "--window", "2", "--method", "all"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], "13");
    assert_eq!(v["results"]["agreement"], true);
    assert_eq!(v["exact_values"]["count"], "13");
    for m in ["enumerate", "recurrence", "modular"] {
        assert_eq!(v["results"]["methods"][m]["count"], "13");
    }
    assert_eq!(v["parameters"]["sites"], 5);
    assert_eq!(v["command"], "degeneracy");
}

#[test]
fn degeneracy_recurrence_is_exact_beyond_u64() {
    let (v, code) = json(&["degeneracy", "--sites", "200", "--window", "2", "--method", "recurrence"]);
    assert_eq!(code, 0);
    let count = v["results"]["count"].as_str().unwrap();
    assert_eq!(count, "734544867157818093234908902110449296423351");
    assert_eq!(count.len(), 42);
    assert_eq!(v["exact_values"]["count"], count);
}

#[test]
fn degeneracy_all_skips_inapplicable_methods() {
    let (v, code) = json(&["degeneracy", "--sites", "60", "--window", "3"]);
    assert_eq!(code, 0);
    let methods = v["results"]["methods"].as_object().unwrap();
    assert_eq!(methods.keys().collect::<Vec<_>>(), ["recurrence"]);
}

#[test]
fn capacity_errors_exit_two() {
    let out = kchain(&["degeneracy", "--sites", "50", "--window", "2", "--method", "enumerate"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("n <= 40") && err.contains("recurrence"), "{err}");

    let out = kchain(&["degeneracy", "--sites", "8", "--window", "3", "--method", "modular"]);
    assert_eq!(out.status.code(), Some(2));

    let out = kchain(&["pisot", "--k-min", "33", "--k-max", "33"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("k <= 32"));

    let out = kchain(&["dense-dump", "--sites", "13"]);
    assert_eq!(out.status.code(), Some(2));

    let out = kchain(&["degeneracy", "--sites", "5", "--window", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // clap usage errors share the code
    let out = kchain(&["degeneracy"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_basis_listings() {
    let out = kchain(&["kernel-basis", "--sites", "3", "--window", "2"]);
    assert_eq!(stdout(&out).lines().next(), Some("000,001,010,100,101"));

    let out = kchain(&["kernel-basis", "--sites", "2", "--window", "3"]);
    assert_eq!(stdout(&out).lines().next(), Some("00,01,10,11"));

    let (v, _) = json(&["kernel-basis", "--sites", "4", "--window", "2", "--limit", "3"]);
    assert_eq!(v["results"]["states"], serde_json::json!(["0000", "0001", "0010"]));
    assert_eq!(v["results"]["truncated"], true);
    assert_eq!(v["results"]["total"], "8");
    assert_eq!(v["parameters"]["limit"], 3);

    let (v, _) = json(&["kernel-basis", "--sites", "3"]);
    assert_eq!(v["parameters"]["limit"], 64);
    assert_eq!(v["results"]["truncated"], false);
}

#[test]
fn pisot_rows() {
    let (v, code) = json(&["pisot", "--k-min", "2", "--k-max", "2"]);
    assert_eq!(code, 0);
    let row = &v["results"]["rows"][0];
    assert!((row["dominant_root"].as_f64().unwrap() - 1.618033988749895).abs() < 1e-12);
    assert!((row["max_conjugate_modulus"].as_f64().unwrap() - 0.618033988749895).abs() < 1e-12);
    assert_eq!(row["is_pisot"], true);

    let (v, code) = json(&["pisot", "--k-min", "2", "--k-max", "12"]);
    assert_eq!(code, 0);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["is_pisot"] == true));
    let dominant: Vec<f64> = rows.iter().map(|r| r["dominant_root"].as_f64().unwrap()).collect();
    assert!(dominant.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(rows[10]["conjugates"].as_array().unwrap().len(), 11);
}

#[test]
fn converge_outputs() {
    let (v, code) = json(&["converge", "--window", "2", "--n-max", "2000"]);
    assert_eq!(code, 0);
    assert!(v["results"]["final_gap"].as_f64().unwrap() < 1e-3);

    let (v, _) = json(&["converge", "--window", "3", "--n-max", "1000"]);
    let gaps: Vec<f64> = v["results"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["gap"].as_f64().unwrap())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]));
    assert!((v["results"]["dominant_root"].as_f64().unwrap() - 1.839286755214161).abs() < 1e-12);

    let (v, _) = json(&["converge", "--window", "2", "--n-max", "2"]);
    let points = v["results"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert!((points[0]["per_site"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-14);
    assert_eq!(v["exact_values"]["count_2"], "3");
}

#[test]
fn converge_csv() {
    let out = kchain(&["--format", "csv", "converge", "--window", "2", "--n-max", "10", "--samples", "3"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,count,per_site,gap,dominant_root"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][..2], ["2", "3"]);
    assert_eq!(rows[2][..2], ["10", "144"]);
    assert_eq!(rows[0][2], "1.73205080756888");
}

#[test]
fn identity_command() {
    let (v, code) = json(&["identity", "--sites", "2", "--sites-max", "60"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["holds"], true);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 59);
    assert_eq!(v["exact_values"]["lhs_2"], "3");
    assert_eq!(v["exact_values"]["rhs_3"], "5");

    let out = kchain(&["identity", "--sites", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dense_dump_golden() {
    let out = kchain(&["dense-dump", "--sites", "3", "--window", "2"]);
    assert_eq!(stdout(&out), "0,0,0,1,0,0,1,2\n");
    let out = kchain(&["dense-dump", "--sites", "2", "--window", "2"]);
    assert_eq!(stdout(&out), "0,0,0,1\n");
    let out = kchain(&["dense-dump", "--sites", "4", "--window", "3"]);
    assert_eq!(stdout(&out), "0,0,0,0,0,0,0,1,0,0,0,0,0,0,1,2\n");
}

#[test]
fn verify_passes_and_catches_fault() {
    let (v, code) = json(&["verify", "--dense", "6", "--cross", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], true);

    let out = kchain(&["verify", "--dense", "5", "--cross", "6", "--fault-local-diagonal", "0,0,1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL  dense-energy"), "{text}");
    assert!(text.contains("FAIL  dense-kernel"), "{text}");
    assert!(text.contains("violated:"));

    let out = kchain(&["verify", "--dense", "13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_command_speaks_text_and_json() {
    let commands: [&[&str]; 7] = [
        &["degeneracy", "--sites", "6"],
        &["kernel-basis", "--sites", "3"],
        &["pisot", "--k-min", "2", "--k-max", "3"],
        &["converge", "--n-max", "50"],
        &["identity", "--sites", "5"],
        &["verify", "--dense", "4", "--cross", "6"],
        &["dense-dump", "--sites", "3"],
    ];
    for args in commands {
        let mut text_args = vec!["--format", "text"];
        text_args.extend_from_slice(args);
        let out = kchain(&text_args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(!out.stdout.is_empty());

        let (v, code) = json(args);
        assert_eq!(code, 0);
        for key in ["command", "parameters", "results", "exact_values", "timing_ms"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        // exact values survive a parse/serialize round trip verbatim
        let exact = v["exact_values"].as_object().unwrap();
        let reparsed: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        for (key, value) in exact {
            assert!(value.is_string());
            assert_eq!(&reparsed["exact_values"][key], value);
        }
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_kchain"))
            .args(["--format", "json", "degeneracy", "--sites", "18", "--method", "enumerate"])
            .env("KCHAIN_WORKERS", workers)
            .output()
            .unwrap();
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["results"]["count"].as_str().unwrap().to_owned()
    };
    let counts: Vec<String> = ["1", "3", "8", "bogus"].iter().map(|w| run(w)).collect();
    assert!(counts.iter().all(|c| c == "6765"));
}
