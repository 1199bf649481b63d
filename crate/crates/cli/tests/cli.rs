use std::process::{Command, Output};

fn fockcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockcalc"))
        .args(args)
        .env_remove("FOCKCALC_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn selfadjoint_forward_passes_on_worked_symbols() {
    let out = fockcalc(&["check", "selfadjoint-forward", "--c", "1", "--a0", "0.5", "--a1", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["check"], "selfadjoint-forward");
    assert_eq!(v["verdict"], "Pass");
    assert!(v["residuals"].as_array().unwrap().iter().all(|r| r["N"].is_u64() && r["value"].is_f64()));
    assert!(v["tool_version"].is_string() && v["notes"].is_string() && v["params"].is_object());
}

#[test]
fn perturbed_symbol_exits_one() {
    let out = fockcalc(&["check", "selfadjoint-forward", "--c", "1+0.2i", "--a0", "0.5", "--a1", "0.25"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "Fail");
}

#[test]
fn normality_with_zero_translation_passes() {
    let out = fockcalc(&["check", "normality", "--a", "0.5", "--b", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Pass");
}

#[test]
fn informational_exits_zero() {
    let out = fockcalc(&["check", "boundedness", "--a", "1", "--b", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Informational");
}

#[test]
fn counterexample_reports_both_values_at_zero() {
    let out = fockcalc(&["check", "counterexample", "--eta", "2"]);
    let v = json(&out);
    let notes = v["notes"].as_str().unwrap();
    assert!(notes.contains("printed tuples at z=0: -5.5+0i vs 0.25+0i"), "{notes}");
    assert_eq!(out.status.code(), Some(if v["verdict"] == "Fail" { 1 } else { 0 }));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["check", "no-such-check"][..],
        &["check", "fixed-point", "--a0", "zero"],
        &["suite", "--orders", "32,16"],
        &["suite", "--alpha", "-1"],
        &["suite", "--tol", "bogus=1e-3"],
        &["suite", "--format", "xml"],
        &["check", "fixed-point", "--a0", "0", "--a1", "1"],
        &["frobnicate"],
    ] {
        let out = fockcalc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic_and_seed_sensitive() {
    let a = fockcalc(&["check", "h-conjugation", "--a0", "0.3i", "--a1", "-0.2"]);
    let b = fockcalc(&["check", "h-conjugation", "--a0", "0.3i", "--a1", "-0.2"]);
    assert_eq!(a.stdout, b.stdout);

    let with_env = Command::new(env!("CARGO_BIN_EXE_fockcalc"))
        .args(["check", "selfadjoint-forward"])
        .env("FOCKCALC_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json(&with_env)["params"]["seed"], 7);
    let flag = fockcalc(&["check", "selfadjoint-forward", "--seed", "7"]);
    assert_eq!(with_env.stdout, flag.stdout);
}

#[test]
fn identity_matrix_csv() {
    let out = fockcalc(&["matrix", "--size", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    for (m, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 8);
        for n in 0..4 {
            assert_eq!(row[2 * n], if m == n { 1.0 } else { 0.0 });
            assert_eq!(row[2 * n + 1], 0.0);
        }
    }
}

#[test]
fn selfadjoint_matrix_csv_is_hermitian() {
    let out = fockcalc(&["matrix", "--size", "8", "--weight-w", "0.5", "--map-a", "0.25", "--map-b", "0.5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let m: Vec<Vec<(f64, f64)>> = text
        .lines()
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            v.chunks(2).map(|p| (p[0], p[1])).collect()
        })
        .collect();
    for (i, row) in m.iter().enumerate() {
        for (j, &(re, im)) in row.iter().enumerate() {
            assert!((re - m[j][i].0).abs() <= 1e-15 && (im + m[j][i].1).abs() <= 1e-15);
        }
    }
}

#[test]
fn unbounded_matrix_warns_on_stderr() {
    let out = fockcalc(&["matrix", "--size", "4", "--map-a", "1", "--map-b", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Unbounded"));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}

#[test]
fn oracle_and_formats() {
    let out = fockcalc(&["oracle", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Pass");

    let csv = fockcalc(&["check", "fixed-point", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("check,N,value,verdict\nfixed-point,0,"), "{text}");

    let txt = fockcalc(&["check", "fixed-point", "--format", "text"]);
    assert!(String::from_utf8(txt.stdout).unwrap().starts_with("fixed-point: Pass"));
}

#[test]
fn suite_with_single_order_keeps_verdicts() {
    let full = json(&fockcalc(&["suite"]));
    let short = json(&fockcalc(&["suite", "--orders", "16"]));
    let verdicts = |v: &serde_json::Value| -> Vec<(String, String)> {
        v["reports"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (r["check"].as_str().unwrap().to_string(), r["verdict"].as_str().unwrap().to_string()))
            .collect()
    };
    let names: Vec<String> = verdicts(&full).into_iter().map(|(n, _)| n).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(verdicts(&full), verdicts(&short));
}
