use bereleq::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bereleq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn insert_classic_word() {
    let v = json(&["--n", "3", "--q", "0", "insert", "3'", "2", "1'", "3'", "1", "2", "1"]);
    let last = v["shapes"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last, serde_json::json!([2, 2, 1]));
    assert_eq!(v["tableau"]["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn insert_accepts_quoted_and_barred_tokens() {
    let a = call(&["--n", "3", "--q", "0", "insert", "3' 2 1'"]);
    let b = call(&["--n", "3", "--q", "0", "insert", "3\u{304}", "2", "1\u{304}"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn insert_empty_word() {
    let v = json(&["--q", "0", "insert"]);
    assert_eq!(v["tableau"]["rows"], serde_json::json!([]));
    assert_eq!(v["shapes"], serde_json::json!([[]]));
}

#[test]
fn insert_q_weight_table() {
    let v = json(&["--n", "1", "--q", "1/2", "insert", "1", "1"]);
    assert_eq!(v["total"], "1");
    assert!(!v["weights"].as_array().unwrap().is_empty());
}

#[test]
fn insert_errors_are_usage_errors() {
    assert_eq!(call(&["--n", "1", "insert", "2"]).0, 2);
    assert_eq!(call(&["insert", "x"]).0, 2);
    assert_eq!(call(&["--q", "1", "insert", "1"]).0, 2);
    assert_eq!(call(&["--n", "2", "--a", "2", "insert", "1"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
}

#[test]
fn verify_suites_pass() {
    let v = json(&["verify", "littlewood", "--n", "2", "--m", "4", "--a", "2,3", "--q", "1/2"]);
    assert_eq!(v["passed"], true);
    let v = json(&["verify", "intertwining", "--n", "2", "--bound", "3"]);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert!(v["checked"].as_u64().unwrap() > 0);
    let v = json(&["verify", "bijectivity", "--n", "2", "--m", "4"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["words"], 256);
    for suite in ["pieri", "eigen", "doob", "qzero-equivalence", "rows"] {
        let (code, out, _) = call(&["--format", "text", "verify", suite, "--bound", "2"]);
        assert_eq!(code, 0, "{suite}");
        assert!(out.starts_with("PASS"), "{out}");
    }
}

#[test]
fn simulate_is_reproducible() {
    let args = ["--n", "2", "simulate", "--m", "5", "--runs", "3", "--seed", "7"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 18);
    for line in a.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    let (_, zero, _) = call(&["simulate", "--m", "0"]);
    assert_eq!(zero.lines().count(), 1);
}

#[test]
fn simulate_compare_report() {
    let v = json(&["--n", "1", "--q", "1/2", "simulate", "--m", "3", "--runs", "20000", "--seed", "7", "--compare"]);
    assert!(v["shape_tv"].as_f64().unwrap() < v["shape_tv_bound"].as_f64().unwrap());
    assert_eq!(v["shapes"][0]["exact"], "1/5");
}

#[test]
fn enumerate_objects() {
    let v = json(&["--n", "2", "enumerate", "oscillating", "--m", "2"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
    let v = json(&["--n", "1", "enumerate", "tableaux", "--shape", "2"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
    let v = json(&["--n", "2", "enumerate", "patterns", "--shape", "2,1"]);
    assert_eq!(v.as_array().unwrap().len(), 16);
    assert_eq!(call(&["enumerate", "tableaux"]).0, 2);
}

#[test]
fn hermite_coefficients() {
    let v = json(&["--n", "1", "--a", "2", "--q", "1/2", "hermite", "--ell", "2"]);
    assert_eq!(v["value"], "23/4");
    assert_eq!(v["agree"], true);
    assert_eq!(v["coefficients"][1]["coefficient"], "3/2");
}

#[test]
fn text_output_uses_ascii_bars() {
    let (_, out, _) = call(&["--n", "1", "--q", "0", "--format", "text", "--ascii", "insert", "1'"]);
    assert!(out.starts_with("1'"), "{out}");
}
