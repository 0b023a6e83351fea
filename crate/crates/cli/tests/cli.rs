use std::path::PathBuf;

use serde_json::Value;

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../corpus");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("irrepcount").chain(args.iter().copied());
    let code = irrepcount::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn write_temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("irrepcount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn decide_idempotent() {
    let (code, out, _) = run(&["decide", "--n", "1", &corpus("idempotent.alg")]);
    assert_eq!((code, out.as_str()), (0, "FINITE\n"));
}

#[test]
fn count_s3_in_dimension_two() {
    let (code, out, _) = run(&["count", "--n", "2", &corpus("s3.alg")]);
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn count_quantum_plane_is_infinite() {
    let (code, out, err) = run(&["count", "--n", "2", &corpus("qplane.alg")]);
    assert_eq!(code, 4);
    assert_eq!(first_line(&out), "INFINITE (witness: tr(x1^2))");
    assert!(err.contains("INFINITE"));
}

#[test]
fn decide_infinite_exits_zero() {
    let (code, out, _) = run(&["decide", "--n", "1", &corpus("free2.alg")]);
    assert_eq!((code, first_line(&out)), (0, "INFINITE (witness: tr(x1))"));
}

#[test]
fn closure_points_are_counted() {
    let (code, out, _) = run(&["count", "--n", "1", &corpus("x2plus1.alg")]);
    assert_eq!((code, out.as_str()), (0, "2\n"));
}

#[test]
fn parse_error_exits_two_with_position() {
    let f = write_temp("bad.alg", "generators: X\nrelation: X*Z\n");
    let (code, out, err) = run(&["decide", "--n", "1", &f]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 2, column 13"), "{err}");

    let (code, out, _) = run(&["decide", "--n", "1", "--json", &f]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["verdict"].is_null());
}

#[test]
fn missing_file_and_bad_usage_exit_two() {
    assert_eq!(run(&["decide", "--n", "1", "/nonexistent/x.alg"]).0, 2);
    assert_eq!(run(&["decide", "--n", "0", &corpus("s3.alg")]).0, 2);
    assert_eq!(run(&["decide", &corpus("s3.alg")]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["decide", "--n", "1", "--dump", "bogus", &corpus("s3.alg")]).0, 2);
}

#[test]
fn help_mentions_closure_points() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("algebraic closure"));
    let (code, out, _) = run(&["count", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("closure points"));
}

#[test]
fn resource_limit_is_inconclusive() {
    let (code, out, _) = run(&["decide", "--n", "2", "--max-degree", "2", &corpus("s3.alg")]);
    assert_eq!(code, 3);
    assert!(first_line(&out).starts_with("INCONCLUSIVE ("), "{out}");
    let (code, out, _) = run(&["count", "--n", "2", "--max-degree", "2", "--json", &corpus("s3.alg")]);
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "inconclusive");
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert!(v["limit"].as_str().unwrap().contains("degree"));
}

#[test]
fn json_report_shape() {
    let (code, out, _) = run(&["count", "--n", "1", "--json", &corpus("s3.alg")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["status", "verdict", "count", "witness", "minimal_polynomials", "metrics", "timings_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["status"], "ok");
    assert_eq!(v["verdict"], "FINITE");
    assert_eq!(v["count"], 2);
    assert_eq!(v["minimal_polynomials"]["tr(x1)"], 2);
    // b^3 = 1 and (ab)^2 = 1 force b = 1
    assert_eq!(v["minimal_polynomials"]["tr(x2)"], 1);
    assert_eq!(v["metrics"]["variables"], 2);
    assert_eq!(v["metrics"]["algebra_dimension"], 2);
    assert_eq!(v["input"]["n"], 1);
}

#[test]
fn json_is_stable_apart_from_timings() {
    let args = ["count", "--n", "2", "--json", &corpus("s3.alg")];
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&["count", "--n", "2", "--json", "--threads", "1", &corpus("s3.alg")]);
    assert_eq!(strip(&a), strip(&b));
    // key order is fixed, not just the key set
    let keys: Vec<String> = serde_json::from_str::<serde_json::Map<String, Value>>(&a)
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let order_of = |s: &str| a.find(&format!("\n  \"{s}\"")).unwrap();
    let positions: Vec<usize> = ["status", "verdict", "count", "witness", "minimal_polynomials", "metrics", "timings_ms"]
        .iter()
        .map(|k| order_of(k))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    assert!(keys.contains(&"timings_ms".to_string()));
}

#[test]
fn warnings_go_to_stderr() {
    let f = write_temp("warn.alg", "generators: X\nrelation: X - X\nrelation: X^2 - X\n");
    let (code, out, err) = run(&["decide", "--n", "1", &f]);
    assert_eq!((code, out.as_str()), (0, "FINITE\n"));
    assert!(err.contains("warning: line 2"), "{err}");
}

#[test]
fn dumps_follow_the_verdict() {
    let (code, out, _) = run(&[
        "count", "--n", "1", "--dump", "ideal", "--dump", "gb", "--dump", "traces", "--dump", "sset", "--dump",
        "algebra", &corpus("idempotent.alg"),
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "2");
    for header in [
        "# relation ideal: 1 generators",
        "# relation ideal basis: 1 elements",
        "# J basis: 1 elements",
        "# trace generators: 1",
        "# irreducibility set: 1 members",
        "# algebra: dimension 2",
        "# gram matrix (rank 2)",
    ] {
        assert!(out.contains(header), "missing {header:?} in\n{out}");
    }
    assert!(out.contains("tr(x1)\t"));
}

#[test]
fn dumps_go_to_stderr_with_json() {
    let (code, out, err) = run(&["decide", "--n", "1", "--json", "--dump", "traces", &corpus("idempotent.alg")]);
    assert_eq!(code, 0);
    serde_json::from_str::<Value>(&out).unwrap();
    assert!(err.contains("# trace generators: 1"));
}

#[test]
fn verbose_reports_metrics() {
    let (code, _, err) = run(&["decide", "--n", "2", "--verbose", &corpus("weyl.alg")]);
    assert_eq!(code, 0);
    assert!(err.contains("variables: 8"), "{err}");
    assert!(err.contains("timings (ms):"));
}

#[test]
fn both_quotient_modes_and_orders_agree_on_s3() {
    for mode in ["saturate", "single"] {
        for order in ["grevlex", "lex"] {
            let (code, out, _) = run(&["count", "--n", "1", "--quotient-mode", mode, "--order", order, &corpus("s3.alg")]);
            assert_eq!((code, out.as_str()), (0, "2\n"), "{mode} {order}");
        }
    }
}

#[test]
fn binary_runs() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_irrepcount"))
        .args(["count", "--n", "2", &corpus("qplane.alg")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "INFINITE (witness: tr(x1^2))\n");
}
