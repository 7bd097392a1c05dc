use std::process::{Command, Output};

fn hausdorff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hausdorff"))
        .args(args)
        .env_remove("HAUSDORFF_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hausdorff(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn records(args: &[&str]) -> Vec<serde_json::Value> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&full)).unwrap();
    v["records"].as_array().unwrap().clone()
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn closed_volume() {
    let r = records(&["volume", "--n", "3", "--method", "closed"]);
    assert!((num(&r[0]["estimate"]) - 1.0 / 180.0).abs() < 1e-15);
}

#[test]
fn monte_carlo_volume_within_three_sigma() {
    let r = records(&[
        "volume",
        "--n",
        "2",
        "--method",
        "mc",
        "--samples",
        "1e5",
        "--seed",
        "7",
    ]);
    let (est, se) = (num(&r[0]["estimate"]), num(&r[0]["stderr"]));
    assert!((est - 1.0 / 6.0).abs() <= 3.0 * se, "{est} ± {se}");
}

#[test]
fn canonical_volume() {
    let r = records(&[
        "volume",
        "--n",
        "3",
        "--method",
        "canonical",
        "--tstar",
        "0.5",
    ]);
    assert!(num(&r[0]["residual"]) < 1e-8);
}

#[test]
fn principal_lower_representation() {
    let r = records(&[
        "represent",
        "--q",
        "0.5,0.3333333333",
        "--kind",
        "principal-lower",
    ]);
    let nodes: Vec<f64> = r.iter().map(|x| num(&x["node"])).collect();
    let weights: Vec<f64> = r.iter().map(|x| num(&x["weight"])).collect();
    assert!(nodes[0].abs() < 1e-9 && (nodes[1] - 2.0 / 3.0).abs() < 1e-9);
    assert!((weights[0] - 0.25).abs() < 1e-9 && (weights[1] - 0.75).abs() < 1e-9);
    assert_eq!(r[0]["index"], "3/2");
}

#[test]
fn canonical_representation_through_midpoint() {
    let r = records(&[
        "represent",
        "--q",
        "0.5,0.3333333333",
        "--kind",
        "canonical",
        "--tstar",
        "0.5",
    ]);
    let got: Vec<(f64, f64)> = r
        .iter()
        .map(|x| (num(&x["node"]), num(&x["weight"])))
        .collect();
    let want = [(0.0, 1.0 / 6.0), (0.5, 2.0 / 3.0), (1.0, 1.0 / 6.0)];
    assert_eq!(got.len(), 3);
    for ((x, w), (ex, ew)) in got.iter().zip(want) {
        assert!((x - ex).abs() < 1e-8 && (w - ew).abs() < 1e-8, "{got:?}");
    }
}

#[test]
fn outside_moment_space_exits_4() {
    assert_eq!(
        hausdorff(&["represent", "--q", "0.5,0.6"]).status.code(),
        Some(4)
    );
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(hausdorff(&["volume", "--n", "x"]).status.code(), Some(2));
    assert_eq!(
        hausdorff(&["volume", "--n", "3", "--method", "canonical"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hausdorff(&["check", "--id", "16"]).status.code(), Some(2));
}

#[test]
fn selberg_closed_and_identities() {
    let r = records(&[
        "selberg", "--alpha", "1", "--beta", "1", "--gamma", "2", "--n", "2", "--verify", "closed",
    ]);
    assert!((num(&r[0]["estimate"]) - 1.0 / 15.0).abs() < 1e-14);

    let r = records(&["selberg", "--verify", "identities", "--m", "1"]);
    assert!((num(&r[0]["estimate"]) - 1.0 / 12.0).abs() < 1e-14);
    assert!((num(&r[1]["estimate"]) - 0.5).abs() < 1e-14);

    let r = records(&["selberg", "--verify", "identities", "--m", "3"]);
    assert!(r.iter().all(|x| num(&x["residual"]) <= 1e-6));
}

#[test]
fn rkhs_checks() {
    let r = records(&["rkhs", "--m", "2", "--check", "legendre-table"]);
    assert_eq!(r.len(), 63);
    assert!(r.iter().all(|x| num(&x["error"]) <= 1e-10));

    let r = records(&["rkhs", "--m", "2", "--check", "biorthogonal"]);
    for x in &r {
        let expected = match (x["j"].as_u64(), x["k"].as_u64()) {
            (Some(2), Some(2)) => 1.0 / 25.0,
            (Some(3), Some(3)) => 1.0 / 7.0,
            _ => 0.0,
        };
        assert!((num(&x["value"]) - expected).abs() <= 1e-8, "{x}");
    }

    let r = records(&["rkhs", "--m", "2", "--check", "reproduce"]);
    assert!(r.iter().all(|x| num(&x["residual"]) <= 1e-8));
}

#[test]
fn brittleness_certificate() {
    let r = records(&[
        "brittleness",
        "--n",
        "1",
        "--delta-prime",
        "0.1",
        "--samples",
        "2e5",
        "--seed",
        "42",
    ]);
    assert_eq!(r[0]["conclusion"], "certified");
    assert!((num(&r[0]["lambda"]) - 0.8).abs() < 1e-15);
    let (p, se) = (num(&r[0]["prior"]), num(&r[0]["prior_stderr"]));
    assert!((p - 0.5).abs() <= 3.0 * se);
}

#[test]
fn brittleness_sweep_csv() {
    let out = stdout(&[
        "brittleness",
        "--n",
        "1",
        "--delta-prime",
        "0.1",
        "--samples",
        "2e4",
        "--sweep",
        "--points",
        "4",
        "--format",
        "csv",
    ]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("n,delta_prime,delta,bound,estimate,stderr,conclusion")
    );
    assert_eq!(lines.count(), 4);
}

#[test]
fn json_meta_is_deterministic() {
    let args = [
        "volume",
        "--n",
        "2",
        "--method",
        "mc",
        "--samples",
        "1e4",
        "--seed",
        "3",
        "--format",
        "json",
    ];
    let v: serde_json::Value = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(v["meta"]["seed"], 3);
    assert_eq!(v["meta"]["command"]["name"], "volume");
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn output_independent_of_thread_count() {
    for args in [
        &[
            "volume",
            "--n",
            "3",
            "--method",
            "mc",
            "--samples",
            "50000",
            "--format",
            "csv",
        ][..],
        &[
            "brittleness",
            "--n",
            "2",
            "--delta-prime",
            "0.1",
            "--samples",
            "30000",
            "--format",
            "json",
        ][..],
    ] {
        let runs: Vec<String> = ["1", "2", "5"]
            .iter()
            .map(|t| stdout(&[args, &["--threads", t]].concat()))
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("hausdorff-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = hausdorff(&["volume", "--n", "4", "--format", "csv", "--output", p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("n,method,tstar,estimate,stderr,expected,residual\n4,closed,"));
}

#[test]
fn single_check_passes() {
    let r = records(&["check", "--id", "6"]);
    assert!(r.iter().all(|x| x["pass"] == true));
}
