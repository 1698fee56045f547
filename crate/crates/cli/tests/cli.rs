use std::path::PathBuf;
use std::process::{Command, Output};

use interest_cli::panel_csv::read_panel;
use interest_core::cliometrics::{estimate, estimate_rows, generate_panel, Regime, RegimeConfig};

fn interest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn config(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_owned()
}

fn field(table: &str, key: &str) -> String {
    table
        .lines()
        .find_map(|line| {
            let mut parts = line.split_whitespace();
            (parts.next() == Some(key)).then(|| parts.next().unwrap().to_owned())
        })
        .unwrap_or_else(|| panic!("no `{key}` in\n{table}"))
}

fn sweep_column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header, ["r", "c1", "c2", "s", "ds_dr"]);
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn solve_log_saver() {
    let out = interest(&[
        "solve",
        "--utility",
        "log",
        "--rho",
        "0.05",
        "--m1",
        "100",
        "--m2",
        "0",
        "--r",
        "0.10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "c1"), "51.2195");
    assert_eq!(field(&text, "s"), "48.7805");
}

#[test]
fn solve_symmetric_case() {
    let out = interest(&[
        "solve",
        "--utility",
        "log",
        "--rho",
        "0",
        "--m1",
        "1",
        "--m2",
        "1",
        "--r",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "c1"), "1.0000");
    assert_eq!(field(&text, "c2"), "1.0000");
}

#[test]
fn solve_json_and_ies() {
    let out = interest(&[
        "solve",
        "--utility",
        "ies",
        "--sigma",
        "0.5",
        "--rho",
        "0.05",
        "--m1",
        "60",
        "--m2",
        "40",
        "--r",
        "0.04",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c1 = value["c1"].as_f64().unwrap();
    let c2 = value["c2"].as_f64().unwrap();
    assert!((c1 + c2 / 1.04 - (60.0 + 40.0 / 1.04)).abs() < 1e-8);
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        &[
            "solve", "--rho", "-1.5", "--m1", "1", "--m2", "1", "--r", "0.1",
        ][..],
        &[
            "solve", "--rho", "0.05", "--m1", "-1", "--m2", "1", "--r", "0.1",
        ],
        &[
            "solve",
            "--utility",
            "ies",
            "--rho",
            "0.05",
            "--m1",
            "1",
            "--m2",
            "1",
            "--r",
            "0.1",
        ],
        &[
            "solve", "--rho", "0.05", "--m1", "1", "--m2", "1", "--r", "-1",
        ],
        &["solve", "--rho", "0.05"],
        &[
            "sweep",
            "--rho",
            "0.05",
            "--m1",
            "1",
            "--m2",
            "0",
            "--r-from",
            "0",
            "--r-to",
            "0.1",
            "--r-steps",
            "0",
        ],
        &[
            "portfolio",
            "--rho",
            "0.05",
            "--m1",
            "1",
            "--m2",
            "0",
            "--r",
            "-0.01",
        ],
        &["price", "--rf", "0.03", "--pi", "1", "--lambda", "1"],
        &["price", "--rf", "0.03", "--pi", "0.5", "--lambda", "1.5"],
        &[
            "price", "--rf", "0.03", "--pi", "0.02", "--lambda", "0.5", "--kappa", "0.04",
        ],
        &[
            "price",
            "--rf",
            "0.03",
            "--pi",
            "0.02",
            "--lambda",
            "0.5",
            "--kappa",
            "0.04",
            "--reserve",
            "cubic:1",
        ],
        &["experiment", "--config", "/nonexistent/config.json"],
    ] {
        let out = interest(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unpriceable_diagnostic() {
    let out = interest(&["price", "--rf", "0.03", "--pi", "1", "--lambda", "1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unpriceable"), "{err}");
}

#[test]
fn sweep_saver_elasticity_is_zero() {
    let out = interest(&[
        "sweep",
        "--utility",
        "log",
        "--rho",
        "0.05",
        "--m1",
        "100",
        "--m2",
        "0",
        "--r-from",
        "0.01",
        "--r-to",
        "0.25",
        "--r-steps",
        "25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let rates = sweep_column(&csv, "r");
    assert_eq!(rates.len(), 25);
    assert!((rates[0] - 0.01).abs() < 1e-12 && (rates[24] - 0.25).abs() < 1e-12);
    for d in sweep_column(&csv, "ds_dr") {
        assert!(d.abs() < 1e-6, "{d}");
    }
}

#[test]
fn sweep_borrower_slope_is_positive() {
    let out = interest(&[
        "sweep",
        "--rho",
        "0.05",
        "--m1",
        "0",
        "--m2",
        "100",
        "--r-from",
        "0.01",
        "--r-to",
        "0.25",
        "--r-steps",
        "25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for d in sweep_column(&stdout(&out), "ds_dr") {
        assert!(d > 0.0, "{d}");
    }
}

#[test]
fn sweep_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = interest(&[
        "sweep",
        "--rho",
        "0.05",
        "--m1",
        "100",
        "--m2",
        "0",
        "--r-from",
        "0",
        "--r-to",
        "0.1",
        "--r-steps",
        "11",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 12);
}

#[test]
fn portfolio_holds_bonds_only() {
    let out = interest(&[
        "portfolio",
        "--rho",
        "0.05",
        "--m1",
        "100",
        "--m2",
        "0",
        "--r",
        "0.03",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "cash"), "0.0000");
    assert_eq!(field(&text, "bonds"), "48.7805");
}

#[test]
fn price_risky_rate() {
    let out = interest(&[
        "price", "--rf", "0.03", "--pi", "0.02", "--lambda", "0.5", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["exact_rate"].as_f64().unwrap() - 0.040404).abs() < 5e-7);
    assert!((v["first_order_rate"].as_f64().unwrap() - 0.04).abs() < 1e-12);
    assert!((v["first_order_spread"].as_f64().unwrap() - 0.01).abs() < 1e-12);
    assert!(v.get("phi").is_none());
}

#[test]
fn price_bank_terms() {
    let base = [
        "price",
        "--rf",
        "0.03",
        "--pi",
        "0.02",
        "--lambda",
        "0.5",
        "--reserve",
        "linear:0.1",
        "--loan",
        "1000",
    ];
    let out = interest(&[&base[..], &["--kappa", "0"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "phi"), "0.0000");
    assert_eq!(field(&text, "two_term_limit"), "true");

    let out = interest(&[&base[..], &["--kappa", "0.05", "--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["phi"].as_f64().unwrap() - 0.005).abs() < 1e-12);
    assert_eq!(v["two_term_limit"], serde_json::Value::Bool(false));

    let out = interest(&[
        "price",
        "--rf",
        "0.03",
        "--pi",
        "0",
        "--lambda",
        "0",
        "--kappa",
        "0.05",
        "--reserve",
        "binomial:0.08:0.01:1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("risk_free_rate,exact_rate,"), "{text}");
}

#[test]
fn experiment_presets() {
    let out = interest(&["experiment", "--config", &config("free_banking.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "kappa_hat",
            "kappa_se",
            "default_coef",
            "condition_number",
            "identified"
        ]
    );
    assert_eq!(v["identified"], serde_json::Value::Bool(true));

    let out = interest(&[
        "experiment",
        "--config",
        &config("fiat_backstop_collinear.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identified"], serde_json::Value::Bool(false));
}

#[test]
fn experiment_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("garbage.json", "not json"),
        (
            "version.json",
            r#"{"schema_version":2,"regime":"free_banking"}"#,
        ),
        (
            "range.json",
            r#"{"schema_version":1,"regime":"free_banking","n_banks":5,"n_periods":4,"r_f":0.03,
               "kappa_true":0.05,"pi_range":[0.5,0.1],"lambda_range":[0.2,0.8],
               "q_range":[0.02,0.2],"noise_sd":0.002,"seed":1}"#,
        ),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = interest(&["experiment", "--config", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
}

#[test]
fn seed_flag_overrides_config() {
    let path = config("free_banking.json");
    let a = interest(&["experiment", "--config", &path, "--seed", "7"]);
    let b = interest(&["experiment", "--config", &path]);
    assert_ne!(a.stdout, b.stdout);
    let expected =
        estimate(&generate_panel(&RegimeConfig::preset(Regime::FreeBanking, 7)).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!((v["kappa_hat"].as_f64().unwrap() - expected.kappa_hat).abs() < 1e-11);
}

#[test]
fn experiment_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = config("fiat_no_redemption.json");
    let run = |tag: &str| {
        let panel = dir.path().join(format!("panel-{tag}.csv"));
        let out = interest(&[
            "experiment",
            "--config",
            &path,
            "--panel-out",
            panel.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        (out.stdout, std::fs::read(panel).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn panel_round_trip_reproduces_estimate() {
    let dir = tempfile::tempdir().unwrap();
    for regime in ["free_banking.json", "fiat_no_redemption.json"] {
        let panel_path = dir.path().join("panel.csv");
        let out = interest(&[
            "experiment",
            "--config",
            &config(regime),
            "--panel-out",
            panel_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let printed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let rows = read_panel(std::fs::File::open(&panel_path).unwrap()).unwrap();
        assert_eq!(rows.len(), 5000);
        let reread = estimate_rows(&rows).unwrap();
        assert!((reread.kappa_hat - printed["kappa_hat"].as_f64().unwrap()).abs() < 1e-9);
        assert!((reread.kappa_se - printed["kappa_se"].as_f64().unwrap()).abs() < 1e-9);
        assert!((reread.default_coef - printed["default_coef"].as_f64().unwrap()).abs() < 1e-9);
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(interest(&["--help"]).status.code(), Some(0));
    assert_eq!(interest(&["--version"]).status.code(), Some(0));
    assert_eq!(interest(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_3() {
    let out = interest(&[
        "solve",
        "--rho",
        "0.05",
        "--m1",
        "100",
        "--m2",
        "0",
        "--r",
        "0.1",
        "--output",
        "/nonexistent-dir/out.txt",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}
