use std::io::Write;
use std::process::{Command, Output};

fn probgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_probgeo"))
        .args(args)
        .env_remove("PROBGEO_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn barycenter_json_schema() {
    let f = csv_file("x\n1\n2\n3\n");
    let o = probgeo(&[
        "barycenter",
        "--input",
        f.path().to_str().unwrap(),
        "--chart",
        "logistic:0,1",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["coordinate_mean", "barycenter", "n", "boundary_flag", "chart"]);
    assert!((v["barycenter"].as_f64().unwrap() - 1.7728354108628388).abs() < 1e-14);
    assert_eq!(v["n"], 3);
}

#[test]
fn empirical_chart_recovers_the_sample_median() {
    let f = csv_file("5\n1\n9\n2\n7\n");
    let o = probgeo(&[
        "barycenter",
        "--input",
        f.path().to_str().unwrap(),
        "--chart",
        "empirical",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["barycenter"].as_f64().unwrap() - 5.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let f = csv_file("1\n2\n3\n");
    let path = f.path().to_str().unwrap();
    assert_eq!(
        probgeo(&["barycenter", "--input", path, "--chart", "normal:0,-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        probgeo(&["simulate", "clt", "--chart", "normal:0,1", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        probgeo(&[
            "tails",
            "--dist",
            "normal:0,1",
            "--chart",
            "empirical",
            "--epsilon",
            "0.1"
        ])
        .status
        .code(),
        Some(2)
    );
    // Every coordinate saturates at 1 under this chart.
    let o = probgeo(&["barycenter", "--input", path, "--chart", "normal:-200,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("boundary"));
    let bad = csv_file("1\nfoo\n");
    let o = probgeo(&[
        "barycenter",
        "--input",
        bad.path().to_str().unwrap(),
        "--chart",
        "normal:0,1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));
}

#[test]
fn moments_report_raw_and_pulled_back() {
    let o = probgeo(&[
        "moments",
        "--dist",
        "normal:0,1",
        "--chart",
        "normal:0,1",
        "--order",
        "3",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["raw_coordinate_moment"].as_f64().unwrap() - 0.25).abs() < 1e-9);
    assert!(v["pulled_back"].is_number());
    assert_eq!(v["defined"], true);
}

#[test]
fn clt_csv_has_one_row_per_replicate() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("reps.csv");
    let o = probgeo(&[
        "simulate",
        "clt",
        "--dist",
        "normal:0,1",
        "--chart",
        "normal:0,1",
        "--n",
        "50",
        "--reps",
        "7",
        "--seed",
        "11",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines[0], "replicate,estimate,scaled_error");
    assert_eq!(lines.len(), 8);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["estimates"].as_array().unwrap().len(), 7);
}

#[test]
fn tails_and_copula_text_tables() {
    let o = probgeo(&[
        "tails",
        "--dist",
        "cauchy:0,1",
        "--chart",
        "normal:0,1",
        "--epsilon",
        "0.01",
        "--orders",
        "2,4",
    ]);
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("upper_mass") && l.contains("0.1292269653330710")));
    assert!(text.contains("high_order_moments.1.order"));

    let f = csv_file("a,b\n1,10\n2,20\n3,30\n4,40\n");
    let o = probgeo(&[
        "copula",
        "--input",
        f.path().to_str().unwrap(),
        "--columns",
        "0,1",
        "--epsilon",
        "0.25",
        "--json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coordinate_mean"][0].as_f64().unwrap(), 0.5);
    assert_eq!(v["corner_masses"]["lo,lo"].as_f64().unwrap(), 0.25);
    assert_eq!(v["corner_masses"]["lo,hi"].as_f64().unwrap(), 0.0);

    let o = probgeo(&[
        "copula",
        "--input",
        f.path().to_str().unwrap(),
        "--columns",
        "0,1",
        "--charts",
        "normal:2.5,1,empirical",
        "--json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["charts"][0], "normal:2.5,1");
    assert!((v["barycenter"][0].as_f64().unwrap() - 2.5).abs() < 1e-9);
}

#[test]
fn copula_rejects_single_column_and_mismatched_charts() {
    let f = csv_file("1,2\n3,4\n");
    let p = f.path().to_str().unwrap();
    assert_eq!(
        probgeo(&["copula", "--input", p, "--columns", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        probgeo(&["copula", "--input", p, "--columns", "0,1", "--charts", "normal:0,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "simulate",
        "lln",
        "--dist",
        "cauchy:0,1",
        "--chart",
        "normal:0,1",
        "--n",
        "5000",
        "--seed",
        "9",
    ];
    assert_eq!(probgeo(&args).stdout, probgeo(&args).stdout);
}
