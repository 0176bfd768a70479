//! The `opoly` binary: output formats, determinism, files and exit codes.

use opoly::cli::{parse_config, Envelope, MinMassResult, PlotDataResult, TableResult, Task, SCHEMA_VERSION};
use opoly::transforms::MeasureSpec;
use opoly::zeros::uvarov_zeros;
use opoly::ClassicalFamily;
use std::process::{Command, Output};

fn opoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opoly"))
        .args(args)
        .env_remove("OPOLY_THREADS")
        .output()
        .expect("binary runs")
}

fn opoly_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opoly"))
        .args(args)
        .env("OPOLY_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TABLE2: &[&str] = &["--family", "laguerre", "--alpha", "2", "--a", "0", "--n", "3", "--masses", "0,1,10,100,1000", "table"];

#[test]
fn table_csv_has_header_and_printed_values() {
    let o = opoly(TABLE2);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["N", "x1", "x2", "x3"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[1][1], "0.321731");
    assert_eq!(&rows[4][0], "1000");
    let x: f64 = rows[4][1].parse().unwrap();
    assert!((x - 0.00039990).abs() < 1e-8);
}

#[test]
fn json_round_trips_at_full_precision() {
    let mut args = TABLE2.to_vec();
    args.splice(0..0, ["--format", "json", "--precision", "full"]);
    let o = opoly(&args);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<TableResult> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(env.schema_version, SCHEMA_VERSION);
    assert_eq!(env.command, "table");
    let fam = ClassicalFamily::laguerre(2.0).unwrap();
    assert_eq!(env.result.family, fam);
    for row in &env.result.rows {
        let z = uvarov_zeros(&MeasureSpec::uvarov(fam, 0.0, row.mass).unwrap(), 3).unwrap();
        assert_eq!(row.zeros, z.zeros, "bit-identical zeros at N = {}", row.mass);
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["--family", "jacobi", "--alpha", "0.5", "--beta", "-0.5", "--a", "-1.5", "--n", "8", "--masses", "0,0.01,0.1,1,10,100", "scan"];
    let one = opoly_threads(&args, "1");
    let four = opoly_threads(&args, "4");
    let default = opoly(&args);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn out_writes_the_file_and_nothing_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mm.json");
    let p = path.to_str().unwrap();
    let o = opoly(&["--family", "laguerre", "--alpha", "2", "--a", "-1", "--n", "3", "--format", "json", "--out", p, "min-mass"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let env: Envelope<MinMassResult> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(env.result.straddle);
    assert_eq!(env.result.endpoint, 0.0);
    assert!((env.result.n0 - 0.191847).abs() < 1e-6);
}

#[test]
fn plot_data_series() {
    let o = opoly(&["--family", "jacobi", "--a", "1", "--n", "3", "--mass", "1", "--format", "json", "plot-data", "--samples", "11", "--eps", "0,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<PlotDataResult> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(env.result.series.len(), 2);
    let s = &env.result.series[1];
    assert_eq!(s.mass, 1.5);
    assert_eq!(s.x.len(), 11);
    assert_eq!((s.x[0], s.x[10]), (-1.0, 1.0));
}

#[test]
fn residual_and_verify_report_status() {
    let o = opoly(&["--family", "laguerre", "--alpha", "2", "--a", "0", "--n", "5", "--mass", "1", "residual"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = opoly(&["verify", "--suite", "lemma22"]);
    assert_eq!(o.status.code(), Some(0));
    let o = opoly(&["verify", "--suite", "lemma22", "--inject-b-perturbation", "0.25"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_domain_errors_exit_with_2() {
    let cases: &[&[&str]] = &[
        &["--family", "laguerre", "--alpha", "-2", "table"],
        &["--family", "jacobi", "--a", "0.3", "zeros"],
        &["--family", "laguerre", "--a", "0", "min-mass"],
        &["--masses", "", "table"],
        &["--family", "hermite", "--a", "1", "zeros"],
        &["--family", "jacobi", "--a", "-2", "--masses", "10,1", "scan"],
        &["verify", "--suite", "nonsense"],
        &["plot-data", "--x-min", "1", "--x-max", "0"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = opoly(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    let o = opoly_threads(&["zeros"], "lots");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_failure() {
    let o = opoly(&["--out", "/nonexistent-dir/x.csv", "zeros"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn defaults_are_filled_in() {
    let cfg = parse_config(["opoly", "--family", "laguerre", "zeros"]).unwrap();
    assert_eq!(cfg.a, 0.0);
    assert_eq!(cfg.n, 3);
    assert_eq!(cfg.task, Task::Zeros { mass: 0.0 });
    let cfg = parse_config(["opoly", "zeros"]).unwrap();
    assert_eq!(cfg.a, 1.0);
}
