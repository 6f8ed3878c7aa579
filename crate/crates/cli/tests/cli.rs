//! Black-box tests of the binary: output contracts, exit statuses, config
//! handling, and byte-level determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsneakernet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(output)).expect("json stdout")
}

fn csv_rows(output: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(output);
    assert!(text.ends_with('\n'), "csv must be line-feed terminated");
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header present")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn cell<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    let idx = header
        .iter()
        .position(|h| h == name)
        .expect("column exists");
    &row[idx]
}

#[test]
fn estimate_qldpc_default_point() {
    let output = run(&[
        "estimate", "--code", "qldpc", "--n-m", "60000", "--t3", "5400",
    ]);
    assert!(output.status.success());
    let value = json(&output);
    assert_eq!(value["code"], "qldpc");
    assert_eq!(value["breakdown"]["r_total"], serde_json::json!(0.0970457));
    assert_eq!(value["breakdown"]["feasible"], serde_json::json!(true));
}

#[test]
fn estimate_surface_baseline_point() {
    let output = run(&[
        "estimate", "--code", "surface", "--n-ms", "257", "--t3", "5400",
    ]);
    assert!(output.status.success());
    let value = json(&output);
    assert_eq!(value["breakdown"]["r_total"], serde_json::json!(0.0790132));
}

#[test]
fn estimate_rejects_negative_patch_size() {
    let output = run(&["estimate", "--n-m", "-5"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty(), "no output rows on invalid input");
    assert!(!output.stderr.is_empty());
}

#[test]
fn bare_compare_reproduces_the_reference_table() {
    let output = run(&["compare"]);
    assert!(output.status.success());
    let (header, rows) = csv_rows(&output);
    assert_eq!(rows.len(), 2);
    assert_eq!(cell(&header, &rows[0], "code"), "qldpc");
    assert_eq!(cell(&header, &rows[0], "trucks"), "7444");
    assert_eq!(cell(&header, &rows[0], "cost_per_bit_usd"), "1.40");
    assert_eq!(cell(&header, &rows[1], "code"), "surface");
    assert_eq!(cell(&header, &rows[1], "trucks"), "31920");
    assert_eq!(cell(&header, &rows[1], "patch_qubits"), "257");
    let surface_cost: f64 = cell(&header, &rows[1], "cost_per_bit").parse().unwrap();
    assert!((5.97..=6.01).contains(&surface_cost));
}

#[test]
fn free_infrastructure_compares_at_zero_cost() {
    let output = run(&["compare", "--rent", "0", "--maintenance", "0"]);
    assert!(output.status.success());
    let (header, rows) = csv_rows(&output);
    for row in &rows {
        assert_eq!(cell(&header, row, "cost_per_bit_usd"), "0.00");
        assert_eq!(cell(&header, row, "cost_per_bit"), "0");
    }
}

#[test]
fn looser_targets_need_fewer_trucks_when_solving_both() {
    let loose = run(&["compare", "--target", "0.5", "--solve-qldpc"]);
    let tight = run(&["compare", "--target", "0.08", "--solve-qldpc"]);
    assert!(loose.status.success() && tight.status.success());
    let (header, loose_rows) = csv_rows(&loose);
    let (_, tight_rows) = csv_rows(&tight);
    for (loose_row, tight_row) in loose_rows.iter().zip(&tight_rows) {
        let fewer: u64 = cell(&header, loose_row, "trucks").parse().unwrap();
        let more: u64 = cell(&header, tight_row, "trucks").parse().unwrap();
        assert!(fewer < more, "{} !< {} for {}", fewer, more, loose_row[0]);
    }
}

#[test]
fn sweep_is_monotone_ordered_and_deterministic() {
    let args = [
        "sweep", "--kind", "rtot-nm", "--from", "20000", "--to", "100000", "--points", "5",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let (header, rows) = csv_rows(&first);
    assert_eq!(rows.len(), 15, "3 curves x 5 points");

    // curve-major order with ascending variable inside each curve, and
    // strictly decreasing total rate along each curve
    let mut seen_curves = Vec::new();
    let mut last: Option<(String, f64, f64)> = None;
    for row in &rows {
        let curve = cell(&header, row, "curve").to_string();
        let n_m: f64 = cell(&header, row, "n_m").parse().unwrap();
        let r_total: f64 = cell(&header, row, "r_total").parse().unwrap();
        if !seen_curves.contains(&curve) {
            seen_curves.push(curve.clone());
            last = None;
        }
        if let Some((ref prev_curve, prev_n, prev_r)) = last {
            assert_eq!(prev_curve, &curve, "rows are curve-major");
            assert!(n_m > prev_n);
            assert!(r_total < prev_r, "rate must fall with patch size");
        }
        last = Some((curve, n_m, r_total));
    }
    assert_eq!(seen_curves, vec!["t3=3600", "t3=5400", "t3=10800"]);

    // the 80%-fidelity crossing sits in the high-30k range (a bit past
    // 40k for the three-hour drive): above 0.2 at 20k, below it by 60k
    for row in &rows {
        let curve = cell(&header, row, "curve");
        let n_m: f64 = cell(&header, row, "n_m").parse().unwrap();
        let r_total: f64 = cell(&header, row, "r_total").parse().unwrap();
        if n_m == 20_000.0 {
            assert!(r_total > 0.2);
        }
        if n_m == 40_000.0 && curve != "t3=10800" {
            assert!(r_total < 0.2);
        }
        if n_m == 60_000.0 {
            assert!(r_total < 0.2);
        }
    }

    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical rerun");
}

#[test]
fn sweep_rows_round_trip_through_estimate() {
    let sweep = run(&[
        "sweep",
        "--kind",
        "rtot-nm",
        "--from",
        "20000",
        "--to",
        "100000",
        "--points",
        "5",
        "--t3-list",
        "5400",
    ]);
    assert!(sweep.status.success());
    let (header, rows) = csv_rows(&sweep);
    for row in rows {
        let n_m = cell(&header, &row, "n_m");
        let estimate = run(&[
            "estimate", "--code", "qldpc", "--n-m", n_m, "--t3", "5400", "--format", "csv",
        ]);
        let (est_header, est_rows) = csv_rows(&estimate);
        assert_eq!(
            cell(&header, &row, "r_total"),
            cell(&est_header, &est_rows[0], "r_total"),
            "re-evaluating row inputs reproduces its outputs"
        );
    }
}

#[test]
fn transport_time_sweep_clamps_below_the_patch_cutoff() {
    let output = run(&[
        "sweep",
        "--kind",
        "t3-nm",
        "--from",
        "20000",
        "--to",
        "60000",
        "--points",
        "5",
        "--target-list",
        "0.1",
    ]);
    assert!(output.status.success());
    let (header, rows) = csv_rows(&output);
    assert_eq!(rows.len(), 5);
    // below the cutoff the solved time clamps to zero with the flag down;
    // at 60,000 qubits the 0.1 target allows a positive drive
    for row in &rows[..4] {
        assert_eq!(cell(&header, row, "t3_max_s"), "0");
        assert_eq!(cell(&header, row, "feasible"), "false");
    }
    let last = &rows[4];
    assert_eq!(cell(&header, last, "feasible"), "true");
    let t3: f64 = cell(&header, last, "t3_max_s").parse().unwrap();
    assert!(t3 > 10_000.0);
}

#[test]
fn fleet_sweep_shrinks_with_looser_targets() {
    let output = run(&[
        "sweep",
        "--kind",
        "trucks-target",
        "--from",
        "0.1",
        "--to",
        "0.3",
        "--points",
        "5",
    ]);
    assert!(output.status.success());
    let (header, rows) = csv_rows(&output);
    let mut previous = f64::INFINITY;
    for row in &rows {
        assert_eq!(cell(&header, row, "feasible"), "true");
        let unrounded: f64 = cell(&header, row, "trucks_unrounded").parse().unwrap();
        assert!(unrounded <= previous);
        previous = unrounded;
    }
}

#[test]
fn degenerate_sweep_range_is_rejected() {
    let output = run(&[
        "sweep", "--kind", "rtot-nm", "--from", "50000", "--to", "50000",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());
}

#[test]
fn solve_t3_round_trips_through_estimate() {
    let solve = run(&["solve-t3", "--n-m", "60000", "--target", "0.1"]);
    assert!(solve.status.success());
    let value = json(&solve);
    assert_eq!(value["feasible"], serde_json::json!(true));
    let t3 = value["value"].as_f64().unwrap();
    assert!((t3 - 10079.7).abs() < 0.1);

    let estimate = run(&["estimate", "--n-m", "60000", "--t3", &t3.to_string()]);
    let r_total = json(&estimate)["breakdown"]["r_total"].as_f64().unwrap();
    assert!((r_total - 0.1).abs() < 1e-6);
}

#[test]
fn infeasible_solves_exit_with_status_3() {
    let output = run(&["solve-t3", "--n-m", "20000", "--target", "0.05"]);
    assert_eq!(output.status.code(), Some(3));
    assert!(output.stdout.is_empty());
    assert!(String::from_utf8_lossy(&output.stderr).contains("infeasible"));

    // the HGP total saturates near 1e-6 at the top of the default bracket,
    // so a 1e-30 target cannot be met
    let output = run(&["compare", "--target", "1e-30", "--solve-qldpc"]);
    assert_eq!(output.status.code(), Some(3));
    let output = run(&["solve-nm", "--code", "qldpc", "--target", "1e-30"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn fleet_reports_the_reference_totals() {
    let qldpc = run(&["fleet", "--code", "qldpc"]);
    assert!(qldpc.status.success());
    assert_eq!(
        json(&qldpc)["fleet"]["total_trucks"],
        serde_json::json!(7444)
    );

    let surface = run(&["fleet", "--code", "surface"]);
    assert_eq!(
        json(&surface)["fleet"]["total_trucks"],
        serde_json::json!(31920)
    );
}

#[test]
fn config_file_overlays_and_flag_precedence() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"network": {{"memory_qubits": 53000.0, "transport_time_s": 3600.0}}}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let output = run(&["estimate", "--config", path]);
    assert!(output.status.success());
    let r_total = json(&output)["breakdown"]["r_total"].as_f64().unwrap();
    assert!((r_total - 0.116806).abs() < 1e-6);

    // flags beat the file
    let output = run(&[
        "estimate", "--config", path, "--n-m", "60000", "--t3", "5400",
    ]);
    let r_total = json(&output)["breakdown"]["r_total"].as_f64().unwrap();
    assert!((r_total - 0.0970457).abs() < 1e-7);
}

#[test]
fn unknown_config_keys_are_fatal() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"network": {{"warp_drive": 9}}}}"#).unwrap();
    let output = run(&["estimate", "--config", file.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("warp_drive"));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"network": {{"memory_qubits": "lots"}}}}"#).unwrap();
    let output = run(&["estimate", "--config", file.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_same_bytes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let to_file = run(&["compare", "--out", path.to_str().unwrap()]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let to_stdout = run(&["compare"]);
    assert_eq!(written, stdout(&to_stdout));
}

#[test]
fn validate_explicit_stages_against_hand_arithmetic() {
    let output = run(&[
        "validate",
        "--stages",
        "2x0.1,1x0.2",
        "--trials",
        "200000",
        "--seed",
        "7",
    ]);
    assert!(output.status.success());
    let value = json(&output);
    assert_eq!(value["exact"], serde_json::json!(0.352));
    assert_eq!(value["approx"], serde_json::json!(0.4));
    assert_eq!(value["within_3_sigma"], serde_json::json!(true));
}

#[test]
fn validate_pipeline_sum_matches_estimate_total() {
    let validated = run(&["validate", "--trials", "1000", "--seed", "1"]);
    assert!(validated.status.success());
    let approx = json(&validated)["approx"].as_f64().unwrap();
    let estimate = run(&["estimate"]);
    let r_total = json(&estimate)["breakdown"]["r_total"].as_f64().unwrap();
    assert!((approx - r_total).abs() < 1e-6 * r_total);
}

#[test]
fn per_patch_idling_lowers_the_default_operating_rate() {
    let flat = run(&["estimate"]);
    let adjusted = run(&["estimate", "--idling", "per-patch"]);
    let flat_total = json(&flat)["breakdown"]["r_total"].as_f64().unwrap();
    let adjusted_total = json(&adjusted)["breakdown"]["r_total"].as_f64().unwrap();
    assert!((flat_total - 0.0970457).abs() < 1e-7);
    assert!((adjusted_total - 0.0672932).abs() < 1e-7);
}
