use std::io::Write;
use std::process::{Command, Output};

use noisy_cheb::{
    cp_value, fit_function, values_to_coeffs, ChebSeries, NoiseModel, TargetFunction,
};
use serde_json::Value;
use tempfile::NamedTempFile;

fn noisycheb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noisycheb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_file(lines: &[&str]) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn constant_file_fits_degree_zero() {
    let f = csv_file(
        &["# seventeen threes"; 1]
            .iter()
            .copied()
            .chain(["3.0"; 17])
            .collect::<Vec<_>>(),
    );
    let doc: Value = serde_json::from_str(&stdout(&noisycheb(&[
        "fit",
        "--input",
        f.path().to_str().unwrap(),
    ])))
    .unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["N"], 16);
    assert_eq!(doc["selected_degree"], 0);
    assert_eq!(doc["coefficients"].as_array().unwrap().len(), 1);
    assert_eq!(doc["coefficients"][0].as_f64(), Some(3.0));
    assert_eq!(doc["function"], "external");
}

#[test]
fn fit_agrees_with_library() {
    let text = stdout(&noisycheb(&[
        "fit",
        "--function",
        "runge",
        "--n-samples",
        "1025",
        "--sigma",
        "1e-3",
        "--seed",
        "9",
        "--emit-cp-curve",
    ]));
    let doc: Value = serde_json::from_str(&text).unwrap();
    let noise = NoiseModel::gaussian(1e-3).unwrap();
    let lib = fit_function(&TargetFunction::Runge, &noise, 1024, 9, None).unwrap();
    assert_eq!(
        doc["selected_degree"].as_u64().unwrap() as usize,
        lib.selected_degree
    );
    let coeffs: Vec<f64> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(coeffs, lib.truncated.coeffs());
    assert_eq!(doc["cp_curve"].as_array().unwrap().len(), lib.nbar() + 1);

    let series = ChebSeries::new(coeffs).unwrap();
    for x in [-0.9, 0.0, 0.42] {
        assert!((series.evaluate(x).unwrap() - lib.truncated.evaluate(x).unwrap()).abs() <= 1e-15);
    }
}

#[test]
fn noiseless_fit_matches_library_selection() {
    let doc: Value = serde_json::from_str(&stdout(&noisycheb(&[
        "fit",
        "--function",
        "runge",
        "--n-samples",
        "1025",
        "--noise",
        "none",
    ])))
    .unwrap();
    let lib = fit_function(&TargetFunction::Runge, &NoiseModel::none(), 1024, 0, None).unwrap();
    assert_eq!(
        doc["selected_degree"].as_u64().unwrap() as usize,
        lib.selected_degree
    );
    assert_eq!(doc["sigma_hat_sq"].as_f64(), Some(0.0));
    assert!(doc.get("cp_curve").is_none());
}

#[test]
fn cp_scan_rows_match_fit() {
    let args = [
        "--function",
        "abs",
        "--n-samples",
        "257",
        "--sigma",
        "1e-2",
        "--seed",
        "4",
    ];
    let scan = stdout(&noisycheb(&[&["cp-scan"], &args[..]].concat()));
    let doc: Value =
        serde_json::from_str(&stdout(&noisycheb(&[&["fit"], &args[..]].concat()))).unwrap();
    let rows = data_rows(&scan);
    assert_eq!(rows.len(), 129);
    let minima: Vec<usize> = rows
        .iter()
        .filter(|r| r[2] == "1")
        .map(|r| r[0].parse().unwrap())
        .collect();
    assert_eq!(
        minima,
        vec![doc["selected_degree"].as_u64().unwrap() as usize]
    );

    let y = noisy_cheb::sample(
        &TargetFunction::Abs,
        &NoiseModel::gaussian(1e-2).unwrap(),
        256,
        4,
    )
    .unwrap();
    let c = values_to_coeffs(&y).unwrap();
    for r in &rows {
        let ell: usize = r[0].parse().unwrap();
        let got: f64 = r[1].parse().unwrap();
        let want = cp_value(&c, 128, ell).unwrap();
        assert!((got - want).abs() <= 1e-10 * want);
    }
}

#[test]
fn input_errors_exit_with_two() {
    let short = csv_file(&["1.0", "2.0"]);
    let bad = csv_file(&["1.0", "oops", "2.0", "3.0"]);
    for args in [
        vec!["fit", "--input", short.path().to_str().unwrap()],
        vec!["fit", "--input", bad.path().to_str().unwrap()],
        vec!["fit", "--function", "sine"],
        vec!["fit", "--function", "runge", "--noise", "laplace"],
        vec![
            "experiment",
            "convergence",
            "--function",
            "abs",
            "--sigma",
            "1",
            "--exp-max",
            "25",
        ],
    ] {
        let out = noisycheb(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = noisycheb(&["fit", "--input", bad.path().to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}

#[test]
fn non_finite_samples_exit_with_three() {
    let f = csv_file(&["1.0", "NaN", "2.0", "3.0", "4.0"]);
    assert_eq!(
        noisycheb(&["fit", "--input", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn convergence_is_deterministic_and_grows_degree() {
    let args = [
        "experiment",
        "convergence",
        "--function",
        "abs",
        "--sigma",
        "1e-1",
        "--exp-min",
        "4",
        "--exp-max",
        "12",
        "--trials",
        "6",
        "--seed",
        "3",
    ];
    let a = stdout(&noisycheb(&args));
    assert_eq!(a, stdout(&noisycheb(&args)));
    let rows = data_rows(&a);
    assert_eq!(rows.len(), 9 * 6);
    let mean_degree: Vec<f64> = rows
        .chunks(6)
        .map(|c| c.iter().map(|r| r[3].parse::<f64>().unwrap()).sum::<f64>() / 6.0)
        .collect();
    assert!(
        mean_degree.windows(2).all(|w| w[1] >= w[0] - 1.0),
        "{mean_degree:?}"
    );
    assert!(mean_degree.last().unwrap() > &(2.0 * mean_degree[0]));
}

#[test]
fn single_trial_histogram_summary() {
    let summary = NamedTempFile::new().unwrap();
    let out = noisycheb(&[
        "experiment",
        "histogram",
        "--function",
        "runge",
        "--sigma",
        "1e-3",
        "--n-samples",
        "2049",
        "--trials",
        "1",
        "--seed",
        "8",
        "--summary",
        summary.path().to_str().unwrap(),
    ]);
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(summary.path()).unwrap()).unwrap();
    assert_eq!(doc["trials"], 1);
    assert_eq!(
        doc["median_error"].as_f64().unwrap(),
        rows[0][3].parse::<f64>().unwrap()
    );
    assert_eq!(
        doc["median_degree"].as_f64().unwrap(),
        rows[0][2].parse::<f64>().unwrap()
    );
    assert_eq!(doc["error_iqr"].as_f64(), Some(0.0));
}
