use std::fs;
use std::io::Write;
use std::path::Path;

use noisy_cheb::analysis::experiment::{convergence_sweep, histogram_trials, HistogramSummary};
use noisy_cheb::{fit, sample, FitResult, NoiseKind, NoiseModel, TargetFunction};
use serde::{Deserialize, Serialize};

use crate::args::{ConvergenceArgs, FitArgs, HistogramArgs, NoiseArgs, SampleArgs, ScanArgs};
use crate::output::{real, to_json, Sink};
use crate::CliError;

/// Largest exponent accepted by the convergence study without `--force`.
const MAX_EXPONENT: u32 = 24;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDocument {
    pub schema_version: u32,
    #[serde(rename = "N")]
    pub num_intervals: usize,
    pub nbar: usize,
    pub selected_degree: usize,
    pub sigma_hat_sq: f64,
    pub coefficients: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cp_curve: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub noise: Option<NoiseModel>,
    pub function: String,
}

struct Fitted {
    result: FitResult,
    noise: Option<NoiseModel>,
    function: String,
}

fn noise_model(sigma: Option<f64>, kind: Option<NoiseKind>) -> Result<NoiseModel, CliError> {
    let kind = kind.unwrap_or(if sigma.is_some() {
        NoiseKind::Gaussian
    } else {
        NoiseKind::None
    });
    match (kind, sigma) {
        (NoiseKind::None, _) => Ok(NoiseModel::none()),
        (_, Some(s)) => Ok(NoiseModel::new(kind, s)?),
        (_, None) => Err(CliError::Usage(format!("--noise {kind} needs --sigma"))),
    }
}

/// One y-value per line; blank lines and lines starting with '#' skipped.
pub fn read_samples(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            CliError::Usage(format!(
                "{}:{}: not a number: `{line}`",
                path.display(),
                i + 1
            ))
        })?;
        values.push(v);
    }
    if values.len() < 3 {
        return Err(CliError::Usage(format!(
            "{} has {} samples, need at least 3",
            path.display(),
            values.len()
        )));
    }
    Ok(values)
}

fn run_fit(args: &SampleArgs) -> Result<Fitted, CliError> {
    if let Some(path) = &args.input {
        let values = read_samples(path)?;
        return Ok(Fitted {
            result: fit(&values, args.nbar)?,
            noise: None,
            function: "external".into(),
        });
    }
    let f = args
        .function
        .as_ref()
        .expect("clap requires --function or --input");
    if args.n_samples < 3 {
        return Err(CliError::Usage("--n-samples must be at least 3".into()));
    }
    let noise = noise_model(args.sigma, args.noise)?;
    let values = sample(f, &noise, args.n_samples - 1, args.seed)?;
    let mut result = fit(&values, args.nbar)?;
    result.seed = Some(args.seed);
    Ok(Fitted {
        result,
        noise: Some(noise),
        function: f.name().into(),
    })
}

pub fn cmd_fit(args: &FitArgs) -> Result<(), CliError> {
    let fitted = run_fit(&args.sample)?;
    let r = fitted.result;
    let doc = FitDocument {
        schema_version: SCHEMA_VERSION,
        num_intervals: r.num_intervals,
        nbar: r.nbar(),
        selected_degree: r.selected_degree,
        sigma_hat_sq: r.sigma_hat_sq,
        coefficients: r.truncated.coeffs().to_vec(),
        cp_curve: args.emit_cp_curve.then(|| r.cp_curve.cp_values.clone()),
        seed: r.seed,
        noise: fitted.noise,
        function: fitted.function,
    };
    let mut out = Sink::stdout_or(args.output.as_deref())?;
    out.write_all(&to_json(&doc)?)?;
    Ok(out.flush()?)
}

pub fn cmd_cp_scan(args: &ScanArgs) -> Result<(), CliError> {
    let fitted = run_fit(&args.sample)?;
    let scan = &fitted.result.cp_curve;
    let mut out = Sink::stdout_or(args.output.as_deref())?;
    writeln!(
        out,
        "# function={} N={} nbar={} sigma_hat_sq={}",
        fitted.function,
        fitted.result.num_intervals,
        scan.nbar,
        real(scan.sigma_hat_sq)
    )?;
    writeln!(out, "ell,cp_value,is_min")?;
    for (ell, &v) in scan.cp_values.iter().enumerate() {
        writeln!(out, "{ell},{},{}", real(v), u8::from(ell == scan.selected))?;
    }
    Ok(out.flush()?)
}

fn experiment_noise(args: &NoiseArgs) -> Result<NoiseModel, CliError> {
    noise_model(Some(args.sigma), Some(args.noise))
}

pub fn cmd_convergence(args: &ConvergenceArgs) -> Result<(), CliError> {
    if args.exp_min < 1 || args.exp_min > args.exp_max {
        return Err(CliError::Usage(format!(
            "need 1 <= --exp-min <= --exp-max, got {}..{}",
            args.exp_min, args.exp_max
        )));
    }
    if args.exp_max > MAX_EXPONENT && !args.force {
        return Err(CliError::Usage(format!(
            "--exp-max {} exceeds {MAX_EXPONENT}; pass --force to run it anyway",
            args.exp_max
        )));
    }
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let noise = experiment_noise(&args.noise)?;
    let f: &TargetFunction = &args.noise.function;
    let mut out = Sink::stdout_or(args.output.as_deref())?;
    writeln!(
        out,
        "# function={} noise={noise} seed={}",
        f.name(),
        args.noise.seed
    )?;
    writeln!(out, "N,trial,seed,selected_degree,inf_error,l2_error")?;
    out.flush()?;
    let mut io_error = None;
    convergence_sweep(
        f,
        &noise,
        args.exp_min..=args.exp_max,
        args.trials,
        args.noise.seed,
        |rows| {
            let written = rows.iter().try_for_each(|r| {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.num_intervals,
                    r.trial,
                    r.seed,
                    r.selected_degree,
                    real(r.inf_error),
                    real(r.l2_error)
                )
            });
            if let Err(e) = written.and_then(|_| out.flush()) {
                io_error = Some(e);
                return Err(noisy_cheb::Error::InvalidArgument("output closed".into()));
            }
            Ok(())
        },
    )
    .map_err(|e| match io_error.take() {
        Some(io) => CliError::Io(io),
        None => e.into(),
    })?;
    Ok(())
}

#[derive(Serialize)]
struct HistogramDocument<'a> {
    schema_version: u32,
    function: &'a str,
    noise: NoiseModel,
    seed: u64,
    #[serde(flatten)]
    summary: &'a HistogramSummary,
}

pub fn cmd_histogram(args: &HistogramArgs) -> Result<(), CliError> {
    if args.n_samples < 3 {
        return Err(CliError::Usage("--n-samples must be at least 3".into()));
    }
    let noise = experiment_noise(&args.noise)?;
    let f = &args.noise.function;
    let n = args.n_samples - 1;
    let records = histogram_trials(f, &noise, n, args.trials, args.noise.seed)?;
    let mut out = Sink::stdout_or(args.output.as_deref())?;
    writeln!(
        out,
        "# function={} noise={noise} N={n} seed={}",
        f.name(),
        args.noise.seed
    )?;
    writeln!(out, "trial,seed,selected_degree,inf_error")?;
    for r in &records {
        writeln!(
            out,
            "{},{},{},{}",
            r.trial,
            r.seed,
            r.selected_degree,
            real(r.inf_error)
        )?;
    }
    out.flush()?;
    let summary = HistogramSummary::new(&records, f, &noise, n)?;
    let doc = HistogramDocument {
        schema_version: SCHEMA_VERSION,
        function: f.name(),
        noise,
        seed: args.noise.seed,
        summary: &summary,
    };
    let mut sink = Sink::stderr_or(args.summary.as_deref())?;
    sink.write_all(&to_json(&doc)?)?;
    Ok(sink.flush()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trips_bitwise() {
        let doc = FitDocument {
            schema_version: SCHEMA_VERSION,
            num_intervals: 8,
            nbar: 4,
            selected_degree: 2,
            sigma_hat_sq: 1.0 / 3.0,
            coefficients: vec![0.1, -2.0 / 7.0, 1e-300],
            cp_curve: Some(vec![5.0, 4.0, 3.5, 3.6, 3.9]),
            seed: Some(u64::MAX),
            noise: Some(NoiseModel::laplace(0.25).unwrap()),
            function: "runge".into(),
        };
        let text = to_json(&doc).unwrap();
        let back: FitDocument = serde_json::from_slice(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn noise_defaults() {
        assert_eq!(noise_model(None, None).unwrap(), NoiseModel::none());
        assert_eq!(
            noise_model(Some(0.5), None).unwrap(),
            NoiseModel::gaussian(0.5).unwrap()
        );
        assert!(matches!(
            noise_model(None, Some(NoiseKind::Uniform)),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            noise_model(Some(-1.0), Some(NoiseKind::Uniform)),
            Err(CliError::Usage(_))
        ));
    }
}
