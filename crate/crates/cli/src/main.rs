use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ordlift_cli::config::read_config;
use ordlift_cli::{emit_plot, exit_code, run, CliError, Format, RunConfig};

/// Exact computations with orders on circle-map groups, surface-group
/// representations and causal covers.
///
/// Commands: tau, compare, growth, sandwich-audit, rep-check, causal, suite.
/// Exit codes: 0 pass, 1 property violation, 2 input error.
#[derive(Parser, Debug)]
#[command(name = "ordlift", version)]
struct Args {
    /// Command to run; may instead come from the config file.
    command: Option<String>,
    /// Flat `key = value` file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<String>,
    /// Reference hyperbolization for rep-check.
    #[arg(long)]
    reference: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    /// Rational or decimal tolerance, e.g. 1e-6.
    #[arg(long)]
    tol: Option<String>,
    /// Report path; CSV goes to stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// csv, or svg to also write a plot next to the report.
    #[arg(long)]
    format: Option<String>,
    /// circle, circle(kind=moebius, d=1/10), lagrangian(n=2).
    #[arg(long)]
    cover: Option<String>,
    #[arg(long = "power-cap")]
    power_cap: Option<String>,
    /// Element kind for sampled elements: pl or moebius.
    #[arg(long)]
    kind: Option<String>,
    /// Order parameter q >= 0.
    #[arg(long)]
    q: Option<String>,
    /// Growth index N, or psi power for causal.
    #[arg(long)]
    n: Option<String>,
    /// Integer g for the growth demo.
    #[arg(long)]
    g: Option<String>,
    /// Integer h for the growth demo.
    #[arg(long)]
    h: Option<String>,
    /// Single suite criterion, 1 to 10.
    #[arg(long)]
    criterion: Option<String>,
}

impl Args {
    fn settings(self) -> Result<BTreeMap<String, String>, CliError> {
        let mut raw = match &self.config {
            Some(p) => read_config(p)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("command", self.command),
            ("input", self.input),
            ("reference", self.reference),
            ("seed", self.seed),
            ("samples", self.samples),
            ("tol", self.tol),
            ("out", self.out),
            ("format", self.format),
            ("cover", self.cover),
            ("power_cap", self.power_cap),
            ("kind", self.kind),
            ("q", self.q),
            ("n", self.n),
            ("g", self.g),
            ("h", self.h),
            ("criterion", self.criterion),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                raw.insert(k.to_string(), v);
            }
        }
        Ok(raw)
    }
}

fn write_outputs(cfg: &RunConfig, report: &ordlift_cli::Report) -> Result<(), CliError> {
    let csv = report.to_csv();
    match &cfg.out {
        Some(p) => std::fs::write(p, csv).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => print!("{csv}"),
    }
    if cfg.format == Format::Svg {
        if let (Some(plot), Some(out)) = (&report.plot, &cfg.out) {
            emit_plot(plot, &out.with_extension("svg"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let result = Args::parse().settings().and_then(RunConfig::resolve).and_then(|cfg| {
        let report = run(&cfg)?;
        write_outputs(&cfg, &report)?;
        Ok(report)
    });
    match result {
        Ok(report) => {
            for v in &report.violations {
                log::error!("violation: {v}");
            }
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("ordlift: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
