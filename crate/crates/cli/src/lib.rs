//! Front end for `ordlift`: resolves a [`RunConfig`], runs one command and
//! returns a [`Report`]. Exit codes: 0 pass, 1 property violation, 2 input
//! error.

pub mod commands;
pub mod config;
pub mod plot;
pub mod report;

use std::fmt;

pub use config::{Command, CoverSpec, Format, RunConfig};
pub use plot::{emit_plot, render_svg, Plot, Style};
pub use report::Report;

#[derive(Debug)]
pub enum CliError {
    /// Malformed configuration or input files.
    Input(String),
    Lib(ordlift::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ordlift::Error> for CliError {
    fn from(e: ordlift::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    /// Library errors caused by the given data rather than by a failed
    /// property count as input errors.
    pub fn is_input(&self) -> bool {
        use ordlift::Error as E;
        match self {
            CliError::Input(_) => true,
            CliError::Lib(e) => matches!(
                e,
                E::Parse(_)
                    | E::Precondition(_)
                    | E::KindMismatch(_)
                    | E::InvalidElement(_)
                    | E::NotInCommutator(_)
                    | E::UnsupportedSurface(_)
                    | E::DimensionMismatch(_)
                    | E::DegenerateSample
            ),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_input() {
            2
        } else {
            1
        }
    }
}

/// Runs the configured command. A computation that aborts with a
/// non-input error still yields a report, failed with the error as its
/// violation; undecided or inconsistent oracles never pass silently.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.format == Format::Svg && cfg.out.is_none() {
        return Err(CliError::Input("--format svg needs --out for the plot path".into()));
    }
    let mut report = Report::new(cfg.echo.clone());
    match commands::dispatch(cfg, &mut report) {
        Ok(()) => {}
        Err(e) if e.is_input() => return Err(e),
        Err(e) => report.violation(format!("aborted: {e}")),
    }
    if cfg.format == Format::Svg && report.plot.is_none() && report.passed() {
        return Err(CliError::Input(format!("{} has no plot; use --format csv", cfg.command.name())));
    }
    Ok(report)
}

pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}
