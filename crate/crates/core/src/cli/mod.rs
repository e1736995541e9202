//! Command implementations behind the `xorgame` binary.
//!
//! Every command returns its output as a string so tests can compare runs
//! byte for byte; [`run`] writes it to `--out` or stdout.

mod args;
mod experiment;
mod generate;
mod plot;
mod solve;

use std::io::Write;
use std::path::Path;

pub use args::*;
pub use experiment::{
    cmd_experiment_bell, cmd_experiment_chevet, cmd_experiment_concentration, cmd_experiment_tightness, BellReport,
    ChevetReport, ChevetRow, ConcentrationReport, FlipRow, TailRow, TightnessReport, TightnessRow,
};
pub use generate::{cmd_generate, sidecar_path, GeneratedFiles};
pub use solve::{cmd_solve, SolveReport};

use crate::error::{Error, Result};

/// Floats in CSV output: 17 significant digits, enough to round-trip.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub(crate) fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => std::io::stdout().lock().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn emit_with_plot(output: &PlotOutput, content: &str, script: impl Fn(&str) -> String) -> Result<()> {
    emit(output.out.as_deref(), content)?;
    if let Some(plot) = &output.emit_plot {
        let csv = output.out.as_ref().ok_or_else(|| {
            Error::InvalidParameter("--emit-plot needs --out so the script knows which CSV to read".into())
        })?;
        std::fs::write(plot, script(&csv.display().to_string()))?;
    }
    Ok(())
}

/// Runs a parsed command line inside a pool of `cli.threads` workers.
pub fn run(cli: Cli) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| dispatch(cli.command))
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Solve(a) => {
            let report = cmd_solve(&a)?;
            emit(a.out.as_deref(), &to_json(&report)?)
        }
        Command::Generate(g) => cmd_generate(&g).map(|_| ()),
        Command::Experiment(e) => match e {
            ExperimentCommand::Concentration(a) => {
                let report = cmd_experiment_concentration(&a)?;
                emit_with_plot(&a.output, &report.to_csv()?, plot::concentration)
            }
            ExperimentCommand::Tightness(a) => {
                let report = cmd_experiment_tightness(&a)?;
                emit_with_plot(&a.output, &report.to_csv()?, plot::tightness)
            }
            ExperimentCommand::Chevet(a) => {
                let report = cmd_experiment_chevet(&a)?;
                emit_with_plot(&a.output, &report.to_csv()?, plot::chevet)
            }
            ExperimentCommand::Bell(a) => {
                let report = cmd_experiment_bell(&a)?;
                emit(a.out.as_deref(), &to_json(&report)?)
            }
        },
    }
}
