use std::fs;
use std::path::Path;

use autocond::dataio::write_trace_csv;
use autocond::experiments::{
    format_summary, logistic_comparison, stiefel_race, summary_rows, ComparisonSettings, LabeledTrace, RaceSettings,
    StiefelSetup, SummaryRow, THETAS,
};
use serde::Serialize;

use crate::args::{Experiment, InstanceArgs, InstanceId, SweepArgs};
use crate::instance::logistic_setup;
use crate::CliError;

#[derive(Serialize)]
struct SummaryFile<'a> {
    experiment: &'static str,
    seed: u64,
    rows: &'a [SummaryRow],
}

fn thetas(args: &SweepArgs) -> Vec<f64> {
    if args.thetas.is_empty() {
        THETAS.to_vec()
    } else {
        args.thetas.clone()
    }
}

fn logistic(args: &SweepArgs) -> Result<Vec<LabeledTrace>, CliError> {
    let instance = InstanceArgs {
        instance: InstanceId::LogregTrimmed,
        data: args.data.clone(),
        m: args.m,
        n: args.n.unwrap_or(50),
        r: args.r,
        nu: 0.5,
        boxed: false,
        min_eig: 0.0,
        lambda2: 0.0,
        kappa: 0,
        ridge: args.ridge,
        seed: args.seed,
    };
    let setup = logistic_setup(&instance)?;
    let d = ComparisonSettings::default();
    let settings = ComparisonSettings {
        alpha: args.alpha.unwrap_or(d.alpha),
        thetas: thetas(args),
        tol: args.tol.unwrap_or(d.tol),
        max_iter: args.max_iter.unwrap_or(d.max_iter),
        ..d
    };
    Ok(logistic_comparison(&setup, &settings)?)
}

fn stiefel(args: &SweepArgs) -> Result<Vec<LabeledTrace>, CliError> {
    let setup = StiefelSetup::new(args.n.unwrap_or(25), args.r, args.seed)?;
    let d = RaceSettings::default();
    let a = &args.armijo;
    let settings = RaceSettings {
        alpha: args.alpha.unwrap_or(d.alpha),
        thetas: thetas(args),
        tol: args.tol.unwrap_or(d.tol),
        max_iter: args.max_iter.unwrap_or(d.max_iter),
        sigma: a.armijo_sigma,
        t: a.armijo_t,
        s_factor: a.armijo_s_factor,
        convention: a.armijo_s_convention,
    };
    Ok(stiefel_race(&setup, &settings)?)
}

fn write_outputs(dir: &Path, experiment: &'static str, seed: u64, runs: &[LabeledTrace]) -> Result<String, CliError> {
    fs::create_dir_all(dir).map_err(autocond::Error::from)?;
    for run in runs {
        write_trace_csv(&run.trace, dir.join(format!("{}.csv", run.label)))?;
    }
    let rows = summary_rows(runs);
    let table = format_summary(&rows);
    fs::write(dir.join("summary.txt"), &table).map_err(autocond::Error::from)?;
    let json =
        serde_json::to_string_pretty(&SummaryFile { experiment, seed, rows: &rows }).map_err(autocond::Error::from)?;
    fs::write(dir.join("summary.json"), json).map_err(autocond::Error::from)?;
    Ok(table)
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let (name, runs) = match args.experiment {
        Experiment::Logistic => ("logistic", logistic(args)?),
        Experiment::Stiefel => ("stiefel", stiefel(args)?),
    };
    let table = write_outputs(&args.out, name, args.seed, &runs)?;
    print!("{table}");
    println!("wrote {} traces to {}", runs.len(), args.out.display());
    Ok(())
}
