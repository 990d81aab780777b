//! Subcommand dispatch. Each command returns the text to print.

use std::path::Path;

use probgeo_core::multivariate::CoordinateMatrix;
use probgeo_core::{
    absolute_centred_moment, barycenter_of_distribution, barycenter_of_sample, boundary_mass, centred_moment,
    initial_moment, multivariate_barycenter, pseudo_observations, pushforward, run_clt_experiment, run_lln_experiment,
    Chart, ChartBundle, ChartSpec, CubeReport, Distribution, Law, LlnReport, QuadratureSpec, Sample, SimulationReport,
};
use serde::Serialize;

use crate::args::{
    BarycenterArgs, ChartList, Cli, Command, CopulaArgs, Experiment, Format, MomentsArgs, SimulateArgs, Source,
    TailsArgs,
};
use crate::error::CliError;
use crate::ingest::{ingest_column, ingest_columns};
use crate::output::{format_f64, to_json, to_key_value_csv, to_table_csv, to_text};

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let format = match (cli.json, cli.format) {
        (true, _) => Format::Json,
        (false, Some(f)) => f,
        (false, None) if matches!(cli.command, Command::Simulate(_)) => Format::Json,
        (false, None) => Format::Text,
    };
    match &cli.command {
        Command::Barycenter(a) => barycenter(a, format),
        Command::Moments(a) => moments(a, format),
        Command::Simulate(a) => simulate(a, cli.seed, format),
        Command::Tails(a) => tails(a, format),
        Command::Copula(a) => copula(a, format),
    }
}

fn emit<T: Serialize>(report: &T, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Text => to_text(report),
        Format::Csv => to_key_value_csv(report),
    }
}

/// The law named by `--input`/`--column` or `--dist`.
enum Data {
    Sample(Sample),
    Dist(Distribution),
}

impl Data {
    fn load(source: &Source, column: usize) -> Result<Self, CliError> {
        match (&source.input, &source.dist) {
            (Some(path), _) => Ok(Data::Sample(ingest_column(path, column)?)),
            (None, Some(d)) => Ok(Data::Dist(*d)),
            (None, None) => Err(CliError::Usage("one of --input or --dist is required".into())),
        }
    }

    fn law(&self) -> Law<'_> {
        match self {
            Data::Sample(s) => Law::sample(s),
            Data::Dist(d) => Law::distribution(d),
        }
    }

    fn chart(&self, spec: &ChartSpec) -> Result<Chart, CliError> {
        match (spec, self) {
            (ChartSpec::Empirical, Data::Dist(_)) => {
                Err(CliError::Usage("--chart empirical needs --input data".into()))
            }
            (_, Data::Sample(s)) => Ok(spec.build(Some(s))?),
            (_, Data::Dist(_)) => Ok(spec.build(None)?),
        }
    }
}

fn barycenter(a: &BarycenterArgs, format: Format) -> Result<String, CliError> {
    let data = Data::load(&a.source, a.column)?;
    let chart = data.chart(&a.chart)?;
    let report = match &data {
        Data::Sample(s) => barycenter_of_sample(s, &chart)?,
        Data::Dist(d) => barycenter_of_distribution(d, &chart, &QuadratureSpec::default())?,
    };
    emit(&report, format)
}

fn moments(a: &MomentsArgs, format: Format) -> Result<String, CliError> {
    let data = Data::load(&a.source, a.column)?;
    let chart = data.chart(&a.chart)?;
    let report = if a.absolute {
        absolute_centred_moment(data.law(), &chart, a.order)?
    } else if a.centred {
        centred_moment(data.law(), &chart, a.order)?
    } else {
        initial_moment(data.law(), &chart, a.order)?
    };
    emit(&report, format)
}

fn tails(a: &TailsArgs, format: Format) -> Result<String, CliError> {
    let data = Data::load(&a.source, a.column)?;
    let chart = data.chart(&a.chart)?;
    let report = boundary_mass(data.law(), &chart, a.epsilon, &a.orders)?;
    emit(&report, format)
}

/// Checkpoints `10, 100, ...` below `n`, then `n`.
pub fn lln_grid(n: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = std::iter::successors(Some(10usize), |k| k.checked_mul(10))
        .take_while(|&k| k < n)
        .collect();
    grid.push(n);
    grid
}

fn clt_rows(r: &SimulationReport) -> Vec<Vec<String>> {
    r.estimates
        .iter()
        .zip(&r.scaled_errors)
        .enumerate()
        .map(|(i, (b, e))| vec![i.to_string(), format_f64(*b), format_f64(*e)])
        .collect()
}

fn lln_rows(r: &LlnReport) -> Vec<Vec<String>> {
    r.n_grid
        .iter()
        .zip(r.estimates.iter().zip(&r.running_means))
        .map(|(n, (b, m))| vec![n.to_string(), format_f64(*b), format_f64(*m)])
        .collect()
}

const CLT_HEADER: [&str; 3] = ["replicate", "estimate", "scaled_error"];
const LLN_HEADER: [&str; 3] = ["n", "estimate", "running_mean"];

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn simulate(a: &SimulateArgs, seed: u64, format: Format) -> Result<String, CliError> {
    let chart = a.chart.build(None)?;
    let n = usize::try_from(a.n).map_err(|_| CliError::Usage("--n is too large".into()))?;
    let (report, table) = match a.experiment {
        Experiment::Clt => {
            let reps = usize::try_from(a.reps).map_err(|_| CliError::Usage("--reps is too large".into()))?;
            let r = run_clt_experiment(&a.dist, &chart, n, reps, seed)?;
            let table = to_table_csv(&CLT_HEADER, clt_rows(&r))?;
            (emit(&r, format)?, table)
        }
        Experiment::Lln => {
            let r = run_lln_experiment(&a.dist, &chart, &lln_grid(n), seed)?;
            let table = to_table_csv(&LLN_HEADER, lln_rows(&r))?;
            (emit(&r, format)?, table)
        }
    };
    if let Some(path) = &a.csv {
        write_file(path, &table)?;
    }
    Ok(if format == Format::Csv { table } else { report })
}

fn copula(a: &CopulaArgs, format: Format) -> Result<String, CliError> {
    if a.columns.len() < 2 {
        return Err(CliError::Usage("--columns needs at least two columns".into()));
    }
    let vs = ingest_columns(&a.input, &a.columns)?;
    let (report, coords): (CubeReport, CoordinateMatrix) = match &a.charts {
        Some(ChartList(specs)) => {
            if specs.len() != a.columns.len() {
                return Err(CliError::Usage(format!(
                    "--charts lists {} charts for {} columns",
                    specs.len(),
                    a.columns.len()
                )));
            }
            let charts = specs
                .iter()
                .enumerate()
                .map(|(j, spec)| Ok(spec.build(Some(&Sample::new(vs.column(j))?))?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let bundle = ChartBundle::new(charts)?;
            (multivariate_barycenter(&vs, &bundle)?, pushforward(&vs, &bundle)?)
        }
        None => {
            // Pseudo-observations as coordinates; each component is pulled
            // back through the empirical chart of its column.
            let coords = pseudo_observations(&vs)?;
            let bundle = ChartBundle::empirical(&vs)?;
            let coordinate_mean = coords.column_means();
            let barycenter = coordinate_mean
                .iter()
                .zip(bundle.charts())
                .map(|(&m, c)| c.inverse(m))
                .collect::<Result<Vec<_>, _>>()?;
            let report = CubeReport {
                n: vs.len(),
                coordinate_mean,
                barycenter,
                epsilon: None,
                corner_masses: Default::default(),
                charts: vec!["pseudo-observations".into(); vs.dim()],
            };
            (report, coords)
        }
    };
    emit(&report.with_corner_masses(&coords, a.epsilon)?, format)
}
