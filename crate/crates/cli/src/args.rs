//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use probgeo_core::{ChartSpec, Distribution};

#[derive(Debug, Parser)]
#[command(
    name = "probgeo",
    version,
    about = "Probability-coordinate barycenters, moments, tails and copulas"
)]
pub struct Cli {
    /// Output format. Defaults to json for `simulate`, text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub json: bool,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Barycenter G^{-1}(mean G(x)) of a data column or a law.
    Barycenter(BarycenterArgs),
    /// Kolmogorov moment of order r.
    Moments(MomentsArgs),
    /// Law-of-large-numbers or central-limit Monte Carlo experiment.
    Simulate(SimulateArgs),
    /// Boundary masses and high-order coordinate moments.
    Tails(TailsArgs),
    /// Componentwise coordinates, barycenter and corner masses of several columns.
    Copula(CopulaArgs),
}

/// Where the law comes from: a CSV column or a named distribution.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// CSV file with one observation per row.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Distribution such as `normal:0,1` or `pareto:1,2.5`.
    #[arg(long, value_name = "SPEC", value_parser = parse_dist)]
    pub dist: Option<Distribution>,
}

#[derive(Debug, Args)]
pub struct BarycenterArgs {
    #[command(flatten)]
    pub source: Source,

    /// Zero-based column of the input file.
    #[arg(long, default_value_t = 0, requires = "input")]
    pub column: usize,

    /// Chart: a distribution spec or `empirical`.
    #[arg(long, value_name = "SPEC", value_parser = parse_chart)]
    pub chart: ChartSpec,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub source: Source,

    #[arg(long, default_value_t = 0, requires = "input")]
    pub column: usize,

    #[arg(long, value_name = "SPEC", value_parser = parse_chart)]
    pub chart: ChartSpec,

    /// Moment order, at least 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: u32,

    /// Centre the coordinate at its mean.
    #[arg(long, conflicts_with = "absolute")]
    pub centred: bool,

    /// Absolute centred moment.
    #[arg(long)]
    pub absolute: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Lln,
    Clt,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,

    #[arg(long, value_name = "SPEC", value_parser = parse_dist)]
    pub dist: Distribution,

    /// Chart: a distribution spec (data-driven charts are not available here).
    #[arg(long, value_name = "SPEC", value_parser = parse_analytic_chart)]
    pub chart: ChartSpec,

    /// Sample size per replicate (clt) or final path length (lln).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    /// Number of replicates (clt only).
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,

    /// Also write per-replicate (clt) or per-checkpoint (lln) rows here.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TailsArgs {
    #[command(flatten)]
    pub source: Source,

    #[arg(long, default_value_t = 0, requires = "input")]
    pub column: usize,

    #[arg(long, value_name = "SPEC", value_parser = parse_chart)]
    pub chart: ChartSpec,

    /// Band width, in (0, 1/2).
    #[arg(long, value_parser = parse_epsilon)]
    pub epsilon: f64,

    /// Orders of the raw coordinate moments to report.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8", value_parser = clap::value_parser!(u32).range(1..))]
    pub orders: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct CopulaArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Zero-based columns, at least two.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub columns: Vec<usize>,

    /// One chart per column, comma separated, e.g. `normal:0,1,empirical`.
    #[arg(long, value_name = "SPECS", value_parser = parse_chart_list, conflicts_with = "intrinsic")]
    pub charts: Option<ChartList>,

    /// Rank-based pseudo-observations (the default when --charts is absent).
    #[arg(long)]
    pub intrinsic: bool,

    /// Corner band width, in (0, 1/2).
    #[arg(long, default_value_t = 0.1, value_parser = parse_epsilon)]
    pub epsilon: f64,
}

/// Charts given as one comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartList(pub Vec<ChartSpec>);

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: probgeo_core::Error| e.to_string())
}

fn parse_chart(s: &str) -> Result<ChartSpec, String> {
    s.parse().map_err(|e: probgeo_core::Error| e.to_string())
}

fn parse_analytic_chart(s: &str) -> Result<ChartSpec, String> {
    match parse_chart(s)? {
        ChartSpec::Empirical => Err("an empirical chart needs input data; give a distribution spec".into()),
        spec => Ok(spec),
    }
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let eps: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if eps > 0.0 && eps < 0.5 {
        Ok(eps)
    } else {
        Err(format!("epsilon must lie in (0, 1/2), got {s}"))
    }
}

/// Split `normal:0,1,empirical,cauchy:0,2` into specs: a token that does
/// not parse as a number starts a new spec, numbers extend the current one.
pub fn parse_chart_list(s: &str) -> Result<ChartList, String> {
    let mut groups: Vec<String> = Vec::new();
    for token in s.split(',').map(str::trim) {
        match groups.last_mut() {
            Some(g) if token.parse::<f64>().is_ok() => {
                g.push(if g.contains(':') { ',' } else { ':' });
                g.push_str(token);
            }
            _ => groups.push(token.to_string()),
        }
    }
    groups
        .iter()
        .map(|g| parse_chart(g))
        .collect::<Result<Vec<_>, _>>()
        .map(ChartList)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::error::ErrorKind;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("probgeo").chain(args.iter().copied()))
    }

    #[test]
    fn barycenter_config() {
        let cli = parse(&["barycenter", "--input", "x.csv", "--chart", "normal:0,1"]).unwrap();
        let Command::Barycenter(b) = cli.command else { panic!() };
        assert_eq!(b.source.input.unwrap(), PathBuf::from("x.csv"));
        assert_eq!(b.chart, ChartSpec::Analytic(Distribution::standard_normal()));
        assert_eq!(cli.seed, 0);
    }

    #[test]
    fn simulate_needs_a_distribution() {
        let err = parse(&["simulate", "clt", "--chart", "normal:0,1", "--n", "10"]).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::MissingRequiredArgument);
        assert!(err.to_string().contains("--dist"));
    }

    #[test]
    fn invalid_chart_parameter_names_the_flag() {
        let err = parse(&["barycenter", "--input", "x.csv", "--chart", "normal:0,-1"]).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::ValueValidation);
        assert!(err.to_string().contains("--chart"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn source_is_exclusive() {
        assert!(parse(&[
            "tails",
            "--input",
            "a",
            "--dist",
            "normal:0,1",
            "--chart",
            "normal:0,1",
            "--epsilon",
            "0.1"
        ])
        .is_err());
        assert!(parse(&["tails", "--chart", "normal:0,1", "--epsilon", "0.1"]).is_err());
        assert!(parse(&[
            "tails",
            "--dist",
            "normal:0,1",
            "--chart",
            "normal:0,1",
            "--epsilon",
            "0.5"
        ])
        .is_err());
    }

    #[test]
    fn chart_lists_split_on_names() {
        let ChartList(v) = parse_chart_list("normal:0,1,empirical,cauchy:0,2").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1], ChartSpec::Empirical);
        assert_eq!(v[2], ChartSpec::Analytic(Distribution::cauchy(0.0, 2.0).unwrap()));
        assert!(parse_chart_list("normal:0").is_err());
    }

    #[test]
    fn simulate_rejects_empirical_chart() {
        assert!(parse(&[
            "simulate",
            "lln",
            "--dist",
            "cauchy:0,1",
            "--chart",
            "empirical",
            "--n",
            "10"
        ])
        .is_err());
    }
}
