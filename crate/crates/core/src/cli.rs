//! Command-line front end: `rank`, `eval`, `fit`, `gen-ba` and `study`.
//!
//! Data goes to stdout or the named output file; progress goes through
//! `log` to stderr. Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curvefit::{fit_graph, fit_profile, FitConfig};
use crate::error::{Error, Result};
use crate::eval::{self, ExperimentConfig, GroundTruth};
use crate::graph::{largest_connected_component, read_edge_list_file, Graph};
use crate::ranking::{self, exact_ranks, Method, RankEstimate, DEFAULT_SLOPE};
use crate::synth::{self, BAConfig};
use crate::traversal::closeness_all;

pub const THREADS_ENV: &str = "CLOSERANK_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "closerank",
    version,
    about = "Closeness-centrality rank estimation"
)]
pub struct Cli {
    /// Worker threads for closeness sweeps [default: $CLOSERANK_THREADS or all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the closeness rank of one node
    Rank(RankArgs),
    /// Compare estimators against exact ranks
    Eval(EvalArgs),
    /// Fit the logistic rank curve of one or more graphs
    Fit(FitArgs),
    /// Generate a Barabási–Albert graph as an edge list
    GenBa(GenBaArgs),
    /// Fitted slope versus density over BA graphs
    Study(StudyArgs),
}

#[derive(Debug, Args)]
pub struct Estimation {
    /// Hill slope of the rank curve
    #[arg(long, default_value_t = DEFAULT_SLOPE)]
    pub p: f64,
    /// Sample size of the randomized estimator
    #[arg(long, default_value_t = 50)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    pub input: PathBuf,
    /// Node label as written in the input file
    #[arg(long)]
    pub node: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Randomized)]
    pub method: MethodArg,
    #[command(flatten)]
    pub estimation: Estimation,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub input: PathBuf,
    /// Comma-separated methods
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Bestfit, MethodArg::Heuristic, MethodArg::Randomized])]
    pub methods: Vec<MethodArg>,
    #[command(flatten)]
    pub estimation: Estimation,
    #[arg(long, default_value_t = 40)]
    pub repetitions: usize,
    /// Evaluate a uniform sample of this many nodes instead of all
    #[arg(long)]
    pub subset: Option<usize>,
    /// Graph name in the report [default: input file stem]
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write per-node errors, one `<method>.nodes.csv` per method, into this directory
    #[arg(long, value_name = "DIR")]
    pub per_node: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub tolerance: f64,
    /// Fit the curve's asymptotes too instead of pinning them to 1 and n
    #[arg(long)]
    pub free_asymptotes: bool,
}

#[derive(Debug, Args)]
pub struct GenBaArgs {
    #[arg(long)]
    pub n: usize,
    /// Edges added per new node
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path, `-` for stdout
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    #[arg(long, default_value_t = 4000)]
    pub n: usize,
    /// Attachment counts: `a..b` (inclusive) or a comma list
    #[arg(long, default_value = "1..10", value_parser = parse_range)]
    pub m: AttachCounts,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Heuristic,
    Randomized,
    Bestfit,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Heuristic => Method::Heuristic,
            MethodArg::Randomized => Method::Randomized,
            MethodArg::Bestfit => Method::BestFit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

/// Parsed `--m` list; a newtype so clap takes the whole range as one value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachCounts(pub Vec<usize>);

fn parse_range(s: &str) -> std::result::Result<AttachCounts, String> {
    let number = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (number(a)?, number(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok(AttachCounts((a..=b).collect()))
    } else {
        s.split(',')
            .map(number)
            .collect::<std::result::Result<_, _>>()
            .map(AttachCounts)
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
        }
    };
    let threads = match cli.threads.map(Ok).or_else(threads_from_env).transpose() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let mut buffer = Vec::new();
    let outcome = pool.install(|| dispatch(&cli.command, &mut buffer));
    if let Err(err) = stdout.write_all(&buffer).and_then(|()| stdout.flush()) {
        eprintln!("error: {err}");
        return EXIT_DATA;
    }
    match outcome {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidConfig(_) | Error::InvalidSampleSize { .. } => EXIT_USAGE,
                _ => EXIT_DATA,
            }
        }
    }
}

fn threads_from_env() -> Option<std::result::Result<usize, String>> {
    let raw = std::env::var(THREADS_ENV).ok()?;
    Some(
        raw.trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV}={raw:?} is not a thread count")),
    )
}

fn dispatch(command: &Command, stdout: &mut Vec<u8>) -> Result<()> {
    match command {
        Command::Rank(args) => cmd_rank(args, stdout),
        Command::Eval(args) => cmd_eval(args, stdout),
        Command::Fit(args) => cmd_fit(args, stdout),
        Command::GenBa(args) => cmd_gen_ba(args, stdout),
        Command::Study(args) => cmd_study(args, stdout),
    }
}

/// Reads an edge list and reduces it to its largest connected component.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let raw = read_edge_list_file(path)?;
    let lcc = largest_connected_component(&raw)?;
    log::info!(
        "{}: raw {} nodes / {} edges, lcc {} nodes / {} edges",
        path.display(),
        raw.node_count(),
        raw.edge_count(),
        lcc.node_count(),
        lcc.edge_count()
    );
    Ok(lcc)
}

pub fn cmd_rank(args: &RankArgs, stdout: &mut dyn Write) -> Result<()> {
    let graph = load_graph(&args.input)?;
    let u = graph.node_by_label(&args.node).map_err(|_| {
        Error::UnknownLabel(format!(
            "{} (not in the largest connected component)",
            args.node
        ))
    })?;
    let Estimation { p, k, seed } = args.estimation;
    let estimate = match Method::from(args.method) {
        Method::Heuristic => ranking::heuristic_estimate(&graph, u, p, seed)?,
        Method::Randomized => ranking::randomized_estimate(&graph, u, p, k, seed)?,
        Method::Exact => {
            let closeness = closeness_all(&graph)?;
            let rank = exact_ranks(&closeness)[u];
            RankEstimate {
                node: u,
                closeness: closeness[u],
                estimated_rank: rank as f64,
                method: Method::Exact,
                params: None,
                samples_used: None,
                traversals: graph.node_count(),
            }
        }
        Method::BestFit => {
            let closeness = closeness_all(&graph)?;
            let fit = fit_profile(&closeness, &FitConfig::default())?;
            RankEstimate {
                node: u,
                closeness: closeness[u],
                estimated_rank: fit.params.rank(closeness[u])?,
                method: Method::BestFit,
                params: Some(fit.params),
                samples_used: None,
                traversals: graph.node_count(),
            }
        }
    };
    // `node` is the input label; the internal id moves to `node_index`.
    let mut record = serde_json::to_value(&estimate)?;
    record["node_index"] = estimate.node.into();
    record["node"] = args.node.as_str().into();
    serde_json::to_writer(&mut *stdout, &record)?;
    writeln!(stdout)?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    let graph = load_graph(&args.input)?;
    let name = args.name.clone().unwrap_or_else(|| file_stem(&args.input));
    log::info!(
        "{name}: computing exact closeness of {} nodes",
        graph.node_count()
    );
    let truth = GroundTruth::compute(&graph)?;

    let mut reports = Vec::with_capacity(args.methods.len());
    for &method in &args.methods {
        let config = ExperimentConfig {
            name: name.clone(),
            method: method.into(),
            p: args.estimation.p,
            k: args.estimation.k,
            repetitions: args.repetitions,
            seed: args.estimation.seed,
            subset: args.subset,
            per_node: args.per_node.is_some(),
            fit: FitConfig::default(),
        };
        log::info!("{name}: evaluating {}", config.method);
        reports.push(eval::run_experiment_with(&graph, &truth, &config)?);
    }

    if let Some(dir) = &args.per_node {
        std::fs::create_dir_all(dir)?;
        for report in &reports {
            let path = dir.join(format!("{}.nodes.csv", report.row.method));
            let rows = report.per_node.as_deref().unwrap_or_default();
            with_output(Some(&path), stdout, |w| eval::write_per_node_csv(rows, w))?;
        }
    }

    with_output(args.out.as_deref(), stdout, |w| match args.format {
        Format::Csv => eval::write_reports_csv(&reports, w),
        Format::Json => eval::write_reports_json(&reports, w),
        Format::Table => Ok(w.write_all(eval::render_table(&reports).as_bytes())?),
    })
}

#[derive(Serialize)]
struct FitRecord<'a> {
    graph: String,
    nodes: usize,
    edges: usize,
    c_mid: f64,
    p: f64,
    lower: f64,
    upper: f64,
    residual_norm: f64,
    iterations: usize,
    converged: bool,
    #[serde(skip)]
    _input: &'a Path,
}

pub fn cmd_fit(args: &FitArgs, stdout: &mut dyn Write) -> Result<()> {
    let config = FitConfig {
        max_iterations: args.max_iterations,
        tolerance: args.tolerance,
        free_asymptotes: args.free_asymptotes,
        ..FitConfig::default()
    };
    let mut slopes = Vec::with_capacity(args.inputs.len());
    for input in &args.inputs {
        let graph = load_graph(input)?;
        let fit = fit_graph(&graph, &config)?;
        slopes.push(fit.params.p);
        let record = FitRecord {
            graph: file_stem(input),
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            c_mid: fit.params.c_mid,
            p: fit.params.p,
            lower: fit.lower,
            upper: fit.upper,
            residual_norm: fit.residual_norm,
            iterations: fit.iterations_used,
            converged: fit.converged,
            _input: input,
        };
        serde_json::to_writer(&mut *stdout, &record)?;
        writeln!(stdout)?;
    }
    if slopes.len() > 1 {
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        writeln!(
            stdout,
            "{}",
            serde_json::json!({ "mean_p": mean, "graphs": slopes.len() })
        )?;
    }
    Ok(())
}

pub fn cmd_gen_ba(args: &GenBaArgs, stdout: &mut dyn Write) -> Result<()> {
    let graph = synth::generate_ba(&BAConfig::new(args.n, args.m, args.seed))?;
    let out = (args.out.as_os_str() != "-").then_some(args.out.as_path());
    with_output(out, stdout, |w| graph.write_edge_list(w))
}

pub fn cmd_study(args: &StudyArgs, stdout: &mut dyn Write) -> Result<()> {
    for &m in &args.m.0 {
        BAConfig::new(args.n, m, args.seed).validate()?;
    }
    let rows = synth::slope_density_study(args.n, &args.m.0, args.seed, &FitConfig::default())?;
    with_output(args.out.as_deref(), stdout, |w| {
        synth::write_study_csv(&rows, w)
    })
}

fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => {
            write(stdout)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!(parse_range("2,5,3").unwrap().0, vec![2, 5, 3]);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let mut out = Vec::new();
        assert_eq!(run(["closerank", "frobnicate"], &mut out), EXIT_USAGE);
        assert_eq!(
            run(
                ["closerank", "eval", "--methods", "magic", "g.txt"],
                &mut out
            ),
            EXIT_USAGE
        );
        assert_eq!(
            run(
                ["closerank", "gen-ba", "--n", "5", "--m", "4", "-"],
                &mut out
            ),
            EXIT_USAGE
        );
    }

    #[test]
    fn missing_input_is_a_data_error() {
        let mut out = Vec::new();
        let code = run(["closerank", "fit", "/nonexistent/graph.txt"], &mut out);
        assert_eq!(code, EXIT_DATA);
    }
}
