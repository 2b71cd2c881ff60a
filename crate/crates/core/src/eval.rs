//! Rank error metrics and the method-comparison harness.
//!
//! Ground truth comes from the full O(n·m) closeness sweep. Each method then
//! estimates a rank for every evaluated node from that node's exact
//! closeness, since the first traversal of either estimator computes
//! exactly that value. Only the curve parameters differ between methods.

use std::fmt::Write as _;
use std::io::Write;

use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvefit::{fit_profile, FitConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ranking::{
    exact_ranks, heuristic_midpoint, randomized_midpoint, LogisticParams, Method,
};
use crate::rng;
use crate::traversal::closeness_all;

/// Stream used for drawing the evaluated-node subset, kept apart from the
/// per-repetition streams `0..repetitions`.
const SUBSET_STREAM: u64 = u64::MAX;

pub fn abs_error(r_est: f64, r_act: f64) -> f64 {
    (r_est - r_act).abs()
}

/// Share of the network ranked at or below `r_act`, in percent.
pub fn percentile(r_act: f64, n: usize) -> f64 {
    (n as f64 - r_act + 1.0) / n as f64 * 100.0
}

/// Absolute error scaled down by network size and up by the node's percentile.
pub fn weighted_error(err_abs: f64, r_act: f64, n: usize) -> f64 {
    err_abs / n as f64 * percentile(r_act, n)
}

/// Mean absolute error as a percentage of the network size `n`.
pub fn paae(abs_errors: &[f64], n: usize) -> Result<f64> {
    if abs_errors.is_empty() {
        return Err(Error::InvalidConfig("no errors to average".into()));
    }
    let mean = abs_errors.iter().sum::<f64>() / abs_errors.len() as f64;
    Ok(mean / n as f64 * 100.0)
}

/// Exact closeness and competition ranks of every node.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub closeness: Vec<f64>,
    pub ranks: Vec<usize>,
}

impl GroundTruth {
    pub fn compute(graph: &Graph) -> Result<Self> {
        let closeness = closeness_all(graph)?;
        let ranks = exact_ranks(&closeness);
        Ok(GroundTruth { closeness, ranks })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub method: Method,
    pub p: f64,
    pub k: usize,
    pub repetitions: usize,
    pub seed: u64,
    /// Evaluate a uniform subset of this many nodes instead of all of them.
    pub subset: Option<usize>,
    pub per_node: bool,
    pub fit: FitConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            name: "graph".into(),
            method: Method::Randomized,
            p: crate::ranking::DEFAULT_SLOPE,
            k: 50,
            repetitions: 40,
            seed: 0,
            subset: None,
            per_node: false,
            fit: FitConfig::default(),
        }
    }
}

/// One report row; also the CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub graph: String,
    pub method: Method,
    pub p: f64,
    pub k: Option<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub paae: f64,
    pub wtd: f64,
    pub nodes_evaluated: usize,
}

/// Per-node errors averaged over repetitions; `rank_est` is the mean estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeError {
    pub node: String,
    pub c: f64,
    pub rank_act: usize,
    pub rank_est: f64,
    pub err_abs: f64,
    pub err_wtd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    #[serde(flatten)]
    pub row: ReportRow,
    /// paae of each repetition, in repetition order.
    #[serde(skip)]
    pub repetition_paae: Vec<f64>,
    /// Curve parameters of each repetition.
    #[serde(skip)]
    pub repetition_params: Vec<LogisticParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_node: Option<Vec<NodeError>>,
}

impl ErrorReport {
    pub fn paae(&self) -> f64 {
        self.row.paae
    }

    pub fn wtd(&self) -> f64 {
        self.row.wtd
    }

    /// Population standard deviation of the per-repetition paae.
    pub fn paae_spread(&self) -> f64 {
        let reps = &self.repetition_paae;
        let mean = reps.iter().sum::<f64>() / reps.len() as f64;
        (reps.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / reps.len() as f64).sqrt()
    }
}

pub fn run_experiment(graph: &Graph, config: &ExperimentConfig) -> Result<ErrorReport> {
    let truth = GroundTruth::compute(graph)?;
    run_experiment_with(graph, &truth, config)
}

/// Like [`run_experiment`], reusing an already computed ground truth.
pub fn run_experiment_with(
    graph: &Graph,
    truth: &GroundTruth,
    config: &ExperimentConfig,
) -> Result<ErrorReport> {
    let n = graph.node_count();
    if truth.closeness.len() != n {
        return Err(Error::InvalidConfig(
            "ground truth does not match graph".into(),
        ));
    }
    if config.repetitions == 0 {
        return Err(Error::InvalidConfig(
            "repetitions must be at least 1".into(),
        ));
    }
    crate::ranking::check_slope(config.p)?;
    if config.method == Method::Randomized && (config.k == 0 || config.k > n) {
        return Err(Error::InvalidSampleSize { k: config.k, n });
    }

    let nodes: Vec<usize> = match config.subset {
        Some(size) if size < n => {
            if size == 0 {
                return Err(Error::InvalidConfig(
                    "subset must hold at least one node".into(),
                ));
            }
            let mut picked =
                index::sample(&mut rng::stream(config.seed, SUBSET_STREAM), n, size).into_vec();
            picked.sort_unstable();
            picked
        }
        _ => (0..n).collect(),
    };

    let repetitions = match config.method {
        Method::Exact | Method::BestFit => 1,
        Method::Heuristic | Method::Randomized => config.repetitions,
    };
    let fitted = match config.method {
        Method::BestFit => Some(fit_profile(&truth.closeness, &config.fit)?.params),
        _ => None,
    };
    let hub = graph.max_degree_node().ok_or(Error::EmptyGraph)?;

    let estimates: Vec<(Option<LogisticParams>, Vec<f64>)> = (0..repetitions as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rng::stream(config.seed, rep);
            let params = match config.method {
                Method::Exact => None,
                Method::BestFit => fitted,
                Method::Heuristic => {
                    let mid = heuristic_midpoint(graph, hub, &mut rng)?;
                    Some(LogisticParams::new(n, mid.c_mid, config.p)?)
                }
                Method::Randomized => {
                    let (c_mid, _) = randomized_midpoint(graph, config.k, &mut rng)?;
                    Some(LogisticParams::new(n, c_mid, config.p)?)
                }
            };
            let ranks = nodes
                .iter()
                .map(|&u| match &params {
                    Some(params) => params.rank(truth.closeness[u]),
                    None => Ok(truth.ranks[u] as f64),
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok((params, ranks))
        })
        .collect::<Result<_>>()?;

    let evaluated = nodes.len();
    let mut repetition_paae = Vec::with_capacity(repetitions);
    let mut mean_est = vec![0.0; evaluated];
    let mut mean_abs = vec![0.0; evaluated];
    for (_, ranks) in &estimates {
        let errors: Vec<f64> = nodes
            .iter()
            .zip(ranks)
            .map(|(&u, &est)| abs_error(est, truth.ranks[u] as f64))
            .collect();
        repetition_paae.push(paae(&errors, n)?);
        for i in 0..evaluated {
            mean_est[i] += ranks[i] / repetitions as f64;
            mean_abs[i] += errors[i] / repetitions as f64;
        }
    }

    let weighted: Vec<f64> = nodes
        .iter()
        .zip(&mean_abs)
        .map(|(&u, &err)| weighted_error(err, truth.ranks[u] as f64, n))
        .collect();
    let wtd = weighted.iter().sum::<f64>() / evaluated as f64;

    let per_node = config.per_node.then(|| {
        nodes
            .iter()
            .enumerate()
            .map(|(i, &u)| NodeError {
                node: graph.label(u),
                c: truth.closeness[u],
                rank_act: truth.ranks[u],
                rank_est: mean_est[i],
                err_abs: mean_abs[i],
                err_wtd: weighted[i],
            })
            .collect()
    });

    Ok(ErrorReport {
        row: ReportRow {
            graph: config.name.clone(),
            method: config.method,
            p: fitted.map_or(config.p, |f| f.p),
            k: (config.method == Method::Randomized).then_some(config.k),
            repetitions,
            seed: config.seed,
            paae: paae(&mean_abs, n)?,
            wtd,
            nodes_evaluated: evaluated,
        },
        repetition_paae,
        repetition_params: estimates.into_iter().filter_map(|(p, _)| p).collect(),
        per_node,
    })
}

pub fn write_reports_csv<W: Write>(reports: &[ErrorReport], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for report in reports {
        writer.serialize(&report.row)?;
    }
    if reports.is_empty() {
        writer.write_record([
            "graph",
            "method",
            "p",
            "k",
            "repetitions",
            "seed",
            "paae",
            "wtd",
            "nodes_evaluated",
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_per_node_csv<W: Write>(rows: &[NodeError], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    if rows.is_empty() {
        writer.write_record(["node", "c", "rank_act", "rank_est", "err_abs", "err_wtd"])?;
    }
    writer.flush()?;
    Ok(())
}

/// JSON mirror of the CSV outputs: the report rows, with per-node rows
/// embedded when they were collected.
pub fn write_reports_json<W: Write>(reports: &[ErrorReport], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, reports)?;
    writeln!(out)?;
    Ok(())
}

/// Fixed-width table of the report rows.
pub fn render_table(reports: &[ErrorReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:<11} {:>7} {:>5} {:>5} {:>9} {:>9} {:>8}",
        "graph", "method", "p", "k", "reps", "paae%", "wtd", "nodes"
    );
    for r in reports.iter().map(|r| &r.row) {
        let k = r.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        let _ = writeln!(
            s,
            "{:<16} {:<11} {:>7.2} {:>5} {:>5} {:>9.3} {:>9.3} {:>8}",
            r.graph, r.method, r.p, k, r.repetitions, r.paae, r.wtd, r.nodes_evaluated
        );
    }
    s
}
