//! Least-squares fit of the logistic reverse-rank curve.
//!
//! Solved with a scaled Levenberg–Marquardt iteration: each step solves
//! `(JᵀJ + λ·D²) δ = -Jᵀr`, where `D` holds the running maximum of the
//! Jacobian column norms. Internally the midpoint is parameterized as
//! `ln c_mid` and closeness as `ln c`, which turns the hill term into a plain
//! logistic in `p·(ln c - ln c_mid)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ranking::{
    check_slope, exact_ranks, logistic_complement, LogisticParams, DEFAULT_SLOPE,
};
use crate::traversal::closeness_all;

const INITIAL_DAMPING: f64 = 1e-3;
const MAX_DAMPING: f64 = 1e20;
const STEP_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitConfig {
    pub max_iterations: usize,
    /// Stop once an accepted step, and the model's predicted step, reduce
    /// the sum of squared residuals by less than this fraction.
    pub tolerance: f64,
    /// Defaults to the median closeness of the input.
    pub initial_c_mid: Option<f64>,
    pub initial_p: f64,
    /// Also fit the two asymptotes instead of pinning them to 1 and `n`.
    pub free_asymptotes: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            max_iterations: 1000,
            tolerance: 1e-4,
            initial_c_mid: None,
            initial_p: DEFAULT_SLOPE,
            free_asymptotes: false,
        }
    }
}

impl FitConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        if let Some(c) = self.initial_c_mid {
            if !(c > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "initial c_mid must be positive, got {c}"
                )));
            }
        }
        check_slope(self.initial_p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub params: LogisticParams,
    /// Fitted lower and upper asymptotes; `1` and `n` unless freed.
    pub lower: f64,
    pub upper: f64,
    /// Square root of the final sum of squared residuals.
    pub residual_norm: f64,
    pub iterations_used: usize,
    pub converged: bool,
    /// Sum of squared residuals at the start and after each accepted step.
    #[serde(skip)]
    pub cost_history: Vec<f64>,
}

/// Partial derivatives of the reverse rank with respect to `c_mid` and `p`.
pub fn reverse_rank_jacobian(params: &LogisticParams, c: f64) -> Result<[f64; 2]> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!(
            "closeness must be positive, got {c}"
        )));
    }
    let log_ratio = (c / params.c_mid).ln();
    let s = logistic_complement(params.p * log_ratio);
    let slope = (params.n - 1) as f64 * s * (1.0 - s);
    Ok([-params.p * slope / params.c_mid, log_ratio * slope])
}

/// Curve in the solver's coordinates: `theta = [ln c_mid, p, lower, upper]`,
/// the last two present only when the asymptotes are free.
struct Model<'a> {
    log_c: &'a [f64],
    target: &'a [f64],
    fixed: (f64, f64),
    free_asymptotes: bool,
}

impl Model<'_> {
    fn dim(&self) -> usize {
        if self.free_asymptotes {
            4
        } else {
            2
        }
    }

    fn asymptotes(&self, theta: &DVector<f64>) -> (f64, f64) {
        if self.free_asymptotes {
            (theta[2], theta[3])
        } else {
            self.fixed
        }
    }

    fn residuals(&self, theta: &DVector<f64>) -> DVector<f64> {
        let (lo, hi) = self.asymptotes(theta);
        DVector::from_iterator(
            self.log_c.len(),
            self.log_c.iter().zip(self.target).map(|(&x, &r)| {
                let s = logistic_complement(theta[1] * (x - theta[0]));
                hi - (hi - lo) * s - r
            }),
        )
    }

    fn jacobian(&self, theta: &DVector<f64>) -> DMatrix<f64> {
        let (lo, hi) = self.asymptotes(theta);
        let (a, p) = (theta[0], theta[1]);
        let mut jac = DMatrix::zeros(self.log_c.len(), self.dim());
        for (i, &x) in self.log_c.iter().enumerate() {
            let s = logistic_complement(p * (x - a));
            let slope = (hi - lo) * s * (1.0 - s);
            jac[(i, 0)] = -p * slope;
            jac[(i, 1)] = (x - a) * slope;
            if self.free_asymptotes {
                jac[(i, 2)] = s;
                jac[(i, 3)] = 1.0 - s;
            }
        }
        jac
    }
}

/// Fits the reverse-rank curve to `(closeness, reverse_rank)` points of a
/// network with `n` nodes.
pub fn fit_logistic(points: &[(f64, f64)], n: usize, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    if points.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    let upper = n as f64;
    for &(c, r) in points {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!(
                "closeness must be positive, got {c}"
            )));
        }
        if !(1.0..=upper).contains(&r) {
            return Err(Error::Domain(format!("reverse rank {r} outside [1, {n}]")));
        }
    }

    // sorting makes the result independent of input order
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if sorted[0].0 == sorted[sorted.len() - 1].0 {
        return Err(Error::DegenerateProfile(
            "all closeness values are equal".into(),
        ));
    }
    let log_c: Vec<f64> = sorted.iter().map(|p| p.0.ln()).collect();
    let target: Vec<f64> = sorted.iter().map(|p| p.1).collect();

    let c0 = config.initial_c_mid.unwrap_or_else(|| median(&sorted));
    let model = Model {
        log_c: &log_c,
        target: &target,
        fixed: (1.0, upper),
        free_asymptotes: config.free_asymptotes,
    };
    let mut theta = if config.free_asymptotes {
        DVector::from_vec(vec![c0.ln(), config.initial_p, 1.0, upper])
    } else {
        DVector::from_vec(vec![c0.ln(), config.initial_p])
    };

    let outcome = levenberg_marquardt(&model, &mut theta, config)?;
    let (lower, upper) = model.asymptotes(&theta);
    Ok(FitResult {
        params: LogisticParams::new(n, theta[0].exp(), theta[1])?,
        lower,
        upper,
        residual_norm: outcome.cost.sqrt(),
        iterations_used: outcome.iterations,
        converged: outcome.converged,
        cost_history: outcome.history,
    })
}

struct Outcome {
    cost: f64,
    history: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn levenberg_marquardt(
    model: &Model<'_>,
    theta: &mut DVector<f64>,
    config: &FitConfig,
) -> Result<Outcome> {
    let dim = model.dim();
    let mut residual = model.residuals(theta);
    let mut cost = residual.norm_squared();
    let mut history = vec![cost];
    let total: f64 = model.target.iter().map(|r| r * r).sum();
    // noise-free data reaches this floor rather than a small relative reduction
    let cost_floor = total * 1e-28;
    let mut scale = DVector::<f64>::zeros(dim);
    let mut damping = INITIAL_DAMPING;

    for iteration in 1..=config.max_iterations {
        if cost <= cost_floor {
            return Ok(Outcome {
                cost,
                history,
                iterations: iteration - 1,
                converged: true,
            });
        }
        let jac = model.jacobian(theta);
        for j in 0..dim {
            scale[j] = scale[j].max(jac.column(j).norm());
        }
        let normal = jac.transpose() * &jac;
        let gradient = jac.transpose() * &residual;

        // retry the same linearization with growing damping until a step lowers the cost
        let mut solved_any = false;
        let mut retries = 0;
        let accepted = loop {
            let mut lhs = normal.clone();
            for j in 0..dim {
                lhs[(j, j)] += damping * scale[j] * scale[j].max(f64::MIN_POSITIVE);
            }
            match lhs.cholesky().map(|ch| ch.solve(&-&gradient)) {
                Some(step) if step.iter().all(|v| v.is_finite()) => {
                    solved_any = true;
                    let tiny = step.norm() <= STEP_TOLERANCE * (theta.norm() + STEP_TOLERANCE);
                    let candidate = &*theta + &step;
                    if candidate[1] > 0.0 {
                        let trial = model.residuals(&candidate);
                        let trial_cost = trial.norm_squared();
                        if trial_cost < cost {
                            let predicted =
                                -(2.0 * gradient.dot(&step) + (&jac * &step).norm_squared());
                            break Some((candidate, trial, trial_cost, predicted, tiny));
                        }
                    }
                    if tiny {
                        break None;
                    }
                }
                _ => retries += 1,
            }
            damping *= 10.0;
            if damping > MAX_DAMPING {
                break None;
            }
        };
        if iteration == 1 && !solved_any {
            return Err(Error::Singular { retries });
        }

        let Some((candidate, trial, trial_cost, predicted, small_step)) = accepted else {
            // no direction lowers the cost: a stationary point
            return Ok(Outcome {
                cost,
                history,
                iterations: iteration,
                converged: true,
            });
        };
        let actual = (cost - trial_cost) / cost;
        let predicted = predicted / cost;
        *theta = candidate;
        residual = trial;
        cost = trial_cost;
        history.push(cost);
        damping = (damping / 10.0).max(1e-12);

        if (actual <= config.tolerance && predicted <= config.tolerance)
            || small_step
            || cost <= cost_floor
        {
            return Ok(Outcome {
                cost,
                history,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(Outcome {
        cost,
        history,
        iterations: config.max_iterations,
        converged: false,
    })
}

fn median(sorted_points: &[(f64, f64)]) -> f64 {
    let len = sorted_points.len();
    if len % 2 == 1 {
        sorted_points[len / 2].0
    } else {
        (sorted_points[len / 2 - 1].0 + sorted_points[len / 2].0) / 2.0
    }
}

/// `(closeness, reverse rank)` for every node, reverse ranks taken from
/// the exact competition ranking.
pub fn reverse_rank_profile(closeness: &[f64]) -> Vec<(f64, f64)> {
    let n = closeness.len();
    exact_ranks(closeness)
        .into_iter()
        .zip(closeness)
        .map(|(rank, &c)| (c, (n - rank + 1) as f64))
        .collect()
}

/// Fits the curve to a full closeness profile.
pub fn fit_profile(closeness: &[f64], config: &FitConfig) -> Result<FitResult> {
    fit_logistic(&reverse_rank_profile(closeness), closeness.len(), config)
}

pub fn fit_graph(graph: &Graph, config: &FitConfig) -> Result<FitResult> {
    fit_profile(&closeness_all(graph)?, config)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeRow {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub c_mid: f64,
    pub p: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeTable {
    pub rows: Vec<SlopeRow>,
    pub mean_p: f64,
}

/// Fitted slope of each named graph and their average.
pub fn slope_table(graphs: &[(String, Graph)], config: &FitConfig) -> Result<SlopeTable> {
    let mut rows = Vec::with_capacity(graphs.len());
    for (name, graph) in graphs {
        let fit = fit_graph(graph, config)?;
        rows.push(SlopeRow {
            name: name.clone(),
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            c_mid: fit.params.c_mid,
            p: fit.params.p,
            converged: fit.converged,
        });
    }
    let mean_p = if rows.is_empty() {
        f64::NAN
    } else {
        rows.iter().map(|r| r.p).sum::<f64>() / rows.len() as f64
    };
    Ok(SlopeTable { rows, mean_p })
}
