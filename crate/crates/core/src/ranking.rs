//! Closeness ranks: exact competition ranking, and the logistic rank model
//! with its two fast parameter estimators.
//!
//! Plotted against closeness, the reverse rank `n - rank + 1` of a
//! scale-free network follows a logistic curve
//!
//! ```text
//! R_rev(c) = n + (1 - n) / (1 + (c / c_mid)^p)
//! rank(c)  = 1 + (n - 1) / (1 + (c / c_mid)^p)
//! ```
//!
//! so a node's rank follows from its own closeness once `c_mid` (closeness
//! of the middle-ranked node) and the hill slope `p` are known. The
//! heuristic estimator takes `c_mid` as the midpoint of an estimated maximum
//! and minimum closeness (three traversals in total); the randomized
//! estimator averages the closeness of `k` uniformly sampled nodes.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, Rng};
use crate::traversal::{closeness_of, Bfs};

/// Average hill slope over the reference social networks.
pub const DEFAULT_SLOPE: f64 = 13.38;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticParams {
    pub n: usize,
    pub c_mid: f64,
    pub p: f64,
}

impl LogisticParams {
    pub fn new(n: usize, c_mid: f64, p: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewNodes(n));
        }
        if !(c_mid > 0.0 && c_mid <= 1.0) {
            return Err(Error::Domain(format!(
                "c_mid must lie in (0, 1], got {c_mid}"
            )));
        }
        check_slope(p)?;
        Ok(LogisticParams { n, c_mid, p })
    }

    /// Weight `1 / (1 + (c / c_mid)^p)` of the upper asymptote, evaluated
    /// in log space so large exponents saturate instead of overflowing.
    fn lower_share(&self, c: f64) -> Result<f64> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!(
                "closeness must be positive, got {c}"
            )));
        }
        let z = self.p * (c / self.c_mid).ln();
        Ok(logistic_complement(z))
    }

    /// Reverse rank: 1 for the least central node, `n` for the most central.
    pub fn reverse_rank(&self, c: f64) -> Result<f64> {
        let s = self.lower_share(c)?;
        Ok(self.n as f64 - (self.n - 1) as f64 * s)
    }

    /// Rank: 1 for the most central node.
    pub fn rank(&self, c: f64) -> Result<f64> {
        let s = self.lower_share(c)?;
        Ok(1.0 + (self.n - 1) as f64 * s)
    }
}

/// `1 / (1 + e^z)` without overflow for large `|z|`.
#[inline]
pub(crate) fn logistic_complement(z: f64) -> f64 {
    if z > 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

pub(crate) fn check_slope(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("slope p must be positive, got {p}")))
    }
}

pub fn reverse_rank(params: &LogisticParams, c: f64) -> Result<f64> {
    params.reverse_rank(c)
}

pub fn rank_from_closeness(params: &LogisticParams, c: f64) -> Result<f64> {
    params.rank(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Heuristic,
    Randomized,
    #[serde(rename = "bestfit")]
    BestFit,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
            Method::Randomized => "randomized",
            Method::BestFit => "bestfit",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "heuristic" => Ok(Method::Heuristic),
            "randomized" => Ok(Method::Randomized),
            "bestfit" | "best-fit" => Ok(Method::BestFit),
            other => Err(Error::InvalidConfig(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEstimate {
    pub node: usize,
    pub closeness: f64,
    pub estimated_rank: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<LogisticParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples_used: Option<usize>,
    /// Breadth-first traversals spent on this estimate.
    pub traversals: usize,
}

/// Competition ranking by decreasing closeness: a node's rank is one more
/// than the number of nodes with strictly larger closeness.
pub fn exact_ranks(closeness: &[f64]) -> Vec<usize> {
    let mut sorted = closeness.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    closeness
        .iter()
        .map(|c| 1 + sorted.partition_point(|x| x.total_cmp(c).is_gt()))
        .collect()
}

/// Estimated extremes of the closeness range and their midpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MidpointEstimate {
    pub max_degree_node: usize,
    pub farthest_node: usize,
    pub c_max: f64,
    pub c_min: f64,
    pub c_mid: f64,
}

/// Takes the closeness of the highest-degree node `hub` as the maximum and
/// the closeness of a random node on `hub`'s last BFS level as the minimum.
/// Two traversals.
pub fn heuristic_midpoint(graph: &Graph, hub: usize, rng: &mut Rng) -> Result<MidpointEstimate> {
    let mut bfs = Bfs::new(graph.node_count());
    let top = bfs.probe(graph, hub)?;
    let farthest_node = top.farthest_nodes[rng.gen_range(0..top.farthest_nodes.len())];
    let c_min = bfs.closeness(graph, farthest_node)?;
    Ok(MidpointEstimate {
        max_degree_node: hub,
        farthest_node,
        c_max: top.closeness,
        c_min,
        c_mid: (top.closeness + c_min) / 2.0,
    })
}

/// Draws `k` distinct nodes uniformly and returns them with their mean
/// closeness. The sample is fixed before any traversal runs.
pub fn randomized_midpoint(graph: &Graph, k: usize, rng: &mut Rng) -> Result<(f64, Vec<usize>)> {
    let n = graph.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidSampleSize { k, n });
    }
    let mut sample = index::sample(rng, n, k).into_vec();
    // Node order fixes the summation order, so c_mid depends only on the set.
    sample.sort_unstable();
    let values = closeness_of(graph, &sample)?;
    let mean = values.iter().sum::<f64>() / k as f64;
    Ok((mean, sample))
}

/// Three-traversal rank estimate of `u` with slope `p`.
pub fn heuristic_estimate(graph: &Graph, u: usize, p: f64, seed: u64) -> Result<RankEstimate> {
    check_slope(p)?;
    let mut bfs = Bfs::new(graph.node_count());
    let own = bfs.probe(graph, u)?;
    let mut rng = rng::stream(seed, 0);
    let mid = heuristic_midpoint(graph, own.max_degree_node, &mut rng)?;
    let params = LogisticParams::new(graph.node_count(), mid.c_mid, p)?;
    Ok(RankEstimate {
        node: u,
        closeness: own.closeness,
        estimated_rank: params.rank(own.closeness)?,
        method: Method::Heuristic,
        params: Some(params),
        samples_used: None,
        traversals: 3,
    })
}

/// Rank estimate of `u` using the mean closeness of `k` sampled nodes as
/// `c_mid`. `k + 1` traversals.
pub fn randomized_estimate(
    graph: &Graph,
    u: usize,
    p: f64,
    k: usize,
    seed: u64,
) -> Result<RankEstimate> {
    check_slope(p)?;
    let n = graph.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidSampleSize { k, n });
    }
    let own = Bfs::new(n).closeness(graph, u)?;
    let mut rng = rng::stream(seed, 0);
    let (c_mid, _) = randomized_midpoint(graph, k, &mut rng)?;
    let params = LogisticParams::new(n, c_mid, p)?;
    Ok(RankEstimate {
        node: u,
        closeness: own,
        estimated_rank: params.rank(own)?,
        method: Method::Randomized,
        params: Some(params),
        samples_used: Some(k),
        traversals: k + 1,
    })
}
