//! Barabási–Albert graphs and the slope-versus-density study.

use std::io::Write;

use rand::Rng as _;
use serde::Serialize;

use crate::curvefit::{fit_graph, FitConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BAConfig {
    pub n: usize,
    pub m_attach: usize,
    pub seed: u64,
}

impl BAConfig {
    pub fn new(n: usize, m_attach: usize, seed: u64) -> Self {
        BAConfig { n, m_attach, seed }
    }

    /// At least one node must join by preferential attachment after the
    /// initial star on `m_attach + 1` nodes.
    pub fn validate(&self) -> Result<()> {
        if self.m_attach == 0 {
            return Err(Error::InvalidConfig("m_attach must be at least 1".into()));
        }
        if self.n < self.m_attach + 2 {
            return Err(Error::InvalidConfig(format!(
                "n = {} leaves no room to attach after the {}-node seed star",
                self.n,
                self.m_attach + 1
            )));
        }
        Ok(())
    }

    /// Edge count of the generated graph: `m_attach·(n - m_attach)`.
    pub fn edge_count(&self) -> usize {
        self.m_attach * (self.n - self.m_attach)
    }
}

/// Grows a graph by preferential attachment from a star on `m_attach + 1`
/// nodes. Each new node links to `m_attach` distinct existing nodes, drawn
/// proportionally to degree from the list of all edge endpoints.
pub fn generate_ba(config: &BAConfig) -> Result<Graph> {
    config.validate()?;
    let BAConfig { n, m_attach, .. } = *config;
    let mut rng = rng::stream(config.seed, 0);

    let mut edges = Vec::with_capacity(config.edge_count());
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * config.edge_count());
    for leaf in 1..=m_attach {
        edges.push((0, leaf));
        endpoints.extend([0, leaf]);
    }

    let mut targets = Vec::with_capacity(m_attach);
    for v in m_attach + 1..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::from_edges(n, edges)
}

/// `2m / (n(n-1))`.
pub fn density(n: usize, m: usize) -> f64 {
    2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub m_attach: usize,
    pub density: f64,
    pub p: f64,
    pub converged: bool,
}

/// Fits the slope of one BA graph per `m_attach`, sorted by density.
/// Graphs whose profile cannot be fitted are skipped with a warning.
pub fn slope_density_study(
    n: usize,
    m_attach_values: &[usize],
    seed: u64,
    fit: &FitConfig,
) -> Result<Vec<StudyRow>> {
    let mut rows = Vec::with_capacity(m_attach_values.len());
    for (i, &m_attach) in m_attach_values.iter().enumerate() {
        let config = BAConfig::new(n, m_attach, seed.wrapping_add(i as u64));
        config.validate()?;
        let graph = generate_ba(&config)?;
        log::info!(
            "study: n={n} m_attach={m_attach} edges={}",
            graph.edge_count()
        );
        match fit_graph(&graph, fit) {
            Ok(result) => rows.push(StudyRow {
                m_attach,
                density: density(n, graph.edge_count()),
                p: result.params.p,
                converged: result.converged,
            }),
            Err(err @ (Error::DegenerateProfile(_) | Error::Singular { .. })) => {
                log::warn!("study: skipping m_attach={m_attach}: {err}");
            }
            Err(err) => return Err(err),
        }
    }
    rows.sort_by(|a, b| a.density.total_cmp(&b.density));
    Ok(rows)
}

pub fn write_study_csv<W: Write>(rows: &[StudyRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    if rows.is_empty() {
        writer.write_record(["m_attach", "density", "p", "converged"])?;
    }
    writer.flush()?;
    Ok(())
}
