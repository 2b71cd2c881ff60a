//! Compares the three rank estimators on Barabási–Albert graphs.
//!
//! ```bash
//! cargo run --release --example method_comparison -- 5000 5 3
//! ```
//! Arguments: node count, edges per new node, number of graphs.

use std::time::Instant;

use closerank::eval::{render_table, run_experiment_with, ExperimentConfig, GroundTruth};
use closerank::synth::{generate_ba, BAConfig};
use closerank::Method;

fn main() -> closerank::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let n = args.first().copied().unwrap_or(5000);
    let m_attach = args.get(1).copied().unwrap_or(5);
    let graphs = args.get(2).copied().unwrap_or(3);

    let mut reports = Vec::new();
    for seed in 0..graphs as u64 {
        let graph = generate_ba(&BAConfig::new(n, m_attach, seed))?;
        let started = Instant::now();
        let truth = GroundTruth::compute(&graph)?;
        eprintln!("seed {seed}: exact closeness in {:.2?}", started.elapsed());
        for method in [Method::BestFit, Method::Heuristic, Method::Randomized] {
            let config = ExperimentConfig {
                name: format!("ba-{n}-{m_attach}-s{seed}"),
                method,
                seed,
                ..ExperimentConfig::default()
            };
            reports.push(run_experiment_with(&graph, &truth, &config)?);
        }
    }
    print!("{}", render_table(&reports));
    Ok(())
}
