//! Estimates one node's closeness rank three ways and compares with the
//! exact rank.
//!
//! ```bash
//! cargo run --release --example estimate_rank -- 20000 4 123
//! ```
//! Arguments: node count, edges per new node, node to rank.

use closerank::ranking::{exact_ranks, heuristic_estimate, randomized_estimate, DEFAULT_SLOPE};
use closerank::synth::{generate_ba, BAConfig};
use closerank::traversal::closeness_all;

fn main() -> closerank::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let n = args.first().copied().unwrap_or(20_000);
    let m_attach = args.get(1).copied().unwrap_or(4);
    let u = args.get(2).copied().unwrap_or(123);
    let graph = generate_ba(&BAConfig::new(n, m_attach, 1))?;

    let heuristic = heuristic_estimate(&graph, u, DEFAULT_SLOPE, 7)?;
    let randomized = randomized_estimate(&graph, u, DEFAULT_SLOPE, 50, 7)?;
    println!("node {u}, closeness {:.5}", heuristic.closeness);
    for est in [&heuristic, &randomized] {
        println!(
            "{:>10}: rank {:>9.1} from {} traversals (c_mid {:.5})",
            est.method,
            est.estimated_rank,
            est.traversals,
            est.params.map_or(f64::NAN, |p| p.c_mid)
        );
    }

    // The exact rank needs a traversal from every node.
    let exact = exact_ranks(&closeness_all(&graph)?)[u];
    println!("{:>10}: rank {exact:>9} from {n} traversals", "exact");
    Ok(())
}
