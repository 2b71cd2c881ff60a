//! Loads a SNAP-style edge list (plain or gzipped), keeps the largest
//! connected component and prints its closeness extremes.
//!
//! ```bash
//! cargo run --release --example load_edge_list -- loc-brightkite_edges.txt.gz
//! ```

use closerank::traversal::closeness_all;
use closerank::{largest_connected_component, read_edge_list_file};

fn main() -> closerank::Result<()> {
    let Some(path) = std::env::args().nth(1) else {
        eprintln!("usage: load_edge_list <edge-list>");
        std::process::exit(1);
    };
    let raw = read_edge_list_file(&path)?;
    let graph = largest_connected_component(&raw)?;
    let (_, components) = raw.components();
    println!(
        "{path}: {} nodes, {} edges, {components} components; lcc {} nodes, {} edges",
        raw.node_count(),
        raw.edge_count(),
        graph.node_count(),
        graph.edge_count()
    );

    let c = closeness_all(&graph)?;
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by(|&a, &b| c[b].total_cmp(&c[a]));
    for &u in order.iter().take(5) {
        println!(
            "  {:>10}  closeness {:.5}  degree {}",
            graph.label(u),
            c[u],
            graph.neighbors(u).len()
        );
    }
    println!("  lowest closeness {:.5}", c[*order.last().unwrap()]);
    Ok(())
}
