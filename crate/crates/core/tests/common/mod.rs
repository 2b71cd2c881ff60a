#![allow(dead_code)]

use closerank::synth::{generate_ba, BAConfig};
use closerank::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random spanning tree plus independent extra edges with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Mixed family: even seeds give tree-plus-ER graphs, odd seeds BA graphs.
pub fn mixed_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(3..=max_n);
    if seed % 2 == 0 {
        let p = rng.gen_range(0.0..0.08);
        random_connected(n, p, seed)
    } else {
        let m_attach = rng.gen_range(1..=3.min(n - 2));
        generate_ba(&BAConfig::new(n, m_attach, seed)).unwrap()
    }
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// All-pairs distances by Floyd–Warshall on the adjacency matrix.
pub fn floyd_warshall(graph: &Graph) -> Vec<Vec<u64>> {
    let n = graph.node_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &v in graph.neighbors(u) {
            row[v as usize] = 1;
        }
    }
    for k in 0..n {
        let via = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik == inf {
                continue;
            }
            for (dij, &dkj) in row.iter_mut().zip(&via) {
                let cand = dik + dkj;
                if cand < *dij {
                    *dij = cand;
                }
            }
        }
    }
    d
}

/// Competition ranks by stably sorting indices on decreasing value and
/// giving each run of equal values the position of its first element.
pub fn sort_ranks(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    let mut ranks = vec![0; values.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = if pos > 0 && values[order[pos - 1]] == values[i] {
            ranks[order[pos - 1]]
        } else {
            pos + 1
        };
    }
    ranks
}
