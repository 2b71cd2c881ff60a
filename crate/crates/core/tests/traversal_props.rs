mod common;

use closerank::synth::{generate_ba, BAConfig};
use closerank::traversal::{bfs_levels, closeness, closeness_all, closeness_probe, Bfs};
use proptest::prelude::*;

#[test]
fn levels_match_floyd_warshall() {
    for seed in 0..12 {
        let g = common::mixed_graph(seed, 120);
        let d = common::floyd_warshall(&g);
        for u in 0..g.node_count() {
            let levels = bfs_levels(&g, u).unwrap();
            assert!(levels.iter().zip(&d[u]).all(|(&a, &b)| u64::from(a) == b));
        }
    }
}

#[test]
fn sweep_matches_single_calls_bitwise() {
    let g = common::random_connected(150, 0.03, 21);
    let all = closeness_all(&g).unwrap();
    for u in 0..g.node_count() {
        assert_eq!(all[u].to_bits(), closeness(&g, u).unwrap().to_bits());
    }
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let g = generate_ba(&BAConfig::new(800, 3, 2)).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| closeness_all(&g).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(8));
}

#[test]
fn probe_finds_global_max_degree_node() {
    let g = generate_ba(&BAConfig::new(1000, 3, 8)).unwrap();
    let max_degree = (0..g.node_count())
        .map(|u| g.degree(u).unwrap())
        .max()
        .unwrap();
    for source in [0, 17, 500, 999] {
        let probe = closeness_probe(&g, source).unwrap();
        assert_eq!(g.degree(probe.max_degree_node).unwrap(), max_degree);
        assert_eq!(Some(probe.max_degree_node), g.max_degree_node());
    }
}

#[test]
fn pendant_nodes_sit_farther_than_their_neighbor() {
    let g = generate_ba(&BAConfig::new(600, 1, 5)).unwrap();
    let mut bfs = Bfs::new(g.node_count());
    let mut checked = 0;
    for u in 0..g.node_count() {
        if g.degree(u).unwrap() == 1 {
            let w = g.neighbors(u)[0] as usize;
            let leaf = bfs.distance_sum(&g, u).unwrap();
            let hub = bfs.distance_sum(&g, w).unwrap();
            assert_eq!(leaf, hub + (g.node_count() as u64 - 2));
            checked += 1;
        }
    }
    assert!(checked > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn probe_invariants(seed in 0u64..10_000) {
        let g = common::mixed_graph(seed, 80);
        let n = g.node_count();
        let source = (seed as usize * 7919) % n;
        let probe = closeness_probe(&g, source).unwrap();
        let levels = bfs_levels(&g, source).unwrap();
        let sum: u64 = levels.iter().map(|&d| u64::from(d)).sum();
        prop_assert_eq!(probe.distance_sum, sum);
        prop_assert_eq!(probe.closeness, (n - 1) as f64 / sum as f64);
        prop_assert_eq!(probe.eccentricity, *levels.iter().max().unwrap());
        prop_assert!(!probe.farthest_nodes.is_empty());
        for &v in &probe.farthest_nodes {
            prop_assert_eq!(levels[v], probe.eccentricity);
        }
        let expected: Vec<usize> = (0..n).filter(|&v| levels[v] == probe.eccentricity).collect();
        prop_assert_eq!(&probe.farthest_nodes, &expected);

        let c = probe.closeness;
        prop_assert!(c <= 1.0 && c >= 1.0 / f64::from(probe.eccentricity));
        prop_assert_eq!(c == 1.0, g.degree(source).unwrap() == n - 1);
    }
}
