//! Breadth-first traversal kernels and closeness centrality.
//!
//! Closeness is `(n - 1) / sum_v d(u, v)`. Distance sums are accumulated as
//! integers and divided once, so every route to a node's closeness (single
//! probe, batch, parallel sweep) yields the same bits.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Closeness of one node together with what the traversal saw on the way.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosenessProbe {
    pub source: usize,
    pub closeness: f64,
    pub distance_sum: u64,
    /// Highest-degree node reached, smallest id on ties.
    pub max_degree_node: usize,
    /// Nodes on the last BFS level, ascending.
    pub farthest_nodes: Vec<usize>,
    pub eccentricity: u32,
}

struct Sweep {
    distance_sum: u64,
    reached: usize,
    eccentricity: u32,
    last_level_start: usize,
    max_degree_node: usize,
}

/// Reusable BFS state: a flat queue plus an epoch-stamped visited array, so
/// consecutive traversals on the same graph allocate nothing.
pub struct Bfs {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs {
            stamp: vec![0; n],
            epoch: 0,
            queue: Vec::with_capacity(n),
        }
    }

    fn next_epoch(&mut self, n: usize) {
        if self.stamp.len() != n {
            self.stamp = vec![0; n];
            self.epoch = 0;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    fn sweep(&mut self, graph: &Graph, source: usize, track_degree: bool) -> Sweep {
        let n = graph.node_count();
        self.next_epoch(n);
        let epoch = self.epoch;
        self.queue.clear();
        self.queue.push(source as u32);
        self.stamp[source] = epoch;

        let mut distance_sum = 0u64;
        let mut level = 0u32;
        let mut level_start = 0;
        let mut best = source;
        let mut best_deg = graph.deg(source);

        loop {
            let level_end = self.queue.len();
            for i in level_start..level_end {
                let u = self.queue[i] as usize;
                if track_degree {
                    let d = graph.deg(u);
                    if d > best_deg || (d == best_deg && u < best) {
                        best = u;
                        best_deg = d;
                    }
                }
                for &v in graph.neighbors(u) {
                    let slot = &mut self.stamp[v as usize];
                    if *slot != epoch {
                        *slot = epoch;
                        self.queue.push(v);
                    }
                }
            }
            if self.queue.len() == level_end {
                break;
            }
            level += 1;
            distance_sum += u64::from(level) * (self.queue.len() - level_end) as u64;
            level_start = level_end;
        }

        Sweep {
            distance_sum,
            reached: self.queue.len(),
            eccentricity: level,
            last_level_start: level_start,
            max_degree_node: best,
        }
    }

    /// Sum of distances from `source` to every node. Fails if some node is
    /// unreachable.
    pub fn distance_sum(&mut self, graph: &Graph, source: usize) -> Result<u64> {
        graph.check_node(source)?;
        let sweep = self.sweep(graph, source, false);
        if sweep.reached != graph.node_count() {
            return Err(Error::NotConnected);
        }
        Ok(sweep.distance_sum)
    }

    pub fn closeness(&mut self, graph: &Graph, source: usize) -> Result<f64> {
        require_pair(graph)?;
        let sum = self.distance_sum(graph, source)?;
        Ok(closeness_from_sum(graph.node_count(), sum))
    }

    pub fn probe(&mut self, graph: &Graph, source: usize) -> Result<ClosenessProbe> {
        require_pair(graph)?;
        graph.check_node(source)?;
        let sweep = self.sweep(graph, source, true);
        if sweep.reached != graph.node_count() {
            return Err(Error::NotConnected);
        }
        let mut farthest_nodes: Vec<usize> = self.queue[sweep.last_level_start..]
            .iter()
            .map(|&v| v as usize)
            .collect();
        farthest_nodes.sort_unstable();
        Ok(ClosenessProbe {
            source,
            closeness: closeness_from_sum(graph.node_count(), sweep.distance_sum),
            distance_sum: sweep.distance_sum,
            max_degree_node: sweep.max_degree_node,
            farthest_nodes,
            eccentricity: sweep.eccentricity,
        })
    }
}

fn require_pair(graph: &Graph) -> Result<()> {
    match graph.node_count() {
        n if n < 2 => Err(Error::TooFewNodes(n)),
        _ => Ok(()),
    }
}

#[inline]
pub fn closeness_from_sum(n: usize, distance_sum: u64) -> f64 {
    (n - 1) as f64 / distance_sum as f64
}

/// Unweighted shortest-path distance from `source` to every node.
pub fn bfs_levels(graph: &Graph, source: usize) -> Result<Vec<u32>> {
    graph.check_node(source)?;
    let n = graph.node_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    dist[source] = 0;
    queue.push(source as u32);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        let next = dist[u] + 1;
        for &v in graph.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = next;
                queue.push(v);
            }
        }
    }
    if queue.len() != n {
        return Err(Error::NotConnected);
    }
    Ok(dist)
}

pub fn closeness(graph: &Graph, u: usize) -> Result<f64> {
    Bfs::new(graph.node_count()).closeness(graph, u)
}

pub fn closeness_probe(graph: &Graph, u: usize) -> Result<ClosenessProbe> {
    Bfs::new(graph.node_count()).probe(graph, u)
}

/// Closeness of each listed node, traversals spread over the current rayon pool.
pub fn closeness_of(graph: &Graph, nodes: &[usize]) -> Result<Vec<f64>> {
    require_pair(graph)?;
    let n = graph.node_count();
    nodes
        .par_iter()
        .map_init(|| Bfs::new(n), |bfs, &u| bfs.closeness(graph, u))
        .collect()
}

/// Closeness of every node: one BFS per source, O(n·m) in total.
pub fn closeness_all(graph: &Graph) -> Result<Vec<f64>> {
    require_pair(graph)?;
    let n = graph.node_count();
    (0..n)
        .into_par_iter()
        .map_init(|| Bfs::new(n), |bfs, u| bfs.closeness(graph, u))
        .collect()
}
