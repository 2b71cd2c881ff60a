//! Undirected, unweighted graphs in compressed adjacency form.
//!
//! Node ids are dense integers `0..n`. Every neighbor list is sorted, the
//! adjacency is symmetric, and there are no self-loops or parallel edges.
//! When a graph comes from an edge-list file the source labels are kept so
//! results can be reported against the original ids.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` nodes from an arbitrary edge list. Self-loops
    /// are dropped, reciprocal and duplicate pairs are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::InvalidConfig(format!(
                "{n} nodes exceeds u32 id space"
            )));
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u != v {
                pairs.push((u.min(v) as u32, u.max(v) as u32));
            }
        }
        Ok(Self::from_canonical_pairs(n, pairs))
    }

    fn from_canonical_pairs(n: usize, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &pairs {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * pairs.len()];
        for &(u, v) in &pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for u in 0..n {
            neighbors[offsets[u]..offsets[u + 1]].sort_unstable();
        }

        Graph {
            offsets,
            neighbors,
            edge_count: pairs.len(),
            labels: None,
        }
    }

    /// Attaches source labels, one per node.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::InvalidConfig(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `u`. Panics if `u` is out of range.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        self.check_node(u)?;
        Ok(self.deg(u))
    }

    #[inline]
    pub(crate) fn deg(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn check_node(&self, u: usize) -> Result<()> {
        if u < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: u,
                n: self.node_count(),
            })
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `u` as it appeared in the source file, or the internal id.
    pub fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(labels) => labels[u].clone(),
            None => u.to_string(),
        }
    }

    /// Resolves a source label to an internal id. Graphs without labels
    /// accept the decimal internal id.
    pub fn node_by_label(&self, label: &str) -> Result<usize> {
        let found = match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label
                .parse::<usize>()
                .ok()
                .filter(|&u| u < self.node_count()),
        };
        found.ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Node with the largest degree; ties go to the smallest id.
    pub fn max_degree_node(&self) -> Option<usize> {
        (0..self.node_count()).fold(None, |best, u| match best {
            Some(b) if self.deg(b) >= self.deg(u) => Some(b),
            _ => Some(u),
        })
    }

    /// Connected-component id per node, numbered in order of each
    /// component's smallest node.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            queue.clear();
            queue.push(start as u32);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head] as usize;
                head += 1;
                for &v in self.neighbors(u) {
                    if comp[v as usize] == usize::MAX {
                        comp[v as usize] = count;
                        queue.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().1 == 1
    }

    /// Induced subgraph on `keep` (which must be sorted and unique), with
    /// ids re-densified in ascending order of the old ids.
    fn induced(&self, keep: &[usize]) -> Self {
        let mut remap = vec![u32::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new as u32;
        }
        let pairs = self
            .edges()
            .filter_map(|(u, v)| {
                let (a, b) = (remap[u], remap[v]);
                (a != u32::MAX && b != u32::MAX).then_some((a, b))
            })
            .collect();
        let mut sub = Self::from_canonical_pairs(keep.len(), pairs);
        sub.labels = self
            .labels
            .as_ref()
            .map(|labels| keep.iter().map(|&old| labels[old].clone()).collect());
        sub
    }

    /// Verifies the structural invariants by full scan.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        let mut total = 0;
        for u in 0..n {
            let adj = self.neighbors(u);
            total += adj.len();
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidConfig(format!(
                        "node {u}: unsorted or duplicate neighbors"
                    )));
                }
            }
            for &v in adj {
                let v = v as usize;
                if v == u {
                    return Err(Error::InvalidConfig(format!("self-loop at {u}")));
                }
                if v >= n || self.neighbors(v).binary_search(&(u as u32)).is_err() {
                    return Err(Error::InvalidConfig(format!("asymmetric edge {u}-{v}")));
                }
            }
        }
        if total != 2 * self.edge_count {
            return Err(Error::InvalidConfig(format!(
                "neighbor lists hold {total} entries for {} edges",
                self.edge_count
            )));
        }
        Ok(())
    }

    /// Writes the graph as an edge list that parses back to an identical
    /// graph, labels and id order included.
    ///
    /// Edges are grouped by their larger endpoint so that labels first
    /// appear in internal-id order. A node that would otherwise be first
    /// mentioned out of order is announced with a self-loop line, which the
    /// parser registers and then drops.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        let n = self.node_count();
        let smaller = |u: usize| {
            self.neighbors(u)
                .iter()
                .take_while(move |&&v| (v as usize) < u)
        };
        for u in 0..n {
            let mut lower = smaller(u).peekable();
            if lower.peek().is_none() {
                let announced_by_next =
                    u + 1 < n && smaller(u + 1).next().is_some_and(|&v| v as usize == u);
                if !announced_by_next {
                    let l = self.label(u);
                    writeln!(out, "{l} {l}")?;
                }
                continue;
            }
            let lu = self.label(u);
            for &v in lower {
                writeln!(out, "{} {lu}", self.label(v as usize))?;
            }
        }
        Ok(())
    }

    pub fn write_edge_list_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut out = std::io::BufWriter::new(file);
        self.write_edge_list(&mut out)?;
        out.flush()?;
        Ok(())
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments. Labels are arbitrary tokens, densified in order of first
/// appearance. Gzip input is detected from its magic bytes.
pub fn parse_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut reader = BufReader::new(reader);
    let is_gzip = reader.fill_buf()?.starts_with(&GZIP_MAGIC);
    if is_gzip {
        parse_plain(BufReader::new(MultiGzDecoder::new(reader)))
    } else {
        parse_plain(reader)
    }
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(file)
}

fn parse_plain<R: BufRead>(reader: R) -> Result<Graph> {
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::new();

    let mut intern = |token: &str| -> u32 {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len() as u32;
        labels.push(token.to_string());
        ids.insert(token.to_string(), id);
        id
    };

    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: index + 1,
                    message: format!("expected two node ids, got {trimmed:?}"),
                })
            }
        };
        let u = intern(a);
        let v = intern(b);
        if u != v {
            pairs.push((u.min(v), u.max(v)));
        }
    }

    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut graph = Graph::from_canonical_pairs(labels.len(), pairs);
    graph.labels = Some(labels);
    Ok(graph)
}

/// Induced subgraph on the largest connected component. Ties go to the
/// component holding the smallest id; surviving ids keep their relative order.
pub fn largest_connected_component(graph: &Graph) -> Result<Graph> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let (comp, count) = graph.components();
    if count == 1 {
        return Ok(graph.clone());
    }
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    // components are numbered by smallest member, so the first maximum wins ties
    let best = (0..count).fold(0, |b, c| if sizes[c] > sizes[b] { c } else { b });
    let keep: Vec<usize> = (0..n).filter(|&u| comp[u] == best).collect();
    Ok(graph.induced(&keep))
}
