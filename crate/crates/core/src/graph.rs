//! Immutable simple undirected graphs in compressed adjacency form.
//!
//! Node labels from the input are arbitrary non-negative integers. They are
//! remapped to dense internal ids in ascending label order, which makes the
//! internal numbering independent of the order edges were listed in and lets
//! label lookups use binary search.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::nodeset::{intersection_size, NodeSet};
use crate::scalar::Scalar;

/// Dense internal node id.
pub type Node = u32;
/// External node label as it appears in input files.
pub type Label = u64;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Node>,
    labels: Vec<Label>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            offsets: vec![0],
            targets: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Builds a graph on nodes `0..n` (labels equal to ids) from an edge list.
    ///
    /// Self-loops are dropped and duplicates merged. Panics if an endpoint is
    /// not below `n`.
    pub fn from_pairs(n: usize, pairs: &[(Node, Node)]) -> Self {
        let labels = (0..n as Label).collect();
        let edges = pairs.iter().map(|&(u, v)| {
            assert!((u as usize) < n && (v as usize) < n, "edge ({u}, {v}) out of range");
            (u, v)
        });
        Self::from_edges(labels, edges.collect())
    }

    /// Builds a graph from labelled endpoints; ids follow ascending label order.
    pub fn from_labeled_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        let raw: Vec<(Label, Label)> = edges.into_iter().collect();
        let mut labels: Vec<Label> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.sort_unstable();
        labels.dedup();
        let id = |l: Label| labels.binary_search(&l).unwrap() as Node;
        let edges = raw.iter().map(|&(a, b)| (id(a), id(b))).collect();
        Self::from_edges(labels, edges)
    }

    /// `labels` must be strictly increasing; edges are internal ids.
    fn from_edges(labels: Vec<Label>, mut edges: Vec<(Node, Node)>) -> Self {
        let n = labels.len();
        edges.retain(|&(u, v)| u != v);
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        // Edges sorted by (min, max) fill every row in ascending order: all
        // smaller neighbours arrive before the row's own out-edges.
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0 as Node; acc];
        for &(u, v) in &edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        Graph {
            offsets,
            targets,
            labels,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Undirected edges, each counted once.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Directed arcs, `2 * edge_count`.
    #[inline]
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn nodes(&self) -> std::ops::Range<Node> {
        0..self.node_count() as Node
    }

    #[inline]
    pub fn neighbors(&self, v: Node) -> &[Node] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Node) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    #[inline]
    pub fn label(&self, v: Node) -> Label {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn node_of_label(&self, label: Label) -> Option<Node> {
        self.labels.binary_search(&label).ok().map(|i| i as Node)
    }

    /// Iterates undirected edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Edges with both endpoints in `sorted`, which must be sorted and unique.
    pub fn induced_edge_count(&self, sorted: &[Node]) -> usize {
        let twice: usize = sorted
            .iter()
            .map(|&u| intersection_size(self.neighbors(u), sorted))
            .sum();
        twice / 2
    }

    fn check_members(&self, q: &NodeSet) -> Result<()> {
        match q.as_slice().last() {
            Some(&v) if v as usize >= self.node_count() => Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            }),
            _ => Ok(()),
        }
    }

    /// Induced density `2|E_q| / (|q|(|q|-1))`. Needs at least two nodes.
    pub fn density<T: Scalar>(&self, q: &NodeSet) -> Result<T> {
        self.check_members(q)?;
        density_from_counts(q.induced_edges(self), q.len())
    }

    /// Induced average degree `2|E_q| / |q|`. Needs at least one node.
    pub fn average_degree<T: Scalar>(&self, q: &NodeSet) -> Result<T> {
        self.check_members(q)?;
        if q.is_empty() {
            return Err(Error::TooFewNodes {
                what: "average degree",
                needed: 1,
                got: 0,
            });
        }
        Ok(T::ratio(2 * q.induced_edges(self) as u64, q.len() as u64))
    }

    /// True iff every member has at least `gamma * (|q| - 1)` neighbours in `q`.
    pub fn is_quasi_clique<T: Scalar>(&self, q: &NodeSet, gamma: T) -> Result<bool> {
        self.check_members(q)?;
        if q.len() < 2 {
            return Err(Error::TooFewNodes {
                what: "quasi-clique test",
                needed: 2,
                got: q.len(),
            });
        }
        if !(gamma >= T::zero() && gamma <= T::one()) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in [0, 1], got {gamma:?}"
            )));
        }
        let need = gamma * T::from_count(q.len() as u64 - 1);
        Ok(q.iter().all(|v| {
            let inside = intersection_size(self.neighbors(v), q.as_slice());
            T::from_count(inside as u64) >= need
        }))
    }

    /// Returns a new graph with `pairs` added. Existing edges are kept once.
    pub fn add_edges(&self, pairs: &[(Node, Node)]) -> Result<Graph> {
        let n = self.node_count();
        for &(u, v) in pairs {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::NodeOutOfRange {
                        node: x,
                        node_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        let mut edges: Vec<(Node, Node)> = self.edges().collect();
        edges.extend_from_slice(pairs);
        Ok(Self::from_edges(self.labels.clone(), edges))
    }

    /// Subgraph induced on the nodes not in `removed`; labels carry over.
    pub fn remove_nodes(&self, removed: &NodeSet) -> Graph {
        let n = self.node_count();
        let mut new_id = vec![Node::MAX; n];
        let mut labels = Vec::with_capacity(n.saturating_sub(removed.len()));
        for v in self.nodes() {
            if !removed.contains(v) {
                new_id[v as usize] = labels.len() as Node;
                labels.push(self.label(v));
            }
        }
        let edges = self
            .edges()
            .filter_map(|(u, v)| {
                let (a, b) = (new_id[u as usize], new_id[v as usize]);
                (a != Node::MAX && b != Node::MAX).then_some((a, b))
            })
            .collect();
        Self::from_edges(labels, edges)
    }

    /// Subgraph induced on `keep`; labels carry over.
    pub fn induced_subgraph(&self, keep: &NodeSet) -> Graph {
        let complement = NodeSet::from_sorted(self.nodes().filter(|&v| !keep.contains(v)).collect());
        self.remove_nodes(&complement)
    }

    pub fn labels_of(&self, set: &NodeSet) -> Vec<Label> {
        set.iter().map(|v| self.label(v)).collect()
    }

    /// Maps labels back to a node set, ignoring labels absent from the graph.
    pub fn nodes_of_labels(&self, labels: &[Label]) -> NodeSet {
        labels.iter().filter_map(|&l| self.node_of_label(l)).collect()
    }
}

/// Density of a node set with `edges` induced edges and `size` members.
pub fn density_from_counts<T: Scalar>(edges: usize, size: usize) -> Result<T> {
    if size < 2 {
        return Err(Error::TooFewNodes {
            what: "density",
            needed: 2,
            got: size,
        });
    }
    Ok(T::ratio(2 * edges as u64, (size * (size - 1)) as u64))
}

/// Reads a SNAP-style edge list: `#` comment lines, then one
/// whitespace-separated pair of integer labels per line.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parsed = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => a.parse::<Label>().ok().zip(b.parse::<Label>().ok()),
            _ => None,
        };
        match parsed {
            Some(pair) => edges.push(pair),
            None => {
                return Err(Error::Parse {
                    line: i + 1,
                    content: line,
                })
            }
        }
    }
    Ok(Graph::from_labeled_edges(edges))
}

pub fn parse_edge_list_str(text: &str) -> Result<Graph> {
    parse_edge_list(text.as_bytes())
}
