//! Greedy minimum-degree peeling of an induced subgraph.
//!
//! [`peel`] stops at the first state that meets the size and density
//! thresholds. [`peel_max_avg_degree`] is the classic variant that runs to
//! exhaustion and keeps the state of highest average degree, a
//! 1/2-approximation of the densest subgraph.

use crate::error::{Error, Result};
use crate::graph::{density_from_counts, Graph, Node};
use crate::nodeset::NodeSet;
use crate::scalar::Scalar;

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeelStatus {
    Success,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOutcome {
    pub status: PeelStatus,
    /// Present iff `status` is `Success`.
    pub community: Option<NodeSet>,
    pub removals: usize,
}

impl PeelOutcome {
    pub fn is_success(&self) -> bool {
        self.status == PeelStatus::Success
    }
}

/// Working copy of an induced subgraph with degree buckets.
///
/// Local index `i` corresponds to the `i`-th smallest candidate id, so local
/// order and global id order agree.
#[derive(Clone, Debug)]
pub struct PeelSubgraph {
    nodes: Vec<Node>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    degree: Vec<u32>,
    alive: Vec<bool>,
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    min_degree: usize,
    size: usize,
    edges: usize,
}

impl PeelSubgraph {
    pub fn new(g: &Graph, candidate: &NodeSet) -> Self {
        let nodes = candidate.as_slice().to_vec();
        let k = nodes.len();
        let mut offsets = Vec::with_capacity(k + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for &v in &nodes {
            local_intersection(g.neighbors(v), &nodes, &mut targets);
            offsets.push(targets.len());
        }
        let degree: Vec<u32> = offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;
        let mut sub = PeelSubgraph {
            nodes,
            offsets,
            targets,
            alive: vec![true; k],
            head: vec![NIL; max_degree + 1],
            next: vec![NIL; k],
            prev: vec![NIL; k],
            min_degree: 0,
            size: k,
            edges: degree.iter().map(|&d| d as usize).sum::<usize>() / 2,
            degree,
        };
        // Push in reverse so each bucket lists its nodes in ascending order.
        for i in (0..k as u32).rev() {
            sub.bucket_push(i);
        }
        sub.min_degree = sub.head.iter().position(|&h| h != NIL).unwrap_or(0);
        sub
    }

    fn bucket_push(&mut self, i: u32) {
        let d = self.degree[i as usize] as usize;
        let h = self.head[d];
        self.prev[i as usize] = NIL;
        self.next[i as usize] = h;
        if h != NIL {
            self.prev[h as usize] = i;
        }
        self.head[d] = i;
    }

    fn bucket_unlink(&mut self, i: u32) {
        let d = self.degree[i as usize] as usize;
        let (p, n) = (self.prev[i as usize], self.next[i as usize]);
        if p != NIL {
            self.next[p as usize] = n;
        } else {
            self.head[d] = n;
        }
        if n != NIL {
            self.prev[n as usize] = p;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Current induced degree of a live member (by global id).
    pub fn degree_of(&self, v: Node) -> Option<usize> {
        let i = self.nodes.binary_search(&v).ok()?;
        self.alive[i].then_some(self.degree[i] as usize)
    }

    pub fn members(&self) -> NodeSet {
        NodeSet::from_sorted(
            self.nodes
                .iter()
                .zip(&self.alive)
                .filter_map(|(&v, &a)| a.then_some(v))
                .collect(),
        )
    }

    fn live_neighbors(&self, i: u32) -> impl Iterator<Item = u32> + '_ {
        self.targets[self.offsets[i as usize]..self.offsets[i as usize + 1]]
            .iter()
            .copied()
            .filter(move |&w| self.alive[w as usize])
    }

    fn neighbor_degree_sum(&self, i: u32) -> u64 {
        self.live_neighbors(i)
            .map(|w| self.degree[w as usize] as u64)
            .sum()
    }

    fn select_local(&self) -> Option<u32> {
        if self.size == 0 {
            return None;
        }
        let mut best: Option<(u64, u32)> = None;
        let mut i = self.head[self.min_degree];
        while i != NIL {
            let key = (self.neighbor_degree_sum(i), i);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
            i = self.next[i as usize];
        }
        best.map(|(_, i)| i)
    }

    /// The live node of minimum degree; ties go to the smallest sum of
    /// neighbour degrees, then to the smallest id.
    pub fn select_min_degree(&self) -> Option<Node> {
        self.select_local().map(|i| self.nodes[i as usize])
    }

    fn remove_local(&mut self, i: u32) {
        debug_assert!(self.alive[i as usize]);
        self.bucket_unlink(i);
        self.alive[i as usize] = false;
        self.size -= 1;
        self.edges -= self.degree[i as usize] as usize;
        let (lo, hi) = (self.offsets[i as usize], self.offsets[i as usize + 1]);
        for idx in lo..hi {
            let w = self.targets[idx];
            if !self.alive[w as usize] {
                continue;
            }
            self.bucket_unlink(w);
            self.degree[w as usize] -= 1;
            self.bucket_push(w);
            self.min_degree = self.min_degree.min(self.degree[w as usize] as usize);
        }
        if self.size > 0 {
            while self.head[self.min_degree] == NIL {
                self.min_degree += 1;
            }
        }
    }

    /// Removes a live member by global id. Returns false if absent.
    pub fn remove(&mut self, v: Node) -> bool {
        match self.nodes.binary_search(&v) {
            Ok(i) if self.alive[i] => {
                self.remove_local(i as u32);
                true
            }
            _ => false,
        }
    }

    /// Removes and returns the node chosen by [`Self::select_min_degree`].
    pub fn pop_min(&mut self) -> Option<Node> {
        let i = self.select_local()?;
        self.remove_local(i);
        Some(self.nodes[i as usize])
    }

    /// Induced density of the live nodes; `None` below two nodes.
    pub fn density<T: Scalar>(&self) -> Option<T> {
        density_from_counts(self.edges, self.size).ok()
    }
}

/// Appends the positions in `sorted` of the elements shared with `adj`.
fn local_intersection(adj: &[Node], sorted: &[Node], out: &mut Vec<u32>) {
    if adj.len() * 8 < sorted.len() {
        for v in adj {
            if let Ok(p) = sorted.binary_search(v) {
                out.push(p as u32);
            }
        }
    } else if sorted.len() * 8 < adj.len() {
        for (p, v) in sorted.iter().enumerate() {
            if adj.binary_search(v).is_ok() {
                out.push(p as u32);
            }
        }
    } else {
        let (mut i, mut j) = (0, 0);
        while i < adj.len() && j < sorted.len() {
            match adj[i].cmp(&sorted[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(j as u32);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

pub(crate) fn check_thresholds<T: Scalar>(q: usize, delta: T) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "minimum size must be at least 2, got {q}"
        )));
    }
    if !(delta > T::zero() && delta <= T::one()) {
        return Err(Error::InvalidParameter(format!(
            "density threshold must lie in (0, 1], got {delta:?}"
        )));
    }
    Ok(())
}

/// Peels `candidate` until it has at least `q` nodes and density at least
/// `delta` (success), or would drop below `q` nodes (failure).
///
/// Thresholds are checked before every removal, including the first, so the
/// returned set is the first qualifying state on the peel trajectory.
pub fn peel<T: Scalar>(g: &Graph, candidate: &NodeSet, q: usize, delta: T) -> Result<PeelOutcome> {
    check_thresholds(q, delta)?;
    let mut sub = PeelSubgraph::new(g, candidate);
    Ok(peel_subgraph(&mut sub, q, delta, |_| true))
}

/// Peeling loop over a prepared subgraph. `accept` is an extra predicate a
/// qualifying state has to satisfy; rejected states keep peeling.
pub(crate) fn peel_subgraph<T, F>(sub: &mut PeelSubgraph, q: usize, delta: T, mut accept: F) -> PeelOutcome
where
    T: Scalar,
    F: FnMut(&PeelSubgraph) -> bool,
{
    let mut removals = 0;
    loop {
        if sub.len() < q {
            return PeelOutcome {
                status: PeelStatus::Failure,
                community: None,
                removals,
            };
        }
        let dense = sub.density::<T>().is_some_and(|d| d >= delta);
        if dense && accept(sub) {
            return PeelOutcome {
                status: PeelStatus::Success,
                community: Some(sub.members()),
                removals,
            };
        }
        sub.pop_min();
        removals += 1;
    }
}

/// Peels to exhaustion and returns the intermediate node set of highest
/// average degree (earliest on ties).
pub fn peel_max_avg_degree(g: &Graph, candidate: &NodeSet) -> NodeSet {
    let mut sub = PeelSubgraph::new(g, candidate);
    let mut removed = Vec::with_capacity(candidate.len());
    // Average degree 2e/n compared as e/n by cross-multiplication.
    let (mut best_edges, mut best_size, mut best_cut) = (sub.edge_count(), sub.len(), 0);
    while let Some(v) = sub.pop_min() {
        removed.push(v);
        if sub.is_empty() {
            break;
        }
        let (e, n) = (sub.edge_count(), sub.len());
        if (e as u128) * (best_size as u128) > (best_edges as u128) * (n as u128) {
            best_edges = e;
            best_size = n;
            best_cut = removed.len();
        }
    }
    let dropped = NodeSet::new(removed[..best_cut].iter().copied());
    candidate.iter().filter(|&v| !dropped.contains(v)).collect()
}
