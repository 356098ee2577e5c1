//! Partial dense covers: the Core & Peel driver and cover validation.
//!
//! A cover is a list of node-disjoint communities, each with at least `q`
//! nodes, induced density at least `delta`, and radius at most two.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{density_from_counts, Graph, Node};
use crate::kcore::CoreInfo;
use crate::nodeset::NodeSet;
use crate::peel::{check_thresholds, peel_subgraph, PeelSubgraph};
use crate::scalar::Scalar;

/// Detection parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdcParams<T> {
    /// Minimum community size.
    pub q: usize,
    /// Minimum induced density.
    pub delta: T,
    /// Candidate neighbourhood radius, 1 or 2.
    pub radius: u8,
    /// Seeds whose candidate density is at or below this are skipped.
    pub delta_low: T,
}

impl<T: Scalar> PdcParams<T> {
    /// Parameters with `delta_low = delta / 2`.
    pub fn new(q: usize, delta: T, radius: u8) -> Result<Self> {
        let params = PdcParams {
            q,
            delta,
            radius,
            delta_low: delta / (T::one() + T::one()),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_delta_low(mut self, delta_low: T) -> Result<Self> {
        self.delta_low = delta_low;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_thresholds(self.q, self.delta)?;
        if !(self.delta_low > T::zero() && self.delta_low <= self.delta) {
            return Err(Error::InvalidParameter(format!(
                "delta_low must lie in (0, delta], got {:?} with delta {:?}",
                self.delta_low, self.delta
            )));
        }
        if !(self.radius == 1 || self.radius == 2) {
            return Err(Error::InvalidParameter(format!(
                "radius must be 1 or 2, got {}",
                self.radius
            )));
        }
        Ok(())
    }
}

/// A detected community with its cached size and induced density.
#[derive(Clone, Debug, PartialEq)]
pub struct Community<T> {
    pub nodes: NodeSet,
    pub edges: usize,
    pub density: T,
}

impl<T: Scalar> Community<T> {
    pub fn measure(g: &Graph, nodes: NodeSet) -> Self {
        let edges = nodes.induced_edges(g);
        let density = density_from_counts(edges, nodes.len()).unwrap_or_else(|_| T::one());
        Community {
            nodes,
            edges,
            density,
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimings {
    /// Core decomposition, core counts and seed ordering.
    pub phase1: Duration,
    /// Candidate construction and density prefilter.
    pub phase2: Duration,
    /// Peeling.
    pub phase3: Duration,
}

impl PhaseTimings {
    pub fn total(&self) -> Duration {
        self.phase1 + self.phase2 + self.phase3
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverResult<T> {
    /// Communities in discovery order.
    pub communities: Vec<Community<T>>,
    /// Union of all community members.
    pub marked: NodeSet,
    pub timings: PhaseTimings,
    /// Unmarked seeds visited.
    pub seeds_examined: usize,
    /// Seeds whose candidate passed the size and density prefilter.
    pub seeds_passed_prefilter: usize,
}

impl<T: Scalar> CoverResult<T> {
    pub fn from_communities(g: &Graph, sets: Vec<NodeSet>) -> Self {
        let communities: Vec<Community<T>> =
            sets.into_iter().map(|s| Community::measure(g, s)).collect();
        let marked = communities.iter().flat_map(|c| c.nodes.iter()).collect();
        CoverResult {
            communities,
            marked,
            timings: PhaseTimings::default(),
            seeds_examined: 0,
            seeds_passed_prefilter: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn node_sets(&self) -> impl Iterator<Item = &NodeSet> {
        self.communities.iter().map(|c| &c.nodes)
    }
}

/// Reusable per-run scratch space for candidate construction.
struct Scratch {
    marked: Vec<bool>,
    seen: Vec<u32>,
    stamp: u32,
    frontier: Vec<Node>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            marked: vec![false; n],
            seen: vec![0; n],
            stamp: 0,
            frontier: Vec::new(),
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    /// `{v}` plus every unmarked node of core number at least `C(v)` within
    /// `radius` hops, walking only through such nodes.
    fn candidate(&mut self, g: &Graph, info: &CoreInfo, v: Node, radius: u8) -> NodeSet {
        let stamp = self.next_stamp();
        let cv = info.core_of(v);
        let mut out = vec![v];
        self.seen[v as usize] = stamp;
        self.frontier.clear();
        self.frontier.push(v);
        for _ in 0..radius {
            let layer = std::mem::take(&mut self.frontier);
            for &u in &layer {
                for &w in g.neighbors(u) {
                    let wi = w as usize;
                    if self.seen[wi] != stamp && !self.marked[wi] && info.core[wi] >= cv {
                        self.seen[wi] = stamp;
                        out.push(w);
                        self.frontier.push(w);
                    }
                }
            }
        }
        NodeSet::new(out)
    }
}

/// Candidate neighbourhood of seed `v` given the nodes already marked.
pub fn candidate_set<T: Scalar>(
    g: &Graph,
    info: &CoreInfo,
    v: Node,
    params: &PdcParams<T>,
    marked: &NodeSet,
) -> NodeSet {
    let mut scratch = Scratch::new(g.node_count());
    for m in marked.iter() {
        scratch.marked[m as usize] = true;
    }
    scratch.candidate(g, info, v, params.radius)
}

/// Runs Core & Peel and returns the communities in discovery order.
pub fn core_and_peel<T: Scalar>(g: &Graph, params: &PdcParams<T>) -> Result<CoverResult<T>> {
    params.validate()?;
    let mut timings = PhaseTimings::default();

    let start = Instant::now();
    let info = CoreInfo::compute(g);
    timings.phase1 = start.elapsed();

    let mut scratch = Scratch::new(g.node_count());
    let mut communities = Vec::new();
    let (mut examined, mut passed) = (0, 0);

    for &v in &info.seed_order {
        if scratch.marked[v as usize] {
            continue;
        }
        examined += 1;
        let start = Instant::now();
        let candidate = scratch.candidate(g, &info, v, params.radius);
        if candidate.len() < params.q {
            timings.phase2 += start.elapsed();
            continue;
        }
        let mut sub = PeelSubgraph::new(g, &candidate);
        let keep = sub.density::<T>().is_some_and(|d| d > params.delta_low);
        timings.phase2 += start.elapsed();
        if !keep {
            continue;
        }
        passed += 1;

        let start = Instant::now();
        let outcome = peel_subgraph(&mut sub, params.q, params.delta, |_| true);
        timings.phase3 += start.elapsed();

        if let Some(nodes) = outcome.community {
            for m in nodes.iter() {
                scratch.marked[m as usize] = true;
            }
            communities.push(Community::measure(g, nodes));
        }
    }

    let marked = NodeSet::from_sorted(
        g.nodes()
            .filter(|&v| scratch.marked[v as usize])
            .collect(),
    );
    Ok(CoverResult {
        communities,
        marked,
        timings,
        seeds_examined: examined,
        seeds_passed_prefilter: passed,
    })
}

/// A cover condition that does not hold.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// (a) a member is not a node of the graph.
    NodeOutOfRange { community: usize, node: Node },
    /// (b) two communities share a node.
    Overlap {
        first: usize,
        second: usize,
        node: Node,
    },
    /// (c) fewer than `q` members.
    TooSmall { community: usize, size: usize },
    /// (c) induced density below `delta`.
    TooSparse { community: usize, density: f64 },
    /// (d) the union of two communities would itself qualify and is at
    /// least as dense as the sparser of the two.
    MergeablePair {
        first: usize,
        second: usize,
        union_density: f64,
    },
    /// (e) another run on the residual graph still finds communities.
    ResidualCommunities { count: usize },
    /// (f) induced radius above two; `None` when disconnected.
    RadiusExceeded {
        community: usize,
        radius: Option<usize>,
    },
}

impl Violation {
    /// The cover condition letter this violation belongs to.
    pub fn condition(&self) -> char {
        match self {
            Violation::NodeOutOfRange { .. } => 'a',
            Violation::Overlap { .. } => 'b',
            Violation::TooSmall { .. } | Violation::TooSparse { .. } => 'c',
            Violation::MergeablePair { .. } => 'd',
            Violation::ResidualCommunities { .. } => 'e',
            Violation::RadiusExceeded { .. } => 'f',
        }
    }
}

/// Largest BFS distance from `center` inside the subgraph induced by `set`,
/// or `None` if some member is unreachable.
fn induced_eccentricity(g: &Graph, set: &NodeSet, center: Node) -> Option<usize> {
    let mut dist = vec![usize::MAX; set.len()];
    let idx = |v: Node| set.as_slice().binary_search(&v).ok();
    let start = idx(center)?;
    dist[start] = 0;
    let mut queue = VecDeque::from([center]);
    let mut reached = 1;
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[idx(u).unwrap()];
        for &w in g.neighbors(u) {
            if let Some(i) = idx(w) {
                if dist[i] == usize::MAX {
                    dist[i] = du + 1;
                    ecc = ecc.max(du + 1);
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    (reached == set.len()).then_some(ecc)
}

/// Radius of the subgraph induced by `set`; `None` if disconnected or empty.
pub fn induced_radius(g: &Graph, set: &NodeSet) -> Option<usize> {
    // Try well-connected members first; a radius-1 centre is found at once.
    let mut centers: Vec<Node> = set.iter().collect();
    centers.sort_by_key(|&v| {
        std::cmp::Reverse(crate::nodeset::intersection_size(g.neighbors(v), set.as_slice()))
    });
    let mut best: Option<usize> = None;
    for c in centers {
        {
            let e = induced_eccentricity(g, set, c)?;
            best = Some(best.map_or(e, |b| b.min(e)));
            if e <= 1 {
                break;
            }
        }
    }
    best
}

fn radius_at_most_two(g: &Graph, set: &NodeSet) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let mut centers: Vec<Node> = set.iter().collect();
    centers.sort_by_key(|&v| {
        std::cmp::Reverse(crate::nodeset::intersection_size(g.neighbors(v), set.as_slice()))
    });
    centers
        .into_iter()
        .any(|c| induced_eccentricity(g, set, c).is_some_and(|e| e <= 2))
}

/// Number of edges between each pair of communities that has any.
fn cross_edges<T>(g: &Graph, communities: &[Community<T>]) -> HashMap<(usize, usize), usize> {
    let mut owner = vec![usize::MAX; g.node_count()];
    for (i, c) in communities.iter().enumerate() {
        for v in c.nodes.iter() {
            if (v as usize) < owner.len() && owner[v as usize] == usize::MAX {
                owner[v as usize] = i;
            }
        }
    }
    let mut cross = HashMap::new();
    for (i, c) in communities.iter().enumerate() {
        for v in c.nodes.iter() {
            if v as usize >= owner.len() {
                continue;
            }
            for &w in g.neighbors(v) {
                let j = owner[w as usize];
                if j != usize::MAX && j > i {
                    *cross.entry((i, j)).or_insert(0) += 1;
                }
            }
        }
    }
    cross
}

/// Density of the union of two disjoint communities if it still qualifies
/// and is at least as dense as the sparser one.
fn mergeable_density<T: Scalar>(
    a: &Community<T>,
    b: &Community<T>,
    cross: usize,
    params: &PdcParams<T>,
) -> Option<T> {
    let size = a.size() + b.size();
    let union: T = density_from_counts(a.edges + b.edges + cross, size).ok()?;
    let floor = if a.density < b.density { a.density } else { b.density };
    (size >= params.q && union >= params.delta && union >= floor).then_some(union)
}

/// Checks a cover against the partial dense cover conditions.
///
/// Conditions (a), (b), (c) and (f) are checked exactly. (d) flags any
/// pair whose union would still qualify; (e) reruns the detector on the
/// residual graph and reports whatever it finds.
pub fn validate_cover<T: Scalar>(
    g: &Graph,
    cover: &CoverResult<T>,
    params: &PdcParams<T>,
) -> Result<Vec<Violation>> {
    params.validate()?;
    let n = g.node_count();
    let mut violations = Vec::new();
    let mut owner = vec![usize::MAX; n];
    let mut structurally_sound = true;

    for (i, c) in cover.communities.iter().enumerate() {
        for v in c.nodes.iter() {
            if v as usize >= n {
                violations.push(Violation::NodeOutOfRange { community: i, node: v });
                structurally_sound = false;
                continue;
            }
            let prev = owner[v as usize];
            if prev != usize::MAX {
                violations.push(Violation::Overlap {
                    first: prev,
                    second: i,
                    node: v,
                });
                structurally_sound = false;
            } else {
                owner[v as usize] = i;
            }
        }
    }

    for (i, c) in cover.communities.iter().enumerate() {
        if c.nodes.iter().any(|v| v as usize >= n) {
            continue;
        }
        if c.size() < params.q {
            violations.push(Violation::TooSmall {
                community: i,
                size: c.size(),
            });
        }
        let edges = g.induced_edge_count(c.nodes.as_slice());
        match density_from_counts::<T>(edges, c.size()) {
            Ok(d) if d >= params.delta => {}
            Ok(d) => violations.push(Violation::TooSparse {
                community: i,
                density: d.to_f64(),
            }),
            Err(_) => violations.push(Violation::TooSparse {
                community: i,
                density: 0.0,
            }),
        }
        if !radius_at_most_two(g, &c.nodes) {
            violations.push(Violation::RadiusExceeded {
                community: i,
                radius: induced_radius(g, &c.nodes),
            });
        }
    }

    if !structurally_sound {
        return Ok(violations);
    }

    // Recount from the graph so stale cached values cannot hide a pair.
    let measured: Vec<Community<T>> = cover
        .communities
        .iter()
        .map(|c| Community::measure(g, NodeSet::new(c.nodes.iter())))
        .collect();
    let cross = cross_edges(g, &measured);
    for i in 0..measured.len() {
        for j in i + 1..measured.len() {
            let k = cross.get(&(i, j)).copied().unwrap_or(0);
            if let Some(d) = mergeable_density(&measured[i], &measured[j], k, params) {
                violations.push(Violation::MergeablePair {
                    first: i,
                    second: j,
                    union_density: d.to_f64(),
                });
            }
        }
    }

    let residual = g.remove_nodes(&cover.marked);
    let further = core_and_peel(&residual, params)?.len();
    if further > 0 {
        violations.push(Violation::ResidualCommunities { count: further });
    }
    Ok(violations)
}

/// Greedily merges mergeable community pairs, densest union first, until
/// none remain. Merged communities take the earlier position.
pub fn merge_pass<T: Scalar>(
    g: &Graph,
    cover: &CoverResult<T>,
    params: &PdcParams<T>,
) -> Result<CoverResult<T>> {
    params.validate()?;
    let mut communities = cover.communities.clone();
    loop {
        let cross = cross_edges(g, &communities);
        let mut best: Option<(T, usize, usize)> = None;
        for i in 0..communities.len() {
            for j in i + 1..communities.len() {
                let k = cross.get(&(i, j)).copied().unwrap_or(0);
                if let Some(d) = mergeable_density(&communities[i], &communities[j], k, params) {
                    if best.is_none_or(|(bd, _, _)| d > bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        let absorbed = communities.remove(j);
        let merged = communities[i].nodes.union(&absorbed.nodes);
        communities[i] = Community::measure(g, merged);
    }
    Ok(CoverResult {
        communities,
        marked: cover.marked.clone(),
        timings: cover.timings,
        seeds_examined: cover.seeds_examined,
        seeds_passed_prefilter: cover.seeds_passed_prefilter,
    })
}
