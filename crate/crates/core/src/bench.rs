//! Planted-community evaluation.
//!
//! The host graph is cleaned by two detector runs, dense communities are
//! planted into the residual, and the detector is run again with the planting
//! parameters. A planted community counts as found when a detected community
//! holds more than half of its nodes.

use std::collections::HashMap;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{density_from_counts, Graph, Label, Node};
use crate::nodeset::NodeSet;
use crate::pdc::{core_and_peel, CoverResult, PdcParams, PhaseTimings};
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET_FRACTION: f64 = 0.02;

/// How plant size and count are derived from the host graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanOptions {
    /// Fraction of host nodes that planted communities may occupy.
    pub budget_fraction: f64,
    /// Overrides the target average degree `round(arcs / nodes)`.
    pub target_degree: Option<usize>,
    /// Overrides the community size derived from the target degree.
    pub plant_size: Option<usize>,
    /// Overrides the number of communities derived from the budget.
    pub num_plants: Option<usize>,
    pub shape: PlantShape,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            budget_fraction: DEFAULT_BUDGET_FRACTION,
            target_degree: None,
            plant_size: None,
            num_plants: None,
            shape: PlantShape::Density,
        }
    }
}

/// What a planted community must satisfy besides its size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PlantShape {
    /// Induced density at least the target.
    #[default]
    Density,
    /// Every member adjacent to at least `target * (size - 1)` others, which
    /// also implies the density target.
    QuasiClique,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlantSpec<T> {
    pub community_size: usize,
    pub target_density: T,
    pub num_communities: usize,
    pub rng_seed: u64,
    pub shape: PlantShape,
}

impl<T: Scalar> PlantSpec<T> {
    pub fn with_seed(mut self, rng_seed: u64) -> Self {
        self.rng_seed = rng_seed;
        self
    }

    fn validate(&self, host_nodes: usize) -> Result<()> {
        if self.community_size < 2 {
            return Err(Error::Plant(format!(
                "community size must be at least 2, got {}",
                self.community_size
            )));
        }
        if self.num_communities < 1 {
            return Err(Error::Plant("at least one community must be planted".into()));
        }
        if !(self.target_density > T::zero() && self.target_density <= T::one()) {
            return Err(Error::Plant(format!(
                "target density must lie in (0, 1], got {:?}",
                self.target_density
            )));
        }
        let needed = self.community_size * self.num_communities;
        if needed > host_nodes {
            return Err(Error::Plant(format!(
                "{} communities of size {} need {needed} nodes, host has {host_nodes}",
                self.num_communities, self.community_size
            )));
        }
        Ok(())
    }
}

/// Plant size and count for a host graph with the default budget.
pub fn plan_plants<T: Scalar>(g: &Graph, delta_bar: T) -> Result<PlantSpec<T>> {
    plan_plants_with(g, delta_bar, &PlanOptions::default())
}

/// Community average degree is matched to `round(arcs / nodes)`; size is
/// `round(degree / delta_bar) + 1`; the count fills `budget_fraction` of the
/// nodes.
pub fn plan_plants_with<T: Scalar>(g: &Graph, delta_bar: T, opts: &PlanOptions) -> Result<PlantSpec<T>> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Plant("host graph is empty".into()));
    }
    let delta = delta_bar.to_f64();
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Plant(format!("target density must lie in (0, 1], got {delta}")));
    }
    let size = match opts.plant_size {
        Some(s) => s,
        None => {
            let degree = opts
                .target_degree
                .unwrap_or_else(|| (g.arc_count() as f64 / n as f64).round() as usize);
            (degree as f64 / delta).round() as usize + 1
        }
    };
    if size < 2 {
        return Err(Error::Plant(format!(
            "host graph too sparse: planned community size {size}"
        )));
    }
    let count = match opts.num_plants {
        Some(m) => m,
        // The epsilon keeps exact multiples from flooring one short.
        None => (opts.budget_fraction * n as f64 / size as f64 + 1e-9).floor() as usize,
    };
    if count < 1 {
        return Err(Error::Plant(format!(
            "budget {} of {n} nodes is too small for one community of size {size}",
            opts.budget_fraction
        )));
    }
    let spec = PlantSpec {
        community_size: size,
        target_density: delta_bar,
        num_communities: count,
        rng_seed: 0,
        shape: opts.shape,
    };
    spec.validate(n)?;
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantManifest {
    /// Planted communities as sorted original labels.
    pub planted: Vec<Vec<Label>>,
    pub edges_added: usize,
    pub host_nodes: usize,
    pub host_arcs: usize,
    /// `host_arcs / host_nodes`.
    pub host_ratio: f64,
}

/// Smallest internal degree allowed by `spec.shape`.
fn required_degree<T: Scalar>(spec: &PlantSpec<T>) -> usize {
    match spec.shape {
        PlantShape::Density => 0,
        PlantShape::QuasiClique => {
            let need = spec.target_density * T::from_count(spec.community_size as u64 - 1);
            (0..spec.community_size)
                .find(|&k| T::from_count(k as u64) >= need)
                .unwrap_or(spec.community_size - 1)
        }
    }
}

/// Samples disjoint node sets uniformly and adds random missing internal
/// edges to each until its density reaches the target.
///
/// For quasi-cliques a first pass over the shuffled missing pairs adds only
/// pairs with an endpoint still below the required degree; the density target
/// is then topped up from the pairs that pass skipped.
pub fn plant<T: Scalar>(g: &Graph, spec: &PlantSpec<T>) -> Result<(Graph, PlantManifest)> {
    let n = g.node_count();
    spec.validate(n)?;
    let s = spec.community_size;
    let min_deg = required_degree(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let chosen = rand::seq::index::sample(&mut rng, n, s * spec.num_communities).into_vec();

    let mut sets = Vec::with_capacity(spec.num_communities);
    let mut added: Vec<(Node, Node)> = Vec::new();
    for chunk in chosen.chunks(s) {
        let set = NodeSet::new(chunk.iter().map(|&v| v as Node));
        let members = set.as_slice();
        let mut edges = set.induced_edges(g);
        let mut deg: Vec<usize> = members
            .iter()
            .map(|&u| g.neighbors(u).iter().filter(|&&w| set.contains(w)).count())
            .collect();
        let mut absent: Vec<(usize, usize)> = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                if !g.has_edge(members[i], members[j]) {
                    absent.push((i, j));
                }
            }
        }
        absent.shuffle(&mut rng);
        let mut skipped = Vec::new();
        for (i, j) in absent {
            if deg[i] < min_deg || deg[j] < min_deg {
                added.push((members[i], members[j]));
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            } else {
                skipped.push((i, j));
            }
        }
        let mut rest = skipped.into_iter();
        while density_from_counts::<T>(edges, s)? < spec.target_density {
            let (i, j) = rest.next().expect("a complete set meets any density");
            added.push((members[i], members[j]));
            edges += 1;
        }
        sets.push(set);
    }

    let planted_graph = g.add_edges(&added)?;
    for set in &sets {
        let d: T = planted_graph.density(&NodeSet::new(set.iter()))?;
        assert!(d >= spec.target_density, "planted set below target density");
        assert!(
            set.iter().all(|u| planted_graph.neighbors(u).iter().filter(|&&w| set.contains(w)).count() >= min_deg),
            "planted member below required degree"
        );
    }
    let manifest = PlantManifest {
        planted: sets.iter().map(|s| g.labels_of(s)).collect(),
        edges_added: added.len(),
        host_nodes: n,
        host_arcs: g.arc_count(),
        host_ratio: if n == 0 { 0.0 } else { g.arc_count() as f64 / n as f64 },
    };
    Ok((planted_graph, manifest))
}

/// Runs the detector twice, removing the found communities after each run.
/// Returns the second residual and the community count of each pass.
pub fn two_pass_clean<T: Scalar>(g: &Graph, params: &PdcParams<T>) -> Result<(Graph, [usize; 2])> {
    let first = core_and_peel(g, params)?;
    let g1 = g.remove_nodes(&first.marked);
    let second = core_and_peel(&g1, params)?;
    let g2 = g1.remove_nodes(&second.marked);
    Ok((g2, [first.len(), second.len()]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchScore {
    pub planted: usize,
    pub detected: usize,
    pub matched: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// `(planted index, detected index)` of every match.
    pub pairs: Vec<(usize, usize)>,
}

/// Matches planted to detected communities by overlap.
///
/// A pair is eligible when the detected set holds more than half of the
/// planted set. Eligible pairs are taken greedily by decreasing overlap, each
/// side used at most once. With nothing detected, precision is 1 only when
/// nothing was planted either; with nothing planted, recall is 1.
pub fn match_and_score(planted: &[Vec<Label>], detected: &[Vec<Label>]) -> MatchScore {
    let mut owner: HashMap<Label, usize> = HashMap::new();
    for (p, set) in planted.iter().enumerate() {
        for &l in set {
            owner.insert(l, p);
        }
    }
    let mut candidates = Vec::new();
    for (d, set) in detected.iter().enumerate() {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for l in set {
            if let Some(&p) = owner.get(l) {
                *counts.entry(p).or_insert(0) += 1;
            }
        }
        for (p, overlap) in counts {
            if 2 * overlap > planted[p].len() {
                candidates.push((overlap, p, d));
            }
        }
    }
    candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut planted_used = vec![false; planted.len()];
    let mut detected_used = vec![false; detected.len()];
    let mut pairs = Vec::new();
    for (_, p, d) in candidates {
        if !planted_used[p] && !detected_used[d] {
            planted_used[p] = true;
            detected_used[d] = true;
            pairs.push((p, d));
        }
    }
    pairs.sort_unstable();

    let matched = pairs.len();
    let precision = match (detected.len(), planted.len()) {
        (0, 0) => 1.0,
        (0, _) => 0.0,
        (d, _) => matched as f64 / d as f64,
    };
    let recall = if planted.is_empty() {
        1.0
    } else {
        matched as f64 / planted.len() as f64
    };
    let f_measure = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    MatchScore {
        planted: planted.len(),
        detected: detected.len(),
        matched,
        precision,
        recall,
        f_measure,
        pairs,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub matched: usize,
    pub detected: usize,
    pub planted: usize,
    pub plant_size: usize,
    pub rng_seed: u64,
    pub edges_added: usize,
    /// Communities removed by the two cleaning passes.
    pub cleaned: [usize; 2],
    /// Timings of the detection run on the planted graph.
    pub timings: PhaseTimings,
    /// Total detection time per arc of the planted graph.
    pub per_arc: Duration,
}

/// Everything produced by one benchmark trial.
#[derive(Clone, Debug)]
pub struct BenchRun<T> {
    pub report: BenchReport,
    pub params: PdcParams<T>,
    pub spec: PlantSpec<T>,
    pub manifest: PlantManifest,
    pub planted_graph: Graph,
    pub cover: CoverResult<T>,
}

/// One trial of the planted-community protocol with default planning.
pub fn run_benchmark<T: Scalar>(g: &Graph, params: &PdcParams<T>, rng_seed: u64) -> Result<BenchReport> {
    Ok(run_benchmark_with(g, params, rng_seed, &PlanOptions::default())?.report)
}

/// One trial of the planted-community protocol.
///
/// Plants are sized from the original host. Cleaning and detection both use
/// `q` equal to the plant size together with the density, radius and
/// `delta_low` of `params`; `params.q` itself is not used.
pub fn run_benchmark_with<T: Scalar>(
    g: &Graph,
    params: &PdcParams<T>,
    rng_seed: u64,
    opts: &PlanOptions,
) -> Result<BenchRun<T>> {
    params.validate()?;
    let spec = plan_plants_with(g, params.delta, opts)?.with_seed(rng_seed);
    let detect = PdcParams {
        q: spec.community_size,
        ..*params
    };
    detect.validate()?;

    let (residual, cleaned) = two_pass_clean(g, &detect)?;
    let (planted_graph, manifest) = plant(&residual, &spec)?;
    let cover = core_and_peel(&planted_graph, &detect)?;

    let detected: Vec<Vec<Label>> = cover
        .node_sets()
        .map(|s| planted_graph.labels_of(s))
        .collect();
    let score = match_and_score(&manifest.planted, &detected);
    let arcs = planted_graph.arc_count().max(1) as u32;
    let report = BenchReport {
        precision: score.precision,
        recall: score.recall,
        f_measure: score.f_measure,
        matched: score.matched,
        detected: score.detected,
        planted: score.planted,
        plant_size: spec.community_size,
        rng_seed,
        edges_added: manifest.edges_added,
        cleaned,
        timings: cover.timings,
        per_arc: cover.timings.total() / arcs,
    };
    Ok(BenchRun {
        report,
        params: detect,
        spec,
        manifest,
        planted_graph,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{clique_pairs, erdos_renyi};
    use crate::Exact;
    use proptest::prelude::*;

    /// A graph with the given node and undirected edge counts: a cycle plus
    /// chords, enough to pin the arcs-per-node ratio.
    fn graph_with_counts(nodes: usize, edges: usize) -> Graph {
        let mut pairs = Vec::with_capacity(edges);
        let mut step = 1;
        'outer: loop {
            for u in 0..nodes {
                if pairs.len() == edges {
                    break 'outer;
                }
                pairs.push((u as Node, ((u + step) % nodes) as Node));
            }
            step += 1;
        }
        let g = Graph::from_pairs(nodes, &pairs);
        assert_eq!(g.edge_count(), edges);
        g
    }

    #[test]
    fn plan_matches_published_embedding_counts() {
        // Host sizes of the AS graph rows: 6474 nodes / 25144 arcs, and the
        // large AS graph at 1696415 nodes / 22190596 arcs.
        let as2000 = graph_with_counts(6474, 12572);
        let s = plan_plants(&as2000, 1.0).unwrap();
        assert_eq!((s.community_size, s.num_communities), (5, 25));
        let s = plan_plants(&as2000, 0.7).unwrap();
        assert_eq!((s.community_size, s.num_communities), (7, 18));
        let s = plan_plants(&as2000, Exact::new(7, 10)).unwrap();
        assert_eq!((s.community_size, s.num_communities), (7, 18));

        // Only node and arc counts enter the plan, so the big host is
        // checked through the target-degree override.
        let small = graph_with_counts(1_696_415 / 100, 1_000);
        let opts = PlanOptions {
            target_degree: Some((22_190_596f64 / 1_696_415f64).round() as usize),
            ..PlanOptions::default()
        };
        let s = plan_plants_with(&small, 1.0, &opts).unwrap();
        assert_eq!(s.community_size, 14);
        let m = (0.02 * 1_696_415f64 / 14.0).floor() as usize;
        assert_eq!(m, 2423);
    }

    #[test]
    fn plan_rejects_tiny_graphs() {
        assert!(plan_plants(&Graph::empty(), 1.0).is_err());
        let g = graph_with_counts(20, 40);
        assert!(matches!(plan_plants(&g, 1.0), Err(Error::Plant(_))));
        let edgeless = Graph::from_pairs(100, &[]);
        assert!(plan_plants(&edgeless, 1.0).is_err());
    }

    #[test]
    fn plant_cliques_on_edgeless_host() {
        let g = Graph::from_pairs(100, &[]);
        let spec = PlantSpec {
            community_size: 5,
            target_density: 1.0,
            num_communities: 4,
            rng_seed: 3,
            shape: PlantShape::Density,
        };
        let (h, manifest) = plant(&g, &spec).unwrap();
        assert_eq!(manifest.edges_added, 4 * 10);
        assert_eq!(h.edge_count(), 40);
        for set in &manifest.planted {
            let nodes = h.nodes_of_labels(set);
            assert_eq!(nodes.len(), 5);
            assert_eq!(h.density::<f64>(&nodes).unwrap(), 1.0);
        }
        let (_, again) = plant(&g, &spec).unwrap();
        assert_eq!(manifest, again);
        let (_, other) = plant(&g, &spec.with_seed(4)).unwrap();
        assert_ne!(manifest.planted, other.planted);
    }

    #[test]
    fn plant_reuses_existing_edges() {
        let all: Vec<Node> = (0..30).collect();
        let g = Graph::from_pairs(30, &clique_pairs(&all[..20]));
        let spec = PlantSpec {
            community_size: 6,
            target_density: 0.8,
            num_communities: 5,
            rng_seed: 1,
            shape: PlantShape::Density,
        };
        let (h, manifest) = plant(&g, &spec).unwrap();
        // ceil(0.8 * 15) = 12 edges per set without overlap.
        assert!(manifest.edges_added < 5 * 12);
        assert_eq!(h.edge_count(), g.edge_count() + manifest.edges_added);
        let labels: Vec<Label> = manifest.planted.concat();
        assert_eq!(NodeSet::new(labels.iter().map(|&l| l as Node)).len(), 30);
        for set in &manifest.planted {
            assert!(h.density::<f64>(&h.nodes_of_labels(set)).unwrap() >= 0.8);
        }
    }

    proptest! {
        #[test]
        fn quasi_clique_plants_meet_min_degree(
            seed in 0u64..1000,
            size in 3usize..14,
            tenths in 1u64..=10,
            host_p in 0.0f64..0.05,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = erdos_renyi(120, host_p, &mut rng);
            let spec = PlantSpec {
                community_size: size,
                target_density: Exact::new(tenths as i64, 10),
                num_communities: 3,
                rng_seed: seed,
                shape: PlantShape::QuasiClique,
            };
            let (h, manifest) = plant(&g, &spec).unwrap();
            // ceil(tenths * (size - 1) / 10) in integers.
            let need = (tenths as usize * (size - 1)).div_ceil(10);
            for set in &manifest.planted {
                let nodes = h.nodes_of_labels(set);
                for u in nodes.iter() {
                    let inside = h.neighbors(u).iter().filter(|&&w| nodes.contains(w)).count();
                    prop_assert!(inside >= need);
                }
            }
        }
    }

    #[test]
    fn quasi_clique_rounds_degree_up() {
        let g = Graph::from_pairs(40, &[]);
        let spec = PlantSpec {
            community_size: 10,
            target_density: 0.5,
            num_communities: 4,
            rng_seed: 9,
            shape: PlantShape::QuasiClique,
        };
        let (h, manifest) = plant(&g, &spec).unwrap();
        for set in &manifest.planted {
            let nodes = h.nodes_of_labels(set);
            let min = nodes.iter().map(|u| h.degree(u)).min().unwrap();
            assert!(min >= 5, "min degree {min}");
        }
    }

    #[test]
    fn plant_rejects_oversized_specs() {
        let g = Graph::from_pairs(10, &[]);
        let spec = PlantSpec {
            community_size: 5,
            target_density: 1.0,
            num_communities: 3,
            rng_seed: 0,
            shape: PlantShape::Density,
        };
        assert!(matches!(plant(&g, &spec), Err(Error::Plant(_))));
    }

    #[test]
    fn two_pass_clean_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sparse = erdos_renyi(200, 0.005, &mut rng);
        let p = PdcParams::new(5, 1.0, 1).unwrap();
        let (g2, counts) = two_pass_clean(&sparse, &p).unwrap();
        assert_eq!(counts, [0, 0]);
        assert_eq!(g2, sparse);

        let mut pairs = clique_pairs(&[0, 1, 2, 3, 4]);
        pairs.extend(clique_pairs(&[5, 6, 7, 8, 9]));
        pairs.push((9, 10));
        let g = Graph::from_pairs(11, &pairs);
        let (g2, counts) = two_pass_clean(&g, &p).unwrap();
        assert_eq!(counts, [2, 0]);
        assert_eq!(g2.labels(), &[10]);
    }

    #[test]
    fn matching_examples() {
        let planted = vec![(1..=10).collect::<Vec<Label>>()];
        let hit = vec![[1, 2, 3, 4, 5, 6, 20, 21, 22, 23].to_vec()];
        let s = match_and_score(&planted, &hit);
        assert_eq!((s.matched, s.precision, s.recall), (1, 1.0, 1.0));

        let half = vec![[1, 2, 3, 4, 5, 20, 21, 22, 23, 24].to_vec()];
        let s = match_and_score(&planted, &half);
        assert_eq!((s.matched, s.recall, s.f_measure), (0, 0.0, 0.0));

        let planted: Vec<Vec<Label>> = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
        let detected: Vec<Vec<Label>> = vec![vec![1, 2], vec![4, 5, 6], vec![7, 8, 9, 10], vec![30, 31]];
        let s = match_and_score(&planted, &detected);
        assert_eq!(s.matched, 3);
        assert_eq!(s.precision, 0.75);
        assert_eq!(s.recall, 1.0);
        assert!((s.f_measure - 6.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn matching_is_injective() {
        // One detected set covers most of two planted sets.
        let planted: Vec<Vec<Label>> = vec![vec![1, 2, 3], vec![4, 5, 6, 7]];
        let detected: Vec<Vec<Label>> = vec![vec![1, 2, 4, 5, 6]];
        let s = match_and_score(&planted, &detected);
        assert_eq!(s.matched, 1);
        assert_eq!(s.pairs, vec![(1, 0)]);
        let none = match_and_score(&[], &[]);
        assert_eq!((none.precision, none.recall, none.f_measure), (1.0, 1.0, 1.0));
    }

    #[test]
    fn edgeless_host_gives_perfect_scores() {
        let g = Graph::from_pairs(500, &[]);
        let params = PdcParams::new(2, 1.0, 1).unwrap();
        let opts = PlanOptions {
            plant_size: Some(6),
            ..PlanOptions::default()
        };
        let run = run_benchmark_with(&g, &params, 17, &opts).unwrap();
        assert_eq!(run.report.planted, 1);
        assert_eq!(run.report.cleaned, [0, 0]);
        assert_eq!((run.report.precision, run.report.recall), (1.0, 1.0));

        let opts = PlanOptions {
            plant_size: Some(5),
            num_plants: Some(20),
            ..PlanOptions::default()
        };
        let run = run_benchmark_with(&g, &params, 17, &opts).unwrap();
        assert_eq!(run.report.planted, 20);
        assert_eq!(run.report.matched, 20);
        assert_eq!(run.report.f_measure, 1.0);
    }

    #[test]
    fn benchmark_is_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let g = crate::gen::chung_lu(1500, 5.0, 2.5, &mut rng);
        let params = PdcParams::new(2, 1.0, 1).unwrap();
        let a = run_benchmark_with(&g, &params, 5, &PlanOptions::default()).unwrap();
        let b = run_benchmark_with(&g, &params, 5, &PlanOptions::default()).unwrap();
        assert_eq!(a.manifest, b.manifest);
        assert_eq!(a.cover.communities, b.cover.communities);
        assert_eq!(
            (a.report.precision, a.report.recall, a.report.matched),
            (b.report.precision, b.report.recall, b.report.matched)
        );
        assert!(a.report.matched <= a.report.planted.min(a.report.detected));
    }
}
