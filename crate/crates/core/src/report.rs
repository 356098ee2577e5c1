//! Machine-readable run and benchmark reports.
//!
//! Node lists are always original labels. Timing blocks are optional so that
//! reproducibility checks can compare reports byte for byte.

use serde::{Deserialize, Serialize};

use crate::bench::BenchReport;
use crate::graph::Graph;
use crate::kcore::CoreInfo;
use crate::pdc::{CoverResult, PdcParams, PhaseTimings};
use crate::scalar::Scalar;

/// Node, arc and edge counts of a graph. Arcs count each undirected edge
/// twice, matching how SNAP listings report directed pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub dataset: String,
    pub nodes: usize,
    pub arcs: usize,
    pub edges: usize,
    /// `arcs / nodes`.
    pub ratio: f64,
    pub max_degree: usize,
    pub max_core: u32,
}

impl GraphStats {
    pub fn of(dataset: &str, g: &Graph) -> Self {
        let nodes = g.node_count();
        GraphStats {
            dataset: dataset.to_string(),
            nodes,
            arcs: g.arc_count(),
            edges: g.edge_count(),
            ratio: if nodes == 0 { 0.0 } else { g.arc_count() as f64 / nodes as f64 },
            max_degree: g.max_degree(),
            max_core: CoreInfo::compute(g).max_core(),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "dataset\t{}\nnodes\t{}\narcs\t{}\nedges\t{}\nratio\t{:.9}\nmax_degree\t{}\nmax_core\t{}\n",
            self.dataset, self.nodes, self.arcs, self.edges, self.ratio, self.max_degree, self.max_core
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub q: usize,
    pub delta: f64,
    pub radius: u8,
    pub delta_low: f64,
}

impl<T: Scalar> From<&PdcParams<T>> for ParamsEcho {
    fn from(p: &PdcParams<T>) -> Self {
        ParamsEcho {
            q: p.q,
            delta: p.delta.to_f64(),
            radius: p.radius,
            delta_low: p.delta_low.to_f64(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommunityReport {
    pub nodes: Vec<u64>,
    pub size: usize,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub phase1_s: f64,
    pub phase2_s: f64,
    pub phase3_s: f64,
    pub total_s: f64,
    pub per_arc_s: f64,
}

impl TimingReport {
    pub fn new(t: &PhaseTimings, arcs: usize) -> Self {
        let total = t.total().as_secs_f64();
        TimingReport {
            phase1_s: t.phase1.as_secs_f64(),
            phase2_s: t.phase2.as_secs_f64(),
            phase3_s: t.phase3.as_secs_f64(),
            total_s: total,
            per_arc_s: if arcs == 0 { 0.0 } else { total / arcs as f64 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedCounts {
    pub seeds_examined: usize,
    pub seeds_passed_prefilter: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: String,
    pub params: ParamsEcho,
    pub communities: Vec<CommunityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingReport>,
    pub counts: SeedCounts,
}

impl RunReport {
    pub fn new<T: Scalar>(
        dataset: &str,
        g: &Graph,
        params: &PdcParams<T>,
        cover: &CoverResult<T>,
        with_timings: bool,
    ) -> Self {
        let communities = cover
            .communities
            .iter()
            .map(|c| CommunityReport {
                nodes: g.labels_of(&c.nodes),
                size: c.size(),
                density: c.density.to_f64(),
            })
            .collect();
        RunReport {
            dataset: dataset.to_string(),
            params: params.into(),
            communities,
            timings: with_timings.then(|| TimingReport::new(&cover.timings, g.arc_count())),
            counts: SeedCounts {
                seeds_examined: cover.seeds_examined,
                seeds_passed_prefilter: cover.seeds_passed_prefilter,
            },
        }
    }

    /// One line per community: index, size, density, comma-separated labels.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("community\tsize\tdensity\tnodes\n");
        for (i, c) in self.communities.iter().enumerate() {
            let nodes: Vec<String> = c.nodes.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!("{i}\t{}\t{:.6}\t{}\n", c.size, c.density, nodes.join(",")));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub dataset: String,
    pub params: ParamsEcho,
    pub planted: usize,
    pub detected: usize,
    pub matched: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub plant_size: usize,
    pub num_embedded: usize,
    pub rng_seed: u64,
    pub edges_added: usize,
    pub cleaned: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingReport>,
}

impl BenchRow {
    pub fn new<T: Scalar>(
        dataset: &str,
        params: &PdcParams<T>,
        report: &BenchReport,
        arcs: usize,
        with_timings: bool,
    ) -> Self {
        BenchRow {
            dataset: dataset.to_string(),
            params: params.into(),
            planted: report.planted,
            detected: report.detected,
            matched: report.matched,
            precision: report.precision,
            recall: report.recall,
            f_measure: report.f_measure,
            plant_size: report.plant_size,
            num_embedded: report.planted,
            rng_seed: report.rng_seed,
            edges_added: report.edges_added,
            cleaned: report.cleaned,
            timings: with_timings.then(|| TimingReport::new(&report.timings, arcs)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchAggregate {
    pub trials: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl BenchAggregate {
    /// Arithmetic means over the rows.
    pub fn of(rows: &[BenchRow]) -> Self {
        let n = rows.len().max(1) as f64;
        BenchAggregate {
            trials: rows.len(),
            precision: rows.iter().map(|r| r.precision).sum::<f64>() / n,
            recall: rows.iter().map(|r| r.recall).sum::<f64>() / n,
            f_measure: rows.iter().map(|r| r.f_measure).sum::<f64>() / n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub dataset: String,
    pub trials: Vec<BenchRow>,
    pub aggregate: BenchAggregate,
}

pub const BENCH_TSV_COLUMNS: [&str; 8] = [
    "dataset",
    "size",
    "density",
    "radius",
    "precision",
    "recall",
    "fmeasure",
    "num_embedded",
];

impl BenchSummary {
    pub fn new(dataset: &str, trials: Vec<BenchRow>) -> Self {
        let aggregate = BenchAggregate::of(&trials);
        BenchSummary {
            dataset: dataset.to_string(),
            trials,
            aggregate,
        }
    }

    /// One row per trial, then a `mean` row.
    pub fn to_tsv(&self) -> String {
        let mut out = BENCH_TSV_COLUMNS.join("\t");
        out.push('\n');
        for r in &self.trials {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{:.9}\t{:.9}\t{:.9}\t{}\n",
                r.dataset,
                r.plant_size,
                r.params.delta,
                r.params.radius,
                r.precision,
                r.recall,
                r.f_measure,
                r.num_embedded
            ));
        }
        if let Some(first) = self.trials.first() {
            let a = &self.aggregate;
            let embedded = self.trials.iter().map(|r| r.num_embedded).sum::<usize>() as f64
                / self.trials.len() as f64;
            out.push_str(&format!(
                "mean\t{}\t{}\t{}\t{:.9}\t{:.9}\t{:.9}\t{}\n",
                first.plant_size,
                first.params.delta,
                first.params.radius,
                a.precision,
                a.recall,
                a.f_measure,
                embedded
            ));
        }
        out
    }
}
