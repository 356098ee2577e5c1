//! Small graph builders and seeded random generators for tests and benchmarks.

use rand::Rng;

use crate::graph::{Graph, Node};

pub fn clique_pairs(nodes: &[Node]) -> Vec<(Node, Node)> {
    let mut out = Vec::with_capacity(nodes.len() * nodes.len().saturating_sub(1) / 2);
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            out.push((u, v));
        }
    }
    out
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path_pairs(n: usize) -> Vec<(Node, Node)> {
    (1..n as Node).map(|v| (v - 1, v)).collect()
}

pub fn cycle_pairs(n: usize) -> Vec<(Node, Node)> {
    let mut out = path_pairs(n);
    if n > 2 {
        out.push((n as Node - 1, 0));
    }
    out
}

/// Star with centre 0 and leaves `1..=leaves`.
pub fn star_pairs(leaves: usize) -> Vec<(Node, Node)> {
    (1..=leaves as Node).map(|v| (0, v)).collect()
}

/// G(n, p) using geometric skips, so sparse graphs cost O(n + m).
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    if p > 0.0 && n > 1 {
        if p >= 1.0 {
            let all: Vec<Node> = (0..n as Node).collect();
            return Graph::from_pairs(n, &clique_pairs(&all));
        }
        let log_q = (1.0 - p).ln();
        let (mut v, mut w): (i64, i64) = (1, -1);
        let n = n as i64;
        while v < n {
            let r: f64 = rng.gen::<f64>();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v && v < n {
                w -= v;
                v += 1;
            }
            if v < n {
                pairs.push((w as Node, v as Node));
            }
        }
    }
    Graph::from_pairs(n, &pairs)
}

/// Chung-Lu graph with power-law expected degrees.
///
/// Weights follow `w_i ∝ (i + i0)^(-1/(exponent-1))` scaled to the requested
/// average degree; each of the `n * avg_degree / 2` edge draws picks both
/// endpoints proportionally to weight. Duplicates and loops are dropped, so
/// the realised average degree is slightly below the target.
pub fn chung_lu<R: Rng + ?Sized>(n: usize, avg_degree: f64, exponent: f64, rng: &mut R) -> Graph {
    if n < 2 {
        return Graph::from_pairs(n, &[]);
    }
    let alpha = 1.0 / (exponent - 1.0);
    let offset = 10.0_f64;
    let weights: Vec<f64> = (0..n).map(|i| (i as f64 + offset).powf(-alpha)).collect();
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0;
    for w in &weights {
        acc += w;
        cumulative.push(acc);
    }
    let draws = (n as f64 * avg_degree / 2.0).round() as usize;
    let pick = |rng: &mut R| {
        let x = rng.gen::<f64>() * acc;
        cumulative.partition_point(|&c| c < x).min(n - 1) as Node
    };
    let pairs: Vec<(Node, Node)> = (0..draws).map(|_| (pick(rng), pick(rng))).collect();
    Graph::from_pairs(n, &pairs)
}

/// Random graph with exactly `m` distinct edges (or all pairs if fewer exist).
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let max = n * n.saturating_sub(1) / 2;
    let m = m.min(max);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);
    while pairs.len() < m {
        let u = rng.gen_range(0..n) as Node;
        let v = rng.gen_range(0..n) as Node;
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if seen.insert(e) {
            pairs.push(e);
        }
    }
    Graph::from_pairs(n, &pairs)
}
