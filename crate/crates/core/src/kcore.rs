//! Core decomposition, core counts and the seed visitation order.


use crate::graph::{Graph, Node};

/// Per-node core numbers, core counts, and the derived seed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core: Vec<u32>,
    pub core_count: Vec<u32>,
    pub seed_order: Vec<Node>,
}

impl CoreInfo {
    pub fn compute(g: &Graph) -> Self {
        let core = core_decomposition(g);
        let core_count = core_counts(g, &core);
        let seed_order = seed_order(&core, &core_count);
        CoreInfo {
            core,
            core_count,
            seed_order,
        }
    }

    #[inline]
    pub fn core_of(&self, v: Node) -> u32 {
        self.core[v as usize]
    }

    pub fn max_core(&self) -> u32 {
        self.core.iter().copied().max().unwrap_or(0)
    }
}

/// Bucket-based minimum-degree deletion (Batagelj & Zaversnik), O(|V| + |E|).
///
/// `vert` holds the nodes sorted by current degree, `bin[d]` is the first
/// position of degree `d` in `vert`, and `pos[v]` is v's position. Lowering a
/// neighbour's degree swaps it with the first node of its bucket and shifts
/// the bucket boundary by one.
pub fn core_decomposition(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    // Degree and bucket position share a slot: one cache line per neighbour.
    let mut slot: Vec<[u32; 2]> = g.nodes().map(|v| [g.degree(v) as u32, 0]).collect();
    let max_deg = slot.iter().map(|s| s[0]).max().unwrap() as usize;

    let mut bin = vec![0u32; max_deg + 1];
    for s in &slot {
        bin[s[0] as usize] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut vert = vec![0 as Node; n];
    {
        let mut next = bin.clone();
        for (v, s) in slot.iter_mut().enumerate() {
            let d = s[0] as usize;
            s[1] = next[d];
            vert[next[d] as usize] = v as Node;
            next[d] += 1;
        }
    }

    for i in 0..n {
        let v = vert[i];
        let dv = slot[v as usize][0];
        for &u in g.neighbors(v) {
            let [du, pu] = slot[u as usize];
            if du > dv {
                let pw = bin[du as usize];
                let w = vert[pw as usize];
                if u != w {
                    vert.swap(pu as usize, pw as usize);
                    slot[w as usize][1] = pu;
                }
                slot[u as usize] = [du - 1, pw];
                bin[du as usize] += 1;
            }
        }
    }
    slot.into_iter().map(|s| s[0]).collect()
}

/// Number of neighbours whose core number is at least the node's own.
pub fn core_counts(g: &Graph, core: &[u32]) -> Vec<u32> {
    g.nodes()
        .map(|v| {
            let cv = core[v as usize];
            g.neighbors(v)
                .iter()
                .filter(|&&u| core[u as usize] >= cv)
                .count() as u32
        })
        .collect()
}

/// Nodes by `(core, core_count)` descending, ties by ascending id.
///
/// Two stable counting sorts, core count first, so the cost is linear.
pub fn seed_order(core: &[u32], core_count: &[u32]) -> Vec<Node> {
    let ids: Vec<Node> = (0..core.len() as Node).collect();
    let by_count = counting_sort_desc(&ids, core_count);
    counting_sort_desc(&by_count, core)
}

/// Stable sort of `items` by `key[item]` descending.
fn counting_sort_desc(items: &[Node], key: &[u32]) -> Vec<Node> {
    let max = items.iter().map(|&v| key[v as usize]).max().unwrap_or(0) as usize;
    let mut start = vec![0usize; max + 2];
    for &v in items {
        start[max - key[v as usize] as usize + 1] += 1;
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    let mut out = vec![0 as Node; items.len()];
    for &v in items {
        let slot = &mut start[max - key[v as usize] as usize];
        out[*slot] = v;
        *slot += 1;
    }
    out
}
