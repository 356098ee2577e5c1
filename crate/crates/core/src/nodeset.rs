use std::sync::OnceLock;

use crate::graph::{Graph, Node};

/// A set of internal node ids, kept sorted and duplicate-free.
///
/// The induced edge count is computed on first request against the graph
/// passed in and cached afterwards, so a `NodeSet` should only be measured
/// against the graph it was built for.
#[derive(Clone, Debug, Default)]
pub struct NodeSet {
    members: Vec<Node>,
    induced_edges: OnceLock<usize>,
}

impl NodeSet {
    pub fn new<I: IntoIterator<Item = Node>>(nodes: I) -> Self {
        let mut members: Vec<Node> = nodes.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self::from_sorted(members)
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(members: Vec<Node>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self {
            members,
            induced_edges: OnceLock::new(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: Node) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    #[inline]
    pub fn as_slice(&self) -> &[Node] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Node> + '_ {
        self.members.iter().copied()
    }

    pub fn into_vec(self) -> Vec<Node> {
        self.members
    }

    /// Number of edges of `g` with both endpoints in the set.
    pub fn induced_edges(&self, g: &Graph) -> usize {
        *self
            .induced_edges
            .get_or_init(|| g.induced_edge_count(&self.members))
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        intersection_size(&self.members, &other.members) == 0
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.members, &other.members);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        NodeSet::from_sorted(out)
    }
}

impl PartialEq for NodeSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for NodeSet {}

impl FromIterator<Node> for NodeSet {
    fn from_iter<I: IntoIterator<Item = Node>>(iter: I) -> Self {
        NodeSet::new(iter)
    }
}

/// Size of the intersection of two sorted, duplicate-free slices.
///
/// Switches from a linear merge to binary search when one side is much
/// shorter than the other.
pub fn intersection_size<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.is_empty() {
        return 0;
    }
    if small.len() * 16 < large.len() {
        let mut rest = large;
        let mut count = 0;
        for x in small {
            match rest.binary_search(x) {
                Ok(i) => {
                    count += 1;
                    rest = &rest[i + 1..];
                }
                Err(i) => rest = &rest[i..],
            }
            if rest.is_empty() {
                break;
            }
        }
        return count;
    }
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < small.len() && j < large.len() {
        match small[i].cmp(&large[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn new_sorts_and_dedups() {
        let s = NodeSet::new([5, 1, 3, 1, 5]);
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(s.contains(3));
        assert!(!s.contains(2));
    }

    #[test]
    fn union_and_disjoint() {
        let a = NodeSet::new([1, 2, 3]);
        let b = NodeSet::new([4, 5]);
        assert!(a.is_disjoint(&b));
        assert_eq!(a.union(&b).as_slice(), &[1, 2, 3, 4, 5]);
        let c = NodeSet::new([3, 9]);
        assert!(!a.is_disjoint(&c));
        assert_eq!(a.union(&c).len(), 4);
    }

    #[test]
    fn cached_edge_count_matches_recount() {
        let g = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]);
        let s = NodeSet::new([0, 1, 2]);
        assert_eq!(s.induced_edges(&g), 3);
        assert_eq!(s.induced_edges(&g), g.induced_edge_count(s.as_slice()));
    }

    proptest! {
        #[test]
        fn intersection_matches_hashset(
            a in proptest::collection::btree_set(0u32..500, 0..60),
            b in proptest::collection::btree_set(0u32..500, 0..400),
        ) {
            let av: Vec<u32> = a.iter().copied().collect();
            let bv: Vec<u32> = b.iter().copied().collect();
            let expected = a.intersection(&b).count();
            prop_assert_eq!(intersection_size(&av, &bv), expected);
            prop_assert_eq!(intersection_size(&bv, &av), expected);
        }
    }
}
