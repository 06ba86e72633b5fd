use super::{GsaIndex, LcpArray, SuffixArray};

/// Handle of a node inside one [`SuffixTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Node {
    pub(crate) parent: Option<NodeId>,
    pub(crate) children: Vec<NodeId>,
    pub(crate) depth: usize,
    // 0-based inclusive rank interval of the leaves below
    pub(crate) left: usize,
    pub(crate) right: usize,
    pub(crate) leaf: bool,
}

/// Suffix tree whose leaves are the suffixes of an underlying (generalized)
/// suffix array, left to right in rank order.
///
/// A leaf's string depth counts its terminating sentinel, so it is one more
/// than the length of its suffix. This keeps depths strictly increasing even
/// when a suffix is a prefix of another suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixTree {
    pub(crate) nodes: Vec<Node>,
    pub(crate) leaf_of_rank: Vec<NodeId>,
}

impl SuffixTree {
    pub const ROOT: NodeId = NodeId(0);

    /// Tree of a single text from its suffix and LCP arrays.
    pub fn build(sa: &SuffixArray, lcp: &LcpArray) -> Self {
        let len = sa.len();
        Self::from_lcp(&lcp.lcp, |r| len - sa.sa[r])
    }

    /// Generalized suffix tree over every suffix of a corpus.
    pub fn build_generalized(gsa: &GsaIndex) -> Self {
        Self::from_lcp(&gsa.lcp.lcp, |r| gsa.suffix_len(r + 1))
    }

    /// Left-to-right interval stacking. `suffix_len(r)` is the text length
    /// of the 0-based rank-`r` suffix.
    fn from_lcp(lcp: &[usize], suffix_len: impl Fn(usize) -> usize) -> Self {
        let n = lcp.len();
        let mut nodes = Vec::with_capacity(2 * n + 1);
        nodes.push(Node {
            parent: None,
            children: Vec::new(),
            depth: 0,
            left: 0,
            right: n.saturating_sub(1),
            leaf: false,
        });
        let mut leaf_of_rank = Vec::with_capacity(n);
        let mut stack: Vec<usize> = vec![0];

        for (r, &l) in lcp.iter().enumerate() {
            let h = if r == 0 { 0 } else { l };
            let mut last = None;
            while nodes[*stack.last().unwrap()].depth > h {
                let v = stack.pop().unwrap();
                nodes[v].right = r - 1;
                last = Some(v);
            }
            let top = *stack.last().unwrap();
            if nodes[top].depth < h {
                // The last closed node hangs below a branching point at depth h.
                let below = last.expect("a deeper node was closed");
                let v = nodes.len();
                nodes.push(Node {
                    parent: Some(NodeId(top)),
                    children: vec![NodeId(below)],
                    depth: h,
                    left: nodes[below].left,
                    right: 0,
                    leaf: false,
                });
                let slot = nodes[top].children.last_mut().unwrap();
                debug_assert_eq!(*slot, NodeId(below));
                *slot = NodeId(v);
                nodes[below].parent = Some(NodeId(v));
                stack.push(v);
            }
            let top = *stack.last().unwrap();
            let leaf = nodes.len();
            nodes.push(Node {
                parent: Some(NodeId(top)),
                children: Vec::new(),
                depth: suffix_len(r) + 1,
                left: r,
                right: r,
                leaf: true,
            });
            nodes[top].children.push(NodeId(leaf));
            leaf_of_rank.push(NodeId(leaf));
            stack.push(leaf);
        }
        while let Some(v) = stack.pop() {
            nodes[v].right = n.saturating_sub(1);
        }
        SuffixTree {
            nodes,
            leaf_of_rank,
        }
    }

    pub fn root(&self) -> NodeId {
        Self::ROOT
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_leaves(&self) -> usize {
        self.leaf_of_rank.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.0 < self.nodes.len()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.0].parent
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v.0].children
    }

    /// Symbols on the root path; for leaves this includes the sentinel.
    pub fn string_depth(&self, v: NodeId) -> usize {
        self.nodes[v.0].depth
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v.0].leaf
    }

    /// 1-based inclusive rank interval `[left(u), right(u)]`.
    pub fn leaf_range(&self, v: NodeId) -> (usize, usize) {
        let n = &self.nodes[v.0];
        (n.left + 1, n.right + 1)
    }

    pub fn leaf_count(&self, v: NodeId) -> usize {
        let n = &self.nodes[v.0];
        n.right + 1 - n.left
    }

    /// Leaf of the suffix with the given 1-based rank.
    pub fn leaf(&self, rank: usize) -> NodeId {
        self.leaf_of_rank[rank - 1]
    }

    /// 1-based rank of a leaf's suffix.
    pub fn leaf_rank(&self, v: NodeId) -> Option<usize> {
        let n = &self.nodes[v.0];
        n.leaf.then_some(n.left + 1)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tree(text: &[u8]) -> (SuffixArray, SuffixTree) {
        let sa = SuffixArray::build(text);
        let lcp = LcpArray::build(text, &sa);
        let t = SuffixTree::build(&sa, &lcp);
        (sa, t)
    }

    #[test]
    fn abab_shape() {
        let (_, t) = tree(b"abab");
        let kids = t.children(t.root());
        assert_eq!(kids.len(), 2);
        let (ab, b) = (kids[0], kids[1]);
        assert_eq!(t.string_depth(ab), 2);
        assert_eq!(t.leaf_range(ab), (1, 2));
        assert_eq!(t.string_depth(b), 1);
        assert_eq!(t.leaf_range(b), (3, 4));
        assert_eq!(t.leaf_count(t.root()), 4);
    }

    #[test]
    fn single_leaf() {
        let (_, t) = tree(b"a");
        assert_eq!(t.num_nodes(), 2);
        assert_eq!(t.leaf_count(t.root()), 1);
        assert!(t.is_leaf(t.children(t.root())[0]));
    }

    #[test]
    fn aaa_chain() {
        let (sa, t) = tree(b"aaa");
        let a = t.children(t.root())[0];
        assert_eq!((t.string_depth(a), t.leaf_count(a)), (1, 3));
        let aa = *t.children(a).iter().find(|&&c| !t.is_leaf(c)).unwrap();
        assert_eq!((t.string_depth(aa), t.leaf_count(aa)), (2, 2));
        let leaf = t.leaf(sa.rank(1));
        assert_eq!(t.parent(leaf), Some(aa));
        assert_eq!(t.string_depth(leaf), 4);
    }

    fn check_invariants(sa: &SuffixArray, t: &SuffixTree) {
        let mut positions = Vec::new();
        for v in t.nodes() {
            let kids = t.children(v);
            if t.is_leaf(v) {
                assert!(kids.is_empty());
                positions.push(sa.position(t.leaf_rank(v).unwrap()));
                continue;
            }
            if v != t.root() {
                assert!(kids.len() >= 2);
            }
            let (l, r) = t.leaf_range(v);
            let mut next = l;
            let mut total = 0;
            for &c in kids {
                assert_eq!(t.parent(c), Some(v));
                assert!(t.string_depth(c) > t.string_depth(v));
                let (cl, cr) = t.leaf_range(c);
                assert_eq!(cl, next);
                next = cr + 1;
                total += t.leaf_count(c);
            }
            assert_eq!(next, r + 1);
            assert_eq!(total, t.leaf_count(v));
        }
        positions.sort();
        assert_eq!(positions, (1..=sa.len()).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn structural_invariants(text in proptest::collection::vec(b'a'..=b'c', 1..120)) {
            let (sa, t) = tree(&text);
            check_invariants(&sa, &t);
        }
    }
}
