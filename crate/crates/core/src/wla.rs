//! Weighted level ancestors on suffix trees, weighted by string depth.
//!
//! The tree is cut into heavy paths: starting from a head, a path continues
//! into the child whose subtree holds at least half of the current node's
//! subtree nodes, and stops when no such child exists. Every remaining child
//! heads a path of its own. Paths form a path tree of logarithmic height,
//! since leaving a path at least halves the subtree size.
//!
//! A query `wla(v, q)` climbs the path tree from the path holding `v` to the
//! highest path whose head still weighs at least `q`. The answer is either
//! that head or the lightest node weighing at least `q` on the parent path,
//! found by binary search over the parent path's weights.

use crate::error::{Error, Result};
use crate::suffix::{NodeId, SuffixTree};

/// One heavy path, as reported by [`Wla::paths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavyPath {
    /// Nodes from head (shallowest) to tail.
    pub nodes: Vec<NodeId>,
    /// String depths of `nodes`, strictly increasing.
    pub weights: Vec<usize>,
    /// Path containing the parent of the head, with the parent's offset there.
    pub parent: Option<(usize, usize)>,
}

// Paths are stored back to back, head first. A non-head entry links to its
// path's head; a head links, flagged with HEAD, to the entry its path hangs
// from. A query thus touches about two entries per path it climbs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    weight: u32,
    link: u32,
    leaves: u32,
}

const HEAD: u32 = 1 << 31;
const NONE: u32 = HEAD - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wla {
    entries: Vec<Entry>,
    // tree node of each entry
    nodes: Vec<u32>,
    path_start: Vec<u32>,
    // per node: index of its entry
    slot: Vec<u32>,
    // per leaf rank (0-based): index of the leaf's entry
    by_rank: Vec<u32>,
}

impl Wla {
    pub fn build(tree: &SuffixTree) -> Self {
        let n = tree.num_nodes();
        // Subtree node counts, accumulated in reverse preorder.
        let order = preorder(tree);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = tree.parent(v) {
                size[p.0] += size[v.0];
            }
        }

        assert!(n < NONE as usize, "tree too large");
        let mut entries = Vec::with_capacity(n);
        let mut nodes = Vec::with_capacity(n);
        let mut path_start = Vec::new();
        let mut slot = vec![NONE; n];
        let mut heads: Vec<(NodeId, u32)> = vec![(tree.root(), NONE)];
        while let Some((head, attach)) = heads.pop() {
            let first = entries.len() as u32;
            path_start.push(first);
            let mut cur = Some(head);
            while let Some(u) = cur {
                let at = entries.len() as u32;
                slot[u.0] = at;
                nodes.push(u.0 as u32);
                entries.push(Entry {
                    weight: weight(tree.string_depth(u)),
                    link: if at == first { HEAD | attach } else { first },
                    leaves: tree.leaf_count(u) as u32,
                });
                cur = None;
                for &c in tree.children(u) {
                    if 2 * size[c.0] >= size[u.0] {
                        cur = Some(c);
                    } else {
                        heads.push((c, at));
                    }
                }
            }
        }
        path_start.push(entries.len() as u32);
        let by_rank = (1..=tree.num_leaves()).map(|r| slot[tree.leaf(r).0]).collect();
        Wla {
            entries,
            nodes,
            path_start,
            slot,
            by_rank,
        }
    }

    /// The heavy path decomposition, in construction order.
    pub fn paths(&self) -> Vec<HeavyPath> {
        self.path_start
            .windows(2)
            .map(|w| {
                let range = w[0] as usize..w[1] as usize;
                let run = &self.entries[range.clone()];
                let attach = run[0].link & !HEAD;
                HeavyPath {
                    nodes: self.nodes[range].iter().map(|&v| NodeId(v as usize)).collect(),
                    weights: run.iter().map(|e| e.weight as usize).collect(),
                    parent: (attach != NONE).then(|| self.locate(attach)),
                }
            })
            .collect()
    }

    fn locate(&self, at: u32) -> (usize, usize) {
        let path = self.path_start.partition_point(|&s| s <= at) - 1;
        (path, (at - self.path_start[path]) as usize)
    }

    /// Index of the heavy path holding `v` and `v`'s offset on it.
    pub fn path_of(&self, v: NodeId) -> (usize, usize) {
        self.locate(self.slot[v.0])
    }

    /// Number of heavy paths met on the way from `v` up to the root.
    pub fn paths_above(&self, v: NodeId) -> usize {
        let mut at = self.slot[v.0] as usize;
        let mut count = 1;
        while let Some(up) = self.attach(self.head(at)) {
            at = up;
            count += 1;
        }
        count
    }

    /// The shallowest ancestor-or-self of `v` with string depth `>= q`, or
    /// `None` when `v` itself is lighter than `q`.
    pub fn query(&self, v: NodeId, q: usize) -> Result<Option<NodeId>> {
        if v.0 >= self.slot.len() {
            return Err(Error::NodeNotInTree(v.0));
        }
        Ok(self.query_unchecked(v, q))
    }

    pub(crate) fn query_unchecked(&self, v: NodeId, q: usize) -> Option<NodeId> {
        self.climb(self.slot[v.0] as usize, q)
            .map(|e| NodeId(self.nodes[e] as usize))
    }

    /// Leaf count of `wla(leaf(rank), q)` for a 1-based leaf rank, or 0 when
    /// the leaf is lighter than `q`.
    pub(crate) fn leaves_above_rank(&self, rank: usize, q: usize) -> usize {
        self.climb(self.by_rank[rank - 1] as usize, q)
            .map_or(0, |e| self.entries[e].leaves as usize)
    }

    fn climb(&self, mut at: usize, q: usize) -> Option<usize> {
        let Ok(q) = u32::try_from(q) else {
            return None;
        };
        if self.entries[at].weight < q {
            return None;
        }
        loop {
            let h = self.head(at);
            if self.entries[h].weight < q {
                // Answer lies on this path, strictly below the head.
                return Some(h + self.entries[h..=at].partition_point(|e| e.weight < q));
            }
            match self.attach(h) {
                Some(up) if self.entries[up].weight >= q => at = up,
                _ => return Some(h),
            }
        }
    }

    fn head(&self, at: usize) -> usize {
        let link = self.entries[at].link;
        if link & HEAD != 0 {
            at
        } else {
            link as usize
        }
    }

    fn attach(&self, head: usize) -> Option<usize> {
        let up = self.entries[head].link & !HEAD;
        (up != NONE).then_some(up as usize)
    }
}

fn weight(depth: usize) -> u32 {
    u32::try_from(depth).expect("string depth fits in u32")
}

fn preorder(tree: &SuffixTree) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(tree.num_nodes());
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        out.push(v);
        stack.extend(tree.children(v).iter().rev());
    }
    out
}
