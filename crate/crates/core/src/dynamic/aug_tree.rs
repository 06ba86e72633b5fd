//! Leaf-oriented AVL tree over the Euler-tour list.
//!
//! Leaves are list elements in list order. Suffix leaves carry an LCP value;
//! other elements carry none. Every node aggregates the leftmost and
//! rightmost suffix leaves below it and the minimum LCP among them.

use super::order_list::ElemId;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Aggregate {
    pub leftmost: Option<ElemId>,
    pub rightmost: Option<ElemId>,
    /// `usize::MAX` when the subtree holds no suffix leaf.
    pub min_lcp: usize,
}

impl Aggregate {
    const EMPTY: Aggregate = Aggregate {
        leftmost: None,
        rightmost: None,
        min_lcp: usize::MAX,
    };

    fn leaf(elem: ElemId, lcp: Option<usize>) -> Self {
        match lcp {
            Some(v) => Aggregate {
                leftmost: Some(elem),
                rightmost: Some(elem),
                min_lcp: v,
            },
            None => Aggregate::EMPTY,
        }
    }

    fn join(a: &Aggregate, b: &Aggregate) -> Self {
        Aggregate {
            leftmost: a.leftmost.or(b.leftmost),
            rightmost: b.rightmost.or(a.rightmost),
            min_lcp: a.min_lcp.min(b.min_lcp),
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    parent: u32,
    left: u32,
    right: u32,
    height: u32,
    // leaves only
    elem: u32,
    lcp: Option<usize>,
    agg: Aggregate,
}

#[derive(Debug, Clone, Default)]
pub struct AugTree {
    nodes: Vec<Node>,
    root: u32,
    // list element -> leaf node
    leaf_of: Vec<u32>,
}

impl AugTree {
    pub fn new() -> Self {
        AugTree {
            root: NIL,
            ..Default::default()
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_leaves(&self) -> usize {
        self.leaf_of.iter().filter(|&&x| x != NIL).count()
    }

    pub fn height(&self) -> usize {
        if self.root == NIL {
            0
        } else {
            self.nodes[self.root as usize].height as usize
        }
    }

    pub fn root_aggregate(&self) -> Aggregate {
        if self.root == NIL {
            Aggregate::EMPTY
        } else {
            self.nodes[self.root as usize].agg
        }
    }

    fn is_leaf(&self, v: u32) -> bool {
        self.nodes[v as usize].left == NIL
    }

    fn new_leaf(&mut self, elem: ElemId, lcp: Option<usize>) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            parent: NIL,
            left: NIL,
            right: NIL,
            height: 0,
            elem: elem.0 as u32,
            lcp,
            agg: Aggregate::leaf(elem, lcp),
        });
        if self.leaf_of.len() <= elem.0 {
            self.leaf_of.resize(elem.0 + 1, NIL);
        }
        self.leaf_of[elem.0] = id;
        id
    }

    /// Makes `elem` the single leaf of an empty tree.
    pub fn insert_first(&mut self, elem: ElemId, lcp: Option<usize>) {
        assert_eq!(self.root, NIL, "tree is not empty");
        self.root = self.new_leaf(elem, lcp);
    }

    /// Inserts `elem` as the leaf immediately after (or before) `anchor`.
    pub fn insert_next_to(&mut self, anchor: ElemId, elem: ElemId, after: bool, lcp: Option<usize>) {
        let a = self.leaf_of[anchor.0];
        let e = self.new_leaf(elem, lcp);
        let parent = self.nodes[a as usize].parent;
        let joint = self.nodes.len() as u32;
        let (left, right) = if after { (a, e) } else { (e, a) };
        self.nodes.push(Node {
            parent,
            left,
            right,
            height: 1,
            elem: NIL,
            lcp: None,
            agg: Aggregate::EMPTY,
        });
        self.nodes[a as usize].parent = joint;
        self.nodes[e as usize].parent = joint;
        if parent == NIL {
            self.root = joint;
        } else if self.nodes[parent as usize].left == a {
            self.nodes[parent as usize].left = joint;
        } else {
            self.nodes[parent as usize].right = joint;
        }
        self.retrace(joint);
    }

    pub fn lcp(&self, elem: ElemId) -> Option<usize> {
        self.nodes[self.leaf_of[elem.0] as usize].lcp
    }

    pub fn set_lcp(&mut self, elem: ElemId, lcp: usize) {
        let v = self.leaf_of[elem.0];
        let node = &mut self.nodes[v as usize];
        node.lcp = Some(lcp);
        node.agg = Aggregate::leaf(elem, Some(lcp));
        let mut p = node.parent;
        while p != NIL {
            self.pull(p);
            p = self.nodes[p as usize].parent;
        }
    }

    fn h(&self, v: u32) -> i64 {
        self.nodes[v as usize].height as i64
    }

    fn pull(&mut self, v: u32) {
        let (l, r) = (self.nodes[v as usize].left, self.nodes[v as usize].right);
        let agg = Aggregate::join(&self.nodes[l as usize].agg, &self.nodes[r as usize].agg);
        let height = 1 + self.nodes[l as usize].height.max(self.nodes[r as usize].height);
        let node = &mut self.nodes[v as usize];
        node.agg = agg;
        node.height = height;
    }

    /// Recomputes aggregates from `v` to the root, rotating where the AVL
    /// balance is violated.
    fn retrace(&mut self, mut v: u32) {
        while v != NIL {
            self.pull(v);
            let (l, r) = (self.nodes[v as usize].left, self.nodes[v as usize].right);
            let balance = self.h(l) - self.h(r);
            if balance > 1 {
                let (ll, lr) = (self.nodes[l as usize].left, self.nodes[l as usize].right);
                if self.h(ll) < self.h(lr) {
                    self.rotate_left(l);
                }
                v = self.rotate_right(v);
            } else if balance < -1 {
                let (rl, rr) = (self.nodes[r as usize].left, self.nodes[r as usize].right);
                if self.h(rr) < self.h(rl) {
                    self.rotate_right(r);
                }
                v = self.rotate_left(v);
            }
            v = self.nodes[v as usize].parent;
        }
    }

    fn replace_child(&mut self, parent: u32, old: u32, new: u32) {
        if parent == NIL {
            self.root = new;
        } else if self.nodes[parent as usize].left == old {
            self.nodes[parent as usize].left = new;
        } else {
            self.nodes[parent as usize].right = new;
        }
        self.nodes[new as usize].parent = parent;
    }

    /// Returns the node now occupying `x`'s position.
    fn rotate_right(&mut self, x: u32) -> u32 {
        let y = self.nodes[x as usize].left;
        let middle = self.nodes[y as usize].right;
        let parent = self.nodes[x as usize].parent;
        self.nodes[x as usize].left = middle;
        self.nodes[middle as usize].parent = x;
        self.nodes[y as usize].right = x;
        self.nodes[x as usize].parent = y;
        self.replace_child(parent, x, y);
        self.pull(x);
        self.pull(y);
        y
    }

    fn rotate_left(&mut self, x: u32) -> u32 {
        let y = self.nodes[x as usize].right;
        let middle = self.nodes[y as usize].left;
        let parent = self.nodes[x as usize].parent;
        self.nodes[x as usize].right = middle;
        self.nodes[middle as usize].parent = x;
        self.nodes[y as usize].left = x;
        self.nodes[x as usize].parent = y;
        self.replace_child(parent, x, y);
        self.pull(x);
        self.pull(y);
        y
    }

    /// The first suffix leaf after `elem` in list order.
    pub fn next_suffix_leaf(&self, elem: ElemId) -> Option<ElemId> {
        let mut v = self.leaf_of[elem.0];
        loop {
            let p = self.nodes[v as usize].parent;
            if p == NIL {
                return None;
            }
            let node = &self.nodes[p as usize];
            if node.left == v {
                if let Some(x) = self.nodes[node.right as usize].agg.leftmost {
                    return Some(x);
                }
            }
            v = p;
        }
    }

    /// The last suffix leaf before `elem` in list order.
    pub fn prev_suffix_leaf(&self, elem: ElemId) -> Option<ElemId> {
        let mut v = self.leaf_of[elem.0];
        loop {
            let p = self.nodes[v as usize].parent;
            if p == NIL {
                return None;
            }
            let node = &self.nodes[p as usize];
            if node.right == v {
                if let Some(x) = self.nodes[node.left as usize].agg.rightmost {
                    return Some(x);
                }
            }
            v = p;
        }
    }

    fn depth(&self, mut v: u32) -> usize {
        let mut d = 0;
        while self.nodes[v as usize].parent != NIL {
            v = self.nodes[v as usize].parent;
            d += 1;
        }
        d
    }

    /// Minimum LCP over the suffix leaves strictly after `a` and up to and
    /// including `b`. `a` must precede `b` in list order. Covers the range
    /// with the O(log n) subtrees hanging between the two root paths.
    pub fn range_min(&self, a: ElemId, b: ElemId) -> usize {
        let (mut x, mut y) = (self.leaf_of[a.0], self.leaf_of[b.0]);
        let mut best = self.nodes[y as usize].agg.min_lcp;
        let (mut dx, mut dy) = (self.depth(x), self.depth(y));
        // Climb the deeper side first, collecting the subtrees that lie
        // inside the range, until both sides are children of one node.
        loop {
            let px = self.nodes[x as usize].parent;
            let py = self.nodes[y as usize].parent;
            if px == py {
                return best;
            }
            if dx >= dy {
                let node = &self.nodes[px as usize];
                if node.left == x {
                    best = best.min(self.nodes[node.right as usize].agg.min_lcp);
                }
                x = px;
                dx -= 1;
            } else {
                let node = &self.nodes[py as usize];
                if node.right == y {
                    best = best.min(self.nodes[node.left as usize].agg.min_lcp);
                }
                y = py;
                dy -= 1;
            }
        }
    }

    /// Leaf elements in order.
    pub fn leaves(&self) -> Vec<ElemId> {
        let mut out = Vec::new();
        if self.root == NIL {
            return out;
        }
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v as usize];
            if node.left == NIL {
                out.push(ElemId(node.elem as usize));
            } else {
                stack.push(node.right);
                stack.push(node.left);
            }
        }
        out
    }

    /// Recomputes every aggregate and height from the leaves and compares
    /// with the stored values; also checks the AVL balance.
    pub fn validate(&self) -> Result<(), String> {
        if self.root == NIL {
            return Ok(());
        }
        if self.nodes[self.root as usize].parent != NIL {
            return Err("root has a parent".into());
        }
        self.check_node(self.root).map(|_| ())
    }

    fn check_node(&self, v: u32) -> Result<(Aggregate, u32), String> {
        let node = &self.nodes[v as usize];
        if self.is_leaf(v) {
            let agg = Aggregate::leaf(ElemId(node.elem as usize), node.lcp);
            if agg != node.agg || node.height != 0 {
                return Err(format!("leaf {v} aggregate is stale"));
            }
            return Ok((agg, 0));
        }
        for c in [node.left, node.right] {
            if self.nodes[c as usize].parent != v {
                return Err(format!("child {c} of {v} has wrong parent"));
            }
        }
        let (la, lh) = self.check_node(node.left)?;
        let (ra, rh) = self.check_node(node.right)?;
        let agg = Aggregate::join(&la, &ra);
        if agg != node.agg {
            return Err(format!("node {v} aggregate is stale"));
        }
        if node.height != 1 + lh.max(rh) || lh.abs_diff(rh) > 1 {
            return Err(format!("node {v} height or balance is wrong"));
        }
        Ok((agg, node.height))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_inserts_keep_aggregates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut t = AugTree::new();
        // reference: (elem, lcp) in list order
        let mut list: Vec<(ElemId, Option<usize>)> = vec![(ElemId(0), None)];
        t.insert_first(ElemId(0), None);
        for id in 1..3000 {
            let at = rng.gen_range(0..list.len());
            let lcp = rng.gen_bool(0.6).then(|| rng.gen_range(0..50));
            let after = rng.gen_bool(0.5);
            t.insert_next_to(list[at].0, ElemId(id), after, lcp);
            list.insert(if after { at + 1 } else { at }, (ElemId(id), lcp));
            if id % 7 == 0 {
                let k = rng.gen_range(0..list.len());
                if list[k].1.is_some() {
                    let v = rng.gen_range(0..50);
                    t.set_lcp(list[k].0, v);
                    list[k].1 = Some(v);
                }
            }
        }
        t.validate().unwrap();
        assert_eq!(t.leaves(), list.iter().map(|x| x.0).collect::<Vec<_>>());
        assert!(t.height() <= 2 * 12);
        assert_eq!(t.num_nodes(), 2 * list.len() - 1);

        for _ in 0..2000 {
            let i = rng.gen_range(0..list.len());
            let j = rng.gen_range(i..list.len());
            if i == j {
                continue;
            }
            let want = list[i + 1..=j]
                .iter()
                .filter_map(|x| x.1)
                .min()
                .unwrap_or(usize::MAX);
            assert_eq!(t.range_min(list[i].0, list[j].0), want);
        }
        for (k, &(e, _)) in list.iter().enumerate() {
            let next = list[k + 1..].iter().find(|x| x.1.is_some()).map(|x| x.0);
            assert_eq!(t.next_suffix_leaf(e), next);
            let prev = list[..k].iter().rev().find(|x| x.1.is_some()).map(|x| x.0);
            assert_eq!(t.prev_suffix_leaf(e), prev);
        }
    }
}
