//! Counting and reporting while documents are appended.
//!
//! The generalized suffix tree of all documents is grown online. Its Euler
//! tour is kept as an order-maintenance list: internal nodes appear twice
//! (first and last visit), leaves once. Leaves of the tree ("suffix leaves")
//! therefore appear in lexicographic order, so comparing two suffixes is an
//! O(1) list-order query. A balanced tree over the list keeps, per subtree,
//! the extreme suffix leaves and the minimum stored LCP, where a suffix
//! leaf's LCP is taken against the previous suffix leaf in list order. The
//! LCP of two arbitrary suffixes is the minimum over the leaves between
//! them.
//!
//! Per-document suffix arrays, trees and WLA structures are built when a
//! document is inserted and never change afterwards.

pub mod aug_tree;
pub mod gst;
pub mod order_list;

use std::cmp::Ordering;

use crate::corpus::{Corpus, DocumentId, SubstringRef};
use crate::error::{Error, Result};
use crate::static_index::DocumentKit;
use crate::suffix::SuffixPos;

use aug_tree::AugTree;
use gst::{Gst, GstListener, ROOT};
pub use order_list::{ElemId, OrderList};

/// What a list element stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerEntry {
    /// First visit of an internal tree node.
    Open(usize),
    /// Last visit of an internal tree node.
    Close(usize),
    /// A suffix leaf.
    Leaf(usize),
}

/// Where the LCP rule placed a new leaf among its siblings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildSide {
    Leftmost,
    Middle,
    Rightmost,
    /// The parent had no children yet (only the very first leaf).
    Only,
}

/// Euler-tour list, balanced tree and the handles tying them to the tree.
#[derive(Debug, Clone, Default)]
struct EulerTour {
    list: OrderList,
    bt: AugTree,
    entries: Vec<EulerEntry>,
    // tree node -> (first copy, second copy); leaves use one element twice
    copies: Vec<(ElemId, ElemId)>,
    // per document, per 1-based position (len + 1 = the sentinel suffix)
    suffix_elem: Vec<Vec<ElemId>>,
}

impl EulerTour {
    fn new() -> Self {
        let mut list = OrderList::new();
        let mut bt = AugTree::new();
        let open = list.insert_first().unwrap();
        let close = list.insert_after(open).unwrap();
        bt.insert_first(open, None);
        bt.insert_next_to(open, close, true, None);
        EulerTour {
            list,
            bt,
            entries: vec![EulerEntry::Open(ROOT), EulerEntry::Close(ROOT)],
            copies: vec![(open, close)],
            suffix_elem: Vec::new(),
        }
    }

    fn push(&mut self, anchor: ElemId, after: bool, entry: EulerEntry, lcp: Option<usize>) -> ElemId {
        let e = if after {
            self.list.insert_after(anchor)
        } else {
            self.list.insert_before(anchor)
        }
        .expect("anchor is in the list");
        self.bt.insert_next_to(anchor, e, after, lcp);
        debug_assert_eq!(self.entries.len(), e.0);
        self.entries.push(entry);
        e
    }

    fn set_copies(&mut self, node: usize, copies: (ElemId, ElemId)) {
        if self.copies.len() <= node {
            self.copies.resize(node + 1, (ElemId(usize::MAX), ElemId(usize::MAX)));
        }
        self.copies[node] = copies;
    }

    /// Stores the LCP of a new leaf with a three-case rule on its position
    /// among its siblings, where `depth` is the parent's string depth.
    fn apply_leaf_lcp(&mut self, u: ElemId, side: ChildSide, depth: usize) {
        match side {
            ChildSide::Only => self.bt.set_lcp(u, 0),
            ChildSide::Middle | ChildSide::Rightmost => self.bt.set_lcp(u, depth),
            ChildSide::Leftmost => {
                let next = self
                    .bt
                    .next_suffix_leaf(u)
                    .expect("a leftmost child has a right sibling");
                let inherited = self.bt.lcp(next).expect("suffix leaf");
                self.bt.set_lcp(u, inherited);
                self.bt.set_lcp(next, depth);
            }
        }
    }
}

impl GstListener for EulerTour {
    fn on_split(&mut self, gst: &Gst, v: usize) {
        // v sits on the edge above its only child w, so v's copies bracket
        // exactly w's segment of the list.
        let w = gst.children(v).next().expect("split node has one child");
        let (w_first, w_second) = self.copies[w];
        let first = self.push(w_first, false, EulerEntry::Open(v), None);
        let second = self.push(w_second, true, EulerEntry::Close(v), None);
        self.set_copies(v, (first, second));
    }

    fn on_leaf(&mut self, gst: &Gst, u: usize) {
        let parent = gst.nodes[u].parent;
        let (left, right) = gst.siblings(u);
        let (e, side) = match (left, right) {
            (Some(l), r) => {
                let e = self.push(self.copies[l].1, true, EulerEntry::Leaf(u), Some(0));
                (e, if r.is_some() { ChildSide::Middle } else { ChildSide::Rightmost })
            }
            (None, Some(r)) => {
                let e = self.push(self.copies[r].0, false, EulerEntry::Leaf(u), Some(0));
                (e, ChildSide::Leftmost)
            }
            (None, None) => {
                let e = self.push(self.copies[parent].0, true, EulerEntry::Leaf(u), Some(0));
                (e, ChildSide::Only)
            }
        };
        self.set_copies(u, (e, e));
        self.apply_leaf_lcp(e, side, gst.nodes[parent].depth);

        let s = gst.nodes[u].suffix.expect("leaf carries its suffix");
        let slots = &mut self.suffix_elem[s.doc.index()];
        if slots.len() < s.pos {
            slots.resize(s.pos, ElemId(usize::MAX));
        }
        slots[s.pos - 1] = e;
    }
}

/// Cross-document index that accepts new documents.
#[derive(Debug, Clone)]
pub struct DynamicIndex {
    corpus: Corpus,
    gst: Gst,
    tour: EulerTour,
    kits: Vec<DocumentKit>,
}

impl Default for DynamicIndex {
    fn default() -> Self {
        Self::new()
    }
}

impl DynamicIndex {
    pub fn new() -> Self {
        DynamicIndex {
            corpus: Corpus::new(),
            gst: Gst::new(),
            tour: EulerTour::new(),
            kits: Vec::new(),
        }
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn add_document(&mut self, text: &[u8]) -> Result<DocumentId> {
        let doc = self.corpus.add_document(text)?;
        self.tour
            .suffix_elem
            .push(Vec::with_capacity(text.len() + 1));
        self.gst.add_document(doc, text, &mut self.tour);
        self.kits.push(DocumentKit::build(text));
        Ok(doc)
    }

    pub fn kit(&self, doc: DocumentId) -> Result<&DocumentKit> {
        self.corpus.text(doc)?;
        Ok(&self.kits[doc.index()])
    }

    /// List element of the suffix leaf `T_doc[pos..]`; `pos = |T_doc| + 1`
    /// names the sentinel-only suffix.
    pub fn suffix_leaf(&self, doc: DocumentId, pos: usize) -> Result<ElemId> {
        let len = self.corpus.text(doc)?.len();
        if pos == 0 || pos > len + 1 {
            return Err(Error::OutOfRange {
                doc: doc.0,
                i: pos,
                j: pos,
                len,
            });
        }
        Ok(self.tour.suffix_elem[doc.index()][pos - 1])
    }

    pub fn order(&self, x: ElemId, y: ElemId) -> Result<Ordering> {
        self.tour.list.order(x, y)
    }

    fn suffix_of(&self, e: ElemId) -> Result<SuffixPos> {
        match self.tour.entries.get(e.0) {
            Some(&EulerEntry::Leaf(u)) => Ok(self.gst.nodes[u].suffix.unwrap()),
            _ => Err(Error::ElementNotInList(e.0)),
        }
    }

    /// LCP of the suffixes at two suffix leaves, `a` not after `b`. Equal
    /// leaves give the suffix's own length.
    pub fn range_min_lcp(&self, a: ElemId, b: ElemId) -> Result<usize> {
        let sa = self.suffix_of(a)?;
        self.suffix_of(b)?;
        match self.tour.list.order(a, b)? {
            Ordering::Equal => Ok(self.corpus.text(sa.doc)?.len() + 1 - sa.pos),
            Ordering::Greater => Err(Error::OrderViolation),
            Ordering::Less => Ok(self.tour.bt.range_min(a, b)),
        }
    }

    /// A start position of `pat` in `target`, if it occurs there.
    pub fn find_witness(&self, pat: SubstringRef, target: DocumentId) -> Result<Option<usize>> {
        self.corpus.check(pat)?;
        let kit = self.kit(target)?;
        let len = pat.len();
        let e = self.tour.suffix_elem[pat.doc.index()][pat.i - 1];
        let leaves = &self.tour.suffix_elem[target.index()];
        let list = &self.tour.list;
        let sa = kit.suffix_array();
        // T_ℓ suffixes strictly before e in suffix order.
        let before = sa.sa.partition_point(|&p| list.precedes(leaves[p], e));
        if before > 0 {
            let p = sa.sa[before - 1];
            if self.tour.bt.range_min(leaves[p], e) >= len {
                return Ok(Some(p + 1));
            }
        }
        if let Some(&p) = sa.sa.get(before) {
            let f = leaves[p];
            if f == e || self.tour.bt.range_min(e, f) >= len {
                return Ok(Some(p + 1));
            }
        }
        Ok(None)
    }

    pub fn count(&self, pat: SubstringRef, target: DocumentId) -> Result<usize> {
        Ok(match self.find_witness(pat, target)? {
            Some(p) => self.kits[target.index()].count_at(p, pat.len()),
            None => 0,
        })
    }

    /// Start positions of `pat` in `target`, in suffix order of `target`.
    pub fn report(&self, pat: SubstringRef, target: DocumentId) -> Result<Vec<usize>> {
        Ok(match self.find_witness(pat, target)? {
            Some(p) => self.kits[target.index()].report_at(p, pat.len()),
            None => Vec::new(),
        })
    }

    /// Documents containing `pat`, ascending. Each document is tested for a
    /// witness, so this costs `m` witness searches.
    pub fn documents(&self, pat: SubstringRef) -> Result<Vec<DocumentId>> {
        self.corpus.check(pat)?;
        let mut out = Vec::new();
        for l in self.corpus.ids() {
            if self.find_witness(pat, l)?.is_some() {
                out.push(l);
            }
        }
        Ok(out)
    }

    // Introspection used by the structural checks.

    /// The Euler-tour list in order.
    pub fn euler_sequence(&self) -> Vec<EulerEntry> {
        self.tour.list.iter().map(|e| self.tour.entries[e.0]).collect()
    }

    /// Depth-first traversal of the suffix tree, children in symbol order.
    pub fn tree_dfs_sequence(&self) -> Vec<EulerEntry> {
        enum Step {
            Enter(usize),
            Exit(usize),
        }
        let mut out = Vec::new();
        let mut stack = vec![Step::Enter(ROOT)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Enter(v) if self.gst.is_leaf(v) => out.push(EulerEntry::Leaf(v)),
                Step::Enter(v) => {
                    out.push(EulerEntry::Open(v));
                    stack.push(Step::Exit(v));
                    let kids: Vec<usize> = self.gst.children(v).collect();
                    stack.extend(kids.into_iter().rev().map(Step::Enter));
                }
                Step::Exit(v) => out.push(EulerEntry::Close(v)),
            }
        }
        out
    }

    /// Suffix leaves in list order with their stored LCP values. Sentinel-only
    /// suffixes appear with `pos = |T_doc| + 1`.
    pub fn suffix_leaves(&self) -> Vec<(SuffixPos, usize)> {
        self.tour
            .list
            .iter()
            .filter_map(|e| match self.tour.entries[e.0] {
                EulerEntry::Leaf(u) => Some((
                    self.gst.nodes[u].suffix.unwrap(),
                    self.tour.bt.lcp(e).unwrap(),
                )),
                _ => None,
            })
            .collect()
    }

    pub fn tree_node_count(&self) -> usize {
        self.gst.num_nodes()
    }

    pub fn balanced_tree_height(&self) -> usize {
        self.tour.bt.height()
    }

    /// Checks list labels, the balanced tree's aggregates against its leaves,
    /// and that the balanced tree's leaves are the list in order.
    pub fn check_internal_structures(&self) -> std::result::Result<(), String> {
        self.tour.list.validate()?;
        self.tour.bt.validate()?;
        let walk: Vec<ElemId> = self.tour.list.iter().collect();
        if self.tour.bt.leaves() != walk {
            return Err("balanced tree leaves differ from the list".into());
        }
        if let Some(first) = self.tour.bt.root_aggregate().leftmost {
            if self.tour.bt.lcp(first) != Some(0) {
                return Err("first suffix leaf does not carry LCP 0".into());
            }
        }
        Ok(())
    }
}
