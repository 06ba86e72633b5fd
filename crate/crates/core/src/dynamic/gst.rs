//! Online generalized suffix tree (Ukkonen), one document at a time.
//!
//! Symbols are `u32`: the sentinel of document `k` is `k` itself and a text
//! byte `b` is `BYTE_BASE + b`, so sentinels order by document id below all
//! bytes. Each document ends with its sentinel, which turns every suffix of
//! it into a leaf before the next document starts.

use std::collections::BTreeMap;
use std::ops::Bound;

use crate::corpus::DocumentId;
use crate::suffix::SuffixPos;

pub const ROOT: usize = 0;
const BYTE_BASE: u32 = 1 << 31;
const OPEN: usize = usize::MAX;

pub(crate) fn byte_symbol(b: u8) -> u32 {
    BYTE_BASE + b as u32
}

#[derive(Debug, Clone)]
pub(crate) struct GstNode {
    pub(crate) start: usize,
    end: usize,
    pub(crate) parent: usize,
    pub(crate) children: BTreeMap<u32, usize>,
    link: usize,
    // string depth; for leaves it is fixed once the document is complete
    pub(crate) depth: usize,
    pub(crate) suffix: Option<SuffixPos>,
}

/// Receives structural events in the order the tree produces them.
pub(crate) trait GstListener {
    /// `v` was created by subdividing an edge; it has exactly one child.
    fn on_split(&mut self, gst: &Gst, v: usize);
    /// Leaf `u` was attached below an existing node.
    fn on_leaf(&mut self, gst: &Gst, u: usize);
}

#[derive(Debug, Clone)]
pub struct Gst {
    pub(crate) text: Vec<u32>,
    pub(crate) nodes: Vec<GstNode>,
    open_end: usize,
}

impl Default for Gst {
    fn default() -> Self {
        Self::new()
    }
}

impl Gst {
    pub fn new() -> Self {
        Gst {
            text: Vec::new(),
            nodes: vec![GstNode {
                start: 0,
                end: 0,
                parent: usize::MAX,
                children: BTreeMap::new(),
                link: ROOT,
                depth: 0,
                suffix: None,
            }],
            open_end: 0,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    fn end(&self, v: usize) -> usize {
        match self.nodes[v].end {
            OPEN => self.open_end,
            e => e,
        }
    }

    fn edge_len(&self, v: usize) -> usize {
        self.end(v) - self.nodes[v].start
    }

    pub(crate) fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].suffix.is_some()
    }

    /// First symbol on the edge into `v`.
    pub(crate) fn key(&self, v: usize) -> u32 {
        self.text[self.nodes[v].start]
    }

    /// Children of `v`'s parent immediately left and right of `v`.
    pub(crate) fn siblings(&self, v: usize) -> (Option<usize>, Option<usize>) {
        let kids = &self.nodes[self.nodes[v].parent].children;
        let k = self.key(v);
        let left = kids.range(..k).next_back().map(|(_, &c)| c);
        let right = kids
            .range((Bound::Excluded(k), Bound::Unbounded))
            .next()
            .map(|(_, &c)| c);
        (left, right)
    }

    pub(crate) fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes[v].children.values().copied()
    }

    /// Appends document `doc` (whose bytes are `text`) and its sentinel.
    pub(crate) fn add_document<L: GstListener>(&mut self, doc: DocumentId, text: &[u8], listener: &mut L) {
        let base = self.text.len();
        self.text.extend(text.iter().map(|&b| byte_symbol(b)));
        self.text.push(doc.0 as u32);
        let doc_end = self.text.len();
        let mut created = Vec::with_capacity(text.len() + 1);

        let mut active_node = ROOT;
        let mut active_edge = base;
        let mut active_len = 0usize;
        let mut remainder = 0usize;

        for pos in base..doc_end {
            self.open_end = pos + 1;
            let c = self.text[pos];
            let mut need_link: Option<usize> = None;
            remainder += 1;
            while remainder > 0 {
                if active_len == 0 {
                    active_edge = pos;
                }
                let edge_sym = self.text[active_edge];
                let suffix = SuffixPos {
                    doc,
                    pos: pos + 2 - remainder - base,
                };
                match self.nodes[active_node].children.get(&edge_sym).copied() {
                    None => {
                        let leaf = self.new_leaf(active_node, pos, suffix);
                        created.push(leaf);
                        listener.on_leaf(self, leaf);
                        Self::add_link(&mut self.nodes, &mut need_link, active_node);
                    }
                    Some(next) => {
                        let len = self.edge_len(next);
                        if active_len >= len {
                            active_edge += len;
                            active_len -= len;
                            active_node = next;
                            continue;
                        }
                        if self.text[self.nodes[next].start + active_len] == c {
                            active_len += 1;
                            Self::add_link(&mut self.nodes, &mut need_link, active_node);
                            break;
                        }
                        let split = self.split(active_node, next, active_len);
                        listener.on_split(self, split);
                        let leaf = self.new_leaf(split, pos, suffix);
                        created.push(leaf);
                        listener.on_leaf(self, leaf);
                        Self::add_link(&mut self.nodes, &mut need_link, split);
                    }
                }
                remainder -= 1;
                if active_node == ROOT && active_len > 0 {
                    active_len -= 1;
                    active_edge = pos + 1 - remainder;
                } else if active_node != ROOT {
                    active_node = self.nodes[active_node].link;
                }
            }
        }
        debug_assert_eq!(remainder, 0);
        for leaf in created {
            self.nodes[leaf].end = doc_end;
            let parent_depth = self.nodes[self.nodes[leaf].parent].depth;
            self.nodes[leaf].depth = parent_depth + doc_end - self.nodes[leaf].start;
        }
    }

    fn add_link(nodes: &mut [GstNode], need_link: &mut Option<usize>, v: usize) {
        if let Some(w) = need_link.take() {
            if w != ROOT {
                nodes[w].link = v;
            }
        }
        *need_link = Some(v);
    }

    fn new_leaf(&mut self, parent: usize, start: usize, suffix: SuffixPos) -> usize {
        let id = self.nodes.len();
        self.nodes.push(GstNode {
            start,
            end: OPEN,
            parent,
            children: BTreeMap::new(),
            link: ROOT,
            depth: 0,
            suffix: Some(suffix),
        });
        let key = self.text[start];
        self.nodes[parent].children.insert(key, id);
        id
    }

    /// Subdivides the edge into `child` after `at` symbols.
    fn split(&mut self, parent: usize, child: usize, at: usize) -> usize {
        let id = self.nodes.len();
        let start = self.nodes[child].start;
        let depth = self.nodes[parent].depth + at;
        let mut children = BTreeMap::new();
        children.insert(self.text[start + at], child);
        self.nodes.push(GstNode {
            start,
            end: start + at,
            parent,
            children,
            link: ROOT,
            depth,
            suffix: None,
        });
        self.nodes[parent].children.insert(self.text[start], id);
        self.nodes[child].start = start + at;
        self.nodes[child].parent = id;
        id
    }
}
