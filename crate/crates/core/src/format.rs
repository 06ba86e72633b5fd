//! `XDOC1` index files.
//!
//! Layout, all integers little-endian `u64`:
//!
//! ```text
//! "XDOC1"
//! m, then per document: len, len bytes
//! n, then n pairs (doc, pos) of the generalized suffix array, then n LCP values
//! per document: len suffix-array positions, len LCP values
//! generalized suffix tree, then one suffix tree per document
//! ```
//!
//! A tree is its node count followed by, per node: parent (`u64::MAX` for
//! the root), string depth, leftmost rank, rightmost rank and a leaf flag
//! byte. Ranks and positions are 1-based. Everything else (RMQ, WLA, rank
//! and select, chain array, range counter) is rebuilt on load.

use crate::batch::StaticEngine;
use crate::corpus::{Corpus, DocumentId};
use crate::doc_index::DocIndex;
use crate::error::{Error, Result};
use crate::static_index::{DocumentKit, StaticIndex};
use crate::suffix::tree::Node;
use crate::suffix::{GsaIndex, LcpArray, NodeId, SuffixArray, SuffixPos, SuffixTree};
use crate::wla::Wla;

pub const MAGIC: &[u8; 5] = b"XDOC1";

pub fn encode(engine: &StaticEngine) -> Vec<u8> {
    let index = &engine.index;
    let mut w = Writer(Vec::new());
    w.0.extend_from_slice(MAGIC);
    let corpus = index.corpus();
    w.u64(corpus.len());
    for text in corpus.texts() {
        w.u64(text.len());
        w.0.extend_from_slice(text);
    }
    let gsa = index.gsa();
    w.u64(gsa.len());
    for s in gsa.suffixes() {
        w.u64(s.doc.0);
        w.u64(s.pos);
    }
    for &v in gsa.lcp().as_slice() {
        w.u64(v);
    }
    for kit in &index.kits {
        for p in kit.sa.positions() {
            w.u64(p);
        }
        for &v in kit.lcp.as_slice() {
            w.u64(v);
        }
    }
    w.tree(engine.docs.generalized_tree());
    for kit in &index.kits {
        w.tree(&kit.tree);
    }
    w.0
}

pub fn decode(bytes: &[u8]) -> Result<StaticEngine> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(MAGIC.len())? != MAGIC {
        return Err(Error::Format("missing XDOC1 header".into()));
    }
    let m = r.u64()?;
    let mut texts = Vec::new();
    for _ in 0..m {
        let len = r.u64()?;
        texts.push(r.take(len)?.to_vec());
    }
    let corpus = Corpus::from_texts(&texts).map_err(|e| Error::Format(e.to_string()))?;
    if corpus.is_empty() {
        return Err(Error::Format("index holds no documents".into()));
    }

    let n = r.u64()?;
    if n != corpus.total_len() {
        return Err(Error::Format("suffix count does not match corpus size".into()));
    }
    let mut suffixes = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut doc_start = vec![0];
    for text in corpus.texts() {
        doc_start.push(doc_start.last().unwrap() + text.len());
    }
    for _ in 0..n {
        let (doc, pos) = (r.u64()?, r.u64()?);
        if doc == 0 || doc > m || pos == 0 || pos > texts[doc - 1].len() {
            return Err(Error::Format(format!("suffix ({doc}, {pos}) out of range")));
        }
        let flat = doc_start[doc - 1] + pos - 1;
        if std::mem::replace(&mut seen[flat], true) {
            return Err(Error::Format("duplicate suffix".into()));
        }
        suffixes.push(SuffixPos {
            doc: DocumentId(doc),
            pos,
        });
    }
    let lcp = LcpArray { lcp: r.u64s(n)? };
    let mut inv = vec![0; n];
    for (rank, s) in suffixes.iter().enumerate() {
        inv[doc_start[s.doc.index()] + s.pos - 1] = rank as u32;
    }
    let gsa = GsaIndex {
        suffixes,
        lcp,
        doc_start,
        inv,
    };

    let mut arrays = Vec::with_capacity(m);
    for text in &texts {
        let len = text.len();
        let positions = r.u64s(len)?;
        let mut order = Vec::with_capacity(len);
        let mut seen = vec![false; len];
        for p in positions {
            if p == 0 || p > len || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Format("per-document suffix array is not a permutation".into()));
            }
            order.push(p - 1);
        }
        let lcp = LcpArray { lcp: r.u64s(len)? };
        arrays.push((SuffixArray::from_order(order), lcp));
    }
    let gst = r.tree(n)?;
    let mut kits = Vec::with_capacity(m);
    for (sa, lcp) in arrays {
        let tree = r.tree(sa.len())?;
        let wla = Wla::build(&tree);
        kits.push(DocumentKit { sa, lcp, tree, wla });
    }
    if r.at != bytes.len() {
        return Err(Error::Format("trailing bytes".into()));
    }
    let index = StaticIndex::from_parts(corpus, gsa, kits);
    let docs = DocIndex::from_tree(&index, gst);
    Ok(StaticEngine { index, docs })
}

struct Writer(Vec<u8>);

impl Writer {
    fn u64(&mut self, v: usize) {
        self.0.extend_from_slice(&(v as u64).to_le_bytes());
    }

    fn tree(&mut self, t: &SuffixTree) {
        self.u64(t.nodes.len());
        for node in &t.nodes {
            self.0
                .extend_from_slice(&node.parent.map_or(u64::MAX, |p| p.0 as u64).to_le_bytes());
            self.u64(node.depth);
            self.u64(node.left + 1);
            self.u64(node.right + 1);
            self.0.push(node.leaf as u8);
        }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl Reader<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8]> {
        let end = self
            .at
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format("unexpected end of file".into()))?;
        let out = &self.bytes[self.at..end];
        self.at = end;
        Ok(out)
    }

    fn u64(&mut self) -> Result<usize> {
        let raw = u64::from_le_bytes(self.take(8)?.try_into().unwrap());
        usize::try_from(raw).map_err(|_| Error::Format("value exceeds usize".into()))
    }

    fn u64s(&mut self, len: usize) -> Result<Vec<usize>> {
        (0..len).map(|_| self.u64()).collect()
    }

    fn tree(&mut self, leaves: usize) -> Result<SuffixTree> {
        let count = self.u64()?;
        if count == 0 || count > 2 * leaves + 1 {
            return Err(Error::Format("bad tree size".into()));
        }
        let mut nodes = Vec::with_capacity(count);
        for k in 0..count {
            let parent = u64::from_le_bytes(self.take(8)?.try_into().unwrap());
            let parent = if parent == u64::MAX {
                None
            } else {
                Some(NodeId(parent as usize))
            };
            let (depth, left, right) = (self.u64()?, self.u64()?, self.u64()?);
            let leaf = self.take(1)?[0] != 0;
            let bad_parent = match parent {
                None => k != 0,
                Some(p) => p.0 >= count || k == 0,
            };
            if bad_parent || left == 0 || left > right || right > leaves {
                return Err(Error::Format(format!("tree node {k} is malformed")));
            }
            nodes.push(Node {
                parent,
                children: Vec::new(),
                depth,
                left: left - 1,
                right: right - 1,
                leaf,
            });
        }
        for k in 1..count {
            let p = nodes[k].parent.unwrap().0;
            nodes[p].children.push(NodeId(k));
        }
        let lefts: Vec<usize> = nodes.iter().map(|n| n.left).collect();
        let mut leaf_of_rank = vec![NodeId(usize::MAX); leaves];
        for (k, node) in nodes.iter_mut().enumerate() {
            node.children.sort_by_key(|c| lefts[c.0]);
            if node.leaf {
                if node.left != node.right || leaf_of_rank[node.left].0 != usize::MAX {
                    return Err(Error::Format(format!("leaf {k} is malformed")));
                }
                leaf_of_rank[node.left] = NodeId(k);
            }
        }
        if leaf_of_rank.iter().any(|v| v.0 == usize::MAX) {
            return Err(Error::Format("tree is missing leaves".into()));
        }
        Ok(SuffixTree {
            nodes,
            leaf_of_rank,
        })
    }
}
