//! Document listing and counting for a pattern `T_k[i..j]`.
//!
//! The pattern's locus in the generalized suffix tree spans a rank interval
//! `[l..r]` of the generalized suffix array. The documents containing the
//! pattern are the distinct values of `D[l..r]`. With the chain array
//! `C[t]` (previous rank holding the same document, 0 if none), each such
//! document has exactly one rank `t` in `[l..r]` with `C[t] < l`, its first
//! appearance. Listing recurses on range minima of `C`; counting is a
//! dominance count over the points `(t, C[t])`.

mod wavelet;

pub use wavelet::WaveletMatrix;

use crate::corpus::{DocumentId, SubstringRef};
use crate::error::Result;
use crate::rmq::Rmq;
use crate::static_index::StaticIndex;
use crate::suffix::{GsaIndex, SuffixTree};
use crate::wla::Wla;

/// `C[t]`: the largest rank `t' < t` with `D[t'] = D[t]`, or 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainArray {
    chain: Vec<usize>,
}

impl ChainArray {
    pub fn build(gsa: &GsaIndex) -> Self {
        let mut last = vec![0usize; gsa.num_docs()];
        let chain = (1..=gsa.len())
            .map(|r| {
                let d = gsa.doc(r).index();
                std::mem::replace(&mut last[d], r)
            })
            .collect();
        ChainArray { chain }
    }

    /// Value at a 1-based rank.
    pub fn get(&self, rank: usize) -> usize {
        self.chain[rank - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.chain
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocIndex {
    gst: SuffixTree,
    wla: Wla,
    chain: ChainArray,
    chain_rmq: Rmq,
    counter: WaveletMatrix,
}

impl DocIndex {
    pub fn build(index: &StaticIndex) -> Self {
        Self::from_tree(index, SuffixTree::build_generalized(index.gsa()))
    }

    /// Rebuilds the auxiliary structures around an existing generalized tree.
    pub(crate) fn from_tree(index: &StaticIndex, gst: SuffixTree) -> Self {
        let gsa = index.gsa();
        let wla = Wla::build(&gst);
        let chain = ChainArray::build(gsa);
        let chain_rmq = Rmq::build(chain.as_slice());
        let counter = WaveletMatrix::new(chain.as_slice());
        DocIndex {
            gst,
            wla,
            chain,
            chain_rmq,
            counter,
        }
    }

    pub fn generalized_tree(&self) -> &SuffixTree {
        &self.gst
    }

    pub fn chain(&self) -> &ChainArray {
        &self.chain
    }

    /// The maximal 1-based GSA rank interval of suffixes starting with `pat`.
    pub fn locus_interval(&self, index: &StaticIndex, pat: SubstringRef) -> Result<(usize, usize)> {
        index.corpus().check(pat)?;
        let leaf = self.gst.leaf(index.gsa().rank_of(pat.doc, pat.i));
        let locus = self
            .wla
            .query_unchecked(leaf, pat.len())
            .expect("pattern fits inside its own suffix");
        Ok(self.gst.leaf_range(locus))
    }

    /// Documents containing `pat`, in left-first recursion order over the
    /// locus interval.
    pub fn list_documents(&self, index: &StaticIndex, pat: SubstringRef) -> Result<Vec<DocumentId>> {
        let (l, r) = self.locus_interval(index, pat)?;
        Ok(self.distinct_in(index.gsa(), l, r))
    }

    /// Distinct document ids in `D[l..=r]` (1-based ranks).
    pub fn distinct_in(&self, gsa: &GsaIndex, l: usize, r: usize) -> Vec<DocumentId> {
        let mut out = Vec::new();
        let mut stack = vec![(l, r)];
        while let Some((a, b)) = stack.pop() {
            if a > b {
                continue;
            }
            let t = self.chain_rmq.query(a, b);
            if self.chain.get(t) >= l {
                continue;
            }
            out.push(gsa.doc(t));
            stack.push((t + 1, b));
            stack.push((a, t - 1));
        }
        out
    }

    pub fn count_documents(&self, index: &StaticIndex, pat: SubstringRef) -> Result<usize> {
        let (l, r) = self.locus_interval(index, pat)?;
        Ok(self.counter.count_less(l - 1, r, l))
    }
}
