//! Cross-document counting and reporting over a frozen corpus.
//!
//! A query `(T_k[i..j], ℓ)` runs in two steps. First a single witness
//! occurrence in `T_ℓ` is found from the generalized suffix array: the
//! `T_ℓ`-suffixes ranked immediately before and after `T_k[i..]` are the
//! only candidates, and one of them shares at least `j - i + 1` symbols with
//! it exactly when the pattern occurs in `T_ℓ`. Second, the witness is
//! expanded inside `T_ℓ`'s own structures: its locus in `T_ℓ`'s suffix tree
//! gives the count, and a scan of `T_ℓ`'s LCP array around the witness gives
//! every position.

use crate::corpus::{Corpus, DocumentId, SubstringRef};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rmq::{self, Rmq};
use crate::suffix::{GsaIndex, LcpArray, SuffixArray, SuffixTree};
use crate::wla::Wla;

/// Suffix array, LCP array, suffix tree and WLA structure of one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentKit {
    pub(crate) sa: SuffixArray,
    pub(crate) lcp: LcpArray,
    pub(crate) tree: SuffixTree,
    pub(crate) wla: Wla,
}

impl DocumentKit {
    pub fn build(text: &[u8]) -> Self {
        let sa = SuffixArray::build(text);
        let lcp = LcpArray::build(text, &sa);
        Self::from_parts(sa, lcp)
    }

    pub(crate) fn from_parts(sa: SuffixArray, lcp: LcpArray) -> Self {
        let tree = SuffixTree::build(&sa, &lcp);
        let wla = Wla::build(&tree);
        DocumentKit { sa, lcp, tree, wla }
    }

    pub fn suffix_array(&self) -> &SuffixArray {
        &self.sa
    }

    pub fn lcp(&self) -> &LcpArray {
        &self.lcp
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn wla(&self) -> &Wla {
        &self.wla
    }

    /// Occurrences of `T[p..p + len - 1]` in this document: leaf count of its
    /// locus, the weighted level ancestor of the leaf of `T[p..]`.
    pub fn count_at(&self, p: usize, len: usize) -> usize {
        self.count_at_rank(self.sa.rank(p), len)
    }

    pub(crate) fn count_at_rank(&self, rank: usize, len: usize) -> usize {
        self.wla.leaves_above_rank(rank, len)
    }

    /// Start positions of `T[p..p + len - 1]` in this document, in suffix
    /// order.
    pub fn report_at(&self, p: usize, len: usize) -> Vec<usize> {
        self.report_at_rank(self.sa.rank(p), len)
    }

    pub(crate) fn report_at_rank(&self, r: usize, len: usize) -> Vec<usize> {
        let mut lo = r;
        while lo > 1 && self.lcp.get(lo) >= len {
            lo -= 1;
        }
        let mut hi = r;
        while hi < self.sa.len() && self.lcp.get(hi + 1) >= len {
            hi += 1;
        }
        (lo..=hi).map(|t| self.sa.position(t)).collect()
    }
}

/// Rank and select over the document array: for each document, the sorted
/// global ranks of its suffixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocRankSelect {
    // ranks of document k occupy ranks[start[k - 1]..start[k]]
    ranks: Vec<u32>,
    start: Vec<usize>,
    // per document: every FANOUT-th entry of the level below, bottom up,
    // down to a top level of at most FANOUT entries
    samples: Vec<Vec<Vec<u32>>>,
}

const FANOUT: usize = 16;

impl DocRankSelect {
    pub fn build(gsa: &GsaIndex) -> Self {
        let m = gsa.num_docs();
        let mut start = vec![0; m + 1];
        for r in 1..=gsa.len() {
            start[gsa.doc(r).0] += 1;
        }
        for k in 1..=m {
            start[k] += start[k - 1];
        }
        let mut fill = start.clone();
        let mut ranks = vec![0; gsa.len()];
        for r in 1..=gsa.len() {
            let k = gsa.doc(r).index();
            ranks[fill[k]] = u32::try_from(r).expect("corpus size fits in u32");
            fill[k] += 1;
        }
        let samples = (0..m)
            .map(|k| {
                let mut levels: Vec<Vec<u32>> = Vec::new();
                let mut below = &ranks[start[k]..start[k + 1]];
                while below.len() > FANOUT {
                    levels.push(below.iter().step_by(FANOUT).copied().collect());
                    below = levels.last().unwrap();
                }
                levels
            })
            .collect();
        DocRankSelect {
            ranks,
            start,
            samples,
        }
    }

    fn doc_ranks(&self, doc: DocumentId) -> Result<&[u32]> {
        if doc.0 == 0 || doc.0 >= self.start.len() {
            return Err(Error::UnknownDocument(doc.0));
        }
        Ok(&self.ranks[self.start[doc.0 - 1]..self.start[doc.0]])
    }

    /// Number of ranks `t < r` with `D[t] = doc`.
    pub fn rank(&self, doc: DocumentId, r: usize) -> Result<usize> {
        let n = self.ranks.len();
        if r == 0 || r > n + 1 {
            return Err(Error::RankOutOfRange { rank: r, max: n + 1 });
        }
        let base = self.doc_ranks(doc)?;
        let levels = &self.samples[doc.index()];
        let r = r as u32;
        let Some(top) = levels.last() else {
            return Ok(base.partition_point(|&t| t < r));
        };
        // c entries of the level above are < r, so on the level below the
        // first FANOUT * (c - 1) + 1 entries are too and entry FANOUT * c is not.
        let mut c = top.partition_point(|&t| t < r);
        for l in (0..levels.len()).rev() {
            if c == 0 {
                return Ok(0);
            }
            let below: &[u32] = if l == 0 { base } else { &levels[l - 1] };
            let lo = FANOUT * (c - 1) + 1;
            let hi = (FANOUT * c).min(below.len());
            c = lo + below[lo..hi].partition_point(|&t| t < r);
        }
        Ok(c)
    }

    /// Global rank of the `i`-th (1-based) suffix of `doc` in GSA order.
    pub fn select(&self, doc: DocumentId, i: usize) -> Result<Option<usize>> {
        let ranks = self.doc_ranks(doc)?;
        Ok(i.checked_sub(1).and_then(|i| ranks.get(i)).map(|&t| t as usize))
    }
}

/// Counting and reporting index over a frozen corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticIndex {
    pub(crate) corpus: Corpus,
    pub(crate) gsa: GsaIndex,
    pub(crate) rmq: Rmq,
    pub(crate) docs: DocRankSelect,
    pub(crate) kits: Vec<DocumentKit>,
}

impl StaticIndex {
    pub fn build(corpus: Corpus) -> Result<Self> {
        Self::build_with(corpus, Execution::default())
    }

    /// Builds the per-document structures sequentially or in parallel.
    pub fn build_with(corpus: Corpus, mode: Execution) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::EmptyDocument);
        }
        let gsa = GsaIndex::build(&corpus);
        let texts: Vec<&[u8]> = corpus.texts().collect();
        let kits = par::map_with(mode, &texts, |t| DocumentKit::build(t));
        Ok(Self::from_parts(corpus, gsa, kits))
    }

    pub(crate) fn from_parts(corpus: Corpus, gsa: GsaIndex, kits: Vec<DocumentKit>) -> Self {
        let rmq = Rmq::build(gsa.lcp().as_slice());
        let docs = DocRankSelect::build(&gsa);
        StaticIndex {
            corpus,
            gsa,
            rmq,
            docs,
            kits,
        }
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn gsa(&self) -> &GsaIndex {
        &self.gsa
    }

    pub fn rmq(&self) -> &Rmq {
        &self.rmq
    }

    pub fn kit(&self, doc: DocumentId) -> Result<&DocumentKit> {
        self.corpus.text(doc)?;
        Ok(&self.kits[doc.index()])
    }

    pub fn doc_rank(&self, doc: DocumentId, r: usize) -> Result<usize> {
        self.docs.rank(doc, r)
    }

    pub fn doc_select(&self, doc: DocumentId, i: usize) -> Result<Option<usize>> {
        self.docs.select(doc, i)
    }

    /// LCP of the suffixes at two global ranks (1-based).
    pub fn lcp_between(&self, r1: usize, r2: usize) -> Result<usize> {
        rmq::lcp_between(&self.gsa, &self.rmq, r1, r2)
    }

    /// A start position of `pat` in `target`, if it occurs there. When both
    /// neighbouring suffixes witness, the preceding one wins.
    pub fn find_witness(&self, pat: SubstringRef, target: DocumentId) -> Result<Option<usize>> {
        Ok(self
            .witness_rank(pat, target)?
            .map(|r| self.kits[target.index()].sa.position(r)))
    }

    // Rank of the witness inside `target`'s own suffix array. A document's
    // suffixes appear in the GSA in the same relative order as in its own
    // suffix array, so the i-th one in the GSA has local rank i.
    fn witness_rank(&self, pat: SubstringRef, target: DocumentId) -> Result<Option<usize>> {
        self.corpus.check(pat)?;
        self.corpus.text(target)?;
        let len = pat.len();
        let r = self.gsa.rank_of(pat.doc, pat.i);
        let before = self.docs.rank(target, r)?;
        for local in [before, before + 1] {
            if let Some(t) = self.docs.select(target, local)? {
                if rmq::lcp_unchecked(&self.gsa, &self.rmq, t, r) >= len {
                    return Ok(Some(local));
                }
            }
        }
        Ok(None)
    }

    pub fn count_occurrences(&self, pat: SubstringRef, target: DocumentId) -> Result<usize> {
        Ok(match self.witness_rank(pat, target)? {
            Some(r) => self.kits[target.index()].count_at_rank(r, pat.len()),
            None => 0,
        })
    }

    /// Start positions of `pat` in `target`, in suffix order of `target`.
    pub fn report_occurrences(&self, pat: SubstringRef, target: DocumentId) -> Result<Vec<usize>> {
        Ok(match self.witness_rank(pat, target)? {
            Some(r) => self.kits[target.index()].report_at_rank(r, pat.len()),
            None => Vec::new(),
        })
    }
}
