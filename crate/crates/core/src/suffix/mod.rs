//! Suffix arrays, LCP arrays, the generalized suffix array and suffix trees.
//!
//! Every document is conceptually terminated by its own sentinel `$_i`,
//! with `$_i < $_j` for `i < j` and all sentinels below every text byte.
//! Equal text suffixes from different documents therefore order by document
//! id, and no two suffixes compare equal. Sentinels never count towards an
//! LCP value.
//!
//! Public accessors take and return 1-based ranks and positions.

mod sais;
pub(crate) mod tree;

pub use tree::{NodeId, SuffixTree};

use crate::corpus::{Corpus, DocumentId};
use crate::error::{Error, Result};

/// Sorted suffixes of a single text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    // 0-based start positions by 0-based rank
    pub(crate) sa: Vec<usize>,
    // 0-based rank by 0-based position
    pub(crate) inverse: Vec<usize>,
}

impl SuffixArray {
    pub fn build(text: &[u8]) -> Self {
        let mut s: Vec<usize> = text.iter().map(|&b| b as usize).collect();
        s.push(0);
        let mut sa = sais::suffix_array(&s, 256);
        // The terminal-only suffix always sorts first.
        sa.remove(0);
        Self::from_order(sa)
    }

    pub(crate) fn from_order(sa: Vec<usize>) -> Self {
        let mut inverse = vec![0; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            inverse[p] = r;
        }
        SuffixArray { sa, inverse }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Start position (1-based) of the suffix with the given 1-based rank.
    pub fn position(&self, rank: usize) -> usize {
        self.sa[rank - 1] + 1
    }

    /// 1-based rank of the suffix starting at the 1-based position.
    pub fn rank(&self, position: usize) -> usize {
        self.inverse[position - 1] + 1
    }

    /// All start positions in rank order, 1-based.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.sa.iter().map(|&p| p + 1)
    }
}

/// `lcp[r]` is the longest common prefix of the suffixes of ranks `r - 1`
/// and `r`; the first entry is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpArray {
    pub(crate) lcp: Vec<usize>,
}

impl LcpArray {
    pub fn build(text: &[u8], sa: &SuffixArray) -> Self {
        // Kasai on the bare text; running off the end acts as the sentinel.
        let s: Vec<usize> = text.iter().map(|&b| b as usize + 1).collect();
        LcpArray {
            lcp: sais::kasai(&s, &sa.sa),
        }
    }

    /// Value at a 1-based rank.
    pub fn get(&self, rank: usize) -> usize {
        self.lcp[rank - 1]
    }

    pub fn len(&self) -> usize {
        self.lcp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lcp.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.lcp
    }
}

/// A suffix of one document: `T_doc[pos..]`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuffixPos {
    pub doc: DocumentId,
    pub pos: usize,
}

/// Generalized suffix array with LCP, document array and inverse ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsaIndex {
    pub(crate) suffixes: Vec<SuffixPos>,
    pub(crate) lcp: LcpArray,
    // doc_start[k] = number of text bytes in documents before document k + 1
    pub(crate) doc_start: Vec<usize>,
    // 0-based global rank of each (doc, pos), flattened by doc_start
    pub(crate) inv: Vec<u32>,
}

impl GsaIndex {
    pub fn build(corpus: &Corpus) -> Self {
        let m = corpus.len();
        let n = corpus.total_len();
        // $_k -> k, byte b -> m + 1 + b, terminal -> 0
        let mut s = Vec::with_capacity(n + m + 1);
        let mut owner = Vec::with_capacity(n + m + 1);
        let mut doc_start = Vec::with_capacity(m + 1);
        doc_start.push(0);
        for (k, text) in corpus.texts().enumerate() {
            for (p, &b) in text.iter().enumerate() {
                s.push(m + 1 + b as usize);
                owner.push(Some(SuffixPos {
                    doc: DocumentId(k + 1),
                    pos: p + 1,
                }));
            }
            s.push(k + 1);
            owner.push(None);
            doc_start.push(doc_start[k] + text.len());
        }
        s.push(0);
        owner.push(None);

        let sa = sais::suffix_array(&s, m + 257);
        let full_lcp = sais::kasai(&s, &sa);
        // Ranks 0..=m hold the terminal and the sentinel-only suffixes.
        let suffixes: Vec<SuffixPos> = sa[m + 1..].iter().map(|&p| owner[p].unwrap()).collect();
        let mut lcp: Vec<usize> = full_lcp[m + 1..].to_vec();
        if let Some(first) = lcp.first_mut() {
            *first = 0;
        }

        assert!(u32::try_from(n).is_ok(), "corpus too large for u32 ranks");
        let mut inv = vec![0; n];
        for (r, sp) in suffixes.iter().enumerate() {
            inv[doc_start[sp.doc.index()] + sp.pos - 1] = r as u32;
        }
        GsaIndex {
            suffixes,
            lcp: LcpArray { lcp },
            doc_start,
            inv,
        }
    }

    /// Total number of suffixes `n`.
    pub fn len(&self) -> usize {
        self.suffixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.suffixes.is_empty()
    }

    pub fn num_docs(&self) -> usize {
        self.doc_start.len() - 1
    }

    pub fn lcp(&self) -> &LcpArray {
        &self.lcp
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if rank == 0 || rank > self.len() {
            return Err(Error::RankOutOfRange {
                rank,
                max: self.len(),
            });
        }
        Ok(())
    }

    /// The suffix at a 1-based global rank.
    pub fn suffix(&self, rank: usize) -> SuffixPos {
        self.suffixes[rank - 1]
    }

    /// Document array entry `D[rank]`.
    pub fn doc(&self, rank: usize) -> DocumentId {
        self.suffixes[rank - 1].doc
    }

    pub fn doc_len(&self, doc: DocumentId) -> usize {
        self.doc_start[doc.0] - self.doc_start[doc.0 - 1]
    }

    /// Length of the text suffix at a 1-based rank (sentinel excluded).
    pub fn suffix_len(&self, rank: usize) -> usize {
        let sp = self.suffix(rank);
        self.doc_len(sp.doc) - sp.pos + 1
    }

    /// 1-based global rank of `T_doc[pos..]`.
    pub fn rank_of(&self, doc: DocumentId, pos: usize) -> usize {
        self.inv[self.doc_start[doc.0 - 1] + pos - 1] as usize + 1
    }

    pub fn suffixes(&self) -> &[SuffixPos] {
        &self.suffixes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffix_array_examples() {
        assert_eq!(
            SuffixArray::build(b"abab").positions().collect::<Vec<_>>(),
            [3, 1, 4, 2]
        );
        assert_eq!(
            SuffixArray::build(b"a").positions().collect::<Vec<_>>(),
            [1]
        );
        assert_eq!(
            SuffixArray::build(b"aaa").positions().collect::<Vec<_>>(),
            [3, 2, 1]
        );
    }

    #[test]
    fn lcp_examples() {
        for (text, want) in [
            (&b"abab"[..], &[0, 2, 0, 1][..]),
            (b"a", &[0]),
            (b"aaa", &[0, 1, 2]),
        ] {
            let sa = SuffixArray::build(text);
            assert_eq!(LcpArray::build(text, &sa).as_slice(), want);
        }
    }

    fn sp(doc: usize, pos: usize) -> SuffixPos {
        SuffixPos {
            doc: DocumentId(doc),
            pos,
        }
    }

    #[test]
    fn gsa_examples() {
        let g = GsaIndex::build(&Corpus::from_texts(["ab", "b"]).unwrap());
        assert_eq!(g.suffixes(), [sp(1, 1), sp(1, 2), sp(2, 1)]);
        assert_eq!(g.lcp().as_slice(), [0, 0, 1]);
        assert_eq!((1..=3).map(|r| g.doc(r).0).collect::<Vec<_>>(), [1, 1, 2]);

        let g = GsaIndex::build(&Corpus::from_texts(["a"]).unwrap());
        assert_eq!(g.suffixes(), [sp(1, 1)]);

        let g = GsaIndex::build(&Corpus::from_texts(["ba", "ba"]).unwrap());
        assert_eq!(g.suffixes(), [sp(1, 2), sp(2, 2), sp(1, 1), sp(2, 1)]);
        assert_eq!(g.lcp().as_slice(), [0, 1, 0, 2]);
        for r in 1..=4 {
            let s = g.suffix(r);
            assert_eq!(g.rank_of(s.doc, s.pos), r);
        }
    }
}
