//! Brute-force reference answers, computed by materializing the pattern and
//! scanning documents position by position. Overlapping occurrences count
//! separately.

use crate::corpus::{Corpus, DocumentId, SubstringRef};
use crate::error::Result;

/// Ascending 1-based start positions of `pat` inside document `target`.
pub fn naive_report(corpus: &Corpus, pat: SubstringRef, target: DocumentId) -> Result<Vec<usize>> {
    let p = corpus.substring(pat)?;
    let text = corpus.text(target)?;
    Ok(scan(p, text))
}

pub fn naive_count(corpus: &Corpus, pat: SubstringRef, target: DocumentId) -> Result<usize> {
    naive_report(corpus, pat, target).map(|v| v.len())
}

/// Ascending ids of the documents containing `pat` at least once.
pub fn naive_docs(corpus: &Corpus, pat: SubstringRef) -> Result<Vec<DocumentId>> {
    let p = corpus.substring(pat)?;
    Ok(corpus
        .ids()
        .filter(|&d| {
            let text = corpus.text(d).unwrap();
            text.len() >= p.len() && text.windows(p.len()).any(|w| w == p)
        })
        .collect())
}

fn scan(p: &[u8], text: &[u8]) -> Vec<usize> {
    if p.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - p.len())
        .filter(|&s| &text[s..s + p.len()] == p)
        .map(|s| s + 1)
        .collect()
}
