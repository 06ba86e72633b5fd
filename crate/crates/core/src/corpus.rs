//! Document storage and substring coordinates.
//!
//! All positions and document ids exposed here are 1-based.

use crate::error::{Error, Result};

/// Byte reserved for internal end-of-document markers.
pub const SENTINEL: u8 = 0;

/// 1-based identifier of a document inside a [`Corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DocumentId(pub usize);

impl DocumentId {
    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn index(self) -> usize {
        self.0 - 1
    }
}

impl std::fmt::Display for DocumentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The substring `T_doc[i..=j]` of a stored document, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubstringRef {
    pub doc: DocumentId,
    pub i: usize,
    pub j: usize,
}

impl SubstringRef {
    pub fn new(doc: usize, i: usize, j: usize) -> Self {
        SubstringRef {
            doc: DocumentId(doc),
            i,
            j,
        }
    }

    /// Pattern length. Only meaningful for a validated reference.
    pub fn len(&self) -> usize {
        self.j + 1 - self.i
    }

    pub fn is_empty(&self) -> bool {
        self.j < self.i
    }
}

/// Rejects texts that cannot be indexed.
pub fn validate_text(text: &[u8]) -> Result<()> {
    if text.is_empty() {
        return Err(Error::EmptyDocument);
    }
    if let Some(offset) = text.iter().position(|&b| b == SENTINEL) {
        return Err(Error::SentinelInText { offset });
    }
    Ok(())
}

/// An append-only collection of immutable documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    docs: Vec<Box<[u8]>>,
    total: usize,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a corpus from texts in order; the first text gets id 1.
    pub fn from_texts<I, T>(texts: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        let mut corpus = Corpus::new();
        for t in texts {
            corpus.add_document(t.as_ref())?;
        }
        Ok(corpus)
    }

    pub fn add_document(&mut self, text: &[u8]) -> Result<DocumentId> {
        validate_text(text)?;
        self.docs.push(text.into());
        self.total += text.len();
        Ok(DocumentId(self.docs.len()))
    }

    /// Number of documents `m`.
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Total text length `n` over all documents.
    pub fn total_len(&self) -> usize {
        self.total
    }

    pub fn ids(&self) -> impl Iterator<Item = DocumentId> {
        (1..=self.docs.len()).map(DocumentId)
    }

    pub fn text(&self, doc: DocumentId) -> Result<&[u8]> {
        if doc.0 == 0 || doc.0 > self.docs.len() {
            return Err(Error::UnknownDocument(doc.0));
        }
        Ok(&self.docs[doc.index()])
    }

    pub fn texts(&self) -> impl Iterator<Item = &[u8]> {
        self.docs.iter().map(|d| &d[..])
    }

    pub fn check(&self, pat: SubstringRef) -> Result<()> {
        let len = self.text(pat.doc)?.len();
        if pat.i == 0 || pat.i > pat.j || pat.j > len {
            return Err(Error::OutOfRange {
                doc: pat.doc.0,
                i: pat.i,
                j: pat.j,
                len,
            });
        }
        Ok(())
    }

    pub fn substring(&self, pat: SubstringRef) -> Result<&[u8]> {
        self.check(pat)?;
        Ok(&self.text(pat.doc)?[pat.i - 1..pat.j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ids_are_sequential() {
        let mut c = Corpus::new();
        assert_eq!(c.add_document(b"abab").unwrap(), DocumentId(1));
        assert_eq!(c.add_document(b"ba").unwrap(), DocumentId(2));
        assert_eq!(c.total_len(), 6);
        assert_eq!(c.add_document(b""), Err(Error::EmptyDocument));
        assert_eq!(
            c.add_document(b"a\0b"),
            Err(Error::SentinelInText { offset: 1 })
        );
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn substring_slices() {
        let c = Corpus::from_texts(["abab"]).unwrap();
        assert_eq!(c.substring(SubstringRef::new(1, 1, 2)).unwrap(), b"ab");
        assert_eq!(c.substring(SubstringRef::new(1, 1, 4)).unwrap(), b"abab");
        assert!(matches!(
            c.substring(SubstringRef::new(1, 3, 5)),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            c.substring(SubstringRef::new(1, 0, 1)),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            c.substring(SubstringRef::new(1, 3, 2)),
            Err(Error::OutOfRange { .. })
        ));
        assert_eq!(
            c.substring(SubstringRef::new(2, 1, 1)),
            Err(Error::UnknownDocument(2))
        );
    }

    proptest! {
        #[test]
        fn adjacent_splits_concatenate(text in proptest::collection::vec(1u8..=255, 2..40), a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
            let corpus = Corpus::from_texts([&text]).unwrap();
            let n = text.len();
            let mut cuts = [a % n + 1, b % n + 1, c % n + 1];
            cuts.sort();
            let (i, p, j) = (cuts[0], cuts[1], cuts[2]);
            prop_assume!(i <= p && p < j);
            let left = corpus.substring(SubstringRef::new(1, i, p)).unwrap();
            let right = corpus.substring(SubstringRef::new(1, p + 1, j)).unwrap();
            let whole = corpus.substring(SubstringRef::new(1, i, j)).unwrap();
            prop_assert_eq!([left, right].concat(), whole.to_vec());
        }
    }
}
