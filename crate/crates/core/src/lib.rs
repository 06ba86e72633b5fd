//! Cross-document pattern matching.
//!
//! Given a corpus of documents, count and report the occurrences of a
//! substring `T_k[i..j]` of one document inside another document `T_ℓ`, and
//! list or count the documents containing it. Patterns are given by their
//! coordinates and are never copied out of the corpus.
//!
//! [`StaticIndex`] and [`DocIndex`] answer queries over a frozen corpus.
//! [`DynamicIndex`] supports appending documents and answers the same
//! per-document queries online. [`oracle`] holds brute-force reference
//! implementations.
//!
//! ```
//! use crossdoc::{Corpus, DocumentId, StaticIndex, SubstringRef};
//!
//! let corpus = Corpus::from_texts(["abab", "ba", "abc"]).unwrap();
//! let index = StaticIndex::build(corpus).unwrap();
//! // "ab" = T_1[1..2] occurs twice in T_1 and once in T_3
//! let ab = SubstringRef::new(1, 1, 2);
//! assert_eq!(index.count_occurrences(ab, DocumentId(1)).unwrap(), 2);
//! assert_eq!(index.count_occurrences(ab, DocumentId(3)).unwrap(), 1);
//! ```

pub mod batch;
pub mod corpus;
pub mod doc_index;
pub mod dynamic;
pub mod error;
pub mod format;
pub mod oracle;
pub mod par;
pub mod rmq;
pub mod static_index;
pub mod suffix;
pub mod wla;

pub use batch::{Answer, Query};
pub use corpus::{Corpus, DocumentId, SubstringRef};
pub use doc_index::DocIndex;
pub use dynamic::DynamicIndex;
pub use error::{Error, Result};
pub use par::Execution;
pub use static_index::StaticIndex;
