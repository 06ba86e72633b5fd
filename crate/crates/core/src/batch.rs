//! Query values, canonical answers and batch execution.

use std::fmt;

use crate::corpus::{Corpus, DocumentId, SubstringRef};
use crate::doc_index::DocIndex;
use crate::dynamic::DynamicIndex;
use crate::error::Result;
use crate::oracle;
use crate::par::{self, Execution};
use crate::static_index::StaticIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    Count(SubstringRef, DocumentId),
    Report(SubstringRef, DocumentId),
    DocReport(SubstringRef),
    DocCount(SubstringRef),
}

/// Canonical query answer: positions and document ids are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Count(usize),
    Positions(Vec<usize>),
    Documents(Vec<DocumentId>),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            Answer::Count(c) => write!(f, "{c}"),
            Answer::Positions(p) => join(f, p),
            Answer::Documents(d) => join(f, d),
        }
    }
}

/// Static counting/reporting index together with the document-level index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticEngine {
    pub index: StaticIndex,
    pub docs: DocIndex,
}

impl StaticEngine {
    pub fn build(corpus: Corpus) -> Result<Self> {
        Self::build_with(corpus, Execution::default())
    }

    pub fn build_with(corpus: Corpus, mode: Execution) -> Result<Self> {
        let index = StaticIndex::build_with(corpus, mode)?;
        let docs = DocIndex::build(&index);
        Ok(StaticEngine { index, docs })
    }

    pub fn corpus(&self) -> &Corpus {
        self.index.corpus()
    }

    pub fn answer(&self, q: &Query) -> Result<Answer> {
        Ok(match *q {
            Query::Count(p, l) => Answer::Count(self.index.count_occurrences(p, l)?),
            Query::Report(p, l) => {
                let mut v = self.index.report_occurrences(p, l)?;
                v.sort_unstable();
                Answer::Positions(v)
            }
            Query::DocReport(p) => {
                let mut v = self.docs.list_documents(&self.index, p)?;
                v.sort_unstable();
                Answer::Documents(v)
            }
            Query::DocCount(p) => Answer::Count(self.docs.count_documents(&self.index, p)?),
        })
    }

    pub fn run(&self, queries: &[Query], mode: Execution) -> Vec<Result<Answer>> {
        par::map_with(mode, queries, |q| self.answer(q))
    }
}

impl DynamicIndex {
    pub fn answer(&self, q: &Query) -> Result<Answer> {
        Ok(match *q {
            Query::Count(p, l) => Answer::Count(self.count(p, l)?),
            Query::Report(p, l) => {
                let mut v = self.report(p, l)?;
                v.sort_unstable();
                Answer::Positions(v)
            }
            Query::DocReport(p) => Answer::Documents(self.documents(p)?),
            Query::DocCount(p) => Answer::Count(self.documents(p)?.len()),
        })
    }
}

/// Reference answer from the brute-force oracle.
pub fn oracle_answer(corpus: &Corpus, q: &Query) -> Result<Answer> {
    Ok(match *q {
        Query::Count(p, l) => Answer::Count(oracle::naive_count(corpus, p, l)?),
        Query::Report(p, l) => Answer::Positions(oracle::naive_report(corpus, p, l)?),
        Query::DocReport(p) => Answer::Documents(oracle::naive_docs(corpus, p)?),
        Query::DocCount(p) => Answer::Count(oracle::naive_docs(corpus, p)?.len()),
    })
}
