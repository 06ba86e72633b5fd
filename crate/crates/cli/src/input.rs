//! Corpus ingestion.
//!
//! A corpus path is either a directory, where every regular file is one
//! document and documents are numbered in file-name order, or a manifest: a
//! text file listing one document path per line. Manifest paths are relative
//! to the manifest's directory; blank lines and `#` comments are skipped.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub fn document_paths(corpus: &Path) -> io::Result<Vec<PathBuf>> {
    if corpus.is_dir() {
        let mut paths = Vec::new();
        for entry in fs::read_dir(corpus)? {
            let entry = entry?;
            if entry.file_type()?.is_file() {
                paths.push(entry.path());
            }
        }
        paths.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
        return Ok(paths);
    }
    let base = corpus.parent().unwrap_or(Path::new(""));
    Ok(fs::read_to_string(corpus)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect())
}

pub fn read_documents(corpus: &Path) -> io::Result<Vec<(PathBuf, Vec<u8>)>> {
    document_paths(corpus)?
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
            Ok((p, bytes))
        })
        .collect()
}
