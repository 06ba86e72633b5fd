//! Query scripts: one command per line, whitespace-separated, 1-based.
//!
//! ```text
//! count k i j l       occurrences of T_k[i..j] in T_l
//! report k i j l      their start positions, ascending
//! docreport k i j     ids of the documents containing T_k[i..j], ascending
//! doccount k i j      how many documents contain T_k[i..j]
//! add <path>          append a document (dynamic mode only)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::path::PathBuf;

use crossdoc::{DocumentId, Query, SubstringRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Query(Query),
    Add(PathBuf),
}

/// A command together with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

pub fn parse(text: &str) -> Result<Vec<Line>, SyntaxError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let command = parse_line(line).map_err(|message| SyntaxError {
            line: number,
            message,
        })?;
        out.push(Line { number, command });
    }
    Ok(out)
}

fn parse_line(line: &str) -> Result<Command, String> {
    let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let rest = rest.trim();
    if word == "add" {
        if rest.is_empty() {
            return Err("add needs a path".into());
        }
        return Ok(Command::Add(PathBuf::from(rest)));
    }
    let arity = match word {
        "count" | "report" => 4,
        "docreport" | "doccount" => 3,
        _ => return Err(format!("unknown command '{word}'")),
    };
    let args = rest
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| format!("'{t}' is not a non-negative integer")))
        .collect::<Result<Vec<_>, _>>()?;
    if args.len() != arity {
        return Err(format!("{word} takes {arity} integers, got {}", args.len()));
    }
    let pat = SubstringRef::new(args[0], args[1], args[2]);
    Ok(Command::Query(match word {
        "count" => Query::Count(pat, DocumentId(args[3])),
        "report" => Query::Report(pat, DocumentId(args[3])),
        "docreport" => Query::DocReport(pat),
        _ => Query::DocCount(pat),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_command() {
        let script = "count 1 1 2 1\n\n# comment\nreport 1 1 2 3\ndocreport 2 1 2\n  doccount 1 2 2  \nadd docs/x.txt\n";
        let lines = parse(script).unwrap();
        let numbers: Vec<usize> = lines.iter().map(|l| l.number).collect();
        assert_eq!(numbers, [1, 4, 5, 6, 7]);
        let p = SubstringRef::new;
        assert_eq!(lines[0].command, Command::Query(Query::Count(p(1, 1, 2), DocumentId(1))));
        assert_eq!(lines[1].command, Command::Query(Query::Report(p(1, 1, 2), DocumentId(3))));
        assert_eq!(lines[2].command, Command::Query(Query::DocReport(p(2, 1, 2))));
        assert_eq!(lines[3].command, Command::Query(Query::DocCount(p(1, 2, 2))));
        assert_eq!(lines[4].command, Command::Add(PathBuf::from("docs/x.txt")));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("count 1 1 2 1\ncount 1 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(parse("find 1 2 3").unwrap_err().line, 1);
        assert_eq!(parse("\n\nreport 1 x 2 1").unwrap_err().line, 3);
        assert_eq!(parse("count -1 1 1 1").unwrap_err().line, 1);
        assert_eq!(parse("add").unwrap_err().line, 1);
    }
}
