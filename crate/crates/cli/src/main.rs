//! `crossdoc`: build cross-document indexes and run query scripts.
//!
//! ```text
//! crossdoc build <CORPUS> <INDEX>
//! crossdoc query --index <INDEX> <SCRIPT> [--verify] [--bench]
//! crossdoc query --dynamic [--corpus <CORPUS>] <SCRIPT> [--verify] [--bench]
//! ```
//!
//! Exit codes: 0 success, 2 I/O error or unreadable index, 3 invalid corpus,
//! script or query, 4 an answer disagreed with the oracle under `--verify`.

mod input;
mod script;

use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use crossdoc::batch::{oracle_answer, StaticEngine};
use crossdoc::{format, Answer, Corpus, DynamicIndex, Execution, Query};

use script::{Command, Line};

#[derive(Parser)]
#[command(name = "crossdoc", version, about = "Cross-document substring counting and reporting")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Index a corpus directory or manifest and write an XDOC1 index file.
    Build {
        /// Directory with one document per file, or a manifest of paths.
        corpus: PathBuf,
        /// Output index file.
        index: PathBuf,
    },
    /// Run a query script, printing one line per query.
    Query {
        /// Script with one command per line.
        script: PathBuf,
        /// Index file written by `build`.
        #[arg(long, required_unless_present = "dynamic", conflicts_with = "dynamic")]
        index: Option<PathBuf>,
        /// Start from an empty dynamic index; scripts may `add` documents.
        #[arg(long)]
        dynamic: bool,
        /// Documents to load into the dynamic index before the script runs.
        #[arg(long, requires = "dynamic")]
        corpus: Option<PathBuf>,
        /// Check every answer against the brute-force oracle.
        #[arg(long)]
        verify: bool,
        /// Append each query's wall time in nanoseconds as a tab-separated column.
        #[arg(long)]
        bench: bool,
    },
}

enum Failure {
    Io(String),
    Invalid(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Invalid(m) | Failure::Mismatch(m) => m,
        }
    }
}

fn io_failure(context: impl Display, e: impl Display) -> Failure {
    Failure::Io(format!("{context}: {e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let result = match cli.command {
        Cmd::Build { corpus, index } => build(&corpus, &index),
        Cmd::Query {
            script,
            index,
            dynamic: _,
            corpus,
            verify,
            bench,
        } => query(&script, index.as_deref(), corpus.as_deref(), verify, bench),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("crossdoc: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn load_corpus(path: &Path) -> Result<Corpus, Failure> {
    let docs = input::read_documents(path).map_err(|e| io_failure(path.display(), e))?;
    let mut corpus = Corpus::new();
    for (p, bytes) in docs {
        corpus
            .add_document(&bytes)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?;
    }
    Ok(corpus)
}

fn build(corpus_path: &Path, index_path: &Path) -> Result<(), Failure> {
    let corpus = load_corpus(corpus_path)?;
    if corpus.is_empty() {
        return Err(Failure::Invalid(format!("{}: no documents", corpus_path.display())));
    }
    let engine = StaticEngine::build(corpus).map_err(|e| Failure::Invalid(e.to_string()))?;
    fs::write(index_path, format::encode(&engine)).map_err(|e| io_failure(index_path.display(), e))
}

fn query(
    script_path: &Path,
    index: Option<&Path>,
    corpus: Option<&Path>,
    verify: bool,
    bench: bool,
) -> Result<(), Failure> {
    let text = fs::read_to_string(script_path).map_err(|e| io_failure(script_path.display(), e))?;
    let lines = script::parse(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", script_path.display())))?;
    let stdout = io::stdout();
    let mut out = Output {
        sink: BufWriter::new(stdout.lock()),
        bench,
    };
    let result = match index {
        Some(path) => {
            let bytes = fs::read(path).map_err(|e| io_failure(path.display(), e))?;
            let engine = format::decode(&bytes).map_err(|e| io_failure(path.display(), e))?;
            run_static(&engine, &lines, verify, &mut out)
        }
        None => {
            let base = script_path.parent().unwrap_or(Path::new(""));
            run_dynamic(base, corpus, &lines, verify, &mut out)
        }
    };
    let flushed = out.sink.flush().map_err(|e| io_failure("stdout", e));
    result.and(flushed)
}

struct Output<W: Write> {
    sink: W,
    bench: bool,
}

impl<W: Write> Output<W> {
    fn emit(&mut self, answer: &Answer, nanos: u128) -> Result<(), Failure> {
        let written = if self.bench {
            writeln!(self.sink, "{answer}\t{nanos}")
        } else {
            writeln!(self.sink, "{answer}")
        };
        written.map_err(|e| io_failure("stdout", e))
    }
}

fn invalid(line: usize, e: impl Display) -> Failure {
    Failure::Invalid(format!("line {line}: {e}"))
}

fn check(corpus: &Corpus, line: usize, q: &Query, got: &Answer) -> Result<(), Failure> {
    let want = oracle_answer(corpus, q).map_err(|e| invalid(line, e))?;
    if &want != got {
        return Err(Failure::Mismatch(format!(
            "line {line}: index answered '{got}', oracle answered '{want}'"
        )));
    }
    Ok(())
}

fn run_static<W: Write>(engine: &StaticEngine, lines: &[Line], verify: bool, out: &mut Output<W>) -> Result<(), Failure> {
    let mut queries = Vec::with_capacity(lines.len());
    for line in lines {
        match &line.command {
            Command::Query(q) => queries.push((line.number, *q)),
            Command::Add(_) => return Err(invalid(line.number, "add needs --dynamic")),
        }
    }
    if !verify && !out.bench {
        let batch: Vec<Query> = queries.iter().map(|&(_, q)| q).collect();
        let answers = engine.run(&batch, Execution::Parallel);
        for ((number, _), answer) in queries.iter().zip(answers) {
            out.emit(&answer.map_err(|e| invalid(*number, e))?, 0)?;
        }
        return Ok(());
    }
    for (number, q) in queries {
        let started = Instant::now();
        let answer = engine.answer(&q);
        let nanos = started.elapsed().as_nanos();
        let answer = answer.map_err(|e| invalid(number, e))?;
        if verify {
            check(engine.corpus(), number, &q, &answer)?;
        }
        out.emit(&answer, nanos)?;
    }
    Ok(())
}

fn run_dynamic<W: Write>(
    base: &Path,
    corpus: Option<&Path>,
    lines: &[Line],
    verify: bool,
    out: &mut Output<W>,
) -> Result<(), Failure> {
    let mut index = DynamicIndex::new();
    if let Some(path) = corpus {
        for text in load_corpus(path)?.texts() {
            index.add_document(text).map_err(|e| Failure::Invalid(e.to_string()))?;
        }
    }
    for line in lines {
        match &line.command {
            Command::Add(path) => {
                let path = base.join(path);
                let bytes = fs::read(&path).map_err(|e| io_failure(path.display(), e))?;
                index
                    .add_document(&bytes)
                    .map_err(|e| invalid(line.number, format!("{}: {e}", path.display())))?;
            }
            Command::Query(q) => {
                let started = Instant::now();
                let answer = index.answer(q);
                let nanos = started.elapsed().as_nanos();
                let answer = answer.map_err(|e| invalid(line.number, e))?;
                if verify {
                    check(index.corpus(), line.number, q, &answer)?;
                }
                out.emit(&answer, nanos)?;
            }
        }
    }
    Ok(())
}
