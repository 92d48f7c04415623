//! Plain-text instance format, in the DIMACS shortest-path tradition.
//!
//! ```text
//! c anything after a lone "c" is a comment
//! c index-base 1
//! p mosp <nodes> <arcs> <dim>
//! a <tail> <head> <cost_1> ... <cost_dim>
//! q <source> <target>
//! ```
//!
//! The `p` line must precede all `a` and `q` lines. Node ids are 0-based
//! unless a `c index-base 1` directive appears before the first `a` or `q`
//! line; writers always emit base 0 and no directive. `q` lines are
//! optional and may repeat. Query-set files reuse the `c`/`q` syntax with
//! no `p` header.

use crate::graph::{Cost, Graph, GraphError};
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header declares {declared} arcs but file has {found}")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error("missing `p mosp` header line")]
    MissingHeader,
    #[error("invalid graph: {0}")]
    BadGraph(#[from] GraphError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Graph plus any `q` lines found in the file, in order.
#[derive(Debug)]
pub struct ParsedInstance {
    pub graph: Graph,
    pub queries: Vec<(u32, u32)>,
}

/// Source/target pairs from a query-set file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuerySet {
    pub pairs: Vec<(u32, u32)>,
}

struct Header {
    n: usize,
    m: usize,
    dim: usize,
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("cannot parse {what} from {tok:?}")))
}

fn parse_node(
    tok: &str,
    line: usize,
    base: u32,
    n: usize,
    what: &str,
) -> Result<u32, FormatError> {
    let raw: u64 = tok
        .parse()
        .map_err(|_| syntax(line, format!("cannot parse {what} from {tok:?}")))?;
    if raw < base as u64 {
        return Err(syntax(
            line,
            format!("{what} {raw} below index base {base}"),
        ));
    }
    let id = raw - base as u64;
    if id >= n as u64 {
        return Err(syntax(
            line,
            format!("{what} {raw} out of range for {n} nodes (base {base})"),
        ));
    }
    Ok(id as u32)
}

pub fn read_instance<R: BufRead>(reader: R) -> Result<ParsedInstance, FormatError> {
    let mut header: Option<Header> = None;
    let mut base: u32 = 0;
    let mut body_started = false;
    let mut arcs: Vec<(u32, u32, Vec<Cost>)> = Vec::new();
    let mut queries: Vec<(u32, u32)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut toks = line.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => {
                let rest: Vec<&str> = toks.collect();
                if rest.first() == Some(&"index-base") {
                    if body_started {
                        return Err(syntax(
                            lineno,
                            "index-base directive after first a/q line",
                        ));
                    }
                    let val = rest
                        .get(1)
                        .ok_or_else(|| syntax(lineno, "index-base needs a value"))?;
                    base = match *val {
                        "0" => 0,
                        "1" => 1,
                        other => {
                            return Err(syntax(
                                lineno,
                                format!("index-base must be 0 or 1, got {other:?}"),
                            ))
                        }
                    };
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(syntax(lineno, "duplicate p line"));
                }
                let fmt = toks.next().unwrap_or("");
                if fmt != "mosp" {
                    return Err(syntax(lineno, format!("expected `p mosp`, got {fmt:?}")));
                }
                let n = parse_usize(
                    toks.next().ok_or_else(|| syntax(lineno, "p line truncated"))?,
                    lineno,
                    "node count",
                )?;
                let m = parse_usize(
                    toks.next().ok_or_else(|| syntax(lineno, "p line truncated"))?,
                    lineno,
                    "arc count",
                )?;
                let dim = parse_usize(
                    toks.next().ok_or_else(|| syntax(lineno, "p line truncated"))?,
                    lineno,
                    "dimension",
                )?;
                if toks.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens on p line"));
                }
                header = Some(Header { n, m, dim });
            }
            "a" => {
                let h = header.as_ref().ok_or(FormatError::MissingHeader)?;
                body_started = true;
                let tail = parse_node(
                    toks.next().ok_or_else(|| syntax(lineno, "a line truncated"))?,
                    lineno,
                    base,
                    h.n,
                    "tail",
                )?;
                let head = parse_node(
                    toks.next().ok_or_else(|| syntax(lineno, "a line truncated"))?,
                    lineno,
                    base,
                    h.n,
                    "head",
                )?;
                let mut cost = Vec::with_capacity(h.dim);
                for i in 0..h.dim {
                    let tok = toks.next().ok_or_else(|| {
                        syntax(lineno, format!("expected {} cost components, got {i}", h.dim))
                    })?;
                    cost.push(
                        tok.parse::<Cost>()
                            .map_err(|_| syntax(lineno, format!("bad cost component {tok:?}")))?,
                    );
                }
                if toks.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens on a line"));
                }
                arcs.push((tail, head, cost));
            }
            "q" => {
                let h = header.as_ref().ok_or(FormatError::MissingHeader)?;
                body_started = true;
                let s = parse_node(
                    toks.next().ok_or_else(|| syntax(lineno, "q line truncated"))?,
                    lineno,
                    base,
                    h.n,
                    "source",
                )?;
                let t = parse_node(
                    toks.next().ok_or_else(|| syntax(lineno, "q line truncated"))?,
                    lineno,
                    base,
                    h.n,
                    "target",
                )?;
                if toks.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens on q line"));
                }
                queries.push((s, t));
            }
            other => {
                return Err(syntax(lineno, format!("unknown line type {other:?}")));
            }
        }
    }

    let header = header.ok_or(FormatError::MissingHeader)?;
    if arcs.len() != header.m {
        return Err(FormatError::ArcCountMismatch {
            declared: header.m,
            found: arcs.len(),
        });
    }
    let graph = Graph::build(header.n, header.dim, &arcs)?;
    Ok(ParsedInstance { graph, queries })
}

pub fn write_instance<W: Write>(
    mut w: W,
    graph: &Graph,
    queries: &[(u32, u32)],
) -> io::Result<()> {
    writeln!(
        w,
        "p mosp {} {} {}",
        graph.node_count(),
        graph.arc_count(),
        graph.dimension()
    )?;
    let mut line = String::new();
    for (tail, head, cost) in graph.arcs() {
        line.clear();
        line.push('a');
        for v in [tail as u64, head as u64] {
            line.push(' ');
            line.push_str(&v.to_string());
        }
        for &c in cost {
            line.push(' ');
            line.push_str(&c.to_string());
        }
        writeln!(w, "{line}")?;
    }
    for &(s, t) in queries {
        writeln!(w, "q {s} {t}")?;
    }
    Ok(())
}

pub fn read_instance_from_path(path: &Path) -> Result<ParsedInstance, FormatError> {
    read_instance(BufReader::new(File::open(path)?))
}

pub fn write_instance_to_path(
    path: &Path,
    graph: &Graph,
    queries: &[(u32, u32)],
) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_instance(&mut w, graph, queries)?;
    w.flush()
}

/// Query-set files hold `q s t` lines (and comments) with no header; node
/// ids are validated later, against whichever graph the set is paired with.
pub fn read_queries<R: BufRead>(reader: R) -> Result<QuerySet, FormatError> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut toks = line.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => {}
            "q" => {
                let s = toks
                    .next()
                    .ok_or_else(|| syntax(lineno, "q line truncated"))
                    .and_then(|t| {
                        t.parse::<u32>()
                            .map_err(|_| syntax(lineno, format!("bad source {t:?}")))
                    })?;
                let t = toks
                    .next()
                    .ok_or_else(|| syntax(lineno, "q line truncated"))
                    .and_then(|t| {
                        t.parse::<u32>()
                            .map_err(|_| syntax(lineno, format!("bad target {t:?}")))
                    })?;
                if toks.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens on q line"));
                }
                pairs.push((s, t));
            }
            other => return Err(syntax(lineno, format!("unknown line type {other:?}"))),
        }
    }
    Ok(QuerySet { pairs })
}

pub fn write_queries<W: Write>(mut w: W, set: &QuerySet) -> io::Result<()> {
    for &(s, t) in &set.pairs {
        writeln!(w, "q {s} {t}")?;
    }
    Ok(())
}

pub fn read_queries_from_path(path: &Path) -> Result<QuerySet, FormatError> {
    read_queries(BufReader::new(File::open(path)?))
}

pub fn write_queries_to_path(path: &Path, set: &QuerySet) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_queries(&mut w, set)?;
    w.flush()
}
