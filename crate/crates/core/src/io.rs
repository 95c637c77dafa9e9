//! Plain-text instance, representation and space-time files.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::{GraphError, RepError};
use crate::graph::{MaxWait, TemporalEdge, TemporalGraph, Time, WaitingBounds};
use crate::representation::{DoublySortedRep, SpaceTimeGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Any of the three file kinds.
#[derive(Debug, Clone)]
pub enum InputFile {
    Instance(TemporalGraph),
    Rep(TemporalGraph, DoublySortedRep),
    SpaceTime(TemporalGraph, SpaceTimeGraph),
}

impl InputFile {
    pub fn graph(&self) -> &TemporalGraph {
        match self {
            InputFile::Instance(g) | InputFile::Rep(g, _) | InputFile::SpaceTime(g, _) => g,
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable() }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        self.inner.next().ok_or(ParseError::Truncated(what))
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn fields<const K: usize>(line: usize, text: &str) -> Result<[&str; K], ParseError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    parts
        .try_into()
        .map_err(|p: Vec<&str>| syntax(line, format!("expected {K} fields, found {}", p.len())))
}

fn int<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| syntax(line, format!("`{s}` is not an integer in range")))
}

fn parse_beta(line: usize, s: &str) -> Result<MaxWait, ParseError> {
    if s == "inf" {
        Ok(MaxWait::Infinite)
    } else {
        int(line, s).map(MaxWait::Finite)
    }
}

fn parse_waiting(lines: &mut Lines<'_>, n: usize) -> Result<Vec<WaitingBounds>, ParseError> {
    (0..n)
        .map(|_| {
            let (ln, l) = lines.next("waiting bounds")?;
            let [a, b] = fields(ln, l)?;
            Ok(WaitingBounds::new(int(ln, a)?, parse_beta(ln, b)?))
        })
        .collect()
}

fn parse_body(lines: &mut Lines<'_>) -> Result<TemporalGraph, ParseError> {
    let (ln, header) = lines.next("header")?;
    let [n, m] = fields(ln, header)?;
    let (n, m): (usize, usize) = (int(ln, n)?, int(ln, m)?);
    let waiting = parse_waiting(lines, n)?;
    let mut edges = Vec::with_capacity(m.min(1 << 24));
    for _ in 0..m {
        let (ln, l) = lines.next("edges")?;
        let [t, h, d, tr] = fields(ln, l)?;
        edges.push(TemporalEdge::new(int(ln, t)?, int(ln, h)?, int(ln, d)?, int(ln, tr)?));
    }
    Ok(TemporalGraph::new(waiting, edges)?)
}

fn parse_perm(lines: &mut Lines<'_>, tag: &'static str) -> Result<Vec<usize>, ParseError> {
    let (ln, l) = lines.next(tag)?;
    let rest = l
        .strip_prefix(tag)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| syntax(ln, format!("expected `{tag}:`")))?;
    rest.split_whitespace().map(|s| int(ln, s)).collect()
}

fn expect_end(lines: &mut Lines<'_>) -> Result<(), ParseError> {
    match lines.peek() {
        None => Ok(()),
        Some(&(ln, _)) => Err(syntax(ln, "trailing content")),
    }
}

pub fn parse_instance(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut lines = Lines::new(text);
    let g = parse_body(&mut lines)?;
    expect_end(&mut lines)?;
    Ok(g)
}

/// Instance followed by `arr:` and `dep:` permutation lines.
pub fn parse_rep_file(text: &str) -> Result<(TemporalGraph, DoublySortedRep), ParseError> {
    let mut lines = Lines::new(text);
    let g = parse_body(&mut lines)?;
    let arr = parse_perm(&mut lines, "arr")?;
    let dep = parse_perm(&mut lines, "dep")?;
    expect_end(&mut lines)?;
    let rep = DoublySortedRep::from_orders(&g, arr, dep)?;
    Ok((g, rep))
}

pub fn parse_space_time(text: &str) -> Result<(TemporalGraph, SpaceTimeGraph), ParseError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next("header")?;
    let [kw, n, k, m] = fields(ln, header)?;
    if kw != "spacetime" {
        return Err(syntax(ln, "expected `spacetime n copies m`"));
    }
    let (n, k, m): (usize, usize, usize) = (int(ln, n)?, int(ln, k)?, int(ln, m)?);
    let waiting = parse_waiting(&mut lines, n)?;
    let mut copies: Vec<Vec<Time>> = vec![Vec::new(); n];
    let mut last_node = 0;
    for _ in 0..k {
        let (ln, l) = lines.next("copies")?;
        let (v, t) = l.split_once('@').ok_or_else(|| syntax(ln, "expected `node@time`"))?;
        let v: usize = int(ln, v)?;
        if v >= n || v < last_node {
            return Err(syntax(ln, "copies must be grouped by node in increasing id"));
        }
        last_node = v;
        copies[v].push(int(ln, t)?);
    }
    let mut conn = vec![None; m];
    for _ in 0..m {
        let (ln, l) = lines.next("connection arcs")?;
        let [tag, a, b, e] = fields(ln, l)?;
        if tag != "C" {
            return Err(syntax(ln, "expected `C from to edge`"));
        }
        let e: usize = int(ln, e)?;
        if e >= m || conn[e].is_some() {
            return Err(syntax(ln, format!("edge id {e} repeated or out of range")));
        }
        conn[e] = Some((int(ln, a)?, int(ln, b)?));
    }
    let conn: Vec<(usize, usize)> = conn.into_iter().map(|c| c.unwrap()).collect();
    let st = SpaceTimeGraph::new(copies, conn)?;
    let arcs: Vec<(usize, usize)> = st.waiting_arcs().collect();
    let mut expected = arcs.into_iter();
    while let Some(&(ln, l)) = lines.peek() {
        lines.next("waiting arcs")?;
        let [tag, a, b] = fields(ln, l)?;
        let arc: (usize, usize) = (int(ln, a)?, int(ln, b)?);
        if tag != "W" || expected.next() != Some(arc) {
            return Err(syntax(ln, "waiting arcs must join consecutive copies, in order"));
        }
    }
    if expected.next().is_some() {
        return Err(ParseError::Truncated("waiting arcs"));
    }
    let g = st.to_temporal_graph(waiting)?;
    Ok((g, st))
}

/// Detect the file kind from its header and trailing lines.
pub fn parse_any(text: &str) -> Result<InputFile, ParseError> {
    let mut lines = Lines::new(text);
    if lines.peek().is_some_and(|(_, l)| l.starts_with("spacetime")) {
        let (g, st) = parse_space_time(text)?;
        return Ok(InputFile::SpaceTime(g, st));
    }
    if text.lines().any(|l| l.trim_start().starts_with("arr:")) {
        let (g, rep) = parse_rep_file(text)?;
        return Ok(InputFile::Rep(g, rep));
    }
    Ok(InputFile::Instance(parse_instance(text)?))
}

fn write_body(out: &mut String, g: &TemporalGraph) {
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    write_waiting(out, g);
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {} {}", e.tail, e.head, e.dep, e.travel);
    }
}

fn write_waiting(out: &mut String, g: &TemporalGraph) {
    for w in g.waiting_bounds() {
        let _ = writeln!(out, "{} {}", w.alpha, w.beta);
    }
}

pub fn emit_instance(g: &TemporalGraph) -> String {
    let mut out = String::new();
    write_body(&mut out, g);
    out
}

fn write_perm(out: &mut String, tag: &str, p: &[usize]) {
    out.push_str(tag);
    out.push(':');
    for e in p {
        let _ = write!(out, " {e}");
    }
    out.push('\n');
}

pub fn emit_rep_file(g: &TemporalGraph, rep: &DoublySortedRep) -> String {
    let mut out = String::new();
    write_body(&mut out, g);
    write_perm(&mut out, "arr", rep.e_arr());
    write_perm(&mut out, "dep", rep.e_dep());
    out
}

pub fn emit_space_time(g: &TemporalGraph, st: &SpaceTimeGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "spacetime {} {} {}",
        st.node_count(),
        st.copy_count(),
        st.connections().len()
    );
    write_waiting(&mut out, g);
    for v in 0..st.node_count() {
        for c in st.copies_of(v) {
            let _ = writeln!(out, "{v}@{}", st.copy_time(c));
        }
    }
    for (e, &(a, b)) in st.connections().iter().enumerate() {
        let _ = writeln!(out, "C {a} {b} {e}");
    }
    for (a, b) in st.waiting_arcs() {
        let _ = writeln!(out, "W {a} {b}");
    }
    out
}
