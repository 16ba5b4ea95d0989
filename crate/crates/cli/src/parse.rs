//! Graph text files and command-line selectors.
//!
//! ```text
//! # comment
//! vertices 4
//! edge 0 1 1
//! edge 1 2 -1/2
//! loop 3 0.25
//! ```
//!
//! Vertices are either all indices (`vertices n` required) or all labels.
//! Labels are numbered in order of first appearance; a `vertices` line in a
//! labeled file must match the number of labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use cospec_core::constructions::JoinFactor;
use cospec_core::{Error, MatrixFamily, Scalar, WeightedGraph};

/// A graph file problem, with the 1-based line it was found on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// A parsed graph plus the labels of a labeled file, indexed by vertex.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: WeightedGraph,
    pub labels: Option<Vec<String>>,
}

impl LabeledGraph {
    /// Resolves an index or a label to a vertex.
    pub fn vertex(&self, token: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == token),
            None => token.parse().ok().filter(|&u| u < self.graph.n()),
        }
    }
}

enum Directive {
    Edge(String, String, Scalar),
    Loop(String, Scalar),
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    parse_labeled_graph(text).map(|lg| lg.graph)
}

pub fn parse_labeled_graph(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut items: Vec<(usize, Directive)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tok: Vec<&str> = content.split_whitespace().collect();
        let weight = |s: &str| -> Result<Scalar, ParseError> {
            let w: Scalar = s
                .parse()
                .map_err(|_| ParseError::at(line, format!("bad weight `{s}`")))?;
            if w.is_zero() {
                return Err(ParseError::at(line, "zero weight"));
            }
            if !w.value().is_finite() {
                return Err(ParseError::at(line, format!("weight `{s}` is not finite")));
            }
            Ok(w)
        };
        match tok.as_slice() {
            ["vertices", n] => {
                if declared.is_some() {
                    return Err(ParseError::at(line, "repeated `vertices` directive"));
                }
                let n = n
                    .parse()
                    .map_err(|_| ParseError::at(line, format!("bad vertex count `{n}`")))?;
                declared = Some((n, line));
            }
            ["edge", u, v, w] => items.push((line, Directive::Edge(u.to_string(), v.to_string(), weight(w)?))),
            ["loop", u, w] => items.push((line, Directive::Loop(u.to_string(), weight(w)?))),
            [d, ..] if ["vertices", "edge", "loop"].contains(d) => {
                return Err(ParseError::at(line, format!("wrong number of fields for `{d}`")));
            }
            [d, ..] => return Err(ParseError::at(line, format!("unknown directive `{d}`"))),
            [] => unreachable!(),
        }
    }

    let tokens = items.iter().flat_map(|(_, d)| match d {
        Directive::Edge(u, v, _) => vec![u.as_str(), v.as_str()],
        Directive::Loop(u, _) => vec![u.as_str()],
    });
    let numeric: Vec<bool> = tokens.clone().map(|t| t.parse::<usize>().is_ok()).collect();
    let labeled = !numeric.is_empty() && !numeric.iter().all(|&b| b);
    if labeled && numeric.iter().any(|&b| b) {
        let line = items
            .iter()
            .find(|(_, d)| {
                let ts: Vec<&str> = match d {
                    Directive::Edge(u, v, _) => vec![u, v],
                    Directive::Loop(u, _) => vec![u],
                };
                ts.iter().any(|t| t.parse::<usize>().is_ok())
            })
            .map(|(l, _)| *l)
            .unwrap_or(0);
        return Err(ParseError::at(line, "mixes vertex indices and labels"));
    }

    let mut labels: Vec<String> = Vec::new();
    if labeled {
        let mut seen = BTreeSet::new();
        for t in tokens {
            if seen.insert(t) {
                labels.push(t.to_string());
            }
        }
    }
    let n = match (declared, labeled) {
        (Some((n, line)), true) if n != labels.len() => {
            return Err(ParseError::at(
                line,
                format!("declares {n} vertices but the file uses {} labels", labels.len()),
            ))
        }
        (_, true) => labels.len(),
        (Some((n, _)), false) => n,
        (None, false) => return Err(ParseError::whole("missing `vertices` directive")),
    };
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let resolve = |t: &str, line: usize| -> Result<usize, ParseError> {
        let u = if labeled { index[t] } else { t.parse::<usize>().unwrap() };
        if u >= n {
            return Err(ParseError::at(
                line,
                format!("vertex {u} out of range for {n} vertices"),
            ));
        }
        Ok(u)
    };

    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut b = WeightedGraph::builder(n);
    for (line, d) in items {
        let (u, v, w) = match d {
            Directive::Edge(u, v, w) => {
                let (u, v) = (resolve(&u, line)?, resolve(&v, line)?);
                if u == v {
                    return Err(ParseError::at(
                        line,
                        format!("edge endpoints must differ (got {u}); use `loop`"),
                    ));
                }
                (u, v, w)
            }
            Directive::Loop(u, w) => {
                let u = resolve(&u, line)?;
                (u, u, w)
            }
        };
        let key = (u.min(v), u.max(v));
        if let Some(first) = seen.insert(key, line) {
            return Err(ParseError::at(
                line,
                format!("duplicate pair {{{}, {}}} (first given on line {first})", key.0, key.1),
            ));
        }
        b = if u == v { b.loop_at(u, w) } else { b.edge(u, v, w) };
    }
    let graph = b.build().map_err(|e| ParseError::whole(e.to_string()))?;
    Ok(LabeledGraph {
        graph,
        labels: labeled.then_some(labels),
    })
}

/// Where a graph argument comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    File(String),
    Builtin(String),
}

impl GraphSource {
    /// `builtin:<name>:<params>` names a registered graph; anything else is a path.
    pub fn from_arg(arg: &str) -> Self {
        match arg.strip_prefix("builtin:") {
            Some(spec) => GraphSource::Builtin(spec.to_string()),
            None => GraphSource::File(arg.to_string()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GraphSource::File(p) => p.clone(),
            GraphSource::Builtin(s) => format!("builtin:{s}"),
        }
    }

    pub fn load(&self) -> Result<LabeledGraph, LoadError> {
        match self {
            GraphSource::Builtin(spec) => Ok(LabeledGraph {
                graph: cospec_core::parse_named(spec)?,
                labels: None,
            }),
            GraphSource::File(path) => {
                let text =
                    std::fs::read_to_string(Path::new(path)).map_err(|e| LoadError::Io(format!("{path}: {e}")))?;
                parse_labeled_graph(&text).map_err(|e| LoadError::Parse(path.clone(), e))
            }
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String, ParseError),
    Graph(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read {m}"),
            LoadError::Parse(path, e) => write!(f, "{path}: {e}"),
            LoadError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Graph(e)
    }
}

/// `adjacency | laplacian | signless | normalized-laplacian | gen:a,b,g | gennorm:a,g`.
pub fn parse_matrix(text: &str) -> Result<MatrixFamily, Error> {
    let scalars = |s: &str, want: usize| -> Result<Vec<Scalar>, Error> {
        let v = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<Scalar>()
                    .map_err(|e| Error::InvalidParameter(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if v.len() != want {
            return Err(Error::InvalidParameter(format!(
                "matrix `{text}` needs {want} comma-separated parameters"
            )));
        }
        Ok(v)
    };
    match text {
        "adjacency" => Ok(MatrixFamily::adjacency()),
        "laplacian" => Ok(MatrixFamily::laplacian()),
        "signless" => Ok(MatrixFamily::signless_laplacian()),
        "normalized-laplacian" => Ok(MatrixFamily::normalized_laplacian()),
        _ => {
            if let Some(rest) = text.strip_prefix("gen:") {
                let p = scalars(rest, 3)?;
                MatrixFamily::generalized(p[0].clone(), p[1].clone(), p[2].clone())
            } else if let Some(rest) = text.strip_prefix("gennorm:") {
                let p = scalars(rest, 2)?;
                MatrixFamily::normalized(p[0].clone(), p[1].clone())
            } else {
                Err(Error::InvalidParameter(format!("unknown matrix `{text}`")))
            }
        }
    }
}

/// Comma-separated vertices, resolved through the graph's labels.
pub fn parse_vertices(g: &LabeledGraph, text: &str, want: &[usize]) -> Result<Vec<usize>, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if !want.contains(&parts.len()) {
        return Err(Error::InvalidParameter(format!(
            "`{text}` has the wrong number of vertices"
        )));
    }
    parts
        .iter()
        .map(|t| {
            g.vertex(t)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown vertex `{t}`")))
        })
        .collect()
}

pub fn parse_times(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t {
                "pi" | "π" => Ok(std::f64::consts::PI),
                _ => t
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::InvalidParameter(format!("bad time `{t}`"))),
            }
        })
        .collect()
}

pub fn parse_factor(text: &str) -> Result<JoinFactor, Error> {
    JoinFactor::parse(text)
}
