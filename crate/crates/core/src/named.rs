//! Registry of named graphs with fixed vertex numberings.
//!
//! | name | params | numbering |
//! |------|--------|-----------|
//! | `Pn` | n | path `0-1-…-(n-1)` |
//! | `Cn` | n ≥ 3 | cycle `0-1-…-(n-1)-0` |
//! | `Kn` | n \[, ω, η\] | complete graph, loops ω, edges η (default 0, 1) |
//! | `On` | n \[, ω\] | empty graph with loops ω (default 0) |
//! | `Kn_minus_e` | n ≥ 3 | `K_n` without the edge `{0,1}` |
//! | `Y` | a, b | u=0, v=1, a-vertex=2, b-vertex=3 |
//! | `C4w` | a, b, c, d | u=0, top=1, bottom=2, v=3; edges 0-1:a, 1-3:b, 3-2:c, 2-0:d |
//! | `C3w` | a, b, c, d | u=0, v=1, w=2; loop on v:a, u-v:b, u-w:c, w-v:d |
//! | `T11` | – | 11-vertex tree, u=3, v=6 |
//! | `P3_loop` | ω | path `0-1-2` with loop ω on 1 |
//! | `twin_tree` | – | tree with false twins {0,1} and {4,5} |
//!
//! A zero weight parameter leaves the corresponding edge or loop out.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Scalar;

/// Registered names with their parameter signatures.
pub const NAMED_GRAPHS: &[(&str, &str)] = &[
    ("Pn", "n"),
    ("Cn", "n"),
    ("Kn", "n[,omega,eta]"),
    ("On", "n[,omega]"),
    ("Kn_minus_e", "n"),
    ("Y", "a,b"),
    ("C4w", "a,b,c,d"),
    ("C3w", "a,b,c,d"),
    ("T11", ""),
    ("P3_loop", "omega"),
    ("twin_tree", ""),
];

pub fn named_graph(name: &str, params: &[Scalar]) -> Result<WeightedGraph> {
    let arity = |expected: &'static str, ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::Arity {
                name: name.to_string(),
                expected,
                got: params.len(),
            })
        }
    };
    let count = |i: usize| -> Result<usize> {
        params[i]
            .to_usize()
            .ok_or_else(|| Error::InvalidParameter(format!("{name}: `{}` is not a vertex count", params[i])))
    };
    let p = |i: usize| params[i].clone();
    match name {
        "Pn" => {
            arity("1", params.len() == 1)?;
            path(count(0)?)
        }
        "Cn" => {
            arity("1", params.len() == 1)?;
            cycle(count(0)?)
        }
        "Kn" => {
            arity("1 or 3", matches!(params.len(), 1 | 3))?;
            let n = count(0)?;
            if params.len() == 3 {
                complete_weighted(n, p(1), p(2))
            } else {
                complete(n)
            }
        }
        "On" => {
            arity("1 or 2", matches!(params.len(), 1 | 2))?;
            let n = count(0)?;
            let omega = if params.len() == 2 { p(1) } else { Scalar::zero() };
            empty_weighted(n, omega)
        }
        "Kn_minus_e" => {
            arity("1", params.len() == 1)?;
            complete_minus_edge(count(0)?)
        }
        "Y" => {
            arity("2", params.len() == 2)?;
            y_graph(p(0), p(1))
        }
        "C4w" => {
            arity("4", params.len() == 4)?;
            c4w(p(0), p(1), p(2), p(3))
        }
        "C3w" => {
            arity("4", params.len() == 4)?;
            c3w(p(0), p(1), p(2), p(3))
        }
        "T11" => {
            arity("0", params.is_empty())?;
            tree_t11()
        }
        "P3_loop" => {
            arity("1", params.len() == 1)?;
            p3_loop(p(0))
        }
        "twin_tree" => {
            arity("0", params.is_empty())?;
            twin_tree()
        }
        _ => Err(Error::UnknownGraph(name.to_string())),
    }
}

/// Parses `name` or `name:p1,p2,…` and builds the graph.
pub fn parse_named(spec: &str) -> Result<WeightedGraph> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = rest
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Scalar>().map_err(|e| Error::InvalidParameter(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    named_graph(name.trim(), &params)
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n >= min {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} needs at least {min} vertices")))
    }
}

pub fn path(n: usize) -> Result<WeightedGraph> {
    need(n, 1, "path")?;
    (1..n)
        .fold(WeightedGraph::builder(n), |b, i| b.edge(i - 1, i, 1))
        .build()
}

pub fn cycle(n: usize) -> Result<WeightedGraph> {
    need(n, 3, "cycle")?;
    (0..n)
        .fold(WeightedGraph::builder(n), |b, i| b.edge(i, (i + 1) % n, 1))
        .build()
}

pub fn complete(n: usize) -> Result<WeightedGraph> {
    complete_weighted(n, Scalar::zero(), Scalar::one())
}

/// 𝐊_n(ω, η): loops ω on every vertex and weight η on every edge.
pub fn complete_weighted(n: usize, omega: Scalar, eta: Scalar) -> Result<WeightedGraph> {
    need(n, 1, "complete graph")?;
    let mut b = WeightedGraph::builder(n);
    for i in 0..n {
        b = b.maybe(i, i, omega.clone());
        for j in i + 1..n {
            b = b.maybe(i, j, eta.clone());
        }
    }
    b.build()
}

/// 𝐎_n(ω): no edges, loops ω on every vertex.
pub fn empty_weighted(n: usize, omega: Scalar) -> Result<WeightedGraph> {
    need(n, 1, "empty graph")?;
    (0..n)
        .fold(WeightedGraph::builder(n), |b, i| b.maybe(i, i, omega.clone()))
        .build()
}

pub fn complete_minus_edge(n: usize) -> Result<WeightedGraph> {
    need(n, 3, "K_n minus an edge")?;
    let mut b = WeightedGraph::builder(n);
    for i in 0..n {
        for j in i + 1..n {
            if (i, j) != (0, 1) {
                b = b.edge(i, j, 1);
            }
        }
    }
    b.build()
}

pub fn y_graph(a: Scalar, b: Scalar) -> Result<WeightedGraph> {
    WeightedGraph::builder(4)
        .maybe(0, 2, a.clone())
        .maybe(0, 3, a.clone())
        .maybe(1, 2, b.clone())
        .maybe(1, 3, b.clone())
        .maybe(0, 1, b)
        .maybe(0, 0, a.clone())
        .maybe(1, 1, a)
        .build()
}

pub fn c4w(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<WeightedGraph> {
    WeightedGraph::builder(4)
        .maybe(0, 1, a)
        .maybe(1, 3, b)
        .maybe(3, 2, c)
        .maybe(2, 0, d)
        .build()
}

pub fn c3w(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<WeightedGraph> {
    WeightedGraph::builder(3)
        .maybe(1, 1, a)
        .maybe(0, 1, b)
        .maybe(0, 2, c)
        .maybe(2, 1, d)
        .build()
}

pub fn tree_t11() -> Result<WeightedGraph> {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (4, 8),
        (6, 7),
        (9, 7),
        (10, 7),
    ];
    edges
        .iter()
        .fold(WeightedGraph::builder(11), |b, &(u, v)| b.edge(u, v, 1))
        .build()
}

pub fn p3_loop(omega: Scalar) -> Result<WeightedGraph> {
    WeightedGraph::builder(3)
        .edge(0, 1, 1)
        .edge(1, 2, 1)
        .maybe(1, 1, omega)
        .build()
}

pub fn twin_tree() -> Result<WeightedGraph> {
    [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]
        .iter()
        .fold(WeightedGraph::builder(6), |b, &(u, v)| b.edge(u, v, 1))
        .build()
}
