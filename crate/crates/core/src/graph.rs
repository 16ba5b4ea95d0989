//! Weighted undirected graphs with signed weights and optional loops.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Immutable weighted graph on vertices `0..n`.
///
/// Weights are keyed by unordered pairs stored as `(min, max)`; a key `(u, u)`
/// is a loop. Absence of a key means absence of an edge.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    weights: BTreeMap<(usize, usize), Scalar>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        WeightedGraph {
            n,
            weights: BTreeMap::new(),
        }
    }

    pub fn builder(n: usize) -> GraphBuilder {
        GraphBuilder {
            n,
            weights: BTreeMap::new(),
            error: None,
        }
    }

    /// Stores entries as given without checking them; see [`validate`].
    /// A repeated pair keeps the last value.
    pub fn from_entries_unchecked<I>(n: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let weights = entries.into_iter().map(|(u, v, w)| (key(u, v), w)).collect();
        WeightedGraph { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stored entries `(u, v, w)` with `u <= v`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.weights.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_scalar(&self, u: usize, v: usize) -> Option<&Scalar> {
        self.weights.get(&key(u, v))
    }

    /// Weight of `{u, v}`, or 0 when absent. For `u == v` this is the loop weight.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weight_scalar(u, v).map_or(0.0, Scalar::value)
    }

    pub fn exact_weight(&self, u: usize, v: usize) -> BigRational {
        self.weight_scalar(u, v)
            .and_then(Scalar::to_rational)
            .unwrap_or_else(BigRational::zero)
    }

    pub fn loop_weight(&self, u: usize) -> f64 {
        self.weight(u, u)
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: u, n: self.n })
        }
    }

    /// Neighbours of `u` other than `u` itself, ascending.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&w| w != u && self.weights.contains_key(&key(u, w)))
            .collect()
    }

    /// `2·loop(u) + Σ_{w≠u} weight(u, w)`.
    pub fn degree(&self, u: usize) -> Result<f64> {
        self.check_vertex(u)?;
        Ok(self
            .weights
            .iter()
            .filter(|(&(a, b), _)| a == u || b == u)
            .map(|(&(a, b), w)| if a == b { 2.0 * w.value() } else { w.value() })
            .sum())
    }

    pub fn degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n];
        for (&(a, b), w) in &self.weights {
            if a == b {
                deg[a] += 2.0 * w.value();
            } else {
                deg[a] += w.value();
                deg[b] += w.value();
            }
        }
        deg
    }

    pub fn exact_degrees(&self) -> Vec<BigRational> {
        let mut deg = vec![BigRational::zero(); self.n];
        for (&(a, b), w) in &self.weights {
            let r = w.to_rational().unwrap_or_else(BigRational::zero);
            if a == b {
                deg[a] += &r + &r;
            } else {
                deg[a] += &r;
                deg[b] += r;
            }
        }
        deg
    }

    /// Row sum of the adjacency matrix: the loop counts once.
    pub fn row_sum(&self, u: usize) -> f64 {
        (0..self.n).map(|w| self.weight(u, w)).sum()
    }

    pub fn has_loops(&self) -> bool {
        self.weights.keys().any(|&(a, b)| a == b)
    }

    /// No loops.
    pub fn is_simple(&self) -> bool {
        !self.has_loops()
    }

    /// Every stored weight equals 1.
    pub fn is_unweighted(&self) -> bool {
        self.weights.values().all(Scalar::is_one)
    }

    pub fn max_abs_weight(&self) -> f64 {
        self.weights.values().map(|w| w.value().abs()).fold(0.0, f64::max)
    }

    /// Number of connected components; loops do not connect anything.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        let mut components = self.n;
        for &(a, b) in self.weights.keys() {
            if a == b || a >= self.n || b >= self.n {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Errors unless the graph is valid and connected.
    pub fn ensure_analyzable(&self) -> Result<()> {
        let report = validate(self);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidGraph(v.to_string()));
        }
        if report.components != 1 {
            return Err(Error::Disconnected {
                components: report.components,
            });
        }
        Ok(())
    }

    /// Graph whose vertex `perm[u]` plays the role of `u`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Ok(WeightedGraph::from_entries_unchecked(
            self.n,
            self.entries().map(|(a, b, w)| (perm[a], perm[b], w.clone())),
        ))
    }
}

/// Checked construction of a [`WeightedGraph`].
#[derive(Debug)]
pub struct GraphBuilder {
    n: usize,
    weights: BTreeMap<(usize, usize), Scalar>,
    error: Option<Error>,
}

impl GraphBuilder {
    fn insert(&mut self, u: usize, v: usize, w: Scalar) {
        if self.error.is_some() {
            return;
        }
        for x in [u, v] {
            if x >= self.n {
                self.error = Some(Error::VertexOutOfRange { vertex: x, n: self.n });
                return;
            }
        }
        if w.is_zero() {
            self.error = Some(Error::InvalidGraph(format!("zero weight on {{{u},{v}}}")));
            return;
        }
        if !w.value().is_finite() {
            self.error = Some(Error::InvalidGraph(format!("non-finite weight on {{{u},{v}}}")));
            return;
        }
        if self.weights.insert(key(u, v), w).is_some() {
            self.error = Some(Error::InvalidGraph(format!("duplicate pair {{{u},{v}}}")));
        }
    }

    pub fn edge(mut self, u: usize, v: usize, w: impl Into<Scalar>) -> Self {
        if u == v {
            self.error.get_or_insert(Error::InvalidGraph(format!(
                "edge endpoints must differ (got {u}); use a loop"
            )));
        }
        self.insert(u, v, w.into());
        self
    }

    pub fn loop_at(mut self, u: usize, w: impl Into<Scalar>) -> Self {
        self.insert(u, u, w.into());
        self
    }

    /// Adds the edge or loop unless the weight is zero.
    pub fn maybe(self, u: usize, v: usize, w: impl Into<Scalar>) -> Self {
        let w = w.into();
        match (w.is_zero(), u == v) {
            (true, _) => self,
            (false, true) => self.loop_at(u, w),
            (false, false) => self.edge(u, v, w),
        }
    }

    pub fn build(self) -> Result<WeightedGraph> {
        if let Some(e) = self.error {
            return Err(e);
        }
        if self.n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        Ok(WeightedGraph {
            n: self.n,
            weights: self.weights,
        })
    }
}

/// A breach of a [`WeightedGraph`] invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoVertices,
    ZeroWeight { u: usize, v: usize },
    NonFiniteWeight { u: usize, v: usize },
    VertexOutOfRange { u: usize, v: usize, n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::ZeroWeight { u, v } => write!(f, "zero weight stored at {{{u},{v}}}"),
            Violation::NonFiniteWeight { u, v } => {
                write!(f, "non-finite weight stored at {{{u},{v}}}")
            }
            Violation::VertexOutOfRange { u, v, n } => {
                write!(f, "entry {{{u},{v}}} out of range for {n} vertices")
            }
        }
    }
}

/// Outcome of [`validate`]: invariant violations plus the component count.
#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub components: usize,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    /// Human-readable findings, violations first.
    pub fn findings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        if self.components > 1 {
            out.push(format!("disconnected: {} components", self.components));
        }
        out
    }
}

pub fn validate(g: &WeightedGraph) -> Validation {
    let mut violations = Vec::new();
    if g.n == 0 {
        violations.push(Violation::NoVertices);
    }
    for (&(u, v), w) in &g.weights {
        if u >= g.n || v >= g.n {
            violations.push(Violation::VertexOutOfRange { u, v, n: g.n });
        }
        if w.is_zero() {
            violations.push(Violation::ZeroWeight { u, v });
        } else if !w.value().is_finite() {
            violations.push(Violation::NonFiniteWeight { u, v });
        }
    }
    Validation {
        violations,
        components: g.component_count(),
    }
}
