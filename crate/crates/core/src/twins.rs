//! Twin vertices: detection, the twin eigenvalue θ and the swapping involution.
//!
//! `u` and `v` are twins when they carry equal loops and agree on every other
//! neighbor weight; the weight `η` between them may be anything, including 0.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::{build_matrix, real_adjacency, MatrixFamily};
use crate::scalar::Scalar;

/// A maximal set of mutual twins with common loop weight ω and edge weight η.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinClass {
    pub vertices: Vec<usize>,
    pub omega: Scalar,
    pub eta: Scalar,
}

impl TwinClass {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Adjacent twins (η ≠ 0).
    pub fn is_true_twins(&self) -> bool {
        !self.eta.is_zero()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.vertices.contains(&u)
    }
}

/// Absolute tolerance for weight comparisons on `g`.
pub(crate) fn weight_tolerance(g: &WeightedGraph) -> f64 {
    1e-9 * g.max_abs_weight()
}

fn check(g: &WeightedGraph, u: usize) -> Result<()> {
    if u < g.n() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: u, n: g.n() })
    }
}

pub fn are_twins(g: &WeightedGraph, u: usize, v: usize) -> Result<bool> {
    check(g, u)?;
    check(g, v)?;
    if u == v {
        return Ok(false);
    }
    let tol = weight_tolerance(g);
    let close = |a: f64, b: f64| (a - b).abs() <= tol;
    Ok(close(g.weight(u, u), g.weight(v, v))
        && (0..g.n())
            .filter(|&w| w != u && w != v)
            .all(|w| close(g.weight(u, w), g.weight(v, w))))
}

/// Maximal twin classes of size at least two, ordered by smallest member.
pub fn find_twin_classes(g: &WeightedGraph) -> Vec<TwinClass> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for u in 0..n {
        for v in u + 1..n {
            if are_twins(g, u, v).unwrap_or(false) {
                let (ru, rv) = (root(&parent, u), root(&parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        groups[root(&parent, u)].push(u);
    }
    groups
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|vertices| {
            let (a, b) = (vertices[0], vertices[1]);
            TwinClass {
                omega: g.weight_scalar(a, a).cloned().unwrap_or_else(Scalar::zero),
                eta: g.weight_scalar(a, b).cloned().unwrap_or_else(Scalar::zero),
                vertices,
            }
        })
        .collect()
}

/// θ with `M(e_u − e_v) = θ(e_u − e_v)` for twins `u, v` in `cls`, checked
/// against the matrix for every member.
///
/// 𝐀: `α + β·deg(u) + γ(ω − η)`. 𝒜: `α + γ(ω − η)/deg(u)` with signed degree.
pub fn twin_theta(g: &WeightedGraph, fam: &MatrixFamily, cls: &TwinClass) -> Result<f64> {
    if cls.len() < 2 {
        return Err(Error::Precondition("twin class needs two vertices".into()));
    }
    let u = cls.vertices[0];
    for &v in &cls.vertices[1..] {
        if !are_twins(g, u, v)? {
            return Err(Error::NotTwins(u, v));
        }
    }
    let deg = g.degree(u)?;
    let diff = cls.omega.value() - cls.eta.value();
    let theta = match fam {
        MatrixFamily::GeneralizedAdjacency { alpha, beta, gamma } => {
            alpha.value() + beta.value() * deg + gamma.value() * diff
        }
        MatrixFamily::GeneralizedNormalized { alpha, gamma } => alpha.value() + gamma.value() * diff / deg,
    };
    let m = build_matrix(g, fam)?;
    let tol = 1e-9 * m.inf_norm().max(1.0);
    for &v in &cls.vertices[1..] {
        let mut x = DVector::from_element(g.n(), Complex64::new(0.0, 0.0));
        x[u] = 1.0.into();
        x[v] = (-1.0).into();
        let r = m.entries() * &x - &x * Complex64::new(theta, 0.0);
        let err = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if err > tol {
            return Err(Error::Verification(format!(
                "e_{u} - e_{v} is not an eigenvector for theta = {theta} (residual {err:.3e})"
            )));
        }
    }
    Ok(theta)
}

/// The transposition `(u v)` as an image array, checked to preserve every weight.
pub fn twin_involution(g: &WeightedGraph, u: usize, v: usize) -> Result<Vec<usize>> {
    if !are_twins(g, u, v)? {
        return Err(Error::NotTwins(u, v));
    }
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.swap(u, v);
    let a = real_adjacency(g);
    let tol = weight_tolerance(g);
    for i in 0..g.n() {
        for j in 0..g.n() {
            if (a[(perm[i], perm[j])] - a[(i, j)]).abs() > tol {
                return Err(Error::Verification(format!(
                    "transposition ({u} {v}) moves weight at ({i},{j})"
                )));
            }
        }
    }
    Ok(perm)
}
