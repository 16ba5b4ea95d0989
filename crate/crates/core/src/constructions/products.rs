//! Cartesian and direct products, and whether they keep strong cospectrality.
//!
//! Product vertices are indexed row-major: `(x, y) ↦ x·|V(Y)| + y`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::MatrixFamily;
use crate::scalar::Scalar;
use crate::spectral::{decompose_graph, PairClassification, SpectralDecomposition, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Direct,
}

/// Index of `(x, y)` in a product with second factor on `ny` vertices.
pub fn product_index(x: usize, y: usize, ny: usize) -> usize {
    x * ny + y
}

/// `X □ Y`: copies of each factor's edges, with loops `ω + ω′`.
pub fn cartesian_product(x: &WeightedGraph, y: &WeightedGraph) -> Result<WeightedGraph> {
    let (nx, ny) = (x.n(), y.n());
    let idx = |a, b| product_index(a, b, ny);
    let mut b = WeightedGraph::builder(nx * ny);
    for (p, q, w) in x.entries().filter(|(p, q, _)| p != q) {
        for t in 0..ny {
            b = b.edge(idx(p, t), idx(q, t), w.clone());
        }
    }
    for (p, q, w) in y.entries().filter(|(p, q, _)| p != q) {
        for s in 0..nx {
            b = b.edge(idx(s, p), idx(s, q), w.clone());
        }
    }
    for s in 0..nx {
        for t in 0..ny {
            let lx = x.weight_scalar(s, s).cloned().unwrap_or_else(Scalar::zero);
            let ly = y.weight_scalar(t, t).cloned().unwrap_or_else(Scalar::zero);
            b = b.maybe(idx(s, t), idx(s, t), lx.add(&ly));
        }
    }
    b.build()
}

/// `X × Y`: `A(X × Y) = A(X) ⊗ A(Y)`, loops included.
pub fn direct_product(x: &WeightedGraph, y: &WeightedGraph) -> Result<WeightedGraph> {
    let ny = y.n();
    let idx = |a, b| product_index(a, b, ny);
    let mut b = WeightedGraph::builder(x.n() * ny);
    for (p, q, w) in x.entries() {
        for (s, t, w2) in y.entries() {
            let weight = w.mul(w2);
            b = b.maybe(idx(p, s), idx(q, t), weight.clone());
            if p != q && s != t {
                b = b.edge(idx(p, t), idx(q, s), weight);
            }
        }
    }
    b.build()
}

/// Which clause of the product criterion settled an eigenvalue `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// No `(λ, θ)` in the supports realizes `μ`; `E_μ` misses the pair.
    OutsideSupport,
    /// Exactly one `(λ, θ)` over the full spectra realizes `μ`.
    UniquePair,
    /// Every `λ ∈ Λ_μ` carries the same sign.
    UniformSign,
    /// Every `(λ, θ)` carries the same product of signs.
    UniformProductSign,
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuRow {
    pub mu: f64,
    /// `Λ_μ`: support eigenvalues of the first factor paired with `μ`.
    pub lambda_set: Vec<f64>,
    /// `Θ_μ`: support eigenvalues of the second factor paired with `μ`.
    pub theta_set: Vec<f64>,
    /// Pairs over the full factor spectra realizing `μ`.
    pub pair_count: usize,
    pub clause: Clause,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductAnalysis {
    pub kind: ProductKind,
    /// The two product vertices tested.
    pub pair: (usize, usize),
    pub rows: Vec<MuRow>,
    pub predicted: bool,
    pub direct: bool,
}

fn strong_pair(d: &SpectralDecomposition, u: usize, v: usize) -> Result<PairClassification> {
    let pc = d.classify_pair(u, v)?;
    if !pc.strongly_cospectral {
        return Err(Error::NotStronglyCospectral(u, v));
    }
    Ok(pc)
}

fn same(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Evaluates the product criterion for `((u, w), (v, w))`, or for
/// `((u, w), (v, z))` when `z` is given, and compares with the product graph.
///
/// Supported pairings: 𝐀 with the Cartesian product (`μ + α = λ + θ`) and 𝒜
/// with the direct product of simple factors (`γμ − αγ = (λ − α)(θ − α)`).
#[allow(clippy::too_many_arguments)]
pub fn product_preservation(
    x: &WeightedGraph,
    y: &WeightedGraph,
    kind: ProductKind,
    fam: &MatrixFamily,
    u: usize,
    v: usize,
    w: usize,
    z: Option<usize>,
    tol: ToleranceConfig,
) -> Result<ProductAnalysis> {
    let product = match (kind, fam) {
        (ProductKind::Cartesian, MatrixFamily::GeneralizedAdjacency { .. }) => cartesian_product(x, y)?,
        (ProductKind::Direct, MatrixFamily::GeneralizedNormalized { .. }) => {
            if !(x.is_simple() && y.is_simple()) {
                return Err(Error::Precondition(
                    "direct product criterion needs simple factors".into(),
                ));
            }
            direct_product(x, y)?
        }
        _ => {
            return Err(Error::Precondition(
                "supported pairings are generalized adjacency with cartesian and normalized with direct".into(),
            ))
        }
    };
    let dx = decompose_graph(x, fam, tol)?;
    let dy = decompose_graph(y, fam, tol)?;
    let dp = decompose_graph(&product, fam, tol)?;
    let pu = strong_pair(&dx, u, v)?;
    let pw = match z {
        Some(z) => Some(strong_pair(&dy, w, z)?),
        None => None,
    };
    let support_w = dy.eigenvalue_support(w)?;
    let alpha = fam.alpha().value();
    let gamma = fam.gamma().value();
    let relation = |lambda: f64, theta: f64| match kind {
        ProductKind::Cartesian => lambda + theta - alpha,
        ProductKind::Direct => (lambda - alpha) * (theta - alpha) / gamma + alpha,
    };
    let (lx, ly, lp) = (dx.eigenvalues(), dy.eigenvalues(), dp.eigenvalues());
    let radius = |e: &[f64]| e.iter().fold(0.0_f64, |a, l| a.max(l.abs()));
    let scale = 1.0_f64
        .max(radius(lx) + radius(ly))
        .max(radius(lx) * radius(ly))
        .max(radius(lp));
    let slack = 10.0 * tol.eig_group * scale;
    let unit = 10.0 * tol.unit_mod;

    let mut rows = Vec::with_capacity(lp.len());
    for &mu in lp {
        let pairs: Vec<(usize, usize)> = (0..lx.len())
            .flat_map(|i| (0..ly.len()).map(move |k| (i, k)))
            .filter(|&(i, k)| (relation(lx[i], ly[k]) - mu).abs() <= slack)
            .collect();
        if pairs.is_empty() {
            return Err(Error::CrossCheck(format!(
                "product eigenvalue {mu} is not realized by any factor pair"
            )));
        }
        let in_support: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(i, k)| pu.support_u.contains(&i) && support_w.contains(&k))
            .collect();
        let mut lambda_set: Vec<usize> = in_support.iter().map(|p| p.0).collect();
        lambda_set.dedup();
        let mut theta_set: Vec<usize> = in_support.iter().map(|p| p.1).collect();
        theta_set.sort_unstable();
        theta_set.dedup();
        let clause = if in_support.is_empty() {
            Clause::OutsideSupport
        } else if pairs.len() == 1 {
            Clause::UniquePair
        } else {
            let c = |i: usize| pu.constants[i].expect("support of a strong pair");
            match &pw {
                None => {
                    let c0 = c(lambda_set[0]);
                    if lambda_set.iter().all(|&i| same(c(i), c0, unit)) {
                        Clause::UniformSign
                    } else {
                        Clause::Failed
                    }
                }
                Some(pw) => {
                    let d = |k: usize| pw.constants[k].expect("support of a strong pair");
                    let prod = |&(i, k): &(usize, usize)| c(i) * d(k);
                    let p0 = prod(&in_support[0]);
                    if in_support.iter().all(|p| same(prod(p), p0, unit)) {
                        Clause::UniformProductSign
                    } else {
                        Clause::Failed
                    }
                }
            }
        };
        rows.push(MuRow {
            mu,
            lambda_set: lambda_set.iter().map(|&i| lx[i]).collect(),
            theta_set: theta_set.iter().map(|&k| ly[k]).collect(),
            pair_count: pairs.len(),
            clause,
        });
    }
    let predicted = rows.iter().all(|r| r.clause != Clause::Failed);
    let ny = y.n();
    let pair = (product_index(u, w, ny), product_index(v, z.unwrap_or(w), ny));
    let direct = dp.classify_pair(pair.0, pair.1)?.strongly_cospectral;
    if predicted != direct {
        return Err(Error::CrossCheck(format!(
            "product criterion predicts {predicted} for {pair:?} but direct classification gives {direct}"
        )));
    }
    Ok(ProductAnalysis {
        kind,
        pair,
        rows,
        predicted,
        direct,
    })
}
