//! Complements and the bipartite sign flip.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::MatrixFamily;
use crate::spectral::{decompose_graph, SpectralDecomposition, ToleranceConfig};

/// Complement of a simple unweighted graph.
pub fn complement(g: &WeightedGraph) -> Result<WeightedGraph> {
    if !(g.is_simple() && g.is_unweighted()) {
        return Err(Error::Precondition("complement needs a simple unweighted graph".into()));
    }
    let n = g.n();
    let mut b = WeightedGraph::builder(n);
    for u in 0..n {
        for v in u + 1..n {
            if g.weight_scalar(u, v).is_none() {
                b = b.edge(u, v, 1);
            }
        }
    }
    b.build()
}

fn is_regular(g: &WeightedGraph) -> bool {
    let d = g.degrees();
    d.iter().all(|&x| x == d[0])
}

/// Strong cospectrality of `u, v` in `X` and in its complement, which must
/// agree when `X` is regular, or for 𝐀 with `β = −γ`.
pub fn complement_preservation(
    g: &WeightedGraph,
    fam: &MatrixFamily,
    u: usize,
    v: usize,
    tol: ToleranceConfig,
) -> Result<(bool, bool)> {
    let c = complement(g)?;
    g.ensure_analyzable()?;
    c.ensure_analyzable()
        .map_err(|e| Error::Precondition(format!("complement is not analyzable: {e}")))?;
    let laplacian_like = matches!(fam, MatrixFamily::GeneralizedAdjacency { beta, gamma, .. } if *beta == gamma.neg());
    if !(is_regular(g) || laplacian_like) {
        return Err(Error::Precondition(
            "complement criterion needs a regular graph or beta = -gamma".into(),
        ));
    }
    let a = decompose_graph(g, fam, tol)?.classify_pair(u, v)?.strongly_cospectral;
    let b = decompose_graph(&c, fam, tol)?.classify_pair(u, v)?.strongly_cospectral;
    if a != b {
        return Err(Error::CrossCheck(format!(
            "({u},{v}) is strongly cospectral in one of the graph and its complement only"
        )));
    }
    Ok((a, b))
}

/// Two-coloring with vertex 0 colored `false`, or `None` if the graph has an
/// odd cycle or a loop.
pub fn bipartition(g: &WeightedGraph) -> Option<Vec<bool>> {
    if g.has_loops() {
        return None;
    }
    let n = g.n();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = color[x].unwrap();
            for y in g.neighbors(x) {
                match color[y] {
                    None => {
                        color[y] = Some(!cx);
                        stack.push(y);
                    }
                    Some(cy) if cy == cx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    color.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignFlipReport {
    pub verdict_m: bool,
    pub verdict_neg_gamma: bool,
    pub same_part: bool,
    /// For strong pairs: σ⁺(M) equals σ⁺(M_{−γ}) when `u, v` share a part and
    /// σ⁻(M_{−γ}) otherwise. `None` when the pair is not strongly cospectral.
    pub sigma_map_ok: Option<bool>,
}

fn sigma_values(d: &SpectralDecomposition, idx: &[usize]) -> Vec<f64> {
    idx.iter().map(|&j| d.eigenvalues()[j]).collect()
}

fn same_values(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Compares `M` with `M_{−γ} = SMS` on a simple connected bipartite graph.
pub fn bipartite_signflip(
    g: &WeightedGraph,
    fam: &MatrixFamily,
    u: usize,
    v: usize,
    tol: ToleranceConfig,
) -> Result<SignFlipReport> {
    g.ensure_analyzable()?;
    let colors = bipartition(g).ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
    let d = decompose_graph(g, fam, tol)?;
    let dn = decompose_graph(g, &fam.with_negated_gamma(), tol)?;
    let p = d.classify_pair(u, v)?;
    let pn = dn.classify_pair(u, v)?;
    let same_part = colors[u] == colors[v];
    if p.strongly_cospectral != pn.strongly_cospectral {
        return Err(Error::CrossCheck(format!(
            "sign flip changes the strong cospectrality of ({u},{v})"
        )));
    }
    let sigma_map_ok = match (&p.sigma_plus, &pn.sigma_plus, &pn.sigma_minus) {
        (Some(plus), Some(nplus), Some(nminus)) => {
            let slack = 10.0 * tol.eig_group * d.eigenvalues().iter().fold(1.0_f64, |a, l| a.max(l.abs()));
            let target = if same_part { nplus } else { nminus };
            let ok = same_values(&sigma_values(&d, plus), &sigma_values(&dn, target), slack);
            if !ok {
                return Err(Error::CrossCheck(format!(
                    "sign flip does not map the eigenvalue signs of ({u},{v}) as expected"
                )));
            }
            Some(true)
        }
        _ => None,
    };
    Ok(SignFlipReport {
        verdict_m: p.strongly_cospectral,
        verdict_neg_gamma: pn.strongly_cospectral,
        same_part,
        sigma_map_ok,
    })
}

/// Connected components as sorted vertex sets; used for complement checks.
pub fn components(g: &WeightedGraph) -> Vec<BTreeSet<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            comp.insert(x);
            for y in g.neighbors(x) {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::parse_named;

    fn g(spec: &str) -> WeightedGraph {
        parse_named(spec).unwrap()
    }

    #[test]
    fn complements() {
        let c = complement(&g("Cn:4")).unwrap();
        assert_eq!(components(&c).len(), 2);
        assert_eq!(c.edge_count(), 2);
        let c5 = complement(&g("Cn:5")).unwrap();
        assert!(c5.degrees().iter().all(|&d| d == 2.0));
        assert_eq!(complement(&g("Kn:4")).unwrap().edge_count(), 0);
        assert!(complement(&g("P3_loop:1")).is_err());
        assert!(complement(&g("Kn:3,0,2")).is_err());
    }

    #[test]
    fn complement_verdicts_agree() {
        let tol = ToleranceConfig::default();
        for (u, v) in [(0, 1), (0, 2)] {
            complement_preservation(&g("Cn:5"), &MatrixFamily::adjacency(), u, v, tol).unwrap();
        }
        let (a, b) = complement_preservation(&g("Pn:4"), &MatrixFamily::laplacian(), 0, 3, tol).unwrap();
        assert_eq!(a, b);
        // The complement of C6 is the triangular prism.
        let (a, b) = complement_preservation(&g("Cn:6"), &MatrixFamily::adjacency(), 0, 3, tol).unwrap();
        assert_eq!(a, b);
        assert!(complement_preservation(&g("Pn:4"), &MatrixFamily::adjacency(), 0, 3, tol).is_err());
    }

    #[test]
    fn sign_flip() {
        let tol = ToleranceConfig::default();
        let r = bipartite_signflip(&g("Pn:3"), &MatrixFamily::adjacency(), 0, 2, tol).unwrap();
        assert!(r.same_part && r.verdict_m && r.sigma_map_ok == Some(true));
        let r = bipartite_signflip(&g("Kn:2"), &MatrixFamily::adjacency(), 0, 1, tol).unwrap();
        assert!(!r.same_part && r.sigma_map_ok == Some(true));
        let r = bipartite_signflip(&g("Pn:4"), &MatrixFamily::laplacian(), 0, 3, tol).unwrap();
        assert_eq!(r.verdict_m, r.verdict_neg_gamma);
        assert!(bipartite_signflip(&g("Cn:5"), &MatrixFamily::adjacency(), 0, 1, tol).is_err());
    }
}
