//! Exact decisions for cospectrality, parallelism and strong cospectrality
//! from characteristic polynomials over ℚ.
//!
//! With `S = {u, v}`, the poles of `φ_u/φ` are the eigenvalue support of
//! `u`, and the poles of `φ_S/φ` are simple exactly when no eigenspace sees
//! `e_u` and `e_v` in independent directions.

mod charpoly;
pub mod poly;

pub use charpoly::{char_poly, faddeev_leverrier, vertex_deleted_poly, Adjugate, RationalMatrix};
pub use poly::{approximate_roots, poly_gcd, squarefree_decomposition, squarefree_part, RationalPoly};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::MatrixFamily;
use crate::scalar::Scalar;

/// Exact outcome for one vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCertificate {
    pub u: usize,
    pub v: usize,
    pub phi: RationalPoly,
    pub phi_u: RationalPoly,
    pub phi_v: RationalPoly,
    pub phi_uv: RationalPoly,
    pub cospectral: bool,
    /// Squarefree factors of the reduced denominator of `φ_uv/φ`, with the
    /// pole order contributed by each.
    pub pole_multiplicities: Vec<(RationalPoly, usize)>,
    pub poles_simple: bool,
    /// Simple poles and equal eigenvalue supports.
    pub parallel: bool,
    pub strongly_cospectral: bool,
}

impl RationalCertificate {
    fn assemble(
        u: usize,
        v: usize,
        phi: RationalPoly,
        phi_u: RationalPoly,
        phi_v: RationalPoly,
        phi_uv: RationalPoly,
    ) -> Self {
        let cospectral = phi_u == phi_v;
        let reduced = pole_denominator(&phi, &phi_uv);
        let pole_multiplicities = squarefree_decomposition(&reduced);
        let poles_simple = pole_multiplicities.iter().all(|&(_, m)| m <= 1);
        let parallel = poles_simple && pole_denominator(&phi, &phi_u) == pole_denominator(&phi, &phi_v);
        RationalCertificate {
            u,
            v,
            cospectral,
            pole_multiplicities,
            poles_simple,
            parallel,
            strongly_cospectral: cospectral && parallel,
            phi,
            phi_u,
            phi_v,
            phi_uv,
        }
    }

    /// Monic polynomial whose roots are the eigenvalue support of `u`.
    pub fn support_u(&self) -> RationalPoly {
        pole_denominator(&self.phi, &self.phi_u)
    }

    pub fn support_v(&self) -> RationalPoly {
        pole_denominator(&self.phi, &self.phi_v)
    }

    /// Largest pole order of `φ_uv/φ`; 0 when there are no poles.
    pub fn max_pole_order(&self) -> usize {
        self.pole_multiplicities.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }
}

/// Monic denominator of `num/phi` in lowest terms.
fn pole_denominator(phi: &RationalPoly, num: &RationalPoly) -> RationalPoly {
    let g = poly_gcd(phi, num);
    phi.exact_div(&g).expect("gcd divides phi").monic()
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::Precondition("pair needs two distinct vertices".into()));
    }
    Ok(())
}

fn rational(s: &Scalar, what: &str) -> Result<BigRational> {
    s.to_rational()
        .ok_or_else(|| Error::ExactPathUnavailable(format!("{what} is not a finite rational")))
}

/// The chosen matrix with exact rational entries.
///
/// 𝒜 is rational only on weighted-regular graphs with degree `k ≠ 0`, where it
/// equals `αI + (γ/k)A` for either sign of `k`.
pub fn exact_matrix(g: &WeightedGraph, fam: &MatrixFamily) -> Result<RationalMatrix> {
    let n = g.n();
    let mut adj = RationalMatrix::zeros(n);
    for (a, b, w) in g.entries() {
        let r = rational(w, "edge weight")?;
        adj.set(a, b, r.clone());
        adj.set(b, a, r);
    }
    let alpha = rational(fam.alpha(), "alpha")?;
    let gamma = rational(fam.gamma(), "gamma")?;
    let deg = g.exact_degrees();
    let (scale, diag): (BigRational, Vec<BigRational>) = match fam {
        MatrixFamily::GeneralizedAdjacency { beta, .. } => {
            let beta = rational(beta, "beta")?;
            (gamma, deg.iter().map(|d| &alpha + &beta * d).collect())
        }
        MatrixFamily::GeneralizedNormalized { .. } => {
            if let Some(u) = deg.iter().position(Zero::is_zero) {
                return Err(Error::ZeroDegree(u));
            }
            if deg.iter().any(Signed::is_positive) && deg.iter().any(Signed::is_negative) {
                return Err(Error::MixedDegreeSigns);
            }
            if deg.iter().any(|d| d != &deg[0]) {
                return Err(Error::ExactPathUnavailable(
                    "normalized matrix of a non-regular graph has irrational entries".into(),
                ));
            }
            (gamma / &deg[0], vec![alpha; n])
        }
    };
    let mut m = RationalMatrix::zeros(n);
    for (i, d) in diag.iter().enumerate() {
        for j in 0..n {
            let mut x = adj.get(i, j) * &scale;
            if i == j {
                x += d;
            }
            m.set(i, j, x);
        }
    }
    Ok(m)
}

/// Exact certificate from direct vertex-deleted determinants.
pub fn exact_classify(m: &RationalMatrix, u: usize, v: usize) -> Result<RationalCertificate> {
    check_pair(m.dim(), u, v)?;
    Ok(RationalCertificate::assemble(
        u,
        v,
        char_poly(m),
        vertex_deleted_poly(m, &[u])?,
        vertex_deleted_poly(m, &[v])?,
        vertex_deleted_poly(m, &[u, v])?,
    ))
}

/// Reuses one adjugate expansion for many pairs.
///
/// `φ_uv` comes from Jacobi's identity
/// `φ·φ_uv = φ_u·φ_v − adj_uv·adj_vu`, an independent route to the
/// determinants used by [`exact_classify`].
#[derive(Debug, Clone)]
pub struct ExactAnalyzer {
    adj: Adjugate,
}

impl ExactAnalyzer {
    pub fn new(m: &RationalMatrix) -> Self {
        ExactAnalyzer {
            adj: faddeev_leverrier(m),
        }
    }

    pub fn from_graph(g: &WeightedGraph, fam: &MatrixFamily) -> Result<Self> {
        Ok(Self::new(&exact_matrix(g, fam)?))
    }

    pub fn dim(&self) -> usize {
        self.adj.coefficients.len()
    }

    pub fn phi(&self) -> &RationalPoly {
        &self.adj.phi
    }

    pub fn phi_vertex(&self, u: usize) -> RationalPoly {
        self.adj.entry(u, u)
    }

    pub fn classify(&self, u: usize, v: usize) -> Result<RationalCertificate> {
        check_pair(self.dim(), u, v)?;
        let phi = self.adj.phi.clone();
        let phi_u = self.adj.entry(u, u);
        let phi_v = self.adj.entry(v, v);
        let cross = &self.adj.entry(u, v) * &self.adj.entry(v, u);
        let phi_uv = (&(&phi_u * &phi_v) - &cross)
            .exact_div(&phi)
            .ok_or_else(|| Error::CrossCheck("Jacobi identity left a remainder".into()))?;
        Ok(RationalCertificate::assemble(u, v, phi, phi_u, phi_v, phi_uv))
    }

    /// Certificates for all pairs `u < v`.
    pub fn all_pairs(&self) -> Result<Vec<RationalCertificate>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                out.push(self.classify(u, v)?);
            }
        }
        Ok(out)
    }
}
