//! Degree, adjacency, generalized adjacency and generalized normalized
//! adjacency matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Scalar;

/// Dense Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Wraps a real matrix; it must be exactly symmetric.
    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::from_complex(m.map(|x| Complex64::new(x, 0.0)))
    }

    /// Wraps a complex matrix; it must equal its conjugate transpose exactly.
    pub fn from_complex(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Precondition("matrix is not square".into()));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in i..n {
                if m[(i, j)] != m[(j, i)].conj() {
                    return Err(Error::Precondition(format!("matrix is not Hermitian at ({i},{j})")));
                }
            }
        }
        Ok(HermitianMatrix { entries: m })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// All imaginary parts are exactly zero.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn real_part(&self) -> DMatrix<f64> {
        self.entries.map(|z| z.re)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn inf_norm(&self) -> f64 {
        self.entries
            .row_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Parameters selecting 𝐀 = αI + βD + γA or 𝒜 = αI + γD^{-1/2}AD^{-1/2}.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFamily {
    GeneralizedAdjacency { alpha: Scalar, beta: Scalar, gamma: Scalar },
    GeneralizedNormalized { alpha: Scalar, gamma: Scalar },
}

impl MatrixFamily {
    pub fn generalized(alpha: impl Into<Scalar>, beta: impl Into<Scalar>, gamma: impl Into<Scalar>) -> Result<Self> {
        let gamma = gamma.into();
        if gamma.is_zero() {
            return Err(Error::ZeroGamma);
        }
        Ok(MatrixFamily::GeneralizedAdjacency {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma,
        })
    }

    pub fn normalized(alpha: impl Into<Scalar>, gamma: impl Into<Scalar>) -> Result<Self> {
        let gamma = gamma.into();
        if gamma.is_zero() {
            return Err(Error::ZeroGamma);
        }
        Ok(MatrixFamily::GeneralizedNormalized {
            alpha: alpha.into(),
            gamma,
        })
    }

    /// A = (0, 0, 1).
    pub fn adjacency() -> Self {
        Self::preset(0, 0, 1)
    }

    /// L = (0, 1, −1).
    pub fn laplacian() -> Self {
        Self::preset(0, 1, -1)
    }

    /// Q = (0, 1, 1).
    pub fn signless_laplacian() -> Self {
        Self::preset(0, 1, 1)
    }

    /// ℒ = normalized (1, −1).
    pub fn normalized_laplacian() -> Self {
        MatrixFamily::GeneralizedNormalized {
            alpha: 1.into(),
            gamma: (-1).into(),
        }
    }

    fn preset(a: i64, b: i64, g: i64) -> Self {
        MatrixFamily::GeneralizedAdjacency {
            alpha: a.into(),
            beta: b.into(),
            gamma: g.into(),
        }
    }

    pub fn alpha(&self) -> &Scalar {
        match self {
            MatrixFamily::GeneralizedAdjacency { alpha, .. } | MatrixFamily::GeneralizedNormalized { alpha, .. } => {
                alpha
            }
        }
    }

    pub fn gamma(&self) -> &Scalar {
        match self {
            MatrixFamily::GeneralizedAdjacency { gamma, .. } | MatrixFamily::GeneralizedNormalized { gamma, .. } => {
                gamma
            }
        }
    }

    /// β for 𝐀; `None` for 𝒜.
    pub fn beta(&self) -> Option<&Scalar> {
        match self {
            MatrixFamily::GeneralizedAdjacency { beta, .. } => Some(beta),
            MatrixFamily::GeneralizedNormalized { .. } => None,
        }
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self, MatrixFamily::GeneralizedNormalized { .. })
    }

    /// Same family with γ negated.
    pub fn with_negated_gamma(&self) -> Self {
        match self.clone() {
            MatrixFamily::GeneralizedAdjacency { alpha, beta, gamma } => MatrixFamily::GeneralizedAdjacency {
                alpha,
                beta,
                gamma: gamma.neg(),
            },
            MatrixFamily::GeneralizedNormalized { alpha, gamma } => MatrixFamily::GeneralizedNormalized {
                alpha,
                gamma: gamma.neg(),
            },
        }
    }

    /// (α, β, γ) as floats.
    pub fn abg(&self) -> Result<(f64, f64, f64)> {
        match self {
            MatrixFamily::GeneralizedAdjacency { alpha, beta, gamma } => {
                Ok((alpha.value(), beta.value(), gamma.value()))
            }
            MatrixFamily::GeneralizedNormalized { .. } => Err(Error::Precondition(
                "operation requires a generalized adjacency family".into(),
            )),
        }
    }
}

fn real_to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn real_adjacency(g: &WeightedGraph) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for (u, v, w) in g.entries() {
        m[(u, v)] = w.value();
        m[(v, u)] = w.value();
    }
    m
}

/// 𝐀 as a real matrix.
pub fn real_generalized_adjacency(g: &WeightedGraph, alpha: f64, beta: f64, gamma: f64) -> DMatrix<f64> {
    let mut m = real_adjacency(g) * gamma;
    for (u, d) in g.degrees().into_iter().enumerate() {
        m[(u, u)] += alpha + beta * d;
    }
    m
}

pub fn adjacency_matrix(g: &WeightedGraph) -> HermitianMatrix {
    HermitianMatrix {
        entries: real_to_complex(&real_adjacency(g)),
    }
}

pub fn degree_matrix(g: &WeightedGraph) -> HermitianMatrix {
    let d = nalgebra::DVector::from_vec(g.degrees());
    HermitianMatrix {
        entries: real_to_complex(&DMatrix::from_diagonal(&d)),
    }
}

pub fn generalized_adjacency(g: &WeightedGraph, fam: &MatrixFamily) -> Result<HermitianMatrix> {
    let (a, b, c) = fam.abg()?;
    Ok(HermitianMatrix {
        entries: real_to_complex(&real_generalized_adjacency(g, a, b, c)),
    })
}

/// Diagonal of D^{-1/2}: 1/√deg for positive degrees, −i/√|deg| for negative.
pub fn inverse_sqrt_degrees(g: &WeightedGraph) -> Result<Vec<Complex64>> {
    let degrees = g.degrees();
    if let Some(u) = degrees.iter().position(|&d| d == 0.0) {
        return Err(Error::ZeroDegree(u));
    }
    let positive = degrees[0] > 0.0;
    if degrees.iter().any(|&d| (d > 0.0) != positive) {
        return Err(Error::MixedDegreeSigns);
    }
    Ok(degrees
        .iter()
        .map(|&d| {
            if d > 0.0 {
                Complex64::new(1.0 / d.sqrt(), 0.0)
            } else {
                Complex64::new(0.0, -1.0 / (-d).sqrt())
            }
        })
        .collect())
}

pub fn generalized_normalized(g: &WeightedGraph, fam: &MatrixFamily) -> Result<HermitianMatrix> {
    let (alpha, gamma) = match fam {
        MatrixFamily::GeneralizedNormalized { alpha, gamma } => (alpha.value(), gamma.value()),
        MatrixFamily::GeneralizedAdjacency { .. } => {
            return Err(Error::Precondition(
                "operation requires a generalized normalized family".into(),
            ))
        }
    };
    let s = inverse_sqrt_degrees(g)?;
    let n = g.n();
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (u, v, w) in g.entries() {
        let z = s[u] * s[v] * (gamma * w.value());
        m[(u, v)] = z;
        m[(v, u)] = z;
    }
    for u in 0..n {
        m[(u, u)] += alpha;
    }
    HermitianMatrix::from_complex(m)
}

/// The matrix selected by `fam`.
pub fn build_matrix(g: &WeightedGraph, fam: &MatrixFamily) -> Result<HermitianMatrix> {
    match fam {
        MatrixFamily::GeneralizedAdjacency { .. } => generalized_adjacency(g, fam),
        MatrixFamily::GeneralizedNormalized { .. } => generalized_normalized(g, fam),
    }
}
