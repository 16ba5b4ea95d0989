//! Exact characteristic polynomials of rational matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RationalPoly;
use crate::error::{Error, Result};

/// Dense square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix is not square".into()));
        }
        Ok(RationalMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| crate::scalar::rational_to_f64(self.get(i, j)))
    }

    /// Principal submatrix with the rows and columns in `deleted` removed.
    pub fn delete(&self, deleted: &[usize]) -> Result<Self> {
        for &s in deleted {
            if s >= self.n {
                return Err(Error::VertexOutOfRange { vertex: s, n: self.n });
            }
        }
        let keep: Vec<usize> = (0..self.n).filter(|i| !deleted.contains(i)).collect();
        let mut m = Self::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        Ok(m)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn trace(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }
}

/// `det(tI − M)` by reduction to upper Hessenberg form.
pub fn char_poly(m: &RationalMatrix) -> RationalPoly {
    let n = m.dim();
    let mut h = m.clone();
    // Similarity transforms to Hessenberg form.
    for col in 0..n.saturating_sub(2) {
        let pivot_row = col + 1;
        let Some(i) = (pivot_row..n).find(|&i| !h.get(i, col).is_zero()) else {
            continue;
        };
        if i != pivot_row {
            for j in 0..n {
                h.data.swap(i * n + j, pivot_row * n + j);
            }
            for r in 0..n {
                h.data.swap(r * n + i, r * n + pivot_row);
            }
        }
        let pivot = h.get(pivot_row, col).clone();
        for r in pivot_row + 1..n {
            let f = h.get(r, col) / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &f * h.get(pivot_row, j);
                h.data[r * n + j] -= t;
            }
            for k in 0..n {
                let t = &f * h.get(k, r);
                h.data[k * n + pivot_row] += t;
            }
        }
    }
    // p_k = (t − h_kk) p_{k−1} − Σ_{i<k} h_{i,k} (Π_{j=i+1..k} h_{j,j−1}) p_{i−1}
    let mut p: Vec<RationalPoly> = Vec::with_capacity(n + 1);
    p.push(RationalPoly::one());
    for k in 1..=n {
        let mut next = &RationalPoly::linear(h.get(k - 1, k - 1).clone()) * &p[k - 1];
        let mut prod = BigRational::one();
        for i in (1..k).rev() {
            prod *= h.get(i, i - 1);
            if prod.is_zero() {
                break;
            }
            let c = h.get(i - 1, k - 1) * &prod;
            if !c.is_zero() {
                next = &next - &p[i - 1].scale(&c);
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// Characteristic polynomial of `M` with the vertices in `s` deleted.
pub fn vertex_deleted_poly(m: &RationalMatrix, s: &[usize]) -> Result<RationalPoly> {
    if s.is_empty() {
        return Err(Error::Precondition("deleted vertex set is empty".into()));
    }
    Ok(char_poly(&m.delete(s)?))
}

/// `φ(M, t)` and the coefficient matrices of `adj(tI − M) = Σ_k t^{n−k} N_k`.
#[derive(Debug, Clone)]
pub struct Adjugate {
    pub phi: RationalPoly,
    /// `N_1 … N_n`, where `N_1 = I`.
    pub coefficients: Vec<RationalMatrix>,
}

impl Adjugate {
    /// Entry `(i, j)` of `adj(tI − M)` as a polynomial.
    pub fn entry(&self, i: usize, j: usize) -> RationalPoly {
        let n = self.coefficients.len();
        let mut c = vec![BigRational::zero(); n];
        for (k, nk) in self.coefficients.iter().enumerate() {
            c[n - 1 - k] = nk.get(i, j).clone();
        }
        RationalPoly::from_coeffs(c)
    }
}

/// Faddeev–LeVerrier recursion.
pub fn faddeev_leverrier(m: &RationalMatrix) -> Adjugate {
    let n = m.dim();
    let mut phi = vec![BigRational::zero(); n + 1];
    phi[n] = BigRational::one();
    let mut coefficients = Vec::with_capacity(n);
    let mut nk = RationalMatrix::identity(n);
    for k in 1..=n {
        let mn = m.mul(&nk);
        let c = -mn.trace() / BigRational::from_integer(k.into());
        phi[n - k] = c.clone();
        coefficients.push(nk);
        let mut next = mn;
        for i in 0..n {
            next.data[i * n + i] += &c;
        }
        nk = next;
    }
    Adjugate {
        phi: RationalPoly::from_coeffs(phi),
        coefficients,
    }
}
