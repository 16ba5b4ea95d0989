//! Spectral decomposition into distinct-eigenvalue projectors and the pair
//! tests built on it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::{build_matrix, HermitianMatrix, MatrixFamily};

/// Environment variable overriding [`ToleranceConfig::eig_group`].
pub const TOL_EIG_ENV: &str = "COSPEC_TOL_EIG";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative gap (times the spectral radius, floored at 1e-12) below which
    /// raw eigenvalues merge into one distinct eigenvalue.
    pub eig_group: f64,
    /// Norm below which `E_j e_u` counts as zero; also the cospectrality tolerance.
    pub zero_vec: f64,
    /// Tolerance on `||c_j| - 1|` and on the relative rank-one defect.
    pub unit_mod: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eig_group: 1e-9,
            zero_vec: 1e-9,
            unit_mod: 1e-8,
        }
    }
}

impl ToleranceConfig {
    /// Defaults, with `eig_group` taken from `COSPEC_TOL_EIG` when set.
    pub fn from_env() -> Result<Self> {
        let mut tol = Self::default();
        if let Ok(raw) = std::env::var(TOL_EIG_ENV) {
            tol.eig_group = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{TOL_EIG_ENV}=`{raw}` is not a number")))?;
        }
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eig_group", self.eig_group),
            ("zero_vec", self.zero_vec),
            ("unit_mod", self.unit_mod),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("tolerance {name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn cluster_threshold(&self, spectral_radius: f64) -> f64 {
        (self.eig_group * spectral_radius).max(1e-12)
    }
}

/// Distinct eigenvalues in increasing order with their eigenprojectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    projectors: Vec<DMatrix<Complex64>>,
    tol: ToleranceConfig,
    matrix: HermitianMatrix,
}

/// Verdict for one vertex pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairClassification {
    pub u: usize,
    pub v: usize,
    pub cospectral: bool,
    pub parallel: bool,
    pub strongly_cospectral: bool,
    pub support_u: Vec<usize>,
    pub support_v: Vec<usize>,
    /// `Some(c_j)` with `E_j e_u = c_j E_j e_v` when both sides are nonzero and parallel.
    pub constants: Vec<Option<Complex64>>,
    /// Indices with `E_j e_u = E_j e_v`; real matrices and strong pairs only.
    pub sigma_plus: Option<Vec<usize>>,
    /// Indices with `E_j e_u = −E_j e_v`; real matrices and strong pairs only.
    pub sigma_minus: Option<Vec<usize>>,
}

/// Largest deviations from the projector identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorResiduals {
    pub sum_to_identity: f64,
    pub idempotence: f64,
    pub orthogonality: f64,
    pub reconstruction: f64,
    /// max_j ‖HE_j − λ_jE_j‖ / max(1, |λ_j|)
    pub eigen_equation: f64,
    pub trace_vs_multiplicity: f64,
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix, clustered into distinct eigenvalues.
pub fn decompose(h: &HermitianMatrix, tol: ToleranceConfig) -> Result<SpectralDecomposition> {
    tol.validate()?;
    let n = h.dim();
    let max_iter = 1000 * n.max(1);
    let (raw_values, vectors): (Vec<f64>, DMatrix<Complex64>) = if h.is_real() {
        let eig = SymmetricEigen::try_new(h.real_part(), f64::EPSILON, max_iter).ok_or(Error::NoConvergence)?;
        (
            eig.eigenvalues.iter().copied().collect(),
            eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
        )
    } else {
        let eig = SymmetricEigen::try_new(h.entries().clone(), f64::EPSILON, max_iter).ok_or(Error::NoConvergence)?;
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };

    let norm = h.inf_norm();
    for (k, &lambda) in raw_values.iter().enumerate() {
        let v = vectors.column(k);
        let residual = (h.entries() * v - v * Complex64::new(lambda, 0.0)).norm();
        if residual > 1e-10 * norm {
            return Err(Error::Verification(format!(
                "eigenpair residual {residual:e} exceeds 1e-10·‖H‖"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw_values[a].total_cmp(&raw_values[b]));
    let radius = raw_values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let threshold = tol.cluster_threshold(radius);

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        match clusters.last_mut() {
            Some(c) if raw_values[k] - raw_values[*c.last().unwrap()] < threshold => c.push(k),
            _ => clusters.push(vec![k]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut multiplicities = Vec::with_capacity(clusters.len());
    let mut projectors = Vec::with_capacity(clusters.len());
    for c in &clusters {
        let mean = c.iter().map(|&k| raw_values[k]).sum::<f64>() / c.len() as f64;
        let mut basis = DMatrix::zeros(n, c.len());
        for (i, &k) in c.iter().enumerate() {
            basis.set_column(i, &vectors.column(k));
        }
        eigenvalues.push(mean);
        multiplicities.push(c.len());
        projectors.push(&basis * basis.adjoint());
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        multiplicities,
        projectors,
        tol,
        matrix: h.clone(),
    })
}

/// Builds `fam` on a valid connected graph and decomposes it.
pub fn decompose_graph(g: &WeightedGraph, fam: &MatrixFamily, tol: ToleranceConfig) -> Result<SpectralDecomposition> {
    g.ensure_analyzable()?;
    decompose(&build_matrix(g, fam)?, tol)
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn projectors(&self) -> &[DMatrix<Complex64>] {
        &self.projectors
    }

    pub fn tolerance(&self) -> ToleranceConfig {
        self.tol
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Imaginary parts of the input all lie below `zero_vec`.
    pub fn is_real(&self) -> bool {
        self.matrix.entries().iter().all(|z| z.im.abs() <= self.tol.zero_vec)
    }

    /// Index of the distinct eigenvalue closest to `x`, if within the clustering threshold.
    pub fn index_of(&self, x: f64, slack: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(j, &l)| (j, (l - x).abs()))
            .filter(|&(_, d)| d <= slack)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(j, _)| j)
    }

    /// `E_j e_u`.
    pub fn projected(&self, j: usize, u: usize) -> DVector<Complex64> {
        self.projectors[j].column(u).into_owned()
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.dim() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.dim(),
            })
        }
    }

    /// Indices `j` with `‖E_j e_u‖ > zero_vec`.
    pub fn eigenvalue_support(&self, u: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        Ok((0..self.eigenvalues.len())
            .filter(|&j| self.projected(j, u).norm() > self.tol.zero_vec)
            .collect())
    }

    pub fn classify_pair(&self, u: usize, v: usize) -> Result<PairClassification> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Precondition(format!(
                "pair needs distinct vertices, got {u} twice"
            )));
        }
        let tol = self.tol;
        let r = self.eigenvalues.len();
        let mut cospectral = true;
        let mut parallel = true;
        let mut unimodular = true;
        let mut support_u = Vec::new();
        let mut support_v = Vec::new();
        let mut constants = vec![None; r];
        for (j, e) in self.projectors.iter().enumerate() {
            if (e[(u, u)] - e[(v, v)]).norm() > tol.zero_vec {
                cospectral = false;
            }
            let a = e.column(u);
            let b = e.column(v);
            let (na, nb) = (a.norm(), b.norm());
            let (za, zb) = (na <= tol.zero_vec, nb <= tol.zero_vec);
            if !za {
                support_u.push(j);
            }
            if !zb {
                support_v.push(j);
            }
            match (za, zb) {
                (true, true) => {}
                (true, false) | (false, true) => parallel = false,
                (false, false) => {
                    let inner = b.dotc(&a);
                    let scale = na * na * nb * nb;
                    let defect = scale - inner.norm_sqr();
                    if defect > tol.unit_mod * scale {
                        parallel = false;
                    } else {
                        let c = inner / (nb * nb);
                        if (c.norm() - 1.0).abs() > tol.unit_mod {
                            unimodular = false;
                        }
                        constants[j] = Some(c);
                    }
                }
            }
        }
        let strongly_cospectral = cospectral && parallel && unimodular;
        let (sigma_plus, sigma_minus) = if strongly_cospectral && self.is_real() {
            let (plus, minus): (Vec<usize>, Vec<usize>) = support_u
                .iter()
                .partition(|&&j| constants[j].is_some_and(|c| c.re > 0.0));
            (Some(plus), Some(minus))
        } else {
            (None, None)
        };
        Ok(PairClassification {
            u,
            v,
            cospectral,
            parallel,
            strongly_cospectral,
            support_u,
            support_v,
            constants,
            sigma_plus,
            sigma_minus,
        })
    }

    /// Every unordered pair, lexicographically.
    pub fn all_pairs(&self) -> Vec<PairClassification> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                out.push(self.classify_pair(u, v).expect("valid distinct vertices"));
            }
        }
        out
    }

    /// Strongly cospectral pairs, lexicographically.
    pub fn all_strong_pairs(&self) -> Vec<PairClassification> {
        self.all_pairs().into_iter().filter(|p| p.strongly_cospectral).collect()
    }

    /// `f(H) = Σ_j f(λ_j) E_j`.
    pub fn matrix_function<F>(&self, f: F) -> Result<DMatrix<Complex64>>
    where
        F: Fn(f64) -> Complex64,
    {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (&lambda, e) in self.eigenvalues.iter().zip(&self.projectors) {
            let fl = f(lambda);
            if !(fl.re.is_finite() && fl.im.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "function is not finite at eigenvalue {lambda}"
                )));
            }
            out += e * fl;
        }
        Ok(out)
    }

    /// `(e^{itH})_{u,v}`.
    pub fn transition_amplitude(&self, t: f64, u: usize, v: usize) -> Result<Complex64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self
            .eigenvalues
            .iter()
            .zip(&self.projectors)
            .map(|(&lambda, e)| Complex64::new(0.0, t * lambda).exp() * e[(u, v)])
            .sum())
    }

    /// `R = Σ_j conj(c_j) E_j` with `c_j = 1` off the support, so that `R e_u = e_v`.
    pub fn swap_unitary(&self, pc: &PairClassification) -> Result<DMatrix<Complex64>> {
        let (u, v) = (pc.u, pc.v);
        if !pc.strongly_cospectral {
            return Err(Error::NotStronglyCospectral(u, v));
        }
        let n = self.dim();
        let mut r = DMatrix::zeros(n, n);
        for (j, e) in self.projectors.iter().enumerate() {
            let c = pc
                .constants
                .get(j)
                .copied()
                .flatten()
                .unwrap_or(Complex64::new(1.0, 0.0));
            r += e * c.conj();
        }
        let scale = self.matrix.max_abs().max(1.0);
        let mut ev = DVector::zeros(n);
        ev[v] = Complex64::new(1.0, 0.0);
        let swap_err = (r.column(u) - ev).norm();
        let commute_err = max_abs(&(&r * self.matrix.entries() - self.matrix.entries() * &r));
        let unitary_err = max_abs(&(r.adjoint() * &r - DMatrix::identity(n, n)));
        if swap_err > 1e-8 || commute_err > 1e-8 * scale || unitary_err > 1e-8 {
            return Err(Error::Verification(format!(
                "swap unitary checks failed: Re_u−e_v {swap_err:e}, [R,H] {commute_err:e}, R*R−I {unitary_err:e}"
            )));
        }
        Ok(r)
    }

    pub fn projector_residuals(&self) -> ProjectorResiduals {
        let n = self.dim();
        let h = self.matrix.entries();
        let mut sum = DMatrix::zeros(n, n);
        let mut recon = DMatrix::zeros(n, n);
        let mut idem: f64 = 0.0;
        let mut orth: f64 = 0.0;
        let mut eig: f64 = 0.0;
        let mut trace: f64 = 0.0;
        for (j, e) in self.projectors.iter().enumerate() {
            let lambda = self.eigenvalues[j];
            sum += e;
            recon += e * Complex64::new(lambda, 0.0);
            idem = idem.max(max_abs(&(e * e - e)));
            eig = eig.max(max_abs(&(h * e - e * Complex64::new(lambda, 0.0))) / lambda.abs().max(1.0));
            trace = trace.max((e.trace().re - self.multiplicities[j] as f64).abs());
            for f in &self.projectors[j + 1..] {
                orth = orth.max(max_abs(&(e * f)));
            }
        }
        ProjectorResiduals {
            sum_to_identity: max_abs(&(sum - DMatrix::identity(n, n))),
            idempotence: idem,
            orthogonality: orth,
            reconstruction: max_abs(&(recon - h)),
            eigen_equation: eig,
            trace_vs_multiplicity: trace,
        }
    }
}

/// `W_u(H) = [e_u, He_u, …, H^{n−1}e_u]`.
pub fn walk_matrix(h: &HermitianMatrix, u: usize) -> Result<DMatrix<Complex64>> {
    let n = h.dim();
    if u >= n {
        return Err(Error::VertexOutOfRange { vertex: u, n });
    }
    let mut w = DMatrix::zeros(n, n);
    let mut col = DVector::zeros(n);
    col[u] = Complex64::new(1.0, 0.0);
    for k in 0..n {
        w.set_column(k, &col);
        col = h.entries() * col;
    }
    Ok(w)
}

/// Whether the walk modules of `e_u − e_v` and `e_u + e_v` are orthogonal.
///
/// `H` is first scaled by `1/max(1, ‖H‖_∞)`, which leaves the modules
/// unchanged and keeps the powers bounded; `tol` is then absolute.
pub fn module_orthogonality(h: &HermitianMatrix, u: usize, v: usize, tol: f64) -> Result<bool> {
    if u == v {
        return Err(Error::Precondition(format!(
            "pair needs distinct vertices, got {u} twice"
        )));
    }
    let scale = 1.0 / h.inf_norm().max(1.0);
    let scaled = HermitianMatrix::from_complex(h.entries() * Complex64::new(scale, 0.0))?;
    let wu = walk_matrix(&scaled, u)?;
    let wv = walk_matrix(&scaled, v)?;
    let gram = (&wu - &wv).adjoint() * (&wu + &wv);
    Ok(max_abs(&gram) <= tol)
}
