//! Equitable and almost equitable partitions and their quotient matrices.
//!
//! For cells `C_j`, `d_{j,ℓ}` is the weight sum from a vertex of `C_j` into
//! `C_ℓ`, with a loop counted once. A partition is equitable when every
//! `d_{j,ℓ}` is well defined and almost equitable when every off-diagonal one is.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::{real_adjacency, real_generalized_adjacency, HermitianMatrix, MatrixFamily};
use crate::spectral::{decompose, SpectralDecomposition, ToleranceConfig};
use crate::twins::{are_twins, find_twin_classes, twin_theta, weight_tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionKind {
    Equitable,
    AlmostEquitable,
    Neither,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexPartition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
    kind: PartitionKind,
    /// `d[j][ℓ]`, present where the row sums are constant over `C_j`.
    d: Vec<Vec<Option<f64>>>,
    /// Mean loop weight per cell.
    mean_loop: Vec<f64>,
    /// Mean of `d_{j,j}` over the cell, used when the diagonal is not constant.
    mean_d_diag: Vec<f64>,
}

impl VertexPartition {
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_of(&self, u: usize) -> usize {
        self.cell_of[u]
    }

    pub fn d(&self, j: usize, l: usize) -> Option<f64> {
        self.d[j][l]
    }

    /// Cell index of `u` if `{u}` is a cell.
    pub fn singleton_cell(&self, u: usize) -> Option<usize> {
        let c = *self.cell_of.get(u)?;
        (self.cells[c].len() == 1).then_some(c)
    }

    /// Normalized characteristic matrix: column `j` is `1_{C_j}/√|C_j|`.
    pub fn characteristic_matrix(&self) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(self.cell_of.len(), self.cells.len());
        for (j, cell) in self.cells.iter().enumerate() {
            let s = 1.0 / (cell.len() as f64).sqrt();
            for &u in cell {
                p[(u, j)] = s;
            }
        }
        p
    }
}

/// Checks the cells and determines the kind and the `d` values.
pub fn verify_partition(g: &WeightedGraph, cells: &[Vec<usize>]) -> Result<VertexPartition> {
    let n = g.n();
    let mut cell_of = vec![usize::MAX; n];
    for (j, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::MalformedPartition(format!("cell {j} is empty")));
        }
        for &u in cell {
            if u >= n {
                return Err(Error::MalformedPartition(format!("vertex {u} out of range")));
            }
            if cell_of[u] != usize::MAX {
                return Err(Error::MalformedPartition(format!("vertex {u} appears twice")));
            }
            cell_of[u] = j;
        }
    }
    if let Some(u) = cell_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::MalformedPartition(format!("vertex {u} is in no cell")));
    }
    let a = real_adjacency(g);
    let tol = weight_tolerance(g);
    let k = cells.len();
    let mut d = vec![vec![None; k]; k];
    let mut mean_d_diag = vec![0.0; k];
    let mut off_ok = true;
    let mut diag_ok = true;
    for (j, cell) in cells.iter().enumerate() {
        for (l, target) in cells.iter().enumerate() {
            let sums: Vec<f64> = cell.iter().map(|&u| target.iter().map(|&w| a[(u, w)]).sum()).collect();
            let constant = sums.iter().all(|s| (s - sums[0]).abs() <= tol);
            if j == l {
                mean_d_diag[j] = sums.iter().sum::<f64>() / sums.len() as f64;
                diag_ok &= constant;
            } else {
                off_ok &= constant;
            }
            if constant {
                d[j][l] = Some(sums[0]);
            }
        }
    }
    let kind = match (off_ok, diag_ok) {
        (true, true) => PartitionKind::Equitable,
        (true, false) => PartitionKind::AlmostEquitable,
        _ => PartitionKind::Neither,
    };
    let mean_loop = cells
        .iter()
        .map(|c| c.iter().map(|&u| a[(u, u)]).sum::<f64>() / c.len() as f64)
        .collect();
    Ok(VertexPartition {
        cells: cells.to_vec(),
        cell_of,
        kind,
        d,
        mean_loop,
        mean_d_diag,
    })
}

/// Parses cells written as `0|1|2,3,4`.
pub fn parse_cells(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|cell| {
            cell.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::MalformedPartition(format!("`{s}` is not a vertex index")))
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub partition: VertexPartition,
    /// Normalized characteristic matrix 𝒫.
    pub p: DMatrix<f64>,
    /// ℳ(X/π).
    pub m: DMatrix<f64>,
    pub family: MatrixFamily,
    /// `max |𝐀𝒫 − 𝒫ℳ|`.
    pub intertwining_residual: f64,
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// ℳ(X/π) for 𝐀 when π is equitable, or almost equitable with `β = −γ`.
///
/// Off-diagonal entries are `γ·sgn(d_{j,ℓ})·√(d_{j,ℓ} d_{ℓ,j})`; the sign keeps
/// negative cell sums correct, since `d_{j,ℓ}` and `d_{ℓ,j}` always share a sign.
pub fn quotient_matrix(g: &WeightedGraph, partition: &VertexPartition, fam: &MatrixFamily) -> Result<QuotientReport> {
    let MatrixFamily::GeneralizedAdjacency { beta, gamma, .. } = fam else {
        return Err(Error::Precondition(
            "quotients are defined for generalized adjacency matrices only".into(),
        ));
    };
    let laplacian_like = *beta == gamma.neg();
    match partition.kind {
        PartitionKind::Equitable => {}
        PartitionKind::AlmostEquitable if laplacian_like => {}
        PartitionKind::AlmostEquitable => {
            return Err(Error::Precondition(
                "almost equitable partitions need beta = -gamma".into(),
            ))
        }
        PartitionKind::Neither => return Err(Error::Precondition("partition is not almost equitable".into())),
    }
    let (al, be, ga) = fam.abg()?;
    let k = partition.cell_count();
    let d = |j: usize, l: usize| partition.d[j][l].expect("checked by partition kind");
    let mut m = DMatrix::zeros(k, k);
    for j in 0..k {
        for l in 0..k {
            if j == l {
                let djj = partition.d[j][j].unwrap_or(partition.mean_d_diag[j]);
                let others: f64 = (0..k).filter(|&r| r != j).map(|r| d(j, r)).sum();
                m[(j, j)] = al + (be + ga) * djj + be * (others + partition.mean_loop[j]);
            } else {
                let (x, y) = (d(j, l), d(l, j));
                m[(j, l)] = ga * x.signum() * (x * y).abs().sqrt();
            }
        }
    }
    let h = real_generalized_adjacency(g, al, be, ga);
    let p = partition.characteristic_matrix();
    let scale = h.iter().fold(1.0_f64, |acc, x| acc.max(x.abs()));
    let tol = 1e-9 * scale * (g.n() as f64);
    let orth = max_abs(&(p.transpose() * &p - DMatrix::identity(k, k)));
    if orth > 1e-12 * k as f64 {
        return Err(Error::Verification(format!("P^T P differs from I by {orth:.3e}")));
    }
    let intertwining_residual = max_abs(&(&h * &p - &p * &m));
    if intertwining_residual > tol {
        return Err(Error::Verification(format!(
            "A P differs from P M by {intertwining_residual:.3e}; loop weights or degrees vary within a cell"
        )));
    }
    let projected = p.transpose() * &h * &p;
    let gap = max_abs(&(&projected - &m));
    if gap > tol {
        return Err(Error::CrossCheck(format!(
            "quotient formula differs from P^T A P by {gap:.3e}"
        )));
    }
    let full = h.clone().symmetric_eigen().eigenvalues;
    for mu in m.clone().symmetric_eigen().eigenvalues.iter() {
        let near = full.iter().map(|l| (l - mu).abs()).fold(f64::INFINITY, f64::min);
        if near > 1e-8 * scale.max(1.0) {
            return Err(Error::Verification(format!(
                "quotient eigenvalue {mu} is not an eigenvalue of the full matrix"
            )));
        }
    }
    Ok(QuotientReport {
        partition: partition.clone(),
        p,
        m,
        family: fam.clone(),
        intertwining_residual,
    })
}

fn singleton_cells(partition: &VertexPartition, u: usize, v: usize) -> Result<(usize, usize)> {
    let cell = |x: usize| {
        partition
            .singleton_cell(x)
            .ok_or_else(|| Error::Precondition(format!("vertex {x} is not a singleton cell")))
    };
    Ok((cell(u)?, cell(v)?))
}

fn decompose_quotient(report: &QuotientReport, tol: ToleranceConfig) -> Result<SpectralDecomposition> {
    decompose(&HermitianMatrix::from_real(&report.m)?, tol)
}

/// Strong cospectrality of `u, v` in the full graph and of `{u}, {v}` in the
/// quotient. The two verdicts must agree.
pub fn quotient_strong_cospectrality(
    g: &WeightedGraph,
    fam: &MatrixFamily,
    u: usize,
    v: usize,
    partition: &VertexPartition,
    tol: ToleranceConfig,
) -> Result<(bool, bool)> {
    let (cu, cv) = singleton_cells(partition, u, v)?;
    let report = quotient_matrix(g, partition, fam)?;
    let full = crate::spectral::decompose_graph(g, fam, tol)?
        .classify_pair(u, v)?
        .strongly_cospectral;
    let quotient = decompose_quotient(&report, tol)?
        .classify_pair(cu, cv)?
        .strongly_cospectral;
    if full != quotient {
        return Err(Error::CrossCheck(format!(
            "strong cospectrality of ({u},{v}) is {full} in the graph but {quotient} in the quotient"
        )));
    }
    Ok((full, quotient))
}

/// `max_t |(e^{itℳ})_{{u},{v}} − (e^{it𝐀})_{u,v}|`.
pub fn amplitude_equality(
    g: &WeightedGraph,
    fam: &MatrixFamily,
    u: usize,
    v: usize,
    partition: &VertexPartition,
    times: &[f64],
    tol: ToleranceConfig,
) -> Result<f64> {
    let (cu, cv) = singleton_cells(partition, u, v)?;
    let report = quotient_matrix(g, partition, fam)?;
    let full = crate::spectral::decompose_graph(g, fam, tol)?;
    let quot = decompose_quotient(&report, tol)?;
    let mut worst: f64 = 0.0;
    for &t in times {
        let a = full.transition_amplitude(t, u, v)?;
        let b = quot.transition_amplitude(t, cu, cv)?;
        worst = worst.max((a - b).norm());
    }
    Ok(worst)
}

/// Whether `e_{u} − e_{v}` being an eigenvector of ℳ forces `u, v` to be twins:
/// this needs `β ≠ −γ/2` or equal loops at `u` and `v`.
pub fn twin_converse_applies(g: &WeightedGraph, fam: &MatrixFamily, u: usize, v: usize) -> Result<bool> {
    let (_, be, ga) = fam.abg()?;
    Ok(be != -ga / 2.0 || (g.loop_weight(u) - g.loop_weight(v)).abs() <= weight_tolerance(g))
}

/// The eigenvalue of ℳ at `e_{cu} − e_{cv}`, if that vector is an eigenvector.
pub fn quotient_difference_eigenvalue(report: &QuotientReport, cu: usize, cv: usize) -> Option<f64> {
    let k = report.m.nrows();
    let x = |i: usize| match i {
        _ if i == cu => 1.0,
        _ if i == cv => -1.0,
        _ => 0.0,
    };
    let y: Vec<f64> = (0..k).map(|i| (0..k).map(|j| report.m[(i, j)] * x(j)).sum()).collect();
    let lambda = y[cu];
    let tol = 1e-9 * max_abs(&report.m).max(1.0);
    (0..k).all(|i| (y[i] - lambda * x(i)).abs() <= tol).then_some(lambda)
}

/// Checks `ℳ(e_{u} − e_{v}) = θ(e_{u} − e_{v})` for twins `u, v` in singleton cells.
pub fn twin_quotient_eigvec(
    g: &WeightedGraph,
    fam: &MatrixFamily,
    u: usize,
    v: usize,
    partition: &VertexPartition,
) -> Result<bool> {
    if !are_twins(g, u, v)? {
        return Err(Error::NotTwins(u, v));
    }
    let (cu, cv) = singleton_cells(partition, u, v)?;
    let cls = find_twin_classes(g)
        .into_iter()
        .find(|c| c.contains(u) && c.contains(v))
        .ok_or(Error::NotTwins(u, v))?;
    let theta = twin_theta(g, fam, &cls)?;
    let report = quotient_matrix(g, partition, fam)?;
    let tol = 1e-9 * max_abs(&report.m).max(1.0);
    Ok(quotient_difference_eigenvalue(&report, cu, cv).is_some_and(|l| (l - theta).abs() <= tol))
}

/// Coarsest equitable partition refining `initial` (all of `V` when `None`),
/// by repeated splitting on the vector of row sums into the current cells.
pub fn coarsest_equitable_refinement(g: &WeightedGraph, initial: Option<&[Vec<usize>]>) -> Result<VertexPartition> {
    let n = g.n();
    let start: Vec<Vec<usize>> = match initial {
        Some(cells) => verify_partition(g, cells)?.cells,
        None => vec![(0..n).collect()],
    };
    let a = real_adjacency(g);
    let tol = weight_tolerance(g);
    let mut cells = start;
    loop {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for cell in &cells {
            let signature =
                |u: usize| -> Vec<f64> { cells.iter().map(|c| c.iter().map(|&w| a[(u, w)]).sum()).collect() };
            let mut groups: Vec<(Vec<f64>, Vec<usize>)> = Vec::new();
            for &u in cell {
                let s = signature(u);
                match groups
                    .iter_mut()
                    .find(|(r, _)| r.iter().zip(&s).all(|(x, y)| (x - y).abs() <= tol))
                {
                    Some((_, members)) => members.push(u),
                    None => groups.push((s, vec![u])),
                }
            }
            next.extend(groups.into_iter().map(|(_, m)| m));
        }
        if next.len() == cells.len() {
            break;
        }
        cells = next;
    }
    for c in &mut cells {
        c.sort_unstable();
    }
    cells.sort_by_key(|c| c[0]);
    verify_partition(g, &cells)
}
