//! JSON report types. Field order is declaration order, so identical inputs
//! give byte-identical output.

use serde::ser::Serializer;
use serde::Serialize;
use serde_json::value::RawValue;

use cospec_core::constructions::{Clause, ConeReport, Outcome, ProductAnalysis, ProductKind};
use cospec_core::exact::{RationalCertificate, RationalPoly};
use cospec_core::partition::PartitionKind;
use cospec_core::{MatrixFamily, PairClassification, SpectralDecomposition, ToleranceConfig, WeightedGraph};

/// A float written with 17 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

fn nums(xs: impl IntoIterator<Item = f64>) -> Vec<Num> {
    xs.into_iter().map(Num).collect()
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub tool: Tool,
    pub command: &'static str,
    pub tolerance: Tolerance,
    pub family: Family,
    pub graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Spectrum>,
    /// Per vertex, indices into `spectrum.eigenvalues`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twins: Option<Vec<TwinRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<AmplitudeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub join: Option<JoinSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactSection>,
}

impl AnalysisReport {
    pub fn new(command: &'static str, tol: ToleranceConfig, fam: &MatrixFamily, graph: GraphSummary) -> Self {
        AnalysisReport {
            tool: Tool::current(),
            command,
            tolerance: Tolerance::from(tol),
            family: Family::from(fam),
            graph,
            spectrum: None,
            supports: None,
            pairs: None,
            twins: None,
            quotient: None,
            amplitude: None,
            product: None,
            join: None,
            exact: None,
        }
    }

    pub fn with_spectrum(mut self, d: &SpectralDecomposition) -> cospec_core::Result<Self> {
        self.spectrum = Some(Spectrum::from(d));
        self.supports = Some(
            (0..d.dim())
                .map(|u| d.eigenvalue_support(u))
                .collect::<Result<_, _>>()?,
        );
        Ok(self)
    }
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Tolerance {
    pub eig_group: Num,
    pub zero_vec: Num,
    pub unit_mod: Num,
}

impl From<ToleranceConfig> for Tolerance {
    fn from(t: ToleranceConfig) -> Self {
        Tolerance {
            eig_group: Num(t.eig_group),
            zero_vec: Num(t.zero_vec),
            unit_mod: Num(t.unit_mod),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Family {
    pub kind: &'static str,
    pub alpha: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub gamma: String,
}

impl From<&MatrixFamily> for Family {
    fn from(f: &MatrixFamily) -> Self {
        Family {
            kind: if f.is_normalized() {
                "generalized_normalized"
            } else {
                "generalized_adjacency"
            },
            alpha: f.alpha().to_string(),
            beta: f.beta().map(ToString::to_string),
            gamma: f.gamma().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub loops: usize,
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub degrees: Vec<Num>,
}

impl GraphSummary {
    pub fn new(source: String, g: &WeightedGraph, labels: Option<Vec<String>>) -> Self {
        let loops = g.entries().filter(|(a, b, _)| a == b).count();
        GraphSummary {
            source,
            n: g.n(),
            edges: g.entries().count() - loops,
            loops,
            connected: g.is_connected(),
            labels,
            degrees: nums(g.degrees()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Num>,
    pub multiplicities: Vec<usize>,
}

impl From<&SpectralDecomposition> for Spectrum {
    fn from(d: &SpectralDecomposition) -> Self {
        Spectrum {
            eigenvalues: nums(d.eigenvalues().iter().copied()),
            multiplicities: d.multiplicities().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PairRow {
    pub u: usize,
    pub v: usize,
    pub cospectral: bool,
    pub parallel: bool,
    pub strong: bool,
    pub sigma_plus: Option<Vec<usize>>,
    pub sigma_minus: Option<Vec<usize>>,
}

impl From<&PairClassification> for PairRow {
    fn from(p: &PairClassification) -> Self {
        PairRow {
            u: p.u,
            v: p.v,
            cospectral: p.cospectral,
            parallel: p.parallel,
            strong: p.strongly_cospectral,
            sigma_plus: p.sigma_plus.clone(),
            sigma_minus: p.sigma_minus.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TwinRow {
    pub vertices: Vec<usize>,
    pub omega: String,
    pub eta: String,
    pub true_twins: bool,
    pub theta: Num,
}

#[derive(Debug, Serialize)]
pub struct QuotientSection {
    pub cells: Vec<Vec<usize>>,
    pub kind: &'static str,
    pub characteristic: Vec<Vec<Num>>,
    pub matrix: Vec<Vec<Num>>,
    pub intertwining_residual: Num,
    pub eigenvalues: Vec<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<QuotientPair>,
}

pub fn partition_kind(k: PartitionKind) -> &'static str {
    match k {
        PartitionKind::Equitable => "equitable",
        PartitionKind::AlmostEquitable => "almost_equitable",
        PartitionKind::Neither => "neither",
    }
}

pub fn rows<'a, R>(rows: R) -> Vec<Vec<Num>>
where
    R: IntoIterator<Item = &'a [f64]>,
{
    rows.into_iter().map(|r| nums(r.iter().copied())).collect()
}

#[derive(Debug, Serialize)]
pub struct QuotientPair {
    pub u: usize,
    pub v: usize,
    pub strong_in_graph: bool,
    pub strong_in_quotient: bool,
}

#[derive(Debug, Serialize)]
pub struct AmplitudeSection {
    pub u: usize,
    pub v: usize,
    pub samples: Vec<Amplitude>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via_quotient: Option<ViaQuotient>,
}

#[derive(Debug, Serialize)]
pub struct Amplitude {
    pub t: Num,
    pub re: Num,
    pub im: Num,
    pub abs: Num,
}

#[derive(Debug, Serialize)]
pub struct ViaQuotient {
    pub cells: Vec<Vec<usize>>,
    pub max_deviation: Num,
}

#[derive(Debug, Serialize)]
pub struct ProductSection {
    pub kind: &'static str,
    pub factor_sizes: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<ProductCheck>,
}

pub fn product_kind(k: ProductKind) -> &'static str {
    match k {
        ProductKind::Cartesian => "cartesian",
        ProductKind::Direct => "direct",
    }
}

#[derive(Debug, Serialize)]
pub struct ProductCheck {
    pub pair: [usize; 2],
    pub rows: Vec<MuRowOut>,
    pub predicted: bool,
    pub direct: bool,
}

#[derive(Debug, Serialize)]
pub struct MuRowOut {
    pub mu: Num,
    pub lambda_set: Vec<Num>,
    pub theta_set: Vec<Num>,
    pub pair_count: usize,
    pub clause: &'static str,
}

impl From<&ProductAnalysis> for ProductCheck {
    fn from(a: &ProductAnalysis) -> Self {
        ProductCheck {
            pair: [a.pair.0, a.pair.1],
            rows: a
                .rows
                .iter()
                .map(|r| MuRowOut {
                    mu: Num(r.mu),
                    lambda_set: nums(r.lambda_set.iter().copied()),
                    theta_set: nums(r.theta_set.iter().copied()),
                    pair_count: r.pair_count,
                    clause: match r.clause {
                        Clause::OutsideSupport => "outside_support",
                        Clause::UniquePair => "unique_pair",
                        Clause::UniformSign => "uniform_sign",
                        Clause::UniformProductSign => "uniform_product_sign",
                        Clause::Failed => "failed",
                    },
                })
                .collect(),
            predicted: a.predicted,
            direct: a.direct,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct JoinSection {
    pub x: String,
    pub delta: String,
    pub n_apexes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<VerdictOut>>,
}

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub name: &'static str,
    pub pair: Option<[usize; 2]>,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VerdictOut {
    pub u: usize,
    pub v: usize,
    pub predicted: Option<bool>,
    pub decided_by: Option<&'static str>,
    pub direct: bool,
}

impl JoinSection {
    pub fn with_cone(mut self, r: &ConeReport) -> Self {
        self.checks = Some(
            r.checks
                .iter()
                .map(|c| {
                    let (outcome, reason) = match &c.outcome {
                        Outcome::Holds => ("holds", None),
                        Outcome::Violated => ("violated", None),
                        Outcome::NotApplicable(why) => ("not_applicable", Some(why.clone())),
                    };
                    CheckOut {
                        name: c.name,
                        pair: c.pair.map(|(a, b)| [a, b]),
                        outcome,
                        reason,
                    }
                })
                .collect(),
        );
        self.pairs = Some(
            r.pairs
                .iter()
                .map(|p| VerdictOut {
                    u: p.u,
                    v: p.v,
                    predicted: p.predicted,
                    decided_by: p.decided_by,
                    direct: p.direct,
                })
                .collect(),
        );
        self
    }
}

#[derive(Debug, Serialize)]
pub struct ExactSection {
    pub u: usize,
    pub v: usize,
    /// Coefficients in ascending degree, as `p/q` strings.
    pub phi: Vec<String>,
    pub phi_u: Vec<String>,
    pub phi_v: Vec<String>,
    pub phi_uv: Vec<String>,
    pub poles: Vec<Pole>,
    pub poles_simple: bool,
    pub cospectral: bool,
    pub parallel: bool,
    pub strong: bool,
    pub numeric: NumericVerdict,
}

#[derive(Debug, Serialize)]
pub struct Pole {
    pub factor: Vec<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct NumericVerdict {
    pub cospectral: bool,
    pub parallel: bool,
    pub strong: bool,
}

fn coeffs(p: &RationalPoly) -> Vec<String> {
    p.coefficient_strings()
}

impl ExactSection {
    pub fn new(c: &RationalCertificate, numeric: &PairClassification) -> Self {
        ExactSection {
            u: c.u,
            v: c.v,
            phi: coeffs(&c.phi),
            phi_u: coeffs(&c.phi_u),
            phi_v: coeffs(&c.phi_v),
            phi_uv: coeffs(&c.phi_uv),
            poles: c
                .pole_multiplicities
                .iter()
                .map(|(f, m)| Pole {
                    factor: coeffs(f),
                    multiplicity: *m,
                })
                .collect(),
            poles_simple: c.poles_simple,
            cospectral: c.cospectral,
            parallel: c.parallel,
            strong: c.strongly_cospectral,
            numeric: NumericVerdict {
                cospectral: numeric.cospectral,
                parallel: numeric.parallel,
                strong: numeric.strongly_cospectral,
            },
        }
    }
}
