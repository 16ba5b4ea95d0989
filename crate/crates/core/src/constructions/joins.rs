//! Joins `X ∨ H` of a weighted complete or empty graph `X` with a graph `H`,
//! and the closed-form strong cospectrality conditions for cones and double
//! cones. `X` takes vertices `0..n`, `H` follows.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::MatrixFamily;
use crate::named::{complete_weighted, empty_weighted};
use crate::partition::{quotient_matrix, verify_partition};
use crate::scalar::Scalar;
use crate::spectral::{decompose_graph, ToleranceConfig};

/// 𝐊_n(ω, η) or 𝐎_n(ω).
#[derive(Debug, Clone, PartialEq)]
pub enum JoinFactor {
    Complete { n: usize, omega: Scalar, eta: Scalar },
    Empty { n: usize, omega: Scalar },
}

impl JoinFactor {
    pub fn complete(n: usize, omega: impl Into<Scalar>, eta: impl Into<Scalar>) -> Self {
        JoinFactor::Complete {
            n,
            omega: omega.into(),
            eta: eta.into(),
        }
    }

    pub fn empty(n: usize, omega: impl Into<Scalar>) -> Self {
        JoinFactor::Empty { n, omega: omega.into() }
    }

    /// Parses `Kn:n,ω,η`, `Kn:n`, `On:n,ω` or `On:n`.
    pub fn parse(text: &str) -> Result<Self> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let params = rest
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Scalar>().map_err(|e| Error::InvalidParameter(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let n = params
            .first()
            .and_then(Scalar::to_usize)
            .ok_or_else(|| Error::InvalidParameter(format!("`{text}` needs a vertex count")))?;
        match (name.trim(), params.len()) {
            ("Kn", 1) => Ok(Self::complete(n, 0, 1)),
            ("Kn", 3) => Ok(Self::complete(n, params[1].clone(), params[2].clone())),
            ("On", 1) => Ok(Self::empty(n, 0)),
            ("On", 2) => Ok(Self::empty(n, params[1].clone())),
            ("Kn" | "On", got) => Err(Error::Arity {
                name: name.to_string(),
                expected: if name == "Kn" { "1 or 3" } else { "1 or 2" },
                got,
            }),
            _ => Err(Error::UnknownGraph(name.to_string())),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            JoinFactor::Complete { n, .. } | JoinFactor::Empty { n, .. } => *n,
        }
    }

    pub fn omega(&self) -> &Scalar {
        match self {
            JoinFactor::Complete { omega, .. } | JoinFactor::Empty { omega, .. } => omega,
        }
    }

    /// Edge weight inside `X`; 0 for 𝐎_n and for a single vertex.
    pub fn eta(&self) -> Scalar {
        match self {
            JoinFactor::Complete { n, eta, .. } if *n >= 2 => eta.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn graph(&self) -> Result<WeightedGraph> {
        match self {
            JoinFactor::Complete { n, omega, eta } => complete_weighted(*n, omega.clone(), eta.clone()),
            JoinFactor::Empty { n, omega } => empty_weighted(*n, omega.clone()),
        }
    }
}

/// Disjoint union of `x` and `h` plus an edge of weight δ from every vertex of
/// `x` to every vertex of `h`.
pub fn join_graphs(x: &WeightedGraph, h: &WeightedGraph, delta: impl Into<Scalar>) -> Result<WeightedGraph> {
    let delta = delta.into();
    if delta.is_zero() {
        return Err(Error::InvalidParameter("join weight must be nonzero".into()));
    }
    let n = x.n();
    let mut b = WeightedGraph::builder(n + h.n());
    for (p, q, w) in x.entries() {
        b = b.maybe(p, q, w.clone());
    }
    for (p, q, w) in h.entries() {
        b = b.maybe(n + p, n + q, w.clone());
    }
    for p in 0..n {
        for q in 0..h.n() {
            b = b.edge(p, n + q, delta.clone());
        }
    }
    b.build()
}

pub fn join(x: &JoinFactor, h: &WeightedGraph, delta: impl Into<Scalar>) -> Result<WeightedGraph> {
    join_graphs(&x.graph()?, h, delta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: &'static str,
    /// The pair the condition was evaluated for, when it is pair specific.
    pub pair: Option<(usize, usize)>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub u: usize,
    pub v: usize,
    /// Closed-form prediction, when some applicable condition decides the pair.
    pub predicted: Option<bool>,
    pub decided_by: Option<&'static str>,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    pub n_apexes: usize,
    pub checks: Vec<ConditionCheck>,
    pub pairs: Vec<PairVerdict>,
}

impl ConeReport {
    /// Verdict on the apex pair of a double cone.
    pub fn apex_verdict(&self) -> Option<&PairVerdict> {
        self.pairs.iter().find(|p| (p.u, p.v) == (0, 1))
    }
}

type Q = BigRational;

fn q(s: &Scalar) -> Result<Q> {
    s.to_rational()
        .ok_or_else(|| Error::InvalidParameter(format!("`{s}` is not a finite number")))
}

fn qi(x: usize) -> Q {
    Q::from_integer(x.into())
}

fn all_equal(xs: &[Q]) -> bool {
    xs.iter().all(|x| x == &xs[0])
}

fn mean(xs: &[Q]) -> Q {
    xs.iter().fold(Q::zero(), |a, x| a + x) / qi(xs.len())
}

/// Collects predictions and fails on conflicting ones.
struct Predictions {
    checks: Vec<ConditionCheck>,
    verdict: Option<(bool, &'static str)>,
}

impl Predictions {
    fn new() -> Self {
        Predictions {
            checks: Vec::new(),
            verdict: None,
        }
    }

    fn skip(&mut self, name: &'static str, pair: Option<(usize, usize)>, why: &str) {
        self.checks.push(ConditionCheck {
            name,
            pair,
            outcome: Outcome::NotApplicable(why.to_string()),
        });
    }

    /// Records a condition; `predicts` is the verdict it implies, if any.
    fn record(
        &mut self,
        name: &'static str,
        pair: Option<(usize, usize)>,
        holds: bool,
        predicts: Option<bool>,
    ) -> Result<()> {
        self.checks.push(ConditionCheck {
            name,
            pair,
            outcome: if holds { Outcome::Holds } else { Outcome::Violated },
        });
        if let Some(p) = predicts {
            match self.verdict {
                Some((q, by)) if q != p => {
                    return Err(Error::CrossCheck(format!(
                        "condition {name} predicts {p} but {by} predicts {q}"
                    )))
                }
                Some(_) => {}
                None => self.verdict = Some((p, name)),
            }
        }
        Ok(())
    }
}

/// Evaluates the closed-form conditions for `X ∨ H` and compares them with a
/// direct classification of the assembled join.
pub fn cone_analysis(
    x: &JoinFactor,
    h: &WeightedGraph,
    fam: &MatrixFamily,
    delta: impl Into<Scalar>,
    tol: ToleranceConfig,
) -> Result<ConeReport> {
    let delta = delta.into();
    let n = x.n();
    if n == 0 {
        return Err(Error::InvalidParameter("join factor needs at least one vertex".into()));
    }
    let g = join(x, h, delta.clone())?;
    let dec = decompose_graph(&g, fam, tol)?;
    let total = g.n();
    let mut checks = Vec::new();
    let mut pairs = Vec::new();

    let finish = |u: usize, v: usize, pred: Option<(bool, &'static str)>, pairs: &mut Vec<PairVerdict>| -> Result<()> {
        let direct = dec.classify_pair(u, v)?.strongly_cospectral;
        if let Some((p, by)) = pred {
            if p != direct {
                return Err(Error::CrossCheck(format!(
                    "{by} predicts {p} for ({u},{v}) but direct classification gives {direct}"
                )));
            }
        }
        pairs.push(PairVerdict {
            u,
            v,
            predicted: pred.map(|p| p.0),
            decided_by: pred.map(|p| p.1),
            direct,
        });
        Ok(())
    };

    if n >= 3 {
        checks.push(ConditionCheck {
            name: "three_or_more_twin_apexes",
            pair: None,
            outcome: Outcome::Holds,
        });
        for a in 0..n {
            for w in a + 1..total {
                finish(a, w, Some((false, "three_or_more_twin_apexes")), &mut pairs)?;
            }
        }
        return Ok(ConeReport {
            n_apexes: n,
            checks,
            pairs,
        });
    }

    let MatrixFamily::GeneralizedAdjacency { alpha, beta, gamma } = fam else {
        checks.push(ConditionCheck {
            name: "closed_forms",
            pair: None,
            outcome: Outcome::NotApplicable("closed forms cover generalized adjacency matrices".into()),
        });
        let apex_pairs: Vec<(usize, usize)> = if n == 1 {
            (1..total).map(|v| (0, v)).collect()
        } else {
            vec![(0, 1)]
        };
        for (u, v) in apex_pairs {
            finish(u, v, None, &mut pairs)?;
        }
        return Ok(ConeReport {
            n_apexes: n,
            checks,
            pairs,
        });
    };
    let (a, b, c) = (q(alpha)?, q(beta)?, q(gamma)?);
    let (omega, eta, d) = (q(x.omega())?, q(&x.eta())?, q(&delta)?);
    let m = h.n();
    let loops: Vec<Q> = (0..m).map(|w| h.exact_weight(w, w)).collect();
    let row_sums: Vec<Q> = (0..m)
        .map(|w| (0..m).fold(Q::zero(), |s, t| s + h.exact_weight(w, t)))
        .collect();
    let h_degrees = h.exact_degrees();
    let h_simple_unweighted = h.is_simple() && h.is_unweighted();
    let join_simple = omega.is_zero() && h.is_simple();
    let join_simple_unweighted = join_simple && h_simple_unweighted && d.is_one() && (eta.is_zero() || eta.is_one());

    if n == 1 {
        let g_deg = g.exact_degrees();
        let diag = |w: usize| &a + &b * &g_deg[w] + &c * g.exact_weight(w, w);
        let h_regular = all_equal(&h_degrees);
        for v in 1..total {
            let pair = Some((0, v));
            let mut p = Predictions::new();
            let trace_equal = diag(0) == diag(v);
            p.record("trace_equality", pair, trace_equal, (!trace_equal).then_some(false))?;
            if h_regular {
                // β[d + δ(1 − m)] − 2β(A)_uu + γ((A)_vv − (A)_uu) = 0
                let hd = &h_degrees[0];
                let expr = &b * (hd + &d * (Q::one() - qi(m))) - qi(2) * &b * &omega + &c * (&loops[v - 1] - &omega);
                let holds = expr.is_zero();
                if holds != trace_equal {
                    return Err(Error::CrossCheck(format!(
                        "regular cone trace condition disagrees with the trace comparison for (0,{v})"
                    )));
                }
                p.record("regular_cone_trace", pair, holds, (!holds).then_some(false))?;
                if join_simple && !b.is_zero() {
                    let fails = hd != &(&d * qi(m - 1));
                    p.record("cone_beta_nonzero", pair, fails, fails.then_some(false))?;
                } else {
                    p.skip("cone_beta_nonzero", pair, "needs a simple join and beta != 0");
                }
                if join_simple_unweighted && b.is_zero() {
                    // Degrees of (X ∨ H) \ v against δ(m − 1).
                    let target = qi(m - 1);
                    let off = (1..total)
                        .filter(|&w| w != v)
                        .any(|w| g_deg[w].clone() - g.exact_weight(w, v) != target);
                    p.record("cone_beta_zero", pair, off, off.then_some(false))?;
                } else {
                    p.skip("cone_beta_zero", pair, "needs a simple unweighted join and beta = 0");
                }
                if join_simple_unweighted {
                    p.record("simple_unweighted_cone", pair, true, Some(false))?;
                } else {
                    p.skip("simple_unweighted_cone", pair, "needs a simple unweighted join");
                }
            } else {
                for name in [
                    "regular_cone_trace",
                    "cone_beta_nonzero",
                    "cone_beta_zero",
                    "simple_unweighted_cone",
                ] {
                    p.skip(name, pair, "needs a regular H");
                }
            }
            checks.extend(p.checks);
            finish(0, v, p.verdict, &mut pairs)?;
        }
        return Ok(ConeReport {
            n_apexes: 1,
            checks,
            pairs,
        });
    }

    // Double cone.
    let pair = Some((0, 1));
    let mut p = Predictions::new();
    let laplacian_like = b == -c.clone();
    let r_constant = all_equal(&row_sums);
    let loops_ok = b.is_zero() || all_equal(&loops);
    let avg_loop = mean(&loops);
    let r = if r_constant {
        row_sums[0].clone()
    } else {
        mean(&row_sums)
    };
    let mq = qi(m);
    let quotient_ok = (r_constant || laplacian_like) && loops_ok;
    if quotient_ok {
        let deg_apex = qi(2) * &omega + &eta + &mq * &d;
        let m11 = &a + &b * deg_apex + &c * &omega;
        let m12 = &c * &eta;
        let m13_sq = &c * &c * &d * &d * &mq;
        let m33 = &a + (&b + &c) * &r + &b * (qi(2) * &d + &avg_loop);
        let holds = m13_sq == &m12 * (&m12 - &m11 + &m33);
        let cells = vec![vec![0], vec![1], (2..total).collect::<Vec<_>>()];
        let report = quotient_matrix(&g, &verify_partition(&g, &cells)?, fam)
            .map_err(|e| Error::CrossCheck(format!("double cone quotient: {e}")))?;
        let to_f = |x: &Q| crate::scalar::rational_to_f64(x);
        let qm = &report.m;
        let scale = qm.iter().fold(1.0_f64, |s, x| s.max(x.abs()));
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * scale;
        if !(close(qm[(0, 0)], to_f(&m11))
            && close(qm[(0, 1)], to_f(&m12))
            && close(qm[(0, 2)] * qm[(0, 2)], to_f(&m13_sq))
            && close(qm[(2, 2)], to_f(&m33)))
        {
            return Err(Error::CrossCheck(
                "double cone quotient entries differ from the closed form".into(),
            ));
        }
        p.record("quotient_condition", pair, holds, Some(!holds))?;
        if eta.is_zero() {
            p.record("false_twin_apexes", pair, true, Some(true))?;
        } else {
            p.skip("false_twin_apexes", pair, "apexes are adjacent");
        }
    } else {
        p.skip(
            "quotient_condition",
            pair,
            "needs constant H row sums or beta = -gamma, and equal H loops when beta != 0",
        );
        p.skip("false_twin_apexes", pair, "quotient condition not applicable");
    }
    if r_constant && loops_ok {
        let expr = &eta
            * ((&b + &c) * (&omega - &r) + &b * (&eta + (&mq - qi(2)) * &d + &omega - &avg_loop) - &c * &eta)
            + &c * &d * &d * &mq;
        let holds = expr.is_zero();
        p.record("equitable_double_cone", pair, holds, Some(!holds))?;
    } else {
        p.skip("equitable_double_cone", pair, "needs constant H row sums");
    }
    if r_constant && loops_ok && !eta.is_zero() && join_simple {
        let expr = -(&r * (&b + &c)) + &b * (&eta + (&mq - qi(2)) * &d) + &c * (&d * &d * &mq / &eta - &eta);
        let holds = expr.is_zero();
        p.record("simple_double_cone", pair, holds, Some(!holds))?;
    } else {
        p.skip(
            "simple_double_cone",
            pair,
            "needs adjacent apexes, a simple join and constant H row sums",
        );
    }
    if laplacian_like && loops_ok {
        let expr = &eta * (qi(2) * &eta + (&mq - qi(2)) * &d + &omega - &avg_loop) - &d * &d * &mq;
        let holds = expr.is_zero();
        p.record("laplacian_double_cone", pair, holds, Some(!holds))?;
        if join_simple {
            let factored = (qi(2) * &eta + &mq * &d) * (&eta - &d);
            let holds_f = factored.is_zero();
            if holds_f != holds {
                return Err(Error::CrossCheck(
                    "factored Laplacian double cone condition disagrees".into(),
                ));
            }
            p.record("simple_laplacian_double_cone", pair, holds_f, Some(!holds_f))?;
        } else {
            p.skip("simple_laplacian_double_cone", pair, "needs a simple join");
        }
    } else {
        p.skip("laplacian_double_cone", pair, "needs beta = -gamma");
        p.skip("simple_laplacian_double_cone", pair, "needs beta = -gamma");
    }
    if join_simple_unweighted {
        let h_regular = all_equal(&h_degrees);
        if eta.is_zero() {
            p.record("simple_unweighted_double_cone", pair, true, Some(true))?;
        } else if laplacian_like {
            p.record("simple_unweighted_double_cone", pair, true, Some(false))?;
        } else if h_regular {
            let complete = h_degrees[0] == qi(m - 1);
            p.record("simple_unweighted_double_cone", pair, !complete, Some(!complete))?;
        } else {
            p.skip(
                "simple_unweighted_double_cone",
                pair,
                "connected apexes need a regular H",
            );
        }
    } else {
        p.skip("simple_unweighted_double_cone", pair, "needs a simple unweighted join");
    }
    checks.extend(p.checks);
    finish(0, 1, p.verdict, &mut pairs)?;
    Ok(ConeReport {
        n_apexes: 2,
        checks,
        pairs,
    })
}
