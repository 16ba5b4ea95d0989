//! Acceptance criteria AC1–AC10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};

use cospec_core::constructions::{
    cartesian_product, cone_analysis, direct_product, product_index, product_preservation, JoinFactor, ProductKind,
};
use cospec_core::exact::{exact_classify, exact_matrix};
use cospec_core::partition::{amplitude_equality, quotient_matrix, quotient_strong_cospectrality, verify_partition};
use cospec_core::twins::{are_twins, find_twin_classes, twin_theta};
use cospec_core::{decompose_graph, parse_named, MatrixFamily, SpectralDecomposition, ToleranceConfig, WeightedGraph};

use common::*;

/// Collects failed expectations for one criterion.
#[derive(Default)]
struct Criterion {
    checks: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn named(spec: &str) -> WeightedGraph {
    parse_named(spec).unwrap()
}

fn dec(g: &WeightedGraph, fam: &MatrixFamily) -> SpectralDecomposition {
    decompose_graph(g, fam, tol()).unwrap()
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps
}

fn close_all(a: &[f64], b: &[f64], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| close(*x, *y, eps))
}

fn strong_set(d: &SpectralDecomposition) -> Vec<(usize, usize)> {
    d.all_strong_pairs().iter().map(|p| (p.u, p.v)).collect()
}

fn four_presets() -> [(&'static str, MatrixFamily); 4] {
    [
        ("A", MatrixFamily::adjacency()),
        ("L", MatrixFamily::laplacian()),
        ("Q", MatrixFamily::signless_laplacian()),
        ("normalized L", MatrixFamily::normalized_laplacian()),
    ]
}

fn ac1(c: &mut Criterion) {
    let d = dec(&named("C4w:1,3,1,3"), &MatrixFamily::adjacency());
    c.expect(close_all(d.eigenvalues(), &[-4.0, -2.0, 2.0, 4.0], 1e-9), || {
        format!("eigenvalues {:?}", d.eigenvalues())
    });
    let strong = strong_set(&d);
    c.expect(strong.len() == 6, || format!("strong pairs {strong:?}"));
    for (j, e) in d.projectors().iter().enumerate() {
        for u in 0..4 {
            for v in 0..4 {
                c.expect(close(e[(u, v)].norm(), 0.25, 1e-9), || {
                    format!("|E_{j}[{u},{v}]| = {}", e[(u, v)].norm())
                });
            }
        }
    }
}

fn ac2(c: &mut Criterion) {
    let g = named("Y:1,-1");
    let d = dec(&g, &MatrixFamily::adjacency());
    let s5 = 5f64.sqrt();
    c.expect(close_all(d.eigenvalues(), &[1.0 - s5, 0.0, 1.0 + s5], 1e-9), || {
        format!("eigenvalues {:?}", d.eigenvalues())
    });
    c.expect(d.multiplicities() == [1, 2, 1], || {
        format!("multiplicities {:?}", d.multiplicities())
    });
    let strong = strong_set(&d);
    c.expect(strong == [(0, 1), (2, 3)], || format!("strong pairs {strong:?}"));
    let uv = d.classify_pair(0, 1).unwrap();
    let plus = uv.sigma_plus.clone().unwrap_or_default();
    let minus = uv.sigma_minus.clone().unwrap_or_default();
    c.expect(plus.len() == 1 && minus.len() == 2, || {
        format!("sigma+ {plus:?}, sigma- {minus:?}")
    });
    c.expect(uv.support_u.len() == 3, || format!("support of u {:?}", uv.support_u));
    c.expect(are_twins(&g, 2, 3).unwrap(), || "a, b are not twins".into());
    c.expect(!are_twins(&g, 0, 1).unwrap(), || "u, v are twins".into());
}

fn ac3(c: &mut Criterion) {
    for omega in ["0", "1", "-2", "0.37"] {
        let g = named(&format!("P3_loop:{omega}"));
        let cls = find_twin_classes(&g)
            .into_iter()
            .find(|t| t.contains(0) && t.contains(2))
            .expect("end vertices are twins");
        for (name, fam) in four_presets() {
            let case = format!("{name}, omega = {omega}");
            let d = match decompose_graph(&g, &fam, tol()) {
                Ok(d) => d,
                Err(e) => {
                    c.fail(format!("{case}: {e}"));
                    continue;
                }
            };
            let p = d.classify_pair(0, 2).unwrap();
            c.expect(p.strongly_cospectral, || {
                format!("{case}: ends not strongly cospectral")
            });
            let theta = twin_theta(&g, &fam, &cls).unwrap();
            let minus: Vec<f64> = p.sigma_minus.iter().flatten().map(|&j| d.eigenvalues()[j]).collect();
            c.expect(minus.len() == 1 && close(minus[0], theta, 1e-9), || {
                format!("{case}: sigma- {minus:?}, theta {theta}")
            });
        }
    }
}

fn ac4(c: &mut Criterion) {
    for n in 3..=5 {
        let g = named(&format!("Kn:{n},0,1"));
        for (name, fam) in four_presets() {
            let d = dec(&g, &fam);
            let pairs = d.all_pairs();
            c.expect(pairs.iter().all(|p| !p.strongly_cospectral), || {
                format!("K{n}, {name}: strong pair found")
            });
            c.expect(pairs.iter().all(|p| p.cospectral), || {
                format!("K{n}, {name}: non-cospectral pair")
            });
            for u in 0..n {
                let s = d.eigenvalue_support(u).unwrap();
                c.expect(s.len() == 2, || format!("K{n}, {name}: |sigma_{u}| = {}", s.len()));
            }
        }
    }
}

/// Product pairs between corners of K2 □ P3, each expressed in the form the
/// product criterion accepts: (first factor, second factor, u, v, w, z).
fn corner_checks(fam: &MatrixFamily, c: &mut Criterion, label: &str) -> usize {
    let k2 = named("Kn:2");
    let p3 = named("Pn:3");
    let corners = [(0, 0), (0, 2), (1, 0), (1, 2)];
    let mut strong = 0;
    let product = cartesian_product(&k2, &p3).unwrap();
    let d = dec(&product, fam);
    for (i, &(x1, y1)) in corners.iter().enumerate() {
        for &(x2, y2) in &corners[i + 1..] {
            let a = product_index(x1, y1, 3);
            let b = product_index(x2, y2, 3);
            let direct = d.classify_pair(a, b).unwrap().strongly_cospectral;
            strong += usize::from(direct);
            // Same K2 coordinate: swap the factors so the differing coordinate comes first.
            let analysis = if x1 == x2 {
                product_preservation(&p3, &k2, ProductKind::Cartesian, fam, y1, y2, x1, None, tol())
            } else if y1 == y2 {
                product_preservation(&k2, &p3, ProductKind::Cartesian, fam, x1, x2, y1, None, tol())
            } else {
                product_preservation(&k2, &p3, ProductKind::Cartesian, fam, x1, x2, y1, Some(y2), tol())
            };
            match analysis {
                Ok(r) => c.expect(r.predicted == direct && r.direct == direct, || {
                    format!("{label}: ({a},{b}) predicted {} direct {direct}", r.predicted)
                }),
                Err(e) => c.fail(format!("{label}: ({a},{b}): {e}")),
            }
        }
    }
    strong
}

fn ac5(c: &mut Criterion) {
    let s = corner_checks(&MatrixFamily::adjacency(), c, "(0,0,1)");
    c.expect(s == 6, || format!("(0,0,1): {s} of 6 corner pairs strongly cospectral"));
    let product = cartesian_product(&named("Kn:2"), &named("Pn:3")).unwrap();
    let others = strong_set(&dec(&product, &MatrixFamily::adjacency()));
    c.expect(
        others
            .iter()
            .all(|&(a, b)| (a, b) == (1, 4) || ([a, b].iter().all(|x| [0, 2, 3, 5].contains(x)))),
        || format!("(0,0,1): unexpected strong pairs {others:?}"),
    );
    let fam = MatrixFamily::generalized(0, 8, 1).unwrap();
    let s = corner_checks(&fam, c, "(0,8,1)");
    c.expect(s == 0, || {
        format!("(0,8,1): {s} of 6 corner pairs strongly cospectral, expected none")
    });
}

fn ac6(c: &mut Criterion) {
    let fam = MatrixFamily::normalized(0, 1).unwrap();
    let (k2, k3) = (named("Kn:2"), named("Kn:3"));
    let d = dec(&direct_product(&k2, &k3).unwrap(), &fam);
    let mut spectrum: Vec<f64> = d
        .eigenvalues()
        .iter()
        .zip(d.multiplicities())
        .flat_map(|(&l, &m)| std::iter::repeat_n(l, m))
        .collect();
    spectrum.sort_by(f64::total_cmp);
    c.expect(close_all(&spectrum, &[-1.0, -0.5, -0.5, 0.5, 0.5, 1.0], 1e-9), || {
        format!("spectrum {spectrum:?}")
    });
    for z in 0..3 {
        match product_preservation(&k2, &k3, ProductKind::Direct, &fam, 0, 1, z, None, tol()) {
            Ok(r) => c.expect(r.direct && r.predicted, || {
                format!("((0,{z}),(1,{z})): predicted {} direct {}", r.predicted, r.direct)
            }),
            Err(e) => c.fail(format!("((0,{z}),(1,{z})): {e}")),
        }
    }
}

fn ac7(c: &mut Criterion) {
    let cases = [
        (
            "O2 v C4",
            JoinFactor::empty(2, 0),
            "Cn:4",
            MatrixFamily::adjacency(),
            true,
        ),
        (
            "K2 v C4",
            JoinFactor::complete(2, 0, 1),
            "Cn:4",
            MatrixFamily::adjacency(),
            true,
        ),
        (
            "K2 v K4",
            JoinFactor::complete(2, 0, 1),
            "Kn:4",
            MatrixFamily::adjacency(),
            false,
        ),
        (
            "O2 v P3",
            JoinFactor::empty(2, 0),
            "Pn:3",
            MatrixFamily::laplacian(),
            true,
        ),
        (
            "K2 v P3",
            JoinFactor::complete(2, 0, 1),
            "Pn:3",
            MatrixFamily::laplacian(),
            false,
        ),
    ];
    for (label, x, h, fam, expected) in cases {
        match cone_analysis(&x, &named(h), &fam, 1, tol()) {
            Ok(r) => {
                let apex = r.apex_verdict().unwrap();
                c.expect(apex.direct == expected, || format!("{label}: direct {}", apex.direct));
                c.expect(apex.predicted == Some(expected), || {
                    format!("{label}: predicted {:?} ({:?})", apex.predicted, apex.decided_by)
                });
            }
            Err(e) => c.fail(format!("{label}: {e}")),
        }
    }
}

fn ac8(c: &mut Criterion) {
    let g = cospec_core::constructions::join(&JoinFactor::empty(2, 0), &named("Cn:4"), 1).unwrap();
    let fam = MatrixFamily::adjacency();
    let part = verify_partition(&g, &[vec![0], vec![1], vec![2, 3, 4, 5]]).unwrap();
    let q = quotient_matrix(&g, &part, &fam).unwrap();
    c.expect(q.intertwining_residual <= 1e-10, || {
        format!("residual {}", q.intertwining_residual)
    });
    let expected = [[0.0, 0.0, 2.0], [0.0, 0.0, 2.0], [2.0, 2.0, 2.0]];
    for (i, row) in expected.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            c.expect(q.m[(i, j)] == x, || format!("M[{i},{j}] = {}", q.m[(i, j)]));
        }
    }
    match quotient_strong_cospectrality(&g, &fam, 0, 1, &part, tol()) {
        Ok((full, quot)) => c.expect(full == quot, || format!("graph {full}, quotient {quot}")),
        Err(e) => c.fail(e.to_string()),
    }
    let times = [0.1, 0.5, 1.0, 2.0, std::f64::consts::PI];
    let dev = amplitude_equality(&g, &fam, 0, 1, &part, &times, tol()).unwrap();
    c.expect(dev < 1e-8, || format!("amplitude deviation {dev}"));
}

fn exact_vs_float(c: &mut Criterion, g: &WeightedGraph, fam: &MatrixFamily, label: &str) {
    if g.n() < 2 {
        return;
    }
    let d = dec(g, fam);
    let m = exact_matrix(g, fam).unwrap();
    for (u, v) in pairs(g.n()) {
        let e = exact_classify(&m, u, v).unwrap();
        let f = d.classify_pair(u, v).unwrap();
        let ev = (e.cospectral, e.parallel, e.strongly_cospectral);
        let fv = (f.cospectral, f.parallel, f.strongly_cospectral);
        c.expect(ev == fv, || {
            format!("{label} pair ({u},{v}): exact {ev:?}, float {fv:?}")
        });
    }
}

fn ac9(c: &mut Criterion) {
    for (i, g) in enumerated_corpus(6).iter().enumerate() {
        for (name, fam) in presets_alq() {
            exact_vs_float(c, g, &fam, &format!("enumerated #{i} {name}"));
        }
    }
    for (i, g) in random_rational_graphs(200, 2024).iter().enumerate() {
        for (name, fam) in presets_alq() {
            exact_vs_float(c, g, &fam, &format!("random #{i} {name}"));
        }
    }
}

fn ac10(c: &mut Criterion) {
    let mut graphs = enumerated_corpus(6);
    graphs.retain(|g| g.n() >= 2);
    let random = random_rational_graphs(200, 99);
    let all: Vec<(&WeightedGraph, bool)> = graphs
        .iter()
        .map(|g| (g, true))
        .chain(random.iter().map(|g| (g, false)))
        .collect();
    for (gi, &(g, simple)) in all.iter().enumerate() {
        let mut fams: Vec<(&str, MatrixFamily)> = presets_alq().into_iter().collect();
        if simple {
            fams.push(("normalized L", MatrixFamily::normalized_laplacian()));
        }
        fams.push((
            "gen(1/2,-2,3)",
            MatrixFamily::generalized(cospec_core::Scalar::from_ratio(1, 2), -2, 3).unwrap(),
        ));
        let classes = find_twin_classes(g);
        for (name, fam) in &fams {
            let label = format!("graph #{gi} {name}");
            let d = dec(g, fam);
            let r = d.projector_residuals();
            c.expect(
                r.sum_to_identity < 1e-9 && r.idempotence < 1e-9 && r.eigen_equation < 1e-8,
                || format!("{label}: projector residuals {r:?}"),
            );
            for u in 0..g.n() {
                let s = d.eigenvalue_support(u).unwrap().len();
                c.expect(s >= 2, || format!("{label}: |sigma_{u}| = {s}"));
            }
            let pairs_all = d.all_pairs();
            for p in &pairs_all {
                if p.strongly_cospectral && g.n() >= 3 {
                    c.expect(p.support_u.len() >= 3, || {
                        format!(
                            "{label}: strong ({},{}) with |sigma_u| = {}",
                            p.u,
                            p.v,
                            p.support_u.len()
                        )
                    });
                }
                if p.cospectral {
                    degree_identities(c, g, fam, p.u, p.v, &label);
                }
            }
            for cls in &classes {
                for (i, &u) in cls.vertices.iter().enumerate() {
                    for &v in &cls.vertices[i + 1..] {
                        c.expect(d.classify_pair(u, v).unwrap().cospectral, || {
                            format!("{label}: twins ({u},{v}) not cospectral")
                        });
                    }
                }
                if cls.len() >= 3 {
                    c.expect(
                        pairs_all
                            .iter()
                            .all(|p| !(p.strongly_cospectral && (cls.contains(p.u) || cls.contains(p.v)))),
                        || format!("{label}: class {:?} touches a strong pair", cls.vertices),
                    );
                }
            }
        }
        if simple && cospec_core::constructions::bipartition(g).is_some() {
            let l = dec(g, &MatrixFamily::laplacian()).all_pairs();
            let q = dec(g, &MatrixFamily::signless_laplacian()).all_pairs();
            for (a, b) in l.iter().zip(&q) {
                c.expect(a.strongly_cospectral == b.strongly_cospectral, || {
                    format!("graph #{gi}: L and Q disagree on ({},{})", a.u, a.v)
                });
            }
        }
    }
}

fn degree_identities(c: &mut Criterion, g: &WeightedGraph, fam: &MatrixFamily, u: usize, v: usize, label: &str) {
    let deg = g.degrees();
    let a = |i: usize, j: usize| g.weight(i, j);
    let scale = 1.0 + g.max_abs_weight() * g.n() as f64;
    match fam {
        MatrixFamily::GeneralizedAdjacency { beta, gamma, .. } => {
            let (b, gm) = (beta.value(), gamma.value());
            let lhs = b * deg[u] + gm * a(u, u);
            let rhs = b * deg[v] + gm * a(v, v);
            c.expect(close(lhs, rhs, 1e-7 * scale), || {
                format!("{label}: ({u},{v}) diagonal identity {lhs} vs {rhs}")
            });
        }
        MatrixFamily::GeneralizedNormalized { .. } => {
            let lhs = deg[v] * a(u, u);
            let rhs = deg[u] * a(v, v);
            c.expect(close(lhs, rhs, 1e-7 * scale), || {
                format!("{label}: ({u},{v}) loop identity {lhs} vs {rhs}")
            });
            let side = |x: usize, other: usize| -> f64 {
                g.neighbors(x)
                    .into_iter()
                    .filter(|&j| j != x)
                    .map(|j| a(j, x).powi(2) * deg[other] / deg[j])
                    .sum()
            };
            let (l, r) = (side(u, v), side(v, u));
            c.expect(close(l, r, 1e-7 * scale * scale), || {
                format!("{label}: ({u},{v}) neighbor identity {l} vs {r}")
            });
        }
    }
}

type Entry = (&'static str, &'static str, fn(&mut Criterion));

fn main() {
    let criteria: [Entry; 10] = [
        (
            "AC1",
            "weighted 4-cycle: simple spectrum, all pairs strong, flat projectors",
            ac1,
        ),
        ("AC2", "Y(1,-1): spectrum, strong pairs, sign split, twins", ac2),
        (
            "AC3",
            "P3 with a middle loop: ends strong under A, L, Q, normalized L",
            ac3,
        ),
        (
            "AC4",
            "complete graphs: cospectral, never strong, two-point supports",
            ac4,
        ),
        ("AC5", "K2 x P3 corners under (0,0,1) and (0,8,1)", ac5),
        ("AC6", "direct product K2 x K3 under the normalized family", ac6),
        ("AC7", "double cone closed forms against direct classification", ac7),
        ("AC8", "quotient of O2 v C4: intertwining, verdicts, amplitudes", ac8),
        ("AC9", "exact certificates against floating point over the corpus", ac9),
        ("AC10", "property sweeps over the corpus", ac10),
    ];
    let mut red = 0;
    for (id, title, f) in criteria {
        let mut c = Criterion::default();
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut c)));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Err(_) => {
                red += 1;
                println!("{id} FAIL  {title}: panicked");
            }
            Ok(()) if c.failures.is_empty() => {
                println!("{id} PASS  {title} ({} checks, {secs:.1}s)", c.checks);
            }
            Ok(()) => {
                red += 1;
                let shown: Vec<&str> = c.failures.iter().take(3).map(String::as_str).collect();
                println!(
                    "{id} FAIL  {title}: {} of {} checks failed; {}",
                    c.failures.len(),
                    c.checks,
                    shown.join("; ")
                );
            }
        }
    }
    if red > 0 {
        println!("{red} criteria failed");
        std::process::exit(1);
    }
}
