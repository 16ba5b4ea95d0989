mod common;

use proptest::prelude::*;

use cospec_core::partition::{
    amplitude_equality, coarsest_equitable_refinement, quotient_matrix, quotient_strong_cospectrality,
    twin_quotient_eigvec, PartitionKind,
};
use cospec_core::twins::{are_twins, find_twin_classes, twin_involution, twin_theta, TwinClass};
use cospec_core::{decompose_graph, MatrixFamily, Scalar, SpectralDecomposition, ToleranceConfig, WeightedGraph};

use common::strategies;

/// `g` with `copies` new vertices, each a twin of `u` joined to `u` and to
/// each other by `eta`.
fn plant_twins(g: &WeightedGraph, u: usize, copies: usize, eta: &Scalar) -> WeightedGraph {
    let n = g.n();
    let mut b = WeightedGraph::builder(n + copies);
    for (i, j, w) in g.entries() {
        b = if i == j {
            b.loop_at(i, w.clone())
        } else {
            b.edge(i, j, w.clone())
        };
    }
    let class: Vec<usize> = std::iter::once(u).chain(n..n + copies).collect();
    for &c in &class[1..] {
        for x in 0..n {
            if x == u {
                continue;
            }
            if let Some(w) = g.weight_scalar(u, x) {
                b = b.edge(c, x, w.clone());
            }
        }
        if let Some(w) = g.weight_scalar(u, u) {
            b = b.loop_at(c, w.clone());
        }
    }
    for (k, &a) in class.iter().enumerate() {
        for &c in &class[k + 1..] {
            b = b.maybe(a, c, eta.clone());
        }
    }
    b.build().unwrap()
}

fn planted(
    max_n: usize,
    weighted: bool,
    copies: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (WeightedGraph, usize)> {
    let eta = if weighted {
        strategies::param().boxed()
    } else {
        prop_oneof![Just(Scalar::from(0)), Just(Scalar::from(1))].boxed()
    };
    (
        strategies::graph(max_n, weighted, weighted),
        any::<proptest::sample::Index>(),
        copies,
        eta,
    )
        .prop_map(|(g, i, k, eta)| {
            let u = i.index(g.n());
            (plant_twins(&g, u, k, &eta), u)
        })
}

fn dec(g: &WeightedGraph, fam: &MatrixFamily) -> SpectralDecomposition {
    decompose_graph(g, fam, ToleranceConfig::default()).unwrap()
}

fn class_of(g: &WeightedGraph, u: usize) -> TwinClass {
    find_twin_classes(g).into_iter().find(|c| c.contains(u)).unwrap()
}

/// Cells `{u}`, `{v}`, then the rest grouped by loop weight, refined to the
/// coarsest equitable partition.
fn twin_partition(g: &WeightedGraph, u: usize, v: usize) -> cospec_core::partition::VertexPartition {
    let mut cells = vec![vec![u], vec![v]];
    let mut rest: Vec<(f64, Vec<usize>)> = Vec::new();
    for x in (0..g.n()).filter(|&x| x != u && x != v) {
        let l = g.loop_weight(x);
        match rest.iter_mut().find(|(w, _)| *w == l) {
            Some((_, c)) => c.push(x),
            None => rest.push((l, vec![x])),
        }
    }
    cells.extend(rest.into_iter().map(|(_, c)| c));
    coarsest_equitable_refinement(g, Some(&cells)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planted_twins_are_found((g, u) in planted(6, true, 1..=2)) {
        let cls = class_of(&g, u);
        for c in g.n() - (cls.len() - 1)..g.n() {
            prop_assert!(cls.contains(c));
        }
        for &v in &cls.vertices {
            if v != u {
                prop_assert!(are_twins(&g, u, v).unwrap());
                prop_assert!((g.degree(u).unwrap() - g.degree(v).unwrap()).abs() < 1e-12);
                let p = twin_involution(&g, u, v).unwrap();
                prop_assert_eq!(g.permuted(&p).unwrap(), g.clone());
            }
        }
    }

    #[test]
    fn twins_are_cospectral((g, u) in planted(6, true, 1..=2), fam in strategies::family()) {
        let d = dec(&g, &fam);
        let cls = class_of(&g, u);
        let theta = twin_theta(&g, &fam, &cls).unwrap();
        let scale = d.eigenvalues().iter().fold(1.0_f64, |a, l| a.max(l.abs()));
        let j = d.index_of(theta, 1e-8 * scale).unwrap();
        for &v in cls.vertices.iter().filter(|&&v| v != u) {
            let p = d.classify_pair(u, v).unwrap();
            prop_assert!(p.cospectral);
            prop_assert!(p.support_u.contains(&j));
        }
    }

    #[test]
    fn twins_are_cospectral_for_the_normalized_laplacian((g, u) in planted(6, false, 1..=2)) {
        let fam = MatrixFamily::normalized_laplacian();
        let d = dec(&g, &fam);
        let cls = class_of(&g, u);
        twin_theta(&g, &fam, &cls).unwrap();
        for &v in cls.vertices.iter().filter(|&&v| v != u) {
            prop_assert!(d.classify_pair(u, v).unwrap().cospectral);
        }
    }

    #[test]
    fn strong_twins_have_theta_as_the_only_minus_eigenvalue((g, u) in planted(6, true, 1..=1), fam in strategies::family()) {
        let d = dec(&g, &fam);
        let v = g.n() - 1;
        let theta = twin_theta(&g, &fam, &class_of(&g, u)).unwrap();
        let scale = d.eigenvalues().iter().fold(1.0_f64, |a, l| a.max(l.abs()));
        let j = d.index_of(theta, 1e-8 * scale).unwrap();
        let p = d.classify_pair(u, v).unwrap();
        if p.strongly_cospectral {
            prop_assert_eq!(p.sigma_minus.clone().unwrap(), vec![j]);
            let rest: Vec<usize> = p.support_u.iter().copied().filter(|&k| k != j).collect();
            prop_assert_eq!(p.sigma_plus.clone().unwrap(), rest);
        }
        if d.multiplicities()[j] == 1 {
            prop_assert!(p.strongly_cospectral);
            let e = &d.projectors()[j];
            for a in 0..g.n() {
                for b in 0..g.n() {
                    let sign = |x: usize| if x == u { 1.0 } else if x == v { -1.0 } else { 0.0 };
                    prop_assert!((e[(a, b)].re - 0.5 * sign(a) * sign(b)).abs() < 1e-9 && e[(a, b)].im.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn three_mutual_twins_exclude_strong_cospectrality((g, u) in planted(6, true, 2..=3), fam in strategies::family()) {
        let d = dec(&g, &fam);
        for &v in &class_of(&g, u).vertices {
            for w in 0..g.n() {
                if w != v {
                    prop_assert!(!d.classify_pair(v.min(w), v.max(w)).unwrap().strongly_cospectral, "({},{})", v, w);
                }
            }
        }
    }

    #[test]
    fn equitable_cell_sums_balance(g in strategies::graph(8, true, true)) {
        let p = coarsest_equitable_refinement(&g, None).unwrap();
        prop_assert_eq!(p.kind(), PartitionKind::Equitable);
        let cells = p.cells();
        for j in 0..cells.len() {
            for l in 0..cells.len() {
                let a = cells[j].len() as f64 * p.d(j, l).unwrap();
                let b = cells[l].len() as f64 * p.d(l, j).unwrap();
                prop_assert!((a - b).abs() < 1e-9 * g.max_abs_weight() * g.n() as f64);
            }
        }
    }

    #[test]
    fn twin_partitions_carry_theta((g, u) in planted(6, true, 1..=1), fam in strategies::family()) {
        let v = g.n() - 1;
        let p = twin_partition(&g, u, v);
        prop_assert!(twin_quotient_eigvec(&g, &fam, u, v, &p).unwrap());
        let r = quotient_matrix(&g, &p, &fam).unwrap();
        prop_assert!(r.intertwining_residual < 1e-9 * g.max_abs_weight().max(1.0) * g.n() as f64);
        let (full, quot) = quotient_strong_cospectrality(&g, &fam, u, v, &p, ToleranceConfig::default()).unwrap();
        prop_assert_eq!(full, quot);
        let times: Vec<f64> = (0..8).map(|k| 0.37 * k as f64).collect();
        let worst = amplitude_equality(&g, &fam, u, v, &p, &times, ToleranceConfig::default()).unwrap();
        prop_assert!(worst < 1e-8, "{}", worst);
    }
}
