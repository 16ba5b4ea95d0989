mod common;

use proptest::prelude::*;

use cospec_core::named::NAMED_GRAPHS;
use cospec_core::twins::find_twin_classes;
use cospec_core::{build_matrix, parse_named, validate, MatrixFamily, WeightedGraph};

use common::strategies;

#[test]
fn named_graphs_are_valid_and_connected() {
    let specs = [
        "Pn:2",
        "Pn:5",
        "Cn:3",
        "Cn:6",
        "Kn:4",
        "Kn:3,1/2,-2",
        "On:1,3",
        "Kn_minus_e:5",
        "Y:1,-1",
        "Y:2,3",
        "C4w:1,3,1,3",
        "C3w:1,2,3,4",
        "T11",
        "P3_loop:0.37",
        "twin_tree",
    ];
    for (name, _) in NAMED_GRAPHS {
        assert!(
            specs.iter().any(|s| s.split(':').next() == Some(name)),
            "{name} not covered"
        );
    }
    for s in specs {
        let g = parse_named(s).unwrap();
        let v = validate(&g);
        assert!(v.is_valid(), "{s}: {:?}", v.findings());
        assert!(v.is_connected(), "{s}");
    }
}

#[test]
fn complete_minus_edge_twins() {
    for n in 4..=8 {
        let classes = find_twin_classes(&parse_named(&format!("Kn_minus_e:{n}")).unwrap());
        assert_eq!(classes.len(), 2, "n = {n}");
        assert_eq!(classes[0].vertices, vec![0, 1]);
        assert!(!classes[0].is_true_twins());
        assert_eq!(classes[1].vertices, (2..n).collect::<Vec<_>>());
        assert!(classes[1].is_true_twins());
    }
}

fn ones_product(g: &WeightedGraph, fam: &MatrixFamily) -> Vec<f64> {
    let m = build_matrix(g, fam).unwrap();
    (0..g.n()).map(|i| (0..g.n()).map(|j| m.get(i, j).re).sum()).collect()
}

fn textbook(g: &WeightedGraph, preset: &str) -> Vec<Vec<f64>> {
    let n = g.n();
    let deg = g.degrees();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = g.weight(i, j);
                    let d = if i == j { deg[i] } else { 0.0 };
                    match preset {
                        "A" => a,
                        "L" => d - a,
                        "Q" => d + a,
                        _ => {
                            if i == j {
                                1.0
                            } else {
                                -a / (deg[i] * deg[j]).sqrt()
                            }
                        }
                    }
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_sum_counts_stored_weights_twice(g in strategies::graph(7, true, true)) {
        let stored: f64 = g.entries().map(|(_, _, w)| w.value()).sum();
        let total: f64 = g.degrees().iter().sum();
        prop_assert!((total - 2.0 * stored).abs() < 1e-9);
    }

    #[test]
    fn matrices_are_hermitian_bit_for_bit(g in strategies::graph(7, true, true), fam in strategies::family()) {
        let m = build_matrix(&g, &fam).unwrap();
        for i in 0..g.n() {
            for j in 0..g.n() {
                prop_assert_eq!(m.get(i, j), m.get(j, i).conj());
            }
        }
    }

    #[test]
    fn normalized_matrices_are_hermitian(g in strategies::graph(7, false, false), a in strategies::param(), c in strategies::nonzero_param()) {
        let m = build_matrix(&g, &MatrixFamily::normalized(a, c).unwrap()).unwrap();
        for i in 0..g.n() {
            for j in 0..g.n() {
                prop_assert_eq!(m.get(i, j), m.get(j, i).conj());
            }
        }
    }

    #[test]
    fn laplacian_like_families_fix_the_ones_vector(
        g in strategies::graph(7, true, false),
        a in strategies::param(),
        c in strategies::nonzero_param(),
    ) {
        let fam = MatrixFamily::generalized(a.clone(), c.neg(), c).unwrap();
        for x in ones_product(&g, &fam) {
            prop_assert!((x - a.value()).abs() < 1e-9);
        }
    }

    // Loops count twice in the degree but once in the row sum, so only
    // loopless regular graphs have 1 as an eigenvector.
    #[test]
    fn regular_graphs_have_the_ones_eigenvector(
        n in 3usize..8,
        complete in any::<bool>(),
        a in strategies::param(),
        b in strategies::param(),
        c in strategies::nonzero_param(),
        eta in strategies::nonzero_param(),
    ) {
        let g = if complete {
            parse_named(&format!("Kn:{n},0,{eta}")).unwrap()
        } else {
            parse_named(&format!("Cn:{n}")).unwrap()
        };
        let k = g.degrees()[0];
        let fam = MatrixFamily::generalized(a.clone(), b.clone(), c.clone()).unwrap();
        for x in ones_product(&g, &fam) {
            prop_assert!((x - (a.value() + (b.value() + c.value()) * k)).abs() < 1e-9);
        }
        if k != 0.0 {
            let fam = MatrixFamily::normalized(a.clone(), c.clone()).unwrap();
            let m = build_matrix(&g, &fam).unwrap();
            for i in 0..n {
                let row: f64 = (0..n).map(|j| m.get(i, j).re).sum();
                prop_assert!((row - (a.value() + c.value())).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn presets_match_textbook_matrices(g in strategies::graph(7, false, false)) {
        for (name, fam) in [
            ("A", MatrixFamily::adjacency()),
            ("L", MatrixFamily::laplacian()),
            ("Q", MatrixFamily::signless_laplacian()),
            ("N", MatrixFamily::normalized_laplacian()),
        ] {
            let m = build_matrix(&g, &fam).unwrap();
            let t = textbook(&g, name);
            for (i, row) in t.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    prop_assert!((m.get(i, j).re - x).abs() < 1e-12 && m.get(i, j).im == 0.0);
                }
            }
        }
    }
}
