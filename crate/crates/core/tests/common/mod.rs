//! Shared test corpus: every connected simple graph on up to six vertices and
//! a fixed batch of random rational-weighted graphs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cospec_core::{MatrixFamily, Scalar, WeightedGraph};

/// Edge set on `n` vertices as a bitmask over pairs `i < j` in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimpleGraph {
    pub n: usize,
    pub mask: u64,
}

fn bit(n: usize, i: usize, j: usize) -> u64 {
    let (i, j) = (i.min(j), i.max(j));
    // Pairs before row i, then the offset within row i.
    let before = i * (2 * n - i - 1) / 2;
    1 << (before + j - i - 1)
}

impl SimpleGraph {
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.mask & bit(self.n, i, j) != 0
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .tuple_combinations()
            .filter(|&(i, j)| self.has(i, j))
            .collect()
    }

    fn canonical(&self) -> u64 {
        let edges = self.edges();
        (0..self.n)
            .permutations(self.n)
            .map(|p| edges.iter().fold(0, |m, &(i, j)| m | bit(self.n, p[i], p[j])))
            .min()
            .unwrap_or(0)
    }

    pub fn to_graph(self) -> WeightedGraph {
        self.edges()
            .into_iter()
            .fold(WeightedGraph::builder(self.n), |b, (i, j)| b.edge(i, j, 1))
            .build()
            .unwrap()
    }
}

/// Connected simple unweighted graphs on exactly `n` vertices, one per
/// isomorphism class. A connected graph always has a vertex whose removal
/// leaves it connected, so each class arises by attaching a new vertex to a
/// class on `n − 1` vertices.
pub fn connected_graphs(n: usize) -> Vec<SimpleGraph> {
    if n == 1 {
        return vec![SimpleGraph { n: 1, mask: 0 }];
    }
    let mut seen = BTreeSet::new();
    for g in connected_graphs(n - 1) {
        let old = g.edges();
        for nbrs in 1u32..(1 << (n - 1)) {
            let mut mask = old.iter().fold(0, |m, &(i, j)| m | bit(n, i, j));
            for v in 0..n - 1 {
                if nbrs & (1 << v) != 0 {
                    mask |= bit(n, v, n - 1);
                }
            }
            seen.insert(SimpleGraph { n, mask }.canonical());
        }
    }
    seen.into_iter().map(|mask| SimpleGraph { n, mask }).collect()
}

/// Every connected simple graph with `1 ≤ n ≤ max_n`.
pub fn enumerated_corpus(max_n: usize) -> Vec<WeightedGraph> {
    (1..=max_n).flat_map(connected_graphs).map(|g| g.to_graph()).collect()
}

const WEIGHTS: [(i64, i64); 7] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (1, 2)];

fn weight(rng: &mut StdRng) -> Scalar {
    let (p, q) = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
    Scalar::from_ratio(p, q)
}

/// Connected graphs with `2 ≤ n ≤ 7`, weights in {±1, ±2, ±3, 1/2}, and
/// occasional loops. A random spanning tree guarantees connectivity.
pub fn random_rational_graphs(count: usize, seed: u64) -> Vec<WeightedGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=7);
            let mut pairs = BTreeSet::new();
            for v in 1..n {
                pairs.insert((rng.gen_range(0..v), v));
            }
            for (i, j) in (0..n).tuple_combinations() {
                if rng.gen_bool(0.3) {
                    pairs.insert((i, j));
                }
            }
            let mut b = WeightedGraph::builder(n);
            for (i, j) in pairs {
                b = b.edge(i, j, weight(&mut rng));
            }
            for v in 0..n {
                if rng.gen_bool(0.15) {
                    b = b.loop_at(v, weight(&mut rng));
                }
            }
            b.build().unwrap()
        })
        .collect()
}

pub fn presets_alq() -> [(&'static str, MatrixFamily); 3] {
    [
        ("A", MatrixFamily::adjacency()),
        ("L", MatrixFamily::laplacian()),
        ("Q", MatrixFamily::signless_laplacian()),
    ]
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).tuple_combinations()
}

pub mod strategies {
    use super::WEIGHTS;
    use cospec_core::{MatrixFamily, Scalar, WeightedGraph};
    use proptest::prelude::*;
    use proptest::sample::Index;

    fn w(i: usize) -> Scalar {
        let (p, q) = WEIGHTS[i];
        Scalar::from_ratio(p, q)
    }

    /// Connected graphs on `2..=max_n` vertices: a random spanning tree plus
    /// extra edges, weights from {±1, ±2, ±3, 1/2}, loops when `loops` is set.
    pub fn graph(max_n: usize, weighted: bool, loops: bool) -> impl Strategy<Value = WeightedGraph> {
        (2..=max_n).prop_flat_map(move |n| {
            let m = n * (n - 1) / 2;
            let weight = if weighted { 0..WEIGHTS.len() } else { 0..1 };
            (
                Just(n),
                proptest::collection::vec(any::<Index>(), n - 1),
                proptest::collection::vec(proptest::option::weighted(0.35, weight.clone()), m),
                proptest::collection::vec(proptest::option::weighted(0.2, weight), n),
            )
                .prop_map(move |(n, parents, extra, loop_w)| {
                    let mut chosen = vec![None; n * n];
                    for v in 1..n {
                        chosen[parents[v - 1].index(v) * n + v] = Some(0);
                    }
                    let mut k = 0;
                    for i in 0..n {
                        for j in i + 1..n {
                            if let Some(x) = extra[k] {
                                chosen[i * n + j] = Some(x);
                            }
                            k += 1;
                        }
                    }
                    let mut b = WeightedGraph::builder(n);
                    for i in 0..n {
                        for j in i + 1..n {
                            if let Some(x) = chosen[i * n + j] {
                                b = b.edge(i, j, w(x));
                            }
                        }
                        if let (true, Some(x)) = (loops, loop_w[i]) {
                            b = b.loop_at(i, w(x));
                        }
                    }
                    b.build().unwrap()
                })
        })
    }

    /// Small rational parameter, possibly zero.
    pub fn param() -> impl Strategy<Value = Scalar> {
        (-3i64..=3, 1i64..=2).prop_map(|(p, q)| Scalar::from_ratio(p, q))
    }

    pub fn nonzero_param() -> impl Strategy<Value = Scalar> {
        param().prop_filter("nonzero", |s| !s.is_zero())
    }

    /// Presets A, L, Q or a random generalized adjacency family.
    pub fn family() -> impl Strategy<Value = MatrixFamily> {
        prop_oneof![
            Just(MatrixFamily::adjacency()),
            Just(MatrixFamily::laplacian()),
            Just(MatrixFamily::signless_laplacian()),
            (param(), param(), nonzero_param()).prop_map(|(a, b, g)| MatrixFamily::generalized(a, b, g).unwrap()),
        ]
    }
}
