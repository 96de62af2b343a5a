//! Corpus-wide properties checked against independent computations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triwheel::analysis::{classify, enumerate_partitions, is_coordinated, Verdict};
use triwheel::chromatic::{brute_force_count, ChromaticEngine, Polynomial};
use triwheel::graph::ContractionOutcome;
use triwheel::planarity::is_planar;
use triwheel::triangulation::{generate_all, generate_all_with, SplitOrder};
use triwheel::{CanonicalForm, Graph, Triangulation};

fn corpus(max: usize) -> Vec<Triangulation> {
    (4..=max).flat_map(|n| generate_all(n, None).unwrap().graphs).collect()
}

/// Every simple graph on `n` vertices with `3n - 6` edges, filtered by
/// minimum degree and planarity, deduplicated by canonical form.
fn brute_force_triangulation_classes(n: usize) -> BTreeSet<CanonicalForm> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = 3 * n - 6;
    let p = pairs.len();
    let mut classes = BTreeSet::new();
    // Gosper's hack over p-bit masks with m bits set.
    let mut mask: u64 = (1u64 << m) - 1;
    let limit = 1u64 << p;
    while mask < limit {
        let mut adj = vec![0u64; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if adj.iter().all(|r| r.count_ones() >= 3) && is_planar(&adj) {
            classes.insert(Graph::from_adjacency(adj).unwrap().canonical_form());
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    classes
}

#[test]
fn generator_matches_exhaustive_enumeration() {
    for (n, expected) in [(4, 1), (5, 1), (6, 2), (7, 5), (8, 14)] {
        let oracle = brute_force_triangulation_classes(n);
        let generated: BTreeSet<CanonicalForm> = generate_all(n, None).unwrap().forms.into_iter().collect();
        assert_eq!(oracle.len(), expected, "oracle count at n = {n}");
        assert_eq!(generated, oracle, "class sets at n = {n}");
    }
}

#[test]
fn generation_is_independent_of_split_order() {
    for n in 4..=10 {
        let a = generate_all_with(n, None, SplitOrder::Forward).unwrap().forms;
        let b = generate_all_with(n, None, SplitOrder::Reverse).unwrap().forms;
        assert_eq!(a, b, "n = {n}");
    }
}

#[test]
fn triangulation_invariants_hold_on_corpus() {
    for t in corpus(10) {
        let n = t.order();
        t.validate().unwrap();
        assert_eq!(t.graph().size(), 3 * n - 6);
        assert_eq!(t.trace_faces().len(), 2 * n - 4);
        assert!((3..=5).contains(&t.min_degree()));
        for v in (0..n).filter(|&v| t.degree(v) == 4) {
            let rim = t.link_cycle(v).unwrap().rim;
            let chords = [(0, 2), (1, 3)].iter().filter(|&&(i, j)| t.graph().has_edge(rim[i], rim[j])).count();
            assert!(chords <= 1, "4-wheel with two rim chords");
        }
    }
}

#[test]
fn canonical_forms_are_invariant_and_separating() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs = corpus(8);
    let forms: BTreeSet<CanonicalForm> = graphs.iter().map(|t| t.canonical_form()).collect();
    assert_eq!(forms.len(), graphs.len());
    for t in &graphs {
        let form = t.canonical_form();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..t.order()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(t.graph().permute(&perm).canonical_form(), form);
        }
    }
}

#[test]
fn clique_detection_matches_subset_scan() {
    fn scan(g: &Graph, k: usize) -> bool {
        let n = g.order();
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .any(|m| (0..n).filter(|&v| m >> v & 1 == 1).all(|v| g.neighbor_mask(v) | (1 << v) & m == m || (g.neighbor_mask(v) & m) == m & !(1 << v)))
    }
    for t in corpus(9).into_iter().step_by(7).chain(generate_all(12, Some(5)).unwrap().graphs) {
        for k in 1..=5 {
            assert_eq!(t.graph().contains_clique(k), scan(t.graph(), k), "k = {k}");
        }
    }
}

#[test]
fn edge_contraction_matches_pair_contraction_after_deletion() {
    for t in corpus(8) {
        let g = t.graph();
        for (u, w) in g.edges() {
            let direct = g.contract_edge(u, w).unwrap();
            let via_pair = g.remove_edge(u, w).unwrap().contract_pair(u, w).unwrap();
            assert_eq!(ContractionOutcome::Graph(direct.clone()), via_pair);
            assert_eq!(direct.order(), g.order() - 1);
        }
    }
}

#[test]
fn deletion_contraction_identity_on_every_edge() {
    let e = ChromaticEngine::new();
    for t in corpus(7) {
        let g = t.graph();
        let f = e.chromatic_polynomial(g);
        assert!(f.is_monic() && f.signs_alternate());
        assert_eq!(f.degree(), Some(g.order()));
        assert_eq!(f.coeffs()[0], BigInt::from(0));
        for (u, w) in g.edges() {
            let deleted = e.chromatic_polynomial(&g.remove_edge(u, w).unwrap());
            let contracted = e.chromatic_polynomial(&g.contract_edge(u, w).unwrap());
            assert_eq!(f, &deleted - &contracted);
        }
    }
}

#[test]
fn memo_does_not_change_results() {
    let memo = ChromaticEngine::new();
    let plain = ChromaticEngine::without_memo();
    for t in corpus(9) {
        assert_eq!(memo.chromatic_polynomial(t.graph()), plain.chromatic_polynomial(t.graph()));
    }
}

#[test]
fn k5_forces_zero_at_four() {
    let e = ChromaticEngine::new();
    let mut g = Graph::complete(5);
    for extra in 0..3 {
        g = Graph::build(
            g.order() + 1,
            &g.edges().into_iter().chain([(extra, g.order())]).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(g.contains_clique(5));
        assert_eq!(e.chromatic_polynomial(&g).eval_i64(4), BigInt::from(0));
    }
}

#[test]
fn extensions_round_trip_on_small_corpus() {
    for host in corpus(7) {
        let form = host.canonical_form();
        let mut seen4 = 0;
        let mut seen5 = 0;
        for w in 0..host.order() {
            for &p in host.rotation(w) {
                for &q in host.rotation(w) {
                    if p == q {
                        continue;
                    }
                    if let Ok(ext) = host.extend_wheel4(w, p, q) {
                        seen4 += 1;
                        let t = &ext.triangulation;
                        t.validate().unwrap();
                        assert_eq!(t.order(), host.order() + 2);
                        assert_eq!(t.degree(ext.center), 4);
                        let back = t.contract_rim_pair(ext.center, ext.split.0, ext.split.1).unwrap();
                        assert_eq!(back.graph().unwrap().canonical_form(), form);
                    }
                    if let Ok(ext) = host.extend_wheel5(w, p, q) {
                        seen5 += 1;
                        let t = &ext.triangulation;
                        t.validate().unwrap();
                        assert_eq!(t.degree(ext.center), 5);
                        let back = t.contract_rim_pair(ext.center, ext.split.0, ext.split.1).unwrap();
                        assert_eq!(back.graph().unwrap().canonical_form(), form);
                    }
                }
            }
            if host.degree(w) == 3 {
                continue;
            }
        }
        if host.order() > 4 {
            assert!(seen4 > 0, "no legal 4-wheel extension on {form}");
        }
        if host.graph().degree_sequence().iter().any(|&d| d >= 5) {
            assert!(seen5 > 0, "no legal 5-wheel extension on {form}");
        }
        for [a, b, c] in host.faces() {
            let t = host.extend_wheel3(a, b, c).unwrap();
            t.validate().unwrap();
            assert_eq!(t.remove_degree3(host.order()).unwrap().canonical_form(), form);
        }
    }
}

#[test]
fn icosahedron_arises_from_a_5_wheel_extension() {
    let ico = generate_all(12, Some(5)).unwrap().graphs.remove(0);
    let target = ico.canonical_form();
    let hit = generate_all(10, None).unwrap().graphs.iter().any(|host| {
        (0..host.order()).any(|u| {
            host.rotation(u).iter().any(|&a1| {
                host.rotation(u).iter().any(|&a2| {
                    host.extend_wheel5(u, a1, a2)
                        .is_ok_and(|ext| ext.triangulation.canonical_form() == target)
                })
            })
        })
    });
    assert!(hit);
}

#[test]
fn partition_properties() {
    for t in corpus(8) {
        let g = t.graph();
        let ps = enumerate_partitions(g).unwrap();
        assert!(ps.iter().all(|p| p.is_valid_for(g)));
        if ps.iter().any(|p| p.num_classes() < 4) {
            assert_eq!(is_coordinated(g, &ps), None);
        }
        let c = classify(g, None).unwrap();
        if c.verdict == Verdict::Uniquely {
            assert!(is_coordinated(g, &ps).is_some());
        }
    }
}

#[test]
fn classification_is_stable_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in corpus(8) {
        let verdict = classify(t.graph(), None).unwrap().verdict;
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..t.order()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(classify(&t.graph().permute(&perm), None).unwrap().verdict, verdict);
        }
    }
}

fn random_planar(rng: &mut ChaCha8Rng, pool: &[Triangulation]) -> Graph {
    let t = &pool[rng.gen_range(0..pool.len())];
    let keep: Vec<(usize, usize)> = t.graph().edges().into_iter().filter(|_| rng.gen_bool(0.6)).collect();
    Graph::build(t.order(), &keep).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_matches_oracle_on_random_planar_graphs(seed in any::<u64>(), t in 1u32..=5) {
        let pool = corpus(8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_planar(&mut rng, &pool);
        let p = ChromaticEngine::new().chromatic_polynomial(&g);
        prop_assert!(p.is_monic() && p.signs_alternate());
        prop_assert_eq!(p.eval_i64(t as i64), brute_force_count(&g, t).unwrap());
    }

    #[test]
    fn falling_factorial_divides_its_multiples(a in prop::collection::vec(-20i64..20, 0..5), k in 0usize..5) {
        let p = Polynomial::from_i64(&a);
        let q = &p * &Polynomial::falling_factorial(k);
        prop_assert_eq!(q.div_falling_factorial(k), Some(p));
    }
}
