mod common;

use proptest::prelude::*;

use spectral_turan::canon::{canonical_form, is_isomorphic};
use spectral_turan::enumerate::{enumerate_classes, EnumFilter, EnumOptions, Flag};
use spectral_turan::motifs::{contains_ct_plus, contains_cycle};
use spectral_turan::spectral::{char_poly, rotate_edges, spectral_radius};
use spectral_turan::verify::{check_perron_identities, excess_weight, zeta_values};
use spectral_turan::{graph6, Graph, VertexSet};

use common::{brute_isomorphic, connected_classes, euler_transform, permutations};

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected with an edge", |g| g.m() > 0 && g.is_connected())
}

/// det(kI − A) by fraction-free elimination.
fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn det_shifted(g: &Graph, k: i64) -> i128 {
    let n = g.n();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        k as i128
                    } else if g.has_edge(i, j) {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    bareiss_det(m)
}

fn has_cycle_brute(g: &Graph, t: usize) -> bool {
    // a t-cycle through its smallest vertex, found by extending simple paths
    fn extend(g: &Graph, path: &mut Vec<usize>, t: usize) -> bool {
        let last = *path.last().unwrap();
        if path.len() == t {
            return g.has_edge(last, path[0]);
        }
        for v in 0..g.n() {
            if v > path[0] && !path.contains(&v) && g.has_edge(last, v) {
                path.push(v);
                if extend(g, path, t) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..g.n()).any(|s| extend(g, &mut vec![s], t))
}

fn has_ct_plus_brute(g: &Graph, t: usize) -> bool {
    // every t-cycle with an extra vertex adjacent to two consecutive cycle vertices
    let n = g.n();
    permutations(n).iter().any(|p| {
        if n < t + 1 {
            return false;
        }
        let c = &p[..t];
        let apex = p[t];
        (0..t).all(|i| g.has_edge(c[i], c[(i + 1) % t])) && g.has_edge(apex, c[0]) && g.has_edge(apex, c[1])
    })
}

fn cut_vertices_brute(g: &Graph) -> Vec<usize> {
    let base = g.components().len();
    (0..g.n())
        .filter(|&v| {
            let rest: Vec<usize> = (0..g.n()).filter(|&x| x != v).collect();
            g.induced(&rest).components().len() > base - usize::from(g.degree(v) == 0)
        })
        .collect()
}

#[test]
fn class_counts_match_brute_force() {
    let max = 6;
    let connected = connected_classes(max);
    assert_eq!(connected[1..], [1, 1, 3, 5, 12, 30]);
    let opts = EnumOptions::default();
    for m in 1..=max {
        let all = enumerate_classes(&EnumFilter::new(m, &[]), &opts).unwrap().len();
        assert_eq!(all, euler_transform(&connected, m), "m = {m}");
        let conn = enumerate_classes(&EnumFilter::new(m, &[Flag::Connected]), &opts).unwrap().len();
        assert_eq!(conn, connected[m], "connected, m = {m}");
    }
}

#[test]
fn enumeration_is_thread_independent() {
    for flags in [&[][..], &[Flag::C4Free][..], &[Flag::Connected, Flag::NonBipartite][..]] {
        let filter = EnumFilter::new(8, flags);
        let one = EnumOptions {
            threads: 1,
            ..EnumOptions::default()
        };
        let four = EnumOptions {
            threads: 4,
            ..EnumOptions::default()
        };
        let a: Vec<String> = enumerate_classes(&filter, &one).unwrap().into_iter().map(|c| c.form.cert).collect();
        let b: Vec<String> = enumerate_classes(&filter, &four).unwrap().into_iter().map(|c| c.form.cert).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn enumerated_classes_are_pairwise_non_isomorphic() {
    let classes = enumerate_classes(&EnumFilter::new(5, &[]), &EnumOptions::default()).unwrap();
    for (i, a) in classes.iter().enumerate() {
        assert_eq!(a.graph.m(), 5);
        assert!(!a.graph.has_isolated_vertices());
        for b in &classes[i + 1..] {
            assert!(!brute_isomorphic(&a.graph, &b.graph));
        }
    }
}

fn shuffle(g: &Graph, seed: &[usize]) -> Graph {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    for (i, &s) in seed.iter().enumerate().take(n) {
        perm.swap(i, s % n);
    }
    g.relabel(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canon_agrees_with_brute_isomorphism(a in arb_graph(6), b in arb_graph(6)) {
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), brute_isomorphic(&a, &b));
    }

    #[test]
    fn canon_is_relabeling_invariant(g in arb_graph(8), seed in proptest::collection::vec(0usize..8, 8)) {
        let h = shuffle(&g, &seed);
        prop_assert_eq!(canonical_form(&g).unwrap().cert, canonical_form(&h).unwrap().cert);
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn char_poly_matches_determinants(g in arb_graph(9)) {
        let p = char_poly(&g);
        for k in -3..=3 {
            let expect = det_shifted(&g, k);
            prop_assert_eq!(p.eval_i64(k).to_string(), expect.to_string(), "k = {}", k);
        }
    }

    #[test]
    fn strata_partition_the_vertices(g in arb_graph(10), u in 0usize..10) {
        let u = u % g.n();
        let s = g.strata(u).unwrap();
        let mut covered = VertexSet::new();
        covered.insert(u);
        for i in 0..=s.max_inner_degree() {
            let layer = s.ni(i);
            prop_assert!(covered.is_disjoint(&layer));
            for v in layer.iter() {
                prop_assert!(g.has_edge(u, v));
                prop_assert_eq!(s.neighbors.count_in(g.row(v)), i);
            }
            covered = covered.union(&layer);
        }
        prop_assert!(covered.is_disjoint(&s.w));
        prop_assert_eq!(covered.union(&s.w), g.vertices());
        for x in s.w.iter() {
            let touches = g.neighbor_iter(x).any(|y| s.neighbors.contains(y));
            prop_assert_eq!(s.n2.contains(x), touches);
        }
        prop_assert_eq!(s.n_plus().union(s.n0()), s.neighbors.clone());
    }

    #[test]
    fn edge_counts_are_naive_counts(g in arb_graph(10), mask_s in any::<u16>(), mask_t in any::<u16>()) {
        let pick = |mask: u16| -> VertexSet { (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect() };
        let (s, t) = (pick(mask_s), pick(mask_t));
        let naive_cross = g
            .edges()
            .filter(|&(a, b)| (s.contains(a) && t.contains(b)) || (s.contains(b) && t.contains(a)))
            .count();
        let naive_within = g.edges().filter(|&(a, b)| s.contains(a) && s.contains(b)).count();
        prop_assert_eq!(g.edges_within(&s), naive_within);
        if s.is_disjoint(&t) {
            prop_assert_eq!(g.edge_count(&s, &t), naive_cross);
        }
        for v in 0..g.n() {
            let d = g.neighbor_iter(v).filter(|&w| s.contains(w)).count();
            prop_assert_eq!(g.degree_in(v, &s).unwrap(), d);
        }
    }

    #[test]
    fn cut_vertices_match_removal(g in arb_graph(9)) {
        let mut got = g.cut_vertices();
        got.sort_unstable();
        prop_assert_eq!(got, cut_vertices_brute(&g));
    }

    #[test]
    fn cycle_search_matches_brute_force(g in arb_graph(7), t in 3usize..=6) {
        let found = contains_cycle(&g, t);
        prop_assert_eq!(found.is_some(), has_cycle_brute(&g, t));
        if let Some(w) = found {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn ct_plus_search_matches_brute_force(g in arb_graph(7), t in 3usize..=5) {
        let found = contains_ct_plus(&g, t);
        prop_assert_eq!(found.is_some(), has_ct_plus_brute(&g, t));
        if let Some(w) = found {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn rotation_towards_heavier_vertex_raises_rho(g in arb_connected(9), pick in any::<u32>()) {
        let r = spectral_radius(&g, 1e-10).unwrap();
        let n = g.n();
        for u in 0..n {
            for v in 0..n {
                if u == v || r.perron[u] < r.perron[v] {
                    continue;
                }
                let movable: Vec<usize> = g
                    .neighbor_iter(v)
                    .filter(|&w| w != u && !g.has_edge(w, u))
                    .collect();
                if movable.is_empty() {
                    continue;
                }
                let moved: VertexSet = movable
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i == &0 || pick >> (i % 32) & 1 == 1)
                    .map(|(_, &w)| w)
                    .collect();
                let h = rotate_edges(&g, v, u, &moved).unwrap();
                prop_assert_eq!(h.m(), g.m());
                let rh = spectral_radius(&h, 1e-10).unwrap();
                prop_assert!(rh.rho > r.rho - 1e-9, "{} -> {}", r.rho, rh.rho);
            }
        }
    }

    #[test]
    fn zeta_values_add_up(g in arb_connected(10), u in 0usize..10) {
        let u = u % g.n();
        let r = spectral_radius(&g, 1e-12).unwrap();
        let total: f64 = zeta_values(&g, u, &r.perron).unwrap().iter().map(|z| z.value).sum();
        prop_assert!((total - excess_weight(&g, u, &r.perron).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn perron_identities_hold(g in arb_connected(10), u in 0usize..10) {
        let u = u % g.n();
        let res = check_perron_identities(&g, u).unwrap();
        prop_assert!(res.max() < 1e-8, "{:?}", res);
    }
}
