mod common;

use common::*;
use metacirc_core::autosearch::{are_isomorphic, automorphism_group, canonical_form, isomorphism, search};
use metacirc_core::autparam::{enumerate_aut, AutGroupAction};
use metacirc_core::cayley::{build_cayley, standard_connection_set};
use metacirc_core::classify::enumerate_candidates;
use metacirc_core::permengine::{edge_orbit_count, normalizer_of_regular};
use metacirc_core::{ConnectionSet, Graph, GroupSpec, Perm, PermGroup};
use rand::Rng;

fn small_corpus() -> Vec<Graph> {
    let mut rng = rng(11);
    let mut corpus = vec![
        Graph::complete(5),
        Graph::cycle(6),
        petersen(),
        Graph::empty(7),
        Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap(),
        // two triangles and a 4-cycle
        Graph::from_edges(10, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (8, 9), (6, 9)])
            .unwrap(),
        build_cayley(
            &ConnectionSet::from_indices([1, 2, 3, 6], &GroupSpec::new(3, 3, 1, 1).unwrap()).unwrap(),
            &GroupSpec::new(3, 3, 1, 1).unwrap(),
        ),
    ];
    for k in 0..150 {
        let n = 1 + k % 9;
        let p = [0.2, 0.4, 0.5, 0.7][k % 4];
        corpus.push(random_graph(&mut rng, n, p));
    }
    corpus
}

#[test]
fn automorphism_order_matches_brute_force() {
    for g in small_corpus() {
        let group = automorphism_group(&g);
        assert!(group.generators().iter().all(|p| g.is_automorphism(p)));
        assert_eq!(group.order_u64().unwrap(), brute_force_aut_order(&g), "graph {}", g.to_graph6());
    }
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    let mut rng = rng(5);
    let z7z3 = GroupSpec::new(7, 3, 2, 1).unwrap();
    let z11z5 = GroupSpec::new(11, 5, 3, 1).unwrap();
    let fixtures = vec![
        Graph::complete(5),
        Graph::cycle(6),
        petersen(),
        build_cayley(&standard_connection_set(1, &z7z3).unwrap(), &z7z3),
        build_cayley(&standard_connection_set(2, &z11z5).unwrap(), &z11z5),
        random_graph(&mut rng, 14, 0.3),
    ];
    for g in fixtures {
        let form = canonical_form(&g);
        for _ in 0..100 {
            let p = random_perm(&mut rng, g.n_vertices());
            assert_eq!(canonical_form(&g.relabel(&p)), form);
        }
    }
}

#[test]
fn canonical_form_is_a_relabeling_of_the_input() {
    let mut rng = rng(8);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 11, 0.4);
        let s = search(&g);
        assert_eq!(g.relabel(&s.labeling).to_graph6(), s.canonical_form);
    }
}

#[test]
fn isomorphism_matches_brute_force() {
    let mut rng = rng(3);
    let mut agree_true = 0;
    for k in 0..300 {
        let n = 3 + k % 6;
        let g1 = random_graph(&mut rng, n, 0.5);
        let g2 = if k % 3 == 0 {
            g1.relabel(&random_perm(&mut rng, n))
        } else {
            // same edge count, random placement: isomorphic only sometimes
            let target = g1.edge_count();
            loop {
                let h = random_graph(&mut rng, n, 0.5);
                if h.edge_count() == target {
                    break h;
                }
            }
        };
        let expected = brute_force_isomorphic(&g1, &g2);
        assert_eq!(are_isomorphic(&g1, &g2), expected, "{} vs {}", g1.to_graph6(), g2.to_graph6());
        if expected {
            agree_true += 1;
            let p = isomorphism(&g1, &g2).unwrap();
            assert_eq!(g1.relabel(&p), g2);
        }
    }
    assert!(agree_true > 100);
}

#[test]
fn schreier_sims_matches_closure() {
    let mut rng = rng(21);
    for _ in 0..60 {
        let degree = rng.gen_range(1..=7);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Perm> = (0..k).map(|_| random_perm(&mut rng, degree)).collect();
        let group = PermGroup::new(degree, gens.clone()).unwrap();
        let order = group.order_u64().unwrap();
        assert_eq!(order as usize, closure_order(degree, &gens));
        for p in 0..degree {
            let orbit = group.orbit(p).unwrap().len() as u64;
            let stab = group.point_stabilizer(p).unwrap().order_u64().unwrap();
            assert_eq!(orbit * stab, order);
        }
        let elements = group.elements(10_000).unwrap();
        assert!(elements.iter().all(|e| group.contains(e)));
    }
}

#[test]
fn larger_groups_match_closure() {
    // Aut of the 21-vertex exceptional graph and of a generic 39-vertex one
    for (m, n, r) in [(7, 3, 2), (13, 3, 3)] {
        let spec = GroupSpec::new(m, n, r, 1).unwrap();
        let g = build_cayley(&standard_connection_set(1, &spec).unwrap(), &spec);
        let group = automorphism_group(&g);
        assert_eq!(group.order_u64().unwrap() as usize, closure_order(g.n_vertices(), group.generators()));
    }
}

#[test]
fn normalizer_matches_direct_count() {
    let spec = GroupSpec::new(7, 3, 2, 1).unwrap();
    let g = build_cayley(&standard_connection_set(1, &spec).unwrap(), &spec);
    let aut = automorphism_group(&g);
    // independent: conjugate every element of the closure and test regularity directly
    let regular: Vec<Vec<u32>> = spec.elements().map(|h| spec.right_multiplication(&h).images().to_vec()).collect();
    let reg_set: std::collections::HashSet<Vec<u32>> = regular.iter().cloned().collect();
    let mut count = 0;
    for x in aut.elements(1_000_000).unwrap() {
        let xi = x.inverse();
        if spec
            .regular_representation()
            .iter()
            .all(|gen| reg_set.contains(xi.then(gen).then(&x).images()))
        {
            count += 1;
        }
    }
    assert_eq!(normalizer_of_regular(&aut, &spec).unwrap(), count);
}

#[test]
fn graph6_against_independent_parser() {
    let mut rng = rng(9);
    let mut graphs = vec![Graph::empty(0), Graph::empty(1), Graph::complete(5), petersen()];
    for n in [2, 7, 40, 62, 63, 100] {
        graphs.push(random_graph(&mut rng, n, 0.3));
    }
    let spec = GroupSpec::new(23, 11, 2, 1).unwrap();
    graphs.push(build_cayley(&standard_connection_set(1, &spec).unwrap(), &spec));
    for g in graphs {
        let text = g.to_graph6();
        let (n, edges) = parse_graph6(&text);
        assert_eq!(n, g.n_vertices());
        assert_eq!(Graph::from_edges(n, edges).unwrap(), g);
        assert_eq!(Graph::from_graph6(&text).unwrap(), g);
    }
}

#[test]
fn automorphisms_induce_isomorphisms() {
    for (m, n, r) in [(7, 3, 2), (13, 3, 3)] {
        let spec = GroupSpec::new(m, n, r, 1).unwrap();
        let maps = enumerate_aut(&spec).unwrap();
        for set in enumerate_candidates(&spec, 1000).unwrap().into_iter().step_by(7) {
            let g = build_cayley(&set, &spec);
            for f in maps.iter().step_by(5) {
                let image: Vec<_> = set.elements().iter().map(|x| f.apply(x, &spec)).collect();
                let fs = ConnectionSet::new(image.try_into().unwrap(), &spec).unwrap();
                let vertex_map = Perm::from_images(
                    spec.elements().map(|x| spec.index(&f.apply(&x, &spec)) as u32).collect(),
                )
                .unwrap();
                assert_eq!(g.relabel(&vertex_map), build_cayley(&fs, &spec));
                assert!(are_isomorphic(&g, &build_cayley(&fs, &spec)));
            }
        }
    }
}

#[test]
fn cayley_graphs_are_vertex_transitive() {
    let spec = GroupSpec::new(11, 5, 3, 1).unwrap();
    let action = AutGroupAction::new(&spec);
    let mut seen = std::collections::HashSet::new();
    for set in enumerate_candidates(&spec, 1000).unwrap() {
        if !seen.insert(action.canonical_indices(&set)) {
            continue;
        }
        let g = build_cayley(&set, &spec);
        let aut = automorphism_group(&g);
        assert!(aut.is_transitive());
        assert!(edge_orbit_count(&aut, &g).unwrap() <= 2);
    }
}
