use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sip3::generate::{connected_graphs_up_to, random_connected_graph};
use sip3::minors::*;
use sip3::patterns::*;
use sip3::{pair, Graph, VertexPair};

fn all_pairs(n: usize) -> Vec<VertexPair> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| pair(u, v))).collect()
}

#[test]
fn search_agrees_with_oracle_on_small_graphs() {
    let patterns = [k3(), k4(), k5(), k222()];
    let mut disagreements = Vec::new();
    let mut cases = 0;
    for g in connected_graphs_up_to(6) {
        for p in &patterns {
            let mut cs = vec![MinorConstraints::none()];
            cs.extend(all_pairs(g.n()).into_iter().map(MinorConstraints::preserving));
            for c in cs {
                cases += 1;
                let fast = find_rooted_minor(&g, p, &c, DEFAULT_BUDGET).unwrap();
                let slow = brute_force_minor_oracle(&g, p, &c).unwrap();
                if let Some(m) = &fast {
                    assert!(m.is_valid() && m.satisfies(&c));
                }
                if fast.is_some() != slow {
                    disagreements.push((g.clone(), p.n(), c));
                }
            }
        }
    }
    assert!(cases > 2000);
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn retain_and_induced_agree_with_oracle() {
    for g in connected_graphs_up_to(6).into_iter().filter(|g| g.n() >= 4) {
        for p in [k4(), k5(), k222()] {
            for f in all_pairs(g.n()) {
                for c in [MinorConstraints::retaining(f), MinorConstraints::retaining(f).induced()] {
                    let fast = find_rooted_minor(&g, &p, &c, DEFAULT_BUDGET).unwrap();
                    assert_eq!(fast.is_some(), brute_force_minor_oracle(&g, &p, &c).unwrap(), "{g:?} {f} {c:?}");
                    if let Some(m) = fast {
                        let (x, y) = (m.image(f.a()).unwrap(), m.image(f.b()).unwrap());
                        let own = usize::from(g.has_pair(f));
                        assert!(m.crossing_edges(x, y).len() <= own.max(1));
                    }
                }
            }
        }
    }
}

#[test]
fn pinned_search_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let g = random_connected_graph(7, 0.6, &mut rng);
        for (h, q) in [(0, 0), (3, 2)] {
            let c = MinorConstraints::none().pin(h, q).pin(6, 1);
            for p in [k4(), k5()] {
                let fast = find_rooted_minor(&g, &p, &c, DEFAULT_BUDGET).unwrap();
                assert_eq!(fast.is_some(), brute_force_minor_oracle(&g, &p, &c).unwrap());
            }
        }
    }
}

#[test]
fn larger_patterns_on_known_graphs() {
    let none = MinorConstraints::none();
    assert!(find_rooted_minor(&v8(), &v8(), &none, DEFAULT_BUDGET).unwrap().is_some());
    assert!(find_rooted_minor(&c5xc2(), &v8(), &none, DEFAULT_BUDGET).unwrap().is_none());
    assert!(find_rooted_minor(&c5xc2(), &c5xc2(), &none, DEFAULT_BUDGET).unwrap().is_some());
    assert!(find_rooted_minor(&petersen(), &c5xc2(), &none, DEFAULT_BUDGET).unwrap().is_none());
    assert!(find_rooted_minor(&v8(), &k5(), &none, DEFAULT_BUDGET).unwrap().is_none());
    assert!(find_rooted_minor(&v8(), &k222(), &none, DEFAULT_BUDGET).unwrap().is_none());
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (3usize..=7, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_connected_graph(n, 0.55, &mut rng)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_an_edge_keeps_a_minor(g in graph_strategy(), pick in any::<prop::sample::Index>()) {
        let non = g.nonedges();
        prop_assume!(!non.is_empty());
        let bigger = g.with_edge(non[pick.index(non.len())]).unwrap();
        for p in [k4(), k5(), k222()] {
            if find_rooted_minor(&g, &p, &MinorConstraints::none(), DEFAULT_BUDGET).unwrap().is_some() {
                prop_assert!(find_rooted_minor(&bigger, &p, &MinorConstraints::none(), DEFAULT_BUDGET).unwrap().is_some());
            }
        }
    }

    #[test]
    fn exchanges_partition_and_stay_connected(g in graph_strategy()) {
        let Some(m) = find_rooted_minor(&g, &k3(), &MinorConstraints::none(), DEFAULT_BUDGET).unwrap() else {
            return Ok(());
        };
        for (a, b) in [(0, 1), (1, 0), (0, 2), (2, 1)] {
            let ha = m.preimage(a);
            for x in ha.iter() {
                for fixed in g.components_within(ha.without(x)) {
                    if let Ok(out) = apply_exchange(&m, a, b, &Exchange::Vertex { x, fixed }) {
                        prop_assert_eq!(out.branch().iter().filter(|b| b.is_some()).count(),
                                        m.branch().iter().filter(|b| b.is_some()).count());
                        prop_assert_eq!(out.preimage(a), fixed);
                        prop_assert!(g.is_connected_within(out.preimage(b)));
                    }
                }
                let fixed = sip3::VertexSet::singleton(x);
                for moved in g.components_within(ha.without(x)) {
                    if let Ok(out) = apply_exchange(&m, a, b, &Exchange::Component { fixed, moved }) {
                        prop_assert!(g.is_connected_within(out.preimage(a)));
                        prop_assert!(g.is_connected_within(out.preimage(b)));
                    }
                }
            }
        }
    }
}
