//! Graph families for tests and the CLI: exhaustive enumeration of small
//! connected graphs up to isomorphism, and seeded random generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, VertexPair, VertexSet};

/// Canonical upper-triangle bit string: the lexicographically smallest over
/// all relabelings that order vertices by refined degree class. Only graphs
/// with the same vertex count are comparable.
pub fn canonical_key(g: &Graph) -> Vec<bool> {
    let n = g.n();
    // Invariant per vertex: degree, then the sorted degrees of its neighbors.
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut classes: Vec<(usize, Vec<usize>)> = inv.clone();
    classes.sort();
    classes.dedup();
    let groups: Vec<Vec<usize>> = classes.iter().map(|c| (0..n).filter(|&v| &inv[v] == c).collect()).collect();

    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    fn key_of(g: &Graph, order: &[usize]) -> Vec<bool> {
        let mut key = Vec::with_capacity(order.len() * order.len() / 2);
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                key.push(g.has_edge(order[i], order[j]));
            }
        }
        key
    }
    fn rec(g: &Graph, groups: &[Vec<usize>], gi: usize, used: VertexSet, order: &mut Vec<usize>, best: &mut Option<Vec<bool>>) {
        if gi == groups.len() {
            let key = key_of(g, order);
            if best.as_ref().is_none_or(|b| key < *b) {
                *best = Some(key);
            }
            return;
        }
        let group = &groups[gi];
        let in_group_placed = group.iter().filter(|&&v| used.contains(v)).count();
        if in_group_placed == group.len() {
            rec(g, groups, gi + 1, used, order, best);
            return;
        }
        for &v in group {
            if used.contains(v) {
                continue;
            }
            order.push(v);
            rec(g, groups, gi, used.with(v), order, best);
            order.pop();
        }
    }
    rec(g, &groups, 0, VertexSet::EMPTY, &mut order, &mut best);
    best.unwrap_or_default()
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "enumeration is limited to 1..=8 vertices");
    let mut level = vec![Graph::empty(1).expect("K1")];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 1u32..(1 << (k - 1)) {
                let mut edges: Vec<VertexPair> = g.edges();
                for w in 0..k - 1 {
                    if mask >> w & 1 == 1 {
                        edges.push(crate::graph::pair(w, k - 1));
                    }
                }
                let h = Graph::new(k, &edges).expect("extension is simple");
                if seen.insert(canonical_key(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// All connected graphs with between 1 and `max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Erdős–Rényi graph.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(crate::graph::pair(u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("random edges are distinct")
}

pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random connected chordal graph: each new vertex is joined to a nonempty
/// subset of a previously created clique.
pub fn random_chordal<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
    let mut edges = Vec::new();
    for v in 1..n {
        let base = cliques.choose(rng).expect("nonempty").clone();
        let mut chosen: Vec<usize> = base.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if chosen.is_empty() {
            chosen.push(*base.choose(rng).expect("nonempty clique"));
        }
        for &w in &chosen {
            edges.push(crate::graph::pair(w, v));
        }
        chosen.push(v);
        cliques.push(chosen);
    }
    Graph::new(n, &edges).expect("distinct edges")
}

/// Random 3-tree on `n >= 4` vertices, grown from `K4` by simplicial
/// additions on triangles.
pub fn random_3_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 4);
    let mut edges: Vec<VertexPair> = Graph::complete(4).edges();
    let mut triangles: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for v in 4..n {
        let t = *triangles.choose(rng).expect("nonempty");
        for &w in &t {
            edges.push(crate::graph::pair(w, v));
        }
        triangles.extend([[t[0], t[1], v], [t[0], t[2], v], [t[1], t[2], v]]);
    }
    Graph::new(n, &edges).expect("distinct edges")
}

/// Random partial 3-tree: a random 3-tree with each edge dropped with
/// probability `drop`, retried until connected.
pub fn random_partial_3_tree<R: Rng>(n: usize, drop: f64, rng: &mut R) -> Graph {
    loop {
        let t = random_3_tree(n, rng);
        let kept: Vec<VertexPair> = t.edges().into_iter().filter(|_| !rng.gen_bool(drop)).collect();
        let g = Graph::new(n, &kept).expect("subset of edges");
        if g.is_connected() {
            return g;
        }
    }
}

/// Uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_graph_counts_match_known_sequence() {
        // OEIS A001349.
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(7, 0.4, &mut rng);
            let p = random_permutation(7, &mut rng);
            assert_eq!(canonical_key(&g), canonical_key(&g.relabel(&p)));
        }
    }

    #[test]
    fn three_trees_have_3n_minus_6_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 4..12 {
            assert_eq!(random_3_tree(n, &mut rng).edge_count(), 3 * n - 6);
        }
    }

    #[test]
    fn random_chordal_is_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..10 {
            assert!(random_chordal(n, &mut rng).is_connected());
        }
    }
}
