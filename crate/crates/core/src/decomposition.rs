//! Clique minimal separator decomposition.
//!
//! [`decompose_atoms`] computes a minimal elimination ordering with MCS-M,
//! reads the candidate minimal separators off the generators of the minimal
//! triangulation, keeps those that are cliques of the input graph, and peels
//! atoms off in elimination order. [`brute_force_atoms`] is an exhaustive
//! reference used to check it on small graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph, VertexSet};

/// Atoms and clique minimal separators of a connected graph, each normalized
/// to lexicographic order of their sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDecomposition {
    pub atoms: Vec<VertexSet>,
    pub cms: Vec<VertexSet>,
}

impl AtomDecomposition {
    /// Atoms that contain every vertex of `s`.
    pub fn atoms_containing(&self, s: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.atoms.iter().copied().filter(move |a| s.is_subset(*a))
    }

    pub fn atom_graph(&self) -> AtomGraph {
        atom_graph(self)
    }
}

fn normalize(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    let mut keyed: Vec<(Vec<usize>, VertexSet)> = sets.drain(..).map(|s| (s.to_vec(), s)).collect();
    keyed.sort();
    keyed.dedup();
    keyed.into_iter().map(|(_, s)| s).collect()
}

/// Result of MCS-M: a minimal elimination ordering and its triangulation.
#[derive(Clone, Debug)]
pub struct MinimalOrdering {
    /// `order[i]` is the `i`-th vertex eliminated.
    pub order: Vec<usize>,
    /// Position of each vertex in `order`.
    pub position: Vec<usize>,
    /// The minimal triangulation `G + fill`.
    pub filled: Graph,
    /// Vertices whose higher neighborhood in `filled` is a minimal separator.
    pub generators: VertexSet,
}

impl MinimalOrdering {
    /// Neighbors of `v` in the triangulation that are eliminated after `v`.
    pub fn higher_neighbors(&self, v: usize) -> VertexSet {
        self.filled.neighbors(v).iter().filter(|&w| self.position[w] > self.position[v]).collect()
    }
}

/// MCS-M with generator detection. Ties are broken by lowest vertex id.
pub fn mcs_m(g: &Graph) -> MinimalOrdering {
    let n = g.n();
    let mut weight = vec![0i64; n];
    let mut position = vec![usize::MAX; n];
    let mut order = vec![usize::MAX; n];
    let mut unnumbered = g.vertices();
    let mut fill: Vec<(usize, usize)> = Vec::new();
    let mut generators = VertexSet::EMPTY;
    let mut prev_card = i64::MAX;

    for i in (0..n).rev() {
        let x = unnumbered
            .iter()
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unnumbered vertex");
        if weight[x] <= prev_card && i + 1 != n {
            generators.insert(x);
        }
        prev_card = weight[x];
        position[x] = i;
        order[i] = x;
        unnumbered.remove(x);

        // Bottleneck search: cost[y] is the least possible maximum weight of
        // an interior vertex over unnumbered paths x .. y.
        let mut cost = vec![i64::MAX; n];
        let mut settled = VertexSet::EMPTY;
        for y in g.neighbors(x).intersection(unnumbered) {
            cost[y] = -1;
        }
        loop {
            let next = unnumbered
                .difference(settled)
                .iter()
                .filter(|&y| cost[y] != i64::MAX)
                .min_by_key(|&y| (cost[y], y));
            let Some(u) = next else { break };
            settled.insert(u);
            let through = cost[u].max(weight[u]);
            for y in g.neighbors(u).intersection(unnumbered).difference(settled) {
                if through < cost[y] {
                    cost[y] = through;
                }
            }
        }
        let reached: Vec<usize> = settled.iter().filter(|&y| cost[y] < weight[y]).collect();
        for y in reached {
            weight[y] += 1;
            if !g.has_edge(x, y) {
                fill.push((x, y));
            }
        }
    }

    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.a(), e.b())).collect();
    edges.extend(fill);
    let filled = Graph::from_edges(n, &edges).expect("fill edges are new nonedges");
    MinimalOrdering { order, position, filled, generators }
}

/// Atoms and clique minimal separators of a connected graph.
pub fn decompose_atoms(g: &Graph) -> Result<AtomDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected("atoms are defined for connected graphs"));
    }
    let mo = mcs_m(g);
    let mut remaining = g.vertices();
    let mut atoms = Vec::new();
    let mut cms = Vec::new();
    for &x in &mo.order {
        if !mo.generators.contains(x) || !remaining.contains(x) {
            continue;
        }
        let s = mo.higher_neighbors(x);
        if s.is_empty() || !g.is_clique(s) || !s.is_subset(remaining) {
            continue;
        }
        let comp = g.reach(x, remaining.difference(s));
        if comp.union(s) == remaining {
            continue;
        }
        atoms.push(comp.union(s));
        cms.push(s);
        remaining = remaining.difference(comp);
    }
    atoms.push(remaining);
    Ok(AtomDecomposition { atoms: normalize(atoms), cms: normalize(cms) })
}

/// True iff the connected graph `g` has no clique separator.
pub fn is_atom(g: &Graph) -> Result<bool> {
    Ok(decompose_atoms(g)?.cms.is_empty())
}

/// The `C`-components of `g` for a clique separator `C`.
pub fn cms_components(g: &Graph, c: VertexSet) -> Result<Vec<Subgraph>> {
    if c.difference(g.vertices()).first().is_some() {
        return Err(Error::VertexOutOfRange { id: c.difference(g.vertices()).first().unwrap_or(0), n: g.n() });
    }
    if !g.is_clique(c) {
        return Err(Error::NotAClique);
    }
    if !g.is_separator(c) {
        return Err(Error::NotASeparator);
    }
    g.u_components(c)
}

/// Bipartite atom graph: CMS nodes `X`, atom nodes `Y`, with `x ~ y` iff the
/// separator is contained in the atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomGraph {
    pub cms: Vec<VertexSet>,
    pub atoms: Vec<VertexSet>,
    /// `(cms index, atom index)` pairs.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomGraphNode {
    Cms(usize),
    Atom(usize),
}

impl AtomGraph {
    pub fn node_count(&self) -> usize {
        self.cms.len() + self.atoms.len()
    }

    /// As a plain graph: CMS nodes first, then atom nodes.
    pub fn as_graph(&self) -> Graph {
        let k = self.cms.len();
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(x, y)| (x, k + y)).collect();
        Graph::from_edges(self.node_count(), &edges).expect("bipartite edges are distinct")
    }

    pub fn node(&self, id: usize) -> AtomGraphNode {
        if id < self.cms.len() {
            AtomGraphNode::Cms(id)
        } else {
            AtomGraphNode::Atom(id - self.cms.len())
        }
    }

    pub fn is_tree(&self) -> bool {
        let g = self.as_graph();
        g.n() > 0 && g.is_connected() && g.edge_count() + 1 == g.n()
    }

    /// Nodes of degree at most one.
    pub fn leaves(&self) -> Vec<AtomGraphNode> {
        let g = self.as_graph();
        (0..g.n()).filter(|&v| g.degree(v) <= 1).map(|v| self.node(v)).collect()
    }
}

pub fn atom_graph(dec: &AtomDecomposition) -> AtomGraph {
    let mut edges = Vec::new();
    for (x, c) in dec.cms.iter().enumerate() {
        for (y, a) in dec.atoms.iter().enumerate() {
            if c.is_subset(*a) {
                edges.push((x, y));
            }
        }
    }
    AtomGraph { cms: dec.cms.clone(), atoms: dec.atoms.clone(), edges }
}

/// Largest host for [`brute_force_atoms`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 10;

/// Exhaustive decomposition: every clique is tested as a separator of every
/// connected vertex subset.
pub fn brute_force_atoms(g: &Graph) -> Result<AtomDecomposition> {
    if g.n() > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::HostTooLarge { n: g.n(), max: BRUTE_FORCE_MAX_VERTICES });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected("atoms are defined for connected graphs"));
    }
    let all = 1u128 << g.n();
    let subsets = || (1..all).map(VertexSet::from_bits);
    let cliques: Vec<VertexSet> = subsets().filter(|&s| g.is_clique(s)).collect();

    let has_clique_separator = |u: VertexSet| {
        cliques
            .iter()
            .filter(|c| c.is_subset(u) && **c != u)
            .any(|&c| g.components_within(u.difference(c)).len() >= 2)
    };
    let mut candidates: Vec<VertexSet> =
        subsets().filter(|&u| g.is_connected_within(u) && !has_clique_separator(u)).collect();
    candidates.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut atoms: Vec<VertexSet> = Vec::new();
    for u in candidates {
        if !atoms.iter().any(|a| u.is_subset(*a)) {
            atoms.push(u);
        }
    }

    let cms: Vec<VertexSet> = cliques
        .iter()
        .copied()
        .filter(|&c| {
            let rest = g.vertices().difference(c);
            let full = g
                .components_within(rest)
                .into_iter()
                .filter(|&k| g.neighborhood_of_set(k) == c)
                .count();
            full >= 2
        })
        .collect();
    Ok(AtomDecomposition { atoms: normalize(atoms), cms: normalize(cms) })
}
