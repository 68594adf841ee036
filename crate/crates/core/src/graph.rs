//! Immutable simple graphs on dense vertex ids.
//!
//! Adjacency is stored as one bitset row per vertex, which caps graphs at
//! [`MAX_VERTICES`] vertices. Everything downstream (atoms, exhaustive minor
//! search, certificates) is exponential in the vertex count anyway.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 128;

/// A set of vertex ids below [`MAX_VERTICES`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u128 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u128 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

pub struct VertexSetIter(u128);

impl Iterator for VertexSetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexSetIter {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An unordered pair of distinct vertices, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct VertexPair {
    a: usize,
    b: usize,
}

impl VertexPair {
    pub fn new(u: usize, v: usize) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(VertexPair { a: u, b: v }),
            std::cmp::Ordering::Greater => Ok(VertexPair { a: v, b: u }),
            std::cmp::Ordering::Equal => Err(Error::DegeneratePair(u)),
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn contains(self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> Option<usize> {
        if v == self.a {
            Some(self.b)
        } else if v == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn as_set(self) -> VertexSet {
        VertexSet::singleton(self.a).with(self.b)
    }
}

impl TryFrom<[usize; 2]> for VertexPair {
    type Error = Error;
    fn try_from(p: [usize; 2]) -> Result<Self> {
        VertexPair::new(p[0], p[1])
    }
}

impl From<VertexPair> for [usize; 2] {
    fn from(p: VertexPair) -> [usize; 2] {
        [p.a, p.b]
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Shorthand for building a pair in tests and fixtures; panics on `u == v`.
pub fn pair(u: usize, v: usize) -> VertexPair {
    VertexPair::new(u, v).expect("distinct vertices")
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// An induced subgraph together with the map from its local ids back to the
/// host graph's ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `labels[local] = host id`, strictly increasing.
    pub labels: Vec<usize>,
}

impl Subgraph {
    pub fn to_host(&self, local: usize) -> usize {
        self.labels[local]
    }

    pub fn to_local(&self, host: usize) -> Option<usize> {
        self.labels.binary_search(&host).ok()
    }

    pub fn host_set(&self, local: VertexSet) -> VertexSet {
        local.iter().map(|v| self.labels[v]).collect()
    }

    pub fn host_vertices(&self) -> VertexSet {
        self.labels.iter().copied().collect()
    }

    /// Translates a host pair whose endpoints both lie in the subgraph.
    pub fn local_pair(&self, p: VertexPair) -> Option<VertexPair> {
        Some(pair(self.to_local(p.a())?, self.to_local(p.b())?))
    }
}

impl Graph {
    /// The graph on `n` vertices with the given edges.
    pub fn new(n: usize, edges: &[VertexPair]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &e in edges {
            for v in [e.a, e.b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { id: v, n });
                }
            }
            if g.has_edge(e.a, e.b) {
                return Err(Error::DuplicateEdge(e));
            }
            g.adj[e.a].insert(e.b);
            g.adj[e.b].insert(e.a);
        }
        Ok(g)
    }

    /// Like [`Graph::new`] but from raw id tuples, so self-loops are reported
    /// as such.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                if u >= n {
                    return Err(Error::VertexOutOfRange { id: u, n });
                }
                return Err(Error::SelfLoop(u));
            }
            pairs.push(VertexPair::new(u, v)?);
        }
        Graph::new(n, &pairs)
    }

    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n] })
    }

    pub fn complete(n: usize) -> Self {
        let full = VertexSet::full(n);
        Graph { n, adj: (0..n).map(|v| full.without(v)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn has_pair(&self, p: VertexPair) -> bool {
        self.has_edge(p.a, p.b)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<VertexPair> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push(VertexPair { a: u, b: v });
            }
        }
        out
    }

    /// Nonedges in lexicographic order.
    pub fn nonedges(&self) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    out.push(VertexPair { a: u, b: v });
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { id: v, n: self.n })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange { id: v, n: self.n }),
            None => Ok(()),
        }
    }

    fn check_pair(&self, p: VertexPair) -> Result<()> {
        self.check_vertex(p.b)
    }

    /// `G ∪ {p}`.
    pub fn with_edge(&self, p: VertexPair) -> Result<Graph> {
        self.check_pair(p)?;
        if self.has_pair(p) {
            return Err(Error::AlreadyAnEdge(p));
        }
        let mut g = self.clone();
        g.adj[p.a].insert(p.b);
        g.adj[p.b].insert(p.a);
        Ok(g)
    }

    /// `G ∪ F`; every member of `F` must be a distinct nonedge.
    pub fn with_edges(&self, pairs: &[VertexPair]) -> Result<Graph> {
        let mut g = self.clone();
        for &p in pairs {
            g = g.with_edge(p)?;
        }
        Ok(g)
    }

    /// `G ∖ {p}`.
    pub fn without_edge(&self, p: VertexPair) -> Result<Graph> {
        self.check_pair(p)?;
        if !self.has_pair(p) {
            return Err(Error::NotAnEdge(p));
        }
        let mut g = self.clone();
        g.adj[p.a].remove(p.b);
        g.adj[p.b].remove(p.a);
        Ok(g)
    }

    /// Contracts the edge `e`. The merged vertex keeps the smaller id's slot
    /// after relabeling; `map[v]` gives the image of every old vertex.
    pub fn contract(&self, e: VertexPair) -> Result<(Graph, Vec<usize>)> {
        self.check_pair(e)?;
        if !self.has_pair(e) {
            return Err(Error::NotAnEdge(e));
        }
        let map: Vec<usize> = (0..self.n)
            .map(|v| match v.cmp(&e.b) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => e.a,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let mut g = Graph::empty(self.n - 1)?;
        for p in self.edges() {
            let (x, y) = (map[p.a], map[p.b]);
            if x != y {
                g.adj[x].insert(y);
                g.adj[y].insert(x);
            }
        }
        Ok((g, map))
    }

    /// Applies a permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for u in 0..self.n {
            adj[perm[u]] = self.adj[u].iter().map(|v| perm[v]).collect();
        }
        Graph { n: self.n, adj }
    }

    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<Subgraph> {
        self.check_set(keep)?;
        let labels = keep.to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            local[v] = i;
        }
        let adj = labels
            .iter()
            .map(|&v| self.adj[v].intersection(keep).iter().map(|w| local[w]).collect())
            .collect();
        Ok(Subgraph { graph: Graph { n: labels.len(), adj }, labels })
    }

    pub fn remove_vertex(&self, v: usize) -> Result<Subgraph> {
        self.check_vertex(v)?;
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Vertices reachable from `start` while staying inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        if !within.contains(start) {
            return VertexSet::EMPTY;
        }
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, each as a
    /// vertex set, ordered by smallest vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut rest = within;
        while let Some(v) = rest.first() {
            let comp = self.reach(v, rest);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertices()).len() == self.n
    }

    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(v) => self.reach(v, within) == within,
        }
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    /// True iff deleting `s` leaves at least two components. Only meaningful
    /// for connected graphs.
    pub fn is_separator(&self, s: VertexSet) -> bool {
        self.components_within(self.vertices().difference(s)).len() >= 2
    }

    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v])).difference(s)
    }

    /// The `U`-components: one induced subgraph on `V(K) ∪ U` per connected
    /// component `K` of `G ∖ U`.
    pub fn u_components(&self, u: VertexSet) -> Result<Vec<Subgraph>> {
        self.check_set(u)?;
        let comps = self.components_within(self.vertices().difference(u));
        if comps.is_empty() {
            return Ok(vec![self.induced_subgraph(u)?]);
        }
        comps.into_iter().map(|k| self.induced_subgraph(k.union(u))).collect()
    }

    /// Largest `k` such that the graph is `k`-connected; `n - 1` for
    /// complete graphs, `0` for disconnected ones.
    pub fn vertex_connectivity(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        if !self.is_connected() {
            return 0;
        }
        let mut best = self.n - 1;
        for s in 0..self.n {
            for t in s + 1..self.n {
                if !self.has_edge(s, t) {
                    best = best.min(self.local_connectivity(s, t, best));
                }
            }
        }
        best
    }

    /// Number of internally vertex-disjoint `s`–`t` paths between
    /// nonadjacent `s` and `t`, stopping early once `cap` is reached.
    fn local_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        // Vertex-split flow network: v_in = 2v, v_out = 2v+1, unit capacity
        // on v_in -> v_out for inner vertices.
        let n2 = 2 * self.n;
        let mut cap_m = vec![vec![0i32; n2]; n2];
        for v in 0..self.n {
            cap_m[2 * v][2 * v + 1] = if v == s || v == t { self.n as i32 } else { 1 };
            for w in self.adj[v] {
                cap_m[2 * v + 1][2 * w] = self.n as i32;
            }
        }
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < cap {
            let mut prev = vec![usize::MAX; n2];
            prev[src] = src;
            let mut queue = VecDeque::from([src]);
            while let Some(x) = queue.pop_front() {
                if x == dst {
                    break;
                }
                for y in 0..n2 {
                    if prev[y] == usize::MAX && cap_m[x][y] > 0 {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[dst] == usize::MAX {
                break;
            }
            let mut y = dst;
            while y != src {
                let x = prev[y];
                cap_m[x][y] -= 1;
                cap_m[y][x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }

    /// All inclusion-minimal `u`–`v` separators with at most `max_size`
    /// vertices, sorted lexicographically. When `uv` is an edge the
    /// separators of `G ∖ uv` are returned.
    pub fn minimal_pair_separators(&self, u: usize, v: usize, max_size: usize) -> Result<Vec<VertexSet>> {
        let p = VertexPair::new(u, v)?;
        self.check_pair(p)?;
        let g = if self.has_pair(p) { self.without_edge(p)? } else { self.clone() };
        let pool: Vec<usize> = g.vertices().without(u).without(v).to_vec();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        g.collect_separators(&pool, 0, max_size, u, v, &mut chosen, &mut out);
        let mut sorted: Vec<(Vec<usize>, VertexSet)> = out.into_iter().map(|s| (s.to_vec(), s)).collect();
        sorted.sort();
        sorted.dedup();
        Ok(sorted.into_iter().map(|(_, s)| s).collect())
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_separators(
        &self,
        pool: &[usize],
        from: usize,
        budget: usize,
        u: usize,
        v: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        let s: VertexSet = chosen.iter().copied().collect();
        if self.is_minimal_separator_of(s, u, v) {
            out.push(s);
            // Supersets of a minimal separator are not minimal.
            return;
        }
        if budget == 0 {
            return;
        }
        for i in from..pool.len() {
            chosen.push(pool[i]);
            self.collect_separators(pool, i + 1, budget - 1, u, v, chosen, out);
            chosen.pop();
        }
    }

    /// `s` separates `u` from `v` and both sides are full components.
    pub fn is_minimal_separator_of(&self, s: VertexSet, u: usize, v: usize) -> bool {
        let rest = self.vertices().difference(s);
        let cu = self.reach(u, rest);
        if cu.contains(v) {
            return false;
        }
        let cv = self.reach(v, rest);
        s.iter().all(|x| self.adj[x].intersects(cu) && self.adj[x].intersects(cv))
    }

    /// True iff `s` separates `u` from `v` (without minimality).
    pub fn separates(&self, s: VertexSet, u: usize, v: usize) -> bool {
        !s.contains(u) && !s.contains(v) && !self.reach(u, self.vertices().difference(s)).contains(v)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", e.a, e.b)?;
        }
        write!(f, "])")
    }
}

/// Finds a bijection `phi` with `g.has_edge(u, v) == h.has_edge(phi[u], phi[v])`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n != h.n || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n).map(|v| h.degree(v)).collect();
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..g.n).collect();
        o.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        o
    };
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let mut phi = vec![usize::MAX; g.n];
    let mut used = VertexSet::EMPTY;
    fn extend(g: &Graph, h: &Graph, order: &[usize], k: usize, phi: &mut Vec<usize>, used: &mut VertexSet) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in h.vertices().difference(*used) {
            if h.degree(w) != g.degree(v) {
                continue;
            }
            let ok = order[..k].iter().all(|&x| g.has_edge(v, x) == h.has_edge(w, phi[x]));
            if ok {
                phi[v] = w;
                used.insert(w);
                if extend(g, h, order, k + 1, phi, used) {
                    return true;
                }
                used.remove(w);
                phi[v] = usize::MAX;
            }
        }
        false
    }
    extend(g, h, &order, 0, &mut phi, &mut used).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn builds_path_and_k5() {
        let p = path3();
        assert_eq!(p.edge_count(), 2);
        assert!(p.has_edge(1, 0) && !p.has_edge(0, 2));
        let k5 = Graph::from_edges(5, &(0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect::<Vec<_>>()).unwrap();
        assert_eq!(k5, Graph::complete(5));
        assert_eq!(k5.edge_count(), 10);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(pair(0, 1))));
        assert_eq!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange { id: 2, n: 2 }));
        assert!(matches!(Graph::empty(200), Err(Error::TooManyVertices(200))));
    }

    #[test]
    fn pairs_are_unordered() {
        assert_eq!(pair(3, 1), pair(1, 3));
        assert_eq!(VertexPair::new(2, 2), Err(Error::DegeneratePair(2)));
    }

    #[test]
    fn induced_subgraphs() {
        let k5 = Graph::complete(5);
        let s = k5.induced_subgraph(set(&[0, 1, 2])).unwrap();
        assert_eq!(s.graph, Graph::complete(3));
        let s = path3().induced_subgraph(set(&[0, 2])).unwrap();
        assert_eq!(s.graph.edge_count(), 0);
        assert_eq!(s.labels, vec![0, 2]);
        let s = path3().induced_subgraph(VertexSet::EMPTY).unwrap();
        assert_eq!(s.graph.n(), 0);
        assert!(path3().induced_subgraph(set(&[5])).is_err());
    }

    #[test]
    fn u_components_examples() {
        let comps = path3().u_components(set(&[1])).unwrap();
        let sets: Vec<_> = comps.iter().map(|c| c.host_vertices()).collect();
        assert_eq!(sets, vec![set(&[0, 1]), set(&[1, 2])]);

        let comps = Graph::complete(5).u_components(set(&[0])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph, Graph::complete(5));

        // Two K4s sharing the triangle {0,1,2}.
        let mut edges = vec![(0, 1), (0, 2), (1, 2)];
        edges.extend([(0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)]);
        let g = Graph::from_edges(5, &edges).unwrap();
        let comps = g.u_components(set(&[0, 1, 2])).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.graph == Graph::complete(4)));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(Graph::complete(5).vertex_connectivity(), 4);
        assert_eq!(path3().vertex_connectivity(), 1);
        assert_eq!(Graph::empty(3).unwrap().vertex_connectivity(), 0);
        assert_eq!(Graph::complete(1).vertex_connectivity(), 0);
    }

    #[test]
    fn pair_separator_examples() {
        assert_eq!(path3().minimal_pair_separators(0, 2, 3).unwrap(), vec![set(&[1])]);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.minimal_pair_separators(0, 2, 3).unwrap(), vec![set(&[1, 3])]);
        let k4e = Graph::complete(4).without_edge(pair(0, 1)).unwrap();
        assert_eq!(k4e.minimal_pair_separators(0, 1, 2).unwrap(), vec![set(&[2, 3])]);
        // Edge case: uv an edge, separators are sought in G ∖ uv.
        assert_eq!(Graph::complete(4).minimal_pair_separators(0, 1, 2).unwrap(), vec![set(&[2, 3])]);
        assert_eq!(path3().minimal_pair_separators(1, 1, 2), Err(Error::DegeneratePair(1)));
    }

    #[test]
    fn contraction_merges_neighborhoods() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (g, map) = c4.contract(pair(0, 1)).unwrap();
        assert_eq!(map, vec![0, 0, 1, 2]);
        assert_eq!(g, Graph::complete(3));
        assert!(c4.contract(pair(0, 2)).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c4b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let phi = find_isomorphism(&c4, &c4b).unwrap();
        assert_eq!(c4.relabel(&phi), c4b);
        assert!(find_isomorphism(&c4, &Graph::complete(4)).is_none());
    }
}
