//! Rooted minors: minor maps, constrained search, a brute-force oracle and
//! the vertex / component exchanges.
//!
//! A minor map assigns host vertices to pattern vertices so that every
//! preimage `[p]^{-1}` is nonempty and connected and every pattern edge is
//! crossed by at least one host edge. Host edges joining two branch sets
//! whose images are not adjacent in the pattern count as deleted.
//!
//! The search enumerates partitions of one host component into exactly
//! `k = |V(pattern)|` connected blocks and then looks for a bijection from
//! blocks onto pattern vertices. Absorbing leftover vertices into adjacent
//! branch sets never destroys a minor, so restricting to total maps on a
//! component loses nothing, and it keeps the preserve / retain semantics
//! identical to the surjective maps they are defined for.

use std::fmt;

use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::graph::{pair, Graph, VertexPair, VertexSet};
use crate::patterns;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest host accepted by [`brute_force_minor_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 10;

/// Node budget for minor searches: `SIP3_BUDGET` if set, else
/// [`DEFAULT_BUDGET`].
pub fn default_budget() -> u64 {
    std::env::var("SIP3_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Side conditions on a rooted minor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinorConstraints {
    /// `(host vertex, pattern vertex)` forced assignments.
    pub pins: Vec<(usize, usize)>,
    /// Host pairs whose endpoints must land in distinct branch sets.
    pub preserve: Vec<VertexPair>,
    /// Host pairs that must be preserved and not doubled.
    pub retain: Vec<VertexPair>,
    /// Forbid deleted edges: only contractions are allowed.
    pub induced: bool,
}

impl MinorConstraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn preserving(p: VertexPair) -> Self {
        Self { preserve: vec![p], ..Self::default() }
    }

    pub fn retaining(p: VertexPair) -> Self {
        Self { retain: vec![p], ..Self::default() }
    }

    pub fn pin(mut self, host: usize, pattern: usize) -> Self {
        self.pins.push((host, pattern));
        self
    }

    pub fn induced(mut self) -> Self {
        self.induced = true;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.pins.is_empty() && self.preserve.is_empty() && self.retain.is_empty() && !self.induced
    }

    fn check(&self, host: &Graph, pattern: &Graph) -> Result<()> {
        let in_host = |v: usize| {
            if v < host.n() {
                Ok(())
            } else {
                Err(Error::VertexOutOfRange { id: v, n: host.n() })
            }
        };
        for &(h, p) in &self.pins {
            in_host(h)?;
            if p >= pattern.n() {
                return Err(Error::VertexOutOfRange { id: p, n: pattern.n() });
            }
        }
        for (i, &(h, p)) in self.pins.iter().enumerate() {
            for &(h2, p2) in &self.pins[..i] {
                if h == h2 && p != p2 {
                    return Err(Error::Precondition(format!("host vertex {h} pinned to both {p2} and {p}")));
                }
            }
        }
        for p in self.preserve.iter().chain(&self.retain) {
            in_host(p.b())?;
        }
        Ok(())
    }

    /// Host vertices mentioned by any constraint.
    fn touched(&self) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for &(h, _) in &self.pins {
            s.insert(h);
        }
        for p in self.preserve.iter().chain(&self.retain) {
            s = s.union(p.as_set());
        }
        s
    }
}

/// Why a candidate minor map is not one.
#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum InvalidMinor {
    #[error("branch map has length {got}, host has {expected} vertices")]
    WrongLength { got: usize, expected: usize },
    #[error("host vertex {host} maps to {image}, pattern has {n} vertices")]
    ImageOutOfRange { host: usize, image: usize, n: usize },
    #[error("pattern vertex {0} has an empty preimage")]
    EmptyBranch(usize),
    #[error("preimage of pattern vertex {0} is disconnected in the host")]
    DisconnectedBranch(usize),
    #[error("pattern edge {0} is not crossed by any host edge")]
    MissingEdge(VertexPair),
}

/// A rooted minor `[G]` of `host` onto `pattern`.
#[derive(Clone, PartialEq, Eq)]
pub struct MinorMap {
    host: Graph,
    pattern: Graph,
    branch: Vec<Option<usize>>,
}

impl MinorMap {
    /// `branch[v]` is `[v]`, or `None` for a deleted host vertex.
    pub fn new(host: Graph, pattern: Graph, branch: Vec<Option<usize>>) -> Self {
        MinorMap { host, pattern, branch }
    }

    /// Build from branch sets: `sets[p] = [p]^{-1}`.
    pub fn from_branch_sets(host: Graph, pattern: Graph, sets: &[VertexSet]) -> Result<Self> {
        if sets.len() != pattern.n() {
            return Err(Error::Precondition(format!(
                "{} branch sets for a pattern on {} vertices",
                sets.len(),
                pattern.n()
            )));
        }
        let mut branch = vec![None; host.n()];
        for (p, s) in sets.iter().enumerate() {
            for v in s.iter() {
                if v >= host.n() {
                    return Err(Error::VertexOutOfRange { id: v, n: host.n() });
                }
                if branch[v].is_some() {
                    return Err(Error::Precondition(format!("host vertex {v} is in two branch sets")));
                }
                branch[v] = Some(p);
            }
        }
        Ok(MinorMap { host, pattern, branch })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn branch(&self) -> &[Option<usize>] {
        &self.branch
    }

    /// `[v]`.
    pub fn image(&self, v: usize) -> Option<usize> {
        self.branch.get(v).copied().flatten()
    }

    /// `[p]^{-1}`.
    pub fn preimage(&self, p: usize) -> VertexSet {
        self.branch.iter().enumerate().filter(|(_, b)| **b == Some(p)).map(|(v, _)| v).collect()
    }

    pub fn branch_sets(&self) -> Vec<VertexSet> {
        let mut sets = vec![VertexSet::EMPTY; self.pattern.n()];
        for (v, b) in self.branch.iter().enumerate() {
            if let Some(p) = *b {
                if p < sets.len() {
                    sets[p].insert(v);
                }
            }
        }
        sets
    }

    pub fn is_total(&self) -> bool {
        self.branch.iter().all(Option::is_some)
    }

    /// Host edges between `[p]^{-1}` and `[q]^{-1}`.
    pub fn crossing_edges(&self, p: usize, q: usize) -> Vec<VertexPair> {
        let (bp, bq) = (self.preimage(p), self.preimage(q));
        let mut out = Vec::new();
        for x in bp.iter() {
            for y in self.host.neighbors(x).intersection(bq).iter() {
                out.push(pair(x, y));
            }
        }
        out.sort_unstable();
        out
    }

    /// Host edges whose endpoints lie in branch sets of nonadjacent pattern
    /// vertices.
    pub fn deleted(&self) -> Vec<VertexPair> {
        self.host
            .edges()
            .into_iter()
            .filter(|e| match (self.image(e.a()), self.image(e.b())) {
                (Some(p), Some(q)) => p != q && !self.pattern.has_edge(p, q),
                _ => false,
            })
            .collect()
    }

    /// No deleted edges and no deleted vertices.
    pub fn is_induced(&self) -> bool {
        self.is_total() && self.deleted().is_empty()
    }

    /// `[u] != [v]`, both assigned.
    pub fn is_preserved(&self, p: VertexPair) -> bool {
        matches!((self.image(p.a()), self.image(p.b())), (Some(x), Some(y)) if x != y)
    }

    pub fn is_contracted(&self, p: VertexPair) -> bool {
        matches!((self.image(p.a()), self.image(p.b())), (Some(x), Some(y)) if x == y)
    }

    /// Host edges that map onto the pattern edge `[u][v]`; empty when the
    /// images are not adjacent in the pattern.
    pub fn pair_preimage(&self, p: VertexPair) -> Vec<VertexPair> {
        match (self.image(p.a()), self.image(p.b())) {
            (Some(x), Some(y)) if x != y && self.pattern.has_edge(x, y) => self.crossing_edges(x, y),
            _ => Vec::new(),
        }
    }

    /// Preserved, and `[uv]^{-1}` holds an edge besides `uv` itself.
    pub fn is_doubled(&self, p: VertexPair) -> bool {
        let own = usize::from(self.host.has_pair(p));
        self.is_preserved(p) && self.pair_preimage(p).len() > own
    }

    pub fn is_retained(&self, p: VertexPair) -> bool {
        self.is_preserved(p) && !self.is_doubled(p)
    }

    /// All minor-map invariants, with the first violation as the reason.
    pub fn check(&self) -> std::result::Result<(), InvalidMinor> {
        if self.branch.len() != self.host.n() {
            return Err(InvalidMinor::WrongLength { got: self.branch.len(), expected: self.host.n() });
        }
        for (v, b) in self.branch.iter().enumerate() {
            if let Some(p) = *b {
                if p >= self.pattern.n() {
                    return Err(InvalidMinor::ImageOutOfRange { host: v, image: p, n: self.pattern.n() });
                }
            }
        }
        let sets = self.branch_sets();
        for (p, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(InvalidMinor::EmptyBranch(p));
            }
            if !self.host.is_connected_within(*s) {
                return Err(InvalidMinor::DisconnectedBranch(p));
            }
        }
        for e in self.pattern.edges() {
            let crossed = sets[e.a()].iter().any(|x| self.host.neighbors(x).intersects(sets[e.b()]));
            if !crossed {
                return Err(InvalidMinor::MissingEdge(e));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn satisfies(&self, c: &MinorConstraints) -> bool {
        c.pins.iter().all(|&(h, p)| self.image(h) == Some(p))
            && c.preserve.iter().all(|&p| self.is_preserved(p))
            && c.retain.iter().all(|&p| self.is_retained(p))
            && (!c.induced || self.deleted().is_empty())
    }
}

impl fmt::Debug for MinorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.branch_sets()).finish()
    }
}

/// Vertex orbits of `Aut(g)`: `rep[v]` is the smallest vertex in `v`'s orbit.
pub fn orbit_representatives(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut rep: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if rep[v] != v {
            continue;
        }
        for w in v + 1..n {
            if rep[w] == w && g.degree(w) == g.degree(v) && automorphism_mapping(g, v, w).is_some() {
                rep[w] = v;
            }
        }
    }
    rep
}

/// Some automorphism of `g` sending `from` to `to`.
pub fn automorphism_mapping(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).filter(|&v| v != from).collect();
    order.sort_by_key(|&v| (!g.has_edge(from, v), std::cmp::Reverse(g.degree(v))));
    order.insert(0, from);
    let mut phi = vec![usize::MAX; n];
    fn extend(g: &Graph, order: &[usize], k: usize, phi: &mut [usize], used: VertexSet, forced: (usize, usize)) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let cands: Vec<usize> =
            if v == forced.0 { vec![forced.1] } else { g.vertices().difference(used).iter().collect() };
        for w in cands {
            if used.contains(w) || g.degree(w) != g.degree(v) {
                continue;
            }
            if order[..k].iter().all(|&x| g.has_edge(v, x) == g.has_edge(w, phi[x])) {
                phi[v] = w;
                if extend(g, order, k + 1, phi, used.with(w), forced) {
                    return true;
                }
            }
        }
        phi[v] = usize::MAX;
        false
    }
    extend(g, &order, 0, &mut phi, VertexSet::EMPTY, (from, to)).then_some(phi)
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    c: &'a MinorConstraints,
    k: usize,
    order: Vec<usize>,
    block_of: Vec<usize>,
    blocks: Vec<VertexSet>,
    block_pin: Vec<Option<usize>>,
    pin_of: Vec<Option<usize>>,
    /// Pairs whose endpoints must be split, as `(later, earlier)` by search
    /// position so the check happens when the later endpoint is placed.
    split: Vec<Vec<usize>>,
    unprocessed: VertexSet,
    pattern_degree: Vec<usize>,
    pattern_degrees_desc: Vec<usize>,
    min_pattern_degree: usize,
    first_candidates: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNASSIGNED: usize = usize::MAX;

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    fn run(&mut self, i: usize) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        if i == self.order.len() {
            return if self.blocks.len() == self.k { self.embed() } else { Ok(None) };
        }
        let v = self.order[i];
        self.unprocessed.remove(v);
        let open = self.blocks.len();
        for b in 0..=open {
            if b == open && open == self.k {
                break;
            }
            if !self.may_join(v, b) {
                continue;
            }
            let prev_pin = if b == open { None } else { self.block_pin[b] };
            if b == open {
                self.blocks.push(VertexSet::singleton(v));
                self.block_pin.push(self.pin_of[v]);
            } else {
                self.blocks[b].insert(v);
                if self.pin_of[v].is_some() {
                    self.block_pin[b] = self.pin_of[v];
                }
            }
            self.block_of[v] = b;
            if self.feasible() {
                if let Some(found) = self.run(i + 1)? {
                    return Ok(Some(found));
                }
            }
            self.block_of[v] = UNASSIGNED;
            if b == open {
                self.blocks.pop();
                self.block_pin.pop();
            } else {
                self.blocks[b].remove(v);
                self.block_pin[b] = prev_pin;
            }
        }
        self.unprocessed.insert(v);
        Ok(None)
    }

    fn may_join(&self, v: usize, b: usize) -> bool {
        if self.split[v].iter().any(|&w| self.block_of[w] == b) {
            return false;
        }
        if let Some(p) = self.pin_of[v] {
            if b < self.blocks.len() {
                if matches!(self.block_pin[b], Some(q) if q != p) {
                    return false;
                }
            }
            if self.block_pin.iter().enumerate().any(|(b2, q)| b2 != b && *q == Some(p)) {
                return false;
            }
        }
        true
    }

    fn feasible(&self) -> bool {
        if self.k - self.blocks.len() > self.unprocessed.len() {
            return false;
        }
        for (bi, &b) in self.blocks.iter().enumerate() {
            let room = b.union(self.unprocessed);
            let first = b.first().expect("blocks are nonempty");
            if !b.is_subset(self.host.reach(first, room)) {
                return false;
            }
            let nb = self.host.neighborhood_of_set(b);
            if !nb.intersects(self.unprocessed) {
                let deg = self.blocks.iter().filter(|&&o| nb.intersects(o)).count();
                let need = match self.block_pin[bi] {
                    Some(p) => self.pattern_degree[p],
                    None => self.min_pattern_degree,
                };
                if deg < need {
                    return false;
                }
            }
        }
        true
    }

    /// Bijection from blocks onto pattern vertices.
    fn embed(&mut self) -> Result<Option<Vec<usize>>> {
        let k = self.k;
        let qadj: Vec<VertexSet> = (0..k)
            .map(|b| {
                let nb = self.host.neighborhood_of_set(self.blocks[b]);
                (0..k).filter(|&o| o != b && nb.intersects(self.blocks[o])).collect()
            })
            .collect();
        let qedges: usize = qadj.iter().map(|s| s.len()).sum::<usize>() / 2;
        if qedges < self.pattern.edge_count() || (self.c.induced && qedges != self.pattern.edge_count()) {
            return Ok(None);
        }
        let mut qdeg: Vec<usize> = qadj.iter().map(|s| s.len()).collect();
        qdeg.sort_unstable_by(|a, b| b.cmp(a));
        if qdeg.iter().zip(&self.pattern_degrees_desc).any(|(q, p)| q < p) {
            return Ok(None);
        }
        let mut border: Vec<usize> = (0..k).collect();
        border.sort_by_key(|&b| (self.block_pin[b].is_none(), std::cmp::Reverse(qadj[b].len())));
        let mut phi = vec![UNASSIGNED; k];
        let found = self.assign(&qadj, &border, 0, &mut phi, VertexSet::EMPTY)?;
        Ok(found.then_some(phi))
    }

    fn assign(&mut self, qadj: &[VertexSet], border: &[usize], i: usize, phi: &mut [usize], used: VertexSet) -> Result<bool> {
        self.tick()?;
        if i == border.len() {
            return Ok(self.retain_ok(phi));
        }
        let b = border[i];
        let candidates: Vec<usize> = match self.block_pin[b] {
            Some(p) => vec![p],
            None if i == 0 => self.first_candidates.clone(),
            None => (0..self.k).collect(),
        };
        for p in candidates {
            if used.contains(p) || self.pattern_degree[p] > qadj[b].len() {
                continue;
            }
            if self.c.induced && self.pattern_degree[p] != qadj[b].len() {
                continue;
            }
            let consistent = border[..i].iter().all(|&o| {
                let pe = self.pattern.has_edge(p, phi[o]);
                let qe = qadj[b].contains(o);
                (!pe || qe) && (!self.c.induced || pe == qe)
            });
            if !consistent {
                continue;
            }
            phi[b] = p;
            if self.assign(qadj, border, i + 1, phi, used.with(p))? {
                return Ok(true);
            }
            phi[b] = UNASSIGNED;
        }
        Ok(false)
    }

    fn retain_ok(&self, phi: &[usize]) -> bool {
        self.c.retain.iter().all(|r| {
            let (bx, by) = (self.block_of[r.a()], self.block_of[r.b()]);
            if bx == by {
                return false;
            }
            if !self.pattern.has_edge(phi[bx], phi[by]) {
                return true;
            }
            let crossing: usize = self.blocks[bx].iter().map(|x| self.host.neighbors(x).intersection(self.blocks[by]).len()).sum();
            crossing <= usize::from(self.host.has_pair(*r))
        })
    }
}

fn bfs_order(host: &Graph, start: usize, within: VertexSet) -> Vec<usize> {
    let mut order = vec![start];
    let mut seen = VertexSet::singleton(start);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in host.neighbors(v).intersection(within).difference(seen).iter() {
            seen.insert(w);
            order.push(w);
        }
        i += 1;
    }
    order
}

/// Complete search for a rooted minor of `pattern` in `host` satisfying `c`.
///
/// `Ok(None)` means no such minor exists. A search that runs out of
/// `budget` nodes fails with [`Error::BudgetExhausted`].
pub fn find_rooted_minor(host: &Graph, pattern: &Graph, c: &MinorConstraints, budget: u64) -> Result<Option<MinorMap>> {
    if pattern.n() == 0 || !pattern.is_connected() {
        return Err(Error::Precondition("pattern must be nonempty and connected".into()));
    }
    c.check(host, pattern)?;
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let touched = c.touched();
    let comps: Vec<VertexSet> = host
        .components()
        .into_iter()
        .filter(|comp| comp.len() >= pattern.n() && touched.is_subset(*comp))
        .collect();
    let k = pattern.n();
    let pattern_degree: Vec<usize> = (0..k).map(|p| pattern.degree(p)).collect();
    let mut pattern_degrees_desc = pattern_degree.clone();
    pattern_degrees_desc.sort_unstable_by(|a, b| b.cmp(a));
    let first_candidates: Vec<usize> = {
        let rep = orbit_representatives(pattern);
        (0..k).filter(|&p| rep[p] == p).collect()
    };
    let mut pin_of = vec![None; host.n()];
    for &(h, p) in &c.pins {
        pin_of[h] = Some(p);
    }
    let mut nodes = 0;
    for comp in comps {
        let start = c.pins.first().map(|&(h, _)| h).unwrap_or_else(|| {
            comp.iter().max_by_key(|&v| (host.degree(v), std::cmp::Reverse(v))).expect("nonempty component")
        });
        let order = bfs_order(host, start, comp);
        let mut pos = vec![usize::MAX; host.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut split = vec![Vec::new(); host.n()];
        for p in c.preserve.iter().chain(&c.retain) {
            let (x, y) = if pos[p.a()] > pos[p.b()] { (p.a(), p.b()) } else { (p.b(), p.a()) };
            split[x].push(y);
        }
        let mut s = Search {
            host,
            pattern,
            c,
            k,
            order,
            block_of: vec![UNASSIGNED; host.n()],
            blocks: Vec::with_capacity(k),
            block_pin: Vec::with_capacity(k),
            pin_of: pin_of.clone(),
            split,
            unprocessed: comp,
            pattern_degree: pattern_degree.clone(),
            pattern_degrees_desc: pattern_degrees_desc.clone(),
            min_pattern_degree: pattern.min_degree(),
            first_candidates: if c.pins.is_empty() { first_candidates.clone() } else { (0..k).collect() },
            nodes,
            budget,
        };
        let found = s.run(0)?;
        nodes = s.nodes;
        if let Some(phi) = found {
            let branch = (0..host.n())
                .map(|v| if s.block_of[v] == UNASSIGNED { None } else { Some(phi[s.block_of[v]]) })
                .collect();
            let m = MinorMap::new(host.clone(), pattern.clone(), branch);
            debug_assert!(m.is_valid() && m.satisfies(c), "search returned {m:?}");
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Every `d`-forbidden minor of `g` is tried in turn; the first
/// `f`-preserving one is returned.
pub fn find_preserving_forbidden_minor(g: &Graph, f: VertexPair, d: usize, budget: u64) -> Result<Option<MinorMap>> {
    if !(1..=3).contains(&d) {
        return Err(Error::DimensionOutOfRange(d));
    }
    if f.b() >= g.n() {
        return Err(Error::VertexOutOfRange { id: f.b(), n: g.n() });
    }
    for pattern in patterns::forbidden_minors(d) {
        if let Some(m) = find_rooted_minor(g, &pattern, &MinorConstraints::preserving(f), budget)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether some K5 or K2,2,2 minor of `g` preserves `f`.
pub fn has_preserving_forbidden_minor(g: &Graph, f: VertexPair) -> Result<bool> {
    Ok(find_preserving_forbidden_minor(g, f, 3, default_budget())?.is_some())
}

/// Exhaustive reference: every total map from a host component onto the
/// pattern, enumerated as a set partition together with a labeling of its
/// blocks. No pruning and no symmetry reduction.
pub fn brute_force_minor_oracle(host: &Graph, pattern: &Graph, c: &MinorConstraints) -> Result<bool> {
    if host.n() > ORACLE_MAX_VERTICES {
        return Err(Error::HostTooLarge { n: host.n(), max: ORACLE_MAX_VERTICES });
    }
    c.check(host, pattern)?;
    let k = pattern.n();
    for comp in host.components() {
        let verts = comp.to_vec();
        if verts.len() < k {
            continue;
        }
        let mut label = vec![0usize; verts.len()];
        if partitions(&verts, k, 0, 0, &mut label, &mut |blocks| check_all_labelings(host, pattern, c, blocks)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Restricted growth strings with exactly `k` blocks; stops when `visit`
/// returns true.
fn partitions(verts: &[usize], k: usize, i: usize, used: usize, label: &mut [usize], visit: &mut dyn FnMut(&[VertexSet]) -> bool) -> bool {
    if i == verts.len() {
        if used != k {
            return false;
        }
        let mut blocks = vec![VertexSet::EMPTY; k];
        for (j, &v) in verts.iter().enumerate() {
            blocks[label[j]].insert(v);
        }
        return visit(&blocks);
    }
    for b in 0..=used.min(k - 1) {
        label[i] = b;
        if partitions(verts, k, i + 1, used.max(b + 1), label, visit) {
            return true;
        }
    }
    false
}

fn check_all_labelings(host: &Graph, pattern: &Graph, c: &MinorConstraints, blocks: &[VertexSet]) -> bool {
    if !blocks.iter().all(|&b| host.is_connected_within(b)) {
        return false;
    }
    let k = blocks.len();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut branch = vec![None; host.n()];
        for (bi, b) in blocks.iter().enumerate() {
            for v in b.iter() {
                branch[v] = Some(perm[bi]);
            }
        }
        let m = MinorMap::new(host.clone(), pattern.clone(), branch);
        if m.is_valid() && m.satisfies(c) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The two exchange operations on a minor map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exchange {
    /// Exchange `x` and fix `fixed` (a component of `[a]^{-1} \ x`).
    Vertex { x: usize, fixed: VertexSet },
    /// Exchange `moved`, a component of `[a]^{-1} \ fixed`.
    Component { fixed: VertexSet, moved: VertexSet },
}

/// Move part of `[a]^{-1}` into `[b]^{-1}`. The result is not validated.
pub fn apply_exchange(m: &MinorMap, a: usize, b: usize, ex: &Exchange) -> Result<MinorMap> {
    let pat = m.pattern();
    if a >= pat.n() || b >= pat.n() {
        return Err(Error::VertexOutOfRange { id: a.max(b), n: pat.n() });
    }
    if !pat.has_edge(a, b) {
        return Err(Error::Precondition(format!("{a}{b} is not a pattern edge")));
    }
    let host = m.host();
    let ha = m.preimage(a);
    let hb = m.preimage(b);
    let touches_b = |s: VertexSet| host.neighborhood_of_set(s).intersects(hb);
    let moved = match ex {
        Exchange::Vertex { x, fixed } => {
            if !ha.contains(*x) {
                return Err(Error::Precondition(format!("x = {x} is not in [a]^-1")));
            }
            if !touches_b(VertexSet::singleton(*x)) {
                return Err(Error::Precondition(format!("x = {x} has no neighbor in [b]^-1")));
            }
            if !host.components_within(ha.without(*x)).contains(fixed) {
                return Err(Error::Precondition("J is not a component of [a]^-1 \\ x".into()));
            }
            ha.difference(*fixed)
        }
        Exchange::Component { fixed, moved } => {
            if fixed.is_empty() || !fixed.is_subset(ha) || !host.is_connected_within(*fixed) {
                return Err(Error::Precondition("J is not a connected subset of [a]^-1".into()));
            }
            if !host.components_within(ha.difference(*fixed)).contains(moved) {
                return Err(Error::Precondition("K is not a component of [a]^-1 \\ J".into()));
            }
            if !touches_b(*moved) {
                return Err(Error::Precondition("K has no vertex with a neighbor in [b]^-1".into()));
            }
            *moved
        }
    };
    let mut branch = m.branch().to_vec();
    for v in moved.iter() {
        branch[v] = Some(b);
    }
    Ok(MinorMap::new(host.clone(), pat.clone(), branch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::*;

    fn b() -> u64 {
        DEFAULT_BUDGET
    }

    #[test]
    fn identity_minor_is_valid() {
        let m = MinorMap::new(k5(), k5(), (0..5).map(Some).collect());
        assert_eq!(m.check(), Ok(()));
        assert!(m.is_induced());
    }

    #[test]
    fn invalid_maps_report_a_reason() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let k2 = Graph::complete(2);
        let m = MinorMap::new(path.clone(), k2.clone(), vec![Some(0), Some(1), Some(1), Some(0)]);
        assert_eq!(m.check(), Err(InvalidMinor::DisconnectedBranch(0)));
        let two = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let m = MinorMap::new(two, k2, vec![Some(0), Some(0), Some(1)]);
        assert_eq!(m.check(), Err(InvalidMinor::MissingEdge(pair(0, 1))));
    }

    #[test]
    fn petersen_has_a_k5_minor() {
        let m = find_rooted_minor(&petersen(), &k5(), &MinorConstraints::none(), b()).unwrap();
        assert!(m.unwrap().is_valid());
        assert!(brute_force_minor_oracle(&petersen(), &k5(), &MinorConstraints::none()).unwrap());
    }

    #[test]
    fn pattern_larger_than_host() {
        assert!(find_rooted_minor(&k4(), &k5(), &MinorConstraints::none(), b()).unwrap().is_none());
    }

    #[test]
    fn winged_k5_forces_contraction_of_the_wing() {
        let w = winged_k5();
        let f = pair(WING.0, WING.1);
        assert!(find_rooted_minor(&w, &k5(), &MinorConstraints::preserving(f), b()).unwrap().is_none());
        assert!(find_rooted_minor(&w, &k5(), &MinorConstraints::none(), b()).unwrap().is_some());
        assert!(!brute_force_minor_oracle(&w, &k5(), &MinorConstraints::preserving(f)).unwrap());
        assert!(!brute_force_minor_oracle(&w, &k222(), &MinorConstraints::preserving(f)).unwrap());
        assert!(!has_preserving_forbidden_minor(&w, f).unwrap());
    }

    #[test]
    fn winged_k222_forces_contraction_of_the_wing() {
        let w = winged_k222();
        let f = pair(WING.0, WING.1);
        for p in [k5(), k222()] {
            assert!(!brute_force_minor_oracle(&w, &p, &MinorConstraints::preserving(f)).unwrap());
        }
        assert!(brute_force_minor_oracle(&w, &k222(), &MinorConstraints::none()).unwrap());
        assert!(!has_preserving_forbidden_minor(&w, f).unwrap());
    }

    #[test]
    fn k5_preserves_every_pair() {
        for e in k5().edges() {
            assert!(has_preserving_forbidden_minor(&k5(), e).unwrap());
        }
        assert!(!has_preserving_forbidden_minor(&k4(), pair(0, 1)).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let k5p = MinorConstraints::preserving(pair(0, 1));
        assert!(brute_force_minor_oracle(&k5(), &k5(), &k5p).unwrap());
        let tree = Graph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert!(!brute_force_minor_oracle(&tree, &k3(), &MinorConstraints::none()).unwrap());
        assert!(matches!(
            brute_force_minor_oracle(&Graph::complete(11), &k3(), &MinorConstraints::none()),
            Err(Error::HostTooLarge { .. })
        ));
    }

    #[test]
    fn prism_is_planar_so_has_no_k5_minor() {
        assert!(!brute_force_minor_oracle(&c5xc2(), &k5(), &MinorConstraints::none()).unwrap());
        assert!(find_rooted_minor(&c5xc2(), &k5(), &MinorConstraints::none(), b()).unwrap().is_none());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let r = find_rooted_minor(&petersen(), &k5(), &MinorConstraints::none(), 3);
        assert_eq!(r.unwrap_err(), Error::BudgetExhausted(3));
    }

    #[test]
    fn pins_are_respected() {
        let c = MinorConstraints::none().pin(0, 2).pin(5, 4);
        let m = find_rooted_minor(&petersen(), &k5(), &c, b()).unwrap().unwrap();
        assert!(m.satisfies(&c));
        let bad = MinorConstraints::none().pin(0, 1).pin(0, 2);
        assert!(find_rooted_minor(&k5(), &k5(), &bad, b()).is_err());
    }

    #[test]
    fn retained_pairs_have_a_single_crossing_edge() {
        let f = pair(0, 1);
        let m = find_rooted_minor(&k5(), &k5(), &MinorConstraints::retaining(f), b()).unwrap().unwrap();
        assert!(m.is_retained(f));
        let (x, y) = (m.image(0).unwrap(), m.image(1).unwrap());
        assert_eq!(m.crossing_edges(x, y), vec![f]);
    }

    #[test]
    fn vertex_exchange_on_a_path() {
        // a=0, x=1, b=2.
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = MinorMap::new(path, Graph::complete(2), vec![Some(0), Some(0), Some(1)]);
        let ex = Exchange::Vertex { x: 1, fixed: VertexSet::singleton(0) };
        let out = apply_exchange(&m, 0, 1, &ex).unwrap();
        assert_eq!(out.branch_sets(), vec![VertexSet::singleton(0), [1, 2].into_iter().collect()]);
        assert!(out.is_valid());
    }

    #[test]
    fn component_exchange_rejects_a_non_component() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = MinorMap::new(path, Graph::complete(2), vec![Some(0), Some(0), Some(0), Some(1)]);
        let ex = Exchange::Component { fixed: VertexSet::singleton(0), moved: VertexSet::singleton(2) };
        assert!(apply_exchange(&m, 0, 1, &ex).is_err());
        let ex = Exchange::Component { fixed: VertexSet::singleton(0), moved: [1, 2].into_iter().collect() };
        assert!(apply_exchange(&m, 0, 1, &ex).unwrap().is_valid());
    }

    #[test]
    fn every_legal_exchange_on_a_triangle_stays_valid() {
        let tri = k3();
        let k2 = Graph::complete(2);
        let mut checked = 0;
        for labels in 0..8u32 {
            let branch: Vec<Option<usize>> = (0..3).map(|v| Some((labels >> v & 1) as usize)).collect();
            let m = MinorMap::new(tri.clone(), k2.clone(), branch);
            if !m.is_valid() {
                continue;
            }
            for (a, bb) in [(0, 1), (1, 0)] {
                let ha = m.preimage(a);
                for x in ha.iter() {
                    for fixed in tri.components_within(ha.without(x)) {
                        let ex = Exchange::Vertex { x, fixed };
                        if let Ok(out) = apply_exchange(&m, a, bb, &ex) {
                            assert!(out.is_valid());
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_representatives(&k5()), vec![0; 5]);
        assert_eq!(orbit_representatives(&v8()), vec![0; 8]);
        let w = winged_k5();
        let rep = orbit_representatives(&w);
        assert_eq!(rep[0], rep[1]);
        assert_ne!(rep[0], rep[2]);
    }

    #[test]
    fn induced_search_forbids_deletions() {
        // C4 has no induced K3 minor without contraction; contracting any edge gives K3.
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let m = find_rooted_minor(&c4, &k3(), &MinorConstraints::none().induced(), b()).unwrap().unwrap();
        assert!(m.deleted().is_empty());
        // K4 minus nothing: an induced K3 minor must contract, leaving a double crossing.
        let k4 = k4();
        let m = find_rooted_minor(&k4, &k3(), &MinorConstraints::none().induced(), b()).unwrap().unwrap();
        assert!(m.is_induced());
    }
}
