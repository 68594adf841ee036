//! The d-SIP decider (d <= 3), convexity for d <= 2, edge types, minimal
//! pairs and winged-minor search.
//!
//! `(G, f)` has the d-SIP iff every atom of `G + f` containing `f` has no
//! `f`-preserving d-forbidden minor.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::decomposition::decompose_atoms;
use crate::error::{Error, Result};
use crate::flattenability::is_d_flattenable;
use crate::graph::{Graph, VertexPair, VertexSet};
use crate::minors::{default_budget, find_preserving_forbidden_minor, find_rooted_minor, MinorConstraints, MinorMap};
use crate::patterns;

/// Largest `G` accepted by [`classify_edge`] and [`is_minimal_pair`] unless a
/// larger limit is passed explicitly.
pub const CLASSIFY_MAX_VERTICES: usize = 12;

#[derive(Clone, Debug)]
pub struct SipVerdict {
    pub answer: bool,
    /// An `f`-preserving forbidden minor of [`atom`](Self::atom), in the
    /// atom's local labels (increasing host ids).
    pub witness: Option<MinorMap>,
    pub atom: Option<VertexSet>,
}

impl SipVerdict {
    /// The witness's branch sets in host labels.
    pub fn witness_branch_sets(&self) -> Option<Vec<VertexSet>> {
        let (m, atom) = (self.witness.as_ref()?, self.atom?);
        let labels = atom.to_vec();
        Some(m.branch_sets().into_iter().map(|s| s.iter().map(|i| labels[i]).collect()).collect())
    }
}

fn check_pair(g: &Graph, f: VertexPair) -> Result<()> {
    if f.b() >= g.n() {
        return Err(Error::VertexOutOfRange { id: f.b(), n: g.n() });
    }
    if g.has_pair(f) {
        return Err(Error::AlreadyAnEdge(f));
    }
    Ok(())
}

/// Atoms of `h` that contain both endpoints of `f`.
fn atoms_containing(h: &Graph, f: VertexPair) -> Result<Vec<VertexSet>> {
    Ok(decompose_atoms(h)?.atoms_containing(f.as_set()).collect())
}

/// The d-forbidden minor of atom `a` that preserves `f`, if any.
fn atom_witness(h: &Graph, atom: VertexSet, f: VertexPair, d: usize) -> Result<Option<MinorMap>> {
    let sub = h.induced_subgraph(atom)?;
    let lf = sub.local_pair(f).expect("atom contains f");
    let preserving = find_preserving_forbidden_minor(&sub.graph, lf, d, default_budget())?;
    if d <= 2 {
        let plain = find_rooted_minor(&sub.graph, &Graph::complete(d + 2), &MinorConstraints::none(), default_budget())?;
        if plain.is_some() != preserving.is_some() {
            return Err(Error::Inconsistency(format!(
                "atom {atom:?}: plain K{} minor {} but f-preserving minor {}",
                d + 2,
                if plain.is_some() { "exists" } else { "absent" },
                if preserving.is_some() { "exists" } else { "absent" },
            )));
        }
    }
    Ok(preserving)
}

pub fn decide_sip(g: &Graph, f: VertexPair, d: usize) -> Result<SipVerdict> {
    if !(1..=3).contains(&d) {
        return Err(Error::DimensionOutOfRange(d));
    }
    check_pair(g, f)?;
    let h = g.with_edge(f)?;
    if !h.is_connected() {
        return Err(Error::Disconnected("the SIP decider needs G + f connected"));
    }
    for atom in atoms_containing(&h, f)? {
        if let Some(w) = atom_witness(&h, atom, f, d)? {
            return Ok(SipVerdict { answer: false, witness: Some(w), atom: Some(atom) });
        }
    }
    Ok(SipVerdict { answer: true, witness: None, atom: None })
}

pub fn decide_sip3(g: &Graph, f: VertexPair) -> Result<bool> {
    Ok(decide_sip(g, f, 3)?.answer)
}

fn check_nonedge_set(g: &Graph, fs: &[VertexPair]) -> Result<()> {
    for (i, &f) in fs.iter().enumerate() {
        check_pair(g, f)?;
        if fs[..i].contains(&f) {
            return Err(Error::Precondition(format!("{f} listed twice")));
        }
    }
    Ok(())
}

/// Exact d-convexity for `d <= 2`: every atom of `G + F` that contains a
/// member of `F` must avoid `K_{d+2}`.
pub fn decide_convexity(g: &Graph, fs: &[VertexPair], d: usize) -> Result<bool> {
    if !(1..=2).contains(&d) {
        return Err(Error::DimensionOutOfRange(d));
    }
    check_nonedge_set(g, fs)?;
    let h = g.with_edges(fs)?;
    let kd = Graph::complete(d + 2);
    for comp in h.components() {
        let sub = h.induced_subgraph(comp)?;
        let dec = decompose_atoms(&sub.graph)?;
        for atom in &dec.atoms {
            let host_atom = sub.host_set(*atom);
            if !fs.iter().any(|f| f.as_set().is_subset(host_atom)) {
                continue;
            }
            let a = h.induced_subgraph(host_atom)?;
            if find_rooted_minor(&a.graph, &kd, &MinorConstraints::none(), default_budget())?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Some(true)` when `G + F` is 3-flattenable; `None` when that sufficient
/// condition fails.
pub fn sufficient_convexity_3(g: &Graph, fs: &[VertexPair]) -> Result<Option<bool>> {
    check_nonedge_set(g, fs)?;
    Ok(is_d_flattenable(&g.with_edges(fs)?, 3)?.then_some(true))
}

/// Edge types of a graph-nonedge pair; Type 4 edges are reducing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeType {
    Type1,
    Type2,
    Type3,
    Type4,
}

impl EdgeType {
    pub fn tag(self) -> u8 {
        match self {
            EdgeType::Type1 => 1,
            EdgeType::Type2 => 2,
            EdgeType::Type3 => 3,
            EdgeType::Type4 => 4,
        }
    }

    pub fn is_reducing(self) -> bool {
        self == EdgeType::Type4
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl Serialize for EdgeType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.tag())
    }
}

pub fn classify_edge(g: &Graph, f: VertexPair, e: VertexPair) -> Result<EdgeType> {
    classify_edge_limited(g, f, e, CLASSIFY_MAX_VERTICES)
}

pub fn classify_edge_limited(g: &Graph, f: VertexPair, e: VertexPair, max_vertices: usize) -> Result<EdgeType> {
    if g.n() > max_vertices {
        return Err(Error::HostTooLarge { n: g.n(), max: max_vertices });
    }
    check_pair(g, f)?;
    if e.b() >= g.n() {
        return Err(Error::VertexOutOfRange { id: e.b(), n: g.n() });
    }
    if !g.has_pair(e) {
        return Err(Error::NotAnEdge(e));
    }
    let h = g.with_edge(f)?;
    let (c, map) = h.contract(e)?;
    let cf = VertexPair::new(map[f.a()], map[f.b()])?;
    if find_preserving_forbidden_minor(&c, cf, 3, default_budget())?.is_none() {
        return Ok(EdgeType::Type1);
    }
    let mut in_atom = false;
    for atom in atoms_containing(&c, cf)? {
        if atom_witness(&c, atom, cf, 3)?.is_some() {
            in_atom = true;
            break;
        }
    }
    if !in_atom {
        return Ok(EdgeType::Type2);
    }
    if f_doubled(g, f, e) {
        Ok(EdgeType::Type3)
    } else {
        Ok(EdgeType::Type4)
    }
}

/// Contracting `e` doubles `f = uv` iff `e = ux` with `x ~ v`, or the
/// symmetric case.
fn f_doubled(g: &Graph, f: VertexPair, e: VertexPair) -> bool {
    [(f.a(), f.b()), (f.b(), f.a())].into_iter().any(|(u, v)| e.other(u).is_some_and(|x| g.has_edge(x, v)))
}

/// Types of every edge of `G`, in edge order.
pub fn classify_edges(g: &Graph, f: VertexPair, max_vertices: usize) -> Result<Vec<(VertexPair, EdgeType)>> {
    g.edges().into_iter().map(|e| Ok((e, classify_edge_limited(g, f, e, max_vertices)?))).collect()
}

pub fn is_minimal_pair(g: &Graph, f: VertexPair) -> Result<bool> {
    is_minimal_pair_limited(g, f, CLASSIFY_MAX_VERTICES)
}

pub fn is_minimal_pair_limited(g: &Graph, f: VertexPair, max_vertices: usize) -> Result<bool> {
    if g.n() > max_vertices {
        return Err(Error::HostTooLarge { n: g.n(), max: max_vertices });
    }
    check_pair(g, f)?;
    let h = g.with_edge(f)?;
    if !h.is_connected() || !decompose_atoms(&h)?.cms.is_empty() {
        return Ok(false);
    }
    if find_preserving_forbidden_minor(&h, f, 3, default_budget())?.is_none() {
        return Ok(false);
    }
    for e in g.edges() {
        if classify_edge_limited(g, f, e, max_vertices)?.is_reducing() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A minor of `G` onto winged-K5 or winged-K2,2,2 with `f`'s endpoints on
/// the wing `w1w2`.
pub fn find_winged_minor(g: &Graph, f: VertexPair) -> Result<Option<MinorMap>> {
    if f.b() >= g.n() {
        return Err(Error::VertexOutOfRange { id: f.b(), n: g.n() });
    }
    if !g.has_pair(f) {
        return Err(Error::NotAnEdge(f));
    }
    let (w1, w2) = patterns::WING;
    for pattern in [patterns::winged_k5(), patterns::winged_k222()] {
        for (x, y) in [(f.a(), f.b()), (f.b(), f.a())] {
            let c = MinorConstraints::none().pin(x, w1).pin(y, w2);
            if let Some(m) = find_rooted_minor(g, &pattern, &c, default_budget())? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pair;
    use crate::patterns::*;

    fn minus(g: &Graph, f: VertexPair) -> Graph {
        g.without_edge(f).unwrap()
    }

    #[test]
    fn path_closing_to_a_triangle() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let f = pair(0, 2);
        let v = decide_sip(&p, f, 1).unwrap();
        assert!(!v.answer);
        let w = v.witness.unwrap();
        assert!(w.is_valid() && w.is_preserved(f));
        assert!(decide_sip(&p, f, 2).unwrap().answer);
    }

    #[test]
    fn k5_minus_f() {
        let f = pair(0, 1);
        let g = minus(&k5(), f);
        let v = decide_sip(&g, f, 3).unwrap();
        assert!(!v.answer);
        assert_eq!(v.atom, Some(VertexSet::full(5)));
        assert!(decide_sip(&minus(&k4(), f), f, 3).unwrap().answer);
        assert!(!decide_sip(&minus(&k4(), f), f, 2).unwrap().answer);
    }

    #[test]
    fn winged_pairs_have_3_sip() {
        let f = pair(WING.0, WING.1);
        assert!(decide_sip(&minus(&winged_k5(), f), f, 3).unwrap().answer);
        assert!(decide_sip(&minus(&winged_k222(), f), f, 3).unwrap().answer);
    }

    #[test]
    fn errors() {
        let f = pair(0, 1);
        assert_eq!(decide_sip(&k5(), f, 3).unwrap_err(), Error::AlreadyAnEdge(f));
        assert_eq!(decide_sip(&minus(&k5(), f), f, 4).unwrap_err(), Error::DimensionOutOfRange(4));
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert!(matches!(decide_sip(&g, pair(2, 3), 3), Err(Error::Disconnected(_))));
    }

    #[test]
    fn convexity_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let diag = [pair(0, 2), pair(1, 3)];
        assert!(!decide_convexity(&c4, &diag, 2).unwrap());
        assert_eq!(sufficient_convexity_3(&c4, &diag).unwrap(), Some(true));
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!decide_convexity(&path, &[pair(0, 3)], 1).unwrap());
        assert!(decide_convexity(&path, &[pair(0, 3)], 2).unwrap());
        assert!(decide_convexity(&c4, &[pair(0, 2), pair(0, 2)], 2).is_err());
        let k5m = minus(&k5(), pair(0, 1));
        assert_eq!(sufficient_convexity_3(&k5m, &[pair(0, 1)]).unwrap(), None);
    }

    #[test]
    fn edges_of_k5_minus_f_are_type_1() {
        let f = pair(0, 1);
        let g = minus(&k5(), f);
        for e in g.edges() {
            assert_eq!(classify_edge(&g, f, e).unwrap(), EdgeType::Type1);
        }
        assert!(is_minimal_pair(&g, f).unwrap());
        assert!(!is_minimal_pair(&minus(&k4(), f), f).unwrap());
    }

    #[test]
    fn glued_k4s_are_not_minimal() {
        // Two K4 - f blocks sharing f's endpoints 0, 1.
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)]).unwrap();
        assert!(!is_minimal_pair(&g, pair(0, 1)).unwrap());
    }

    #[test]
    fn winged_minor_examples() {
        let f = pair(WING.0, WING.1);
        let m = find_winged_minor(&winged_k5(), f).unwrap().unwrap();
        assert!(m.is_valid());
        assert!(find_winged_minor(&winged_k222(), f).unwrap().is_some());
        assert!(find_winged_minor(&k5(), pair(0, 1)).unwrap().is_none());
    }
}
