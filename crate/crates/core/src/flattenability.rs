//! Flattenability (d <= 3), partial 3-trees, 3-trees and the star theorem.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{pair, Graph, VertexPair, VertexSet};
use crate::minors::{default_budget, find_rooted_minor, MinorConstraints, MinorMap};
use crate::patterns;

/// The named forbidden-minor patterns.
#[derive(Clone, Debug)]
pub struct PatternCatalog {
    pub k3: Graph,
    pub k4: Graph,
    pub k5: Graph,
    pub k222: Graph,
    pub v8: Graph,
    pub c5xc2: Graph,
}

impl Default for PatternCatalog {
    fn default() -> Self {
        PatternCatalog {
            k3: patterns::k3(),
            k4: patterns::k4(),
            k5: patterns::k5(),
            k222: patterns::k222(),
            v8: patterns::v8(),
            c5xc2: patterns::c5xc2(),
        }
    }
}

impl PatternCatalog {
    /// Obstructions to treewidth 3, smallest first.
    pub fn partial_3_tree_obstructions(&self) -> [(&'static str, &Graph); 4] {
        [("K5", &self.k5), ("K222", &self.k222), ("V8", &self.v8), ("C5xC2", &self.c5xc2)]
    }

    pub fn forbidden(&self, d: usize) -> Result<Vec<(&'static str, &Graph)>> {
        match d {
            1 => Ok(vec![("K3", &self.k3)]),
            2 => Ok(vec![("K4", &self.k4)]),
            3 => Ok(vec![("K5", &self.k5), ("K222", &self.k222)]),
            _ => Err(Error::DimensionOutOfRange(d)),
        }
    }

    pub fn by_name(&self, name: &str) -> Option<&Graph> {
        match name.to_ascii_uppercase().replace([',', '_'], "").as_str() {
            "K3" => Some(&self.k3),
            "K4" => Some(&self.k4),
            "K5" => Some(&self.k5),
            "K222" => Some(&self.k222),
            "V8" => Some(&self.v8),
            "C5XC2" | "C5XK2" | "PRISM" => Some(&self.c5xc2),
            _ => None,
        }
    }
}

/// A `d`-forbidden minor of `g`, if any.
pub fn find_flattenability_obstruction(g: &Graph, d: usize) -> Result<Option<(&'static str, MinorMap)>> {
    let cat = PatternCatalog::default();
    for (name, p) in cat.forbidden(d)? {
        if let Some(m) = find_rooted_minor(g, p, &MinorConstraints::none(), default_budget())? {
            return Ok(Some((name, m)));
        }
    }
    Ok(None)
}

pub fn is_d_flattenable(g: &Graph, d: usize) -> Result<bool> {
    Ok(find_flattenability_obstruction(g, d)?.is_none())
}

/// One of K5, K2,2,2, V8, C5×C2 as a minor of `g`, tried in that order.
pub fn find_partial_3_tree_obstruction(g: &Graph) -> Result<Option<(&'static str, MinorMap)>> {
    let cat = PatternCatalog::default();
    for (name, p) in cat.partial_3_tree_obstructions() {
        if let Some(m) = find_rooted_minor(g, p, &MinorConstraints::none(), default_budget())? {
            return Ok(Some((name, m)));
        }
    }
    Ok(None)
}

pub fn is_partial_3_tree(g: &Graph) -> Result<bool> {
    Ok(find_partial_3_tree_obstruction(g)?.is_none())
}

/// Peels degree-3 vertices with triangular neighborhoods until `K4` remains.
pub fn is_3_tree(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || g.edge_count() != 3 * n - 6 {
        return false;
    }
    let mut alive = g.vertices();
    while alive.len() > 4 {
        let peel = alive.iter().find(|&v| {
            let nb = g.neighbors(v).intersection(alive);
            nb.len() == 3 && g.is_clique(nb)
        });
        match peel {
            Some(v) => alive.remove(v),
            None => return false,
        }
    }
    g.is_clique(alive)
}

/// Largest host for [`treewidth`].
pub const TREEWIDTH_MAX_VERTICES: usize = 16;

/// Exact treewidth by dynamic programming over elimination prefixes:
/// `TW(S) = min_{v in S} max(TW(S \ v), |Q(S \ v, v)|)`, where `Q(S, v)` is
/// the set of vertices outside `S + v` reachable from `v` through `S`.
pub fn treewidth(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > TREEWIDTH_MAX_VERTICES {
        return Err(Error::HostTooLarge { n, max: TREEWIDTH_MAX_VERTICES });
    }
    if n == 0 {
        return Ok(0);
    }
    let full = 1usize << n;
    let mut tw = vec![usize::MAX; full];
    // TW(empty) = -infinity; stored as 0 since every Q is >= 0.
    tw[0] = 0;
    for s in 1..full {
        let set = VertexSet::from_bits(s as u128);
        let mut best = usize::MAX;
        for v in set.iter() {
            let rest = set.without(v);
            let reach = g.reach(v, rest.with(v));
            let q = g.neighborhood_of_set(reach).difference(rest).without(v).len();
            let cand = tw[rest.bits() as usize].max(q);
            best = best.min(cand);
        }
        tw[s] = best;
    }
    Ok(tw[full - 1])
}

/// Result of checking the star theorem on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub three_connected: bool,
    pub partial_3_tree: bool,
    /// `G + w u_i` is a partial 3-tree, per leaf.
    pub single_additions: Vec<bool>,
    pub hypotheses: bool,
    /// `G + {w u_i}` is a partial 3-tree.
    pub conclusion: bool,
}

impl StarReport {
    /// Hypotheses hold but the conclusion fails.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses && !self.conclusion
    }
}

pub fn check_star_theorem(g: &Graph, w: usize, leaves: &[usize]) -> Result<StarReport> {
    let mut added: Vec<VertexPair> = Vec::with_capacity(leaves.len());
    for &u in leaves {
        let e = VertexPair::new(w, u)?;
        if e.b() >= g.n() {
            return Err(Error::VertexOutOfRange { id: e.b(), n: g.n() });
        }
        if g.has_pair(e) {
            return Err(Error::AlreadyAnEdge(e));
        }
        added.push(e);
    }
    let three_connected = g.is_connected() && g.vertex_connectivity() >= 3;
    let partial_3_tree = is_partial_3_tree(g)?;
    let single_additions = added.iter().map(|&e| is_partial_3_tree(&g.with_edge(e)?)).collect::<Result<Vec<_>>>()?;
    let hypotheses = three_connected && partial_3_tree && single_additions.iter().all(|&b| b);
    let conclusion = is_partial_3_tree(&g.with_edges(&added)?)?;
    Ok(StarReport { three_connected, partial_3_tree, single_additions, hypotheses, conclusion })
}

/// Triangular prism: triangles `0,1,2` and `3,4,5`, rungs `i ~ i+3`.
pub fn triangular_prism() -> Graph {
    let e: Vec<VertexPair> =
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)].iter().map(|&(u, v)| pair(u, v)).collect();
    Graph::new(6, &e).expect("prism")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::*;

    #[test]
    fn flattenability_examples() {
        assert!(!is_d_flattenable(&k3(), 1).unwrap());
        assert!(is_d_flattenable(&k3(), 2).unwrap());
        assert!(!is_d_flattenable(&k5(), 3).unwrap());
        assert!(is_d_flattenable(&k4(), 3).unwrap());
        assert!(!is_d_flattenable(&k222(), 3).unwrap());
        assert_eq!(is_d_flattenable(&k4(), 4), Err(Error::DimensionOutOfRange(4)));
    }

    #[test]
    fn partial_3_tree_examples() {
        assert!(!is_partial_3_tree(&v8()).unwrap());
        assert!(!is_partial_3_tree(&c5xc2()).unwrap());
        assert!(is_partial_3_tree(&k4()).unwrap());
        assert_eq!(find_partial_3_tree_obstruction(&v8()).unwrap().unwrap().0, "V8");
        assert_eq!(find_partial_3_tree_obstruction(&c5xc2()).unwrap().unwrap().0, "C5xC2");
    }

    #[test]
    fn three_tree_examples() {
        assert!(is_3_tree(&k4()));
        let g = k4().with_edges(&[]).unwrap();
        let mut e = g.edges();
        e.extend([pair(0, 4), pair(1, 4), pair(2, 4)]);
        assert!(is_3_tree(&Graph::new(5, &e).unwrap()));
        assert!(!is_3_tree(&k5()));
        assert!(!is_3_tree(&k222()));
    }

    #[test]
    fn treewidth_of_known_graphs() {
        assert_eq!(treewidth(&k4()).unwrap(), 3);
        assert_eq!(treewidth(&k5()).unwrap(), 4);
        assert_eq!(treewidth(&k222()).unwrap(), 4);
        assert_eq!(treewidth(&v8()).unwrap(), 4);
        assert_eq!(treewidth(&c5xc2()).unwrap(), 4);
        assert_eq!(treewidth(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()).unwrap(), 2);
        assert_eq!(treewidth(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()).unwrap(), 1);
    }

    #[test]
    fn star_theorem_examples() {
        let prism = triangular_prism();
        let r = check_star_theorem(&prism, 0, &[]).unwrap();
        assert!(r.hypotheses && r.conclusion);
        let r = check_star_theorem(&prism, 0, &[4, 5]).unwrap();
        assert!(r.three_connected && r.partial_3_tree);
        assert_eq!(r.single_additions, vec![true, true]);
        assert!(r.hypotheses && r.conclusion);
        assert!(matches!(check_star_theorem(&prism, 0, &[1]), Err(Error::AlreadyAnEdge(_))));
    }
}
