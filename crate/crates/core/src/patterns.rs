//! Fixed pattern graphs.
//!
//! Vertex labelings are part of the public contract: the certificate and
//! fixture code refers to specific ids.

use crate::graph::{pair, Graph, VertexPair};

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let edges: Vec<VertexPair> = edges.into_iter().map(|(u, v)| pair(u, v)).collect();
    Graph::new(n, &edges).expect("pattern edges are simple")
}

pub fn complete(n: usize) -> Graph {
    Graph::complete(n)
}

pub fn k3() -> Graph {
    Graph::complete(3)
}

pub fn k4() -> Graph {
    Graph::complete(4)
}

pub fn k5() -> Graph {
    Graph::complete(5)
}

/// Octahedron with antipodal pairs `{0,1}`, `{2,3}`, `{4,5}`.
pub fn k222() -> Graph {
    let mut e = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                e.push((u, v));
            }
        }
    }
    build(6, e)
}

/// Wagner graph: the 8-cycle `0..8` plus the four diameters `i ~ i+4`.
pub fn v8() -> Graph {
    build(8, (0..8).map(|i| (i, (i + 1) % 8)).chain((0..4).map(|i| (i, i + 4))))
}

/// Pentagonal prism: outer cycle `0..5`, inner cycle `5..10`, rungs `i ~ i+5`.
pub fn c5xc2() -> Graph {
    build(
        10,
        (0..5)
            .map(|i| (i, (i + 1) % 5))
            .chain((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)))
            .chain((0..5).map(|i| (i, i + 5))),
    )
}

/// Petersen graph: outer 5-cycle, inner pentagram, rungs `i ~ i+5`.
pub fn petersen() -> Graph {
    build(
        10,
        (0..5)
            .map(|i| (i, (i + 1) % 5))
            .chain((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)))
            .chain((0..5).map(|i| (i, i + 5))),
    )
}

/// Forbidden minors for `d`-flattenability.
pub fn forbidden_minors(d: usize) -> Vec<Graph> {
    match d {
        1 => vec![k3()],
        2 => vec![k4()],
        3 => vec![k5(), k222()],
        _ => Vec::new(),
    }
}

/// Winged-K5 on `w1..w6` = ids `0..6`: a K4 on `{w3,w4,w5,w6}`, with
/// `w1 ~ w2, w3, w4` and `w2 ~ w5, w6`. Every K5 minor contracts `w1w2`.
pub fn winged_k5() -> Graph {
    build(6, [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5), (0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
}

/// Winged-K2,2,2 on 7 vertices: `w1 = 0`, `w2 = 1`, and a wheel with hub
/// `6` over the 4-cycle `2-4-3-5`. `w1 ~ 2, 4` and `w2 ~ 3, 5`, so
/// contracting `w1w2` restores the missing octahedron vertex. Attaching the
/// wings to antipodal rim pairs instead admits a `w1w2`-preserving K2,2,2.
pub fn winged_k222() -> Graph {
    build(
        7,
        [
            (6, 2),
            (6, 3),
            (6, 4),
            (6, 5),
            (2, 4),
            (4, 3),
            (3, 5),
            (5, 2),
            (0, 1),
            (0, 2),
            (0, 4),
            (1, 3),
            (1, 5),
        ],
    )
}

/// The marked edge `w1w2` of both winged patterns.
pub const WING: (usize, usize) = (0, 1);
