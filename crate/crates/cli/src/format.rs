//! Plain-text graph format and pair/linkage parsing.
//!
//! ```text
//! # comment
//! n 4
//! e 0 1
//! e 1 2
//! ```

use sip3::numerics::Linkage;
use sip3::{Error, Graph, Result, VertexPair, VertexSet};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, "expected a vertex id"))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad vertex id {tok:?}")))
}

/// Line `0` in an error means the input as a whole.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut toks = s.split_whitespace();
        match toks.next() {
            Some("n") => {
                if n.is_some() {
                    return Err(parse_err(line, "second header line"));
                }
                n = Some(parse_id(toks.next(), line)?);
            }
            Some("e") => {
                let u = parse_id(toks.next(), line)?;
                let v = parse_id(toks.next(), line)?;
                edges.push((line, u, v));
            }
            Some(other) => return Err(parse_err(line, format!("unknown directive {other:?}"))),
            None => unreachable!(),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("unexpected token {extra:?}")));
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing header `n <count>`"))?;
    let mut g = Graph::empty(n).map_err(|e| parse_err(0, e.to_string()))?;
    for (line, u, v) in edges {
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        if u.max(v) >= n {
            return Err(parse_err(line, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        let p = sip3::pair(u, v);
        if g.has_pair(p) {
            return Err(parse_err(line, format!("duplicate edge {p}")));
        }
        g = g.with_edge(p)?;
    }
    Ok(g)
}

/// Canonical text: header, then edges in increasing order.
pub fn emit_graph(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for e in g.edges() {
        s.push_str(&format!("e {} {}\n", e.a(), e.b()));
    }
    s
}

pub fn parse_linkage(json: &str) -> Result<Linkage> {
    serde_json::from_str(json).map_err(|e| Error::InvalidLinkage(e.to_string()))
}

/// `u,v`.
pub fn parse_pair(s: &str) -> std::result::Result<VertexPair, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected u,v, got {s:?}"))?;
    let u = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let v = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    VertexPair::new(u, v).map_err(|e| e.to_string())
}

/// `host:pattern`.
pub fn parse_pin(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected host:pattern, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e: std::num::ParseIntError| e.to_string())?, b.trim().parse().map_err(|e: std::num::ParseIntError| e.to_string())?))
}

pub fn fmt_set(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_parses() {
        let g = parse_graph("n 3\ne 0 1\ne 1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 2));
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(parse_graph("n 2\ne 0 0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("n 2\ne 0 1\n\ne 1 0"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("n 2\ne 0 5"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("e 0 1"), Err(Error::Parse { line: 0, .. })));
        assert!(matches!(parse_graph("n 2\nx"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("n 2\ne 0 1 2"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn order_insensitive_round_trip() {
        let text = "# a comment\ne 2 1\nn 3\ne 1 0\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(emit_graph(&g), "n 3\ne 0 1\ne 1 2\n");
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
    }

    #[test]
    fn linkage_parsing() {
        let l = parse_linkage(r#"{"n":2,"edges":[{"u":0,"v":1,"len2":1.5}]}"#).unwrap();
        assert_eq!(l.len2(sip3::pair(0, 1)), Some(1.5));
        assert!(parse_linkage(r#"{"n":2,"edges":[{"u":0,"v":1,"len2":-1}]}"#).is_err());
        assert!(parse_linkage(r#"{"n":2,"edges":[{"u":0,"v":2,"len2":1}]}"#).is_err());
        let back = parse_linkage(&serde_json::to_string(&l).unwrap()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn pairs_and_pins() {
        assert_eq!(parse_pair("2, 0").unwrap(), sip3::pair(0, 2));
        assert!(parse_pair("1,1").is_err());
        assert!(parse_pair("1").is_err());
        assert_eq!(parse_pin("3:0").unwrap(), (3, 0));
    }
}
