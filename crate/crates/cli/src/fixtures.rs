//! Named graphs with labeled expected properties.
//!
//! Only graphs whose adjacency is fixed by a prose description are kept.
//! Properties tagged [`Source::Derived`] were computed by this library and are
//! re-checked against an independent oracle whenever the corpus is checked.

use serde_json::json;
use sip3::flattenability::{is_d_flattenable, is_partial_3_tree};
use sip3::minors::{brute_force_minor_oracle, MinorConstraints};
use sip3::patterns;
use sip3::sip::{classify_edge, decide_sip, is_minimal_pair, EdgeType};
use sip3::{pair, Graph, Result, VertexPair};

use crate::format::emit_graph;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Stated in the literature the corpus encodes.
    Paper,
    /// Immediate from the definitions.
    Trivial,
    /// Computed here, gated by an oracle check.
    Derived,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Source::Paper => "PAPER",
            Source::Trivial => "TRIVIAL",
            Source::Derived => "DERIVED",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Sip(usize),
    PartialThreeTree,
    Flattenable(usize),
    MinimalPair,
    EdgeType(VertexPair, EdgeType),
    /// No `f`-preserving K5 or K2,2,2 minor, by the brute-force oracle.
    OracleNoPreservingMinor,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Property::Sip(d) => write!(f, "sip{d}"),
            Property::PartialThreeTree => write!(f, "p3t"),
            Property::Flattenable(d) => write!(f, "flat{d}"),
            Property::MinimalPair => write!(f, "minimal"),
            Property::EdgeType(e, t) => write!(f, "type{e}={}", t.tag()),
            Property::OracleNoPreservingMinor => write!(f, "oracle-no-preserving-minor"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub property: Property,
    pub value: bool,
    pub source: Source,
}

#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub graph: Graph,
    pub nonedge: Option<VertexPair>,
    pub expected: Vec<Expectation>,
}

impl FixtureEntry {
    /// Graph file contents; the nonedge goes in a comment.
    pub fn file_text(&self) -> String {
        let mut s = format!("# {}\n", self.name);
        if let Some(f) = self.nonedge {
            s.push_str(&format!("# nonedge {} {}\n", f.a(), f.b()));
        }
        s + &emit_graph(&self.graph)
    }
}

fn exp(property: Property, value: bool, source: Source) -> Expectation {
    Expectation { property, value, source }
}

fn minus(g: Graph, f: VertexPair) -> Graph {
    g.without_edge(f).expect("fixture edge")
}

/// u=0, v=1, x=2, w=3, h1=4, h2=5: `u` sees `x, w`; `v, x, w, h1, h2` form
/// `K5` minus `xw`.
pub fn fig16c() -> Graph {
    Graph::from_edges(6, &[(0, 2), (1, 2), (0, 3), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)])
        .expect("fixture")
}

/// `K4` on `0..4`, then 4 on {0,1,2}, 5 on {1,2,4}, 6 on {2,4,5}.
pub fn three_tree_7() -> Graph {
    let mut e = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    e.extend([(0, 4), (1, 4), (2, 4), (1, 5), (2, 5), (4, 5), (2, 6), (4, 6), (5, 6)]);
    Graph::from_edges(7, &e).expect("fixture")
}

pub fn corpus() -> Vec<FixtureEntry> {
    use Property::*;
    use Source::*;
    let wing = pair(patterns::WING.0, patterns::WING.1);
    vec![
        FixtureEntry {
            name: "path_k3",
            graph: Graph::from_edges(3, &[(0, 1), (1, 2)]).expect("fixture"),
            nonedge: Some(pair(0, 2)),
            expected: vec![exp(Sip(1), false, Paper), exp(Sip(2), true, Paper)],
        },
        FixtureEntry {
            name: "k4_minus_f",
            graph: minus(patterns::k4(), pair(0, 1)),
            nonedge: Some(pair(0, 1)),
            expected: vec![exp(Sip(2), false, Paper), exp(Sip(3), true, Paper)],
        },
        FixtureEntry {
            name: "k5_minus_f",
            graph: minus(patterns::k5(), pair(0, 1)),
            nonedge: Some(pair(0, 1)),
            expected: vec![exp(Sip(3), false, Paper), exp(MinimalPair, true, Derived)],
        },
        FixtureEntry {
            name: "k222_minus_f",
            graph: minus(patterns::k222(), pair(0, 2)),
            nonedge: Some(pair(0, 2)),
            expected: vec![exp(Sip(3), false, Paper), exp(MinimalPair, true, Paper)],
        },
        FixtureEntry {
            name: "winged_k5",
            graph: minus(patterns::winged_k5(), wing),
            nonedge: Some(wing),
            expected: vec![exp(Sip(3), true, Paper), exp(OracleNoPreservingMinor, true, Derived)],
        },
        FixtureEntry {
            name: "winged_k222",
            graph: minus(patterns::winged_k222(), wing),
            nonedge: Some(wing),
            expected: vec![exp(Sip(3), true, Paper), exp(OracleNoPreservingMinor, true, Derived)],
        },
        FixtureEntry {
            name: "fig16c",
            graph: fig16c(),
            nonedge: Some(pair(0, 1)),
            expected: vec![
                exp(Sip(3), false, Paper),
                exp(MinimalPair, true, Paper),
                exp(EdgeType(pair(0, 2), sip3::sip::EdgeType::Type3), true, Derived),
            ],
        },
        FixtureEntry {
            name: "three_tree_7",
            graph: minus(minus(three_tree_7(), pair(0, 4)), pair(2, 6)),
            nonedge: Some(pair(0, 4)),
            expected: vec![exp(Sip(3), true, Paper), exp(PartialThreeTree, true, Trivial)],
        },
        FixtureEntry {
            name: "v8",
            graph: patterns::v8(),
            nonedge: None,
            expected: vec![exp(PartialThreeTree, false, Paper), exp(Flattenable(3), true, Derived)],
        },
        FixtureEntry {
            name: "c5xc2",
            graph: patterns::c5xc2(),
            nonedge: None,
            expected: vec![exp(PartialThreeTree, false, Paper)],
        },
        FixtureEntry {
            name: "prism",
            graph: sip3::flattenability::triangular_prism(),
            nonedge: None,
            expected: vec![exp(PartialThreeTree, true, Trivial)],
        },
        FixtureEntry {
            name: "petersen",
            graph: patterns::petersen(),
            nonedge: None,
            expected: vec![exp(Flattenable(3), false, Derived), exp(PartialThreeTree, false, Derived)],
        },
    ]
}

pub fn by_name(name: &str) -> Option<FixtureEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

fn need_nonedge(e: &FixtureEntry) -> Result<VertexPair> {
    e.nonedge.ok_or_else(|| sip3::Error::Precondition(format!("fixture {} has no nonedge", e.name)))
}

/// Library value of one property.
pub fn evaluate(e: &FixtureEntry, p: Property) -> Result<bool> {
    match p {
        Property::Sip(d) => Ok(decide_sip(&e.graph, need_nonedge(e)?, d)?.answer),
        Property::PartialThreeTree => is_partial_3_tree(&e.graph),
        Property::Flattenable(d) => is_d_flattenable(&e.graph, d),
        Property::MinimalPair => is_minimal_pair(&e.graph, need_nonedge(e)?),
        Property::EdgeType(edge, t) => Ok(classify_edge(&e.graph, need_nonedge(e)?, edge)? == t),
        Property::OracleNoPreservingMinor => {
            let f = need_nonedge(e)?;
            let h = e.graph.with_edge(f)?;
            for p in [patterns::k5(), patterns::k222()] {
                if brute_force_minor_oracle(&h, &p, &MinorConstraints::preserving(f))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Independent recomputation for derived values, where one exists.
fn oracle(e: &FixtureEntry, p: Property) -> Result<Option<bool>> {
    let brute_has = |g: &Graph, pats: &[Graph]| -> Result<bool> {
        for pat in pats {
            if brute_force_minor_oracle(g, pat, &MinorConstraints::none())? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    match p {
        Property::Flattenable(3) if e.graph.n() <= sip3::minors::ORACLE_MAX_VERTICES => {
            Ok(Some(!brute_has(&e.graph, &[patterns::k5(), patterns::k222()])?))
        }
        Property::PartialThreeTree if e.graph.n() <= sip3::flattenability::TREEWIDTH_MAX_VERTICES => {
            Ok(Some(sip3::flattenability::treewidth(&e.graph)? <= 3))
        }
        Property::OracleNoPreservingMinor => evaluate(e, p).map(Some),
        Property::MinimalPair | Property::EdgeType(..) => {
            // A minimal pair, and a non-Type-1 edge, need an f-preserving
            // forbidden minor of G + f.
            let f = need_nonedge(e)?;
            let h = e.graph.with_edge(f)?;
            let has = [patterns::k5(), patterns::k222()]
                .iter()
                .map(|p| brute_force_minor_oracle(&h, p, &MinorConstraints::preserving(f)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .any(|b| b);
            Ok(if has { None } else { Some(false) })
        }
        _ => Ok(None),
    }
}

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub fixture: &'static str,
    pub property: String,
    pub source: Source,
    pub expected: bool,
    pub actual: bool,
    /// Value from an independent oracle, when there is one.
    pub oracle: Option<bool>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.expected == self.actual && self.oracle.is_none_or(|o| o == self.actual)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "fixture": self.fixture,
            "property": self.property,
            "source": self.source.tag(),
            "expected": self.expected,
            "actual": self.actual,
            "oracle": self.oracle,
            "passed": self.passed(),
        })
    }
}

pub fn check(e: &FixtureEntry) -> Result<Vec<CheckLine>> {
    e.expected
        .iter()
        .map(|x| {
            let actual = evaluate(e, x.property)?;
            let oracle = if x.source == Source::Derived { oracle(e, x.property)? } else { None };
            Ok(CheckLine {
                fixture: e.name,
                property: x.property.to_string(),
                source: x.source,
                expected: x.value,
                actual,
                oracle,
            })
        })
        .collect()
}
