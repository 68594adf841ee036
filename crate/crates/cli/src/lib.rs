//! `sip3` command-line front end.
//!
//! Exit codes: 0 success (or positive verdict), 1 negative verdict, 2 error.

pub mod fixtures;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sip3::certificates::{base_certificate, build_certificate, verify_certificate_with, BaseKind, Certificate};
use sip3::decomposition::decompose_atoms;
use sip3::flattenability::{find_flattenability_obstruction, find_partial_3_tree_obstruction, PatternCatalog};
use sip3::minors::{default_budget, find_rooted_minor, MinorConstraints, MinorMap};
use sip3::numerics::{ccs_intervals_detailed, format_value, Provenance, SamplingConfig, SipEvidence};
use sip3::sip::{classify_edge, decide_sip, find_winged_minor, is_minimal_pair};
use sip3::{Error, Graph, Result, VertexPair, VertexSet};

use crate::format::{fmt_set, parse_graph, parse_linkage, parse_pair, parse_pin};

#[derive(Parser, Debug)]
#[command(name = "sip3", version, about = "Single-interval property of graph-nonedge pairs in dimension 3 and below")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphPair {
    graph: PathBuf,
    #[arg(long, value_parser = parse_pair)]
    nonedge: VertexPair,
}

#[derive(Args, Debug, Clone, Copy)]
struct Sampling {
    /// Random restarts.
    #[arg(long, default_value_t = 600)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cluster separation threshold (squared length).
    #[arg(long, default_value_t = 1e-3)]
    gap: f64,
}

impl Sampling {
    fn config(self) -> SamplingConfig {
        SamplingConfig::default().with_samples(self.samples).with_seed(self.seed).with_gap(self.gap)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Atoms and clique minimal separators of a connected graph.
    Atoms { graph: PathBuf },
    /// Rooted minor containment.
    Minor {
        graph: PathBuf,
        /// K3, K4, K5, K222, V8 or C5xC2.
        #[arg(long, conflicts_with = "pattern_file")]
        pattern: Option<String>,
        #[arg(long)]
        pattern_file: Option<PathBuf>,
        /// Host pair whose endpoints must land in adjacent branch sets.
        #[arg(long, value_parser = parse_pair)]
        preserve: Vec<VertexPair>,
        /// Host pair with at most one kept edge between its branch sets.
        #[arg(long, value_parser = parse_pair)]
        retain: Vec<VertexPair>,
        /// `host:pattern` vertex pin.
        #[arg(long, value_parser = parse_pin)]
        pin: Vec<(usize, usize)>,
        #[arg(long)]
        induced: bool,
    },
    /// d-flattenability (no K_{d+2}, or for d = 3 no K5 or K222 minor).
    Flatten {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Partial 3-tree recognition.
    P3t { graph: PathBuf },
    /// Decide the d-single-interval property of (G, f).
    Sip {
        #[command(flatten)]
        pair: GraphPair,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Classify an edge of G with respect to f.
    EdgeType {
        #[command(flatten)]
        pair: GraphPair,
        #[arg(long, value_parser = parse_pair)]
        edge: VertexPair,
    },
    /// Is (G, f) a minimal pair.
    Minimal {
        #[command(flatten)]
        pair: GraphPair,
    },
    /// Winged-K5 or winged-K222 minor with the given edge on the wing.
    Winged {
        graph: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        wing: VertexPair,
    },
    /// Sampled Cayley configuration space of one nonedge.
    Ccs {
        linkage: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        nonedge: VertexPair,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Build a non-3-SIP certificate for (G, f), or print a base one.
    Certify {
        graph: Option<PathBuf>,
        #[arg(long, value_parser = parse_pair, requires = "graph")]
        nonedge: Option<VertexPair>,
        /// k5-unit, k5-proper or k222.
        #[arg(long, conflicts_with = "graph")]
        base: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate by sampling.
    VerifyCert {
        certificate: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check the fixture corpus; optionally write its graph files.
    Fixtures {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }

    fn verdict(yes: bool, text: String, json: Value) -> Self {
        Report { text, json, code: if yes { 0 } else { 1 } }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
}

fn sets_json(sets: &[VertexSet]) -> Value {
    json!(sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>())
}

fn branch_lines(sets: &[VertexSet]) -> String {
    sets.iter().enumerate().map(|(i, s)| format!("branch {i}: {}\n", fmt_set(*s))).collect()
}

fn minor_report(m: Option<MinorMap>, name: Option<&str>) -> Report {
    match m {
        Some(m) => {
            let sets = m.branch_sets();
            let head = name.map(|n| format!("yes {n}\n")).unwrap_or_else(|| "yes\n".into());
            Report::verdict(true, head + &branch_lines(&sets), json!({"found": true, "pattern": name, "branch_sets": sets_json(&sets)}))
        }
        None => Report::verdict(false, "no\n".into(), json!({"found": false})),
    }
}

fn pattern_name(d: usize, n: usize) -> &'static str {
    match (d, n) {
        (1, _) => "K3",
        (2, _) => "K4",
        (_, 5) => "K5",
        _ => "K222",
    }
}

fn execute(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Atoms { graph } => {
            let dec = decompose_atoms(&load_graph(&graph)?)?;
            let mut text = String::new();
            for a in &dec.atoms {
                text += &format!("atom {}\n", fmt_set(*a));
            }
            for c in &dec.cms {
                text += &format!("cms {}\n", fmt_set(*c));
            }
            Ok(Report::ok(text, json!({"atoms": sets_json(&dec.atoms), "cms": sets_json(&dec.cms)})))
        }
        Command::Minor { graph, pattern, pattern_file, preserve, retain, pin, induced } => {
            let host = load_graph(&graph)?;
            let cat = PatternCatalog::default();
            let pat = match (pattern, pattern_file) {
                (Some(name), _) => {
                    cat.by_name(&name).cloned().ok_or_else(|| Error::Precondition(format!("unknown pattern {name:?}")))?
                }
                (None, Some(path)) => load_graph(&path)?,
                (None, None) => return Err(Error::Precondition("give --pattern or --pattern-file".into())),
            };
            let c = MinorConstraints { preserve, retain, pins: pin, induced };
            Ok(minor_report(find_rooted_minor(&host, &pat, &c, default_budget())?, None))
        }
        Command::Flatten { graph, dim } => {
            let g = load_graph(&graph)?;
            Ok(match find_flattenability_obstruction(&g, dim)? {
                None => Report::verdict(true, "yes\n".into(), json!({"flattenable": true, "dim": dim})),
                Some((name, m)) => {
                    let sets = m.branch_sets();
                    Report::verdict(
                        false,
                        format!("no\nobstruction {name}\n") + &branch_lines(&sets),
                        json!({"flattenable": false, "dim": dim, "obstruction": name, "branch_sets": sets_json(&sets)}),
                    )
                }
            })
        }
        Command::P3t { graph } => {
            let g = load_graph(&graph)?;
            Ok(match find_partial_3_tree_obstruction(&g)? {
                None => Report::verdict(true, "yes\n".into(), json!({"partial_3_tree": true})),
                Some((name, m)) => {
                    let sets = m.branch_sets();
                    Report::verdict(
                        false,
                        format!("no\nobstruction {name}\n") + &branch_lines(&sets),
                        json!({"partial_3_tree": false, "obstruction": name, "branch_sets": sets_json(&sets)}),
                    )
                }
            })
        }
        Command::Sip { pair, dim } => {
            let g = load_graph(&pair.graph)?;
            let v = decide_sip(&g, pair.nonedge, dim)?;
            if v.answer {
                return Ok(Report::verdict(true, "yes\n".into(), json!({"sip": true, "dim": dim})));
            }
            let atom = v.atom.expect("negative verdicts carry an atom");
            let sets = v.witness_branch_sets().expect("negative verdicts carry a witness");
            let name = pattern_name(dim, sets.len());
            Ok(Report::verdict(
                false,
                format!("no\natom {}\nwitness {name}\n", fmt_set(atom)) + &branch_lines(&sets),
                json!({"sip": false, "dim": dim, "atom": atom.to_vec(), "witness": name, "branch_sets": sets_json(&sets)}),
            ))
        }
        Command::EdgeType { pair, edge } => {
            let t = classify_edge(&load_graph(&pair.graph)?, pair.nonedge, edge)?;
            Ok(Report::ok(format!("type {}\n", t.tag()), json!({"edge": [edge.a(), edge.b()], "type": t.tag()})))
        }
        Command::Minimal { pair } => {
            let yes = is_minimal_pair(&load_graph(&pair.graph)?, pair.nonedge)?;
            Ok(Report::verdict(yes, if yes { "yes\n" } else { "no\n" }.into(), json!({"minimal": yes})))
        }
        Command::Winged { graph, wing } => {
            let g = load_graph(&graph)?;
            let m = find_winged_minor(&g, wing)?;
            let name = m.as_ref().map(|m| if m.pattern().n() == 6 { "winged-K5" } else { "winged-K222" });
            Ok(minor_report(m, name))
        }
        Command::Ccs { linkage, nonedge, dim, sampling } => {
            let l = parse_linkage(&read(&linkage)?)?;
            let rep = ccs_intervals_detailed(&l, nonedge, dim, &sampling.config())?;
            let iv = &rep.intervals;
            let (samples, gap) = match iv.provenance {
                Provenance::Sampled { samples, gap } => (samples, gap),
                Provenance::Exact => (0, 0.0),
            };
            let verdict = match iv.sip_evidence() {
                SipEvidence::SingleInterval => "single interval".to_string(),
                SipEvidence::NotRefuted => "not refuted".to_string(),
                SipEvidence::Refuted { between } => format!("refuted: gap between {} and {}", format_value(between.0), format_value(between.1)),
                SipEvidence::Empty => "empty".to_string(),
            };
            Ok(Report::ok(
                format!("{iv}\nprovenance sampled samples={samples} gap={gap}\nsip {verdict}\n"),
                json!({"intervals": iv.intervals(), "provenance": iv.provenance, "evidence": iv.sip_evidence()}),
            ))
        }
        Command::Certify { graph, nonedge, base, out } => {
            let cert: Option<Certificate> = match (graph, base) {
                (_, Some(kind)) => Some(base_certificate(kind.parse::<BaseKind>()?)),
                (Some(path), None) => {
                    let f = nonedge.ok_or_else(|| Error::Precondition("certify needs --nonedge".into()))?;
                    build_certificate(&load_graph(&path)?, f)?
                }
                (None, None) => return Err(Error::Precondition("give a graph with --nonedge, or --base".into())),
            };
            let Some(cert) = cert else {
                return Ok(Report::verdict(false, "none\n".into(), json!({"certificate": null})));
            };
            let body = cert.to_json();
            if let Some(path) = out {
                std::fs::write(&path, &body).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?;
            }
            let value: Value = serde_json::from_str(&body).expect("own output parses");
            Ok(Report::ok(body + "\n", value))
        }
        Command::VerifyCert { certificate, sampling } => {
            let c = Certificate::from_json(&read(&certificate)?)?;
            let r = verify_certificate_with(&c, &sampling.config())?;
            let pass = r.passes();
            let text = format!(
                "clusters {}\npositive lengths {}\npositive values {}\nseparated {}\nclaims matched {}\n{}\n",
                r.clusters,
                r.positive_lengths,
                r.positive_values,
                r.separated,
                r.claims_matched,
                if pass { "pass" } else { "fail" }
            );
            let mut j = serde_json::to_value(&r).expect("report serializes");
            j["passes"] = json!(pass);
            Ok(Report::verdict(pass, text, j))
        }
        Command::Fixtures { write } => {
            let mut text = String::new();
            let mut lines = Vec::new();
            let mut all = true;
            for e in fixtures::corpus() {
                if let Some(dir) = &write {
                    let path = dir.join(format!("{}.g", e.name));
                    std::fs::write(&path, e.file_text())
                        .map_err(|err| Error::Precondition(format!("{}: {err}", path.display())))?;
                }
                for l in fixtures::check(&e)? {
                    all &= l.passed();
                    text += &format!(
                        "{} {} [{}] expected={} actual={}{} {}\n",
                        l.fixture,
                        l.property,
                        l.source.tag(),
                        l.expected,
                        l.actual,
                        l.oracle.map(|o| format!(" oracle={o}")).unwrap_or_default(),
                        if l.passed() { "ok" } else { "FAIL" }
                    );
                    lines.push(l.to_json());
                }
            }
            Ok(Report::verdict(all, text, json!({"checks": lines, "passed": all})))
        }
    }
}

/// Parse `args` (program name first), run, and write the report.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(r) => {
            let _ = if cli.json { writeln!(out, "{}", r.json) } else { write!(out, "{}", r.text) };
            r.code
        }
        Err(e) => {
            let _ = if cli.json { writeln!(err, "{}", json!({"error": e.to_string()})) } else { writeln!(err, "error: {e}") };
            2
        }
    }
}
