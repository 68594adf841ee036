//! Distance-geometry oracle.
//!
//! Lengths are squared everywhere at the API surface. Realizations are found
//! by Levenberg–Marquardt on the residuals `|p(u) - p(v)|^2 - l(uv)` with the
//! first `d` vertices gauge-fixed (vertex 0 at the origin, vertex `k` in the
//! span of the first `k` axes). Cayley configuration spaces of one nonedge
//! are estimated by random restarts, then gaps between samples are probed by
//! solving with the nonedge pinned to intermediate values, and cluster ends
//! are pushed outward by short continuation steps.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph, VertexPair};

/// A graph with a squared length on every edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinkageJson", into = "LinkageJson")]
pub struct Linkage {
    graph: Graph,
    len2: BTreeMap<VertexPair, f64>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: usize,
    v: usize,
    len2: f64,
}

#[derive(Serialize, Deserialize)]
struct LinkageJson {
    n: usize,
    edges: Vec<EdgeJson>,
}

impl TryFrom<LinkageJson> for Linkage {
    type Error = Error;

    fn try_from(j: LinkageJson) -> Result<Self> {
        let triples: Vec<(usize, usize, f64)> = j.edges.iter().map(|e| (e.u, e.v, e.len2)).collect();
        Linkage::from_triples(j.n, &triples)
    }
}

impl From<Linkage> for LinkageJson {
    fn from(l: Linkage) -> Self {
        LinkageJson { n: l.n(), edges: l.len2.iter().map(|(e, &len2)| EdgeJson { u: e.a(), v: e.b(), len2 }).collect() }
    }
}

impl Linkage {
    pub fn new(graph: Graph, len2: impl IntoIterator<Item = (VertexPair, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, l) in len2 {
            if !graph.has_pair(e) {
                return Err(Error::InvalidLinkage(format!("length given for nonedge {e}")));
            }
            if !l.is_finite() || l < 0.0 {
                return Err(Error::InvalidLinkage(format!("length of {e} must be finite and nonnegative, got {l}")));
            }
            if map.insert(e, l).is_some() {
                return Err(Error::InvalidLinkage(format!("length of {e} given twice")));
            }
        }
        if let Some(e) = graph.edges().into_iter().find(|e| !map.contains_key(e)) {
            return Err(Error::InvalidLinkage(format!("edge {e} has no length")));
        }
        Ok(Linkage { graph, len2: map })
    }

    pub fn from_triples(n: usize, triples: &[(usize, usize, f64)]) -> Result<Self> {
        let pairs = triples.iter().map(|&(u, v, _)| VertexPair::new(u, v)).collect::<Result<Vec<_>>>()?;
        let graph = Graph::new(n, &pairs)?;
        Linkage::new(graph, pairs.into_iter().zip(triples.iter().map(|t| t.2)))
    }

    /// Lengths read off a point placement.
    pub fn from_points(graph: Graph, points: &[Vec<f64>]) -> Self {
        let len2 = graph.edges().into_iter().map(|e| (e, dist2(&points[e.a()], &points[e.b()]))).collect();
        Linkage { graph, len2 }
    }

    /// Every edge gets the same length.
    pub fn uniform(graph: Graph, len2: f64) -> Self {
        let len2 = graph.edges().into_iter().map(|e| (e, len2)).collect();
        Linkage { graph, len2 }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn len2(&self, e: VertexPair) -> Option<f64> {
        self.len2.get(&e).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexPair, f64)> + '_ {
        self.len2.iter().map(|(e, l)| (*e, *l))
    }

    pub fn max_len2(&self) -> f64 {
        self.len2.values().copied().fold(0.0, f64::max)
    }

    pub fn with_edge(&self, e: VertexPair, len2: f64) -> Result<Linkage> {
        let graph = self.graph.with_edge(e)?;
        Linkage::new(graph, self.edges().chain([(e, len2)]))
    }

    pub fn with_len2(&self, e: VertexPair, len2: f64) -> Result<Linkage> {
        if !self.graph.has_pair(e) {
            return Err(Error::NotAnEdge(e));
        }
        let mut out = self.clone();
        out.len2.insert(e, len2);
        Ok(out)
    }

    /// Lengths on an induced subgraph, in its local labels.
    pub fn restrict(&self, sub: &Subgraph) -> Linkage {
        let len2 = sub
            .graph
            .edges()
            .into_iter()
            .map(|e| (e, self.len2[&crate::graph::pair(sub.to_host(e.a()), sub.to_host(e.b()))]))
            .collect();
        Linkage { graph: sub.graph.clone(), len2 }
    }

    /// `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Linkage {
        let graph = self.graph.relabel(perm);
        let len2 = self.edges().map(|(e, l)| (crate::graph::pair(perm[e.a()], perm[e.b()]), l)).collect();
        Linkage { graph, len2 }
    }

    fn constraints(&self) -> Vec<(usize, usize, f64)> {
        self.edges().map(|(e, l)| (e.a(), e.b(), l)).collect()
    }
}

pub fn dist2(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// A placement of the vertices in `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub d: usize,
    pub points: Vec<Vec<f64>>,
}

impl Realization {
    pub fn dist2(&self, u: usize, v: usize) -> f64 {
        dist2(&self.points[u], &self.points[v])
    }

    pub fn max_residual(&self, l: &Linkage) -> f64 {
        l.edges().map(|(e, len2)| (self.dist2(e.a(), e.b()) - len2).abs()).fold(0.0, f64::max)
    }

    /// `x -> R x + t`.
    pub fn transformed(&self, rot: &DMatrix<f64>, t: &[f64]) -> Realization {
        let points = self
            .points
            .iter()
            .map(|p| {
                let v = rot * DVector::from_column_slice(p);
                v.iter().zip(t).map(|(a, b)| a + b).collect()
            })
            .collect();
        Realization { d: self.d, points }
    }

    fn flat(&self) -> Vec<f64> {
        self.points.iter().flatten().copied().collect()
    }

    fn from_flat(d: usize, x: &[f64]) -> Realization {
        Realization { d, points: x.chunks(d).map(<[f64]>::to_vec).collect() }
    }
}

/// Random orthogonal matrix (QR of a Gaussian-ish matrix).
pub fn random_rotation<R: Rng>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let m = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    m.qr().q()
}

/// Uniform points in the unit cube and the linkage they induce.
pub fn random_linkage<R: Rng>(g: &Graph, d: usize, rng: &mut R) -> (Linkage, Realization) {
    let points: Vec<Vec<f64>> = (0..g.n()).map(|_| (0..d).map(|_| rng.gen_range(0.0..1.0)).collect()).collect();
    (Linkage::from_points(g.clone(), &points), Realization { d, points })
}

#[derive(Clone, Copy, Debug)]
struct SolveOptions {
    max_iter: usize,
    /// Stop as soon as every residual is at most this.
    target: f64,
}

/// Coordinates `k*d + j` that are free under the gauge.
fn free_coordinates(n: usize, d: usize) -> Vec<Option<usize>> {
    let mut idx = vec![None; n * d];
    let mut next = 0;
    for k in 0..n {
        for j in 0..d {
            if k >= d || j < k {
                idx[k * d + j] = Some(next);
                next += 1;
            }
        }
    }
    idx
}

fn residuals(cons: &[(usize, usize, f64)], d: usize, x: &[f64], r: &mut DVector<f64>) {
    for (i, &(u, v, l)) in cons.iter().enumerate() {
        r[i] = dist2(&x[u * d..u * d + d], &x[v * d..v * d + d]) - l;
    }
}

fn max_abs(r: &DVector<f64>) -> f64 {
    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Levenberg–Marquardt (Nielsen's damping update). Returns the final max
/// absolute residual; `x` is updated in place.
fn levenberg_marquardt(cons: &[(usize, usize, f64)], n: usize, d: usize, x: &mut [f64], opt: SolveOptions) -> f64 {
    let free = free_coordinates(n, d);
    let p = free.iter().flatten().count();
    let m = cons.len();
    for (c, f) in free.iter().enumerate() {
        if f.is_none() {
            x[c] = 0.0;
        }
    }
    let mut r = DVector::zeros(m);
    residuals(cons, d, x, &mut r);
    if m == 0 || p == 0 || max_abs(&r) <= opt.target {
        return max_abs(&r);
    }
    let jacobian = |x: &[f64]| {
        let mut jac = DMatrix::zeros(m, p);
        for (i, &(u, v, _)) in cons.iter().enumerate() {
            for j in 0..d {
                let diff = 2.0 * (x[u * d + j] - x[v * d + j]);
                if let Some(c) = free[u * d + j] {
                    jac[(i, c)] += diff;
                }
                if let Some(c) = free[v * d + j] {
                    jac[(i, c)] -= diff;
                }
            }
        }
        jac
    };
    let mut jac = jacobian(x);
    let mut a = jac.tr_mul(&jac);
    let mut g = jac.tr_mul(&r);
    let mut cost = 0.5 * r.norm_squared();
    let mut mu = 1e-3 * a.diagonal().max().max(1e-12);
    let mut nu = 2.0;
    let mut trial = x.to_vec();
    let mut r_new = DVector::zeros(m);
    for _ in 0..opt.max_iter {
        let mut lhs = a.clone();
        for i in 0..p {
            lhs[(i, i)] += mu;
        }
        let Some(chol) = lhs.cholesky() else {
            mu *= nu;
            nu *= 2.0;
            continue;
        };
        let h = chol.solve(&(-&g));
        let xnorm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if h.norm() <= 1e-16 * (xnorm + 1e-16) {
            break;
        }
        trial.copy_from_slice(x);
        for (c, f) in free.iter().enumerate() {
            if let Some(k) = f {
                trial[c] += h[*k];
            }
        }
        residuals(cons, d, &trial, &mut r_new);
        let cost_new = 0.5 * r_new.norm_squared();
        let predicted = 0.5 * h.dot(&(mu * &h - &g));
        let rho = if predicted > 0.0 { (cost - cost_new) / predicted } else { -1.0 };
        if rho > 0.0 && cost_new.is_finite() {
            x.copy_from_slice(&trial);
            std::mem::swap(&mut r, &mut r_new);
            cost = cost_new;
            if max_abs(&r) <= opt.target {
                break;
            }
            jac = jacobian(x);
            a = jac.tr_mul(&jac);
            g = jac.tr_mul(&r);
            mu *= (1.0f64 / 3.0).max(1.0 - (2.0 * rho - 1.0).powi(3));
            nu = 2.0;
        } else {
            mu *= nu;
            nu *= 2.0;
            if !mu.is_finite() || mu > 1e30 {
                break;
            }
        }
    }
    max_abs(&r)
}

fn restart_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_start(n: usize, d: usize, scale: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n * d).map(|_| rng.gen_range(-scale..scale)).collect()
}

/// Squared-length residual accepted by [`realize`].
pub const REALIZE_TOLERANCE: f64 = 1e-8;

const POLISH: SolveOptions = SolveOptions { max_iter: 500, target: 1e-15 };

fn solve_from(cons: &[(usize, usize, f64)], n: usize, d: usize, start: Vec<f64>, accept: f64) -> Option<Realization> {
    let mut x = start;
    let res = levenberg_marquardt(cons, n, d, &mut x, POLISH);
    (res <= accept).then(|| Realization::from_flat(d, &x))
}

fn scale_of(l: &Linkage) -> f64 {
    l.max_len2().sqrt().max(1e-3)
}

/// A `d`-realization with max residual at most [`REALIZE_TOLERANCE`], by
/// seeded random restarts. `None` only means none was found.
pub fn realize(l: &Linkage, d: usize, seed: u64, restarts: usize) -> Option<Realization> {
    if d == 0 {
        return None;
    }
    let cons = l.constraints();
    let (n, scale) = (l.n(), scale_of(l));
    const CHUNK: usize = 32;
    let mut start = 0;
    while start < restarts {
        let end = (start + CHUNK).min(restarts);
        let found = (start..end).into_par_iter().find_map_first(|i| {
            let mut rng = restart_rng(seed, i as u64);
            solve_from(&cons, n, d, random_start(n, d, scale, &mut rng), REALIZE_TOLERANCE)
        });
        if found.is_some() {
            return found;
        }
        start = end;
    }
    None
}

/// Knobs for configuration-space sampling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingConfig {
    /// Random restarts.
    pub samples: usize,
    pub seed: u64,
    /// Clusters are separated by gaps wider than this (squared length).
    pub gap: f64,
    /// Max residual for a sample to count as a realization.
    pub accept_residual: f64,
    /// Random restarts spent probing a suspected gap.
    pub fill_restarts: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { samples: 600, seed: 0, gap: 1e-3, accept_residual: 1e-14, fill_restarts: 12 }
    }
}

impl SamplingConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }
}

fn check_nonedges(l: &Linkage, fs: &[VertexPair]) -> Result<()> {
    for &f in fs {
        if f.b() >= l.n() {
            return Err(Error::VertexOutOfRange { id: f.b(), n: l.n() });
        }
        if l.graph().has_pair(f) {
            return Err(Error::AlreadyAnEdge(f));
        }
    }
    Ok(())
}

/// Accepted random-restart realizations, in restart order.
pub fn sample_realizations(l: &Linkage, d: usize, cfg: &SamplingConfig) -> Vec<Realization> {
    let cons = l.constraints();
    let (n, scale) = (l.n(), scale_of(l));
    (0..cfg.samples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = restart_rng(cfg.seed, i as u64);
            solve_from(&cons, n, d, random_start(n, d, scale, &mut rng), cfg.accept_residual)
        })
        .collect()
}

/// Cayley-map images `(l(f))_{f in F}` of accepted realizations.
pub fn sample_ccs(l: &Linkage, fs: &[VertexPair], d: usize, cfg: &SamplingConfig) -> Result<Vec<Vec<f64>>> {
    check_nonedges(l, fs)?;
    let real = sample_realizations(l, d, cfg);
    if real.is_empty() {
        return Err(Error::Infeasible(format!("no realization in R^{d} found in {} restarts", cfg.samples)));
    }
    Ok(real.iter().map(|p| fs.iter().map(|f| p.dist2(f.a(), f.b())).collect()).collect())
}

/// Where an [`IntervalSet`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Sampled { samples: usize, gap: f64 },
}

/// Disjoint sorted closed intervals of squared lengths.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
    pub provenance: Provenance,
}

impl IntervalSet {
    /// Sorts and merges overlapping intervals.
    pub fn new(mut intervals: Vec<(f64, f64)>, provenance: Provenance) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::Precondition(format!("bad interval [{lo}, {hi}]")));
            }
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            let lo = lo.max(0.0);
            let hi = hi.max(lo);
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Ok(IntervalSet { intervals: merged, provenance })
    }

    pub fn empty(provenance: Provenance) -> Self {
        IntervalSet { intervals: Vec::new(), provenance }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_single_interval(&self) -> bool {
        self.intervals.len() == 1
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| x >= lo - tol && x <= hi + tol)
    }

    /// Centers of the intervals.
    pub fn centers(&self) -> Vec<f64> {
        self.intervals.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect()
    }

    pub fn max_width(&self) -> f64 {
        self.intervals.iter().map(|&(lo, hi)| hi - lo).fold(0.0, f64::max)
    }

    /// Smallest distance between consecutive intervals.
    pub fn min_gap(&self) -> Option<f64> {
        self.intervals.windows(2).map(|w| w[1].0 - w[0].1).min_by(f64::total_cmp)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = (self.intervals[i], other.intervals[j]);
            let lo = a.0.max(b.0);
            let hi = a.1.min(b.1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a.1 < b.1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        let provenance = match (self.provenance, other.provenance) {
            (Provenance::Exact, Provenance::Exact) => Provenance::Exact,
            (Provenance::Sampled { samples, gap }, Provenance::Exact)
            | (Provenance::Exact, Provenance::Sampled { samples, gap }) => Provenance::Sampled { samples, gap },
            (Provenance::Sampled { samples: s1, gap: g1 }, Provenance::Sampled { samples: s2, gap: g2 }) => {
                Provenance::Sampled { samples: s1.min(s2), gap: g1.max(g2) }
            }
        };
        IntervalSet { intervals: out, provenance }
    }

    /// Single-interval evidence. Sampling can refute the SIP but never prove
    /// it.
    pub fn sip_evidence(&self) -> SipEvidence {
        match (self.provenance, self.intervals.len()) {
            (_, 0) => SipEvidence::Empty,
            (Provenance::Exact, 1) => SipEvidence::SingleInterval,
            (Provenance::Sampled { .. }, 1) => SipEvidence::NotRefuted,
            _ => SipEvidence::Refuted { between: (self.intervals[0].1, self.intervals[1].0) },
        }
    }
}

/// Trims trailing zeros: `1.000000` prints as `1`.
pub fn format_value(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.intervals.iter().map(|&(lo, hi)| format!("[{},{}]", format_value(lo), format_value(hi))).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// What a CCS says about the single-interval property.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SipEvidence {
    /// Exact computation: one interval.
    SingleInterval,
    /// Sampling found one interval; not a proof.
    NotRefuted,
    /// Two or more intervals: a gap between these values.
    Refuted { between: (f64, f64) },
    Empty,
}

struct Sampler<'a> {
    cons: Vec<(usize, usize, f64)>,
    n: usize,
    d: usize,
    f: VertexPair,
    scale: f64,
    cfg: &'a SamplingConfig,
}

impl Sampler<'_> {
    /// A realization with `l(f) = t`, warm-started from `start` if given,
    /// else from fresh random restarts.
    fn at(&self, t: f64, start: Option<&Realization>, salt: u64) -> Option<Realization> {
        if t < 0.0 {
            return None;
        }
        let mut cons = self.cons.clone();
        cons.push((self.f.a(), self.f.b(), t));
        if let Some(s) = start {
            if let Some(r) = solve_from(&cons, self.n, self.d, s.flat(), self.cfg.accept_residual) {
                return Some(r);
            }
        }
        (0..self.cfg.fill_restarts).find_map(|i| {
            let mut rng = restart_rng(self.cfg.seed ^ 0x5eed_f111, salt.wrapping_mul(1 << 20).wrapping_add(i as u64));
            solve_from(&cons, self.n, self.d, random_start(self.n, self.d, self.scale, &mut rng), self.cfg.accept_residual)
        })
    }

    /// Warm-started continuation only.
    fn step(&self, t: f64, start: &Realization) -> Option<Realization> {
        if t < 0.0 {
            return None;
        }
        let mut cons = self.cons.clone();
        cons.push((self.f.a(), self.f.b(), t));
        solve_from(&cons, self.n, self.d, start.flat(), self.cfg.accept_residual)
    }

    fn value(&self, r: &Realization) -> f64 {
        r.dist2(self.f.a(), self.f.b())
    }

    /// Probe midpoints of wide gaps until every gap is narrow or unfillable.
    fn fill(&self, pts: &mut Vec<(f64, Realization)>) {
        let mut salt = 1u64;
        let mut i = 0;
        while i + 1 < pts.len() {
            let (a, b) = (pts[i].0, pts[i + 1].0);
            if b - a <= self.cfg.gap {
                i += 1;
                continue;
            }
            let t = 0.5 * (a + b);
            salt += 1;
            let found = self
                .step(t, &pts[i].1)
                .or_else(|| self.step(t, &pts[i + 1].1))
                .or_else(|| self.at(t, None, salt));
            match found {
                Some(r) => pts.insert(i + 1, (self.value(&r), r)),
                None => i += 1,
            }
        }
    }

    /// Push a cluster end outward in steps no wider than half the gap.
    fn extend(&self, t0: f64, start: &Realization, dir: f64) -> (f64, Realization) {
        let max_step = 0.5 * self.cfg.gap;
        let mut h = max_step;
        let (mut t, mut cur) = (t0, start.clone());
        let mut budget = 4000;
        // Finer steps would only resolve solver noise near singular configurations.
        let min_step = 1e-3 * self.cfg.gap;
        while h >= min_step && budget > 0 {
            budget -= 1;
            match self.step(t + dir * h, &cur) {
                Some(r) => {
                    t = self.value(&r);
                    cur = r;
                    h = (2.0 * h).min(max_step);
                }
                None => h *= 0.5,
            }
        }
        (t, cur)
    }
}

/// Sampled CCS of one nonedge, clustered at `cfg.gap`.
pub fn ccs_intervals(l: &Linkage, f: VertexPair, d: usize, cfg: &SamplingConfig) -> Result<IntervalSet> {
    ccs_intervals_detailed(l, f, d, cfg).map(|r| r.intervals)
}

/// [`ccs_intervals`] together with the raw sample values.
#[derive(Clone, Debug)]
pub struct CcsReport {
    pub intervals: IntervalSet,
    /// Cayley-map values of the accepted random restarts.
    pub samples: Vec<f64>,
    pub realizations: Vec<Realization>,
}

pub fn ccs_intervals_detailed(l: &Linkage, f: VertexPair, d: usize, cfg: &SamplingConfig) -> Result<CcsReport> {
    check_nonedges(l, &[f])?;
    let realizations = sample_realizations(l, d, cfg);
    if realizations.is_empty() {
        return Err(Error::Infeasible(format!("no realization in R^{d} found in {} restarts", cfg.samples)));
    }
    let s = Sampler { cons: l.constraints(), n: l.n(), d, f, scale: scale_of(l), cfg };
    let samples: Vec<f64> = realizations.iter().map(|r| s.value(r)).collect();
    let mut pts: Vec<(f64, Realization)> = samples.iter().copied().zip(realizations.iter().cloned()).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    s.fill(&mut pts);
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut begin = 0;
    for i in 1..=pts.len() {
        if i == pts.len() || pts[i].0 - pts[i - 1].0 > cfg.gap {
            clusters.push((begin, i - 1));
            begin = i;
        }
    }
    let ends: Vec<(f64, f64)> = clusters
        .par_iter()
        .map(|&(a, b)| {
            let (lo, _) = s.extend(pts[a].0, &pts[a].1, -1.0);
            let (hi, _) = s.extend(pts[b].0, &pts[b].1, 1.0);
            (lo.min(pts[a].0), hi.max(pts[b].0))
        })
        .collect();
    // Re-cluster in case extension closed a gap.
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(ends.len());
    for (lo, hi) in ends {
        match merged.last_mut() {
            Some(last) if lo - last.1 <= cfg.gap => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let intervals = IntervalSet::new(merged, Provenance::Sampled { samples: samples.len(), gap: cfg.gap })?;
    Ok(CcsReport { intervals, samples, realizations })
}

/// Squared lengths of a triangle `{v2, v3, v4}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub l23: f64,
    pub l24: f64,
    pub l34: f64,
}

impl Triangle {
    pub fn is_realizable(&self) -> bool {
        let (a, b, c) = (self.l23.sqrt(), self.l24.sqrt(), self.l34.sqrt());
        let tol = 1e-12 * (1.0 + a + b + c);
        a + b >= c - tol && a + c >= b - tol && b + c >= a - tol
    }

    /// `v3` at the origin, `v4` on the positive x-axis, `v2` in the upper
    /// half plane.
    pub fn coordinates(&self) -> Result<[[f64; 2]; 3]> {
        if !self.is_realizable() || [self.l23, self.l24, self.l34].iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Infeasible(format!("triangle {self:?} violates the triangle inequality")));
        }
        let c = self.l34.sqrt();
        if c == 0.0 {
            return Err(Error::Precondition("v3 and v4 coincide".into()));
        }
        let x2 = (self.l23 - self.l24 + self.l34) / (2.0 * c);
        let y2 = (self.l23 - x2 * x2).max(0.0).sqrt();
        Ok([[x2, y2], [0.0, 0.0], [c, 0.0]])
    }
}

/// Exact range of `|v1 v2|^2` when `v1` sits at squared distances `a2` from
/// `v3` and `b2` from `v4`. In `R^3` the locus of `v1` is a circle about the
/// `v3 v4` axis; in `R^2` it is two mirror points.
pub fn apex_pair_interval(tri: Triangle, a2: f64, b2: f64, d: usize) -> Result<IntervalSet> {
    if !(2..=3).contains(&d) {
        return Err(Error::DimensionOutOfRange(d));
    }
    let [[x2, y2], _, [c, _]] = tri.coordinates()?;
    let x1 = (a2 - b2 + c * c) / (2.0 * c);
    let r2 = a2 - x1 * x1;
    let scale = a2.max(b2).max(c * c).max(1.0);
    if r2 < -1e-12 * scale {
        return Err(Error::Infeasible(format!("no point at squared distances {a2}, {b2} from v3, v4")));
    }
    let r = r2.max(0.0).sqrt();
    let base = (x1 - x2) * (x1 - x2);
    let lo = base + (r - y2) * (r - y2);
    let hi = base + (r + y2) * (r + y2);
    let iv = if d == 3 { vec![(lo, hi)] } else { vec![(lo, lo), (hi, hi)] };
    IntervalSet::new(iv, Provenance::Exact)
}

/// Eigenvalue tolerance of [`gram_realizability`].
pub const GRAM_TOLERANCE: f64 = 1e-9;

/// Whether a full squared-distance matrix is realizable in `R^d`.
pub fn gram_realizability(dm: &DMatrix<f64>, d: usize) -> Result<bool> {
    let n = dm.nrows();
    if dm.ncols() != n {
        return Err(Error::Precondition(format!("distance matrix is {}x{}", n, dm.ncols())));
    }
    for i in 0..n {
        if dm[(i, i)].abs() > GRAM_TOLERANCE {
            return Err(Error::Precondition(format!("nonzero diagonal entry at {i}")));
        }
        for j in 0..i {
            if !dm[(i, j)].is_finite() || (dm[(i, j)] - dm[(j, i)]).abs() > GRAM_TOLERANCE {
                return Err(Error::Precondition(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    if n == 0 {
        return Ok(true);
    }
    let j = DMatrix::identity(n, n) - DMatrix::from_element(n, n, 1.0 / n as f64);
    let gram = -0.5 * &j * dm * &j;
    let eig = SymmetricEigen::new(gram);
    let negative = eig.eigenvalues.iter().any(|&e| e < -GRAM_TOLERANCE);
    let rank = eig.eigenvalues.iter().filter(|&&e| e > GRAM_TOLERANCE).count();
    Ok(!negative && rank <= d)
}

/// Intersection of the CCSs of the pieces of a clique sum.
pub fn glue_intervals(parts: &[IntervalSet]) -> Result<IntervalSet> {
    let (first, rest) = parts.split_first().ok_or_else(|| Error::Precondition("nothing to glue".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, p| acc.intersect(p)))
}

/// Soft check of the covering-map property on samples.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    /// Sample clusters modulo isometry.
    pub clusters: usize,
    /// Smallest fraction of the sampled CCS width covered by one cluster.
    pub min_coverage: f64,
    /// `min_coverage < 0.95`; sampling may simply have missed part of a
    /// component, so this is a flag, not a failure.
    pub flagged: bool,
}

/// Groups sampled realizations by single-linkage on their isometry-invariant
/// distance vectors and measures how much of the CCS each group covers.
pub fn covering_map_check(l: &Linkage, f: VertexPair, d: usize, cfg: &SamplingConfig) -> Result<CoveringReport> {
    let rep = ccs_intervals_detailed(l, f, d, cfg)?;
    let n = l.n();
    let inv: Vec<Vec<f64>> = rep
        .realizations
        .iter()
        .map(|r| (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| r.dist2(u, v).sqrt()).collect())
        .collect();
    let m = inv.len();
    let eps = 0.15 * scale_of(l) * (n as f64).sqrt();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..m {
        for j in 0..i {
            if dist2(&inv[i], &inv[j]).sqrt() <= eps {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut ranges: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for (i, &v) in rep.samples.iter().enumerate() {
        let root = find(&mut parent, i);
        let e = ranges.entry(root).or_insert((v, v));
        e.0 = e.0.min(v);
        e.1 = e.1.max(v);
    }
    let lo = rep.samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = rep.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = hi - lo;
    let min_coverage = if width <= 0.0 {
        1.0
    } else {
        ranges.values().map(|&(a, b)| (b - a) / width).fold(1.0, f64::min)
    };
    Ok(CoveringReport { clusters: ranges.len(), min_coverage, flagged: min_coverage < 0.95 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pair;

    fn quick() -> SamplingConfig {
        SamplingConfig::default().with_samples(200)
    }

    #[test]
    fn equilateral_triangle() {
        let l = Linkage::uniform(Graph::complete(3), 1.0);
        let r = realize(&l, 2, 1, 50).unwrap();
        assert!(r.max_residual(&l) <= REALIZE_TOLERANCE);
        assert_eq!(r.d, 2);
    }

    #[test]
    fn triangle_inequality_violation_is_unrealizable() {
        let l = Linkage::from_triples(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 9.0)]).unwrap();
        assert!(realize(&l, 3, 1, 50).is_none());
    }

    #[test]
    fn k5_minus_edge_unit() {
        let g = Graph::complete(5).without_edge(pair(0, 1)).unwrap();
        let l = Linkage::uniform(g, 1.0);
        let r = realize(&l, 3, 2, 200).unwrap();
        assert!(r.max_residual(&l) <= REALIZE_TOLERANCE);
        let ccs = ccs_intervals(&l, pair(0, 1), 3, &quick()).unwrap();
        assert_eq!(ccs.len(), 2);
        let c = ccs.centers();
        assert!(c[0].abs() < 1e-6 && (c[1] - 8.0 / 3.0).abs() < 1e-6, "{ccs}");
    }

    #[test]
    fn path_ccs_by_dimension() {
        let l = Linkage::from_triples(3, &[(0, 1, 1.0), (1, 2, 4.0)]).unwrap();
        let f = pair(0, 2);
        let one = ccs_intervals(&l, f, 1, &quick()).unwrap();
        assert_eq!(one.to_string(), "{[1,1],[9,9]}");
        let two = ccs_intervals(&l, f, 2, &quick()).unwrap();
        assert!(two.is_single_interval());
        let (lo, hi) = two.intervals()[0];
        assert!((lo - 1.0).abs() < 1e-3 && (hi - 9.0).abs() < 1e-3, "{two}");
    }

    #[test]
    fn apex_interval_cases() {
        let unit = Triangle { l23: 1.0, l24: 1.0, l34: 1.0 };
        // v1 at the midpoint of v3v4: degenerate circle.
        let s = apex_pair_interval(unit, 0.25, 0.25, 3).unwrap();
        assert!(s.max_width() < 1e-12);
        assert!((s.centers()[0] - 0.75).abs() < 1e-12);
        // v2 on the axis.
        let axis = Triangle { l23: 1.0, l24: 4.0, l34: 9.0 };
        assert!(apex_pair_interval(axis, 1.0, 4.0, 3).unwrap().max_width() < 1e-12);
        assert!(apex_pair_interval(unit, 0.01, 4.0, 3).is_err());
        // Dense sweep of the circle.
        let (a2, b2) = (0.8, 0.6);
        let iv = apex_pair_interval(unit, a2, b2, 3).unwrap();
        let [[x2, y2], _, [c, _]] = unit.coordinates().unwrap();
        let x1 = (a2 - b2 + c * c) / (2.0 * c);
        let r = (a2 - x1 * x1).sqrt();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let steps = 1_000_000;
        for k in 0..steps {
            let th = std::f64::consts::TAU * k as f64 / steps as f64;
            let v = (x1 - x2).powi(2) + (r * th.cos() - y2).powi(2) + (r * th.sin()).powi(2);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let (elo, ehi) = iv.intervals()[0];
        assert!((lo - elo).abs() < 1e-9 && (hi - ehi).abs() < 1e-9);
        let planar = apex_pair_interval(unit, a2, b2, 2).unwrap();
        assert_eq!(planar.len(), 2);
        assert!((planar.intervals()[0].0 - elo).abs() < 1e-12);
    }

    #[test]
    fn gram_examples() {
        let tri = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0]);
        assert!(gram_realizability(&tri, 2).unwrap());
        assert!(!gram_realizability(&tri, 1).unwrap());
        let mut tet = DMatrix::from_element(4, 4, 1.0);
        tet.fill_diagonal(0.0);
        assert!(gram_realizability(&tet, 3).unwrap());
        assert!(!gram_realizability(&tet, 2).unwrap());
        tet[(0, 1)] += 10.0;
        tet[(1, 0)] += 10.0;
        assert!(!gram_realizability(&tet, 3).unwrap());
        assert!(gram_realizability(&DMatrix::from_element(2, 3, 0.0), 2).is_err());
    }

    #[test]
    fn glue_examples() {
        let a = IntervalSet::new(vec![(0.0, 4.0)], Provenance::Exact).unwrap();
        let b = IntervalSet::new(vec![(1.0, 9.0)], Provenance::Exact).unwrap();
        assert_eq!(glue_intervals(&[a, b]).unwrap().intervals(), &[(1.0, 4.0)]);
        let a = IntervalSet::new(vec![(0.0, 1.0)], Provenance::Exact).unwrap();
        let b = IntervalSet::new(vec![(2.0, 3.0)], Provenance::Exact).unwrap();
        assert!(glue_intervals(&[a, b]).unwrap().is_empty());
        assert!(glue_intervals(&[]).is_err());
    }

    #[test]
    fn two_edge_path_glued_at_middle() {
        // Path 0-1-2 with f = 02; pieces are the single edges 01 and 12 plus
        // the shared clique {1}. Each piece alone leaves f free, so the
        // intersection is the whole-path CCS computed piecewise by the
        // annulus formula.
        let l = Linkage::from_triples(3, &[(0, 1, 1.0), (1, 2, 4.0)]).unwrap();
        let whole = ccs_intervals(&l, pair(0, 2), 3, &quick()).unwrap();
        let exact = IntervalSet::new(vec![(1.0, 9.0)], Provenance::Exact).unwrap();
        let glued = glue_intervals(&[exact.clone(), exact]).unwrap();
        assert!((whole.intervals()[0].0 - glued.intervals()[0].0).abs() < 1e-6);
        assert!((whole.intervals()[0].1 - glued.intervals()[0].1).abs() < 1e-6);
    }

    #[test]
    fn isometries_preserve_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = Graph::complete(5).without_edge(pair(0, 1)).unwrap();
        let (l, _) = random_linkage(&g, 3, &mut rng);
        let r = realize(&l, 3, 7, 100).unwrap();
        let rot = random_rotation(3, &mut rng);
        let moved = r.transformed(&rot, &[0.3, -2.0, 5.0]);
        assert!((moved.max_residual(&l) - r.max_residual(&l)).abs() <= 1e-10);
    }

    #[test]
    fn linkage_json_round_trip() {
        let l = Linkage::from_triples(3, &[(0, 1, 1.0), (1, 2, 4.5)]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[{"u":0,"v":1,"len2":1.0},{"u":1,"v":2,"len2":4.5}]}"#);
        let back: Linkage = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Linkage>(r#"{"n":2,"edges":[{"u":0,"v":1,"len2":-1}]}"#).is_err());
    }

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(1.0), "1");
        assert_eq!(format_value(2.5), "2.5");
        assert_eq!(format_value(-0.0000001), "0");
        assert_eq!(format_value(8.0 / 3.0), "2.666667");
    }
}
