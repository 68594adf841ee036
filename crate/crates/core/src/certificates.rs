//! Proper non-3-SIP length maps: base maps on `K5 - f` and `K222 - f`, the
//! transfer through a `K4` and degree-3 decorations, composed bottom-up.
//!
//! Every construction here is checked by sampling in [`verify_certificate`];
//! nothing is trusted on the strength of the algebra alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pair, Graph, VertexPair};
use crate::numerics::{
    apex_pair_interval, ccs_intervals, gram_realizability, realize, IntervalSet, Linkage, Realization,
    SamplingConfig, Triangle,
};
use crate::patterns;
use crate::sip::decide_sip3;

/// Two claimed cluster values of `l(f)`, each a single squared length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub linkage: Linkage,
    #[serde(rename = "nonedge", with = "pair_json")]
    pub f: VertexPair,
    #[serde(rename = "claimed_values")]
    pub values: Vec<f64>,
    /// Steps that produced it, base first.
    #[serde(default)]
    pub construction: Vec<String>,
}

mod pair_json {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::VertexPair;

    pub fn serialize<S: Serializer>(p: &VertexPair, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq([p.a(), p.b()])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<VertexPair, D::Error> {
        let [u, v] = <[usize; 2]>::deserialize(d)?;
        VertexPair::new(u, v).map_err(serde::de::Error::custom)
    }
}

impl Certificate {
    /// Two distinct positive values.
    pub fn is_proper(&self) -> bool {
        self.values.len() == 2 && self.values.iter().all(|&v| v > 0.0) && (self.values[0] - self.values[1]).abs() > 1e-3
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Certificate = serde_json::from_str(s).map_err(|e| Error::InvalidLinkage(e.to_string()))?;
        if c.f.b() >= c.linkage.n() {
            return Err(Error::VertexOutOfRange { id: c.f.b(), n: c.linkage.n() });
        }
        if c.linkage.graph().has_pair(c.f) {
            return Err(Error::AlreadyAnEdge(c.f));
        }
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `K5 - f`, all lengths 1. Its values are `0` and `8/3`, so it is not
    /// proper.
    K5Unit,
    /// `K5 - f`: unit `K4` on `{0,2,3,4}`, squared length 4 from vertex 1.
    K5Proper,
    /// `K222 - f` with a collinear triple, so that `l(f)` takes two values.
    K222,
}

impl std::str::FromStr for BaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k5-unit" => Ok(BaseKind::K5Unit),
            "k5-proper" => Ok(BaseKind::K5Proper),
            "k222" => Ok(BaseKind::K222),
            _ => Err(Error::Precondition(format!("unknown base certificate {s:?}"))),
        }
    }
}

impl BaseKind {
    pub fn name(self) -> &'static str {
        match self {
            BaseKind::K5Unit => "k5-unit",
            BaseKind::K5Proper => "k5-proper",
            BaseKind::K222 => "k222",
        }
    }
}

/// Squared distance between the two apexes over a unit triangle, at heights
/// `h1, h2` on the same or opposite sides.
fn apex_values(h1: f64, h2: f64) -> Vec<f64> {
    vec![(h1 - h2).powi(2), (h1 + h2).powi(2)]
}

pub fn base_certificate(kind: BaseKind) -> Certificate {
    let f = pair(0, 1);
    let g = patterns::k5().without_edge(f).expect("K5 has every edge");
    let (linkage, values) = match kind {
        BaseKind::K5Unit => {
            let h = (2.0f64 / 3.0).sqrt();
            (Linkage::uniform(g, 1.0), apex_values(h, h))
        }
        BaseKind::K5Proper => {
            let lens = g.edges().into_iter().map(|e| (e, if e.contains(1) { 4.0 } else { 1.0 }));
            let linkage = Linkage::new(g.clone(), lens).expect("lengths cover the edges");
            // Circumradius^2 of the unit triangle is 1/3.
            (linkage, apex_values((2.0f64 / 3.0).sqrt(), (11.0f64 / 3.0).sqrt()))
        }
        BaseKind::K222 => {
            let f = pair(0, 2);
            let g = patterns::k222().without_edge(f).expect("K222 has 02");
            let mut p: Vec<Vec<f64>> = vec![
                vec![1.5, 0.3, 0.8],
                vec![0.0, 0.0, 0.0],
                vec![0.4, 0.5, 0.7],
                vec![2.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
            ];
            let linkage = Linkage::from_points(g, &p);
            let same = crate::numerics::dist2(&p[0], &p[2]);
            p[0][2] = -p[0][2];
            let mirrored = crate::numerics::dist2(&p[0], &p[2]);
            return Certificate { linkage, f, values: vec![same, mirrored], construction: vec![kind.name().into()] };
        }
    };
    Certificate { linkage, f, values, construction: vec![kind.name().into()] }
}

fn check_triangle(t: &Triangle) -> Result<()> {
    let l = [t.l23, t.l24, t.l34];
    if l.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
        return Err(Error::Precondition(format!("triangle lengths must be positive, got {t:?}")));
    }
    let dm = nalgebra::DMatrix::from_row_slice(3, 3, &[0.0, t.l23, t.l24, t.l23, 0.0, t.l34, t.l24, t.l34, 0.0]);
    if !gram_realizability(&dm, 3)? {
        return Err(Error::Infeasible(format!("triangle {t:?} is not realizable")));
    }
    Ok(())
}

/// Output of [`transfer_through_k4`]. Vertices are `v1..v4` as `0..3`;
/// `f = v1 v2` and `v3 v4` carries the input values.
#[derive(Clone, Debug, PartialEq)]
pub struct Transfer {
    /// Squared lengths of `v1 v3` and `v1 v4`.
    pub attach: (f64, f64),
    pub first: Linkage,
    pub second: Linkage,
    /// The single value of `l(f)` under each output.
    pub values: [f64; 2],
}

/// Attach `v1` to `v3, v4` so that each input value of `v3 v4` forces `v1`
/// onto the line `v3 v4` (outside the segment for the smaller value, inside
/// for the larger). The relations `|v3v4| = |x - y|` and `x + y` hold for
/// plain lengths.
pub fn transfer_through_k4(ell1: Triangle, ell2: Triangle) -> Result<Transfer> {
    check_triangle(&ell1)?;
    check_triangle(&ell2)?;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    if !close(ell1.l23, ell2.l23) || !close(ell1.l24, ell2.l24) {
        return Err(Error::Precondition("the two maps must differ only on v3v4".into()));
    }
    if close(ell1.l34, ell2.l34) {
        return Err(Error::Precondition("the two maps agree on v3v4; nothing to transfer".into()));
    }
    let (a, b) = (ell1.l34.min(ell2.l34).sqrt(), ell1.l34.max(ell2.l34).sqrt());
    let (x, y) = (0.5 * (b + a), 0.5 * (b - a));
    let attach = if close(x * x, ell1.l23) { (y * y, x * x) } else { (x * x, y * y) };
    let build = |t: &Triangle| -> Result<(Linkage, f64)> {
        let iv = apex_pair_interval(*t, attach.0, attach.1, 3)?;
        let value = iv.centers()[0];
        if iv.len() != 1 || iv.max_width() > 1e-9 {
            return Err(Error::Infeasible(format!("attachment leaves {iv} for f")));
        }
        let l = Linkage::from_triples(
            4,
            &[(1, 2, t.l23), (1, 3, t.l24), (2, 3, t.l34), (0, 2, attach.0), (0, 3, attach.1)],
        )?;
        Ok((l, value))
    };
    let (first, v1) = build(&ell1)?;
    let (second, v2) = build(&ell2)?;
    if (v1 - v2).abs() <= 1e-3 {
        return Err(Error::Infeasible(format!("transferred values {v1} and {v2} coincide")));
    }
    Ok(Transfer { attach, first, second, values: [v1, v2] })
}

/// Output of [`decorate_degree3`]: squared lengths from the new vertex to
/// the triangle vertices `v2, v3, v4`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoration {
    pub apex: [f64; 3],
    /// Rotation applied to the first triangle to break parallel bisectors.
    pub theta: f64,
}

impl Decoration {
    /// `K4` linkage on `v2, v3, v4` (as `0, 1, 2`) plus the apex `3`.
    pub fn linkage(&self, t: &Triangle) -> Linkage {
        Linkage::from_triples(
            4,
            &[(0, 1, t.l23), (0, 2, t.l24), (1, 2, t.l34), (0, 3, self.apex[0]), (1, 3, self.apex[1]), (2, 3, self.apex[2])],
        )
        .expect("K4 linkage")
    }
}

/// `v3` at the origin, `v4` on the x-axis, `v2` above; returned in the
/// order `v2, v3, v4`.
fn canonical(t: &Triangle) -> Result<[[f64; 2]; 3]> {
    t.coordinates()
}

fn rotate(p: [f64; 2], th: f64) -> [f64; 2] {
    let (s, c) = th.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

/// A point equidistant from corresponding vertices of two triangles that
/// share the vertex at the origin. `None` when the bisectors are parallel
/// and disjoint.
fn bisector_point(p: &[[f64; 2]; 3], q: &[[f64; 2]; 3]) -> Option<[f64; 2]> {
    let scale = p.iter().chain(q).map(|v| v[0].abs().max(v[1].abs())).fold(1.0, f64::max);
    let centroid = [(p[0][0] + p[1][0] + p[2][0]) / 3.0, (p[0][1] + p[1][1] + p[2][1]) / 3.0];
    // 2 x . (q_j - p_j) = |q_j|^2 - |p_j|^2, for the two non-origin vertices.
    let rows: Vec<([f64; 2], f64)> = [0, 2]
        .iter()
        .map(|&j| {
            let r = [2.0 * (q[j][0] - p[j][0]), 2.0 * (q[j][1] - p[j][1])];
            let rhs = q[j][0] * q[j][0] + q[j][1] * q[j][1] - p[j][0] * p[j][0] - p[j][1] * p[j][1];
            (r, rhs)
        })
        .filter(|(r, _)| r[0].hypot(r[1]) > 1e-12 * scale)
        .collect();
    let nearest = |(r, rhs): ([f64; 2], f64)| {
        let k = (rhs - r[0] * centroid[0] - r[1] * centroid[1]) / (r[0] * r[0] + r[1] * r[1]);
        [centroid[0] + k * r[0], centroid[1] + k * r[1]]
    };
    match rows.as_slice() {
        [] => Some(centroid),
        [one] => Some(nearest(*one)),
        [(r1, c1), (r2, c2)] => {
            let det = r1[0] * r2[1] - r1[1] * r2[0];
            if det.abs() > 1e-6 * r1[0].hypot(r1[1]) * r2[0].hypot(r2[1]) {
                return Some([(c1 * r2[1] - c2 * r1[1]) / det, (r1[0] * c2 - r2[0] * c1) / det]);
            }
            let x = nearest((*r1, *c1));
            let resid = r2[0] * x[0] + r2[1] * x[1] - c2;
            (resid.abs() <= 1e-9 * scale * scale).then_some(x)
        }
        _ => unreachable!(),
    }
}

const DECORATION_SEED: u64 = 0xdec0;

fn decorate_unchecked(ell1: &Triangle, ell2: &Triangle) -> Result<Decoration> {
    let q = canonical(ell2)?;
    let p0 = canonical(ell1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(DECORATION_SEED);
    let mut theta = 0.0;
    for _ in 0..64 {
        let p = p0.map(|v| rotate(v, theta));
        if let Some(x) = bisector_point(&p, &q) {
            let apex = p.map(|v| (v[0] - x[0]).powi(2) + (v[1] - x[1]).powi(2));
            if apex.iter().all(|&l| l > 1e-9) {
                return Ok(Decoration { apex, theta });
            }
        }
        theta = rng.gen_range(0.0..std::f64::consts::TAU);
    }
    Err(Error::Infeasible("no admissible rotation found for the decoration".into()))
}

/// A vertex attached to all three triangle vertices, with lengths that keep
/// both decorated linkages realizable in the plane.
pub fn decorate_degree3(ell1: Triangle, ell2: Triangle) -> Result<Decoration> {
    for t in [&ell1, &ell2] {
        if [t.l23, t.l24, t.l34].iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::Precondition(format!("triangle lengths must be positive, got {t:?}")));
        }
        if !t.is_realizable() {
            return Err(Error::Infeasible(format!("triangle {t:?} has no planar realization")));
        }
    }
    if ell1 == ell2 {
        return Err(Error::Precondition("the two triangle maps must differ on some edge".into()));
    }
    decorate_unchecked(&ell1, &ell2)
}

/// Largest graph [`build_certificate`] will attempt.
pub const BUILD_MAX_VERTICES: usize = 10;

const BUILD_SEED: u64 = 0xce27;

/// A proper non-3-SIP certificate for `(g, f)` when the pair is built from a
/// `K5` or `K222` base by transfers (a degree-2 endpoint of `f` over a
/// nonedge) and by peeling vertices of degree at most 3. `None` for 3-SIP
/// pairs and for shapes outside that family.
pub fn build_certificate(g: &Graph, f: VertexPair) -> Result<Option<Certificate>> {
    if g.n() > BUILD_MAX_VERTICES {
        return Err(Error::HostTooLarge { n: g.n(), max: BUILD_MAX_VERTICES });
    }
    if decide_sip3(g, f)? {
        return Ok(None);
    }
    build(g, f)
}

/// Host-to-pattern bijection taking `f` onto `pf`.
fn pair_isomorphism(h: &Graph, pattern: &Graph, f: VertexPair, pf: VertexPair) -> Option<Vec<usize>> {
    let n = h.n();
    if n != pattern.n() || h.edge_count() != pattern.edge_count() {
        return None;
    }
    fn go(h: &Graph, p: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>, k: usize) -> bool {
        if k == h.n() {
            return true;
        }
        for t in 0..p.n() {
            if used[t] || h.degree(k) != p.degree(t) || !(0..k).all(|j| h.has_edge(j, k) == p.has_edge(map[j], t)) {
                continue;
            }
            used[t] = true;
            map.push(t);
            if go(h, p, map, used, k + 1) {
                return true;
            }
            map.pop();
            used[t] = false;
        }
        false
    }
    for (a, b) in [(pf.a(), pf.b()), (pf.b(), pf.a())] {
        // Seed the two endpoints, then extend over the remaining vertices in
        // order, checking adjacency against everything fixed so far.
        let order: Vec<usize> = [f.a(), f.b()].into_iter().chain((0..n).filter(|&v| !f.contains(v))).collect();
        let hr = h.relabel(&inverse(&order));
        let mut map = vec![a, b];
        let mut used = vec![false; n];
        used[a] = true;
        used[b] = true;
        if hr.has_edge(0, 1) == pattern.has_edge(a, b) && go(&hr, pattern, &mut map, &mut used, 2) {
            let mut out = vec![0; n];
            for (k, &v) in order.iter().enumerate() {
                out[v] = map[k];
            }
            return Some(out);
        }
    }
    None
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

/// Pull a base certificate back along `map[host] = base`.
fn pull_back(base: &Certificate, g: &Graph, f: VertexPair, map: &[usize]) -> Certificate {
    let lens = g.edges().into_iter().map(|e| (e, base.linkage.len2(pair(map[e.a()], map[e.b()])).expect("edge")));
    Certificate {
        linkage: Linkage::new(g.clone(), lens).expect("same edge set"),
        f,
        values: base.values.clone(),
        construction: base.construction.clone(),
    }
}

/// One realization with `l(f) = t`.
fn witness(c: &Certificate, t: f64) -> Option<Realization> {
    let l = c.linkage.with_edge(c.f, t).ok()?;
    realize(&l, 3, BUILD_SEED, 400)
}

fn triangle_of(r: &Realization, a: usize, b: usize, c: usize) -> Triangle {
    // v2 = a, v3 = b, v4 = c.
    Triangle { l23: r.dist2(a, b), l24: r.dist2(a, c), l34: r.dist2(b, c) }
}

fn build(g: &Graph, f: VertexPair) -> Result<Option<Certificate>> {
    let h = g.with_edge(f)?;
    let bases = [(patterns::k5(), BaseKind::K5Proper), (patterns::k222(), BaseKind::K222)];
    for (p, kind) in bases {
        let base = base_certificate(kind);
        if let Some(map) = pair_isomorphism(&h, &p, f, base.f) {
            return Ok(Some(pull_back(&base, g, f, &map)));
        }
    }
    // Transfer: an endpoint u of degree 2 whose neighbors x, w are
    // nonadjacent and both adjacent to the other endpoint.
    for (u, v) in [(f.a(), f.b()), (f.b(), f.a())] {
        let nb = g.neighbors(u).to_vec();
        let &[x, w] = nb.as_slice() else { continue };
        if g.has_edge(x, w) || !g.has_edge(v, x) || !g.has_edge(v, w) {
            continue;
        }
        let sub = g.remove_vertex(u)?;
        let (lx, lw, lv) = (sub.to_local(x).unwrap(), sub.to_local(w).unwrap(), sub.to_local(v).unwrap());
        let Some(inner) = build(&sub.graph, pair(lx, lw))? else { continue };
        if let Some(c) = extend_by_transfer(&inner, g, f, u, x, w, &sub, (lv, lx, lw))? {
            return Ok(Some(c));
        }
    }
    // Peel a vertex of degree at most 3 off f.
    for z in 0..g.n() {
        if f.contains(z) || g.degree(z) > 3 || g.degree(z) == 0 {
            continue;
        }
        let sub = g.remove_vertex(z)?;
        let lf = sub.local_pair(f).expect("f avoids z");
        let Some(inner) = build(&sub.graph, lf)? else { continue };
        if let Some(c) = extend_by_vertex(&inner, g, f, z, &sub) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn extend_by_transfer(
    inner: &Certificate,
    g: &Graph,
    f: VertexPair,
    u: usize,
    x: usize,
    w: usize,
    sub: &crate::graph::Subgraph,
    (lv, lx, lw): (usize, usize, usize),
) -> Result<Option<Certificate>> {
    if inner.values.len() != 2 {
        return Ok(None);
    }
    let l = &inner.linkage;
    let tri = |t: f64| Triangle { l23: l.len2(pair(lv, lx)).unwrap(), l24: l.len2(pair(lv, lw)).unwrap(), l34: t };
    let t = match transfer_through_k4(tri(inner.values[0]), tri(inner.values[1])) {
        Ok(t) => t,
        Err(Error::Infeasible(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let lens = g.edges().into_iter().map(|e| {
        let len = if e == pair(u, x) {
            t.attach.0
        } else if e == pair(u, w) {
            t.attach.1
        } else {
            l.len2(pair(sub.to_local(e.a()).unwrap(), sub.to_local(e.b()).unwrap())).unwrap()
        };
        (e, len)
    });
    let mut construction = inner.construction.clone();
    construction.push(format!("transfer {u}"));
    Ok(Some(Certificate { linkage: Linkage::new(g.clone(), lens)?, f, values: t.values.to_vec(), construction }))
}

fn extend_by_vertex(inner: &Certificate, g: &Graph, f: VertexPair, z: usize, sub: &crate::graph::Subgraph) -> Option<Certificate> {
    let l = &inner.linkage;
    let nb: Vec<usize> = g.neighbors(z).iter().collect();
    let local: Vec<usize> = nb.iter().map(|&y| sub.to_local(y).unwrap()).collect();
    let attach: Vec<f64> = match local.as_slice() {
        [_] => vec![1.0],
        [_, _] => {
            // Longer than any realizable distance: a sum of plain lengths.
            let reach: f64 = l.edges().map(|(_, len)| len.sqrt()).sum::<f64>() + 1.0;
            vec![reach * reach; 2]
        }
        &[a, b, c] => {
            let p = witness(inner, inner.values[0])?;
            let q = witness(inner, inner.values[1])?;
            let d = decorate_unchecked(&triangle_of(&p, a, b, c), &triangle_of(&q, a, b, c)).ok()?;
            d.apex.to_vec()
        }
        _ => return None,
    };
    let lens = g.edges().into_iter().map(|e| {
        let len = match e.other(z) {
            Some(y) => attach[nb.iter().position(|&t| t == y).unwrap()],
            None => l.len2(pair(sub.to_local(e.a()).unwrap(), sub.to_local(e.b()).unwrap())).unwrap(),
        };
        (e, len)
    });
    let mut construction = inner.construction.clone();
    construction.push(format!("degree-{} vertex {z}", nb.len()));
    Some(Certificate { linkage: Linkage::new(g.clone(), lens).ok()?, f, values: inner.values.clone(), construction })
}

/// What sampling says about a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub clusters: IntervalSet,
    pub positive_lengths: bool,
    /// Every claimed value is positive.
    pub positive_values: bool,
    /// At least two clusters separated by more than the gap threshold.
    pub separated: bool,
    /// Cluster centers and claimed values pair up within `1e-3`.
    pub claims_matched: bool,
}

impl CertificateReport {
    pub fn passes(&self) -> bool {
        self.positive_lengths && self.positive_values && self.separated && self.claims_matched
    }
}

pub fn verify_certificate_with(c: &Certificate, cfg: &SamplingConfig) -> Result<CertificateReport> {
    let clusters = ccs_intervals(&c.linkage, c.f, 3, cfg)?;
    let positive_lengths = c.linkage.edges().all(|(_, l)| l > 0.0);
    let positive_values = c.values.iter().all(|&v| v > 0.0);
    let separated = clusters.len() >= 2 && clusters.min_gap().is_some_and(|g| g > cfg.gap);
    let mut claimed = c.values.clone();
    claimed.sort_by(f64::total_cmp);
    let centers = clusters.centers();
    let claims_matched = centers.len() == claimed.len() && centers.iter().zip(&claimed).all(|(a, b)| (a - b).abs() <= 1e-3);
    Ok(CertificateReport { clusters, positive_lengths, positive_values, separated, claims_matched })
}

/// Positive lengths, two or more sampled clusters, and centers matching the
/// claim.
pub fn verify_certificate(c: &Certificate) -> Result<bool> {
    Ok(verify_certificate_with(c, &SamplingConfig::default())?.passes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SamplingConfig {
        SamplingConfig::default().with_samples(300)
    }

    #[test]
    fn k5_unit_values_and_flag() {
        let c = base_certificate(BaseKind::K5Unit);
        assert!((c.values[0]).abs() < 1e-12 && (c.values[1] - 8.0 / 3.0).abs() < 1e-12);
        assert!(!c.is_proper());
        let r = verify_certificate_with(&c, &quick()).unwrap();
        assert!(r.separated && r.claims_matched && !r.positive_values);
        assert!(!r.passes());
    }

    #[test]
    fn k5_proper_passes() {
        let c = base_certificate(BaseKind::K5Proper);
        let expect = [13.0 / 3.0 - 2.0 / 3.0 * 22f64.sqrt(), 13.0 / 3.0 + 2.0 / 3.0 * 22f64.sqrt()];
        assert!((c.values[0] - expect[0]).abs() < 1e-12 && (c.values[1] - expect[1]).abs() < 1e-12);
        assert!(c.is_proper());
        assert!(verify_certificate_with(&c, &quick()).unwrap().passes());
    }

    #[test]
    fn k222_base_passes() {
        let c = base_certificate(BaseKind::K222);
        assert!((c.values[0] - 1.26).abs() < 1e-12 && (c.values[1] - 3.5).abs() < 1e-12);
        let r = verify_certificate_with(&c, &quick()).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn transfer_example() {
        let t1 = Triangle { l23: 3.0, l24: 3.0, l34: 1.0 };
        let t2 = Triangle { l23: 3.0, l24: 3.0, l34: 9.0 };
        let t = transfer_through_k4(t1, t2).unwrap();
        assert_eq!(t.attach, (4.0, 1.0));
        assert!((t.values[0] - t.values[1]).abs() > 1e-3);
        assert!(matches!(transfer_through_k4(t1, t1), Err(Error::Precondition(_))));
        let bad = Triangle { l23: 1.0, l24: 1.0, l34: 9.0 };
        assert!(matches!(transfer_through_k4(Triangle { l34: 1.0, ..bad }, bad), Err(Error::Infeasible(_))));
    }

    #[test]
    fn transfer_swap_rule() {
        // x^2 = 4 equals l(v2v3), so the attachments swap.
        let t1 = Triangle { l23: 4.0, l24: 3.0, l34: 1.0 };
        let t2 = Triangle { l34: 9.0, ..t1 };
        assert_eq!(transfer_through_k4(t1, t2).unwrap().attach, (1.0, 4.0));
    }

    #[test]
    fn decoration_cases() {
        let p = Triangle { l23: 1.0, l24: 1.0, l34: 1.0 };
        let q = Triangle { l23: 2.0, l24: 1.5, l34: 1.0 };
        let d = decorate_degree3(p, q).unwrap();
        for t in [p, q] {
            let l = d.linkage(&t);
            assert!(realize(&l, 2, 3, 100).is_some());
        }
        // v3 and v4 coincide in both canonical placements; only v2 moves.
        let q = Triangle { l23: 1.5, l24: 1.5, l34: 1.0 };
        let d = decorate_degree3(p, q).unwrap();
        assert_eq!(d.theta, 0.0);
        assert!(realize(&d.linkage(&q), 2, 3, 100).is_some());
        assert!(decorate_degree3(p, p).is_err());
    }

    #[test]
    fn parallel_bisectors_rotate() {
        // v2 and v4 both move along the x-axis direction: the bisector
        // normals are parallel, with different offsets.
        let p = Triangle { l23: 1.0, l24: 2.0, l34: 1.0 };
        let [a, _, c] = canonical(&p).unwrap();
        let shift = |v: [f64; 2]| [v[0] + 0.5, v[1]];
        let (a2, c2) = (shift(a), shift(c));
        let q = Triangle { l23: a2[0] * a2[0] + a2[1] * a2[1], l24: (a2[0] - c2[0]).powi(2) + (a2[1] - c2[1]).powi(2), l34: c2[0] * c2[0] };
        let d = decorate_degree3(p, q).unwrap();
        for t in [p, q] {
            let r = realize(&d.linkage(&t), 2, 5, 200).unwrap();
            assert!(r.max_residual(&d.linkage(&t)) <= 1e-8);
        }
    }

    #[test]
    fn build_dispatches_bases() {
        let f = pair(0, 1);
        let g = patterns::k5().without_edge(f).unwrap();
        let c = build_certificate(&g, f).unwrap().unwrap();
        assert_eq!(c.construction, vec!["k5-proper"]);
        let g = patterns::k222().without_edge(pair(2, 4)).unwrap();
        let c = build_certificate(&g, pair(2, 4)).unwrap().unwrap();
        assert_eq!(c.construction, vec!["k222"]);
        let (w, (a, b)) = (patterns::winged_k5(), patterns::WING);
        let f = pair(a, b);
        assert!(build_certificate(&w.without_edge(f).unwrap(), f).unwrap().is_none());
        assert!(matches!(build_certificate(&patterns::k5(), f), Err(Error::AlreadyAnEdge(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = base_certificate(BaseKind::K5Proper);
        let s = c.to_json();
        assert!(s.contains("\"claimed_values\"") && s.contains("\"nonedge\":[0,1]") && s.contains("\"edges\""));
        assert_eq!(Certificate::from_json(&s).unwrap(), c);
    }
}
