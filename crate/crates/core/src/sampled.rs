//! Finite samples of a subspace with an ambient metric and the intrinsic
//! metric of their epsilon-neighbourhood graph.
//!
//! Distances are stored as dense `n x n` matrices, so memory grows as
//! `24 n^2` bytes (ambient, intrinsic, predecessors); `n = 5000` needs about
//! 600 MB.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::report::json_float;
use crate::trig;

/// How ambient distances are obtained from point coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientKind {
    /// Euclidean distance in any dimension.
    Euclidean,
    /// Great-circle distance on the sphere `K |x|^2 = 1` in any dimension.
    Spherical {
        #[serde(with = "json_float")]
        curvature: f64,
    },
    /// Hyperboloid distance, `x0` timelike, `|K| (x0^2 - |x'|^2) = 1`.
    Hyperbolic {
        #[serde(with = "json_float")]
        curvature: f64,
    },
    /// Distances supplied as a matrix.
    Matrix,
}

impl AmbientKind {
    /// Curvature of the ambient model space, if it is one.
    pub fn curvature(&self) -> Option<f64> {
        match *self {
            AmbientKind::Euclidean => Some(0.0),
            AmbientKind::Spherical { curvature } | AmbientKind::Hyperbolic { curvature } => {
                Some(curvature)
            }
            AmbientKind::Matrix => None,
        }
    }

    /// Distance between two coordinate vectors.
    ///
    /// Computed as `ver_K^{-1}(Q(b - a) / 2)` with the form `Q` of the
    /// embedding, which is exact for close points.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let sq: f64 = a
            .iter()
            .zip(b)
            .skip(1)
            .map(|(x, y)| (y - x) * (y - x))
            .sum();
        let d0 = b[0] - a[0];
        match *self {
            AmbientKind::Euclidean | AmbientKind::Matrix => (sq + d0 * d0).sqrt(),
            AmbientKind::Spherical { curvature } => trig::ver_inv(curvature, (sq + d0 * d0) / 2.0),
            AmbientKind::Hyperbolic { curvature } => trig::ver_inv(curvature, (sq - d0 * d0) / 2.0),
        }
    }

    fn check_point(&self, p: &[f64]) -> Result<()> {
        let bad = |msg: String| Err(GeomError::NonMetric(msg));
        if p.iter().any(|x| !x.is_finite()) {
            return bad("non-finite coordinate".into());
        }
        match *self {
            AmbientKind::Spherical { curvature } => {
                if !(curvature > 0.0) {
                    return bad(format!("spherical ambient needs K > 0, got {curvature}"));
                }
                let r: f64 = curvature * p.iter().map(|x| x * x).sum::<f64>() - 1.0;
                if r.abs() > 1e-6 {
                    return bad(format!("point off the sphere (residual {r:e})"));
                }
            }
            AmbientKind::Hyperbolic { curvature } => {
                if !(curvature < 0.0) {
                    return bad(format!("hyperbolic ambient needs K < 0, got {curvature}"));
                }
                let q: f64 = p[0] * p[0] - p[1..].iter().map(|x| x * x).sum::<f64>();
                let r = -curvature * q - 1.0;
                if r.abs() > 1e-6 || p[0] <= 0.0 {
                    return bad(format!("point off the hyperboloid (residual {r:e})"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// A subset of a round sphere used to restrict graph edges.
///
/// Positions are read in the sphere's own coordinates: the base geodesic
/// starts at `(1, 0, 0, ..)` and heads toward `(0, 1, 0, ..)`, latitude is
/// measured by the third coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Everywhere,
    /// Points within `rho` of the base geodesic segment of length `length`.
    Tube {
        #[serde(with = "json_float")]
        rho: f64,
        #[serde(with = "json_float")]
        length: f64,
    },
    /// Points within `rho` of the full base great circle.
    Band {
        #[serde(with = "json_float")]
        rho: f64,
    },
}

impl Region {
    /// Distance from `p` to the core geodesic of the region, minus `rho`
    /// (non-positive inside). `curvature` is that of the ambient sphere.
    pub fn excess(&self, p: &[f64], curvature: f64) -> f64 {
        let q = curvature.sqrt();
        let y: Vec<f64> = p.iter().map(|x| x * q).collect();
        let lat = y[2].clamp(-1.0, 1.0).asin();
        match *self {
            Region::Everywhere => f64::NEG_INFINITY,
            Region::Band { rho } => lat.abs() / q - rho,
            Region::Tube { rho, length } => {
                let lon = y[1].atan2(y[0]);
                let end = length * q;
                let d = if (0.0..=end).contains(&lon) {
                    lat.abs()
                } else {
                    // nearest endpoint
                    let d0 = y[0].clamp(-1.0, 1.0).acos();
                    let e = [end.cos(), end.sin()];
                    let d1 = (y[0] * e[0] + y[1] * e[1]).clamp(-1.0, 1.0).acos();
                    d0.min(d1)
                };
                d / q - rho
            }
        }
    }

    /// Whether the ambient geodesic from `a` to `b` stays within `tol` of the
    /// region, tested at five interior points.
    pub fn admits_edge(&self, a: &[f64], b: &[f64], curvature: f64, tol: f64) -> bool {
        if matches!(self, Region::Everywhere) {
            return true;
        }
        let theta = AmbientKind::Spherical { curvature }.distance(a, b) * curvature.sqrt();
        let st = theta.sin();
        (1..=5).all(|i| {
            let t = i as f64 / 6.0;
            let (wa, wb) = if st < 1e-12 {
                (1.0 - t, t)
            } else {
                (((1.0 - t) * theta).sin() / st, (t * theta).sin() / st)
            };
            let p: Vec<f64> = a.iter().zip(b).map(|(x, y)| wa * x + wb * y).collect();
            let norm = (p.iter().map(|x| x * x).sum::<f64>() * curvature).sqrt();
            let p: Vec<f64> = p.iter().map(|x| x / norm).collect();
            self.excess(&p, curvature) <= tol
        })
    }
}

/// Graph construction parameters besides `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    pub region: Region,
    /// Slack allowed in the region test for edges.
    pub edge_tol: f64,
    /// Seed recorded with the space (the one its points were generated from).
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            region: Region::Everywhere,
            edge_tol: 0.0,
            seed: 0,
        }
    }
}

/// A point sample with ambient and graph-intrinsic distances.
/// A point on a graph edge, `frac` of the way from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPosition {
    pub from: usize,
    pub to: usize,
    pub frac: f64,
}

#[derive(Debug, Clone)]
pub struct SampledSpace {
    points: Vec<Vec<f64>>,
    kind: AmbientKind,
    region: Region,
    edge_tol: f64,
    seed: u64,
    eps: f64,
    mesh: f64,
    ambient: Vec<f64>,
    intrinsic: Vec<f64>,
    pred: Vec<u32>,
    edges: usize,
}

/// Dense ambient distance matrix for `points`.
pub fn ambient_matrix(points: &[Vec<f64>], kind: AmbientKind) -> Result<Vec<f64>> {
    for p in points {
        kind.check_point(p)?;
        if p.len() != points[0].len() || p.is_empty() {
            return Err(GeomError::NonMetric("points of different dimension".into()));
        }
    }
    let n = points.len();
    let mut m = vec![0.0; n * n];
    m.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                *v = kind.distance(&points[i], &points[j]);
            }
        }
    });
    // exact symmetry
    for i in 0..n {
        for j in 0..i {
            m[i * n + j] = m[j * n + i];
        }
    }
    Ok(m)
}

/// Largest nearest-neighbour distance of a dense distance matrix.
pub fn mesh_of(matrix: &[f64], n: usize) -> f64 {
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| matrix[i * n + j])
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

fn check_matrix(m: &[f64], n: usize) -> Result<()> {
    if m.len() != n * n {
        return Err(GeomError::NonMetric(format!(
            "matrix has {} entries, expected {}",
            m.len(),
            n * n
        )));
    }
    let scale = m.iter().cloned().fold(0.0, f64::max).max(1.0);
    let tol = 1e-9 * scale;
    for i in 0..n {
        if m[i * n + i].abs() > tol {
            return Err(GeomError::NonMetric(format!("nonzero diagonal at {i}")));
        }
        for j in 0..n {
            let v = m[i * n + j];
            if !v.is_finite() || v < 0.0 {
                return Err(GeomError::NonMetric(format!("entry ({i},{j}) = {v}")));
            }
            if (v - m[j * n + i]).abs() > tol {
                return Err(GeomError::NonMetric(format!("asymmetric at ({i},{j})")));
            }
            if i != j && v == 0.0 {
                return Err(GeomError::NonMetric(format!(
                    "distinct points {i}, {j} at distance 0"
                )));
            }
        }
    }
    let violates = |i: usize, j: usize, l: usize| m[i * n + l] > m[i * n + j] + m[j * n + l] + tol;
    if n <= 300 {
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if violates(i, j, l) {
                        return Err(GeomError::NonMetric(format!("triangle ({i},{j},{l})")));
                    }
                }
            }
        }
    } else {
        // deterministic spot check on large inputs
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200_000 {
            let (i, j, l) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if violates(i, j, l) {
                return Err(GeomError::NonMetric(format!("triangle ({i},{j},{l})")));
            }
        }
    }
    Ok(())
}

#[derive(PartialEq)]
struct HeapItem(f64, u32);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

fn dijkstra(g: &Csr, src: usize, dist: &mut [f64], pred: &mut [u32]) {
    dist.fill(f64::INFINITY);
    pred.fill(u32::MAX);
    dist[src] = 0.0;
    pred[src] = src as u32;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem(0.0, src as u32));
    while let Some(HeapItem(d, u)) = heap.pop() {
        let u = u as usize;
        if d > dist[u] {
            continue;
        }
        for e in g.offsets[u]..g.offsets[u + 1] {
            let v = g.targets[e] as usize;
            let nd = d + g.weights[e];
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = u as u32;
                heap.push(HeapItem(nd, v as u32));
            }
        }
    }
}

fn components(g: &Csr, n: usize) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for e in g.offsets[u]..g.offsets[u + 1] {
                let v = g.targets[e] as usize;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// Builds the epsilon-graph over points with a closed-form ambient metric.
pub fn build(points: Vec<Vec<f64>>, kind: AmbientKind, eps: f64) -> Result<SampledSpace> {
    build_with(points, kind, eps, BuildOptions::default())
}

/// [`build`] with a region restriction and recorded seed.
pub fn build_with(
    points: Vec<Vec<f64>>,
    kind: AmbientKind,
    eps: f64,
    opts: BuildOptions,
) -> Result<SampledSpace> {
    if kind == AmbientKind::Matrix {
        return Err(GeomError::InvalidParameter(
            "matrix ambient needs build_from_matrix".into(),
        ));
    }
    if points.len() < 2 {
        return Err(GeomError::TooFewSamples {
            found: points.len(),
            needed: 2,
        });
    }
    let m = ambient_matrix(&points, kind)?;
    build_from_matrix(points, kind, m, eps, opts)
}

/// Builds the epsilon-graph from a precomputed ambient distance matrix.
pub fn build_from_matrix(
    points: Vec<Vec<f64>>,
    kind: AmbientKind,
    ambient: Vec<f64>,
    eps: f64,
    opts: BuildOptions,
) -> Result<SampledSpace> {
    let n = points.len();
    if n < 2 {
        return Err(GeomError::TooFewSamples {
            found: n,
            needed: 2,
        });
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(GeomError::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if n > u32::MAX as usize / 2 {
        return Err(GeomError::InvalidParameter("too many points".into()));
    }
    if kind == AmbientKind::Matrix {
        check_matrix(&ambient, n)?;
    } else if ambient.len() != n * n {
        return Err(GeomError::NonMetric("matrix size mismatch".into()));
    }
    let region_k = match (opts.region, kind) {
        (Region::Everywhere, _) => 0.0,
        (_, AmbientKind::Spherical { curvature }) => curvature,
        _ => {
            return Err(GeomError::InvalidParameter(
                "regions are only defined on spherical ambients".into(),
            ))
        }
    };
    let mesh = mesh_of(&ambient, n);

    let adjacency: Vec<Vec<(u32, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    j != i
                        && ambient[i * n + j] <= eps
                        && opts
                            .region
                            .admits_edge(&points[i], &points[j], region_k, opts.edge_tol)
                })
                .map(|j| (j as u32, ambient[i * n + j]))
                .collect()
        })
        .collect();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let mut targets = Vec::new();
    let mut weights = Vec::new();
    for row in &adjacency {
        for &(j, w) in row {
            targets.push(j);
            weights.push(w);
        }
        offsets.push(targets.len());
    }
    drop(adjacency);
    let g = Csr {
        offsets,
        targets,
        weights,
    };
    let comps = components(&g, n);
    if comps > 1 {
        return Err(GeomError::Disconnected {
            eps,
            components: comps,
        });
    }

    let mut intrinsic = vec![0.0; n * n];
    let mut pred = vec![0u32; n * n];
    intrinsic
        .par_chunks_mut(n)
        .zip(pred.par_chunks_mut(n))
        .enumerate()
        .for_each(|(s, (d, p))| dijkstra(&g, s, d, p));
    // symmetrize and enforce s >= r (differences are rounding only)
    for i in 0..n {
        for j in (i + 1)..n {
            let v = intrinsic[i * n + j]
                .min(intrinsic[j * n + i])
                .max(ambient[i * n + j]);
            intrinsic[i * n + j] = v;
            intrinsic[j * n + i] = v;
        }
    }
    Ok(SampledSpace {
        points,
        kind,
        region: opts.region,
        edge_tol: opts.edge_tol,
        seed: opts.seed,
        eps,
        mesh,
        ambient,
        intrinsic,
        pred,
        edges: g.targets.len() / 2,
    })
}

impl SampledSpace {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Largest nearest-neighbour ambient distance.
    pub fn mesh(&self) -> f64 {
        self.mesh
    }

    /// Number of undirected graph edges.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn ambient(&self, i: usize, j: usize) -> f64 {
        self.ambient[i * self.n() + j]
    }

    #[inline]
    pub fn intrinsic(&self, i: usize, j: usize) -> f64 {
        self.intrinsic[i * self.n() + j]
    }

    pub fn ambient_diameter(&self) -> f64 {
        self.ambient.iter().cloned().fold(0.0, f64::max)
    }

    pub fn intrinsic_diameter(&self) -> f64 {
        self.intrinsic.iter().cloned().fold(0.0, f64::max)
    }

    /// A shortest graph path from `i` to `j`, both endpoints included.
    pub fn discrete_geodesic(&self, i: usize, j: usize) -> Vec<usize> {
        let n = self.n();
        let mut path = vec![j];
        let mut v = j;
        while v != i {
            v = self.pred[i * n + v] as usize;
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Sum of ambient edge lengths along `path`.
    pub fn path_length(&self, path: &[usize]) -> f64 {
        path.windows(2).map(|w| self.ambient(w[0], w[1])).sum()
    }

    /// The path vertex whose cumulative length is nearest `t` times the total,
    /// together with its actual fraction of the total.
    pub fn path_point_with_fraction(&self, path: &[usize], t: f64) -> (usize, f64) {
        let total = self.path_length(path);
        if total == 0.0 {
            return (path[0], 0.0);
        }
        let target = t * total;
        let mut cum = 0.0;
        let mut best = (f64::INFINITY, usize::MAX, 0.0);
        for (k, &v) in path.iter().enumerate() {
            if k > 0 {
                cum += self.ambient(path[k - 1], v);
            }
            let gap = (cum - target).abs();
            if gap < best.0 || (gap == best.0 && v < best.1) {
                best = (gap, v, cum / total);
            }
        }
        (best.1, best.2)
    }

    /// The point at fraction `t` of the length of `path`, as an edge `(u, v)`
    /// and the fraction of the way from `u` to `v`.
    pub fn path_locate(&self, path: &[usize], t: f64) -> PathPosition {
        let total = self.path_length(path);
        let target = t.clamp(0.0, 1.0) * total;
        let mut cum = 0.0;
        for w in path.windows(2) {
            let e = self.ambient(w[0], w[1]);
            if cum + e >= target && e > 0.0 {
                return PathPosition {
                    from: w[0],
                    to: w[1],
                    frac: ((target - cum) / e).clamp(0.0, 1.0),
                };
            }
            cum += e;
        }
        let last = *path.last().expect("nonempty path");
        PathPosition {
            from: last,
            to: last,
            frac: 0.0,
        }
    }

    /// Intrinsic distance between two edge positions, blended bilinearly from
    /// the distances between the edge endpoints (exact on a common edge).
    pub fn blended_distance(&self, x: PathPosition, y: PathPosition) -> f64 {
        let d = |a: usize, b: usize| self.intrinsic(a, b);
        let (a, b) = (x.frac, y.frac);
        if (x.from, x.to) == (y.from, y.to) {
            return (a - b).abs() * d(x.from, x.to);
        }
        if (x.from, x.to) == (y.to, y.from) {
            return (a + b - 1.0).abs() * d(x.from, x.to);
        }
        (1.0 - a) * ((1.0 - b) * d(x.from, y.from) + b * d(x.from, y.to))
            + a * ((1.0 - b) * d(x.to, y.from) + b * d(x.to, y.to))
    }

    /// The path vertex whose cumulative length is nearest `t` times the total;
    /// ties go to the smaller point index.
    pub fn path_point(&self, path: &[usize], t: f64) -> usize {
        self.path_point_with_fraction(path, t).0
    }

    /// Index of the sample point closest to `p` in the ambient metric; ties go
    /// to the smaller index.
    pub fn nearest(&self, p: &[f64]) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (i, q) in self.points.iter().enumerate() {
            let d = self.kind.distance(p, q);
            if d < best.0 {
                best = (d, i);
            }
        }
        best.1
    }

    /// Largest `intrinsic - ambient` discrepancy over pairs with negative sign
    /// (always zero after construction).
    pub fn min_stretch(&self) -> f64 {
        self.intrinsic
            .iter()
            .zip(&self.ambient)
            .map(|(s, r)| s - r)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self, scenario: Option<&str>) -> Result<String> {
        let doc = SampledSpaceDoc {
            scenario: scenario.map(str::to_string),
            ambient: self.kind,
            region: self.region,
            edge_tol: self.edge_tol,
            eps: self.eps,
            seed: self.seed,
            points: self.points.clone(),
            matrix: if self.kind == AmbientKind::Matrix {
                Some(self.ambient.chunks(self.n()).map(|r| r.to_vec()).collect())
            } else {
                None
            },
        };
        serde_json::to_string(&doc).map_err(|e| GeomError::Serde(e.to_string()))
    }

    /// Rebuilds a space from [`SampledSpace::to_json`] output.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SampledSpaceDoc =
            serde_json::from_str(s).map_err(|e| GeomError::Serde(e.to_string()))?;
        doc.build()
    }
}

/// JSON schema for exported samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSpaceDoc {
    #[serde(default)]
    pub scenario: Option<String>,
    pub ambient: AmbientKind,
    #[serde(default = "everywhere")]
    pub region: Region,
    #[serde(default, with = "json_float")]
    pub edge_tol: f64,
    #[serde(with = "json_float")]
    pub eps: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(with = "json_float::vec2")]
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_matrix")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

fn everywhere() -> Region {
    Region::Everywhere
}

mod opt_matrix {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Option<Vec<Vec<f64>>>, s: S) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => crate::report::json_float::vec2::serialize(m, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<f64>>>, D::Error> {
        #[derive(Deserialize)]
        #[serde(transparent)]
        struct M(#[serde(with = "crate::report::json_float::vec2")] Vec<Vec<f64>>);
        Ok(Option::<M>::deserialize(d)?.map(|m| m.0))
    }
}

impl SampledSpaceDoc {
    pub fn build(self) -> Result<SampledSpace> {
        let opts = BuildOptions {
            region: self.region,
            edge_tol: self.edge_tol,
            seed: self.seed,
        };
        match (self.ambient, self.matrix) {
            (AmbientKind::Matrix, Some(m)) => {
                let flat: Vec<f64> = m.into_iter().flatten().collect();
                build_from_matrix(self.points, AmbientKind::Matrix, flat, self.eps, opts)
            }
            (AmbientKind::Matrix, None) => {
                Err(GeomError::Serde("matrix ambient without matrix".into()))
            }
            (kind, _) => build_with(self.points, kind, self.eps, opts),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                vec![t.cos(), t.sin()]
            })
            .collect()
    }

    #[test]
    fn close_pair_is_a_single_edge() {
        let s = build(
            vec![vec![0.0, 0.0], vec![0.3, 0.4]],
            AmbientKind::Euclidean,
            1.0,
        )
        .unwrap();
        assert_eq!(s.intrinsic(0, 1), 0.5);
        assert_eq!(s.ambient(0, 1), 0.5);
        assert_eq!(s.discrete_geodesic(0, 1), vec![0, 1]);
        assert_eq!(s.discrete_geodesic(1, 1), vec![1]);
    }

    #[test]
    fn circle_antipodes() {
        let n = 400;
        let pts = circle(n);
        let m = ambient_matrix(&pts, AmbientKind::Euclidean).unwrap();
        let mesh = mesh_of(&m, n);
        let s = build(pts, AmbientKind::Euclidean, 3.0 * mesh).unwrap();
        let d = s.intrinsic(0, n / 2);
        assert!((d - PI).abs() < 3.0 * mesh * mesh, "{d}");
        let path = s.discrete_geodesic(0, n / 2);
        assert!((s.path_length(&path) - d).abs() < 1e-12);
        // the path stays on one side
        let ys: Vec<f64> = path[1..path.len() - 1]
            .iter()
            .map(|&i| s.points()[i][1])
            .collect();
        assert!(ys.iter().all(|&y| y > 0.0) || ys.iter().all(|&y| y < 0.0));
    }

    #[test]
    fn collinear_points_are_geodesic() {
        let pts: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64 * 0.1, 0.0]).collect();
        let s = build(pts, AmbientKind::Euclidean, 0.25).unwrap();
        for i in 0..30 {
            for j in 0..30 {
                assert!((s.intrinsic(i, j) - s.ambient(i, j)).abs() < 1e-12);
            }
        }
        // path_point on an even uniform chain
        let path: Vec<usize> = (0..=10).collect();
        assert_eq!(s.path_point(&path, 0.0), 0);
        assert_eq!(s.path_point(&path, 1.0), 10);
        assert_eq!(s.path_point(&path, 0.5), 5);
    }

    #[test]
    fn intrinsic_dominates_ambient() {
        let s = build(circle(100), AmbientKind::Euclidean, 0.2).unwrap();
        assert!(s.min_stretch() >= 0.0);
        for i in 0..100 {
            for j in 0..100 {
                assert_eq!(s.intrinsic(i, j), s.intrinsic(j, i));
            }
        }
    }

    #[test]
    fn disconnected_graph_is_an_error() {
        let pts = vec![vec![0.0], vec![0.1], vec![5.0]];
        assert!(matches!(
            build(pts, AmbientKind::Euclidean, 1.0),
            Err(GeomError::Disconnected { components: 2, .. })
        ));
    }

    #[test]
    fn non_metric_matrix_is_rejected() {
        let pts = vec![vec![0.0], vec![1.0], vec![2.0]];
        let m = vec![0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0];
        assert!(matches!(
            build_from_matrix(
                pts.clone(),
                AmbientKind::Matrix,
                m,
                2.0,
                BuildOptions::default()
            ),
            Err(GeomError::NonMetric(_))
        ));
        let m = vec![0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0];
        let s =
            build_from_matrix(pts, AmbientKind::Matrix, m, 1.5, BuildOptions::default()).unwrap();
        assert_eq!(s.intrinsic(0, 2), 2.0);
    }

    #[test]
    fn spherical_points_are_validated() {
        let pts = vec![vec![1.0, 0.0, 0.0], vec![0.5, 0.0, 0.0]];
        assert!(build(pts, AmbientKind::Spherical { curvature: 1.0 }, 1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = build(circle(50), AmbientKind::Euclidean, 0.3).unwrap();
        let j = s.to_json(Some("circle_E2")).unwrap();
        let back = SampledSpace::from_json(&j).unwrap();
        assert_eq!(back.points(), s.points());
        assert_eq!(back.to_json(Some("circle_E2")).unwrap(), j);
        assert_eq!(back.intrinsic(3, 17), s.intrinsic(3, 17));
    }

    #[test]
    fn band_region_membership() {
        let rho = 0.3;
        let band = Region::Band { rho };
        let p = [0.3f64.cos(), 0.0, 0.3f64.sin()];
        assert!(band.excess(&p, 1.0).abs() < 1e-15);
        let q = [
            0.3f64.cos() * 0.5f64.cos(),
            0.3f64.cos() * 0.5f64.sin(),
            0.3f64.sin(),
        ];
        // the chord between two boundary points leaves the band slightly
        assert!(!band.admits_edge(&p, &q, 1.0, 0.0));
        assert!(band.admits_edge(&p, &q, 1.0, 1e-2));
        let tube = Region::Tube { rho, length: 1.0 };
        assert!(tube.excess(&[(-0.2f64).cos(), (-0.2f64).sin(), 0.0], 1.0) < 1e-15);
        assert!(tube.excess(&[(-0.4f64).cos(), (-0.4f64).sin(), 0.0], 1.0) > 0.0);
    }
}
