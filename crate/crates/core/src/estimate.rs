//! Curvature and injectivity estimators on sampled spaces, and the checks
//! that compare them with the model-plane bounds.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::kcurve::{self, KCurve};
use crate::model_space::{comparison_triangle, geodesic_eval, Curvature, ModelPoint, Side};
use crate::report::{Diagnostic, EstimateReport, Profile, Quantity};
use crate::sampled::SampledSpace;
use crate::scalar::Real;
use crate::scenarios::{self, ScenarioKind, ScenarioSpec};

fn curvature(k: f64) -> Result<Curvature<f64>> {
    Curvature::new(k)
}

/// Nearest-rank quantile of an unsorted slice (`q` in `[0, 1]`).
pub fn quantile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = ((q * v.len() as f64).ceil() as usize).clamp(1, v.len());
    v[rank - 1]
}

/// Least-squares line `y = a + b x`; returns `(a, b)`.
fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - b * mx, b)
}

/// Settings for [`extrinsic_curvature_estimate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtrinsicOptions {
    /// Largest chord considered; defaults to 0.6 times the ambient diameter.
    pub r_max: Option<f64>,
    /// Curvature of the ambient model space; defaults to the sample's own.
    pub ambient_curvature: Option<f64>,
    pub quantile: f64,
    pub min_pairs: usize,
    /// Number of chord shells in the profile and extrapolation.
    pub shells: usize,
}

impl Default for ExtrinsicOptions {
    fn default() -> Self {
        Self {
            r_max: None,
            ambient_curvature: None,
            quantile: 0.99,
            min_pairs: 100,
            shells: 8,
        }
    }
}

struct PairStat {
    i: usize,
    j: usize,
    r: f64,
    ratio: f64,
    k_prime: Option<f64>,
}

/// Estimates the extrinsic curvature `A` from arc/chord data.
///
/// Each pair with chord `r` in `[r_max/2, r_max]` and graph distance `s` is
/// matched with the geodesic curvature `k'` of the model arc in the ambient
/// `S_K` that has the same arclength and chord. The estimate is the
/// `quantile` of those `k'`. The cubic-ratio statistics `(s - r) / r^3` over
/// all pairs with `2 eps <= r <= r_max` are reported alongside: their
/// quantile (`a_raw_quantile`), their supremum (`raw_sup`) and the linear
/// extrapolation of the shell maxima against `r^2` (`a_extrapolated`).
pub fn extrinsic_curvature_estimate(
    space: &SampledSpace,
    opts: &ExtrinsicOptions,
) -> Result<EstimateReport> {
    let n = space.n();
    let big_k = opts
        .ambient_curvature
        .or(space.kind().curvature())
        .unwrap_or(0.0);
    let kc = curvature(big_k)?;
    let r_max = opts.r_max.unwrap_or(0.6 * space.ambient_diameter());
    if !(r_max > 0.0) {
        return Err(GeomError::InvalidParameter(format!(
            "r_max must be positive, got {r_max}"
        )));
    }
    let r_lo = 2.0 * space.eps();
    let limit = kc.perimeter_limit();

    let stats: Vec<PairStat> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in (i + 1)..n {
                let r = space.ambient(i, j);
                if r > r_max || r < r_lo.min(r_max / 2.0) {
                    continue;
                }
                let s = space.intrinsic(i, j);
                let ratio = (s - r) / (r * r * r);
                let k_prime = if r >= r_max / 2.0 && s + r < limit {
                    kcurve::solve_k_prime(kc, s, r).ok()
                } else {
                    None
                };
                out.push(PairStat {
                    i,
                    j,
                    r,
                    ratio,
                    k_prime,
                });
            }
            out
        })
        .collect();

    let kps: Vec<f64> = stats.iter().filter_map(|p| p.k_prime).collect();
    if kps.len() < opts.min_pairs {
        return Err(GeomError::TooFewSamples {
            found: kps.len(),
            needed: opts.min_pairs,
        });
    }
    let a_est = quantile(&kps, opts.quantile);

    let raw: Vec<&PairStat> = stats.iter().filter(|p| p.r >= r_lo).collect();
    let ratios: Vec<f64> = raw.iter().map(|p| p.ratio).collect();
    let raw_q = quantile(&ratios, opts.quantile);
    let raw_sup = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut profile = Profile::new(&[
        "r_mid",
        "pairs",
        "max_ratio",
        "quantile_ratio",
        "quantile_k_prime",
    ]);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let lo = r_lo.min(r_max);
    let width = (r_max - lo) / opts.shells as f64;
    for b in 0..opts.shells {
        let (a, c) = (lo + width * b as f64, lo + width * (b + 1) as f64);
        let shell: Vec<&&PairStat> = raw
            .iter()
            .filter(|p| p.r >= a && (p.r < c || (b + 1 == opts.shells && p.r <= c)))
            .collect();
        if shell.is_empty() {
            continue;
        }
        let rs: Vec<f64> = shell.iter().map(|p| p.ratio).collect();
        let ks: Vec<f64> = shell.iter().filter_map(|p| p.k_prime).collect();
        let mx = rs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mid = 0.5 * (a + c);
        profile.rows.push(vec![
            mid,
            shell.len() as f64,
            mx,
            quantile(&rs, opts.quantile),
            if ks.is_empty() {
                f64::NAN
            } else {
                quantile(&ks, opts.quantile)
            },
        ]);
        xs.push(mid * mid);
        ys.push(mx);
    }
    let intercept = if xs.len() >= 2 {
        fit_line(&xs, &ys).0
    } else {
        raw_sup
    };

    let mut report = EstimateReport::new(Quantity::ExtrinsicCurvature, a_est, 0.0, true)
        .with_extra("ambient_curvature", big_k)
        .with_extra("r_max", r_max)
        .with_extra("eps", space.eps())
        .with_extra("mesh", space.mesh())
        .with_extra("a_raw_quantile", (24.0 * raw_q.max(0.0)).sqrt())
        .with_extra("a_extrapolated", (24.0 * intercept.max(0.0)).sqrt())
        .with_extra("raw_sup", raw_sup);
    report.n = n;
    report.seed = space.seed();
    report.samples_used = kps.len();
    report.profile = Some(profile);
    report.set_extremal(
        stats
            .iter()
            .filter_map(|p| {
                p.k_prime.map(|k| Diagnostic {
                    ids: vec![p.i, p.j],
                    value: k,
                })
            })
            .collect(),
        false,
    );
    Ok(report)
}

/// Settings for [`cat_upper_bound_estimate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatOptions {
    pub triangles: usize,
    /// Range of intrinsic side lengths for sampled triangles.
    pub side_range: (f64, f64),
    /// Defect tolerance as a multiple of the graph `eps`.
    pub tol_factor: f64,
    /// Absolute tolerance; overrides `tol_factor`.
    pub tol: Option<f64>,
    /// Search bracket in units of `(pi / D)^2`, `D` the intrinsic diameter.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

impl Default for CatOptions {
    fn default() -> Self {
        Self {
            triangles: 300,
            side_range: (0.0, f64::INFINITY),
            tol_factor: 0.25,
            tol: None,
            bracket: (-10.0, 10.0),
            iterations: 50,
        }
    }
}

/// One measured distance from a vertex to a point on the opposite side.
#[derive(Debug, Clone, Copy)]
struct SideCheck {
    tri: usize,
    side: Side,
    t: f64,
    measured: f64,
    point: usize,
}

/// A sampled geodesic triangle with the points checked on its sides.
#[derive(Debug, Clone)]
pub struct SampledTriangle {
    pub vertices: [usize; 3],
    /// Side lengths opposite each vertex.
    pub sides: [f64; 3],
}

struct TriangleSet {
    tris: Vec<SampledTriangle>,
    checks: Vec<SideCheck>,
}

fn sample_triangles(space: &SampledSpace, opts: &CatOptions, seed: u64) -> TriangleSet {
    let n = space.n();
    let (lo, hi) = opts.side_range;
    let ok = |d: f64| d >= lo && d <= hi && d > 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tris = Vec::new();
    let mut attempts = 0usize;
    while tris.len() < opts.triangles && attempts < opts.triangles * 20_000 {
        attempts += 1;
        let (i, j, l) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        if !(ok(space.intrinsic(i, j)) && ok(space.intrinsic(j, l)) && ok(space.intrinsic(i, l))) {
            continue;
        }
        tris.push(SampledTriangle {
            vertices: [i, j, l],
            sides: [
                space.intrinsic(j, l),
                space.intrinsic(l, i),
                space.intrinsic(i, j),
            ],
        });
    }
    let checks = tris
        .par_iter()
        .enumerate()
        .flat_map_iter(|(ti, t)| {
            let [a, b, c] = t.vertices;
            let mut out = Vec::with_capacity(9);
            for (side, (from, to, opp)) in [
                (Side::A, (b, c, a)),
                (Side::B, (c, a, b)),
                (Side::C, (a, b, c)),
            ] {
                let path = space.discrete_geodesic(from, to);
                for &tt in &[0.25, 0.5, 0.75] {
                    let (m, frac) = space.path_point_with_fraction(&path, tt);
                    out.push(SideCheck {
                        tri: ti,
                        side,
                        t: frac,
                        measured: space.intrinsic(opp, m),
                        point: m,
                    });
                }
            }
            out
        })
        .collect();
    TriangleSet { tris, checks }
}

fn side_index(s: Side) -> usize {
    match s {
        Side::A => 0,
        Side::B => 1,
        Side::C => 2,
    }
}

impl TriangleSet {
    /// Smallest comparison defect at curvature `k` and the number of
    /// triangles admissible there.
    fn min_defect(&self, k: f64) -> (f64, usize) {
        let kc = Curvature::new(k).expect("finite bracket");
        let models: Vec<Option<_>> = self
            .tris
            .iter()
            .map(|t| comparison_triangle(t.sides[0], t.sides[1], t.sides[2], kc).ok())
            .collect();
        let used = models.iter().filter(|m| m.is_some()).count();
        let worst = self
            .checks
            .iter()
            .filter_map(|c| {
                models[c.tri]
                    .as_ref()
                    .map(|m| m.vertex_to_side(c.side, c.t) - c.measured)
            })
            .fold(f64::INFINITY, f64::min);
        (worst, used)
    }

    fn defects(&self, k: f64) -> Vec<Diagnostic> {
        let kc = Curvature::new(k).expect("finite bracket");
        self.checks
            .iter()
            .filter_map(|c| {
                let t = &self.tris[c.tri];
                comparison_triangle(t.sides[0], t.sides[1], t.sides[2], kc)
                    .ok()
                    .map(|m| {
                        let [a, b, cc] = t.vertices;
                        Diagnostic {
                            ids: vec![a, b, cc, side_index(c.side), c.point],
                            value: m.vertex_to_side(c.side, c.t) - c.measured,
                        }
                    })
            })
            .collect()
    }
}

/// Estimates the smallest `K` for which sampled triangles pass the
/// comparison test against `S_K`.
///
/// For every triangle, side and `t` in `{0.25, 0.5, 0.75}` the model
/// distance from the opposite vertex to the point at the same fraction of
/// the comparison side, minus the measured graph distance, must be at least
/// `-tol`. Triangles whose perimeter reaches `2 pi / sqrt(K)` are skipped for
/// that `K`. The defect grows with `K`, so bisection finds the threshold.
pub fn cat_upper_bound_estimate(
    space: &SampledSpace,
    opts: &CatOptions,
    seed: u64,
) -> Result<EstimateReport> {
    let set = sample_triangles(space, opts, seed);
    if set.tris.len() < opts.triangles.min(10) {
        return Err(GeomError::TooFewSamples {
            found: set.tris.len(),
            needed: opts.triangles,
        });
    }
    let tol = opts.tol.unwrap_or(opts.tol_factor * space.eps());
    let scale = (PI / space.intrinsic_diameter()).powi(2);
    let (mut lo, mut hi) = (opts.bracket.0 * scale, opts.bracket.1 * scale);
    let passes = |k: f64| set.min_defect(k).0 >= -tol;

    let mut profile = Profile::new(&["K", "min_defect", "triangles"]);
    for g in 0..=20 {
        let k = lo + (hi - lo) * g as f64 / 20.0;
        let (d, used) = set.min_defect(k);
        profile.rows.push(vec![k, d, used as f64]);
    }
    if !passes(hi) {
        return Err(GeomError::BracketExhausted { upper: hi });
    }
    let k_star = if passes(lo) {
        lo
    } else {
        for _ in 0..opts.iterations {
            let mid = 0.5 * (lo + hi);
            if passes(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let (worst, used) = set.min_defect(k_star);
    let mut report = EstimateReport::new(Quantity::CatUpperBound, k_star, tol, true)
        .with_extra("min_defect", worst)
        .with_extra("triangles_admissible", used as f64)
        .with_extra("bracket_lo", opts.bracket.0 * scale)
        .with_extra("bracket_hi", opts.bracket.1 * scale)
        .with_extra("eps", space.eps())
        .with_extra("mesh", space.mesh());
    report.n = space.n();
    report.seed = seed;
    report.samples_used = set.tris.len();
    report.profile = Some(profile);
    report.set_extremal(set.defects(k_star), true);
    Ok(report)
}

/// Checks the Gauss-type bound `K* <= K + A^2` on a sampled subspace of `S_K`.
///
/// Passes when the estimated upper curvature bound `K*` is at most
/// `K + A_est^2 + tol` with `tol = max(0.2 (K + A_est^2), 0.1)`.
pub fn gauss_verify(
    space: &SampledSpace,
    ambient_curvature: f64,
    ext: &ExtrinsicOptions,
    cat: &CatOptions,
    seed: u64,
) -> Result<EstimateReport> {
    let ext = ExtrinsicOptions {
        ambient_curvature: Some(ambient_curvature),
        ..*ext
    };
    let a = extrinsic_curvature_estimate(space, &ext)?;
    let c = cat_upper_bound_estimate(space, cat, seed)?;
    let a_est = a.value;
    let k_star = c.value;
    let bound = ambient_curvature + a_est * a_est;
    let tol = (0.2 * bound).max(0.1);
    let mut report = EstimateReport::new(Quantity::Gauss, k_star, tol, k_star <= bound + tol)
        .with_extra("ambient_curvature", ambient_curvature)
        .with_extra("a_est", a_est)
        .with_extra(
            "a_raw_quantile",
            a.extra("a_raw_quantile").unwrap_or(f64::NAN),
        )
        .with_extra(
            "a_extrapolated",
            a.extra("a_extrapolated").unwrap_or(f64::NAN),
        )
        .with_extra("k_star", k_star)
        .with_extra("bound", bound)
        .with_extra("gap", bound - k_star)
        .with_extra("tol_geom", c.tolerance)
        .with_extra("eps", space.eps())
        .with_extra("mesh", space.mesh());
    report.n = space.n();
    report.seed = seed;
    report.samples_used = a.samples_used + c.samples_used;
    report.diagnostics = c.diagnostics;
    report.profile = c.profile;
    Ok(report)
}

/// `min(pi / sqrt(K + A^2), c(A, K) / 2)`, each term infinite when `K + A^2 <= 0`.
pub fn injectivity_lower_bound<F: Real>(k: F, a: F) -> Result<F> {
    let kc = Curvature::new(k)?;
    let a = a.abs();
    let lam = k + a * a;
    let first = if lam > F::zero() {
        F::PI() / lam.sqrt()
    } else {
        F::infinity()
    };
    let second = kcurve::circumference(kc, a) / F::lit(2.0);
    Ok(first.min(second))
}

/// Report form of [`injectivity_lower_bound`], with both terms.
pub fn injectivity_report(k: f64, a: f64) -> Result<EstimateReport> {
    let v = injectivity_lower_bound(k, a)?;
    let lam = k + a * a;
    let first = if lam > 0.0 {
        PI / lam.sqrt()
    } else {
        f64::INFINITY
    };
    let second = kcurve::circumference(curvature(k)?, a.abs()) / 2.0;
    Ok(EstimateReport::new(Quantity::Injectivity, v, 0.0, true)
        .with_extra("K", k)
        .with_extra("A", a)
        .with_extra("pi_over_sqrt", first)
        .with_extra("half_circumference", second))
}

/// Settings for [`closed_geodesic_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopOptions {
    /// Longest subchain (in hops) that must be shortest.
    pub hops: usize,
    /// Relative slack allowed in the local shortest-path test.
    pub local_slack: f64,
    /// Length tolerance as a fraction of `c(A, K)`.
    pub tol_frac: f64,
}

impl Default for LoopOptions {
    fn default() -> Self {
        Self {
            hops: 8,
            local_slack: 1e-3,
            tol_frac: 0.02,
        }
    }
}

/// Checks that a closed discrete local geodesic is no shorter than the
/// complete `A`-curve of `S_K`.
///
/// The loop is given without repeating its first vertex. The value is the
/// ratio `L / c(A, K)`; the check passes when `L >= c - tol_frac c`.
pub fn closed_geodesic_check(
    space: &SampledSpace,
    cycle: &[usize],
    a: f64,
    ambient_curvature: f64,
    opts: &LoopOptions,
) -> Result<EstimateReport> {
    let m = cycle.len();
    if m < 3 {
        return Err(GeomError::TooFewSamples {
            found: m,
            needed: 3,
        });
    }
    let hop = |i: usize| space.ambient(cycle[i % m], cycle[(i + 1) % m]);
    let mut worst = 0.0f64;
    let mut items = Vec::new();
    for start in 0..m {
        let mut len = 0.0;
        for h in 1..=opts.hops.min(m - 1) {
            len += hop(start + h - 1);
            let (p, q) = (cycle[start], cycle[(start + h) % m]);
            let d = space.intrinsic(p, q);
            let excess = len / d - 1.0;
            if excess > opts.local_slack {
                return Err(GeomError::NotLocalGeodesic {
                    hop: start,
                    length: len,
                    intrinsic: d,
                });
            }
            if h == opts.hops.min(m - 1) {
                worst = worst.max(excess);
                items.push(Diagnostic {
                    ids: vec![p, q],
                    value: excess,
                });
            }
        }
    }
    let length: f64 = (0..m).map(hop).sum();
    let c = kcurve::circumference(curvature(ambient_curvature)?, a.abs());
    let ratio = length / c;
    let tol = opts.tol_frac * c;
    let pass = length >= c - tol;
    let mut report = EstimateReport::new(Quantity::ClosedGeodesic, ratio, opts.tol_frac, pass)
        .with_extra("length", length)
        .with_extra("circumference", c)
        .with_extra("A", a)
        .with_extra("ambient_curvature", ambient_curvature)
        .with_extra("max_local_excess", worst);
    report.n = space.n();
    report.seed = space.seed();
    report.samples_used = m;
    report.set_extremal(items, false);
    Ok(report)
}

/// A fan of discrete geodesics from a common vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct FanSample {
    pub vertex: usize,
    /// Base geodesic `sigma`.
    pub base: Vec<usize>,
    /// Geodesics `gamma_i` from the vertex to points of a common discrete geodesic.
    pub rays: Vec<Vec<usize>>,
    pub t_grid: Vec<f64>,
    /// `separations[i][g] = d(sigma(t_g), gamma_i(t_g))`, with the curves
    /// interpolated along their edges.
    pub separations: Vec<Vec<f64>>,
    /// Length of the base geodesic.
    pub base_length: f64,
    pub eps: f64,
}

/// Builds a fan at `vertex`: the base runs to `start`, the rays to `rays`
/// points spread along the discrete geodesic from `start` to `end`; each
/// separation is resolved on `steps + 1` uniform parameters.
pub fn build_fan(
    space: &SampledSpace,
    vertex: usize,
    start: usize,
    end: usize,
    rays: usize,
    steps: usize,
) -> Result<FanSample> {
    if steps < 2 || rays == 0 {
        return Err(GeomError::InvalidParameter(
            "a fan needs rays >= 1 and steps >= 2".into(),
        ));
    }
    let base = space.discrete_geodesic(vertex, start);
    let across = space.discrete_geodesic(start, end);
    let t_grid: Vec<f64> = (0..=steps).map(|g| g as f64 / steps as f64).collect();
    let base_pts: Vec<_> = t_grid
        .iter()
        .map(|&t| space.path_locate(&base, t))
        .collect();
    let mut ray_paths = Vec::with_capacity(rays);
    let mut separations = Vec::with_capacity(rays);
    for r in 1..=rays {
        let target = space.path_point(&across, r as f64 / rays as f64);
        let ray = space.discrete_geodesic(vertex, target);
        let f: Vec<f64> = t_grid
            .iter()
            .zip(&base_pts)
            .map(|(&t, &b)| space.blended_distance(b, space.path_locate(&ray, t)))
            .collect();
        ray_paths.push(ray);
        separations.push(f);
    }
    if separations.iter().all(|f| f.iter().all(|&x| x == 0.0)) {
        return Err(GeomError::DegenerateFan);
    }
    Ok(FanSample {
        vertex,
        base_length: space.path_length(&base),
        base,
        rays: ray_paths,
        t_grid,
        separations,
        eps: space.eps(),
    })
}

/// [`build_fan`] anchored at the sample points nearest the given ambient
/// positions, so fans on different samples of one space are comparable.
pub fn build_fan_at(
    space: &SampledSpace,
    vertex: &[f64],
    start: &[f64],
    end: &[f64],
    rays: usize,
    steps: usize,
) -> Result<FanSample> {
    build_fan(
        space,
        space.nearest(vertex),
        space.nearest(start),
        space.nearest(end),
        rays,
        steps,
    )
}

/// `count` seeded fans whose vertex, base end and ray span are chosen so all
/// pairwise intrinsic distances fall in `sides`.
pub fn sample_fans(
    space: &SampledSpace,
    sides: (f64, f64),
    count: usize,
    rays: usize,
    steps: usize,
    seed: u64,
) -> Result<Vec<FanSample>> {
    let n = space.n();
    let ok = |d: f64| d >= sides.0 && d <= sides.1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fans = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while fans.len() < count && attempts < count * 100_000 {
        attempts += 1;
        let (v, a, b) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        if ok(space.intrinsic(v, a)) && ok(space.intrinsic(v, b)) && ok(space.intrinsic(a, b)) {
            fans.push(build_fan(space, v, a, b, rays, steps)?);
        }
    }
    if fans.len() < count {
        return Err(GeomError::TooFewSamples {
            found: fans.len(),
            needed: count,
        });
    }
    Ok(fans)
}

/// Settings for [`fan_convexity_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanOptions {
    /// Extra curvature slack added to `K + A^2`.
    pub eps_curvature: f64,
    /// Tolerance as a multiple of `eps h`.
    pub tol_factor: f64,
}

impl Default for FanOptions {
    fn default() -> Self {
        Self {
            eps_curvature: 0.0,
            tol_factor: 4.0,
        }
    }
}

/// Midpoint convexity of fan separations.
///
/// For each ray and interior grid point the second difference
/// `D = f(t-h) + f(t+h) - 2 f(t) + (K + A^2 + e) f(t) (h l)^2`, with `l` the
/// base length, must satisfy `D >= -tol_factor eps h`. The value is the
/// smallest `D`.
pub fn fan_convexity_check(
    fans: &[FanSample],
    big_k: f64,
    a: f64,
    opts: &FanOptions,
) -> Result<EstimateReport> {
    let mut worst = f64::INFINITY;
    let mut tol = f64::INFINITY;
    let mut items = Vec::new();
    let mut used = 0;
    let mut nonzero = false;
    for (fi, fan) in fans.iter().enumerate() {
        let g = fan.t_grid.len();
        if g < 3 {
            return Err(GeomError::InvalidParameter(
                "fan grid needs three points".into(),
            ));
        }
        let h = fan.t_grid[1] - fan.t_grid[0];
        let hl = h * fan.base_length;
        let c = big_k + a * a + opts.eps_curvature;
        tol = tol.min(opts.tol_factor * fan.eps * h);
        for (ri, f) in fan.separations.iter().enumerate() {
            nonzero |= f.iter().any(|&x| x != 0.0);
            for m in 1..g - 1 {
                let d = f[m - 1] + f[m + 1] - 2.0 * f[m] + c * f[m] * hl * hl;
                worst = worst.min(d);
                used += 1;
                items.push(Diagnostic {
                    ids: vec![fi, ri, m],
                    value: d,
                });
            }
        }
    }
    if !nonzero {
        return Err(GeomError::DegenerateFan);
    }
    let mut report = EstimateReport::new(Quantity::FanConvexity, worst, tol, worst >= -tol)
        .with_extra("curvature", big_k + a * a + opts.eps_curvature)
        .with_extra("fans", fans.len() as f64);
    report.samples_used = used;
    report.set_extremal(items, true);
    Ok(report)
}

/// Extrinsic curvature of a tube of radius `rho` about a geodesic segment of
/// length `length < pi` in the unit sphere, against the bound `tan rho`.
/// `length = 2 pi` takes the tube about a whole great circle.
///
/// Passes when `A_est <= tan rho + tol_frac tan rho`.
pub fn tube_curvature_verify(
    rho: f64,
    length: f64,
    n: usize,
    seed: u64,
    eps: Option<f64>,
    ext: &ExtrinsicOptions,
    tol_frac: f64,
) -> Result<EstimateReport> {
    if !(rho > 0.0 && rho < FRAC_PI_2) {
        return Err(GeomError::OutOfRange {
            what: "rho",
            value: rho,
            lo: 0.0,
            hi: FRAC_PI_2,
        });
    }
    let closed = (length - TAU).abs() <= 1e-9;
    if !(closed || (length > 0.0 && length < PI)) {
        return Err(GeomError::OutOfRange { what: "L", value: length, lo: 0.0, hi: PI });
    }
    let mut spec = if closed {
        ScenarioSpec::new(ScenarioKind::BandS2, n, seed).with_param("rho", rho)
    } else {
        ScenarioSpec::new(ScenarioKind::TubeS2, n, seed)
            .with_param("rho", rho)
            .with_param("L", length)
    };
    spec.eps = eps;
    let sc = scenarios::generate(&spec)?;
    let ext = ExtrinsicOptions {
        ambient_curvature: Some(1.0),
        ..*ext
    };
    let a = extrinsic_curvature_estimate(&sc.space, &ext)?;
    let bound = rho.tan();
    let tol = tol_frac * bound;
    let mut report = EstimateReport::new(
        Quantity::TubeCurvature,
        a.value,
        tol,
        a.value <= bound + tol,
    )
    .with_extra("rho", rho)
    .with_extra("L", length)
    .with_extra("tan_rho", bound)
    .with_extra("ratio", a.value / bound)
    .with_extra(
        "a_raw_quantile",
        a.extra("a_raw_quantile").unwrap_or(f64::NAN),
    )
    .with_extra(
        "a_extrapolated",
        a.extra("a_extrapolated").unwrap_or(f64::NAN),
    )
    .with_extra("eps", sc.space.eps())
    .with_extra("mesh", sc.space.mesh());
    report.n = sc.space.n();
    report.seed = seed;
    report.samples_used = a.samples_used;
    report.diagnostics = a.diagnostics;
    report.profile = a.profile;
    Ok(report)
}

const REFINE: usize = 16;

/// Checks the projection length bound for a curve near a k-curve `N` of `S_K`.
///
/// The projected length is measured exactly as the total variation of the
/// foot-point parameter; the bound is
/// `r + sum over segments of [k d + (k^2 + K/2 + margin) d^2] du`, with `r`
/// the length of the geodesic polygon through the samples and `d` the
/// distance to `N` (trapezoid rule on a refined polygon). The value is
/// `bound - projected`; the check passes when it is non-negative up to
/// rounding. The Lipschitz integral `sum ratio(d) du` is reported too.
pub fn projection_length_bound_check(
    big_k: f64,
    k: f64,
    curve: &[ModelPoint<f64>],
    margin: f64,
) -> Result<EstimateReport> {
    if curve.len() < 2 {
        return Err(GeomError::TooFewSamples {
            found: curve.len(),
            needed: 2,
        });
    }
    let kc = curvature(big_k)?;
    let n_curve = KCurve::new(kc, k)?;
    let mut fine = Vec::with_capacity((curve.len() - 1) * REFINE + 1);
    fine.push(curve[0]);
    for w in curve.windows(2) {
        for q in 1..=REFINE {
            fine.push(geodesic_eval(&w[0], &w[1], q as f64 / REFINE as f64)?);
        }
    }
    let feet = fine
        .iter()
        .map(|p| n_curve.project(p))
        .collect::<Result<Vec<_>>>()?;
    for f in &feet {
        if f.side > 0 {
            kcurve::lipschitz_ratio_signed(kc, k, f.distance, 1)?;
        }
    }
    let c2 = k * k + big_k / 2.0 + margin;
    let g = |d: f64| k * d + c2 * d * d;
    let ratio = |f: kcurve::CurveProjection<f64>| {
        kcurve::lipschitz_ratio_signed(kc, k, f.distance, f.side).unwrap_or(f64::INFINITY)
    };
    let mut r = 0.0;
    let mut integral = 0.0;
    let mut lipschitz = 0.0;
    let mut projected = 0.0;
    let mut items = Vec::new();
    for w in 0..fine.len() - 1 {
        let du = fine[w].distance(&fine[w + 1])?;
        let (f0, f1) = (feet[w], feet[w + 1]);
        r += du;
        integral += du * 0.5 * (g(f0.distance) + g(f1.distance));
        lipschitz += du * 0.5 * (ratio(f0) + ratio(f1));
        let step = (f1.s - f0.s).abs();
        projected += step;
        items.push(Diagnostic {
            ids: vec![w / REFINE, w % REFINE],
            value: step - du,
        });
    }
    let bound = r + integral;
    let slack = bound - projected;
    let tol = 1e-12 * bound.max(1.0);
    let mut report = EstimateReport::new(Quantity::ProjectionBound, slack, tol, slack >= -tol)
        .with_extra("curve_length", r)
        .with_extra("projected_length", projected)
        .with_extra("bound", bound)
        .with_extra("lipschitz_integral", lipschitz)
        .with_extra("margin", margin);
    report.samples_used = curve.len();
    report.n = curve.len();
    report.set_extremal(items, false);
    Ok(report)
}
