//! Deterministic sample geometries with exact ambient metrics and known
//! ground truth.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::fermi::{fermi_place, FermiCoord};
use crate::kcurve;
use crate::model_space::Curvature;
use crate::report::json_float;
use crate::sampled::{self, AmbientKind, BuildOptions, Region, SampledSpace};

/// How surface scenarios lay out their interior samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeshPolicy {
    Grid,
    #[default]
    QuasiRandom,
}

/// The scenario catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    CircleE2,
    SegmentE2,
    SquareE2,
    SphereE3,
    CylinderE3,
    CliffordTorusS3,
    TubeS2,
    BandS2,
    EquidistantH2,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 9] = [
        ScenarioKind::CircleE2,
        ScenarioKind::SegmentE2,
        ScenarioKind::SquareE2,
        ScenarioKind::SphereE3,
        ScenarioKind::CylinderE3,
        ScenarioKind::CliffordTorusS3,
        ScenarioKind::TubeS2,
        ScenarioKind::BandS2,
        ScenarioKind::EquidistantH2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::CircleE2 => "circle_E2",
            ScenarioKind::SegmentE2 => "segment_E2",
            ScenarioKind::SquareE2 => "square_E2",
            ScenarioKind::SphereE3 => "sphere_E3",
            ScenarioKind::CylinderE3 => "cylinder_E3",
            ScenarioKind::CliffordTorusS3 => "clifford_torus_S3",
            ScenarioKind::TubeS2 => "tube_S2",
            ScenarioKind::BandS2 => "band_S2",
            ScenarioKind::EquidistantH2 => "equidistant_H2",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| GeomError::UnknownScenario(name.to_string()))
    }

    /// Parameter names and defaults.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            ScenarioKind::CircleE2 | ScenarioKind::SphereE3 => &[("R", 1.0)],
            ScenarioKind::SegmentE2 => &[("L", 1.0)],
            ScenarioKind::SquareE2 => &[("side", 1.0)],
            ScenarioKind::CylinderE3 => &[("R", 1.0), ("H", 2.0)],
            ScenarioKind::CliffordTorusS3 => &[],
            ScenarioKind::TubeS2 => &[("rho", PI / 6.0), ("L", 2.0)],
            ScenarioKind::BandS2 => &[("rho", PI / 6.0)],
            ScenarioKind::EquidistantH2 => &[("rho", 0.5), ("L", 3.0)],
        }
    }

    /// Whether the subspace is a curve (graph `eps` uses a smaller multiple).
    pub fn is_curve(self) -> bool {
        matches!(
            self,
            ScenarioKind::CircleE2 | ScenarioKind::SegmentE2 | ScenarioKind::EquidistantH2
        )
    }
}

/// Scenario request: name, parameters, sample count and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mesh: MeshPolicy,
    /// Graph scale; defaults to a multiple of the sampling mesh.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

impl ScenarioSpec {
    pub fn new(kind: ScenarioKind, n: usize, seed: u64) -> Self {
        Self {
            name: kind.name().to_string(),
            params: BTreeMap::new(),
            n,
            seed,
            mesh: MeshPolicy::default(),
            eps: None,
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn kind(&self) -> Result<ScenarioKind> {
        ScenarioKind::parse(&self.name)
    }

    /// Parameter value or its default.
    pub fn param(&self, name: &str) -> Result<f64> {
        let kind = self.kind()?;
        if let Some(v) = self.params.get(name) {
            return Ok(*v);
        }
        kind.defaults()
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| {
                GeomError::InvalidParameter(format!("{} has no parameter {name}", kind.name()))
            })
    }

    fn check_params(&self) -> Result<()> {
        let kind = self.kind()?;
        for key in self.params.keys() {
            if !kind.defaults().iter().any(|(k, _)| k == key) {
                return Err(GeomError::InvalidParameter(format!(
                    "{} has no parameter {key}",
                    kind.name()
                )));
            }
        }
        for (k, _) in kind.defaults() {
            let v = self.param(k)?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(GeomError::InvalidParameter(format!(
                    "{k} must be positive, got {v}"
                )));
            }
        }
        if matches!(kind, ScenarioKind::TubeS2 | ScenarioKind::BandS2) {
            let rho = self.param("rho")?;
            if rho >= PI / 2.0 {
                return Err(GeomError::OutOfRange {
                    what: "rho",
                    value: rho,
                    lo: 0.0,
                    hi: PI / 2.0,
                });
            }
        }
        if kind == ScenarioKind::TubeS2 {
            let l = self.param("L")?;
            if l >= PI {
                return Err(GeomError::OutOfRange {
                    what: "L",
                    value: l,
                    lo: 0.0,
                    hi: PI,
                });
            }
        }
        if self.n < 4 {
            return Err(GeomError::TooFewSamples {
                found: self.n,
                needed: 4,
            });
        }
        if let Some(e) = self.eps {
            if !(e > 0.0) {
                return Err(GeomError::InvalidParameter(format!(
                    "eps must be positive, got {e}"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| GeomError::Serde(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| GeomError::Serde(e.to_string()))
    }
}

/// What is known exactly about a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truth {
    /// Curvature of the ambient model space.
    #[serde(with = "json_float")]
    pub ambient_curvature: f64,
    /// Extrinsic curvature bound `A` of the subspace (sharp value).
    #[serde(with = "json_float")]
    pub extrinsic: f64,
    /// Best upper curvature bound of the intrinsic metric, when meaningful.
    #[serde(default)]
    pub cba: Option<f64>,
    /// Length of the shortest closed geodesic, when the scenario has one.
    #[serde(default)]
    pub closed_geodesic: Option<f64>,
    pub note: String,
}

/// A generated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub spec: ScenarioSpec,
    pub kind: ScenarioKind,
    pub space: SampledSpace,
    pub truth: Truth,
    /// Closed loops of sample indices known to be closed geodesics.
    pub loops: Vec<Vec<usize>>,
    /// Range of side lengths for comparison triangles at this scale.
    pub triangle_sides: (f64, f64),
}

/// Default graph scale as a multiple of the mesh.
pub fn eps_factor(kind: ScenarioKind) -> f64 {
    if kind.is_curve() {
        3.0
    } else {
        5.0
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Randomly shifted 2-D Halton points in the unit square.
fn halton(seed: u64) -> impl Iterator<Item = (f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4a17_0b5e);
    let shift: (f64, f64) = (rng.gen(), rng.gen());
    (1u64..).map(move |i| {
        (
            (radical_inverse(i, 2) + shift.0).fract(),
            (radical_inverse(i, 3) + shift.1).fract(),
        )
    })
}

/// Uniformly random rotation of R^3 from a random unit quaternion.
fn random_rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (
        a * (TAU * u2).sin(),
        a * (TAU * u2).cos(),
        b * (TAU * u3).sin(),
        b * (TAU * u3).cos(),
    );
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - z * w),
            2.0 * (x * z + y * w),
        ],
        [
            2.0 * (x * y + z * w),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - x * w),
        ],
        [
            2.0 * (x * z - y * w),
            2.0 * (y * z + x * w),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

fn rotate(m: &[[f64; 3]; 3], v: [f64; 3]) -> Vec<f64> {
    (0..3)
        .map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
        .collect()
}

fn sphere_point(lon: f64, z: f64) -> Vec<f64> {
    let c = (1.0 - z * z).max(0.0).sqrt();
    vec![c * lon.cos(), c * lon.sin(), z]
}

/// Generates the sample, its graph and its ground truth.
pub fn generate(spec: &ScenarioSpec) -> Result<Scenario> {
    spec.check_params()?;
    let kind = spec.kind()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut loops = Vec::new();
    let mut region = Region::Everywhere;
    let mut edge_tol = 0.0;
    let (points, ambient, truth, sides): (Vec<Vec<f64>>, AmbientKind, Truth, (f64, f64)) =
        match kind {
            ScenarioKind::CircleE2 => {
                let r = spec.param("R")?;
                let pts = (0..n)
                    .map(|i| {
                        let t = TAU * i as f64 / n as f64;
                        vec![r * t.cos(), r * t.sin()]
                    })
                    .collect();
                loops.push((0..n).collect());
                let truth = Truth {
                    ambient_curvature: 0.0,
                    extrinsic: 1.0 / r,
                    cba: None,
                    closed_geodesic: Some(TAU * r),
                    note: "round circle: arc and chord are 2R asin-related, curvature 1/R".into(),
                };
                (pts, AmbientKind::Euclidean, truth, (0.5 * r, 1.5 * r))
            }
            ScenarioKind::SegmentE2 => {
                let l = spec.param("L")?;
                let pts = (0..n)
                    .map(|i| vec![l * i as f64 / (n - 1) as f64, 0.0])
                    .collect();
                let truth = Truth {
                    ambient_curvature: 0.0,
                    extrinsic: 0.0,
                    cba: None,
                    closed_geodesic: None,
                    note: "straight segment: intrinsic equals ambient".into(),
                };
                (pts, AmbientKind::Euclidean, truth, (0.2 * l, 0.5 * l))
            }
            ScenarioKind::SquareE2 => {
                let side = spec.param("side")?;
                let pts: Vec<Vec<f64>> = match spec.mesh {
                    MeshPolicy::Grid => {
                        let m = (n as f64).sqrt().round().max(2.0) as usize;
                        (0..m * m)
                            .map(|i| {
                                let (a, b) = (i % m, i / m);
                                vec![
                                    side * a as f64 / (m - 1) as f64,
                                    side * b as f64 / (m - 1) as f64,
                                ]
                            })
                            .collect()
                    }
                    MeshPolicy::QuasiRandom => halton(spec.seed)
                        .take(n)
                        .map(|(a, b)| vec![side * a, side * b])
                        .collect(),
                };
                let truth = Truth {
                    ambient_curvature: 0.0,
                    extrinsic: 0.0,
                    cba: Some(0.0),
                    closed_geodesic: None,
                    note: "flat convex square: intrinsic metric is Euclidean".into(),
                };
                (pts, AmbientKind::Euclidean, truth, (0.3 * side, 0.6 * side))
            }
            ScenarioKind::SphereE3 => {
                let r = spec.param("R")?;
                let rot = random_rotation(&mut rng);
                let golden = PI * (3.0 - 5f64.sqrt());
                let pts = (0..n)
                    .map(|i| {
                        let z = 1.0 - (2 * i + 1) as f64 / n as f64;
                        let p = sphere_point(golden * i as f64, z);
                        rotate(&rot, [p[0], p[1], p[2]])
                            .into_iter()
                            .map(|x| r * x)
                            .collect()
                    })
                    .collect();
                let truth = Truth {
                    ambient_curvature: 0.0,
                    extrinsic: 1.0 / r,
                    cba: Some(1.0 / (r * r)),
                    closed_geodesic: Some(TAU * r),
                    note: "round sphere in Euclidean space: the Gauss bound K + A^2 is attained"
                        .into(),
                };
                (pts, AmbientKind::Euclidean, truth, (1.1 * r, 1.9 * r))
            }
            ScenarioKind::CylinderE3 => {
                let (r, h) = (spec.param("R")?, spec.param("H")?);
                let golden = (5f64.sqrt() - 1.0) / 2.0;
                let offset: f64 = rng.gen();
                let pts = match spec.mesh {
                    MeshPolicy::QuasiRandom => (0..n)
                        .map(|i| {
                            let z = (i as f64 + 0.5) / n as f64 * h;
                            let th = TAU * (i as f64 * golden + offset).fract();
                            vec![r * th.cos(), r * th.sin(), z]
                        })
                        .collect(),
                    MeshPolicy::Grid => {
                        // rows and columns with roughly square cells
                        let rows = ((n as f64 * h / (TAU * r)).sqrt().round() as usize).max(2);
                        let cols = (n / rows).max(3);
                        (0..rows * cols)
                            .map(|i| {
                                let (a, b) = (i % cols, i / cols);
                                let th = TAU * a as f64 / cols as f64;
                                vec![r * th.cos(), r * th.sin(), h * b as f64 / (rows - 1) as f64]
                            })
                            .collect()
                    }
                };
                let truth = Truth {
                    ambient_curvature: 0.0,
                    extrinsic: 1.0 / r,
                    cba: Some(0.0),
                    closed_geodesic: Some(TAU * r),
                    note: "round cylinder: intrinsically flat, so the Gauss bound is not sharp"
                        .into(),
                };
                (pts, AmbientKind::Euclidean, truth, (1.0 * r, 1.8 * r))
            }
            ScenarioKind::CliffordTorusS3 => {
                let m = (n as f64).sqrt().round().max(3.0) as usize;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let pts = (0..m * m)
                    .map(|i| {
                        let (a, b) = (
                            (i / m) as f64 * TAU / m as f64,
                            (i % m) as f64 * TAU / m as f64,
                        );
                        vec![s * a.cos(), s * a.sin(), s * b.cos(), s * b.sin()]
                    })
                    .collect();
                for a in 0..m {
                    loops.push((0..m).map(|b| a * m + b).collect());
                }
                let truth = Truth {
                ambient_curvature: 1.0,
                extrinsic: 1.0,
                cba: Some(0.0),
                closed_geodesic: Some(PI * 2f64.sqrt()),
                note: "flat torus in the unit 3-sphere; its coordinate circles have length pi sqrt 2 = c(1, 1)".into(),
            };
                (
                    pts,
                    AmbientKind::Spherical { curvature: 1.0 },
                    truth,
                    (0.5, 1.0),
                )
            }
            ScenarioKind::TubeS2 | ScenarioKind::BandS2 => {
                let rho = spec.param("rho")?;
                let full = kind == ScenarioKind::BandS2;
                let len = if full { TAU } else { spec.param("L")? };
                region = if full {
                    Region::Band { rho }
                } else {
                    Region::Tube { rho, length: len }
                };
                let per_arc = n / 5;
                let interior = n - 2 * per_arc;
                let mut pts = Vec::with_capacity(n);
                let (zmax, lon0, lon_span) = if full {
                    (rho.sin(), 0.0, TAU)
                } else {
                    (rho.sin(), -rho, len + 2.0 * rho)
                };
                let mut grid_cells = None;
                if spec.mesh == MeshPolicy::Grid {
                    let rows =
                        ((interior as f64 * 2.0 * zmax / lon_span).sqrt().ceil() as usize).max(2);
                    grid_cells = Some((rows, (interior / rows).max(2)));
                }
                let mut seq = halton(spec.seed);
                let mut gi = 0usize;
                while pts.len() < interior {
                    let (a, b) = match grid_cells {
                        Some((rows, cols)) => {
                            if gi >= rows * cols * 4 {
                                break;
                            }
                            let c = ((gi % cols) as f64 + 0.5) / cols as f64;
                            let r = ((gi / cols) % rows) as f64 / rows as f64 + 0.5 / rows as f64;
                            gi += 1;
                            (c, r)
                        }
                        None => seq.next().expect("infinite sequence"),
                    };
                    let p = sphere_point(lon0 + lon_span * a, zmax * (2.0 * b - 1.0));
                    if region.excess(&p, 1.0) <= 0.0 {
                        pts.push(p);
                    }
                }
                // boundary enrichment on the two equidistant arcs
                let mut boundary = Vec::new();
                for sign in [1.0, -1.0] {
                    let start = pts.len();
                    for j in 0..per_arc {
                        let lon = if full {
                            TAU * j as f64 / per_arc as f64
                        } else {
                            len * j as f64 / (per_arc - 1) as f64
                        };
                        pts.push(sphere_point(lon, sign * rho.sin()));
                    }
                    boundary.push((start..pts.len()).collect::<Vec<usize>>());
                }
                if full {
                    loops = boundary;
                }
                let k = rho.tan();
                let truth = Truth {
                    ambient_curvature: 1.0,
                    extrinsic: k,
                    cba: Some(1.0 + k * k),
                    closed_geodesic: if full { Some(TAU * rho.cos()) } else { None },
                    note: if full {
                        "band about a great circle: boundary circles of length 2 pi cos rho are closed geodesics".into()
                    } else {
                        "tube about a geodesic segment: extrinsic curvature tan rho, upper curvature bound sec^2 rho".into()
                    },
                };
                (
                    pts,
                    AmbientKind::Spherical { curvature: 1.0 },
                    truth,
                    (0.4, 0.9),
                )
            }
            ScenarioKind::EquidistantH2 => {
                let (rho, l) = (spec.param("rho")?, spec.param("L")?);
                let kc = Curvature::new(-1.0)?;
                let pts = (0..n)
                    .map(|i| {
                        let u = l * i as f64 / (n - 1) as f64;
                        let p = fermi_place(FermiCoord::new(u, rho)?, kc)?;
                        Ok(p.coords().to_vec())
                    })
                    .collect::<Result<Vec<_>>>()?;
                let truth = Truth {
                ambient_curvature: -1.0,
                extrinsic: rho.tanh(),
                cba: None,
                closed_geodesic: None,
                note: "equidistant curve at distance rho from a hyperbolic geodesic has curvature tanh rho".into(),
            };
                (
                    pts,
                    AmbientKind::Hyperbolic { curvature: -1.0 },
                    truth,
                    (0.2 * l, 0.5 * l),
                )
            }
        };

    let matrix = sampled::ambient_matrix(&points, ambient)?;
    let mesh = sampled::mesh_of(&matrix, points.len());
    let eps = spec.eps.unwrap_or(eps_factor(kind) * mesh);
    if !matches!(region, Region::Everywhere) {
        // chords between neighbouring boundary samples bulge out by the width
        // of an eps-chord of the boundary curve
        let kc = Curvature::new(1.0)?;
        let k = truth.extrinsic;
        let r = eps.min(kcurve::max_chord(kc, k));
        let s = kcurve::chord_to_arc(kc, k, r)?;
        edge_tol = kcurve::width(kc, k, s)?;
    }
    let space = sampled::build_from_matrix(
        points,
        ambient,
        matrix,
        eps,
        BuildOptions {
            region,
            edge_tol,
            seed: spec.seed,
        },
    )?;
    Ok(Scenario {
        spec: spec.clone(),
        kind,
        space,
        truth,
        loops,
        triangle_sides: sides,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_space::ModelPoint;

    #[test]
    fn names_round_trip() {
        for k in ScenarioKind::ALL {
            assert_eq!(ScenarioKind::parse(k.name()).unwrap(), k);
        }
        assert!(matches!(
            ScenarioKind::parse("torus"),
            Err(GeomError::UnknownScenario(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        let s = ScenarioSpec::new(ScenarioKind::TubeS2, 100, 0).with_param("rho", 2.0);
        assert!(matches!(
            generate(&s),
            Err(GeomError::OutOfRange { what: "rho", .. })
        ));
        let s = ScenarioSpec::new(ScenarioKind::SphereE3, 100, 0).with_param("rho", 1.0);
        assert!(generate(&s).is_err());
        let s = ScenarioSpec::new(ScenarioKind::SphereE3, 0, 0);
        assert!(generate(&s).is_err());
    }

    #[test]
    fn segment_is_geodesic() {
        let sc = generate(&ScenarioSpec::new(ScenarioKind::SegmentE2, 60, 0)).unwrap();
        let sp = &sc.space;
        for i in 0..60 {
            for j in 0..60 {
                assert!((sp.intrinsic(i, j) - sp.ambient(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let spec = ScenarioSpec::new(ScenarioKind::SphereE3, 300, 42);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a.space.points(), b.space.points());
        assert_eq!(a.space.mesh(), b.space.mesh());
        let c = generate(&ScenarioSpec::new(ScenarioKind::SphereE3, 300, 43)).unwrap();
        assert_ne!(a.space.points(), c.space.points());
    }

    #[test]
    fn spherical_distances_match_model_space() {
        let sc = generate(&ScenarioSpec::new(ScenarioKind::TubeS2, 300, 7)).unwrap();
        let k = Curvature::new(1.0).unwrap();
        let pts = sc.space.points();
        for i in (0..300).step_by(13) {
            for j in (0..300).step_by(17) {
                let p = ModelPoint::new([pts[i][0], pts[i][1], pts[i][2]], k).unwrap();
                let q = ModelPoint::new([pts[j][0], pts[j][1], pts[j][2]], k).unwrap();
                assert!((p.distance(&q).unwrap() - sc.space.ambient(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hyperbolic_distances_match_model_space() {
        let sc = generate(&ScenarioSpec::new(ScenarioKind::EquidistantH2, 80, 0)).unwrap();
        let k = Curvature::new(-1.0).unwrap();
        let pts = sc.space.points();
        for i in 0..80 {
            for j in 0..80 {
                let p = ModelPoint::new([pts[i][0], pts[i][1], pts[i][2]], k).unwrap();
                let q = ModelPoint::new([pts[j][0], pts[j][1], pts[j][2]], k).unwrap();
                assert!((p.distance(&q).unwrap() - sc.space.ambient(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tube_points_lie_in_the_region() {
        let sc = generate(&ScenarioSpec::new(ScenarioKind::TubeS2, 600, 1)).unwrap();
        let region = sc.space.region();
        for p in sc.space.points() {
            assert!(region.excess(p, 1.0) <= 1e-12);
        }
    }

    #[test]
    fn band_loops_have_the_boundary_length() {
        let sc = generate(&ScenarioSpec::new(ScenarioKind::BandS2, 500, 3)).unwrap();
        assert_eq!(sc.loops.len(), 2);
        let lp = &sc.loops[0];
        let mut closed = lp.clone();
        closed.push(lp[0]);
        let len = sc.space.path_length(&closed);
        let exact = TAU * (PI / 6.0).cos();
        assert!((len / exact - 1.0).abs() < 1e-3);
    }

    #[test]
    fn spec_json_round_trip() {
        let s = ScenarioSpec::new(ScenarioKind::TubeS2, 100, 5)
            .with_param("rho", 0.4)
            .with_eps(0.2);
        let back = ScenarioSpec::from_json(&s.to_json().unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
