use anyhow::{bail, Context};
use catgeo::estimate::{self, CatOptions, ExtrinsicOptions, FanOptions, LoopOptions};
use catgeo::fermi;
use catgeo::kcurve::KCurve;
use catgeo::model_space::{geodesic_eval, Curvature};
use catgeo::report::EstimateReport;
use catgeo::scenarios::{self, Scenario, ScenarioKind, ScenarioSpec};
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Upper curvature bound K + A^2 of a sampled surface.
    Gauss,
    /// Injectivity radius lower bound min(pi / sqrt(K + A^2), c(A, K) / 2).
    Inj,
    /// Length of a closed local geodesic against c(A, K).
    Closedcurve,
    /// Extrinsic curvature of a tube about a spherical geodesic against tan(rho).
    Tube,
    /// Midpoint convexity of geodesic fans at curvature K + A^2.
    Fan,
    /// Fermi placement of S_{K-1} into S_K does not increase distances.
    Fermi,
    /// Length of the projection of a chord onto a k-curve.
    Projbound,
}

/// Scenario selection and the parameters shared by the sampled checks.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Scenario name (sphere_E3, cylinder_E3, tube_S2, band_S2, ...).
    #[arg(long)]
    pub scenario: Option<String>,
    /// Radius parameter.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Tube or band radius.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Length parameter.
    #[arg(long = "L")]
    pub length: Option<f64>,
    /// Number of sample points (or pairs, or curve samples).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Graph connection radius; defaults to a multiple of the mesh.
    #[arg(long)]
    pub eps: Option<f64>,
}

impl ScenarioArgs {
    pub fn spec(&self, default: ScenarioKind, default_n: usize) -> anyhow::Result<ScenarioSpec> {
        let kind = match &self.scenario {
            Some(name) => ScenarioKind::parse(name)?,
            None => default,
        };
        let mut spec = ScenarioSpec::new(kind, self.n.unwrap_or(default_n), self.seed);
        for (name, value) in [("R", self.radius), ("rho", self.rho), ("L", self.length)] {
            if let Some(v) = value {
                if !kind.defaults().iter().any(|(p, _)| *p == name) {
                    bail!("scenario {} has no parameter {name}", kind.name());
                }
                spec = spec.with_param(name, v);
            }
        }
        spec.eps = self.eps;
        Ok(spec)
    }

    pub fn generate(&self, default: ScenarioKind, default_n: usize) -> anyhow::Result<Scenario> {
        let spec = self.spec(default, default_n)?;
        scenarios::generate(&spec).with_context(|| format!("generating {}", spec.name))
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub theorem: Theorem,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Ambient (or target) curvature.
    #[arg(long = "K", allow_hyphen_values = true)]
    pub big_k: Option<f64>,
    /// Geodesic curvature of the reference k-curve.
    #[arg(long)]
    pub k: Option<f64>,
    /// Extrinsic curvature bound A.
    #[arg(long = "A")]
    pub a: Option<f64>,
    /// Arclength of the reference arc.
    #[arg(long)]
    pub s: Option<f64>,
    /// Largest chord used by the extrinsic curvature estimator.
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Tolerance override for the selected check.
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn run(args: &VerifyArgs) -> anyhow::Result<EstimateReport> {
    let sc = &args.scenario;
    let ext = ExtrinsicOptions {
        r_max: args.rmax,
        ..Default::default()
    };
    let report = match args.theorem {
        Theorem::Gauss => {
            let s = sc.generate(ScenarioKind::SphereE3, 2000)?;
            let cat = CatOptions {
                side_range: s.triangle_sides,
                tol: args.tol,
                ..Default::default()
            };
            let k = args.big_k.unwrap_or(s.truth.ambient_curvature);
            estimate::gauss_verify(&s.space, k, &ext, &cat, sc.seed)?
        }
        Theorem::Inj => {
            let a = args.a.context("--A is required")?;
            estimate::injectivity_report(args.big_k.unwrap_or(0.0), a)?
        }
        Theorem::Closedcurve => {
            let s = sc.generate(ScenarioKind::BandS2, 1500)?;
            let cycle = s.loops.first().context("scenario has no closed geodesic")?;
            let opts = LoopOptions {
                tol_frac: args.tol.unwrap_or(0.02),
                ..Default::default()
            };
            let a = args.a.unwrap_or(s.truth.extrinsic);
            let k = args.big_k.unwrap_or(s.truth.ambient_curvature);
            estimate::closed_geodesic_check(&s.space, cycle, a, k, &opts)?
        }
        Theorem::Tube => {
            if sc.scenario.as_deref().is_some_and(|n| n != "tube_S2") {
                bail!("verify tube runs on tube_S2 only");
            }
            estimate::tube_curvature_verify(
                sc.rho.unwrap_or(std::f64::consts::FRAC_PI_6),
                sc.length.unwrap_or(2.0),
                sc.n.unwrap_or(3000),
                sc.seed,
                sc.eps,
                &ext,
                args.tol.unwrap_or(0.1),
            )?
        }
        Theorem::Fan => {
            let s = sc.generate(ScenarioKind::SphereE3, 2000)?;
            let fans = estimate::sample_fans(&s.space, s.triangle_sides, 6, 4, 4, sc.seed)?;
            let opts = FanOptions {
                tol_factor: args.tol.unwrap_or(4.0),
                ..Default::default()
            };
            let k = args.big_k.unwrap_or(s.truth.ambient_curvature);
            let a = args.a.unwrap_or(s.truth.extrinsic);
            let mut r = estimate::fan_convexity_check(&fans, k, a, &opts)?;
            r.n = s.space.n();
            r.seed = sc.seed;
            r
        }
        Theorem::Fermi => {
            let k = args.big_k.unwrap_or(1.0);
            let (w, h) = if k > 0.0 {
                (
                    2.0f64.min(0.9 * std::f64::consts::PI / k.sqrt()),
                    1.0f64.min(0.9 * std::f64::consts::FRAC_PI_2 / k.sqrt()),
                )
            } else {
                (2.0, 1.0)
            };
            fermi::fermi_contraction_verify(
                k,
                k - 1.0,
                w,
                h,
                sc.n.unwrap_or(10_000),
                sc.seed,
                args.tol,
            )?
        }
        Theorem::Projbound => {
            let big_k = args.big_k.unwrap_or(0.0);
            let k = args.k.unwrap_or(1.0);
            let curve = KCurve::new(Curvature::new(big_k)?, k)?;
            let (a, b) = (curve.start(), curve.point(args.s.unwrap_or(1.0)));
            let m = sc.n.unwrap_or(200).max(2);
            let chord = (0..m)
                .map(|i| geodesic_eval(&a, &b, i as f64 / (m - 1) as f64))
                .collect::<Result<Vec<_>, _>>()?;
            estimate::projection_length_bound_check(big_k, k, &chord, args.tol.unwrap_or(0.1))?
        }
    };
    Ok(report)
}
