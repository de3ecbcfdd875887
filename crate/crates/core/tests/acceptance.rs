//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::time::{Duration, Instant};

use catgeo::estimate::{self, CatOptions, ExtrinsicOptions, FanOptions, LoopOptions};
use catgeo::fermi::{self, FermiCoord};
use catgeo::kcurve::{self, series};
use catgeo::model_space::{Curvature, ModelPoint};
use catgeo::report::EstimateReport;
use catgeo::scenarios::{self, ScenarioKind, ScenarioSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn kc(v: f64) -> Curvature<f64> {
    Curvature::new(v).unwrap()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Neville extrapolation of samples `(x_i, y_i)` to `x = 0`.
fn extrapolate(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// Radius `t` of the circle of geodesic curvature `k`, from `cs(t)/sn(t) = k`.
fn circle_radius(k_amb: Curvature<f64>, k: f64) -> f64 {
    let g = |t: f64| k_amb.cs(t) / k_amb.sn(t) - k;
    let mut lo = 1e-12;
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    if k_amb.value() > 0.0 {
        hi = hi.min(PI / k_amb.value().sqrt() - 1e-12);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    0.5 * (lo + hi)
}

fn polygon_length(k_amb: Curvature<f64>, t: f64, m: usize) -> f64 {
    let pts: Vec<ModelPoint<f64>> = (0..m)
        .map(|i| ModelPoint::from_polar(k_amb, t, 2.0 * PI * i as f64 / m as f64))
        .collect();
    (0..m)
        .map(|i| pts[i].distance(&pts[(i + 1) % m]).unwrap())
        .sum()
}

fn c1_circumference() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_impl = 0.0f64;
    let mut cells = 0;
    for &big_k in &linspace(-2.0, 2.0, 9) {
        for &k in &linspace(0.1, 2.0, 9) {
            let lam = big_k + k * k;
            if lam <= 0.0 {
                continue;
            }
            cells += 1;
            let closed = 2.0 * PI / lam.sqrt();
            let t = circle_radius(kc(big_k), k);
            let (l1, l2) = (
                polygon_length(kc(big_k), t, 2048),
                polygon_length(kc(big_k), t, 4096),
            );
            let numeric = (4.0 * l2 - l1) / 3.0;
            worst = worst.max((numeric / closed - 1.0).abs());
            worst_impl = worst_impl.max((kcurve::circumference(kc(big_k), k) / closed - 1.0).abs());
        }
    }
    let rho = FRAC_PI_4;
    let spot = kcurve::circumference(kc(1.0), rho.tan());
    let spot_err = (spot - PI * 2f64.sqrt()).abs();
    Outcome {
        pass: worst <= 1e-9 && worst_impl <= 1e-9 && spot_err <= 1e-9,
        detail: format!(
            "{cells} cells, integrated rel err {worst:.2e}, c(k,K) rel err {worst_impl:.2e}, c(1,1) - pi sqrt2 = {spot_err:.1e}"
        ),
    }
}

fn c2_series_limits() -> Outcome {
    let mut worst = 0.0f64;
    let ss = [0.2, 0.1, 0.05, 0.025];
    for (big_k, k) in [(-1.0, 1.0), (0.0, 1.0), (1.0, 0.5)] {
        let c = kc(big_k);
        let (mut x, mut chord, mut angle, mut rx, mut width) =
            (vec![], vec![], vec![], vec![], vec![]);
        for &s in &ss {
            let r = kcurve::arc_to_chord(c, k, s).unwrap();
            x.push(s * s);
            chord.push((s - r) / (s * s * s));
            angle.push(kcurve::base_angle(c, k, s).unwrap() / s);
            rx.push(r * r);
            width.push(kcurve::width(c, k, s).unwrap() / (r * r));
        }
        worst = worst
            .max((extrapolate(&x, &chord) - k * k / 24.0).abs())
            .max((extrapolate(&x, &angle) - k / 2.0).abs())
            .max((extrapolate(&rx, &width) - k / 8.0).abs());
    }
    Outcome {
        pass: worst <= 1e-6,
        detail: format!("largest limit error {worst:.2e}"),
    }
}

fn width_series_constant(c2: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut c = 0.0f64;
    let mut rel = 0.0f64;
    for &big_k in &linspace(-2.0, 2.0, 9) {
        for &k in &linspace(0.1, 2.0, 9) {
            if big_k + k * k <= 0.0 {
                continue;
            }
            for &r in &[0.05, 0.1, 0.2] {
                for &f in &[0.25, 0.5, 0.75] {
                    let u = f * r;
                    let exact = kcurve::chordpoint_width(kc(big_k), k, r, u).unwrap();
                    let ser = series::chordpoint_width_with(big_k, k, r, u, c2(k));
                    let res = (exact - ser).abs();
                    c = c.max(res / r.powi(6));
                    rel = rel.max(res / (r.powi(4) * k / 2.0 * u * (r - u)));
                }
            }
        }
    }
    (c, rel)
}

fn c3_width_series() -> Outcome {
    let (c, rel) = width_series_constant(|k| k * k / 64.0);
    let (c_alt, rel_alt) = width_series_constant(|k| k * k / 4.0);
    Outcome {
        pass: c < 10.0 && rel <= 5.0,
        detail: format!(
            "displayed series: C = {c:.2}, residual / (r^4 w0) = {rel:.2}; with k^2/4 in place of k^2/64: C = {c_alt:.3}, ratio {rel_alt:.3}"
        ),
    }
}

fn c4_fermi() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut ident = 0.0f64;
    for big_k in [0.0, 1.0] {
        let r =
            fermi::fermi_contraction_verify(big_k, big_k - 1.0, 2.0, 1.0, 10_000, 4, None).unwrap();
        worst = worst.max(r.value);
        let pairs: Vec<(FermiCoord<f64>, FermiCoord<f64>)> =
            fermi::rectangle_pairs(2.0, 1.0, 10_000, 5).unwrap();
        let src = fermi::model_source_distances(&pairs, kc(big_k)).unwrap();
        for ((p, q), d) in pairs.iter().zip(&src) {
            let a = fermi::fermi_place(*p, kc(big_k)).unwrap();
            let b = fermi::fermi_place(*q, kc(big_k)).unwrap();
            ident = ident.max((a.distance(&b).unwrap() - d).abs());
        }
    }
    Outcome {
        pass: worst <= 1e-9 && ident <= 1e-10,
        detail: format!("max defect {worst:.2e}, identity |defect| {ident:.1e}"),
    }
}

fn gauss(kind: ScenarioKind, seed: u64) -> EstimateReport {
    let sc = scenarios::generate(&ScenarioSpec::new(kind, 2000, seed)).unwrap();
    let cat = CatOptions {
        side_range: sc.triangle_sides,
        ..Default::default()
    };
    estimate::gauss_verify(
        &sc.space,
        sc.truth.ambient_curvature,
        &ExtrinsicOptions::default(),
        &cat,
        seed,
    )
    .unwrap()
}

fn c5_sphere(report: &EstimateReport) -> Outcome {
    let a = report.extra("a_est").unwrap();
    let k = report.value;
    let gap = report.extra("gap").unwrap();
    Outcome {
        pass: (a - 1.0).abs() <= 0.05 && (k - 1.0).abs() <= 0.15 && report.pass && gap.abs() <= 0.2,
        detail: format!(
            "A_est {a:.4}, K* {k:.4}, gap {gap:.4}, check pass {}",
            report.pass
        ),
    }
}

fn c6_cylinder() -> Outcome {
    let r = gauss(ScenarioKind::CylinderE3, 42);
    let a = r.extra("a_est").unwrap();
    Outcome {
        pass: (a - 1.0).abs() <= 0.1 && r.value <= 0.15,
        detail: format!("A_est {a:.4}, K* {:.4}", r.value),
    }
}

fn tube() -> EstimateReport {
    estimate::tube_curvature_verify(
        FRAC_PI_6,
        2.0,
        3000,
        42,
        None,
        &ExtrinsicOptions::default(),
        0.1,
    )
    .unwrap()
}

fn c7_tube(report: &EstimateReport) -> Outcome {
    let t = FRAC_PI_6.tan();
    let a = report.value;
    Outcome {
        pass: a <= 1.1 * t && a >= 0.8 * t,
        detail: format!("A_est {a:.4} = {:.3} tan(rho)", a / t),
    }
}

fn c8_injectivity() -> Outcome {
    let mut worst = 0.0f64;
    for rho in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        let v = estimate::injectivity_lower_bound(1.0f64, rho.tan()).unwrap();
        worst = worst.max((v - PI * rho.cos()).abs());
    }
    let sc = scenarios::generate(&ScenarioSpec::new(ScenarioKind::BandS2, 1500, 42)).unwrap();
    let r = estimate::closed_geodesic_check(
        &sc.space,
        &sc.loops[0],
        FRAC_PI_6.tan(),
        1.0,
        &LoopOptions::default(),
    )
    .unwrap();
    Outcome {
        pass: worst <= 1e-12 && (r.value - 1.0).abs() <= 0.02,
        detail: format!("|inj - pi cos rho| {worst:.1e}, loop ratio {:.5}", r.value),
    }
}

fn sph(t: f64, p: f64) -> Vec<f64> {
    vec![t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
}

fn fan_min(n: usize) -> EstimateReport {
    let sc = scenarios::generate(&ScenarioSpec::new(ScenarioKind::SphereE3, n, 42)).unwrap();
    let fans: Vec<_> = (0..6)
        .map(|j| {
            let p = j as f64 * PI / 3.0;
            estimate::build_fan_at(
                &sc.space,
                &sph(0.0, 0.0),
                &sph(1.2, p),
                &sph(1.2, p + 0.8),
                4,
                4,
            )
            .unwrap()
        })
        .collect();
    estimate::fan_convexity_check(&fans, 0.0, 1.0, &FanOptions::default()).unwrap()
}

fn c9_fans() -> Outcome {
    let (a, b) = (fan_min(1000), fan_min(2000));
    Outcome {
        pass: a.pass && b.pass && b.value >= a.value,
        detail: format!(
            "min D {:.4} (tol {:.4}) at n=1000, {:.4} (tol {:.4}) at n=2000",
            a.value, a.tolerance, b.value, b.tolerance
        ),
    }
}

fn c10_k_prime() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 200 {
        let big_k = rng.gen_range(-2.0..2.0);
        let k = rng.gen_range(0.1..2.0);
        let mut s_max = 3.0f64;
        let c = kcurve::circumference(kc(big_k), k);
        if c.is_finite() {
            s_max = s_max.min(0.45 * c);
        }
        if big_k > 0.0 {
            s_max = s_max.min(0.9 * PI / big_k.sqrt());
        }
        if s_max <= 0.2 {
            continue;
        }
        let s = rng.gen_range(0.2..s_max);
        let r = kcurve::arc_to_chord(kc(big_k), k, s).unwrap();
        let back = kcurve::solve_k_prime(kc(big_k), s, r).unwrap();
        worst = worst.max((back - k).abs());
        done += 1;
    }
    Outcome {
        pass: worst <= 1e-8,
        detail: format!("200 triples, max |k' - k| {worst:.1e}"),
    }
}

fn main() {
    let mut results: Vec<(usize, Outcome, Duration, Option<Duration>)> = Vec::new();
    let mut run = |id: usize, limit: Option<u64>, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let mut o = f();
        let el = t.elapsed();
        let limit = limit.map(Duration::from_secs);
        if let Some(l) = limit {
            if el > l {
                o.pass = false;
                o.detail += &format!("; over the {}s budget", l.as_secs());
            }
        }
        results.push((id, o, el, limit));
    };

    run(1, Some(5), &mut c1_circumference);
    run(2, Some(5), &mut c2_series_limits);
    run(3, Some(5), &mut c3_width_series);
    run(4, Some(5), &mut c4_fermi);
    let mut sphere_json = String::new();
    run(5, Some(120), &mut || {
        let r = gauss(ScenarioKind::SphereE3, 42);
        sphere_json = r.to_json().unwrap();
        c5_sphere(&r)
    });
    run(6, Some(120), &mut c6_cylinder);
    let mut tube_json = String::new();
    run(7, Some(180), &mut || {
        let r = tube();
        tube_json = r.to_json().unwrap();
        c7_tube(&r)
    });
    run(8, Some(120), &mut c8_injectivity);
    run(9, Some(180), &mut c9_fans);
    run(10, Some(1), &mut c10_k_prime);
    run(11, None, &mut || {
        let a = gauss(ScenarioKind::SphereE3, 42).to_json().unwrap();
        let b = tube().to_json().unwrap();
        Outcome {
            pass: a == sphere_json && b == tube_json,
            detail: format!(
                "sphere report identical: {}, tube report identical: {}",
                a == sphere_json,
                b == tube_json
            ),
        }
    });

    let mut failed = 0;
    for (id, o, el, _) in &results {
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2}: {} ({:.2}s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
