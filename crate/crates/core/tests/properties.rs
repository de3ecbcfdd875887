use std::f64::consts::PI;

use catgeo::estimate::{self, ExtrinsicOptions};
use catgeo::fermi::{self, FermiCoord};
use catgeo::kcurve;
use catgeo::model_space::{self, comparison_triangle, Curvature, ModelPoint, Side};
use catgeo::report::{EstimateReport, Quantity};
use catgeo::sampled::{build, AmbientKind};
use catgeo::trig;
use proptest::prelude::*;

fn kc(v: f64) -> Curvature<f64> {
    Curvature::new(v).unwrap()
}

/// A point at polar coordinates within the injectivity region of `S_K`.
fn point(k: f64, rho: f64, theta: f64) -> ModelPoint<f64> {
    let rho = if k > 0.0 {
        rho.min(0.45 * PI / k.sqrt())
    } else {
        rho
    };
    ModelPoint::from_polar(kc(k), rho, theta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_axioms(k in -2.0..2.0f64, r in prop::array::uniform3(0.0..1.5f64), t in prop::array::uniform3(0.0..6.3f64)) {
        let p = point(k, r[0], t[0]);
        let q = point(k, r[1], t[1]);
        let s = point(k, r[2], t[2]);
        let (pq, qp) = (p.distance(&q).unwrap(), q.distance(&p).unwrap());
        prop_assert!((pq - qp).abs() <= 1e-12);
        prop_assert!(p.distance(&p).unwrap() <= 1e-7);
        let (qs, ps) = (q.distance(&s).unwrap(), p.distance(&s).unwrap());
        prop_assert!(ps <= pq + qs + 1e-9);
    }

    #[test]
    fn ver_round_trip(k in -3.0..3.0f64, x in 0.0..1.0f64) {
        let x = if k > 0.0 { x * PI / k.sqrt() * 0.99 } else { x * 3.0 };
        let v = trig::ver(k, x);
        let back = trig::ver_inv(k, v);
        prop_assert!((back - x).abs() <= 1e-6 * (1.0 + x), "{} vs {}", back, x);
    }

    #[test]
    fn comparison_triangle_realizes_sides(
        k in -2.0..1.0f64,
        b in 0.2..1.2f64,
        c in 0.2..1.2f64,
        f in 0.05..0.95f64,
    ) {
        let a = (b - c).abs() + f * (b + c - (b - c).abs());
        let kk = kc(k);
        prop_assume!(a + b + c < kk.perimeter_limit() * 0.95);
        let tri = comparison_triangle(a, b, c, kk).unwrap();
        let [pa, pb, pc] = tri.vertices();
        prop_assert!((pb.distance(&pc).unwrap() - a).abs() <= 1e-9);
        prop_assert!((pc.distance(&pa).unwrap() - b).abs() <= 1e-9);
        prop_assert!((pa.distance(&pb).unwrap() - c).abs() <= 1e-9);
        // endpoints of a side are at the adjacent side lengths from the opposite vertex
        prop_assert!((tri.vertex_to_side(Side::A, 0.0) - c).abs() <= 1e-9);
        prop_assert!((tri.vertex_to_side(Side::A, 1.0) - b).abs() <= 1e-9);
        // a cevian is no longer than the longer adjacent side
        let m = tri.vertex_to_side(Side::A, 0.5);
        prop_assert!(m <= b.max(c) + 1e-12);
    }

    #[test]
    fn comparison_defect_grows_with_curvature(b in 0.3..1.0f64, c in 0.3..1.0f64, f in 0.1..0.9f64, t in 0.1..0.9f64) {
        let a = (b - c).abs() + f * (b + c - (b - c).abs());
        let lo = comparison_triangle(a, b, c, kc(-1.0)).unwrap().vertex_to_side(Side::A, t);
        let hi = comparison_triangle(a, b, c, kc(1.0)).unwrap().vertex_to_side(Side::A, t);
        prop_assert!(hi >= lo - 1e-12);
    }

    #[test]
    fn chord_is_shorter_than_arc(k_amb in -2.0..2.0f64, k in 0.0..2.0f64, f in 0.01..0.45f64) {
        let c = kcurve::circumference(kc(k_amb), k);
        let s = if c.is_finite() { f * c } else { f * 4.0 };
        let s = if k_amb > 0.0 { s.min(0.9 * PI / k_amb.sqrt()) } else { s };
        let r = kcurve::arc_to_chord(kc(k_amb), k, s).unwrap();
        prop_assert!(r <= s * (1.0 + 1e-12));
        let back = kcurve::chord_to_arc(kc(k_amb), k, r).unwrap();
        prop_assert!((back - s).abs() <= 1e-8 * (1.0 + s));
        let kp = kcurve::solve_k_prime(kc(k_amb), s, r).unwrap();
        prop_assert!((kp - k).abs() <= 1e-6);
    }

    #[test]
    fn width_and_base_angle_grow_with_k(k_amb in -1.0..1.0f64, k1 in 0.05..1.5f64, dk in 0.01..0.5f64, r in 0.1..0.8f64) {
        let k2 = k1 + dk;
        let kk = kc(k_amb);
        prop_assume!(r < kcurve::max_chord(kk, k2) * 0.9);
        let s1 = kcurve::chord_to_arc(kk, k1, r).unwrap();
        let s2 = kcurve::chord_to_arc(kk, k2, r).unwrap();
        prop_assert!(s2 >= s1);
        prop_assert!(kcurve::width(kk, k2, s2).unwrap() >= kcurve::width(kk, k1, s1).unwrap() - 1e-12);
        prop_assert!(kcurve::base_angle(kk, k2, s2).unwrap() >= kcurve::base_angle(kk, k1, s1).unwrap() - 1e-12);
    }

    #[test]
    fn fermi_placement_contracts(k in 0.0..1.0f64, dk in 0.0..2.0f64, u in prop::array::uniform2(0.0..2.0f64), d in prop::array::uniform2(0.0..1.0f64)) {
        let p = FermiCoord::new(u[0], d[0]).unwrap();
        let q = FermiCoord::new(u[1], d[1]).unwrap();
        let src = fermi::model_source_distances(&[(p, q)], kc(k - dk)).unwrap()[0];
        let a = fermi::fermi_place(p, kc(k)).unwrap();
        let b = fermi::fermi_place(q, kc(k)).unwrap();
        prop_assert!(a.distance(&b).unwrap() <= src + 1e-9);
        let (u0, d0) = fermi::fermi_coords(&a);
        prop_assert!((u0 - u[0]).abs() <= 1e-9 && (d0 - d[0]).abs() <= 1e-9);
    }

    #[test]
    fn injectivity_bound_decreases_in_a(k in -1.0..2.0f64, a in 0.0..3.0f64, da in 0.0..1.0f64) {
        let x = estimate::injectivity_lower_bound(k, a).unwrap();
        let y = estimate::injectivity_lower_bound(k, a + da).unwrap();
        prop_assert!(y <= x || (x.is_infinite() && y.is_infinite()));
    }

    #[test]
    fn single_precision_tracks_double(k in -2.0..2.0f64, r in prop::array::uniform2(0.1..1.2f64), t in prop::array::uniform2(0.0..6.3f64)) {
        let p = point(k, r[0], t[0]);
        let q = point(k, r[1], t[1]);
        let k32 = Curvature::new(k as f32).unwrap();
        let p32 = ModelPoint::from_polar(k32, p.distance(&ModelPoint::origin(kc(k))).unwrap() as f32, t[0] as f32);
        let q32 = ModelPoint::from_polar(k32, q.distance(&ModelPoint::origin(kc(k))).unwrap() as f32, t[1] as f32);
        let d64 = p.distance(&q).unwrap();
        let d32 = model_space::distance(&p32, &q32).unwrap() as f64;
        prop_assert!((d64 - d32).abs() <= 2e-3 * (1.0 + d64), "{} vs {}", d64, d32);
    }

    #[test]
    fn report_json_round_trip(v in prop::num::f64::ANY, t in 0.0..1.0f64, pass: bool) {
        let r = EstimateReport::new(Quantity::Gauss, v, t, pass).with_extra("x", v);
        let back = EstimateReport::from_json(&r.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), r.to_json().unwrap());
        prop_assert_eq!(back.pass, pass);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn raw_sup_is_monotone_in_r_max(n in 120usize..220, r1 in 0.8..1.4f64, dr in 0.0..0.5f64) {
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let s = build(pts, AmbientKind::Euclidean, 3.0 * 2.0 * PI / n as f64).unwrap();
        let est = |r| {
            estimate::extrinsic_curvature_estimate(&s, &ExtrinsicOptions { r_max: Some(r), min_pairs: 1, ..Default::default() })
                .unwrap()
                .extra("raw_sup")
                .unwrap()
        };
        prop_assert!(est(r1) <= est(r1 + dr));
    }
}
