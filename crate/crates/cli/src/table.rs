use catgeo::kcurve::{self, series};
use catgeo::model_space::Curvature;
use catgeo::report::Profile;
use clap::ValueEnum;

use crate::range::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Length of the complete k-curve against 2 pi / sqrt(K + k^2).
    Circumference,
    /// Chord of an arc of length s against s - k^2 s^3 / 24.
    Arcchord,
    /// Width of an arc of length s against k r^2 / 8.
    Width,
    /// Base angle of an arc of length s against k s / 2.
    Baseangle,
    /// Projection Lipschitz ratio at distance d against 1 + k d + (k^2 + K/2) d^2.
    Lipschitz,
}

pub struct Grids<'a> {
    pub big_k: &'a Range,
    pub k: &'a Range,
    pub s: &'a Range,
    pub d: &'a Range,
}

fn diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        a - b
    }
}

pub fn build(kind: TableKind, g: &Grids) -> anyhow::Result<Profile> {
    let mut p = Profile::new(match kind {
        TableKind::Circumference => &["K", "k", "lambda", "exact", "closed_form", "diff"],
        TableKind::Arcchord => &["K", "k", "s", "exact", "series", "diff", "defect_over_s3"],
        TableKind::Width => &[
            "K",
            "k",
            "s",
            "r",
            "exact",
            "series",
            "diff",
            "width_over_r2",
        ],
        TableKind::Baseangle => &["K", "k", "s", "exact", "series", "diff", "angle_over_s"],
        TableKind::Lipschitz => &["K", "k", "d", "exact", "series", "diff", "diff_over_d3"],
    });
    for &big_k in &g.big_k.0 {
        let kc = Curvature::new(big_k)?;
        for &k in &g.k.0 {
            match kind {
                TableKind::Circumference => {
                    let lam = kcurve::lambda(kc, k);
                    let exact = kcurve::circumference(kc, k);
                    let closed = if lam > 0.0 {
                        2.0 * std::f64::consts::PI / lam.sqrt()
                    } else {
                        f64::INFINITY
                    };
                    p.rows
                        .push(vec![big_k, k, lam, exact, closed, diff(exact, closed)]);
                }
                TableKind::Lipschitz => {
                    for &d in &g.d.0 {
                        let exact =
                            kcurve::projection_lipschitz_ratio(kc, k, d).unwrap_or(f64::NAN);
                        let ser = series::lipschitz_ratio(big_k, k, d);
                        let e = exact - ser;
                        p.rows
                            .push(vec![big_k, k, d, exact, ser, e, e / (d * d * d)]);
                    }
                }
                _ => {
                    for &s in &g.s.0 {
                        p.rows.push(arc_row(kind, kc, k, s));
                    }
                }
            }
        }
    }
    Ok(p)
}

fn arc_row(kind: TableKind, kc: Curvature<f64>, k: f64, s: f64) -> Vec<f64> {
    let big_k = kc.value();
    let r = kcurve::arc_to_chord(kc, k, s).unwrap_or(f64::NAN);
    match kind {
        TableKind::Arcchord => {
            let ser = series::arc_to_chord(k, s);
            vec![big_k, k, s, r, ser, r - ser, (s - r) / (s * s * s)]
        }
        TableKind::Width => {
            let w = kcurve::width(kc, k, s).unwrap_or(f64::NAN);
            let ser = series::width(k, r);
            vec![big_k, k, s, r, w, ser, w - ser, w / (r * r)]
        }
        TableKind::Baseangle => {
            let phi = kcurve::base_angle(kc, k, s).unwrap_or(f64::NAN);
            let ser = series::base_angle(k, s);
            vec![big_k, k, s, phi, ser, phi - ser, phi / s]
        }
        _ => unreachable!("handled by the caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grids<'a>(a: &'a Range, b: &'a Range, c: &'a Range, d: &'a Range) -> Grids<'a> {
        Grids {
            big_k: a,
            k: b,
            s: c,
            d,
        }
    }

    #[test]
    fn circumference_has_infinite_cells() {
        let (a, b) = ("-1:1:0.5".parse().unwrap(), "0:2:0.25".parse().unwrap());
        let one: Range = "1".parse().unwrap();
        let p = build(TableKind::Circumference, &grids(&a, &b, &one, &one)).unwrap();
        assert_eq!(p.rows.len(), 45);
        for row in &p.rows {
            assert_eq!(row[3].is_infinite(), row[2] <= 0.0);
            assert!(row[5].abs() < 1e-12);
        }
    }

    #[test]
    fn arcchord_defect_trend() {
        let (a, b, s): (Range, Range, Range) = (
            "0".parse().unwrap(),
            "1".parse().unwrap(),
            "0.01:0.5".parse().unwrap(),
        );
        let p = build(TableKind::Arcchord, &grids(&a, &b, &s, &s)).unwrap();
        let first = &p.rows[0];
        assert!((first[6] - 1.0 / 24.0).abs() < 1e-5);
    }

    #[test]
    fn lipschitz_residual_is_cubic() {
        let (a, b, d): (Range, Range, Range) = (
            "1".parse().unwrap(),
            "1".parse().unwrap(),
            "0.01:0.2:0.01".parse().unwrap(),
        );
        let p = build(TableKind::Lipschitz, &grids(&a, &b, &d, &d)).unwrap();
        for row in &p.rows {
            assert!(row[6].abs() < 3.0, "{row:?}");
        }
    }
}
