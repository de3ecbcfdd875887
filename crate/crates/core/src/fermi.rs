//! Placement of points into `S_K` by Fermi coordinates about a base geodesic.
//!
//! The base geodesic is `nu(u) = cs_K(u) o + sn_K(u) e1`; its unit normal is
//! the constant vector `e2`, so the point at Fermi coordinates `(u, d)` is
//! `cs_K(d) nu(u) + sn_K(d) e2`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GeomError, Result};
use crate::model_space::{Curvature, ModelPoint};
use crate::report::{Diagnostic, EstimateReport, Quantity};
use crate::scalar::Real;

/// Arclength along the base geodesic and distance from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiCoord<F> {
    pub u: F,
    pub d: F,
}

impl<F: Real> FermiCoord<F> {
    pub fn new(u: F, d: F) -> Result<Self> {
        if !(u >= F::zero() && u.is_finite()) {
            return Err(GeomError::OutOfRange {
                what: "u",
                value: u.to_f64_lossy(),
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        if !(d >= F::zero() && d.is_finite()) {
            return Err(GeomError::OutOfRange {
                what: "d",
                value: d.to_f64_lossy(),
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        Ok(Self { u, d })
    }
}

/// The base geodesic point `nu(u)`.
pub fn base_point<F: Real>(k: Curvature<F>, u: F) -> ModelPoint<F> {
    ModelPoint::from_polar(k, u, F::zero())
}

fn check_domain<F: Real>(coord: &FermiCoord<F>, k: Curvature<F>) -> Result<()> {
    if k.value() > F::zero() {
        let diam = k.diameter();
        if coord.u >= diam {
            return Err(GeomError::OutOfRange {
                what: "u",
                value: coord.u.to_f64_lossy(),
                lo: 0.0,
                hi: diam.to_f64_lossy(),
            });
        }
        let half = diam / F::lit(2.0);
        if coord.d >= half {
            return Err(GeomError::OutOfRange {
                what: "d",
                value: coord.d.to_f64_lossy(),
                lo: 0.0,
                hi: half.to_f64_lossy(),
            });
        }
    }
    Ok(())
}

/// The point of `S_K` at Fermi coordinates `coord`.
pub fn fermi_place<F: Real>(coord: FermiCoord<F>, k: Curvature<F>) -> Result<ModelPoint<F>> {
    check_domain(&coord, k)?;
    let o = k.origin_coords();
    let (cu, su) = (k.cs(coord.u), k.sn(coord.u));
    let (cd, sd) = (k.cs(coord.d), k.sn(coord.d));
    let coords = [cd * cu * o[0], cd * su, sd];
    if k.value() == F::zero() {
        return ModelPoint::new([F::one(), coord.u, coord.d], k);
    }
    ModelPoint::new(coords, k)
}

/// Signed Fermi coordinates `(u, d)` of a point, `d > 0` on the `e2` side.
pub fn fermi_coords<F: Real>(p: &ModelPoint<F>) -> (F, F) {
    let k = p.curvature();
    let x = p.coords();
    let kv = k.value();
    if kv == F::zero() {
        return (x[1], x[2]);
    }
    let q = kv.abs().sqrt();
    // sn_K(d) = x2
    let d = if kv > F::zero() {
        (q * x[2]).max(-F::one()).min(F::one()).asin() / q
    } else {
        (q * x[2]).asinh() / q
    };
    let u = if kv > F::zero() {
        (x[1] * q).atan2(x[0] * q) / q
    } else {
        (x[1] / x[0]).atanh() / q
    };
    (u, d)
}

/// Checks that Fermi placement into `S_K` does not increase distances.
///
/// `source_distances[i]` is the distance between the two points of
/// `pairs[i]` in the source space. The report value is the largest defect
/// `d_K(psi p, psi q) - d_source(p, q)`; the check passes when it is at most
/// `tol` (default `1e-9`).
pub fn fermi_contraction_check(
    pairs: &[(FermiCoord<f64>, FermiCoord<f64>)],
    source_distances: &[f64],
    k: Curvature<f64>,
    tol: Option<f64>,
) -> Result<EstimateReport> {
    if pairs.len() != source_distances.len() {
        return Err(GeomError::LengthMismatch(
            pairs.len(),
            source_distances.len(),
        ));
    }
    let tol = tol.unwrap_or(1e-9);
    let mut worst = f64::NEG_INFINITY;
    let mut items = Vec::with_capacity(pairs.len());
    for (i, ((p, q), src)) in pairs.iter().zip(source_distances).enumerate() {
        let a = fermi_place(*p, k)?;
        let b = fermi_place(*q, k)?;
        let defect = a.distance(&b)? - src;
        worst = worst.max(defect);
        items.push(Diagnostic {
            ids: vec![i],
            value: defect,
        });
    }
    if pairs.is_empty() {
        worst = 0.0;
    }
    let mut report = EstimateReport::new(Quantity::FermiContraction, worst, tol, worst <= tol)
        .with_extra("target_curvature", k.value());
    report.samples_used = pairs.len();
    report.n = pairs.len();
    report.set_extremal(items, false);
    Ok(report)
}

/// Exact source distances for Fermi pairs in the model plane `S_{k_source}`.
pub fn model_source_distances(
    pairs: &[(FermiCoord<f64>, FermiCoord<f64>)],
    k_source: Curvature<f64>,
) -> Result<Vec<f64>> {
    pairs
        .iter()
        .map(|(p, q)| fermi_place(*p, k_source)?.distance(&fermi_place(*q, k_source)?))
        .collect()
}

/// `count` seeded random pairs with `u` in `[0, width]` and `d` in `[0, height]`.
pub fn rectangle_pairs(
    width: f64,
    height: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<(FermiCoord<f64>, FermiCoord<f64>)>> {
    if !(width > 0.0 && height > 0.0) {
        return Err(GeomError::InvalidParameter(format!(
            "empty Fermi rectangle {width} x {height}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || FermiCoord::new(rng.gen_range(0.0..width), rng.gen_range(0.0..height));
    (0..count).map(|_| Ok((draw()?, draw()?))).collect()
}

/// Random pairs from a Fermi rectangle of `S_{k_source}` placed into `S_K`,
/// checked with [`fermi_contraction_check`].
pub fn fermi_contraction_verify(
    k: f64,
    k_source: f64,
    width: f64,
    height: f64,
    count: usize,
    seed: u64,
    tol: Option<f64>,
) -> Result<EstimateReport> {
    let (kt, ks) = (Curvature::new(k)?, Curvature::new(k_source)?);
    if k_source > k {
        return Err(GeomError::InvalidParameter(format!(
            "source curvature {k_source} exceeds target {k}"
        )));
    }
    if k > 0.0 {
        let (umax, dmax) = (PI / k.sqrt(), FRAC_PI_2 / k.sqrt());
        if width >= umax {
            return Err(GeomError::OutOfRange {
                what: "u",
                value: width,
                lo: 0.0,
                hi: umax,
            });
        }
        if height >= dmax {
            return Err(GeomError::OutOfRange {
                what: "d",
                value: height,
                lo: 0.0,
                hi: dmax,
            });
        }
    }
    let pairs = rectangle_pairs(width, height, count, seed)?;
    let src = model_source_distances(&pairs, ks)?;
    let mut report = fermi_contraction_check(&pairs, &src, kt, tol)?
        .with_extra("source_curvature", k_source)
        .with_extra("width", width)
        .with_extra("height", height);
    report.seed = seed;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn kc(v: f64) -> Curvature<f64> {
        Curvature::new(v).unwrap()
    }

    #[test]
    fn placement_examples() {
        let c = FermiCoord::new(0.7, 0.0).unwrap();
        let p = fermi_place(c, kc(1.0)).unwrap();
        assert!(p.distance(&base_point(kc(1.0), 0.7)).unwrap() < 1e-15);

        let p = fermi_place(FermiCoord::new(1.5, 2.5).unwrap(), kc(0.0)).unwrap();
        assert_eq!(p.coords(), [1.0, 1.5, 2.5]);

        // colatitude pi/4 above nu(0): the point (cos pi/4, 0, sin pi/4)
        let p = fermi_place(FermiCoord::new(0.0, FRAC_PI_4).unwrap(), kc(1.0)).unwrap();
        let c = p.coords();
        assert!((c[0] - FRAC_PI_4.cos()).abs() < 1e-15 && (c[2] - FRAC_PI_4.sin()).abs() < 1e-15);
    }

    #[test]
    fn placement_preserves_coordinates() {
        for &kv in &[2.0, 1.0, 0.0, -1.0, -3.0] {
            for &(u, d) in &[(0.1, 0.2), (0.9, 0.5), (0.3, 0.0), (1.0, 0.7)] {
                let p = fermi_place(FermiCoord::new(u, d).unwrap(), kc(kv)).unwrap();
                let foot = base_point(kc(kv), u);
                assert!((p.distance(&foot).unwrap() - d).abs() < 1e-10);
                let (uu, dd) = fermi_coords(&p);
                assert!((uu - u).abs() < 1e-10 && (dd - d).abs() < 1e-10);
                // the segment to the foot is orthogonal to the base
                if d > 0.0 {
                    let ahead = base_point(kc(kv), u + 0.5);
                    let ang = crate::model_space::angle_at(&foot, &ahead, &p).unwrap();
                    assert!((ang - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn spherical_domain_is_enforced() {
        assert!(fermi_place(FermiCoord::new(0.0, 1.6).unwrap(), kc(1.0)).is_err());
        assert!(fermi_place(FermiCoord::new(3.2, 0.1).unwrap(), kc(1.0)).is_err());
        assert!(FermiCoord::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn identity_source_has_zero_defect() {
        let pairs: Vec<_> = (0..50)
            .map(|i| {
                let t = i as f64 / 50.0;
                (
                    FermiCoord::new(t, 0.3 * t).unwrap(),
                    FermiCoord::new(1.0 - t, 0.5).unwrap(),
                )
            })
            .collect();
        let src = model_source_distances(&pairs, kc(1.0)).unwrap();
        let rep = fermi_contraction_check(&pairs, &src, kc(1.0), Some(1e-10)).unwrap();
        assert!(rep.pass && rep.value.abs() <= 1e-10);
    }

    #[test]
    fn base_points_are_preserved() {
        let pairs = vec![(
            FermiCoord::new(0.1, 0.0).unwrap(),
            FermiCoord::new(1.1, 0.0).unwrap(),
        )];
        let src = model_source_distances(&pairs, kc(-1.0)).unwrap();
        let rep = fermi_contraction_check(&pairs, &src, kc(0.0), None).unwrap();
        assert!(rep.value.abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        let pairs = vec![(
            FermiCoord::new(0.1, 0.0).unwrap(),
            FermiCoord::new(1.1, 0.0).unwrap(),
        )];
        assert!(matches!(
            fermi_contraction_check(&pairs, &[], kc(0.0), None),
            Err(GeomError::LengthMismatch(1, 0))
        ));
    }

    #[test]
    fn rectangle_verify() {
        for k in [0.0, 1.0] {
            let r = fermi_contraction_verify(k, k - 1.0, 2.0, 1.0, 500, 7, None).unwrap();
            assert!(r.pass && r.value <= 1e-9, "{}", r.value);
        }
        let same = fermi_contraction_verify(1.0, 1.0, 2.0, 1.0, 500, 7, None).unwrap();
        assert!(same.value.abs() <= 1e-10);
        assert!(fermi_contraction_verify(1.0, 0.0, 4.0, 1.0, 5, 0, None).is_err());
        assert!(fermi_contraction_verify(0.0, 1.0, 1.0, 1.0, 5, 0, None).is_err());
    }
}
