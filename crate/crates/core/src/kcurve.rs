//! Curves of constant geodesic curvature `k` in `S_K`.
//!
//! Every k-curve is realized through one formula. With `lambda = K + k^2`,
//! base point `o`, unit tangent `e1` and normal `e2` at `o`,
//!
//! `gamma(s) = o + sn_lambda(s) e1 + ver_lambda(s) (k e2 - K o)`
//!
//! is the unit-speed k-curve through `o` bending toward `e2`. It is a circle
//! when `lambda > 0`, a horocycle when `lambda = 0` and an equidistant curve
//! (or a geodesic when `k = 0`) when `lambda < 0`. Its chord satisfies
//! `ver_K(r) = ver_lambda(s)`, which is how every arc/chord quantity below is
//! evaluated.

use crate::error::{GeomError, Result};
use crate::model_space::{geodesic_eval, Curvature, ModelPoint};
use crate::roots::{solve_bracketed, RootOptions};
use crate::scalar::Real;
use crate::trig;

/// Type of a complete k-curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KCurveClass {
    Geodesic,
    Circle,
    Horocycle,
    Equidistant,
}

impl KCurveClass {
    pub fn as_str(self) -> &'static str {
        match self {
            KCurveClass::Geodesic => "geodesic",
            KCurveClass::Circle => "circle",
            KCurveClass::Horocycle => "horocycle",
            KCurveClass::Equidistant => "equidistant",
        }
    }
}

/// `|K + k^2|` below this is treated as a horocycle.
fn horocycle_tol<F: Real>() -> F {
    F::lit(1e-10).max(F::epsilon() * F::lit(8.0))
}

/// `K + k^2`, snapped to zero near the horocycle.
pub fn lambda<F: Real>(kc: Curvature<F>, k: F) -> F {
    let l = kc.value() + k * k;
    if l.abs() < horocycle_tol() {
        F::zero()
    } else {
        l
    }
}

/// Classifies the complete k-curve; `k` is taken by absolute value.
pub fn classify<F: Real>(kc: Curvature<F>, k: F) -> KCurveClass {
    let k = k.abs();
    let big_k = kc.value();
    if big_k < F::zero() && k > F::zero() && lambda(kc, k) == F::zero() {
        KCurveClass::Horocycle
    } else if k == F::zero() {
        KCurveClass::Geodesic
    } else if lambda(kc, k) > F::zero() {
        KCurveClass::Circle
    } else {
        KCurveClass::Equidistant
    }
}

/// Metric radius of the k-circle, `None` when the curve is not a circle.
///
/// Solves `cs_K(t) / sn_K(t) = k`.
pub fn metric_radius<F: Real>(kc: Curvature<F>, k: F) -> Option<F> {
    let k = k.abs();
    let big_k = kc.value();
    if lambda(kc, k) <= F::zero() {
        return None;
    }
    if k > F::zero() && (big_k / (k * k)).abs() < F::SERIES_CUTOFF {
        let q = big_k / (k * k);
        return Some((F::one() - q / F::lit(3.0) + q * q / F::lit(5.0)) / k);
    }
    Some(if big_k > F::zero() {
        let r = big_k.sqrt();
        r.atan2(k) / r
    } else if big_k < F::zero() {
        let r = (-big_k).sqrt();
        (r / k).atanh() / r
    } else {
        F::one() / k
    })
}

/// Length of the complete k-curve: `2 pi sn_K(t)` for a circle of metric
/// radius `t`, infinite otherwise.
pub fn circumference<F: Real>(kc: Curvature<F>, k: F) -> F {
    match metric_radius(kc, k) {
        Some(t) => F::TAU() * kc.sn(t),
        None => F::infinity(),
    }
}

/// Lower bound on the length of a closed k-curve; the complete k-curve length.
pub fn closed_curve_length_bound<F: Real>(kc: Curvature<F>, k: F) -> F {
    circumference(kc, k)
}

fn out_of_range<F: Real>(what: &'static str, value: F, lo: F, hi: F) -> GeomError {
    GeomError::OutOfRange {
        what,
        value: value.to_f64_lossy(),
        lo: lo.to_f64_lossy(),
        hi: hi.to_f64_lossy(),
    }
}

fn check_k<F: Real>(k: F) -> Result<F> {
    if k >= F::zero() && k.is_finite() {
        Ok(k)
    } else {
        Err(out_of_range("k", k, F::zero(), F::infinity()))
    }
}

/// An explicit realization of a k-curve in `S_K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KCurve<F> {
    curvature: Curvature<F>,
    k: F,
    lambda: F,
    origin: [F; 3],
    normal_dir: [F; 3],
}

impl<F: Real> KCurve<F> {
    pub fn new(curvature: Curvature<F>, k: F) -> Result<Self> {
        let k = check_k(k)?;
        let o = curvature.origin_coords();
        let big_k = curvature.value();
        Ok(Self {
            curvature,
            k,
            lambda: lambda(curvature, k),
            origin: o,
            normal_dir: [-big_k * o[0], F::zero(), k],
        })
    }

    pub fn curvature(&self) -> Curvature<F> {
        self.curvature
    }

    pub fn k(&self) -> F {
        self.k
    }

    pub fn lambda(&self) -> F {
        self.lambda
    }

    pub fn class(&self) -> KCurveClass {
        classify(self.curvature, self.k)
    }

    pub fn start(&self) -> ModelPoint<F> {
        ModelPoint::origin(self.curvature)
    }

    fn coords_at(&self, s: F) -> [F; 3] {
        let sn = trig::sn(self.lambda, s);
        let v = trig::ver(self.lambda, s);
        let o = self.origin;
        let w = self.normal_dir;
        [o[0] + v * w[0], sn, v * w[2]]
    }

    /// The point at arclength `s` from the start.
    pub fn point(&self, s: F) -> ModelPoint<F> {
        ModelPoint::new(self.coords_at(s), self.curvature).expect("k-curve stays on the quadric")
    }

    /// Unit tangent at arclength `s`.
    pub fn tangent(&self, s: F) -> [F; 3] {
        let c = trig::cs(self.lambda, s);
        let sn = trig::sn(self.lambda, s);
        let w = self.normal_dir;
        [sn * w[0], c, sn * w[2]]
    }

    /// Nearest point of the curve to `x`.
    ///
    /// Returns the arclength parameter of the foot, the distance and the side
    /// (`+1` toward the center of curvature, `-1` away from it, `0` on the curve).
    pub fn project(&self, x: &ModelPoint<F>) -> Result<CurveProjection<F>> {
        if x.curvature() != self.curvature {
            return Err(GeomError::CurvatureMismatch(
                x.curvature().value().to_f64_lossy(),
                self.curvature.value().to_f64_lossy(),
            ));
        }
        let c = self.curvature;
        let xc = x.coords();
        let y = [
            xc[0] - self.origin[0],
            xc[1] - self.origin[1],
            xc[2] - self.origin[2],
        ];
        let a = c.form(&y, &[F::zero(), F::one(), F::zero()]);
        let b = c.form(&y, &self.normal_dir);
        let one_b = F::one() - b;
        let lam = self.lambda;
        let s = if lam > F::zero() {
            let q = lam.sqrt();
            (a * q).atan2(one_b) / q
        } else if lam == F::zero() {
            a / one_b
        } else {
            let mu = (-lam).sqrt();
            let z = a * mu / one_b;
            if !(z.abs() < F::one()) || one_b <= F::zero() {
                return Err(GeomError::FocalDistance { d: f64::INFINITY });
            }
            z.atanh() / mu
        };
        let foot = self.point(s);
        let d = foot.distance(x)?;
        let n = foot.rotate_quarter(&self.tangent(s));
        let g = c.form(&xc, &n);
        let side = if d == F::zero() {
            0
        } else if g >= F::zero() {
            1
        } else {
            -1
        };
        Ok(CurveProjection {
            s,
            distance: d,
            side,
        })
    }
}

/// Result of [`KCurve::project`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveProjection<F> {
    pub s: F,
    pub distance: F,
    pub side: i8,
}

/// An arc of a k-curve: curvature of the plane, geodesic curvature and length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KArcSpec<F> {
    pub curvature: Curvature<F>,
    pub k: F,
    pub s: F,
}

impl<F: Real> KArcSpec<F> {
    /// Validates `k >= 0`, `s >= 0` and that a circle is traversed at most once.
    pub fn new(curvature: Curvature<F>, k: F, s: F) -> Result<Self> {
        let k = check_k(k)?;
        let c = circumference(curvature, k);
        if !(s >= F::zero()) || s > c * (F::one() + F::lit(4.0) * F::epsilon()) {
            return Err(out_of_range("arclength", s, F::zero(), c));
        }
        Ok(Self { curvature, k, s })
    }

    pub fn class(&self) -> KCurveClass {
        classify(self.curvature, self.k)
    }

    pub fn chord(&self) -> F {
        chord_from_arc_unchecked(self.curvature, self.k, self.s)
    }

    pub fn base_angle(&self) -> Result<F> {
        base_angle(self.curvature, self.k, self.s)
    }

    pub fn width(&self) -> Result<F> {
        width(self.curvature, self.k, self.s)
    }
}

fn chord_from_arc_unchecked<F: Real>(kc: Curvature<F>, k: F, s: F) -> F {
    kc.ver_inv(trig::ver(lambda(kc, k), s))
}

/// Chord length of a k-arc of length `s`.
pub fn arc_to_chord<F: Real>(kc: Curvature<F>, k: F, s: F) -> Result<F> {
    let arc = KArcSpec::new(kc, k, s)?;
    Ok(arc.chord())
}

fn half_arc_check<F: Real>(kc: Curvature<F>, k: F, s: F) -> Result<F> {
    let k = check_k(k)?;
    let half = circumference(kc, k) / F::lit(2.0);
    if !(s > F::zero()) || s > half * (F::one() + F::lit(4.0) * F::epsilon()) {
        return Err(out_of_range("arclength", s, F::zero(), half));
    }
    Ok(k)
}

/// Angle between a k-arc of length `s` and its chord at either endpoint.
pub fn base_angle<F: Real>(kc: Curvature<F>, k: F, s: F) -> Result<F> {
    let k = half_arc_check(kc, k, s)?;
    let lam = lambda(kc, k);
    Ok((k * trig::ver(lam, s)).atan2(trig::sn(lam, s)))
}

/// Largest distance from a k-arc of length `s` to its chord.
pub fn width<F: Real>(kc: Curvature<F>, k: F, s: F) -> Result<F> {
    let k = half_arc_check(kc, k, s)?;
    if k == F::zero() {
        return Ok(F::zero());
    }
    let curve = KCurve::new(kc, k)?;
    let end = curve.point(s);
    let mid = geodesic_eval(&curve.start(), &end, F::lit(0.5))?;
    curve.point(s / F::lit(2.0)).distance(&mid)
}

/// Largest chord of the k-curve: the diameter `2t` of a circle, unbounded otherwise.
pub fn max_chord<F: Real>(kc: Curvature<F>, k: F) -> F {
    match metric_radius(kc, k.abs()) {
        Some(t) => F::lit(2.0) * t,
        None => F::infinity(),
    }
}

/// Arclength `s` in `[0, c/2]` of the k-arc with chord `r`.
pub fn chord_to_arc<F: Real>(kc: Curvature<F>, k: F, r: F) -> Result<F> {
    let k = check_k(k)?;
    let rmax = max_chord(kc, k);
    if !(r >= F::zero()) || r > rmax * (F::one() + F::lit(4.0) * F::epsilon()) {
        return Err(out_of_range("chord", r, F::zero(), rmax));
    }
    if r == F::zero() {
        return Ok(F::zero());
    }
    if k == F::zero() {
        return Ok(r);
    }
    let half = circumference(kc, k) / F::lit(2.0);
    if r >= rmax {
        return Ok(half);
    }
    let lam = lambda(kc, k);
    let f = |s: F| {
        let g = chord_from_arc_unchecked(kc, k, s) - r;
        let phi = (k * trig::ver(lam, s)).atan2(trig::sn(lam, s));
        (g, Some(phi.cos()))
    };
    let hi = if half.is_finite() {
        half
    } else {
        // chord grows without bound; double until it exceeds r
        let mut hi = r * F::lit(2.0);
        while chord_from_arc_unchecked(kc, k, hi) < r {
            hi = hi * F::lit(2.0);
        }
        hi
    };
    Ok(solve_bracketed(f, r, hi, RootOptions::default())?)
}

/// Geodesic curvature `k'` of the k-arc with arclength `s` and chord `r`.
pub fn solve_k_prime<F: Real>(kc: Curvature<F>, s: F, r: F) -> Result<F> {
    if !(r > F::zero()) || r > s * (F::one() + F::lit(8.0) * F::epsilon()) {
        return Err(out_of_range("chord", r, F::zero(), s));
    }
    let big_k = kc.value();
    if big_k > F::zero() && s + r >= kc.perimeter_limit() {
        return Err(out_of_range(
            "arc + chord",
            s + r,
            F::zero(),
            kc.perimeter_limit(),
        ));
    }
    if r >= s {
        return Ok(F::zero());
    }
    let kmax2 = (F::TAU() / s).powi(2) - big_k;
    let kmax = kmax2.max(F::zero()).sqrt();
    let f = |kp: F| {
        let lam = lambda(kc, kp);
        let rr = chord_from_arc_unchecked(kc, kp, s);
        let snr = kc.sn(rr);
        let d = if snr > F::zero() {
            Some(F::lit(2.0) * kp * trig::dver_dkappa(lam, s) / snr)
        } else {
            None
        };
        (rr - r, d)
    };
    Ok(solve_bracketed(f, F::zero(), kmax, RootOptions::default())?)
}

/// Distance from the chord point at arclength `u` to the k-arc over a chord of length `r`.
pub fn chordpoint_width<F: Real>(kc: Curvature<F>, k: F, r: F, u: F) -> Result<F> {
    if !(u >= F::zero()) || u > r {
        return Err(out_of_range("chord parameter", u, F::zero(), r));
    }
    let s = chord_to_arc(kc, k, r)?;
    if u == F::zero() || u == r || k == F::zero() {
        return Ok(F::zero());
    }
    let curve = KCurve::new(kc, k)?;
    let x = geodesic_eval(&curve.start(), &curve.point(s), u / r)?;
    Ok(curve.project(&x)?.distance)
}

/// Lipschitz constant of the nearest-point projection onto a k-curve, at
/// distance `d` on its concave side: `1 / (cs_K(d) - k sn_K(d))`.
pub fn projection_lipschitz_ratio<F: Real>(kc: Curvature<F>, k: F, d: F) -> Result<F> {
    lipschitz_ratio_signed(kc, k, d, 1)
}

/// As [`projection_lipschitz_ratio`], on the concave (`side > 0`) or convex side.
pub fn lipschitz_ratio_signed<F: Real>(kc: Curvature<F>, k: F, d: F, side: i8) -> Result<F> {
    let k = check_k(k)?;
    if !(d >= F::zero()) {
        return Err(out_of_range("distance", d, F::zero(), F::infinity()));
    }
    let sgn = if side >= 0 { F::one() } else { -F::one() };
    let den = kc.cs(d) - sgn * k * kc.sn(d);
    if !(den > F::zero()) {
        return Err(GeomError::FocalDistance {
            d: d.to_f64_lossy(),
        });
    }
    Ok(F::one() / den)
}

/// Leading-order expansions of the k-curve quantities.
///
/// They are used as oracles and reported side by side with the exact values;
/// nothing in the library evaluates geometry through them.
pub mod series {
    use crate::scalar::Real;

    /// `s - k^2 s^3 / 24`.
    pub fn arc_to_chord<F: Real>(k: F, s: F) -> F {
        s - k * k * s.powi(3) / F::lit(24.0)
    }

    /// `k s / 2`.
    pub fn base_angle<F: Real>(k: F, s: F) -> F {
        k * s / F::lit(2.0)
    }

    /// `k r^2 / 8`.
    pub fn width<F: Real>(k: F, r: F) -> F {
        k * r * r / F::lit(8.0)
    }

    /// `1 + k d + (k^2 + K/2) d^2`.
    pub fn lipschitz_ratio<F: Real>(big_k: F, k: F, d: F) -> F {
        F::one() + k * d + (k * k + big_k / F::lit(2.0)) * d * d
    }

    /// `(k/2) u v (1 + (k^2/64) u v + (K/12)(u^2 + 3uv + v^2))` with `v = r - u`.
    pub fn chordpoint_width<F: Real>(big_k: F, k: F, r: F, u: F) -> F {
        chordpoint_width_with(big_k, k, r, u, k * k / F::lit(64.0))
    }

    /// The same expansion with an explicit coefficient `c2` on the `uv` term.
    ///
    /// The flat circle `w = R - sqrt(R^2 - uv)` gives `c2 = k^2/4`.
    pub fn chordpoint_width_with<F: Real>(big_k: F, k: F, r: F, u: F, c2: F) -> F {
        let v = r - u;
        let uv = u * v;
        k / F::lit(2.0)
            * uv
            * (F::one() + c2 * uv + big_k / F::lit(12.0) * (u * u + F::lit(3.0) * uv + v * v))
    }
}
