//! Curvature-parametrized trigonometric functions.
//!
//! For a curvature `kappa` these are the solutions of `y'' + kappa y = 0`:
//! `sn` (with `sn(0) = 0, sn'(0) = 1`), `cs = sn'` and the versine
//! `ver = (1 - cs) / kappa`. All of them switch to a Taylor series when
//! `|kappa| x^2` is tiny so that the flat limit is reached without
//! cancellation.

use crate::scalar::Real;

#[inline]
fn small<F: Real>(z: F) -> bool {
    z.abs() < F::SERIES_CUTOFF
}

/// `sin(sqrt(kappa) x) / sqrt(kappa)` and its hyperbolic and flat analogs.
pub fn sn<F: Real>(kappa: F, x: F) -> F {
    let z = kappa * x * x;
    if small(z) {
        x * (F::one() - z / F::lit(6.0) + z * z / F::lit(120.0))
    } else if kappa > F::zero() {
        let q = kappa.sqrt();
        (q * x).sin() / q
    } else {
        let q = (-kappa).sqrt();
        (q * x).sinh() / q
    }
}

/// `cos(sqrt(kappa) x)` and its hyperbolic and flat analogs.
pub fn cs<F: Real>(kappa: F, x: F) -> F {
    let z = kappa * x * x;
    if small(z) {
        F::one() - z / F::lit(2.0) + z * z / F::lit(24.0)
    } else if kappa > F::zero() {
        (kappa.sqrt() * x).cos()
    } else {
        ((-kappa).sqrt() * x).cosh()
    }
}

/// `(1 - cs(kappa, x)) / kappa`, equal to `x^2 / 2` when `kappa = 0`.
pub fn ver<F: Real>(kappa: F, x: F) -> F {
    let z = kappa * x * x;
    let two = F::lit(2.0);
    if small(z) {
        x * x / two * (F::one() - z / F::lit(12.0) + z * z / F::lit(360.0))
    } else if kappa > F::zero() {
        let h = (kappa.sqrt() * x / two).sin();
        two * h * h / kappa
    } else {
        let h = ((-kappa).sqrt() * x / two).sinh();
        two * h * h / (-kappa)
    }
}

/// Inverse of [`ver`] on `[0, pi/sqrt(kappa)]` (all of `[0, inf)` for `kappa <= 0`).
///
/// Negative inputs are treated as zero; for `kappa > 0` inputs above `2/kappa`
/// saturate at the antipodal distance.
pub fn ver_inv<F: Real>(kappa: F, v: F) -> F {
    let v = v.max(F::zero());
    let w = kappa * v;
    let two = F::lit(2.0);
    if small(w) {
        (two * v).sqrt() * (F::one() + w / F::lit(12.0) + F::lit(3.0) * w * w / F::lit(160.0))
    } else if kappa > F::zero() {
        let q = kappa.sqrt();
        two / q * (w / two).sqrt().min(F::one()).asin()
    } else {
        let q = (-kappa).sqrt();
        two / q * (-w / two).sqrt().asinh()
    }
}

/// Partial derivative of `ver(kappa, x)` with respect to `kappa`.
pub fn dver_dkappa<F: Real>(kappa: F, x: F) -> F {
    let z = kappa * x * x;
    if z.abs() < F::lit(1e-3) {
        let x2 = x * x;
        let x4 = x2 * x2;
        x4 * (-F::one() / F::lit(24.0) + z / F::lit(360.0) - F::lit(3.0) * z * z / F::lit(40320.0)
            + F::lit(4.0) * z * z * z / F::lit(3_628_800.0))
    } else {
        (x * sn(kappa, x) / F::lit(2.0) - ver(kappa, x)) / kappa
    }
}
