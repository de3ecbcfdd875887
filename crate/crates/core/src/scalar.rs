//! Scalar abstraction shared by the exact model-plane code.
//!
//! Everything in [`crate::model_space`], [`crate::kcurve`], [`crate::fermi`] and
//! [`crate::roots`] is written against [`Real`], implemented for `f32` and
//! `f64`. The sampled-space estimators work in `f64` only.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating point scalar with the tolerances the geometry code needs.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
    /// Constraint drift above this is projected back onto the quadric.
    const RENORM_TOL: Self;
    /// Constraint drift above this is rejected.
    const REJECT_TOL: Self;
    /// Default absolute/relative tolerance for root finding.
    const ROOT_TOL: Self;
    /// `|kappa| x^2` below which generalized trig functions switch to series.
    const SERIES_CUTOFF: Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const RENORM_TOL: f64 = 1e-9;
    const REJECT_TOL: f64 = 1e-6;
    const ROOT_TOL: f64 = 1e-12;
    const SERIES_CUTOFF: f64 = 1e-8;
}

impl Real for f32 {
    const RENORM_TOL: f32 = 1e-5;
    const REJECT_TOL: f32 = 1e-3;
    const ROOT_TOL: f32 = 1e-6;
    const SERIES_CUTOFF: f32 = 1e-4;
}
