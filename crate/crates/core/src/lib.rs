//! Numerical comparison geometry in constant-curvature model planes.
//!
//! The crate is layered bottom up:
//!
//! * [`trig`], [`model_space`]: exact geometry of the model plane `S_K`;
//! * [`kcurve`]: curves of constant geodesic curvature and their arc/chord relations;
//! * [`fermi`]: the Fermi placement map into `S_K` and its contraction check;
//! * [`sampled`]: point samples with ambient and graph-intrinsic metrics;
//! * [`scenarios`]: deterministic test geometries with known ground truth;
//! * [`estimate`]: curvature and injectivity estimators and theorem checks.
//!
//! The exact layers are generic over [`Real`] (`f32` or `f64`); the sampled
//! layers use `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimate;
pub mod fermi;
pub mod kcurve;
pub mod model_space;
pub mod report;
pub mod roots;
pub mod sampled;
pub mod scalar;
pub mod scenarios;
pub mod trig;

pub use error::{GeomError, Result, RootError};
pub use scalar::Real;

pub type Curvature64 = model_space::Curvature<f64>;
pub type Curvature32 = model_space::Curvature<f32>;
pub type ModelPoint64 = model_space::ModelPoint<f64>;
pub type ModelPoint32 = model_space::ModelPoint<f32>;
pub type ModelTriangle64 = model_space::ModelTriangle<f64>;
pub type ModelTriangle32 = model_space::ModelTriangle<f32>;
pub type KArc64 = kcurve::KArcSpec<f64>;
pub type KArc32 = kcurve::KArcSpec<f32>;
pub type KCurve64 = kcurve::KCurve<f64>;
pub type KCurve32 = kcurve::KCurve<f32>;
pub type FermiCoord64 = fermi::FermiCoord<f64>;
pub type FermiCoord32 = fermi::FermiCoord<f32>;
