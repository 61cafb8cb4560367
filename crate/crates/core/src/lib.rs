//! Toric lattice geometry for Sasaki-Einstein constructions.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] exact integer linear algebra (minors, Hermite/Smith forms,
//!   kernels, simplicial cone smoothness),
//! * [`fanpoly`] augmented fans in the plane, support functions, exact
//!   polygons and the per-fan invariants (Fano, index, symmetry, barycenter,
//!   volume, Einstein verdict),
//! * [`reduction`] weight matrices of toric 3-Sasakian quotients,
//! * [`asd`] isotropy data of toric anti-self-dual Einstein orbifolds,
//! * [`sasaki`] total spaces, spin parity, 5-manifold classification, volumes
//!   and joins,
//! * [`metriclab`] floating-point checks of the canonical toric Kähler metric.

pub mod asd;
pub mod error;
pub mod fanpoly;
pub mod lattice;
pub mod metriclab;
pub mod reduction;
pub mod sasaki;
pub mod scalar;

pub use error::{Error, FanViolation, Result};
pub use scalar::{RealScalar, Rational, Scalar};

pub type RationalPolygon = fanpoly::Polygon<Rational>;
pub type FloatPolygon = fanpoly::Polygon<f64>;
pub type RationalPolytope = fanpoly::Polytope<Rational>;
pub type FloatPolytope = fanpoly::Polytope<f64>;
pub type MetricProblem64 = metriclab::MetricProblem<f64>;
pub type MetricProblem32 = metriclab::MetricProblem<f32>;
