//! Exact Ollivier-Ricci curvature of graph edges and solvers for the
//! critical-edge problems built on it.

pub mod curvature;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Distance, EdgeRef, Graph, NodeId, Weight};
pub use matrix::Matrix;

/// Arbitrary-precision rational, the default exact scalar.
pub type Rational = num_rational::BigRational;
pub type ExactCurvature = curvature::CurvatureResult<Rational>;
pub type FloatCurvature = curvature::CurvatureResult<f64>;
pub type ExactPlan = curvature::TransportPlan<Rational>;
