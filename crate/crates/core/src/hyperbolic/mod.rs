//! The metric engine: isometries of the upper half-plane, axes and
//! translation lengths, crossing and angle computations, built-in surface
//! representations, and Fenchel-Nielsen twist families.

mod geometry;
mod rep;
mod twist;

pub use geometry::{
    axes_linked, axis, crossing_point, directed_angle, dist, dist_to_axis, midpoint,
    translation_length, AxisGeo, BoundaryPoint, HPoint, Isometry,
};
pub(crate) use geometry::{axis_chart, axis_position};
pub use rep::{rep_modular_torus, rep_once_holed_torus, rep_pair_of_pants, Representation};
pub use twist::{fn_twist, TwistFamily};

use thiserror::Error;

/// Decision threshold shared by hyperbolicity and linking tests.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypError {
    #[error("element is not hyperbolic (trace {trace})")]
    NonHyperbolic { trace: f64 },
    #[error("axes do not cross")]
    NotLinked,
    #[error("axis endpoints coincide within tolerance; crossing undecidable")]
    TangencyUnresolved,
    #[error("input does not give a discrete group: {0}")]
    NotDiscreteInput(String),
    #[error("no registered twist splitting for curve ({0})")]
    NoRegisteredSplitting(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("representation failed validation: {0}")]
    InvalidRepresentation(String),
}
