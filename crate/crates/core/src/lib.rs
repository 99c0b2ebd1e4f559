//! Exact-plus-numeric engine for the Lie and Poisson algebras of loops on
//! hyperbolic surfaces: Goldman and Thurston-Wolpert-Goldman brackets
//! computed geometrically, symmetric and enveloping Poisson algebras with
//! their deformations, and centrality probe suites.
//!
//! The exact layer (free-group combinatorics, rational coefficients) never
//! touches floating point; the numeric layer (axes, crossings, angles) is
//! cross-checked against exact oracles throughout.

pub mod center;
pub mod coeff;
pub mod error;
pub mod goldman;
pub mod hyperbolic;
pub mod intersect;
pub mod poisson;
pub mod suites;
pub mod words;

pub use coeff::Coeff;
pub use error::EngineError;
pub use hyperbolic::{Representation, TwistFamily};
pub use intersect::{CrossingDatum, EnumerationConfig};
pub use words::{OrientedClass, UnorientedClass, Word};
