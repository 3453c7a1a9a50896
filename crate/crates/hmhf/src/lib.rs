//! Finite element solvers for the harmonic map heat flow from the unit disk
//! to the unit sphere.
//!
//! The crate contains:
//! - a 1D solver for the radially symmetric reduction, used to produce
//!   reference solutions ([`rshmhf`]),
//! - three 2D schemes differing in how the unit-length constraint is
//!   handled: pointwise projection, a tangent-space saddle point method and
//!   a constraint-preserving fixed point scheme ([`solvers`]),
//! - meshing, assembly and error norms ([`mesh`], [`fem`]),
//! - sparse direct solves and an inf-sup estimator ([`linalg`]),
//! - lifting of 1D reference profiles to sphere-valued 2D fields
//!   ([`reference`]) and a convergence-study harness ([`study`]).

pub mod error;
pub mod fem;
pub mod linalg;
pub mod mesh;
pub mod reference;
pub mod rshmhf;
pub mod solvers;
pub mod study;

pub use error::{Error, Result};
