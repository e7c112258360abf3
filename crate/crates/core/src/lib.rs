//! Exact and numerical verification of uniform-cover volume inequalities.
//!
//! The crate computes exact volumes, coordinate sections and coordinate
//! projections of rational polytopes. For a uniform cover of the coordinates
//! it compares `|K|^s` with products of projection volumes (an upper bound)
//! and of section volumes (a lower bound), including the Loomis–Whitney and
//! Meyer special cases, weighted covers, and covers by hyperplanes in John's
//! position. It also builds cross-polytope certificates matching a body's
//! section volumes, and checks the log-concave functional forms numerically.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod certifier;
pub mod coords;
pub mod covers;
pub mod error;
pub mod field;
pub mod functional;
pub mod inequality;
pub mod isotropic;
pub mod lp;
pub mod polytope;
pub mod quadrature;
pub mod rational;
pub mod report;

pub use coords::CoordSet;
pub use covers::{Cover, WeightedCover};
pub use error::{Error, Result};
pub use polytope::{Halfspace, Polytope, Representation};
pub use rational::Rational;
pub use report::{InequalityReport, Value};
