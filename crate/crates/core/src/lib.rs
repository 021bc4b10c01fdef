//! Computational model of the derived category of a hereditary abelian
//! category `rep(Q)` over a prime field.

pub mod axioms;
pub mod cli;
pub mod complexes;
pub mod cones;
pub mod equivalence;
pub mod error;
pub mod formal;
pub mod io;
pub mod linalg;
pub mod octa;
pub mod quiver_rep;
pub mod random;
pub mod report;
pub mod tstruct;

pub use error::{Error, Result};
