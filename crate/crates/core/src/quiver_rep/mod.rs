//! Quivers, their representations over `F_p`, and Hom/Ext¹ between them.

pub mod decompose;
pub mod factor;
pub mod homext;
pub mod indec;
pub mod quiver;
pub mod rep;
pub mod resolution;

pub use factor::{factorize, Factorization};
pub use homext::{ext_dim, extension_middle, hom_dim, hom_ext, ses_class, ExtClass, HomExt};
pub use quiver::{Arrow, DynkinType, Path, Quiver};
pub use rep::{biproduct, FreeBasis, RepMorphism, Representation};
pub use resolution::{standard_resolution, StandardResolution};
pub use decompose::{decompose_rep, find_iso, rep_iso, Summand};
pub use indec::{indecomposables, IndecList};
