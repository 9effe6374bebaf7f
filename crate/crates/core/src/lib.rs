//! Homology graphs of higher dimensional automata.
//!
//! The crate builds finite precubical sets and HDAs, computes their integral
//! (or mod `p`) cellular homology exactly, decides the pointing relation `↗`
//! between homology classes, and handles grid subdivisions: validation,
//! carriers, images, path mapping and lifting, and the reduction of
//! subsets of a subdivided complex.

pub mod algebra;
pub mod cubical;
pub mod document;
pub mod export;
pub mod fixtures;
pub mod hda;
pub mod hograph;
pub mod homology;
pub mod random;
pub mod reach;
pub mod reduction;
pub mod subdivision;

pub use algebra::{IntMatrix, Ring};
pub use cubical::{CubeId, CubicalError, Path, PrecubicalSet, PrecubicalSubset};
pub use hda::{Hda, HdaError, Monoid, Word};
