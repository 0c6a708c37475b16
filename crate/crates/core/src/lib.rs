//! Mod-2 combinatorial topology of triangulated closed manifolds.
//!
//! Builds the barycentric subdivision and its dual block complex, checks that
//! the all-ones dual-cell cochains are cocycles, and compares their classes
//! against Stiefel–Whitney classes computed independently from the Wu formula.

pub mod blocks;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod io;
pub mod pipeline;
pub mod simplicial;
pub mod subdivision;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use simplicial::{Chain, Cochain, Simplex, SimplicialComplex};
