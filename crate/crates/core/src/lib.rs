//! Partial transformations of the chain `[n] = {1, …, n}` and the semigroup
//! `CP_n` of partial contractions: kernels and transversals, regularity,
//! Green's relations, the monotone subsemigroups, and exhaustive checks of
//! the structural characterizations against brute-force oracles.
//!
//! Composition is left to right: `x(αβ) = (xα)β`.

pub mod enumeration;
pub mod error;
pub mod green;
pub mod kernel;
pub mod regularity;
pub mod transform;
pub mod variants;
pub mod verify;

pub use enumeration::{enumerate, SemigroupEnumeration, Variant};
pub use error::{Error, Result};
pub use green::{GreenOracle, Relation};
pub use kernel::{KernelDecomposition, Transversal};
pub use regularity::RegularityVerdict;
pub use transform::PartialTransformation;
pub use verify::{Suite, VerificationReport};
