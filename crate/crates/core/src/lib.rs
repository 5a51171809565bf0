//! Homological algebra for finite groups: first and second homology, second
//! cohomology with trivial finite abelian coefficients, central extensions
//! with their Baer sum, universal central extensions of perfect groups, and
//! certificates for the classical five-term exact sequences.

pub mod abelian;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod groups;
pub mod homology;
pub mod theorems;
pub mod verify;

pub use abelian::{AbMorphism, FinAb, IntMatrix};
pub use cohomology::{Cocycle2, CoefficientGroup, CohomologyGroup2};
pub use error::{Error, Result};
pub use extensions::{EquivalenceMode, Extension};
pub use groups::{FiniteGroup, GroupMorphism, Subgroup};
pub use homology::HomologyGroup;
pub use theorems::{FiveTermReport, UCEResult};
