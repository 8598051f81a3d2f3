//! Exact root systems and Weyl groups, λ-sequences of reduced words, braid
//! moves, and the classification of non-gatherable triangle triples.

pub mod braid;
pub mod error;
pub mod ngt;
pub mod planar;
pub mod roots;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use roots::{Family, LengthClass, Root, RootId, RootSystem, RootSystemId, Subsystem, SubsystemKind};
pub use weyl::{CocycleCheck, Element, LambdaSequence, Word};
