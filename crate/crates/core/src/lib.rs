//! Exact computation of CS-Rickart type properties for finite abelian groups
//! and small finite modules.

pub mod arith;
pub mod classifier;
pub mod context;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod hom;
mod lattice;
pub mod matrix;
pub mod predicates;
pub mod probe;
pub mod rickart;
pub mod ring;
pub mod rmodule;
pub mod subgroup;
pub mod verify;
pub mod verdict;

pub use error::{LabError, Result};
pub use group::{FiniteAbelianGroup, GroupElement, IsoType};
pub use hom::Homomorphism;
pub use subgroup::Subgroup;
pub use verdict::{Evidence, EvidenceKind, PropertyVerdict};
