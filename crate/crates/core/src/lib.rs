//! Finite PR-structures: propositions, realizers, and a table assigning to
//! each ordered pair of propositions the realizers of that entailment.
//!
//! The crate evaluates indexed entailment, computes canonical antichain
//! forms and degrees, decides the preorderal, posetal and bounded-posetal
//! properties, builds the structures induced by finite partial applicative
//! structures, and checks completeness of their fibers.

pub mod appstruct;
pub mod bits;
pub mod canonical;
pub mod catalog;
pub mod completeness;
pub mod error;
pub mod fiber;
pub mod format;
pub mod order;
pub mod properties;
pub mod structure;

pub use appstruct::{Pas, SubPasPair, Subset};
pub use bits::BitSet;
pub use canonical::{canonicalize, degree, equivalent, is_p_structure, CanonicalForm, Equivalence};
pub use error::{Error, Result};
pub use properties::Property;
pub use structure::{BinRel, FamilyPair, PairSet, PrStructure, PropId, RealId};
