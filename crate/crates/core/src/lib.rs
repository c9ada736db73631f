//! Categories enriched in finite quantaloids.
//!
//! The crate covers finite quantaloids and quantales ([`quantaloid`]), categories and
//! functors enriched in them ([`enriched`]), distributors and presheaf categories
//! ([`distributor`]), weighted limits, completeness and closure spaces ([`completion`]),
//! and the Isbell and Kan adjunctions with their concept lattices ([`adjunction`]).
//! Fuzzy formal contexts and the JSON document formats live in [`context`] and [`io`].

pub mod adjunction;
pub mod completion;
pub mod context;
pub mod distributor;
pub mod enriched;
mod error;
pub mod fixtures;
pub mod io;
pub mod quantaloid;
pub mod random;

pub use error::{Error, Result};

pub use adjunction::{ConceptKind, ConceptLattice, ConceptPair, EnumerationAlgorithm};
pub use distributor::{Infomorphism, PresheafCategory, QDistributor, Variance, Weight};
pub use enriched::{QCategory, QFunctor, QTypedSet};
pub use quantaloid::{Arrow, QuantaleSpec, Quantaloid, Side};

/// Default bound on the number of candidate weight vectors per type object.
pub const DEFAULT_CAP: u128 = 200_000;
