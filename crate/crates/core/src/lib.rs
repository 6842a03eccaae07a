//! Auslander algebras, the recollement functors between `mod-Λ` and the
//! module category of its Auslander algebra, and exact certification that
//! they form a categorical resolution.
//!
//! Everything is exact: fields are prime fields `F_p` or the rationals.
//! Modules are right modules acted on by row vectors, `v ↦ v·ρ(a)`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod auslander;
pub mod certify;
pub mod complexes;
pub mod error;
pub mod field;
pub mod functors;
pub mod homology;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod quiver;
pub mod random;

pub use algebra::{Algebra, RadicalChain};
pub use auslander::AuslanderData;
pub use complexes::{BComplex, ChainMap};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::{Mat, Subspace};
pub use modules::{HomSpace, ModHom, Repn};
