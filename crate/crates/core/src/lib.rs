//! Cohomology of measurable laminations on finite fibered simplicial models.
//!
//! A lamination is represented by a [`FiberedComplex`]: families of ordered
//! simplices parametrized by the atoms of a finite measured transversal,
//! with face maps acting as leafwise holonomy.
//!
//! The crate computes simplicial and relative cohomology over ℤ₂ and ℚ,
//! cup products, weighted Hodge decompositions and Λ-Betti numbers, and
//! checks the standard exact sequences on such models. Supporting modules
//! provide exact rational polyhedral geometry and exact arc-set algebra on
//! the circle over a real quadratic field.

pub mod circle;
pub mod cohomology;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod delta;
pub mod error;
pub mod exact;
pub mod field;
pub mod geometry;
pub mod homotopy;
pub mod l2;
pub mod linalg;
pub mod rational;
pub mod subdivide;

pub use complex::{
    AtomId, Cochain, Face, FamilyId, FiberedComplex, Instance, PartialHolonomy, SimplexFamily, Subcomplex,
    Transversal, Violation,
};
pub use delta::DeltaComplex;
pub use error::{Error, Result};
pub use field::{CoeffKind, Field, Z2};
pub use rational::Rational;
