//! Finite left regular bands and the homology of their algebras.
//!
//! Monoids are built from Cayley tables or from the constructions in
//! [`constructions`]. Ext-spaces between simple modules are computed from
//! order complexes in [`homological`] and, independently, from the
//! normalized bar resolution in [`oracle`].

#![allow(clippy::needless_range_loop)]

pub mod complexes;
pub mod constructions;
pub mod error;
pub mod field;
pub mod graph;
pub mod homological;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lrb;
pub mod oracle;
pub mod poset;

pub use error::{LrbError, Result};
pub use field::FieldSpec;
pub use graph::Graph;
pub use lattice::SupportLattice;
pub use lrb::{validate_lrb, Lrb, SubmonoidMap};
pub use poset::FinitePoset;
