//! Exact polyhedral toolkit for deciding and certifying extended-formulation
//! relationships between polyhedra.
//!
//! Three definitions of "`U` is an extended formulation of `X`" are in
//! common use: projection equality, existence of a linear map with image
//! `X`, and membership equivalence. They agree when the description of `U`
//! genuinely constrains the `x` variables, and come apart when it does not.
//! This crate decides each definition on concrete instances with exact
//! rational arithmetic and returns machine-checkable witnesses.
//!
//! * [`numeric`]: rationals, matrices, linear systems.
//! * [`polyhedron`]: H- and V-descriptions, containment, redundancy.
//! * [`lp`]: exact two-phase simplex.
//! * [`projection`]: Fourier–Motzkin elimination.
//! * [`vertex`]: brute-force vertex and ray enumeration.
//! * [`ef`]: the effective `G = 0` detector and the three EF checkers.
//! * [`augmentation`]: the mutual-EF construction for disjoint polyhedra.
//! * [`mstp`]: spanning-tree LP models (Edmonds, Martin, restated Martin).
//! * [`auxiliary`]: optimizing over `X` through an auxiliary model and a
//!   linking map.
//! * [`instances`]: the small named instances used throughout the guide.
//!
//! The `book/` directory at the repository root is a narrative guide; its
//! code listings are compiled and run as doctests of this crate.

pub mod augmentation;
pub mod auxiliary;
pub mod ef;
pub mod error;
pub mod instances;
pub mod lp;
pub mod mstp;
pub mod numeric;
pub mod polyhedron;
pub mod projection;
pub mod vertex;

pub use error::{Error, Result};
pub use numeric::{Matrix, Rational, Vector};
pub use polyhedron::{Block, HPolyhedron, LinearConstraint, Relation, VPolytope, VarSpace};

#[cfg(doctest)]
mod book;
