//! Compiles the guide's code listings as doctests, one module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}
#[doc = include_str!("../../../book/src/polyhedra.md")]
pub mod polyhedra {}
#[doc = include_str!("../../../book/src/projection.md")]
pub mod projection {}
#[doc = include_str!("../../../book/src/vertices.md")]
pub mod vertices {}
#[doc = include_str!("../../../book/src/definitions.md")]
pub mod definitions {}
#[doc = include_str!("../../../book/src/augmentation.md")]
pub mod augmentation {}
#[doc = include_str!("../../../book/src/spanning-trees.md")]
pub mod spanning_trees {}
#[doc = include_str!("../../../book/src/auxiliary.md")]
pub mod auxiliary {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
