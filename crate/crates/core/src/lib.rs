//! Exact computations with bound quiver algebras over prime fields, bounded
//! homotopy categories of projectives, and (nu-stable) silting mutation.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod field;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod morphism;
pub mod mutation;
pub mod quiver;
pub mod sc;
pub mod selfinjective;
pub mod sparse;

pub use algebra::{AlgebraElement, BoundQuiverAlgebra};
pub use error::{Error, Result};
pub use field::{FieldScalar, PrimeField};
pub use linalg::DenseMatrix;
pub use quiver::{PathWord, Quiver};
pub use sc::StructureConstantAlgebra;
