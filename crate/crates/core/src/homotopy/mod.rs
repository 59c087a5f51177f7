//! The homotopy category of bounded complexes of projectives.

pub mod complex;
pub mod context;
pub mod hom;
pub mod object;

pub use complex::{is_chain_map, local_inverse, ChainMap, Mat, ProjComplex};
pub use context::{Context, SummandId};
pub use hom::{hom_dim, HomSpace, Layout};
pub use object::{
    end_algebra, end_algebra_from, is_isomorphic, is_isomorphism, local_endomorphisms, EndData, LocalEnd,
};

#[cfg(test)]
mod tests;
