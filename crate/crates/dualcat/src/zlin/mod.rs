//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, chain complexes over Z and induced maps on homology.

mod complex;
mod group;
mod matrix;

pub use complex::{
    induced_map, induced_on_bases, ChainMap, Grading, HomologyBasis, IntegerChainComplex,
    ZlinError,
};
pub use group::FgAbelianGroup;
pub use matrix::{invariant_factors, smith_normal_form, solve_integer_system, IntMatrix, Smith};
