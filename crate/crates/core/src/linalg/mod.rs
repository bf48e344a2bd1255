//! Exact linear algebra: Smith normal form, cochain complex reduction and cohomology.

pub(crate) mod cohomology;
pub mod modp;
mod reduce;
mod ring;
pub mod smith;

pub use cohomology::{
    class_of, coboundary, coboundary_matrix, cohomology, solve_coboundary, torsion_generators, CohomologyBasis, CohomologyClass, Generator,
    SparseMatrix,
};
pub(crate) use reduce::Reduced;
pub use ring::CoefficientRing;
pub use smith::{smith_normal_form, IntMatrix, Smith};
