//! Exact cochain-level algebraic topology on finite simplicial complexes.
//!
//! Cup and cup-i products, Steenrod squares, Bockstein operators, Poincaré
//! duality pairings, torsion linking forms, Wu and Stiefel–Whitney classes,
//! plus a small arithmetic module for mod-2 linking numbers of primes.

pub mod arithmetic;
pub mod cochain;
pub mod duality;
mod error;
pub mod fixtures;
pub mod lens;
pub mod linalg;
pub mod ops;
pub mod qz;
pub mod simplicial;
pub mod verify;

pub use cochain::{cup, cup_i, Cochain};
pub use error::{Error, Result};
pub use linalg::{cohomology, CoefficientRing, CohomologyBasis, CohomologyClass};
pub use simplicial::{parse_complex, Complex, SimplicialComplex};
