//! Exact computations for the orbit method on nilpotent Lie superalgebras
//! over the rationals.

pub mod cliffmod;
pub mod coadjoint;
pub mod corpus;
pub mod document;
pub mod linalg;
pub mod models;
pub mod polarize;
pub mod reduction;
pub mod sampling;
pub mod scalar;
pub mod subspace;
pub mod superalg;
pub mod sweep;
