//! Exact classification of ordered pairs of isotropic subspaces in
//! finite-dimensional presymplectic vector spaces over the rationals.

pub mod classify;
pub mod error;
pub mod linalg;
pub mod poisson;
pub mod presymplectic;

pub use classify::{
    InvariantVector, IsotropicPair, MultiplicityVector, NormalFormWitness,
};
pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar, Subspace};
pub use poisson::{CoisotropicPair, PoissonSpace};
pub use presymplectic::{LinearMap, PresymplecticSpace, ReductionSplit, SymplecticBasis};
