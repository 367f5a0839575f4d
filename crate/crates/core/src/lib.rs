//! Exact computations with Hecke algebras of finite group/subgroup pairs.

pub mod algebra;
pub mod analysis;
pub mod axb;
pub mod corpus;
pub mod crossed;
pub mod error;
pub mod hecke;
pub mod group;
pub mod linalg;
pub mod module_space;
pub mod pair;
pub mod partial_rep;
pub mod product_law;
pub mod par;
pub mod rational;

pub use error::{ArithError, Error, Result};
pub use group::{
    CosetKind, CosetSpace, Family, GroupSource, GroupTable, Subgroup, DEFAULT_MAX_ORDER,
};
pub use linalg::{Matrix, Vector};
pub use rational::Rational;
