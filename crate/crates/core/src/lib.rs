//! Exact construction and verification of d-orthogonal polynomial families
//! with rational arithmetic.

pub mod cli;
pub mod error;
pub mod families;
pub mod identities;
pub mod orthogonality;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::Rational;
