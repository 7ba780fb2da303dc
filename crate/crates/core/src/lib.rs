//! Exact-integer Graver and Markov bases of integer configurations,
//! Lawrence liftings, and closed forms for monomial curves in affine 3-space.

pub mod config;
pub mod curve;
pub mod error;
pub mod graver;
pub mod lawrence;
pub mod markov;
pub mod matrix;
pub mod vector;

pub use config::{Configuration, Fiber};
pub use error::{Error, Result};
pub use graver::{CompletionLimits, GraverBasis};
pub use matrix::IntMatrix;
pub use vector::IntVec;
