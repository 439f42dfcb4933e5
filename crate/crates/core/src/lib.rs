//! Exact K-theoretic computations on flag varieties.
pub mod error;
pub mod hecke0;
pub mod idemkit;
pub mod kgr;
pub mod loopgen;
pub mod matrix;
pub mod polycore;
pub mod report;
pub mod shapes;
pub mod sodlab;

pub use error::{FlagkError, Result};
pub use matrix::IntMatrix;
pub use polycore::LaurentPoly;
pub use report::{Check, Level, Status, VerificationReport};
pub use shapes::{Composition, Partition};
