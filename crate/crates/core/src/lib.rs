//! Exact verification of generalized complex and generalized Kähler
//! structures on finite-dimensional Lie algebras.

pub mod catalog;
pub mod cli;
pub mod courant;
pub mod dga;
pub mod error;
pub mod exactlin;
pub mod forms;
pub mod gcs;
pub mod gk;
pub mod liealg;

pub use error::{Error, Result};
