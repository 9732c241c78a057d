//! Exact scalar arithmetic over ℚ and ℚ(i) and the linear algebra built on it:
//! echelon forms, kernels and images, the subspace lattice, direct-sum
//! decompositions, and exact definiteness tests.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{image, inertia, is_positive_definite, kernel, rref, solve, Echelon, Matrix};
pub use scalar::{format_rational, int, parse_rational, rational, CScalar, Scalar};
pub use subspace::{DirectSum, Subspace};
