//! Exact linear algebra over ℚ and 𝔽_p: rank, kernels, reduced echelon form.

mod matrix;
mod scalar;

pub use matrix::{axpy, canonicalize, densify, rank_of_columns, Echelon, ExactMatrix, SparseVec};
pub use scalar::{Field, FieldScalar, Rational};
