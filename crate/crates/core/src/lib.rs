pub mod error;
pub mod linalg;

pub use error::{Error, Result, Span};
pub use linalg::{ExactMatrix, Field, FieldScalar};
pub mod complexes;
pub use complexes::{BettiTable, ChainComplex, ComputedBetti, GradedSpace, Piece, Validity};
pub mod algebras;
pub use algebras::{GradedAlgebra, SidedModule};
pub mod bar;
pub mod manifolds;
pub mod free_config;
pub mod report;
pub use report::{CheckReport, CheckRow};
pub mod koszul;
pub use koszul::GradedCoalgebra;
