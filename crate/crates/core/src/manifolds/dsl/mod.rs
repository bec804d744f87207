//! Text DSL for algebras, modules, 1-manifolds and computation requests.
//!
//! ```text
//! field Q
//! algebra A = preset squarezero(1,0)
//! manifold M = circle A
//! compute facthom M maxdeg 4
//! ```

pub mod ast;
mod lexer;
mod parser;
mod resolve;

pub use ast::Program;
pub use parser::parse;
pub use resolve::{parse_program, resolve, Binding, Declarations, Job};
