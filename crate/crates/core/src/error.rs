use std::fmt;

use thiserror::Error;

/// Location of a construct in DSL source text (1-based line and column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub len: usize,
}

impl Span {
    pub fn new(line: usize, column: usize, len: usize) -> Self {
        Self { line, column, len }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid scalar literal `{0}`")]
    BadScalar(String),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("d∘d ≠ 0 at degree {degree}")]
    DifferentialSquare { degree: i64 },

    #[error("differential d_{degree} does not preserve weight")]
    WeightNotPreserved { degree: i64 },

    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),

    #[error("unit law fails on {0}")]
    UnitLaw(String),

    #[error("product {0}*{1} violates {2} additivity")]
    Grading(String, String, &'static str),

    #[error("augmentation is not an algebra map: {0}")]
    Augmentation(String),

    #[error("commutativity flag set but {0}*{1} ≠ ±{1}*{0}")]
    NotCommutative(String, String),

    #[error("preset {0} is infinite-dimensional and needs a maxweight bound")]
    MissingMaxWeight(String),

    #[error("algebra is not augmented")]
    NotAugmented,

    #[error("augmentation ideal meets weight 0 (element {0})")]
    WeightZeroIdeal(String),

    #[error("algebra is not weight graded")]
    NotWeighted,

    #[error("module action invalid: {0}")]
    Module(String),

    #[error("module and algebra do not match: {0}")]
    ModuleMismatch(String),

    #[error("coalgebra invalid: {0}")]
    Coalgebra(String),

    #[error("coalgebra is not conilpotent: {0}")]
    NotConilpotent(String),

    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },

    #[error("{span}: unknown identifier `{name}`")]
    UnknownIdentifier { span: Span, name: String },

    #[error("{span}: duplicate name `{name}`")]
    Duplicate { span: Span, name: String },

    #[error("{span}: type mismatch: {message}")]
    TypeMismatch { span: Span, message: String },

    #[error("{span}: {message}")]
    AtSpan { span: Span, message: String },
}

impl Error {
    /// Source span for DSL-level errors.
    pub fn span(&self) -> Option<Span> {
        match self {
            Error::Syntax { span, .. }
            | Error::UnknownIdentifier { span, .. }
            | Error::Duplicate { span, .. }
            | Error::TypeMismatch { span, .. }
            | Error::AtSpan { span, .. } => Some(*span),
            _ => None,
        }
    }

    /// The message without its span prefix.
    pub fn message(&self) -> String {
        let text = self.to_string();
        match self.span() {
            Some(span) => text
                .strip_prefix(&format!("{span}: "))
                .map_or(text.clone(), str::to_string),
            None => text,
        }
    }

    pub(crate) fn at(self, span: Span) -> Error {
        if self.span().is_some() {
            return self;
        }
        Error::AtSpan {
            span,
            message: self.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
