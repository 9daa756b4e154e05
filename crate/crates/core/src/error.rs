use thiserror::Error;

use crate::expr::Atom;

/// Errors raised by the exact expression layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot differentiate with respect to log atom {0}")]
    UnsupportedAtom(String),
    #[error("logarithm of a numeric constant is not representable: log({0})")]
    LogOfConstant(String),
}

/// Errors raised by the variational operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VariationalError {
    #[error("Lagrangian is not null: its Euler-Lagrange expression does not vanish")]
    NotNull,
    #[error("top-order coefficient depends on q^({0})")]
    NonexactTop(u32),
    #[error("integrand outside the supported class: {0}")]
    IntegrationUnsupported(String),
    #[error("expression is not linear in its top jet variable q^({0})")]
    NonlinearTop(u32),
    #[error("expression contains no jet variable")]
    NoJet,
    #[error("computation cancelled")]
    Cancelled,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Errors raised by the hierarchy constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("unsupported order {order} for {family}")]
    UnsupportedOrder { family: &'static str, order: u32 },
}

/// Errors raised by the Möbius checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("parameter `{0}` is reserved for the Möbius matrix entries")]
    ReservedParameter(String),
    #[error("Möbius entries must be free of jet variables and time")]
    NonConstantEntry,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Errors raised by numeric evaluation and integration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("no value supplied for atom {0}")]
    MissingAtom(Atom),
    #[error("numeric singularity at t = {t}")]
    NumericSingularity {
        t: f64,
        /// Samples computed before the singularity was hit.
        partial: Vec<(f64, Vec<f64>)>,
    },
    #[error("Euler-Lagrange expression vanishes identically; a null Lagrangian has no dynamics")]
    NullOde,
    #[error("invalid integration setup: {0}")]
    InvalidSetup(String),
    #[error(transparent)]
    Variational(#[from] VariationalError),
}

/// Errors raised by the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported exponent at line {line}, column {column}: exponents must be integers")]
    UnsupportedExponent { line: usize, column: usize },
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
