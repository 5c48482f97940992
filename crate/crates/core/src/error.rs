use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` already exists in the context")]
    VariableExists(String),

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },

    #[error("map has {components} components over {vars} variables; a square map is required")]
    NonSquareMap { components: usize, vars: usize },

    #[error("component {0} of the map is zero")]
    ZeroComponent(usize),

    #[error("point has {got} coordinates, expected {expected}")]
    Arity { expected: usize, got: usize },

    #[error("reduction step budget of {0} exhausted")]
    BudgetExceeded(u64),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal error: {0}")]
    Internal(String),
}
