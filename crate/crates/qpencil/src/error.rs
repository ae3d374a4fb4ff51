//! Error taxonomy shared by the library and the CLI.
//!
//! The CLI maps each variant to a fixed exit code so batch studies can
//! dispatch on failures without parsing messages.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("pencil is not smooth: singular member {index} restricts to a degenerate square on its kernel plane")]
    NotSmooth { index: usize },

    #[error("Pfaffian form has repeated roots")]
    RepeatedPfaffianRoots,

    #[error("field {field} too small: extension of degree {degree} required (pass --allow-extend)")]
    FieldTooSmall { field: String, degree: u32 },

    #[error("budget exceeded: {needed} candidates > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal verification failure: {0}")]
    InternalVerification(String),

    #[error("mismatched field specs: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix does not stabilize the point set: {0}")]
    NotInStabilizer(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Exit code taxonomy: 0 success, 2 parse, 3 not smooth, 4 repeated
    /// Pfaffian roots, 5 field too small, 6 budget, 7 internal verification,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::NotSmooth { .. } => 3,
            Error::RepeatedPfaffianRoots => 4,
            Error::FieldTooSmall { .. } => 5,
            Error::BudgetExceeded { .. } => 6,
            Error::InternalVerification(_) => 7,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
