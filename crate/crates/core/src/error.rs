use alloc::string::String;

/// Errors raised by the library. Variants that carry a mathematical meaning
/// (a violated precondition) are distinguished from malformed input so the
/// command line can map them onto different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("arity error: {0}")]
    Arity(String),
    #[error("line {line}: clause has no literals")]
    EmptyClause { line: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to the group: {0}")]
    GroupMismatch(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("homomorphism is ill-defined at source column {column}")]
    IllDefined { column: usize },
    #[error("subgroup is not contained in the larger one{}", context_suffix(.0))]
    NotContained(Option<String>),
    #[error("subgroup or embedding is not pure")]
    NotPure,
    #[error("base group is not pure-injective (positive rank)")]
    NotPureInjective,
    #[error("amalgam {0} is not a model of the theory")]
    EscapesClass(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operation needs a finite group, got positive rank")]
    PositiveRank,
    #[error("group order {order} exceeds the search budget {budget}")]
    BudgetExceeded { order: String, budget: u64 },
}

fn context_suffix(ctx: &Option<String>) -> String {
    match ctx {
        Some(c) => alloc::format!(" ({c})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }

    /// True for the mathematical precondition failures (as opposed to input
    /// that could not be read).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotContained(_)
                | Error::NotPure
                | Error::NotPureInjective
                | Error::EscapesClass(_)
                | Error::Unsupported(_)
                | Error::PositiveRank
                | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
