use thiserror::Error;

/// Errors raised by grid construction, operator evaluation and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {message}")]
    NumericalFailure {
        message: String,
        /// Stage index for multi-stage pipelines, when known.
        stage: Option<usize>,
        /// Partial diagnostics collected before the failure.
        partial: Vec<(String, f64)>,
    },

    #[error("unsupported order {order}: at most {max} is supported")]
    UnsupportedOrder { order: usize, max: usize },

    #[error(
        "p-atoms with p = {p} need vanishing moments up to order {k_max}; use make_moment_atom"
    )]
    MomentOrderUnsupported { p: f64, k_max: usize },

    #[error("atom construction failed: {0}")]
    ConstructionFailure(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::NumericalFailure {
            message: msg.into(),
            stage: None,
            partial: Vec::new(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
