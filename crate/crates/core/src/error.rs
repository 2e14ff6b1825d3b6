use thiserror::Error;

/// Failure of a numerical kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },
    #[error("{func} did not converge for {args} after {iterations} iterations")]
    NoConvergence {
        func: &'static str,
        args: String,
        iterations: usize,
    },
}

impl NumError {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        NumError::Domain {
            func,
            detail: detail.into(),
        }
    }
}
