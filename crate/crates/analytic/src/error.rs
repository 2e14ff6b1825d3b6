use hetdiv_core::NumError;
use hetdiv_hetnet::HetNetError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numerical failure ({context}): {source}")]
    Numerical {
        context: String,
        #[source]
        source: NumError,
    },
    #[error(transparent)]
    Model(#[from] HetNetError),
    #[error("{}", describe_failures(.0))]
    Curve(Vec<(usize, AnalyticError)>),
}

fn describe_failures(f: &[(usize, AnalyticError)]) -> String {
    let list: Vec<String> = f.iter().map(|(i, e)| format!("point {i}: {e}")).collect();
    format!("{} curve point(s) failed: {}", f.len(), list.join("; "))
}

impl AnalyticError {
    pub(crate) fn numerical(context: impl Into<String>, source: NumError) -> Self {
        Self::Numerical {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn no_convergence(context: impl Into<String>, func: &'static str, evaluations: usize) -> Self {
        let context = context.into();
        Self::Numerical {
            source: NumError::NoConvergence {
                func,
                args: context.clone(),
                iterations: evaluations,
            },
            context,
        }
    }
}

pub type Result<T> = std::result::Result<T, AnalyticError>;
