use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function or operator.
    #[error("domain error: {0}")]
    Domain(String),

    /// A gamma function argument sits on a pole (a nonpositive integer).
    #[error("gamma pole at argument {arg} ({context})")]
    Pole { arg: f64, context: &'static str },

    /// An iterative or adaptive routine ran out of budget before meeting its tolerance.
    #[error("accuracy error: {message} (best estimate {value:e}, error estimate {err_est:e})")]
    Accuracy {
        message: String,
        value: f64,
        err_est: f64,
    },

    /// The input does not carry what the operation needs (e.g. analytic derivatives).
    #[error("capability error: {0}")]
    Capability(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the caller's arguments rather than by numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Pole { .. } | Error::Capability(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
