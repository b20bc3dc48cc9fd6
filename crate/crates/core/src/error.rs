use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of {func} at {at}")]
    Pole { func: &'static str, at: f64 },
    /// `terms` is the series length, truncation index or N reached.
    #[error("no convergence at size {terms} (last change {tail:e})")]
    NonConvergence { terms: usize, tail: f64 },
    #[error("no branch of {0} attains the requested tolerance")]
    BranchFailure(&'static str),
    #[error("representations of {what} disagree: {a:e} vs {b:e}")]
    Inconsistent { what: &'static str, a: f64, b: f64 },
    #[error("forward recursion needs r >= 2J (r = {r}, J = {j})")]
    Regime { r: f64, j: usize },
    #[error("recurrence residual {0:e} exceeds tolerance")]
    Instability(f64),
    #[error("singular linear system (condition estimate {0:e})")]
    Singular(f64),
    #[error("tolerance not met: value {value:e}, error estimate {err_est:e}")]
    Tolerance { value: f64, err_est: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    /// True for errors caused by bad input rather than numerical failure.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Parameter(_) | Error::Pole { .. })
    }
}
