use thiserror::Error;

use crate::specfun::SpecFunError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("dispersion degenerate: l_c^2 - h^2/3 vanishes (h = {h} cm, l_c = {l_c} cm)")]
    DegenerateDispersion { h: f64, l_c: f64 },
    #[error("waves do not propagate for delta = {0} in [-1, 0)")]
    NonPropagating(f64),
    #[error("cubic dispersion gives nu^2 = {0} <= 0")]
    Evanescent(f64),
    #[error("outer wavenumber is not real for delta = {0}")]
    EvanescentOuter(f64),
    #[error("4x4 matching system is singular for mode n = {0}")]
    SingularSystem(i64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable category.
    pub fn category(&self) -> &'static str {
        match self {
            Error::SpecFun(e) => match e {
                SpecFunError::Pole(_) => "E_SPECFUN_POLE",
                SpecFunError::Domain(_) => "E_SPECFUN_DOMAIN",
                SpecFunError::Envelope(_) => "E_SPECFUN_ENVELOPE",
                SpecFunError::Convergence(_) => "E_SPECFUN_CONVERGENCE",
                SpecFunError::ZeroDenominator => "E_SPECFUN_ZERO_DENOMINATOR",
            },
            Error::DegenerateDispersion { .. } => "E_DISPERSION_DEGENERATE",
            Error::NonPropagating(_) => "E_NON_PROPAGATING",
            Error::Evanescent(_) => "E_EVANESCENT",
            Error::EvanescentOuter(_) => "E_EVANESCENT_OUTER",
            Error::SingularSystem(_) => "E_SINGULAR_SYSTEM",
            Error::InvalidInput(_) => "E_INVALID_INPUT",
        }
    }
}
