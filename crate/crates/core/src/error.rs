use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method did not reach its convergence criterion.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e} after {subdivisions} subdivisions")]
    Quadrature {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    /// A matrix element of the eigenbasis could not be computed.
    #[error("basis element ({row}, {col}): {source}")]
    BasisElement {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    /// The eigenbasis is too small to represent the projected state.
    #[error("truncation loss {loss:e} exceeds {limit:e} with n_max = {n_max}; increase n_max")]
    InsufficientBasis { loss: f64, limit: f64, n_max: usize },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Numerical(_)
                | Error::Quadrature { .. }
                | Error::BasisElement { .. }
                | Error::InsufficientBasis { .. }
        )
    }
}
