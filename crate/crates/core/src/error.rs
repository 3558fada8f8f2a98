use thiserror::Error;

/// Errors raised by the simulation and analysis kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("photon number mismatch: input carries {input} photons, output {output}")]
    PhotonNumberMismatch { input: usize, output: usize },

    /// A size limit was hit; `size` is the offending size and `limit` the cap.
    #[error("resource limit exceeded for {what}: {size} > {limit}")]
    Resource { what: String, size: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("incomplete distribution: total mass {0}")]
    IncompleteDistribution(f64),

    #[error("budget infeasible: fixed terms use {used:.6e} of {budget:.6e}; dominant term is {dominant}")]
    Infeasible { budget: f64, used: f64, dominant: String },

    #[error("suppression law invalid for this instance: {violations} flagged outputs carry probability")]
    LawInvalid { violations: usize },
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, size: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::Resource { what: what.into(), size: size.into(), limit: limit.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
