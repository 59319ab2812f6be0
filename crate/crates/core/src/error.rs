use thiserror::Error;

use crate::eigen::TruncationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed or non-finite input.
    #[error("invalid input: {0}")]
    Input(String),

    /// Input outside the domain a solver accepts.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("requested {requested} eigenvalues/rows but only {available} are available")]
    Size { requested: usize, available: usize },

    #[error("no convergence: {what} (last size {}, shift {:e})", report.final_size, report.eigenvalue_shift_at_last_doubling)]
    Convergence { report: TruncationReport, what: String },

    /// A root or bracket search gave up.
    #[error("search failed: {0}")]
    Search(String),

    /// The radial operator with a negative angular eigenvalue is not
    /// essentially self-adjoint; a boundary condition at the origin would
    /// have to be chosen.
    #[error(
        "angular eigenvalue lambda = {lambda} < 0: the radial Hamiltonian needs a self-adjoint \
         extension (an extra boundary condition at rho = 0), which is not supported"
    )]
    SelfAdjointExtensionRequired { lambda: f64 },

    /// Off-centre dipole (rho0 != 0): the problem no longer separates in
    /// polar coordinates.
    #[error("non-separable configuration: dipole displaced from the origin by {0:?}")]
    NonSeparable([f64; 2]),
}

impl Error {
    /// Input, domain, size and search failures are caller errors; the
    /// remaining kinds describe unsupported regimes or solver failures.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Domain(_) | Error::Size { .. })
    }
}
