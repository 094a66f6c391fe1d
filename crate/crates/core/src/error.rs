use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("matrix is not Hermitian (relative asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("operator is not positive semidefinite (eigenvalue {min:e}, largest {max:e})")]
    NotPsd { min: f64, max: f64 },

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("overlapping variable sets")]
    Overlap,

    #[error("invalid probability table: {0}")]
    InvalidTable(String),

    #[error("symbol {symbol} of variable {var} has zero probability")]
    ZeroProbability { var: char, symbol: usize },

    #[error("effects do not form a POVM: {0}")]
    InvalidPovm(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// `ρ_AB` carries weight outside the support of `Z_AB`, so
    /// `Tr(ρ_AB log₂ Z_AB)` diverges.
    #[error("ρ_AB has weight {weight:e} outside the support of Z_AB")]
    SupportLeak { weight: f64 },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
