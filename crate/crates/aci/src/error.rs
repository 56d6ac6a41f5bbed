use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not weight-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("no balance found: {0}")]
    NoBalance(String),
    #[error("defective resonance at k = {k}: eigenspace dimension {geometric} < multiplicity {algebraic}")]
    DefectiveResonance { k: i64, geometric: usize, algebraic: usize },
    #[error("not a coherent family: compatibility fails at resonance k = {k} (residual {residual:e})")]
    Incoherent { k: i64, residual: f64 },
    #[error("truncation underflow: {0}")]
    Truncation(String),
    #[error("ambiguous fit: null space dimension {0}")]
    AmbiguousFit(usize),
    #[error("not enough samples: {have} < {need}")]
    TooFewSamples { have: usize, need: usize },
    #[error("singular curve: roots {0} and {1} closer than tolerance")]
    SingularCurve(String, String),
    #[error("cycle routing failed: {0}")]
    Routing(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("involution not defined over this lattice: {0}")]
    Involution(String),
    #[error("normal form unreachable: {0}")]
    NormalForm(String),
    #[error("split refused: {0}")]
    Split(String),
    #[error("canonical form failed: {0}")]
    Canonical(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("unknown system '{0}'")]
    UnknownSystem(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("series diverges at t0 = {0}")]
    Divergent(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
