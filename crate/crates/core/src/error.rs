use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },

    #[error("singular matrix{} (condition number {condition:e})", coordinate.map(|i| format!(" at coordinate {}", i + 1)).unwrap_or_default())]
    Singular { coordinate: Option<usize>, condition: f64 },

    #[error("word budget exceeded: {count} words requested, budget {budget}")]
    BudgetExceeded { count: usize, budget: usize },

    #[error("alphabet mismatch: expected d = {expected}, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: Vec<usize>, reason: String },

    #[error("duplicate word {0:?}")]
    DuplicateWord(Vec<usize>),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("localizing matrix for letter {k} is not PSD (min eigenvalue {min_eig:e})")]
    NotPsd { k: usize, min_eig: f64 },

    #[error("point outside evaluation domain: {0}")]
    OutsideDomain(String),

    #[error("finite-difference step {step:e} underflows at this point")]
    StepUnderflow { step: f64 },

    #[error("interpolation target is inconsistent with the kernel span (residual {residual:e})")]
    Infeasible { residual: f64 },

    #[error("invalid representation: {0}")]
    InvalidSpec(String),

    #[error("invalid Herglotz model: {0}")]
    InvalidModel(String),

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
