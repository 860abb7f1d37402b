use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in the golden field")]
    DivisionByZero,

    #[error("group closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("no presentation relations are defined for group label {label}")]
    UnsupportedPresentation { label: String },

    #[error("angle parameter has arity {got}, subgroup {subgroup} expects {expected}")]
    ArityMismatch {
        subgroup: String,
        expected: usize,
        got: usize,
    },

    #[error("boundary refinement failed to reach tolerance {tolerance:e} from seed {seed:?} (best residual {best:e})")]
    SolverFailure {
        seed: Vec<f64>,
        tolerance: f64,
        best: f64,
    },

    #[error("tolerance {0} outside the accepted range (0, 1e-6]")]
    BadTolerance(f64),

    #[error("{angles:?} is not a boundary solution of the {subgroup} family")]
    NotABoundarySolution { subgroup: String, angles: Vec<f64> },

    #[error("radiusMax {got} outside the accepted range (0, {max}]")]
    RadiusGuard { got: f64, max: f64 },

    #[error("projection window is degenerate (volume {volume:e})")]
    DegenerateHull { volume: f64 },

    #[error("window construction is only implemented for the simple cubic lattice")]
    UnsupportedLattice,

    #[error("matrix is not a valid signed permutation")]
    NotSignedPermutation,

    #[error("constant table corrupted: {0}")]
    ConstantTable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
