use thiserror::Error;

/// Errors raised by the matrix, graph and completion routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have dimension at least 1")]
    Empty,

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error(
        "matrix is not of maximal rank: rank {rank} but blocks have ranks {rank_a} + {rank_c}"
    )]
    NotMaximalRank {
        rank: usize,
        rank_a: usize,
        rank_c: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid elimination order: {0}")]
    InvalidOrder(String),

    #[error("pattern graph is not chordal; chordless cycle {witness:?}")]
    NotChordal { witness: Vec<usize> },

    #[error(
        "clique {clique:?} is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})"
    )]
    CliqueNotPsd {
        clique: Vec<usize>,
        min_eigenvalue: f64,
    },

    #[error("cliques do not admit a clique tree: {0}")]
    NotCliqueTree(String),

    #[error("completed matrix failed verification: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
