use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("both sides of the bipartition must be nonempty (got |X|={x_size}, |Y|={y_size})")]
    EmptySide { x_size: usize, y_size: usize },
    #[error("bipartition ({x_size}, {y_size}) is too large to materialize")]
    TooLarge { x_size: usize, y_size: usize },
    #[error("vertex pair (x={x}, y={y}) outside bipartition ({x_size}, {y_size})")]
    VertexOutOfRange {
        x: usize,
        y: usize,
        x_size: usize,
        y_size: usize,
    },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("row {row} has {found} columns, expected {expected}")]
    RowWidth {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid vertex permutation")]
    InvalidPermutation,
    #[error("exponent t={0} is below 2")]
    InvalidExponent(u32),
    #[error("degree power sum overflows 128 bits at t={t}")]
    Overflow { t: u32 },
    #[error("canonical form needs n <= {max}, got n={n}")]
    CanonicalSizeBound { n: usize, max: usize },
    #[error("unknown graph format {0:?} (expected edge-list, biadjacency or dot)")]
    UnknownFormat(String),
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("header declares m={declared} but {found} edges were read")]
    EdgeCountMismatch { declared: usize, found: usize },
}

impl GraphError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        GraphError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("n must be at least 2, got n={0}")]
    TooFewVertices(u64),
    #[error("n={n} exceeds the supported maximum {max}")]
    TooManyVertices { n: u64, max: u64 },
    #[error("m exceeds ⌊n/2⌋⌈n/2⌉ (n={n}, m={m}, limit={limit})")]
    TooManyEdges { n: u64, m: u64, limit: u64 },
    #[error("k must satisfy 1 <= k <= n-1 (n={n}, k={k})")]
    SideOutOfRange { n: u64, k: u64 },
    #[error("B^l(n={n}, m={m}, k={k}) is infeasible: k > n - q - sgn(r) (q={q}, r={r})")]
    Infeasible {
        n: u64,
        m: u64,
        k: u64,
        q: u64,
        r: u64,
    },
    #[error("requires m >= n, got n={n}, m={m}")]
    NotCaseRegime { n: u64, m: u64 },
    #[error("floor gap {gap} >= 2 at m={m}, k={k}")]
    FloorGapViolation { m: u64, k: u64, gap: u64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive enumeration needs n <= {max}, got n={n}")]
    SizeBound { n: u64, max: u64 },
    #[error("sweep bound n_max must lie in 2..={max}, got {n_max}")]
    SweepBound { n_max: u64, max: u64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
