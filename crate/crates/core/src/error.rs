use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("v = {0} is not admissible (need v = 1 or 3 mod 6)")]
    NotAdmissible(usize),
    #[error("pair {{{0}, {1}}} is not covered by any triple")]
    PairMissing(usize, usize),
    #[error("pair {{{0}, {1}}} is covered by more than one triple")]
    PairDuplicated(usize, usize),
    #[error("bad triple {triple:?}: {reason}")]
    BadTriple { triple: Vec<usize>, reason: String },
    #[error("points must be distinct (got {0} twice)")]
    SamePoint(usize),
    #[error("point {point} out of range for v = {v}")]
    PointOutOfRange { point: usize, v: usize },
    #[error("the four triples of {0:?} are not all present")]
    NotAPasch([usize; 6]),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("table is not a Steiner loop: {0}")]
    NotSteiner(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("automorphism search for v = {0} exceeds the search budget (v <= {1})")]
    SearchBudgetExceeded(usize, usize),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("permutation is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("run interrupted after checkpoint was written")]
    Interrupted,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
