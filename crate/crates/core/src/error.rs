use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("vectors do not span a subspace of the given span")]
    NotASubspace,
    #[error("no primitive {m}-th root of unity modulo {p}")]
    NoRootOfUnity { p: u64, m: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("relation {index} is not in the square of the arrow ideal: {reason}")]
    RelationNotInRadSquared { index: usize, reason: String },
    #[error("ideal is not admissible within length cap {cap}")]
    NotAdmissible { cap: usize },
    #[error("algebra is not basic: {0}")]
    NotBasic(String),
    #[error("field too small for the trace-form radical (p = {p}, dim = {dim})")]
    FieldTooSmall { p: u64, dim: usize },
    #[error("structure constants are not associative at basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),

    #[error("no non-degenerate Frobenius form found")]
    NoFrobeniusForm,
    #[error("Nakayama automorphism check failed: {0}")]
    AutomorphismCheckFailed(String),
    #[error("map does not send vertex idempotents to vertex idempotents")]
    NotVertexPermuting,

    #[error("cannot certify generation of the thick closure")]
    CannotCertifyGeneration,
    #[error("endomorphism ring of summand {summand} is not split local (dim End/rad = {residue_dim}); possibly non-split or decomposable")]
    NonSplitLocalRing { summand: usize, residue_dim: usize },
    #[error("complex leaves the degree window (width {width} > cap {cap})")]
    WindowOverflow { width: usize, cap: usize },
    #[error("mutation graph is partial (cutoff {cutoff})")]
    PartialResult { cutoff: usize },

    #[error("socle of P({0}) is not spanned by a single path")]
    SocleNotPathSpanned(String),
    #[error("socle of P({0}) is not contained in rad^2")]
    SocleNotInRadSquared(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
