use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("misplaced arrow: {0}")]
    ArrowMisplaced(String),
    #[error("graphs with arrows are only accepted by the semigroup commands")]
    ArrowsNotAllowed,
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("graph has no nodes")]
    NoNodes,
    #[error("invalid Seifert pair ({0}, {1})")]
    InvalidSeifertPair(i64, i64),
    #[error("vector is not in the dual lattice")]
    NotInDualLattice,
    #[error("vector is not in the affine lattice of the lift")]
    NotInAffineLattice,
    #[error("orbifold identity violated: {0}")]
    OrbifoldIdentityViolation(String),
    #[error("pinned generators rejected: {0}")]
    PinnedGeneratorsInvalid(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("x is not in -K + int(S'): {0}")]
    OracleDomain(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
