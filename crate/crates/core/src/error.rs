use thiserror::Error;

/// Errors produced by domain-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {level} out of range (chain has {max} levels)")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("label {label} out of range for level {level} (n = {n})")]
    LabelOutOfRange { label: u64, level: usize, n: u64 },

    #[error("cannot refine from level {from} down to level {to}")]
    RefineDownward { from: usize, to: usize },

    #[error("operands live over different odometer types")]
    SpaceMismatch,

    #[error("first return undefined on the empty set")]
    EmptyReturn,

    #[error("cocycle does not induce a bijection on labels: not a homeomorphism")]
    NotHomeomorphism,

    #[error("set is not {n}-disjoint")]
    NotNDisjoint { n: usize },

    #[error("element is not representable at level {level}")]
    NotRepresentable { level: usize },

    #[error("matrix levels differ: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("evaluation point must lie on the unit circle")]
    NotOnCircle,

    #[error("exact evaluation supported only at z = 1, -1, i, -i")]
    NotExactPoint,

    #[error("element is not constant on the required cylinder")]
    NotConstantOnCylinder,

    #[error("argument has nonzero trace character: tau(d) != 0")]
    NonzeroTau,

    #[error("invalid permutation: {0:?} is not a bijection of 0..n")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid coset system: {0}")]
    InvalidCosets(String),

    #[error("invalid odometer type: {0}")]
    InvalidOdometerType(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
