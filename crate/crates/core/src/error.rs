use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse cyclotomic number `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown group name `{0}`; expected one of A<n>, B<n>, D<n>, G2, F4, H3, I2(<m>), G(<de>,<e>,<n>), ST4")]
    UnknownName(String),
    #[error("unsupported parameters for {name}: {reason}")]
    Unsupported { name: String, reason: String },
    #[error("group too large: closure exceeded {limit} elements")]
    TooLarge { limit: usize },
    #[error("catalog inconsistency for {name}: {detail}")]
    CatalogInconsistency { name: String, detail: String },
    #[error("catalog generator order unsuitable for {name}: {detail}")]
    UnsuitableGeneratorOrder { name: String, detail: String },
    #[error("not a reflection group: {0}")]
    NotAReflectionGroup(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("modular character table failed for primes {tried:?}")]
    PrimesExhausted { tried: Vec<u64> },
    #[error("conjugation convention violated for character {index}: {detail}")]
    ConventionViolated { index: usize, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("dp workspace of {cells} cells exceeds the configured bound {limit}")]
    MemoryGuard { cells: u128, limit: u128 },
    #[error("spectral inconsistency at l = {l}: {detail}")]
    SpectralInconsistency { l: usize, detail: String },
    #[error("{method} count at l = {l}: {value} is not divisible by |W| = {order}")]
    Remainder {
        method: String,
        l: usize,
        value: String,
        order: u64,
    },
}

/// Any failure raised while building or analysing a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Count(#[from] CountError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
