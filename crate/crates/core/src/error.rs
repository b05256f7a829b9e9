use thiserror::Error;

use crate::coloring::Topology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid color letter {letter:?} at position {position} (k = {k})")]
    InvalidColorLetter { letter: char, position: usize, k: usize },

    #[error("invalid number of colors: {0}")]
    InvalidArity(usize),

    #[error("coloring must have at least one position")]
    EmptyColoring,

    #[error("color index {index} out of range for k = {k}")]
    ColorOutOfRange { index: usize, k: usize },

    #[error("common difference must be at least 1")]
    InvalidDifference,

    #[error("progression length must be at least 3, got {0}")]
    InvalidLength(usize),

    #[error("progression leaves the ground set [1, {n}]")]
    OutOfRange { n: usize },

    #[error("progression does not have distinct members in Z_{n}")]
    NotDistinct { n: usize },

    #[error("multiplier {a} is not invertible modulo {n}")]
    NotInvertible { a: i64, n: usize },

    #[error("operation not supported on {0} topology")]
    UnsupportedTopology(Topology),

    #[error("n = {n} is too small (minimum {min})")]
    TooSmall { n: usize, min: usize },

    #[error("variant {variant} requires n = {required} (mod 8), got n = {n}")]
    VariantMismatch { variant: &'static str, required: usize, n: usize },

    #[error("no rainbow-free construction for k = {0}")]
    UnsupportedArity(usize),

    #[error("repeat count must be at least 1")]
    InvalidRepeat,

    #[error("k = {k} does not divide n = {n}")]
    NotDivisible { n: usize, k: usize },

    #[error("color permutation must be a bijection on 0..{0}")]
    InvalidPermutation(usize),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("invalid suite parameters: {0}")]
    InvalidParams(String),

    #[error("malformed coloring JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
