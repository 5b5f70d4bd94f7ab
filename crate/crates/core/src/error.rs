//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error("unsupported unit rank: {0}")]
    UnsupportedRank(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("modulus must be a squarefree product of distinct primes; {0}")]
    NonSquarefreeModulus(String),
    #[error("invalid relation witness at place {place}: {reason}")]
    InvalidWitness { place: String, reason: String },
    #[error("cycle support meets the modulus at {0}")]
    SupportMeetsModulus(String),
    #[error("simplicial cycle rejected: {0}")]
    InvalidOneCycle(String),
    #[error("scheme is empty: {0}")]
    EmptyScheme(String),
    #[error("sequence is not composable at position {0}")]
    NotComposable(usize),
    #[error("homomorphism is not well defined: generator relation {relator} maps outside the target relation lattice")]
    IllDefinedHom { relator: usize },
    #[error("principality search inconclusive: {0}")]
    Inconclusive(String),
    #[error("malformed input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
