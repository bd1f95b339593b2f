use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse sock ordering: {0}")]
    Parse(String),
    #[error("alphabet of {size} colors exceeds the order-enumeration limit of {limit}")]
    AlphabetTooLarge { size: usize, limit: usize },
    #[error("instance of length {len} exceeds the stack-simulation limit of {limit}")]
    InstanceTooLarge { len: usize, limit: usize },
    #[error("total order does not cover exactly the alphabet of the ordering")]
    AlphabetMismatch,
    #[error("input is not a permutation of 1..=n")]
    NotPermutation,
    #[error("input is not 2-bounded")]
    NotTwoBounded,
    #[error("family {family} has no instance with parameter n = {n}")]
    FamilyParameter { family: &'static str, n: usize },
    #[error("length {len} exceeds the enumeration bound of {bound}")]
    EnumerationBound { len: usize, bound: usize },
    #[error("extracted certificate failed validation")]
    CertificateInvalid,
}
