//! Foot-sorting: deciding whether a sequence of colored socks can be pushed
//! through a single stack so that equal colors come out contiguous.
//!
//! The crate provides:
//!
//! - [`ordering`]: domain types, reduction, canonical forms, parsing.
//! - [`pattern`]: pattern containment between orderings.
//! - [`oracle`]: two independent brute-force deciders and the fixed-order
//!   criterion checker; ground truth for everything else.
//! - [`decider`]: the O(N log N) decision procedure with validated
//!   total-order certificates and operation-count instrumentation.
//! - [`classifier`]: the catalog of minimal non-sortable 2-bounded
//!   orderings (14 sporadic + 4 families), pattern matching against it, and
//!   an end-to-end verification by exhaustive enumeration.
//! - [`gen`]: seeded instance generators for tests and benchmarks.

pub mod classifier;
pub mod decider;
pub mod error;
pub mod gen;
mod index;
pub mod oracle;
pub mod ordering;
pub mod pattern;

pub use decider::{decide, decide_with_stats, validate_certificate, DecideOutcome, DecideStats};
pub use error::Error;
pub use ordering::{
    canonicalize, reduce_adjacent, CanonicalOrdering, Color, SimpleOrder, SockOrdering,
    TotalOrderCertificate, Verdict,
};
pub use pattern::{contains_pattern, Embedding};
