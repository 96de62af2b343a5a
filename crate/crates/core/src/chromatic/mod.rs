//! Exact chromatic polynomials and coloring counts.

mod engine;
mod oracle;
mod polynomial;

pub use engine::{clique_separator_split, ChromaticEngine, CliqueSplit, CountMethod, CountReport};
pub use oracle::{brute_force_count, ORACLE_BIT_BUDGET};
pub use polynomial::Polynomial;

use num_bigint::BigInt;
use thiserror::Error;

use crate::canon::CanonicalForm;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("oracle refuses {colors}^{order} assignments")]
    OracleTooLarge { order: usize, colors: u32 },
    #[error("oracle count {oracle} disagrees with polynomial value {polynomial} on {form}")]
    OracleMismatch {
        form: CanonicalForm,
        oracle: BigInt,
        polynomial: BigInt,
    },
    #[error("cache line {line}: {message}")]
    Cache { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
