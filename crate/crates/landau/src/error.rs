use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A query reached past the end of the sieved range.
    #[error("sieve limit {limit} too small: the query needs primes up to at least {needed}")]
    InsufficientSieve { needed: u64, limit: u64 },

    /// Building a table would exceed the configured memory budget.
    #[error("memory budget exceeded: need about {required_bytes} bytes, budget is {budget_bytes}")]
    MemoryBudget {
        required_bytes: u64,
        budget_bytes: u64,
    },

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A step-function table was queried below its first champion or past
    /// the frontier where its bootstrap no longer pins the value.
    #[error("champion table {kind} has no value at {at}: covered range is [{lo}, {hi})")]
    OutsideTable {
        kind: &'static str,
        at: f64,
        lo: u64,
        hi: u64,
    },

    /// The interval arithmetic could not separate two quantities even at the
    /// maximum working precision.
    #[error("comparison undecidable at {bits} fractional bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
