use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by counting, set parsing and report emission.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid set descriptor `{0}`: expected powers:<q>, list:<a1>,<a2>,... or file:<path>")]
    BadDescriptor(String),

    #[error("powers base must be at least 2, got {0}")]
    BadPowersBase(u64),

    #[error("part set must be strictly increasing and positive: offending entry `{entry}` at line {line}")]
    BadPart { entry: String, line: usize },

    #[error("part set is empty")]
    EmptySet,

    #[error("cannot read part set file {path}: {source}")]
    SetFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("m and n must both be at least 1 (got m={m}, n={n})")]
    BadQuery { m: u64, n: u64 },

    #[error("s_max must be at least 2, got {0}")]
    BadSMax(u64),

    #[error("n_max must be at least 1")]
    BadIdentityRange,

    #[error("m={m} exceeds the naive enumeration bound {bound}")]
    NaiveBound { m: u64, bound: u64 },

    #[error("p must be prime, got {0}")]
    NotPrime(u64),

    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),

    #[error("target and budget must both be at least 1 (got target={target}, budget={budget})")]
    BadSystemQuery { target: u64, budget: u64 },

    #[error("target={target} exceeds the naive enumeration bound {bound} (or budget={budget} > 24)")]
    SystemNaiveBound { target: u64, budget: u64, bound: u64 },

    #[error("sweep grid is empty: {0}")]
    EmptyGrid(String),

    #[error("jobs must be at least 1")]
    BadJobs,

    #[error(
        "no Fibonacci bound applies to {set}: neither growth condition holds on the checked prefix (s <= {s_max})"
    )]
    NoBound { set: String, s_max: u64 },

    #[error("cannot write report to {path}: {source}")]
    ReportIo {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
