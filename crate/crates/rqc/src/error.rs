use thiserror::Error;

/// Errors produced by circuit construction, simulation and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pattern set: {0}")]
    InvalidPatternSet(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("elided_cycles ({elided}) exceeds circuit cycles ({cycles})")]
    ElidedCyclesExceedDepth { elided: usize, cycles: usize },

    #[error("{n} qubits need 2^(n+1)*{float_bytes} = {required} bytes of state memory, cap is {cap} bytes")]
    MemoryCap {
        n: usize,
        float_bytes: usize,
        required: u128,
        cap: u128,
    },

    #[error("QCIS parse error at line {line}: {msg}")]
    QcisParse { line: usize, msg: String },

    #[error("gate has no QCIS encoding: {0}")]
    NoQcisEncoding(String),

    #[error("bitstring {bits:#x} out of range for {n} qubits")]
    BitstringOutOfRange { bits: u64, n: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("zero ideal probability at sample index {index}; log XEB undefined (use a probability floor to proceed)")]
    ZeroProbability { index: usize },

    #[error("missing error-budget entry for {0}")]
    MissingBudget(String),

    #[error("empty path set")]
    EmptyPathSet,

    #[error("prefix length {prefix_len} exceeds number of cross gates {gates}")]
    PrefixTooLong { prefix_len: usize, gates: usize },

    #[error("no feasible cut under imbalance constraint {max_imbalance}")]
    NoFeasibleCut { max_imbalance: usize },

    #[error("search space too large for exhaustive enumeration ({0} candidates)")]
    SearchSpaceTooLarge(u128),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
