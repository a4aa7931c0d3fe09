use thiserror::Error;

/// Errors produced by the permutation model, the circuit model and the
/// synthesis backends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width {width} is outside the supported range {min}..={max}")]
    WidthOutOfRange { width: u32, min: u32, max: u32 },

    #[error("map of length {len} is not a bijection on {size} states")]
    NotABijection { len: usize, size: usize },

    #[error("permutation is not conservative: {input:#b} (weight {from}) maps to weight {to}")]
    NotConservative { input: u32, from: u32, to: u32 },

    #[error("permutation is odd; this backend realizes even permutations only")]
    OddPermutation,

    #[error("circuit has {circuit} data lines but the target permutation has width {target}")]
    WidthMismatch { circuit: usize, target: u32 },

    #[error("invalid gate {gate}: {reason}")]
    InvalidGate { gate: String, reason: String },

    #[error("{macro_name} cannot be expanded into the {alphabet} alphabet")]
    UnexpandableMacro {
        macro_name: String,
        alphabet: &'static str,
    },

    #[error("{macro_name} needs {needed} but the circuit has none available")]
    MissingAuxiliary {
        macro_name: String,
        needed: &'static str,
    },

    #[error("C^{k}NOT needs {needed} spare lines, only {available} given")]
    InsufficientLines {
        k: usize,
        needed: usize,
        available: usize,
    },

    #[error("token sequence of length {0} cannot be split into adjacent pairs")]
    OddTokenCount(usize),

    #[error("pairing requires primed tokens, found {0}")]
    UnprimedToken(String),

    #[error("strings {left:#b} and {right:#b} differ in width or Hamming weight")]
    WeightMismatch { left: u32, right: u32 },

    #[error("transposition endpoints are the same string {0:#b}")]
    EqualStrings(u32),

    #[error("C^{0}SWAP exceeds the recursion limit of 8 controls")]
    DepthLimit(usize),

    #[error("{0}")]
    Range(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
