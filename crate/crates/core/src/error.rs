use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("non-terminal {from} references {to}, which is not defined before it")]
    CyclicReference { from: usize, to: usize },

    #[error("non-terminal {from} references missing non-terminal {to}")]
    DanglingReference { from: usize, to: usize },

    #[error("root non-terminal {0} does not exist")]
    MissingRoot(usize),

    #[error("truncation [{lo}:{hi}] in non-terminal {nonterminal} is out of range for a word of length {len}")]
    TruncationOutOfRange {
        nonterminal: usize,
        lo: BigInt,
        hi: BigInt,
        len: BigUint,
    },

    #[error("inverted reference in non-terminal {0} requires a group alphabet")]
    InversionWithoutInvolution(usize),

    #[error("operation requires a group alphabet")]
    NotGroupAlphabet,

    #[error("operation requires a truncation-free program (run the truncation-eliminating conversion first)")]
    HasTruncation,

    #[error("keep set is not closed under the involution (letter `{0}`)")]
    KeepSetNotInvolutionClosed(String),

    #[error("index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: BigInt, len: BigUint },

    #[error("word of length {0} exceeds the decompression cap")]
    CapExceeded(BigUint),

    #[error("period {p} out of range for a word of length {len}")]
    POutOfRange { p: usize, len: usize },

    #[error("split target is not of maximal length among mentioned non-terminals")]
    PNotMaximal,

    #[error("pattern of length {len} exceeds the matcher cap {cap}")]
    MatcherCapExceeded { len: BigUint, cap: u64 },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("letter `{0}` is outside the alphabet")]
    LetterOutsideAlphabet(String),

    #[error("strand index {index} out of range for {strands} strands")]
    StrandIndexOutOfRange { index: usize, strands: usize },

    #[error("unknown twist generator `{0}`")]
    UnknownTwistGenerator(String),

    #[error("no generator action table supplied")]
    GeneratorTableMissing,

    #[error("invalid Nielsen token `{0}`")]
    InvalidNielsenToken(String),
}
