use thiserror::Error;

use crate::words::Symbol;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("symbol {symbol} at position {position} is not below alphabet size {alphabet}")]
    SymbolOutOfRange {
        symbol: Symbol,
        position: usize,
        alphabet: Symbol,
    },

    #[error("empty word")]
    EmptyWord,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Symbol, right: Symbol },

    #[error("{word} is not a member of {set}")]
    NotInSet { word: String, set: String },

    #[error("{0} is the root and has no parent")]
    RootHasNoParent(String),

    #[error("{0} is not a necklace")]
    NotANecklace(String),

    #[error("missing-symbol register requires w < t (got w = {w}, t = {t})")]
    MsrWeightTooLarge { w: u32, t: Symbol },

    #[error("{what} has {size} members, over the cap of {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("position {position} out of range for cycle of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
}
