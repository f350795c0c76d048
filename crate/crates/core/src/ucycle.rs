use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{render, ParamSet, Symbol};

/// Which construction produced a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Colex necklace concatenation (RCL traversal).
    Concat,
    /// First-non-zero (Grandmama) successor rule.
    Grandmama,
    /// First-non-zero missing-symbol-register successor rule.
    Msr,
    /// Reverse-colex concatenation of fixed-weight necklaces.
    ReverseColex,
    /// Chain-aware generic successor evaluated over a materialized tree.
    Generic,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Engine::Concat => "concat",
            Engine::Grandmama => "grandmama",
            Engine::Msr => "msr",
            Engine::ReverseColex => "reverse-colex",
            Engine::Generic => "generic",
        };
        f.write_str(name)
    }
}

/// A generated cyclic sequence together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UCycle {
    pub symbols: Vec<Symbol>,
    pub params: ParamSet,
    pub engine: Engine,
}

impl UCycle {
    pub fn new(symbols: Vec<Symbol>, params: ParamSet, engine: Engine) -> Self {
        UCycle {
            symbols,
            params,
            engine,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Length of the windows this cycle is universal for.
    pub fn window_len(&self) -> usize {
        self.params.n
    }

    /// The cyclic window of length [`window_len`](Self::window_len) starting
    /// at `position`.
    pub fn window(&self, position: usize) -> Result<Vec<Symbol>> {
        cyclic_window(&self.symbols, position, self.window_len())
    }

    /// Iterates over every cyclic window, starting at position 0.
    pub fn windows(&self) -> impl Iterator<Item = Vec<Symbol>> + '_ {
        let n = self.window_len();
        (0..self.len()).map(move |i| (0..n).map(|k| self.symbols[(i + k) % self.len()]).collect())
    }

    /// Applies `x -> x + shift` to every symbol.
    pub fn shifted(mut self, shift: Symbol) -> Self {
        for s in &mut self.symbols {
            *s += shift;
        }
        self
    }
}

impl fmt::Display for UCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.symbols))
    }
}

pub fn cyclic_window(symbols: &[Symbol], position: usize, len: usize) -> Result<Vec<Symbol>> {
    if position >= symbols.len() {
        return Err(Error::PositionOutOfRange {
            position,
            len: symbols.len(),
        });
    }
    Ok((0..len)
        .map(|k| symbols[(position + k) % symbols.len()])
        .collect())
}
