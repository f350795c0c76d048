//! Digit-string primitives shared by every engine: weight, colex order,
//! rotations and the linear-time necklace test.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single letter of the alphabet `{0, 1, ..., t-1}`.
pub type Symbol = u32;

/// A fixed-length string over `{0, ..., t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet: Symbol,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet: Symbol) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= alphabet)
        {
            return Err(Error::SymbolOutOfRange {
                symbol,
                position,
                alphabet,
            });
        }
        Ok(Word { symbols, alphabet })
    }

    /// `0^len` over an alphabet of size `alphabet`.
    pub fn zeros(len: usize, alphabet: Symbol) -> Self {
        assert!(len > 0 && alphabet > 0);
        Word {
            symbols: vec![0; len],
            alphabet,
        }
    }

    /// Parses either compact digits (`"021"`) or a list separated by spaces,
    /// commas or dots (`"0 2 1"`, `"10,3,0"`). Compact digits are only read
    /// for alphabets of at most ten symbols.
    pub fn parse(text: &str, alphabet: Symbol) -> Result<Self> {
        let text = text.trim();
        let separated = alphabet > 10 || text.contains([' ', ',', '.']);
        let symbols = if separated {
            text.split([' ', ',', '.'])
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    tok.parse::<Symbol>()
                        .map_err(|_| Error::InvalidParams(format!("bad symbol {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidParams(format!("bad symbol {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(symbols, alphabet)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet(&self) -> Symbol {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> u32 {
        weight(&self.symbols)
    }

    pub fn colex_less(&self, other: &Word) -> Result<bool> {
        self.check_comparable(other)?;
        Ok(colex_cmp(&self.symbols, &other.symbols) == Ordering::Less)
    }

    pub fn necklace_info(&self) -> NecklaceInfo {
        necklace_info(&self.symbols)
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    fn check_comparable(&self, other: &Word) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    /// Compact digits for alphabets of at most ten symbols, space-separated
    /// otherwise, so that [`Word::parse`] reads the text back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 10 {
            f.write_str(&render(&self.symbols))
        } else {
            f.write_str(&render_delimited(&self.symbols, " "))
        }
    }
}

/// Digits run together when every symbol is a single digit, otherwise
/// space-separated.
pub fn render(symbols: &[Symbol]) -> String {
    if symbols.iter().all(|&s| s < 10) {
        symbols
            .iter()
            .map(|s| char::from_digit(*s, 10).unwrap())
            .collect()
    } else {
        render_delimited(symbols, " ")
    }
}

pub fn render_delimited(symbols: &[Symbol], sep: &str) -> String {
    symbols
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// The parameters `(t, n, w)` of the set of length-`n` strings over `t`
/// symbols with weight at most `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamSet {
    pub t: Symbol,
    pub n: usize,
    pub w: u32,
}

impl ParamSet {
    pub fn new(t: Symbol, n: usize, w: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParams(
                "alphabet size t must be at least 1".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidParams(
                "word length n must be at least 1".into(),
            ));
        }
        if u64::from(t - 1)
            .checked_mul(n as u64)
            .is_none_or(|m| m > u64::from(u32::MAX))
        {
            return Err(Error::InvalidParams(format!(
                "n(t-1) overflows for t = {t}, n = {n}"
            )));
        }
        Ok(ParamSet { t, n, w })
    }

    pub fn max_weight(&self) -> u32 {
        (self.t - 1) * self.n as u32
    }

    /// `min(w, n(t-1))`; larger bounds admit no additional strings.
    pub fn effective_w(&self) -> u32 {
        self.w.min(self.max_weight())
    }

    pub fn is_clamped(&self) -> bool {
        self.w > self.max_weight()
    }

    pub fn zero_word(&self) -> Word {
        Word::zeros(self.n, self.t)
    }

    pub fn contains(&self, symbols: &[Symbol]) -> bool {
        symbols.len() == self.n && symbols.iter().all(|&s| s < self.t) && weight(symbols) <= self.w
    }

    pub fn check_member(&self, symbols: &[Symbol]) -> Result<()> {
        if self.contains(symbols) {
            Ok(())
        } else {
            Err(Error::NotInSet {
                word: render(symbols),
                set: self.to_string(),
            })
        }
    }

    /// `|Σ_t(n, w)|`.
    pub fn size(&self) -> u128 {
        let counts = weight_counts(self.t, self.n, self.effective_w());
        counts.iter().sum()
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{}({},{})", self.t, self.n, self.w)
    }
}

/// `counts[s]` = number of length-`n` words over `t` symbols with weight `s`,
/// for `s` in `0..=max_w`.
pub fn weight_counts(t: Symbol, n: usize, max_w: u32) -> Vec<u128> {
    let max_w = max_w as usize;
    let mut counts = vec![0u128; max_w + 1];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; max_w + 1];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for x in 0..t as usize {
                if s + x > max_w {
                    break;
                }
                next[s + x] += c;
            }
        }
        counts = next;
    }
    counts
}

/// Necklace verdict and, for necklaces, the aperiodic prefix length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceInfo {
    pub is_necklace: bool,
    pub aperiodic_prefix_len: Option<usize>,
}

impl NecklaceInfo {
    pub fn is_aperiodic_necklace(&self, len: usize) -> bool {
        self.aperiodic_prefix_len == Some(len)
    }
}

pub fn weight(symbols: &[Symbol]) -> u32 {
    symbols.iter().sum()
}

/// Lexicographic comparison of the reversed strings.
pub fn colex_cmp(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

pub fn colex_less(a: &Word, b: &Word) -> Result<bool> {
    a.colex_less(b)
}

pub fn necklace_info(symbols: &[Symbol]) -> NecklaceInfo {
    let p = necklace_prefix_len(symbols);
    NecklaceInfo {
        is_necklace: p.is_some(),
        aperiodic_prefix_len: p,
    }
}

/// Single-pass prenecklace scan: `Some(p)` with `p` the aperiodic prefix
/// length when `symbols` is a necklace, `None` otherwise.
pub fn necklace_prefix_len(symbols: &[Symbol]) -> Option<usize> {
    let mut comparisons = 0;
    necklace_prefix_len_counted(symbols, &mut comparisons)
}

/// As [`necklace_prefix_len`], adding the number of symbol comparisons
/// performed to `comparisons`.
pub fn necklace_prefix_len_counted(symbols: &[Symbol], comparisons: &mut u64) -> Option<usize> {
    let n = symbols.len();
    let mut p = 1;
    for i in 1..n {
        *comparisons += 1;
        match symbols[i].cmp(&symbols[i - p]) {
            Ordering::Less => return None,
            Ordering::Greater => p = i + 1,
            Ordering::Equal => {}
        }
    }
    *comparisons += 1;
    if n.is_multiple_of(p) {
        Some(p)
    } else {
        None
    }
}

pub fn is_necklace(symbols: &[Symbol]) -> bool {
    necklace_prefix_len(symbols).is_some()
}

/// The necklace (lexicographically least rotation) of `symbols`.
pub fn necklace_of(symbols: &[Symbol]) -> Vec<Symbol> {
    let n = symbols.len();
    (0..n)
        .map(|r| rotate_left(symbols, r))
        .min()
        .unwrap_or_default()
}

pub fn rotate_left(symbols: &[Symbol], by: usize) -> Vec<Symbol> {
    let mut out = symbols.to_vec();
    if !out.is_empty() {
        out.rotate_left(by % symbols.len());
    }
    out
}

/// Steps `word` to its successor in colex order over `{0..alphabet-1}`,
/// returning false after the last word.
pub(crate) fn colex_increment(word: &mut [Symbol], alphabet: Symbol) -> bool {
    for s in word.iter_mut() {
        if *s + 1 < alphabet {
            *s += 1;
            return true;
        }
        *s = 0;
    }
    false
}

/// All necklaces in `Σ_t(n, w)`, sorted in colex order, by filtering every
/// one of the `t^n` strings.
pub fn enumerate_bounded_necklaces(p: &ParamSet) -> Vec<Word> {
    let w = p.effective_w();
    let mut out = Vec::new();
    let mut word = vec![0; p.n];
    loop {
        if weight(&word) <= w && is_necklace(&word) {
            out.push(Word {
                symbols: word.clone(),
                alphabet: p.t,
            });
        }
        if !colex_increment(&mut word, p.t) {
            break;
        }
    }
    out
}
