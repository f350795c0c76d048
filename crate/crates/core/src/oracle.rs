//! Brute-force verification of universal cycles.
//!
//! Everything here is deliberately naive and shares no code with the
//! engines or with [`crate::combmaps`]: universes are enumerated by plain
//! recursion and windows are decoded by hand-rolled inverse maps.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Symbol;

pub const DEFAULT_CAP: u128 = 1_000_000;
pub const DEFAULT_LIST_LIMIT: usize = 20;

/// The set a cycle is supposed to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Universe {
    /// Length-`n` words over `{0..t-1}` of weight at most `w`.
    BoundedWords { t: Symbol, n: usize, w: u32 },
    /// Length-`(n+1)` words over `{0..t-1}` of weight exactly `w`, each
    /// window of length `n` being completed by its missing symbol.
    FixedWeightWords { t: Symbol, n: usize, w: u32 },
    /// k-subsets of `[n]`; windows are difference strings with symbols `>= 1`.
    Subsets { n: u32, k: u32 },
    /// k-multisets of `[n]`; windows are shorthand frequency strings.
    MultisetsFreq { n: u32, k: u32 },
    /// k-multisets of `[n]`; windows are difference strings over `{0..n-1}`.
    MultisetsDiff { n: u32, k: u32 },
}

impl Universe {
    /// Length of the window that encodes one member.
    pub fn window_len(&self) -> usize {
        match *self {
            Universe::BoundedWords { n, .. } | Universe::FixedWeightWords { n, .. } => n,
            Universe::Subsets { k, .. } | Universe::MultisetsDiff { k, .. } => k as usize,
            Universe::MultisetsFreq { n, .. } => n.saturating_sub(1) as usize,
        }
    }

    fn is_objects(&self) -> bool {
        !matches!(
            self,
            Universe::BoundedWords { .. } | Universe::FixedWeightWords { .. }
        )
    }

    /// Closed-form cardinality.
    pub fn size(&self) -> u128 {
        match *self {
            Universe::BoundedWords { t, n, w } => (0..=w).map(|v| words_of_weight(t, n, v)).sum(),
            Universe::FixedWeightWords { t, n, w } => words_of_weight(t, n + 1, w),
            Universe::Subsets { n, k } => binomial(u128::from(n), u128::from(k)),
            Universe::MultisetsFreq { n, k } | Universe::MultisetsDiff { n, k } => {
                if n == 0 {
                    0
                } else {
                    binomial(u128::from(n + k - 1), u128::from(k))
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = match *self {
            Universe::BoundedWords { t, n, .. } | Universe::FixedWeightWords { t, n, .. } => {
                t == 0 || n == 0
            }
            Universe::Subsets { n, k } => k == 0 || k > n,
            Universe::MultisetsFreq { n, k } => n < 2 || k == 0,
            Universe::MultisetsDiff { n, k } => n == 0 || k == 0,
        };
        if bad {
            return Err(Error::InvalidParams(format!("degenerate universe {self}")));
        }
        Ok(())
    }

    /// Maps a window to the member it encodes, or `None` if it encodes
    /// nothing in this universe.
    fn decode(&self, window: &[Symbol]) -> Option<Vec<u32>> {
        let sum: u64 = window.iter().map(|&s| u64::from(s)).sum();
        match *self {
            Universe::BoundedWords { t, w, .. } => {
                (window.iter().all(|&s| s < t) && sum <= u64::from(w)).then(|| window.to_vec())
            }
            Universe::FixedWeightWords { t, w, .. } => {
                if window.iter().any(|&s| s >= t) || sum > u64::from(w) {
                    return None;
                }
                let missing = w - sum as u32;
                (missing < t).then(|| {
                    let mut word = window.to_vec();
                    word.push(missing);
                    word
                })
            }
            Universe::Subsets { n, .. } => {
                if window.contains(&0) || sum > u64::from(n) {
                    return None;
                }
                let mut acc = 0;
                Some(
                    window
                        .iter()
                        .map(|&d| {
                            acc += d;
                            acc
                        })
                        .collect(),
                )
            }
            Universe::MultisetsFreq { n, k } => {
                if sum > u64::from(k) {
                    return None;
                }
                let mut out = Vec::new();
                for (value, &count) in (1..).zip(window) {
                    out.extend(std::iter::repeat_n(value, count as usize));
                }
                out.extend(std::iter::repeat_n(n, k as usize - sum as usize));
                Some(out)
            }
            Universe::MultisetsDiff { n, .. } => {
                if sum >= u64::from(n) {
                    return None;
                }
                let mut acc = 1;
                Some(
                    window
                        .iter()
                        .map(|&d| {
                            acc += d;
                            acc
                        })
                        .collect(),
                )
            }
        }
    }

    fn render_member(&self, member: &[u32]) -> String {
        let parts: Vec<String> = member.iter().map(u32::to_string).collect();
        if self.is_objects() {
            format!("{{{}}}", parts.join(","))
        } else if member.iter().all(|&s| s < 10) {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Universe::BoundedWords { t, n, w } => write!(f, "bounded words t={t} n={n} w={w}"),
            Universe::FixedWeightWords { t, n, w } => {
                write!(f, "fixed-weight words t={t} length={} w={w}", n + 1)
            }
            Universe::Subsets { n, k } => write!(f, "{k}-subsets of [{n}]"),
            Universe::MultisetsFreq { n, k } => write!(f, "{k}-multisets of [{n}] (frequency)"),
            Universe::MultisetsDiff { n, k } => write!(f, "{k}-multisets of [{n}] (difference)"),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of length-`len` words over `{0..t-1}` of weight exactly `w`, by
/// inclusion-exclusion over symbols that reach `t`.
fn words_of_weight(t: Symbol, len: usize, w: u32) -> u128 {
    let (t, len, w) = (u128::from(t), len as u128, u128::from(w));
    let mut total: i128 = 0;
    let mut j = 0u128;
    while j <= len && j * t <= w {
        let term = (binomial(len, j) * binomial(w - j * t + len - 1, len - 1)) as i128;
        total += if j.is_multiple_of(2) { term } else { -term };
        j += 1;
    }
    total.max(0) as u128
}

fn check_cap(universe: &Universe, cap: u128) -> Result<u128> {
    universe.validate()?;
    let size = universe.size();
    if size > cap {
        return Err(Error::CapExceeded {
            what: universe.to_string(),
            size,
            cap,
        });
    }
    Ok(size)
}

/// Lists every member of `universe` in lexicographic order.
pub fn enumerate_universe(universe: &Universe, cap: u128) -> Result<Vec<Vec<u32>>> {
    let size = check_cap(universe, cap)?;
    let mut out = Vec::with_capacity(size as usize);
    let mut prefix = Vec::new();
    match *universe {
        Universe::BoundedWords { t, n, w } => words_rec(t, n, w, false, &mut prefix, &mut out),
        Universe::FixedWeightWords { t, n, w } => {
            words_rec(t, n + 1, w, true, &mut prefix, &mut out)
        }
        Universe::Subsets { n, k } => sorted_rec(1, n, k as usize, true, &mut prefix, &mut out),
        Universe::MultisetsFreq { n, k } | Universe::MultisetsDiff { n, k } => {
            sorted_rec(1, n, k as usize, false, &mut prefix, &mut out)
        }
    }
    Ok(out)
}

fn words_rec(
    t: u32,
    len: usize,
    budget: u32,
    exact: bool,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if prefix.len() == len {
        if !exact || budget == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for s in 0..t.min(budget.saturating_add(1)) {
        prefix.push(s);
        words_rec(t, len, budget - s, exact, prefix, out);
        prefix.pop();
    }
}

fn sorted_rec(
    lo: u32,
    n: u32,
    k: usize,
    strict: bool,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    for e in lo..=n {
        prefix.push(e);
        sorted_rec(if strict { e + 1 } else { e }, n, k, strict, prefix, out);
        prefix.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest universe the oracle will materialize.
    pub cap: u128,
    /// Report every missing and duplicated member instead of the first 20.
    pub full_lists: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_CAP,
            full_lists: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub universe: Universe,
    pub expected_count: u128,
    /// Distinct members of the universe that were seen.
    pub seen_count: u128,
    /// Number of windows (or listed items) examined.
    pub windows: u128,
    pub missing_count: u128,
    pub duplicated_count: u128,
    pub unexpected_count: u128,
    pub missing: Vec<String>,
    pub duplicated: Vec<String>,
    /// Windows that decode to nothing in the universe.
    pub unexpected: Vec<String>,
    pub truncated: bool,
}

/// Slides a cyclic window over `symbols` and checks that the windows decode
/// to every member of `universe` exactly once.
pub fn verify_universal_cycle(
    symbols: &[Symbol],
    universe: &Universe,
    options: &VerifyOptions,
) -> Result<VerifyReport> {
    check_cap(universe, options.cap)?;
    let n = universe.window_len();
    let len = symbols.len();
    let windows = (0..len).map(|i| (0..n).map(|j| symbols[(i + j) % len]).collect::<Vec<_>>());
    tally(windows, universe, options, |u, w| u.decode(w))
}

/// Checks that `items` lists every member of `universe` exactly once, with
/// each item already written out in full (as [`crate::combmaps::fixed_weight_expand`]
/// produces for fixed-weight words).
pub fn verify_listing(
    items: &[Vec<Symbol>],
    universe: &Universe,
    options: &VerifyOptions,
) -> Result<VerifyReport> {
    let len = match *universe {
        Universe::FixedWeightWords { n, .. } => n + 1,
        Universe::BoundedWords { n, .. } => n,
        Universe::Subsets { k, .. }
        | Universe::MultisetsFreq { k, .. }
        | Universe::MultisetsDiff { k, .. } => k as usize,
    };
    tally(items.iter().cloned(), universe, options, |_, item| {
        (item.len() == len).then(|| item.to_vec())
    })
}

fn tally(
    items: impl Iterator<Item = Vec<Symbol>>,
    universe: &Universe,
    options: &VerifyOptions,
    decode: impl Fn(&Universe, &[Symbol]) -> Option<Vec<u32>>,
) -> Result<VerifyReport> {
    let members = enumerate_universe(universe, options.cap)?;
    let mut counts: HashMap<Vec<u32>, u64> = members.iter().map(|m| (m.clone(), 0)).collect();
    let mut unexpected = Vec::new();
    let mut windows = 0u128;
    for item in items {
        windows += 1;
        match decode(universe, &item).and_then(|m| counts.get_mut(&m)) {
            Some(c) => *c += 1,
            None => unexpected.push(render_raw(&item)),
        }
    }
    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    let mut seen = 0u128;
    for m in &members {
        match counts[m] {
            0 => missing.push(universe.render_member(m)),
            1 => seen += 1,
            _ => {
                seen += 1;
                duplicated.push(universe.render_member(m));
            }
        }
    }
    let counts = (missing.len(), duplicated.len(), unexpected.len());
    let limit = if options.full_lists {
        usize::MAX
    } else {
        DEFAULT_LIST_LIMIT
    };
    let truncated = [counts.0, counts.1, counts.2].iter().any(|&c| c > limit);
    for list in [&mut missing, &mut duplicated, &mut unexpected] {
        list.truncate(limit);
    }
    let expected_count = members.len() as u128;
    Ok(VerifyReport {
        ok: counts == (0, 0, 0) && windows == expected_count,
        universe: *universe,
        expected_count,
        seen_count: seen,
        windows,
        missing_count: counts.0 as u128,
        duplicated_count: counts.1 as u128,
        unexpected_count: counts.2 as u128,
        missing,
        duplicated,
        unexpected,
        truncated,
    })
}

fn render_raw(symbols: &[Symbol]) -> String {
    if symbols.iter().all(|&s| s < 10) {
        symbols.iter().map(|s| s.to_string()).collect()
    } else {
        symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}
