//! Bounded-weight de Bruijn sequences and the universal cycles for
//! k-subsets and k-multisets built from them.
//!
//! Three engines generate a universal cycle for `Σ_t(n, w)`, the length-`n`
//! strings over `{0..t-1}` with weight at most `w`:
//!
//! * [`grandmama::ConcatGenerator`]: concatenation of aperiodic prefixes of
//!   the necklaces in colex order, constant amortized time per symbol;
//! * [`grandmama::successor_h1`]: the equivalent first-non-zero successor rule;
//! * [`msr::successor_h2`]: the missing-symbol-register successor rule
//!   (`w < t`), which produces a different cycle.
//!
//! [`cyclejoin`] materializes the underlying cycle-joining trees and a slow
//! generic successor used to cross-check the engines, [`combmaps`] turns the
//! cycles into universal cycles for subsets and multisets, and [`oracle`]
//! holds brute-force verifiers.

pub mod combmaps;
pub mod cyclejoin;
pub mod error;
pub mod grandmama;
pub mod msr;
pub mod oracle;
pub mod ucycle;
pub mod words;

pub use error::{Error, Result};
pub use ucycle::{Engine, UCycle};
pub use words::{NecklaceInfo, ParamSet, Symbol, Word};
