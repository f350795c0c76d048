//! `V_t(n, w)`: the universal cycle induced by the first-non-zero
//! missing-symbol-register tree, for `w < t`.
//!
//! Every window `a_1..a_n` of weight at most `w` is the shorthand for the
//! length-`(n+1)` word `a_1..a_n z` of weight exactly `w`, where
//! `z = w - weight(a_1..a_n)` is the missing symbol.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grandmama::cycle_len;
use crate::ucycle::{Engine, UCycle};
use crate::words::{colex_cmp, necklace_prefix_len, weight, ParamSet, Symbol};

fn check_msr(params: &ParamSet) -> Result<()> {
    if params.w >= params.t {
        return Err(Error::MsrWeightTooLarge {
            w: params.w,
            t: params.t,
        });
    }
    Ok(())
}

/// Current window and its missing symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsrState {
    pub window: Vec<Symbol>,
    pub missing: Symbol,
}

impl MsrState {
    pub fn new(params: ParamSet, window: &[Symbol]) -> Result<Self> {
        check_msr(&params)?;
        params.check_member(window)?;
        Ok(MsrState {
            window: window.to_vec(),
            missing: params.w - weight(window),
        })
    }

    /// Shifts in `s`, keeping the missing symbol in step.
    fn shift(&mut self, s: Symbol) {
        let out = self.window[0];
        self.window.rotate_left(1);
        *self.window.last_mut().unwrap() = s;
        self.missing = self.missing + out - s;
    }
}

/// The first-non-zero MSR successor rule, locating `x` with at most one
/// necklace test.
#[derive(Debug, Clone)]
pub struct MsrRule {
    params: ParamSet,
    scratch: Vec<Symbol>,
    necklace_tests: u64,
    max_tests_per_call: u64,
}

impl MsrRule {
    pub fn new(params: ParamSet) -> Result<Self> {
        check_msr(&params)?;
        Ok(MsrRule {
            params,
            scratch: vec![0; params.n + 1],
            necklace_tests: 0,
            max_tests_per_call: 0,
        })
    }

    pub fn necklace_tests(&self) -> u64 {
        self.necklace_tests
    }

    /// Largest number of necklace tests any single call has needed.
    pub fn max_tests_per_call(&self) -> u64 {
        self.max_tests_per_call
    }

    /// Next symbol after `alpha` whose missing symbol is `z`.
    pub fn next_symbol(&mut self, alpha: &[Symbol], z: Symbol) -> Symbol {
        let n = self.params.n;
        let t = self.params.t;
        let a1 = alpha[0];
        let j = (1..n).rev().find(|&i| alpha[i] != 0).unwrap_or(0);
        let zeros = n - 1 - j;

        // Smallest symbol of a_2..a_j that follows a run of `zeros` zeros.
        let mut smallest_after_run = t - 1;
        let mut run = 0;
        for &s in &alpha[1..=j] {
            if run >= zeros {
                smallest_after_run = smallest_after_run.min(s);
            }
            run = if s == 0 { run + 1 } else { 0 };
        }

        let mut x = smallest_after_run.min(a1 + z);
        if zeros == 0 {
            // x leads the candidate, so it cannot exceed y. Without this cap
            // a failed test followed by one decrement can still leave y < x
            // (e.g. t = 7, w = 6, alpha = 23 tries 303 and then 213).
            x = x.min((a1 + z) / 2);
        }
        let mut tests = 0;
        if x > 0 {
            // Candidate 0^(n-1-j) x y a_2..a_j with y = z - x + a_1.
            self.scratch[..zeros].fill(0);
            self.scratch[zeros] = x;
            self.scratch[zeros + 1] = z + a1 - x;
            self.scratch[zeros + 2..].copy_from_slice(&alpha[1..=j]);
            tests += 1;
            if necklace_prefix_len(&self.scratch).is_none() {
                x -= 1;
            }
        }
        self.necklace_tests += tests;
        self.max_tests_per_call = self.max_tests_per_call.max(tests);

        if x == 0 {
            z
        } else if z == x {
            0
        } else if z < x {
            z + 1
        } else {
            z
        }
    }
}

/// The symbol following `alpha` in `V_t(n, w)`.
pub fn successor_h2(params: ParamSet, alpha: &[Symbol]) -> Result<Symbol> {
    let state = MsrState::new(params, alpha)?;
    Ok(MsrRule::new(params)?.next_symbol(&state.window, state.missing))
}

/// Streams `V_t(n, w)` starting from the window `0^n` (or a chosen seed).
#[derive(Debug, Clone)]
pub struct MsrGenerator {
    rule: MsrRule,
    state: MsrState,
    emitted_start: usize,
    remaining: usize,
    w: u32,
    steps_taken: u64,
}

impl MsrGenerator {
    /// The full cycle from `0^n`.
    pub fn new(params: ParamSet) -> Result<Self> {
        let len = cycle_len(params);
        Self::from_window(params, &vec![0; params.n], len.saturating_sub(params.n))
    }

    /// `start` followed by `steps` successive outputs of the rule.
    pub fn from_window(params: ParamSet, start: &[Symbol], steps: usize) -> Result<Self> {
        Ok(MsrGenerator {
            rule: MsrRule::new(params)?,
            state: MsrState::new(params, start)?,
            emitted_start: 0,
            remaining: steps,
            w: params.w,
            steps_taken: 0,
        })
    }

    pub fn necklace_tests(&self) -> u64 {
        self.rule.necklace_tests()
    }

    pub fn max_tests_per_call(&self) -> u64 {
        self.rule.max_tests_per_call()
    }
}

impl Iterator for MsrGenerator {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        if self.emitted_start < self.state.window.len() {
            self.emitted_start += 1;
            return Some(self.state.window[self.emitted_start - 1]);
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let s = self
            .rule
            .next_symbol(&self.state.window, self.state.missing);
        self.state.shift(s);
        self.steps_taken += 1;
        if cfg!(debug_assertions) && self.steps_taken.is_power_of_two() {
            debug_assert_eq!(self.state.missing, self.w - weight(&self.state.window));
        }
        Some(s)
    }
}

/// `V_t(n, w)`, a universal cycle for `Σ_t(n, w)` when `w < t`.
pub fn generate_msr(params: ParamSet) -> Result<UCycle> {
    let mut symbols: Vec<Symbol> = MsrGenerator::new(params)?.collect();
    symbols.truncate(cycle_len(params));
    Ok(UCycle::new(symbols, params, Engine::Msr))
}

/// Necklaces of length `n+1` and weight exactly `w` (every symbol is then
/// automatically below `t`), in colex order.
pub fn fixed_weight_necklaces(params: ParamSet) -> Result<Vec<Vec<Symbol>>> {
    check_msr(&params)?;
    let len = params.n + 1;
    let mut out = Vec::new();
    let mut word = vec![0; len];
    compositions(&mut word, 0, params.w, &mut |c| {
        if necklace_prefix_len(c).is_some() {
            out.push(c.to_vec());
        }
    });
    out.sort_by(|a, b| colex_cmp(a, b));
    Ok(out)
}

fn compositions(word: &mut [Symbol], at: usize, left: u32, visit: &mut impl FnMut(&[Symbol])) {
    if at + 1 == word.len() {
        word[at] = left;
        visit(word);
        return;
    }
    for s in 0..=left {
        word[at] = s;
        compositions(word, at + 1, left - s, visit);
    }
}

/// `V'_t(n, w)`: aperiodic prefixes of the length-`(n+1)` weight-`w`
/// necklaces, concatenated in reverse colex order.
pub fn generate_reverse_colex(params: ParamSet) -> Result<UCycle> {
    let mut symbols = Vec::new();
    for neck in fixed_weight_necklaces(params)?.iter().rev() {
        let p = necklace_prefix_len(neck).expect("filtered to necklaces");
        symbols.extend_from_slice(&neck[..p]);
    }
    Ok(UCycle::new(symbols, params, Engine::ReverseColex))
}

/// Outcome of comparing `V_t(n, w)` against `V'_t(n, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub params: ParamSet,
    pub equal: bool,
    pub first_divergence: Option<usize>,
    pub msr_len: usize,
    pub reverse_colex_len: usize,
}

/// Compares the two sequences literally; both start at the window `0^n`.
pub fn check_conjecture(params: ParamSet) -> Result<ConjectureReport> {
    let v = generate_msr(params)?;
    let v_prime = generate_reverse_colex(params)?;
    let first_divergence = v
        .symbols
        .iter()
        .zip(&v_prime.symbols)
        .position(|(a, b)| a != b)
        .or_else(|| (v.len() != v_prime.len()).then(|| v.len().min(v_prime.len())));
    Ok(ConjectureReport {
        params,
        equal: first_divergence.is_none(),
        first_divergence,
        msr_len: v.len(),
        reverse_colex_len: v_prime.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::render;

    fn p(t: Symbol, n: usize, w: u32) -> ParamSet {
        ParamSet::new(t, n, w).unwrap()
    }

    fn compact(s: &str) -> String {
        s.replace(['·', ' '], "")
    }

    /// Tries every x from t-1 downwards.
    fn h2_exhaustive(params: ParamSet, alpha: &[Symbol]) -> Symbol {
        let n = params.n;
        let t = params.t;
        let z = params.w - weight(alpha);
        let a1 = alpha[0];
        let j = (1..n).rev().find(|&i| alpha[i] != 0).unwrap_or(0);
        let x = (1..t).rev().find(|&x| {
            if x > z + a1 || z + a1 - x >= t {
                return false;
            }
            let mut s = vec![0; n - 1 - j];
            s.push(x);
            s.push(z + a1 - x);
            s.extend_from_slice(&alpha[1..=j]);
            necklace_prefix_len(&s).is_some()
        });
        match x {
            Some(x) if z == x => 0,
            Some(x) if z < x => z + 1,
            _ => z,
        }
    }

    #[test]
    fn h2_candidate_without_leading_zeros() {
        let params = p(7, 2, 6);
        assert_eq!(successor_h2(params, &[2, 3]).unwrap(), 0);
        assert_eq!(h2_exhaustive(params, &[2, 3]), 0);
        assert_eq!(successor_h2(p(10, 3, 9), &[2, 3, 3]).unwrap(), 0);
    }

    #[test]
    fn h2_examples() {
        let params = p(5, 3, 4);
        assert_eq!(successor_h2(params, &[0, 0, 0]).unwrap(), 4);
        assert_eq!(successor_h2(params, &[0, 0, 4]).unwrap(), 0);
        assert_eq!(successor_h2(params, &[0, 2, 1]).unwrap(), 1);
        assert!(matches!(
            successor_h2(p(4, 3, 4), &[0, 0, 0]),
            Err(Error::MsrWeightTooLarge { .. })
        ));
        assert!(successor_h2(params, &[2, 2, 1]).is_err());
    }

    #[test]
    fn h2_one_test_shortcut_matches_exhaustive_search() {
        for t in 2..=10 {
            for n in 1..=5 {
                if u64::from(t).pow(n as u32) > 200_000 {
                    continue;
                }
                for w in 0..t {
                    let params = p(t, n, w);
                    let mut rule = MsrRule::new(params).unwrap();
                    let mut word = vec![0; n];
                    loop {
                        if params.contains(&word) {
                            let z = w - weight(&word);
                            assert_eq!(
                                rule.next_symbol(&word, z),
                                h2_exhaustive(params, &word),
                                "{params} {word:?}"
                            );
                        }
                        if !crate::words::colex_increment(&mut word, t) {
                            break;
                        }
                    }
                    assert!(rule.max_tests_per_call() <= 1);
                }
            }
        }
    }

    #[test]
    fn msr_examples() {
        assert_eq!(
            generate_msr(p(5, 3, 4)).unwrap().to_string(),
            compact("0004·0013·0103·0022·0112·02·0031·0121·0211·1")
        );
        // The rule, the tree-based generic successor and the reverse-colex
        // concatenation all agree on this cycle for (4, 3, 3).
        assert_eq!(
            generate_msr(p(4, 3, 3)).unwrap().to_string(),
            compact("0003·0012·0102·0021·0111")
        );
        assert_eq!(
            generate_msr(p(4, 4, 3)).unwrap().to_string(),
            compact("00003·00012·00102·00021·00111·01011·00201")
        );
        assert!(generate_msr(p(3, 3, 3)).is_err());
        assert_eq!(generate_msr(p(1, 3, 0)).unwrap().to_string(), "0");
    }

    #[test]
    fn reverse_colex_examples() {
        assert_eq!(
            generate_reverse_colex(p(5, 3, 4)).unwrap().to_string(),
            compact("0004·0013·0103·0022·0112·02·0031·0121·0211·1")
        );
        assert_eq!(
            generate_reverse_colex(p(2, 2, 1)).unwrap().to_string(),
            "001"
        );
        // Colex order puts 11 before 02, so reverse colex emits 02 first.
        assert_eq!(
            generate_reverse_colex(p(3, 1, 2)).unwrap().to_string(),
            "021"
        );
        assert!(generate_reverse_colex(p(2, 2, 2)).is_err());
    }

    #[test]
    fn conjecture_examples() {
        for params in [p(5, 3, 4), p(4, 3, 3), p(2, 2, 1)] {
            let report = check_conjecture(params).unwrap();
            assert!(report.equal, "{report:?}");
            assert_eq!(report.first_divergence, None);
        }
    }

    #[test]
    fn fixed_weight_necklaces_listing() {
        let listed: Vec<String> = fixed_weight_necklaces(p(5, 3, 4))
            .unwrap()
            .iter()
            .map(|w| render(w))
            .collect();
        assert_eq!(listed.len(), 10);
        assert_eq!(listed.last().unwrap(), "0004");
        assert_eq!(listed.first().unwrap(), "1111");
    }

    #[test]
    fn seeded_generation() {
        let params = p(5, 3, 4);
        let full = generate_msr(params).unwrap();
        let from = MsrGenerator::from_window(params, &[0, 1, 3], 10).unwrap();
        let got: Vec<_> = from.collect();
        let pos = full.windows().position(|w| w == [0, 1, 3]).unwrap();
        let expected: Vec<_> = (0..13).map(|k| full.symbols[(pos + k) % 35]).collect();
        assert_eq!(got, expected);
    }
}
