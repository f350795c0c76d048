//! The bounded-weight Grandmama sequence `U_t(n, w)`.
//!
//! Two independent routes produce it. [`ConcatGenerator`] walks the
//! first-non-zero concatenation tree in RCL order, discovering children on
//! the fly, and emits the aperiodic prefix of every node; this runs in
//! constant amortized time per symbol. [`successor_h1`] is the
//! corresponding `O(n t)` successor rule that needs only the current window.

use crate::error::Result;
use crate::ucycle::{Engine, UCycle};
use crate::words::{necklace_prefix_len, necklace_prefix_len_counted, weight, ParamSet, Symbol};

#[derive(Debug, Clone, Copy)]
struct Frame {
    /// Change index (0-based). Every position left of it is zero.
    change: usize,
    weight: u32,
    /// Next left-of-change child position still to visit.
    next_child: usize,
    /// Whether the child obtained by incrementing `change` is still pending.
    change_child: bool,
}

/// RCL traversal of the first-non-zero concatenation tree. Each call to
/// [`advance`](Self::advance) moves to the next necklace of `N_t(n, w)` in
/// colex order.
#[derive(Debug, Clone)]
pub struct RclTraversal {
    t: Symbol,
    w: u32,
    word: Vec<Symbol>,
    period: usize,
    stack: Vec<Frame>,
    started: bool,
    comparisons: u64,
    max_depth: usize,
}

impl RclTraversal {
    pub fn new(params: ParamSet) -> Self {
        let w = params.effective_w();
        RclTraversal {
            t: params.t,
            w,
            word: vec![0; params.n],
            period: 1,
            stack: Vec::with_capacity(w as usize + 1),
            started: false,
            comparisons: 0,
            max_depth: 0,
        }
    }

    /// The necklace currently visited.
    pub fn current(&self) -> &[Symbol] {
        &self.word
    }

    /// Aperiodic prefix of the current necklace.
    pub fn aperiodic_prefix(&self) -> &[Symbol] {
        &self.word[..self.period]
    }

    /// Symbol comparisons spent in necklace tests so far.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    /// Deepest explicit-stack depth reached so far.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            let root = self.n() - 1;
            self.enter(root, 0);
            return true;
        }
        while let Some(top) = self.stack.last_mut() {
            if top.next_child < top.change {
                let i = top.next_child;
                top.next_child += 1;
                let weight = top.weight + 1;
                self.word[i] = 1;
                self.enter(i, weight);
                return true;
            }
            if top.change_child {
                top.change_child = false;
                let c = top.change;
                let weight = top.weight + 1;
                self.word[c] += 1;
                self.enter(c, weight);
                return true;
            }
            let done = self.stack.pop().unwrap();
            if !self.stack.is_empty() {
                self.word[done.change] -= 1;
            }
        }
        false
    }

    fn n(&self) -> usize {
        self.word.len()
    }

    fn necklace(&mut self) -> Option<usize> {
        necklace_prefix_len_counted(&self.word, &mut self.comparisons)
    }

    /// Visits the node currently held in `word` and works out which of its
    /// children exist: probe the change index first, then scan left until a
    /// non-necklace or the start of the word.
    fn enter(&mut self, change: usize, weight: u32) {
        self.period = self
            .necklace()
            .expect("RCL traversal reached a non-necklace");
        let mut frame = Frame {
            change,
            weight,
            next_child: change,
            change_child: false,
        };
        if weight < self.w {
            self.word[change] += 1;
            let blocked = self.word[change] < self.t && self.necklace().is_none();
            self.word[change] -= 1;
            if !blocked {
                frame.change_child = self.word[change] + 1 < self.t;
                let mut j = change;
                while j > 0 {
                    self.word[j - 1] = 1;
                    let ok = self.necklace().is_some();
                    self.word[j - 1] = 0;
                    if !ok {
                        break;
                    }
                    j -= 1;
                }
                frame.next_child = j;
            }
        }
        self.stack.push(frame);
        self.max_depth = self.max_depth.max(self.stack.len());
    }
}

/// Streams `U_t(n, w)` one symbol at a time by concatenating aperiodic
/// prefixes of the necklaces visited by an [`RclTraversal`].
#[derive(Debug, Clone)]
pub struct ConcatGenerator {
    traversal: RclTraversal,
    pos: usize,
    live: bool,
}

impl ConcatGenerator {
    pub fn new(params: ParamSet) -> Self {
        let mut traversal = RclTraversal::new(params);
        let live = traversal.advance();
        ConcatGenerator {
            traversal,
            pos: 0,
            live,
        }
    }

    pub fn comparisons(&self) -> u64 {
        self.traversal.comparisons()
    }

    pub fn max_depth(&self) -> usize {
        self.traversal.max_depth()
    }
}

impl Iterator for ConcatGenerator {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        while self.live {
            if let Some(&s) = self.traversal.aperiodic_prefix().get(self.pos) {
                self.pos += 1;
                return Some(s);
            }
            self.pos = 0;
            self.live = self.traversal.advance();
        }
        None
    }
}

/// `U_t(n, w)` by necklace concatenation, pushing each symbol into `emit`.
pub fn generate_concat_into(params: ParamSet, mut emit: impl FnMut(Symbol)) {
    ConcatGenerator::new(params).for_each(&mut emit);
}

/// `U_t(n, w)` by necklace concatenation.
pub fn generate_concat(params: ParamSet) -> UCycle {
    let symbols = ConcatGenerator::new(params).collect();
    UCycle::new(symbols, params, Engine::Concat)
}

/// The first-non-zero (Grandmama) successor rule with a reusable scratch
/// buffer.
#[derive(Debug, Clone)]
pub struct GrandmamaRule {
    params: ParamSet,
    scratch: Vec<Symbol>,
    necklace_tests: u64,
}

impl GrandmamaRule {
    pub fn new(params: ParamSet) -> Self {
        GrandmamaRule {
            params,
            scratch: vec![0; params.n],
            necklace_tests: 0,
        }
    }

    pub fn necklace_tests(&self) -> u64 {
        self.necklace_tests
    }

    /// Next symbol after `alpha`, which must already be a member of the set.
    pub fn next_symbol(&mut self, alpha: &[Symbol]) -> Symbol {
        let n = self.params.n;
        let a1 = alpha[0];
        let j = (1..n).rev().find(|&i| alpha[i] != 0).unwrap_or(0);
        let tail_weight = weight(&alpha[1..]);
        let budget = self.params.w.saturating_sub(tail_weight);
        let top = budget.min(self.params.t.saturating_sub(1));

        // Candidate 0^(n-1-j) x a_2..a_j.
        let zeros = n - 1 - j;
        self.scratch[..zeros].fill(0);
        self.scratch[zeros + 1..].copy_from_slice(&alpha[1..=j]);
        let mut x = None;
        for candidate in (1..=top).rev() {
            self.scratch[zeros] = candidate;
            self.necklace_tests += 1;
            if necklace_prefix_len(&self.scratch).is_some() {
                x = Some(candidate);
                break;
            }
        }
        match x {
            Some(x) if a1 == x => 0,
            Some(x) if a1 < x => a1 + 1,
            _ => a1,
        }
    }
}

/// The symbol following `alpha` in `U_t(n, w)`.
pub fn successor_h1(params: ParamSet, alpha: &[Symbol]) -> Result<Symbol> {
    params.check_member(alpha)?;
    Ok(GrandmamaRule::new(params).next_symbol(alpha))
}

/// Emits `start` and then `steps` successive outputs of the Grandmama rule,
/// each applied to the last `n` symbols.
#[derive(Debug, Clone)]
pub struct SuccessorGenerator {
    rule: GrandmamaRule,
    window: Vec<Symbol>,
    emitted_start: usize,
    remaining: usize,
}

impl SuccessorGenerator {
    pub fn new(params: ParamSet, start: &[Symbol], steps: usize) -> Result<Self> {
        params.check_member(start)?;
        Ok(SuccessorGenerator {
            rule: GrandmamaRule::new(params),
            window: start.to_vec(),
            emitted_start: 0,
            remaining: steps,
        })
    }

    pub fn necklace_tests(&self) -> u64 {
        self.rule.necklace_tests()
    }
}

impl Iterator for SuccessorGenerator {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        if self.emitted_start < self.window.len() {
            self.emitted_start += 1;
            return Some(self.window[self.emitted_start - 1]);
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let s = self.rule.next_symbol(&self.window);
        self.window.rotate_left(1);
        *self.window.last_mut().unwrap() = s;
        Some(s)
    }
}

/// `start` followed by `steps` applications of the Grandmama rule. With
/// `start = 0^n` and `steps = |Σ_t(n,w)| - n` this is `U_t(n, w)`.
pub fn generate_by_successor(params: ParamSet, start: &[Symbol], steps: usize) -> Result<UCycle> {
    let symbols = SuccessorGenerator::new(params, start, steps)?.collect();
    Ok(UCycle::new(symbols, params, Engine::Grandmama))
}

/// `U_t(n, w)` produced by the successor rule from `0^n`, as a cycle of
/// length exactly `|Σ_t(n, w)|`.
pub fn successor_cycle(params: ParamSet) -> UCycle {
    let len = cycle_len(params);
    let start = vec![0; params.n];
    let mut cycle = generate_by_successor(params, &start, len.saturating_sub(params.n))
        .expect("0^n is always a member");
    // When the set is smaller than one window the emission wraps onto itself.
    cycle.symbols.truncate(len);
    cycle
}

pub(crate) fn cycle_len(params: ParamSet) -> usize {
    usize::try_from(params.size()).expect("cycle length exceeds usize")
}
