//! k-subsets and k-multisets of `[n]` as bounded-weight strings.
//!
//! * a k-subset `{e_1 < .. < e_k}` is written as its difference string
//!   `e_1, e_2 - e_1, .., e_k - e_(k-1)`; after mapping each symbol `x` to
//!   `x - 1` these are exactly `Σ_(n-k+1)(k, n-k)`;
//! * a k-multiset is written either as the first `n - 1` entries of its
//!   frequency map, giving `Σ_(k+1)(n-1, k)`, or as the difference string of
//!   the multiset shifted onto `{0..n-1}`, giving `Σ_n(k, n-1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grandmama::generate_concat;
use crate::msr::generate_msr;
use crate::ucycle::{cyclic_window, UCycle};
use crate::words::{render, weight, ParamSet, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombKind {
    Subset,
    Multiset,
}

/// A k-subset or k-multiset of `[n] = {1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombObject {
    pub kind: CombKind,
    pub n: u32,
    pub k: u32,
    pub elements: Vec<u32>,
}

impl CombObject {
    pub fn subset(n: u32, elements: Vec<u32>) -> Result<Self> {
        let ok = elements.windows(2).all(|p| p[0] < p[1])
            && elements.iter().all(|&e| (1..=n).contains(&e));
        if !ok || elements.is_empty() {
            return Err(Error::InvalidRepresentation(format!(
                "{elements:?} is not a non-empty subset of [{n}] in increasing order"
            )));
        }
        Ok(CombObject {
            kind: CombKind::Subset,
            n,
            k: elements.len() as u32,
            elements,
        })
    }

    pub fn multiset(n: u32, elements: Vec<u32>) -> Result<Self> {
        let ok = elements.windows(2).all(|p| p[0] <= p[1])
            && elements.iter().all(|&e| (1..=n).contains(&e));
        if !ok || elements.is_empty() {
            return Err(Error::InvalidRepresentation(format!(
                "{elements:?} is not a non-empty multiset over [{n}] in sorted order"
            )));
        }
        Ok(CombObject {
            kind: CombKind::Multiset,
            n,
            k: elements.len() as u32,
            elements,
        })
    }
}

impl fmt::Display for CombObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// String representation used for a family of objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    SubsetDifference,
    MultisetShorthandFrequency,
    MultisetDifference,
}

fn expect_kind(obj: &CombObject, kind: CombKind) -> Result<()> {
    if obj.kind != kind {
        return Err(Error::InvalidRepresentation(format!(
            "expected a {kind:?}, got a {:?}",
            obj.kind
        )));
    }
    Ok(())
}

fn differences(elements: &[u32], base: u32) -> Vec<Symbol> {
    let mut prev = base;
    elements
        .iter()
        .map(|&e| {
            let d = e - prev;
            prev = e;
            d
        })
        .collect()
}

fn partial_sums(symbols: &[Symbol]) -> Vec<u64> {
    symbols
        .iter()
        .scan(0u64, |acc, &s| {
            *acc += u64::from(s);
            Some(*acc)
        })
        .collect()
}

/// Difference string of a subset; symbols lie in `1..=n-k+1`.
pub fn subset_to_diff(subset: &CombObject) -> Result<Word> {
    expect_kind(subset, CombKind::Subset)?;
    Word::new(differences(&subset.elements, 0), subset.n - subset.k + 2)
}

pub fn diff_to_subset(word: &[Symbol], n: u32) -> Result<CombObject> {
    if word.contains(&0) {
        return Err(Error::InvalidRepresentation(format!(
            "subset difference string {} has a zero symbol",
            render(word)
        )));
    }
    let sums = partial_sums(word);
    if sums.last().is_none_or(|&m| m > u64::from(n)) {
        return Err(Error::InvalidRepresentation(format!(
            "partial sums of {} exceed {n}",
            render(word)
        )));
    }
    CombObject::subset(n, sums.into_iter().map(|s| s as u32).collect())
}

/// First `n - 1` entries of the frequency map.
pub fn multiset_to_freq(multiset: &CombObject) -> Result<Word> {
    expect_kind(multiset, CombKind::Multiset)?;
    if multiset.n < 2 {
        return Err(Error::InvalidRepresentation(
            "shorthand frequency needs n >= 2".into(),
        ));
    }
    let mut freq = vec![0; multiset.n as usize - 1];
    for &e in &multiset.elements {
        if e < multiset.n {
            freq[e as usize - 1] += 1;
        }
    }
    Word::new(freq, multiset.k + 1)
}

/// Inverse of [`multiset_to_freq`]; the count of `n` is `k` minus the weight.
pub fn freq_to_multiset(word: &[Symbol], k: u32) -> Result<CombObject> {
    let total = weight(word);
    if total > k {
        return Err(Error::InvalidRepresentation(format!(
            "frequency string {} has weight above {k}",
            render(word)
        )));
    }
    let n = word.len() as u32 + 1;
    let mut elements = Vec::with_capacity(k as usize);
    for (i, &f) in word.iter().enumerate() {
        elements.extend(std::iter::repeat_n(i as u32 + 1, f as usize));
    }
    elements.extend(std::iter::repeat_n(n, (k - total) as usize));
    CombObject::multiset(n, elements)
}

/// Difference string of the multiset shifted onto `{0..n-1}`.
pub fn multiset_to_diff(multiset: &CombObject) -> Result<Word> {
    expect_kind(multiset, CombKind::Multiset)?;
    let shifted: Vec<u32> = multiset.elements.iter().map(|e| e - 1).collect();
    Word::new(differences(&shifted, 0), multiset.n)
}

pub fn diff_to_multiset(word: &[Symbol], n: u32) -> Result<CombObject> {
    if u64::from(weight(word)) > u64::from(n) - 1 {
        return Err(Error::InvalidRepresentation(format!(
            "multiset difference string {} has weight above {}",
            render(word),
            n - 1
        )));
    }
    let elements = partial_sums(word)
        .into_iter()
        .map(|s| s as u32 + 1)
        .collect();
    CombObject::multiset(n, elements)
}

/// Which sequence construction backs a combinatorial cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleEngine {
    /// `U_t(n, w)`, generated by necklace concatenation.
    Grandmama,
    /// `V_t(n, w)`, generated by the MSR successor rule.
    Msr,
}

/// Whether to insist on `n, k >= 2` for multisets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MultisetBounds {
    #[default]
    Strict,
    /// Also accept `k = 1` (and `n = 1` for difference strings).
    Relaxed,
}

/// A universal cycle for subsets or multisets together with the scheme
/// needed to read its windows back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombCycle {
    pub cycle: UCycle,
    pub scheme: Scheme,
    pub n: u32,
    pub k: u32,
}

impl CombCycle {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn window_len(&self) -> usize {
        self.cycle.window_len()
    }

    /// Reads the cyclic window at `position` back into an object.
    pub fn decode_window(&self, position: usize) -> Result<CombObject> {
        let window = cyclic_window(&self.cycle.symbols, position, self.window_len())?;
        match self.scheme {
            Scheme::SubsetDifference => diff_to_subset(&window, self.n),
            Scheme::MultisetShorthandFrequency => freq_to_multiset(&window, self.k),
            Scheme::MultisetDifference => diff_to_multiset(&window, self.n),
        }
    }

    /// Every window decoded, in cycle order.
    pub fn decode_all(&self) -> Result<Vec<CombObject>> {
        (0..self.len()).map(|i| self.decode_window(i)).collect()
    }
}

fn engine_cycle(params: ParamSet, engine: CycleEngine) -> Result<UCycle> {
    match engine {
        CycleEngine::Grandmama => Ok(generate_concat(params)),
        CycleEngine::Msr => generate_msr(params),
    }
}

/// `Σ_(n-k+1)(k, n-k)`, the strings behind the k-subsets of `[n]`.
pub fn subset_params(n: u32, k: u32) -> Result<ParamSet> {
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "subsets need 1 <= k <= n (got n = {n}, k = {k})"
        )));
    }
    ParamSet::new(n - k + 1, k as usize, n - k)
}

/// `Σ_(k+1)(n-1, k)`, the shorthand frequency strings of k-multisets of `[n]`.
pub fn multiset_freq_params(n: u32, k: u32, bounds: MultisetBounds) -> Result<ParamSet> {
    check_multiset_bounds(n, k, bounds, 2)?;
    ParamSet::new(k + 1, n as usize - 1, k)
}

/// `Σ_n(k, n-1)`, the difference strings of k-multisets of `[n]`.
pub fn multiset_diff_params(n: u32, k: u32, bounds: MultisetBounds) -> Result<ParamSet> {
    check_multiset_bounds(n, k, bounds, 1)?;
    ParamSet::new(n, k as usize, n - 1)
}

/// Universal cycle for the k-subsets of `[n]` in difference representation:
/// `U` or `V` over `Σ_(n-k+1)(k, n-k)` with every symbol shifted up by one.
pub fn ucycle_subsets(n: u32, k: u32, engine: CycleEngine) -> Result<CombCycle> {
    let params = subset_params(n, k)?;
    Ok(CombCycle {
        cycle: engine_cycle(params, engine)?.shifted(1),
        scheme: Scheme::SubsetDifference,
        n,
        k,
    })
}

fn check_multiset_bounds(n: u32, k: u32, bounds: MultisetBounds, min_n: u32) -> Result<()> {
    let (lo_n, lo_k) = match bounds {
        MultisetBounds::Strict => (2, 2),
        MultisetBounds::Relaxed => (min_n, 1),
    };
    if n < lo_n || k < lo_k {
        return Err(Error::InvalidParams(format!(
            "multisets need n >= {lo_n} and k >= {lo_k} (got n = {n}, k = {k})"
        )));
    }
    Ok(())
}

/// Universal cycle for the k-multisets of `[n]` in shorthand frequency
/// representation: `U` or `V` over `Σ_(k+1)(n-1, k)`.
pub fn ucycle_multisets_freq(
    n: u32,
    k: u32,
    engine: CycleEngine,
    bounds: MultisetBounds,
) -> Result<CombCycle> {
    let params = multiset_freq_params(n, k, bounds)?;
    Ok(CombCycle {
        cycle: engine_cycle(params, engine)?,
        scheme: Scheme::MultisetShorthandFrequency,
        n,
        k,
    })
}

/// Universal cycle for the k-multisets of `[n]` in difference
/// representation: `U` or `V` over `Σ_n(k, n-1)`.
pub fn ucycle_multisets_diff(
    n: u32,
    k: u32,
    engine: CycleEngine,
    bounds: MultisetBounds,
) -> Result<CombCycle> {
    let params = multiset_diff_params(n, k, bounds)?;
    Ok(CombCycle {
        cycle: engine_cycle(params, engine)?,
        scheme: Scheme::MultisetDifference,
        n,
        k,
    })
}

/// Reads a bounded-weight cycle over `Σ_t(n, w)` as a fixed-weight cycle for
/// length-`(n+1)` words of weight exactly `w`: each window is completed by its
/// missing symbol. When `w = t` the single `0^n` window is first shortened to
/// `0^(n-1)`.
pub fn fixed_weight_expand(cycle: &UCycle) -> Result<Vec<Vec<Symbol>>> {
    let ParamSet { t, n, w } = cycle.params;
    if w > t {
        return Err(Error::InvalidParams(format!(
            "fixed-weight reading needs w <= t (got w = {w}, t = {t})"
        )));
    }
    let mut symbols = cycle.symbols.clone();
    if w == t {
        let len = symbols.len();
        let start = (0..len)
            .find(|&i| (0..n).all(|k| symbols[(i + k) % len] == 0))
            .ok_or_else(|| Error::InvalidRepresentation("cycle has no 0^n window".into()))?;
        symbols.rotate_left(start);
        symbols.remove(0);
    }
    let len = symbols.len();
    (0..len)
        .map(|i| {
            let mut word: Vec<Symbol> = (0..n).map(|k| symbols[(i + k) % len]).collect();
            let missing = w
                .checked_sub(weight(&word))
                .filter(|&z| z < t)
                .ok_or_else(|| {
                    Error::InvalidRepresentation(format!(
                        "window {} has no missing symbol below {t}",
                        render(&word)
                    ))
                })?;
            word.push(missing);
            Ok(word)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compact(s: &str) -> String {
        s.replace(['·', ' '], "")
    }

    fn sub(n: u32, e: &[u32]) -> CombObject {
        CombObject::subset(n, e.to_vec()).unwrap()
    }

    fn multi(n: u32, e: &[u32]) -> CombObject {
        CombObject::multiset(n, e.to_vec()).unwrap()
    }

    #[test]
    fn subset_difference_examples() {
        assert_eq!(
            subset_to_diff(&sub(5, &[1, 3, 4])).unwrap().to_string(),
            "121"
        );
        assert_eq!(
            subset_to_diff(&sub(5, &[1, 2, 3])).unwrap().to_string(),
            "111"
        );
        assert_eq!(
            subset_to_diff(&sub(5, &[3, 4, 5])).unwrap().to_string(),
            "311"
        );
        assert_eq!(diff_to_subset(&[1, 2, 1], 5).unwrap(), sub(5, &[1, 3, 4]));
        assert!(diff_to_subset(&[3, 2, 1], 5).is_err());
        assert!(diff_to_subset(&[1, 0, 1], 5).is_err());
    }

    #[test]
    fn frequency_examples() {
        assert_eq!(
            multiset_to_freq(&multi(3, &[1, 1, 1])).unwrap().to_string(),
            "30"
        );
        assert_eq!(
            multiset_to_freq(&multi(3, &[3, 3, 3])).unwrap().to_string(),
            "00"
        );
        assert_eq!(
            multiset_to_freq(&multi(3, &[1, 2])).unwrap().to_string(),
            "11"
        );
        assert_eq!(freq_to_multiset(&[0, 0], 3).unwrap(), multi(3, &[3, 3, 3]));
        assert!(freq_to_multiset(&[2, 2], 3).is_err());
    }

    #[test]
    fn multiset_difference_examples() {
        assert_eq!(
            multiset_to_diff(&multi(3, &[1, 1, 2])).unwrap().to_string(),
            "001"
        );
        assert_eq!(
            multiset_to_diff(&multi(3, &[2, 2, 3])).unwrap().to_string(),
            "101"
        );
        assert_eq!(
            multiset_to_diff(&multi(3, &[3, 3, 3])).unwrap().to_string(),
            "200"
        );
        assert_eq!(
            diff_to_multiset(&[2, 0, 0], 3).unwrap(),
            multi(3, &[3, 3, 3])
        );
        assert!(diff_to_multiset(&[2, 1, 0], 3).is_err());
    }

    #[test]
    fn object_validation() {
        assert!(CombObject::subset(5, vec![3, 1]).is_err());
        assert!(CombObject::subset(5, vec![1, 1]).is_err());
        assert!(CombObject::multiset(5, vec![1, 6]).is_err());
        assert!(subset_to_diff(&multi(3, &[1, 1])).is_err());
        let json = serde_json::to_value(sub(6, &[1, 2, 3])).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"kind": "subset", "n": 6, "k": 3, "elements": [1, 2, 3]})
        );
    }

    #[test]
    fn subset_cycle_examples() {
        let s1 = ucycle_subsets(6, 3, CycleEngine::Grandmama).unwrap();
        assert_eq!(s1.cycle.to_string(), compact("1·112·122·2·132·113·123·114"));
        assert_eq!(s1.decode_window(0).unwrap(), sub(6, &[1, 2, 3]));
        let s2 = ucycle_subsets(6, 3, CycleEngine::Msr).unwrap();
        assert_eq!(s2.len(), 20);
        assert_eq!(
            ucycle_subsets(5, 3, CycleEngine::Grandmama)
                .unwrap()
                .cycle
                .to_string(),
            "1112122113"
        );
        assert!(ucycle_subsets(3, 4, CycleEngine::Grandmama).is_err());
        let full = ucycle_subsets(4, 4, CycleEngine::Grandmama).unwrap();
        assert_eq!(full.cycle.to_string(), "1");
        assert_eq!(full.decode_window(0).unwrap(), sub(4, &[1, 2, 3, 4]));
    }

    #[test]
    fn multiset_cycle_examples() {
        let f =
            ucycle_multisets_freq(4, 4, CycleEngine::Grandmama, MultisetBounds::Strict).unwrap();
        assert_eq!(
            f.cycle.to_string(),
            compact("0·001·011·1·021·031·002·012·112·022·003·013·004")
        );
        assert_eq!(f.decode_window(0).unwrap(), multi(4, &[4, 4, 4, 4]));
        let f = ucycle_multisets_freq(4, 4, CycleEngine::Msr, MultisetBounds::Strict).unwrap();
        assert_eq!(
            f.cycle.to_string(),
            compact("0004·0013·0103·0022·0112·02·0031·0121·0211·1")
        );
        let d =
            ucycle_multisets_diff(4, 4, CycleEngine::Grandmama, MultisetBounds::Strict).unwrap();
        assert_eq!(
            d.cycle.to_string(),
            compact("0·0001·01·0011·0111·0021·0002·0102·0012·0003")
        );
        assert_eq!(d.decode_window(0).unwrap(), multi(4, &[1, 1, 1, 1]));
        let d = ucycle_multisets_diff(4, 4, CycleEngine::Msr, MultisetBounds::Strict).unwrap();
        assert_eq!(
            d.cycle.to_string(),
            compact("00003·00012·00102·00021·00111·01011·00201")
        );
        for engine in [CycleEngine::Grandmama, CycleEngine::Msr] {
            assert_eq!(
                ucycle_multisets_freq(3, 3, engine, MultisetBounds::Strict)
                    .unwrap()
                    .len(),
                10
            );
            assert_eq!(
                ucycle_multisets_diff(3, 3, engine, MultisetBounds::Strict)
                    .unwrap()
                    .len(),
                10
            );
        }
        assert!(ucycle_multisets_freq(3, 1, CycleEngine::Msr, MultisetBounds::Strict).is_err());
        assert!(ucycle_multisets_freq(1, 3, CycleEngine::Msr, MultisetBounds::Relaxed).is_err());
        assert_eq!(
            ucycle_multisets_freq(3, 1, CycleEngine::Msr, MultisetBounds::Relaxed)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn inline_multiset_cycles_are_universal() {
        // These cycles are not attributed to either engine; only their
        // universality is checked, by decoding every window.
        for (cycle, scheme) in [
            ("0011021203", Scheme::MultisetShorthandFrequency),
            ("0001011002", Scheme::MultisetDifference),
        ] {
            let symbols: Vec<Symbol> = cycle.chars().map(|c| c.to_digit(10).unwrap()).collect();
            let (t, n, w) = match scheme {
                Scheme::MultisetShorthandFrequency => (4, 2, 3),
                _ => (3, 3, 2),
            };
            let comb = CombCycle {
                cycle: UCycle::new(
                    symbols,
                    ParamSet::new(t, n, w).unwrap(),
                    crate::Engine::Concat,
                ),
                scheme,
                n: 3,
                k: 3,
            };
            let mut objs = comb.decode_all().unwrap();
            objs.sort();
            objs.dedup();
            assert_eq!(objs.len(), 10, "{cycle}");
        }
    }

    #[test]
    fn fixed_weight_examples() {
        use crate::grandmama::generate_concat;
        use crate::msr::generate_msr;
        let p = ParamSet::new(5, 3, 4).unwrap();
        for cycle in [generate_msr(p).unwrap(), generate_concat(p)] {
            let mut words = fixed_weight_expand(&cycle).unwrap();
            assert_eq!(words.len(), 35);
            words.sort();
            words.dedup();
            assert_eq!(words.len(), 35);
            assert!(words.iter().all(|w| w.len() == 4 && weight(w) == 4));
        }
        let p = ParamSet::new(3, 2, 3).unwrap();
        let mut words = fixed_weight_expand(&generate_concat(p)).unwrap();
        assert_eq!(words.len(), 7);
        words.sort();
        words.dedup();
        assert_eq!(words.len(), 7);
        assert!(fixed_weight_expand(&generate_concat(ParamSet::new(2, 3, 3).unwrap())).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn subset_strategy() -> impl Strategy<Value = CombObject> {
            (1u32..=10).prop_flat_map(|n| {
                proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..=n as usize)
                    .prop_map(move |e| CombObject::subset(n, e).unwrap())
            })
        }

        fn multiset_strategy() -> impl Strategy<Value = CombObject> {
            (2u32..=8, 1usize..=8).prop_flat_map(|(n, k)| {
                proptest::collection::vec(1..=n, k).prop_map(move |mut e| {
                    e.sort();
                    CombObject::multiset(n, e).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn subset_roundtrip(s in subset_strategy()) {
                let d = subset_to_diff(&s).unwrap();
                prop_assert!(d.weight() <= s.n);
                prop_assert_eq!(diff_to_subset(d.symbols(), s.n).unwrap(), s);
            }

            #[test]
            fn multiset_roundtrips(m in multiset_strategy()) {
                let f = multiset_to_freq(&m).unwrap();
                prop_assert!(f.weight() <= m.k);
                prop_assert_eq!(freq_to_multiset(f.symbols(), m.k).unwrap(), m.clone());
                let d = multiset_to_diff(&m).unwrap();
                prop_assert!(d.weight() < m.n);
                prop_assert_eq!(diff_to_multiset(d.symbols(), m.n).unwrap(), m);
            }
        }
    }
}
