//! Cycle-joining trees under the first-non-zero parent rules.
//!
//! Trees are only built at desk scale, as a slow reference for the streaming
//! engines. Conjugate pairs are not stored: each is derived from a child's
//! label and change index when needed.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grandmama::cycle_len;
use crate::msr::fixed_weight_necklaces;
use crate::ucycle::{Engine, UCycle};
use crate::words::{
    enumerate_bounded_necklaces, is_necklace, necklace_of, necklace_prefix_len, render, weight,
    ParamSet, Symbol, Word,
};

pub const DEFAULT_NODE_CAP: u128 = 1_000_000;

/// The shift register whose cycles are the tree nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeedbackKind {
    /// Pure cycling register, `f(a_1..a_n) = a_1`.
    Pcr,
    /// Missing symbol register, `f(a_1..a_n) = w - weight(a_1..a_n)`.
    Msr,
}

impl FeedbackKind {
    pub fn feedback(self, params: &ParamSet, window: &[Symbol]) -> Symbol {
        match self {
            FeedbackKind::Pcr => window[0],
            FeedbackKind::Msr => params.w - weight(window),
        }
    }
}

/// Two windows differing only in their first symbol. `sigma` lies in the
/// parent cycle and `sigma_hat` in the child cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugatePair {
    pub sigma: Vec<Symbol>,
    pub sigma_hat: Vec<Symbol>,
}

impl ConjugatePair {
    /// The shared length-(n-1) suffix.
    pub fn suffix(&self) -> &[Symbol] {
        &self.sigma[1..]
    }
}

/// Parent of a non-root PCR node: decrement the first non-zero symbol.
pub fn pcr_parent(node: &[Symbol]) -> Result<Vec<Symbol>> {
    if !is_necklace(node) {
        return Err(Error::NotANecklace(render(node)));
    }
    let j = node
        .iter()
        .position(|&s| s != 0)
        .ok_or_else(|| Error::RootHasNoParent(render(node)))?;
    let mut parent = node.to_vec();
    parent[j] -= 1;
    Ok(parent)
}

/// Parent of a non-root MSR node (length `n+1`): decrement the first
/// non-zero symbol and increment the one after it.
pub fn msr_parent(node: &[Symbol]) -> Result<Vec<Symbol>> {
    if !is_necklace(node) {
        return Err(Error::NotANecklace(render(node)));
    }
    let j = node.iter().position(|&s| s != 0);
    match j {
        Some(j) if j + 1 < node.len() => {
            let mut parent = node.to_vec();
            parent[j] -= 1;
            parent[j + 1] += 1;
            Ok(parent)
        }
        _ => Err(Error::RootHasNoParent(render(node))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub label: Vec<Symbol>,
    pub parent: Option<usize>,
    /// Children sorted by change index.
    pub children: Vec<usize>,
    /// 1-based index where this node's label differs from its parent's.
    pub change_index: usize,
}

#[derive(Debug, Clone)]
pub struct CycleTree {
    pub kind: FeedbackKind,
    pub params: ParamSet,
    nodes: Vec<TreeNode>,
    index: HashMap<Vec<Symbol>, usize>,
}

/// Builds the first-non-zero tree with the default node cap.
pub fn build_tree(kind: FeedbackKind, params: ParamSet) -> Result<CycleTree> {
    build_tree_with_cap(kind, params, DEFAULT_NODE_CAP)
}

pub fn build_tree_with_cap(kind: FeedbackKind, params: ParamSet, cap: u128) -> Result<CycleTree> {
    let labels: Vec<Vec<Symbol>> = match kind {
        FeedbackKind::Pcr => {
            let space = u128::from(params.t).pow(params.n as u32);
            if space > cap {
                return Err(Error::CapExceeded {
                    what: format!("candidate node set for {params}"),
                    size: space,
                    cap,
                });
            }
            enumerate_bounded_necklaces(&params)
                .into_iter()
                .map(Word::into_symbols)
                .collect()
        }
        FeedbackKind::Msr => {
            if params.w >= params.t {
                return Err(Error::MsrWeightTooLarge {
                    w: params.w,
                    t: params.t,
                });
            }
            let space = binomial(params.w as u64 + params.n as u64, params.n as u64);
            if space > cap {
                return Err(Error::CapExceeded {
                    what: format!("candidate node set for MSR {params}"),
                    size: space,
                    cap,
                });
            }
            fixed_weight_necklaces(params)?
        }
    };

    let len = labels[0].len();
    let index: HashMap<Vec<Symbol>, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let mut nodes: Vec<TreeNode> = labels
        .into_iter()
        .map(|label| TreeNode {
            label,
            parent: None,
            children: Vec::new(),
            change_index: len,
        })
        .collect();
    for id in 0..nodes.len() {
        let label = &nodes[id].label;
        let parent = match kind {
            FeedbackKind::Pcr => pcr_parent(label),
            FeedbackKind::Msr => msr_parent(label),
        };
        let parent = match parent {
            Ok(p) => p,
            Err(Error::RootHasNoParent(_)) => continue,
            Err(e) => return Err(e),
        };
        let change = label.iter().position(|&s| s != 0).unwrap() + 1;
        let pid = *index.get(&parent).unwrap_or_else(|| {
            panic!(
                "parent {} of {} is not a node",
                render(&parent),
                render(label)
            )
        });
        nodes[id].parent = Some(pid);
        nodes[id].change_index = change;
        nodes[pid].children.push(id);
    }
    let changes: Vec<usize> = nodes.iter().map(|n| n.change_index).collect();
    for node in &mut nodes {
        node.children.sort_by_key(|&c| changes[c]);
    }
    Ok(CycleTree {
        kind,
        params,
        nodes,
        index,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

impl CycleTree {
    /// Assembles a tree from `(label, parent, change_index)` triples without
    /// checking any parent rule.
    pub fn from_nodes(
        kind: FeedbackKind,
        params: ParamSet,
        spec: Vec<(Vec<Symbol>, Option<usize>, usize)>,
    ) -> Self {
        let mut nodes: Vec<TreeNode> = spec
            .iter()
            .map(|(label, parent, change)| TreeNode {
                label: label.clone(),
                parent: *parent,
                children: Vec::new(),
                change_index: *change,
            })
            .collect();
        for (id, (_, parent, _)) in spec.iter().enumerate() {
            if let Some(p) = parent {
                nodes[*p].children.push(id);
            }
        }
        let changes: Vec<usize> = nodes.iter().map(|n| n.change_index).collect();
        for node in &mut nodes {
            node.children.sort_by_key(|&c| changes[c]);
        }
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.label.clone(), i))
            .collect();
        CycleTree {
            kind,
            params,
            nodes,
            index,
        }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.nodes
            .iter()
            .position(|n| n.parent.is_none())
            .expect("tree has a root")
    }

    pub fn node_id(&self, label: &[Symbol]) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    /// The conjugate pair joining `child` to its parent.
    pub fn edge_pair(&self, child: usize) -> Option<ConjugatePair> {
        let node = &self.nodes[child];
        node.parent?;
        let n = self.params.n;
        let c = node.change_index - 1;
        let (sigma_hat, bump) = match self.kind {
            FeedbackKind::Pcr => {
                let mut rot = node.label[c..].to_vec();
                rot.extend_from_slice(&node.label[..c]);
                (rot, false)
            }
            FeedbackKind::Msr => {
                let start = c + 1;
                let mut rot = node.label[start..].to_vec();
                rot.extend_from_slice(&node.label[..start]);
                rot.truncate(n);
                (rot, true)
            }
        };
        let mut sigma = sigma_hat.clone();
        if bump {
            sigma[0] += 1;
        } else {
            sigma[0] -= 1;
        }
        Some(ConjugatePair { sigma, sigma_hat })
    }

    /// Node whose cycle contains the window `alpha`.
    pub fn node_of_window(&self, alpha: &[Symbol]) -> Option<usize> {
        let label = match self.kind {
            FeedbackKind::Pcr => necklace_of(alpha),
            FeedbackKind::Msr => {
                let mut full = alpha.to_vec();
                full.push(self.params.w.checked_sub(weight(alpha))?);
                necklace_of(&full)
            }
        };
        self.node_id(&label)
    }

    pub fn check_chain_property(&self) -> bool {
        check_chain_property(self)
    }

    pub fn check_periodic_leaves(&self) -> bool {
        check_periodic_leaves(self)
    }

    pub fn generic_successor(&self, alpha: &[Symbol]) -> Result<Symbol> {
        generic_successor(self, alpha)
    }

    /// DOT rendering with change indices and conjugate pairs.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph cycle_joining_tree {{");
        let _ = writeln!(out, "  node [shape=box];");
        for (id, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{id} [label=\"{} (c={})\"];",
                render(&node.label),
                node.change_index
            );
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if let (Some(p), Some(pair)) = (node.parent, self.edge_pair(id)) {
                let _ = writeln!(
                    out,
                    "  n{p} -> n{id} [label=\"({}, {})\"];",
                    render(&pair.sigma),
                    render(&pair.sigma_hat)
                );
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self) -> TreeExport {
        TreeExport {
            kind: self.kind,
            params: self.params,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, node)| ExportNode {
                    id,
                    label: render(&node.label),
                    change_index: node.change_index,
                    parent: node.parent,
                    children: node.children.clone(),
                    aperiodic_prefix_len: necklace_prefix_len(&node.label),
                    pair: self.edge_pair(id).map(|p| ExportPair {
                        sigma: render(&p.sigma),
                        sigma_hat: render(&p.sigma_hat),
                    }),
                })
                .collect(),
        }
    }
}

/// JSON-friendly view of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub kind: FeedbackKind,
    pub params: ParamSet,
    pub nodes: Vec<ExportNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportNode {
    pub id: usize,
    pub label: String,
    pub change_index: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub aperiodic_prefix_len: Option<usize>,
    pub pair: Option<ExportPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportPair {
    pub sigma: String,
    pub sigma_hat: String,
}

/// No node has two children whose joining pairs share a suffix.
pub fn check_chain_property(tree: &CycleTree) -> bool {
    tree.nodes.iter().all(|node| {
        let mut suffixes: Vec<Vec<Symbol>> = node
            .children
            .iter()
            .filter_map(|&c| tree.edge_pair(c))
            .map(|p| p.suffix().to_vec())
            .collect();
        let before = suffixes.len();
        suffixes.sort();
        suffixes.dedup();
        suffixes.len() == before
    })
}

/// Every periodic node other than the root is a leaf.
pub fn check_periodic_leaves(tree: &CycleTree) -> bool {
    tree.nodes.iter().all(|node| {
        let len = node.label.len();
        let periodic = necklace_prefix_len(&node.label).is_some_and(|p| p < len);
        node.parent.is_none() || !periodic || node.children.is_empty()
    })
}

/// The chain-aware successor `h`: inside a chain of conjugate pairs a window
/// hands over to the feedback value of the next window in the chain (the
/// last wraps to the first); every other window follows the register.
pub fn generic_successor(tree: &CycleTree, alpha: &[Symbol]) -> Result<Symbol> {
    let params = &tree.params;
    let in_domain =
        params.contains(alpha) && (tree.kind == FeedbackKind::Pcr || params.w < params.t);
    let node = in_domain.then(|| tree.node_of_window(alpha)).flatten();
    let Some(node) = node else {
        return Err(Error::NotInSet {
            word: render(alpha),
            set: format!("{:?} tree over {params}", tree.kind),
        });
    };
    let f = |w: &[Symbol]| tree.kind.feedback(params, w);

    for &child in &tree.nodes[node].children {
        let pair = tree.edge_pair(child).unwrap();
        if pair.sigma == alpha {
            return Ok(f(&pair.sigma_hat));
        }
    }
    match tree.edge_pair(node) {
        Some(pair) if pair.sigma_hat == alpha => {
            // Last link of a chain: climb to its first window.
            let mut first = pair.sigma;
            let mut cur = tree.nodes[node].parent.unwrap();
            while let Some(up) = tree.edge_pair(cur) {
                if up.sigma_hat != first {
                    break;
                }
                first = up.sigma;
                cur = tree.nodes[cur].parent.unwrap();
            }
            Ok(f(&first))
        }
        _ => Ok(f(alpha)),
    }
}

/// The cycle induced by [`generic_successor`] starting from `0^n`.
pub fn generic_cycle(tree: &CycleTree) -> Result<UCycle> {
    let params = tree.params;
    let len = cycle_len(params);
    let mut symbols = vec![0; params.n];
    let mut window = vec![0; params.n];
    while symbols.len() < len {
        let s = generic_successor(tree, &window)?;
        window.rotate_left(1);
        *window.last_mut().unwrap() = s;
        symbols.push(s);
    }
    symbols.truncate(len);
    Ok(UCycle::new(symbols, params, Engine::Generic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grandmama::generate_concat;
    use crate::msr::generate_msr;
    use crate::words::colex_increment;

    fn p(t: Symbol, n: usize, w: u32) -> ParamSet {
        ParamSet::new(t, n, w).unwrap()
    }

    fn word(s: &str) -> Vec<Symbol> {
        s.chars().map(|c| c.to_digit(10).unwrap()).collect()
    }

    fn edges(tree: &CycleTree) -> Vec<(String, String)> {
        let mut out: Vec<_> = tree
            .nodes()
            .iter()
            .filter_map(|n| {
                n.parent
                    .map(|p| (render(&n.label), render(&tree.node(p).label)))
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn pcr_parent_examples() {
        assert_eq!(pcr_parent(&word("001")).unwrap(), word("000"));
        assert_eq!(pcr_parent(&word("112")).unwrap(), word("012"));
        assert_eq!(pcr_parent(&word("021")).unwrap(), word("011"));
        assert!(matches!(
            pcr_parent(&word("000")),
            Err(Error::RootHasNoParent(_))
        ));
        assert!(matches!(
            pcr_parent(&word("100")),
            Err(Error::NotANecklace(_))
        ));
    }

    #[test]
    fn msr_parent_examples() {
        assert_eq!(msr_parent(&word("0013")).unwrap(), word("0004"));
        assert_eq!(msr_parent(&word("0112")).unwrap(), word("0022"));
        assert_eq!(msr_parent(&word("0211")).unwrap(), word("0121"));
        assert!(matches!(
            msr_parent(&word("0004")),
            Err(Error::RootHasNoParent(_))
        ));
    }

    #[test]
    fn figure_one_tree() {
        let tree = build_tree(FeedbackKind::Pcr, p(5, 3, 4)).unwrap();
        assert_eq!(tree.len(), 13);
        assert_eq!(render(&tree.node(tree.root()).label), "000");
        let e = edges(&tree);
        for (child, parent) in [
            ("001", "000"),
            ("002", "001"),
            ("003", "002"),
            ("004", "003"),
            ("011", "001"),
            ("111", "011"),
            ("021", "011"),
            ("031", "021"),
            ("012", "002"),
            ("112", "012"),
            ("022", "012"),
            ("013", "003"),
        ] {
            assert!(
                e.contains(&(child.to_string(), parent.to_string())),
                "{child}"
            );
        }
        assert!(tree.check_chain_property());
        assert!(tree.check_periodic_leaves());
        let periodic: Vec<_> = tree
            .nodes()
            .iter()
            .filter(|n| necklace_prefix_len(&n.label) != Some(3))
            .map(|n| render(&n.label))
            .collect();
        assert_eq!(periodic, ["000", "111"]);
    }

    #[test]
    fn figure_two_tree() {
        let tree = build_tree(FeedbackKind::Msr, p(5, 3, 4)).unwrap();
        assert_eq!(tree.len(), 10);
        assert_eq!(render(&tree.node(tree.root()).label), "0004");
        assert!(tree.nodes().iter().all(|n| weight(&n.label) == 4));
        let e = edges(&tree);
        for (child, parent) in [
            ("0013", "0004"),
            ("0022", "0013"),
            ("0031", "0022"),
            ("0103", "0013"),
            ("0112", "0022"),
            ("0121", "0031"),
            ("0202", "0112"),
            ("0211", "0121"),
            ("1111", "0211"),
        ] {
            assert!(
                e.contains(&(child.to_string(), parent.to_string())),
                "{child}"
            );
        }
        assert!(tree.check_chain_property());
    }

    #[test]
    fn small_path_tree() {
        let tree = build_tree(FeedbackKind::Pcr, p(2, 2, 2)).unwrap();
        assert_eq!(
            edges(&tree),
            [
                ("01".to_string(), "00".to_string()),
                ("11".to_string(), "01".to_string())
            ]
        );
    }

    #[test]
    fn msr_tree_requires_small_weight() {
        assert!(matches!(
            build_tree(FeedbackKind::Msr, p(3, 3, 3)),
            Err(Error::MsrWeightTooLarge { .. })
        ));
        assert!(matches!(
            build_tree_with_cap(FeedbackKind::Pcr, p(10, 7, 3), 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn chain_property_violation_detected() {
        let params = p(3, 3, 6);
        let tree = CycleTree::from_nodes(
            FeedbackKind::Pcr,
            params,
            vec![
                (word("000"), None, 3),
                (word("001"), Some(0), 3),
                (word("002"), Some(0), 3),
            ],
        );
        assert!(!tree.check_chain_property());
        let single = CycleTree::from_nodes(FeedbackKind::Pcr, params, vec![(word("000"), None, 3)]);
        assert!(single.check_chain_property());
        assert!(single.check_periodic_leaves());
    }

    #[test]
    fn periodic_leaves_binary() {
        let tree = build_tree(FeedbackKind::Pcr, p(2, 4, 4)).unwrap();
        assert!(tree.check_periodic_leaves());
        assert!(tree.check_chain_property());
    }

    #[test]
    fn generic_successor_examples() {
        let tree = build_tree(FeedbackKind::Pcr, p(5, 3, 4)).unwrap();
        for (alpha, next) in [("000", 1), ("100", 2), ("200", 3), ("300", 4), ("400", 0)] {
            assert_eq!(
                tree.generic_successor(&word(alpha)).unwrap(),
                next,
                "{alpha}"
            );
        }
        // 202 is in no conjugate pair: the register repeats its first symbol.
        assert_eq!(tree.generic_successor(&word("202")).unwrap(), 2);
        assert!(tree.generic_successor(&word("444")).is_err());

        let msr = build_tree(FeedbackKind::Msr, p(5, 3, 4)).unwrap();
        assert_eq!(msr.generic_successor(&word("000")).unwrap(), 4);
    }

    #[test]
    fn generic_cycles_match_engines() {
        for params in [p(5, 3, 4), p(4, 3, 3), p(3, 4, 5), p(2, 5, 3), p(4, 4, 3)] {
            let tree = build_tree(FeedbackKind::Pcr, params).unwrap();
            assert_eq!(
                generic_cycle(&tree).unwrap().symbols,
                generate_concat(params).symbols
            );
            if params.w < params.t {
                let tree = build_tree(FeedbackKind::Msr, params).unwrap();
                assert_eq!(
                    generic_cycle(&tree).unwrap().symbols,
                    generate_msr(params).unwrap().symbols
                );
            }
        }
    }

    #[test]
    fn pcr_lemma_properties() {
        for (t, n, w) in [(2, 6, 6), (3, 4, 8), (4, 3, 5), (5, 3, 4), (3, 6, 4)] {
            let tree = build_tree(FeedbackKind::Pcr, p(t, n, w)).unwrap();
            let mut periodic_parents = Vec::new();
            for (id, node) in tree.nodes().iter().enumerate() {
                let Some(parent) = node.parent else { continue };
                let plabel = &tree.node(parent).label;
                assert!(is_necklace(plabel));
                let mut unit = vec![0; n];
                unit[n - 1] = 1;
                if node.label != unit {
                    assert_eq!(necklace_prefix_len(plabel), Some(n), "{id}");
                }
                if necklace_prefix_len(&node.label) != Some(n) {
                    periodic_parents.push(parent);
                }
            }
            let before = periodic_parents.len();
            periodic_parents.sort();
            periodic_parents.dedup();
            assert_eq!(before, periodic_parents.len());
        }
    }

    #[test]
    fn every_window_has_a_node() {
        let params = p(4, 3, 5);
        let tree = build_tree(FeedbackKind::Pcr, params).unwrap();
        let mut w = vec![0; 3];
        loop {
            if params.contains(&w) {
                assert!(tree.node_of_window(&w).is_some());
            }
            if !colex_increment(&mut w, 4) {
                break;
            }
        }
    }

    #[test]
    fn exports() {
        let tree = build_tree(FeedbackKind::Pcr, p(2, 2, 2)).unwrap();
        let dot = tree.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 2);
        let json = serde_json::to_value(tree.export()).unwrap();
        assert_eq!(json["nodes"].as_array().unwrap().len(), 3);
        assert_eq!(json["kind"], "pcr");
        assert_eq!(json["nodes"][1]["pair"]["sigma"], "00");
        assert_eq!(json["nodes"][1]["pair"]["sigma_hat"], "10");
    }
}
