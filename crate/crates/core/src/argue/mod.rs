//! Argumentation over equivalence-equipped Dung models: each node carries a
//! single ID annotation, nodes sharing an ID are equivalent, and every edge
//! is an attack.

mod random;
mod spec;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::AnnotatedGraph;

pub use random::{random_distinct_model, random_model, seeded_distinct_models, seeded_models, RandomParams};
pub use spec::{ExtensionSpec, Mu, Sigma, SpecError, Tau};

pub const ATTACKS: &str = "attacks";
/// Default limit on node count for brute-force enumeration.
pub const DEFAULT_BOUND: usize = 20;
const MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A node without exactly one ID annotation.
    NodeIds { node: String, count: usize },
    /// An edge whose annotation set is not exactly `{attacks}`.
    EdgeAnnotation { from: String, to: String },
    TooManyNodes(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NodeIds { node, count } => {
                write!(f, "node {node} carries {count} annotations, expected exactly one ID")
            }
            Violation::EdgeAnnotation { from, to } => {
                write!(f, "edge {from} -> {to} is not annotated exactly {{{ATTACKS}}}")
            }
            Violation::TooManyNodes(n) => write!(f, "{n} nodes; at most {MAX_NODES} are supported"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArgError {
    #[error("not an equivalence-equipped Dung model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("model has {nodes} nodes; the enumeration bound is {bound}")]
    BoundExceeded { nodes: usize, bound: usize },
}

/// Checks the model invariants. A graph whose node annotations are all
/// empty is accepted as a plain Dung model where every node is only
/// equivalent to itself.
pub fn validate(g: &AnnotatedGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.node_count() > MAX_NODES {
        out.push(Violation::TooManyNodes(g.node_count()));
    }
    let plain = g.node_entries().all(|(_, a)| a.is_empty());
    if !plain {
        for (n, a) in g.node_entries() {
            if a.len() != 1 {
                out.push(Violation::NodeIds {
                    node: n.clone(),
                    count: a.len(),
                });
            }
        }
    }
    for ((a, b), anno) in g.edge_entries() {
        if anno.len() != 1 || !anno.contains(ATTACKS) {
            out.push(Violation::EdgeAnnotation {
                from: a.clone(),
                to: b.clone(),
            });
        }
    }
    out
}

/// A set of nodes of a particular model, as a bitmask over its sorted nodes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }
}

#[derive(Debug, Clone)]
pub struct EquivDungModel {
    graph: AnnotatedGraph,
    names: Vec<String>,
    /// Per node: the nodes with an edge into it.
    preds: Vec<u64>,
    /// Per node: its equivalence class.
    class: Vec<u64>,
}

impl EquivDungModel {
    pub fn new(graph: AnnotatedGraph) -> Result<Self, ArgError> {
        let v = validate(&graph);
        if !v.is_empty() {
            return Err(ArgError::Invalid(v));
        }
        let names: Vec<String> = graph.nodes().cloned().collect();
        let pos = |n: &String| names.binary_search(n).expect("edge endpoints are nodes");
        let mut preds = vec![0u64; names.len()];
        for (a, b) in graph.edges() {
            preds[pos(b)] |= 1 << pos(a);
        }
        let id = |n: &String| graph.node_annotations(n).and_then(|a| a.iter().next()).cloned();
        let class = names
            .iter()
            .enumerate()
            .map(|(i, n)| match id(n) {
                None => 1 << i,
                Some(x) => names
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| id(m).as_ref() == Some(&x))
                    .fold(0, |acc, (j, _)| acc | 1 << j),
            })
            .collect();
        Ok(EquivDungModel {
            graph,
            names,
            preds,
            class,
        })
    }

    pub fn graph(&self) -> &AnnotatedGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, node: &str) -> Result<usize, ArgError> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(node))
            .map_err(|_| ArgError::UnknownNode(node.to_string()))
    }

    pub fn all(&self) -> NodeSet {
        NodeSet(if self.len() == 64 { u64::MAX } else { (1 << self.len()) - 1 })
    }

    pub fn set<S: AsRef<str>>(&self, nodes: &[S]) -> Result<NodeSet, ArgError> {
        let mut s = NodeSet::EMPTY;
        for n in nodes {
            s.insert(self.index(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn set_names(&self, s: NodeSet) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn attacks(&self, from: usize, to: usize) -> bool {
        self.preds[to] >> from & 1 == 1
    }

    /// The nodes sharing an ID with some member of `s`.
    pub fn closure(&self, s: NodeSet) -> NodeSet {
        NodeSet(s.iter().fold(0, |acc, i| acc | self.class[i]))
    }

    pub fn is_conflict_free(&self, s: NodeSet, sigma: Sigma) -> bool {
        let t = match sigma {
            Sigma::Simple => s,
            Sigma::Wide => self.closure(s),
        };
        t.iter().all(|i| self.preds[i] & t.0 == 0)
    }

    fn simple_defends(&self, s: NodeSet, u: usize) -> bool {
        NodeSet(self.preds[u])
            .iter()
            .all(|a| self.preds[a] & s.0 != 0)
    }

    pub fn defends(&self, s: NodeSet, u: usize, sigma: Sigma) -> bool {
        match sigma {
            Sigma::Simple => self.simple_defends(s, u),
            Sigma::Wide => NodeSet(self.class[u])
                .iter()
                .all(|v| self.simple_defends(s, v)),
        }
    }

    /// Every node `s` σ-defends.
    pub fn defended(&self, s: NodeSet, sigma: Sigma) -> NodeSet {
        let mut out = NodeSet::EMPTY;
        for u in 0..self.len() {
            if self.defends(s, u, sigma) {
                out.insert(u);
            }
        }
        out
    }

    pub fn is_admissible(&self, s: NodeSet, sigma: Sigma) -> bool {
        self.is_conflict_free(s, sigma) && s.iter().all(|u| self.defends(s, u, sigma))
    }

    pub fn is_closed(&self, s: NodeSet, sigma: Sigma, tau: Tau) -> bool {
        let defence = || self.defended(s, sigma).is_subset(s);
        let equivalence = || self.closure(s) == s;
        match tau {
            Tau::Defence => defence(),
            Tau::Equivalence => equivalence(),
            Tau::Both => defence() && equivalence(),
        }
    }

    pub fn is_complete(&self, s: NodeSet, sigma: Sigma, tau: Tau) -> bool {
        self.is_admissible(s, sigma) && self.is_closed(s, sigma, tau)
    }

    /// Every node outside `s` has an incoming edge from `s`.
    pub fn attacks_rest(&self, s: NodeSet) -> bool {
        (0..self.len()).all(|u| s.contains(u) || self.preds[u] & s.0 != 0)
    }

    pub fn is_extension(&self, s: NodeSet, spec: ExtensionSpec) -> bool {
        let ExtensionSpec { sigma, tau, mu } = spec;
        if mu == Mu::Admissible {
            return self.is_admissible(s, sigma);
        }
        if !self.is_complete(s, sigma, tau) {
            return false;
        }
        match mu {
            Mu::Admissible | Mu::Complete => true,
            Mu::Stable => self.attacks_rest(s),
            Mu::Preferred => {
                let rest = self.all().0 & !s.0;
                !subsets(rest)
                    .filter(|&x| x != 0)
                    .any(|x| self.is_complete(NodeSet(s.0 | x), sigma, tau))
            }
            Mu::Grounded => !subsets(s.0)
                .filter(|&x| x != s.0)
                .any(|x| self.is_complete(NodeSet(x), sigma, tau)),
        }
    }

    fn check_bound(&self, bound: usize) -> Result<(), ArgError> {
        if self.len() > bound {
            Err(ArgError::BoundExceeded {
                nodes: self.len(),
                bound,
            })
        } else {
            Ok(())
        }
    }

    /// Every subset passing `pred`, in increasing bitmask order.
    fn scan(&self, pred: impl Fn(NodeSet) -> bool + Sync) -> Vec<NodeSet> {
        (0..=self.all().0)
            .into_par_iter()
            .map(NodeSet)
            .filter(|&s| pred(s))
            .collect()
    }

    /// All extensions of the given kind, ordered by size and then by names.
    pub fn enumerate(&self, spec: ExtensionSpec, bound: usize) -> Result<Vec<NodeSet>, ArgError> {
        self.check_bound(bound)?;
        let ExtensionSpec { sigma, tau, mu } = spec;
        let mut out = match mu {
            Mu::Admissible => self.scan(|s| self.is_admissible(s, sigma)),
            Mu::Complete => self.scan(|s| self.is_complete(s, sigma, tau)),
            Mu::Stable => self.scan(|s| self.is_complete(s, sigma, tau) && self.attacks_rest(s)),
            Mu::Preferred | Mu::Grounded => {
                let complete = self.scan(|s| self.is_complete(s, sigma, tau));
                let keep = |s: NodeSet| {
                    !complete.iter().any(|&t| {
                        t != s
                            && if mu == Mu::Preferred {
                                s.is_subset(t)
                            } else {
                                t.is_subset(s)
                            }
                    })
                };
                complete.iter().copied().filter(|&s| keep(s)).collect()
            }
        };
        self.sort(&mut out);
        Ok(out)
    }

    pub fn sort(&self, sets: &mut [NodeSet]) {
        sets.sort_by_cached_key(|&s| (s.len(), self.set_names(s)));
    }

    /// The ⊆-minimal fixpoints reachable from ∅ by repeatedly adding any
    /// nonempty selection of newly wide-defended nodes, stopping at wide
    /// defence-complete sets.
    pub fn grounded_via_lfp(&self, bound: usize) -> Result<Vec<NodeSet>, ArgError> {
        self.check_bound(bound)?;
        let complete = |s| self.is_complete(s, Sigma::Wide, Tau::Defence);
        let mut seen = HashSet::from([NodeSet::EMPTY]);
        let mut queue = VecDeque::from([NodeSet::EMPTY]);
        let mut fixpoints = BTreeSet::new();
        while let Some(s) = queue.pop_front() {
            if complete(s) {
                fixpoints.insert(s);
                continue;
            }
            let new = self.defended(s, Sigma::Wide).0 & !s.0;
            for add in subsets(new).filter(|&x| x != 0) {
                let t = NodeSet(s.0 | add);
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<NodeSet> = fixpoints
            .iter()
            .copied()
            .filter(|&s| !fixpoints.iter().any(|&t| t != s && t.is_subset(s)))
            .collect();
        self.sort(&mut out);
        Ok(out)
    }
}

/// All submasks of `mask`, including 0 and `mask`.
fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & mask);
        Some(cur)
    })
}
