//! Object-level and skeleton annotated graphs.
//!
//! An annotated graph is a directed graph over string nodes together with a
//! total map from nodes and edges to finite sets of string annotations. A
//! skeleton graph may additionally use numbered placeholders `*1..*n` in
//! place of nodes or annotations; substituting values for the placeholders
//! yields an object-level graph, which is then compared against a model by
//! the order [`leq`].

mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use json::{parse_object_graph, parse_skeleton_graph, GraphDoc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node `{0}` declared more than once")]
    DuplicateNode(String),
    #[error("edge ({0}, {1}) declared more than once")]
    DuplicateEdge(String, String),
    #[error("edge ({0}, {1}) refers to an undeclared node")]
    DanglingEdge(String, String),
    #[error("placeholder *{missing} is absent although *{max} occurs")]
    DegreeGap { max: usize, missing: usize },
    #[error("placeholder `{0}` is not allowed in an object-level graph")]
    PlaceholderInObjectGraph(String),
    #[error("malformed placeholder `{0}` (placeholders are *1, *2, ...)")]
    BadPlaceholder(String),
    #[error("expected {expected} arguments for a degree-{expected} skeleton, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substitution maps two distinct skeleton nodes to `{0}`")]
    Collision(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// A directed graph whose nodes and edges carry finite label sets.
///
/// The annotation map is total by construction: every node and every edge
/// has an entry, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph<T: Ord> {
    nodes: BTreeMap<T, BTreeSet<T>>,
    edges: BTreeMap<(T, T), BTreeSet<T>>,
}

/// An object-level annotated graph: nodes and annotations are plain strings.
pub type AnnotatedGraph = LabeledGraph<String>;

/// A skeleton annotated graph: nodes and annotations may be placeholders.
pub type SkeletonGraph = LabeledGraph<Skel>;

/// A skeleton statement or skeleton annotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Skel {
    Lit(String),
    /// `*i`, with `i >= 1`.
    Hole(usize),
}

impl Skel {
    pub fn lit(s: impl Into<String>) -> Self {
        Skel::Lit(s.into())
    }

    pub fn hole_index(&self) -> Option<usize> {
        match self {
            Skel::Hole(i) => Some(*i),
            Skel::Lit(_) => None,
        }
    }

    /// Parses the JSON encoding: `*i` is a placeholder, anything else a literal.
    pub fn parse(s: &str) -> Result<Self, GraphError> {
        match placeholder_index(s) {
            None => Ok(Skel::Lit(s.to_string())),
            Some(Ok(i)) => Ok(Skel::Hole(i)),
            Some(Err(e)) => Err(e),
        }
    }

    fn resolve<'a>(&'a self, args: &'a [String]) -> &'a str {
        match self {
            Skel::Lit(s) => s,
            Skel::Hole(i) => &args[i - 1],
        }
    }
}

impl fmt::Display for Skel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Skel::Lit(s) => f.write_str(s),
            Skel::Hole(i) => write!(f, "*{i}"),
        }
    }
}

/// Recognises the placeholder syntax `*<digits>`.
///
/// Returns `None` for strings that are not placeholder-shaped at all and
/// `Some(Err)` for `*0` or indices with leading zeros.
pub(crate) fn placeholder_index(s: &str) -> Option<Result<usize, GraphError>> {
    let digits = s.strip_prefix('*')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.starts_with('0') {
        return Some(Err(GraphError::BadPlaceholder(s.to_string())));
    }
    Some(
        digits
            .parse::<usize>()
            .map_err(|_| GraphError::BadPlaceholder(s.to_string())),
    )
}

impl<T: Ord> Default for LabeledGraph<T> {
    fn default() -> Self {
        LabeledGraph {
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone + fmt::Display> LabeledGraph<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node<I>(&mut self, id: T, anno: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = T>,
    {
        if self.nodes.contains_key(&id) {
            return Err(GraphError::DuplicateNode(id.to_string()));
        }
        self.nodes.insert(id, anno.into_iter().collect());
        Ok(())
    }

    pub fn add_edge<I>(&mut self, from: T, to: T, anno: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = T>,
    {
        if !self.nodes.contains_key(&from) || !self.nodes.contains_key(&to) {
            return Err(GraphError::DanglingEdge(from.to_string(), to.to_string()));
        }
        let key = (from, to);
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(key.0.to_string(), key.1.to_string()));
        }
        self.edges.insert(key, anno.into_iter().collect());
        Ok(())
    }

    /// Builder form of [`add_node`](Self::add_node).
    pub fn with_node<I>(mut self, id: T, anno: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = T>,
    {
        self.add_node(id, anno)?;
        Ok(self)
    }

    /// Builder form of [`add_edge`](Self::add_edge).
    pub fn with_edge<I>(mut self, from: T, to: T, anno: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = T>,
    {
        self.add_edge(from, to, anno)?;
        Ok(self)
    }

    /// Removes a node together with its incident edges.
    pub fn remove_node(&mut self, id: &T) -> bool {
        if self.nodes.remove(id).is_none() {
            return false;
        }
        self.edges.retain(|(a, b), _| a != id && b != id);
        true
    }

    pub fn remove_edge(&mut self, from: &T, to: &T) -> bool {
        self.edges.remove(&(from.clone(), to.clone())).is_some()
    }

    /// Mutable access to the annotation set of a node.
    pub fn node_annotations_mut(&mut self, id: &T) -> Option<&mut BTreeSet<T>> {
        self.nodes.get_mut(id)
    }

    /// Mutable access to the annotation set of an edge.
    pub fn edge_annotations_mut(&mut self, from: &T, to: &T) -> Option<&mut BTreeSet<T>> {
        self.edges.get_mut(&(from.clone(), to.clone()))
    }
}

impl<T: Ord> LabeledGraph<T> {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &T> {
        self.nodes.keys()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&T, &T)> {
        self.edges.keys().map(|(a, b)| (a, b))
    }

    pub fn contains_node(&self, id: &T) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn node_entries(&self) -> impl Iterator<Item = (&T, &BTreeSet<T>)> {
        self.nodes.iter()
    }

    pub fn edge_entries(&self) -> impl Iterator<Item = (&(T, T), &BTreeSet<T>)> {
        self.edges.iter()
    }

    pub fn node_annotations(&self, id: &T) -> Option<&BTreeSet<T>> {
        self.nodes.get(id)
    }

    /// Every label used as an annotation on some node or edge.
    pub fn annotations(&self) -> BTreeSet<&T> {
        self.nodes
            .values()
            .chain(self.edges.values())
            .flatten()
            .collect()
    }
}

impl<T: Ord + Clone> LabeledGraph<T> {
    pub fn contains_edge(&self, from: &T, to: &T) -> bool {
        self.edges.contains_key(&(from.clone(), to.clone()))
    }

    pub fn edge_annotations(&self, from: &T, to: &T) -> Option<&BTreeSet<T>> {
        self.edges.get(&(from.clone(), to.clone()))
    }

    /// Applies `f` to every node and annotation.
    ///
    /// Fails with [`GraphError::Collision`] when two distinct nodes are sent
    /// to the same value; annotation sets simply collapse.
    pub fn try_map<U, F>(&self, mut f: F) -> Result<LabeledGraph<U>, GraphError>
    where
        U: Ord + Clone + fmt::Display,
        F: FnMut(&T) -> U,
    {
        let mut out = LabeledGraph::<U>::new();
        for (id, anno) in &self.nodes {
            let mapped = f(id);
            if out.nodes.contains_key(&mapped) {
                return Err(GraphError::Collision(mapped.to_string()));
            }
            let anno = anno.iter().map(&mut f).collect();
            out.nodes.insert(mapped, anno);
        }
        for ((a, b), anno) in &self.edges {
            let key = (f(a), f(b));
            let anno = anno.iter().map(&mut f).collect();
            out.edges.insert(key, anno);
        }
        Ok(out)
    }
}

impl AnnotatedGraph {
    /// The domain of discourse: every node together with every annotation.
    pub fn domain(&self) -> BTreeSet<String> {
        let mut d: BTreeSet<String> = self.nodes.keys().cloned().collect();
        d.extend(self.annotations().into_iter().cloned());
        d
    }

    /// Views this graph as a degree-0 skeleton graph.
    pub fn to_skeleton(&self) -> SkeletonGraph {
        self.try_map(|s| Skel::Lit(s.clone()))
            .expect("injective relabelling cannot collide")
    }
}

impl SkeletonGraph {
    /// All placeholder indices occurring anywhere in the graph.
    pub fn placeholders(&self) -> BTreeSet<usize> {
        let nodes = self.nodes.keys();
        let ends = self.edges.keys().flat_map(|(a, b)| [a, b]);
        let annos = self.nodes.values().chain(self.edges.values()).flatten();
        nodes
            .chain(ends)
            .chain(annos)
            .filter_map(Skel::hole_index)
            .collect()
    }

    /// Lossless conversion of a placeholder-free skeleton graph.
    pub fn to_object(&self) -> Option<AnnotatedGraph> {
        if !self.placeholders().is_empty() {
            return None;
        }
        Some(
            self.try_map(|s| s.to_string())
                .expect("literal skeleton nodes are distinct strings"),
        )
    }
}

/// The order on annotated graphs: subgraph inclusion plus pointwise
/// inclusion of annotation sets.
pub fn leq<T: Ord + Clone>(g1: &LabeledGraph<T>, g2: &LabeledGraph<T>) -> bool {
    let nodes_ok = g1.nodes.iter().all(|(id, anno)| match g2.nodes.get(id) {
        Some(big) => anno.is_subset(big),
        None => false,
    });
    nodes_ok
        && g1.edges.iter().all(|(e, anno)| match g2.edges.get(e) {
            Some(big) => anno.is_subset(big),
            None => false,
        })
}

/// Returns the degree of a skeleton graph: the largest placeholder index,
/// provided every smaller index also occurs.
pub fn degree_of(s: &SkeletonGraph) -> Result<usize, GraphError> {
    degree_from_holes(&s.placeholders())
}

pub(crate) fn degree_from_holes(holes: &BTreeSet<usize>) -> Result<usize, GraphError> {
    let max = holes.last().copied().unwrap_or(0);
    if let Some(missing) = (1..=max).find(|i| !holes.contains(i)) {
        return Err(GraphError::DegreeGap { max, missing });
    }
    Ok(max)
}

/// Simultaneously substitutes `args[i-1]` for every `*i`.
pub fn substitute<S: AsRef<str>>(
    s: &SkeletonGraph,
    args: &[S],
) -> Result<AnnotatedGraph, GraphError> {
    let degree = degree_of(s)?;
    if degree != args.len() {
        return Err(GraphError::ArityMismatch {
            expected: degree,
            got: args.len(),
        });
    }
    let args: Vec<String> = args.iter().map(|a| a.as_ref().to_string()).collect();
    s.try_map(|x| x.resolve(&args).to_string())
}

/// Whether `args` instantiates `s` below `m`.
///
/// A collision during substitution, or an argument count that does not
/// match the degree, makes the answer `false`.
pub fn instantiates<S: AsRef<str>>(args: &[S], s: &SkeletonGraph, m: &AnnotatedGraph) -> bool {
    match substitute(s, args) {
        Ok(g) => leq(&g, m),
        Err(_) => false,
    }
}

/// The skeleton `[*1:{} *2:{} ... *n:{}]` of `n` isolated nodes: it is
/// instantiated exactly by `n` pairwise distinct nodes.
pub fn distinctness_skeleton(n: usize) -> SkeletonGraph {
    let mut g = SkeletonGraph::new();
    for i in 1..=n {
        g.add_node(Skel::Hole(i), [])
            .expect("placeholders are distinct");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(nodes: &[(&str, &[&str])], edges: &[(&str, &str, &[&str])]) -> AnnotatedGraph {
        let mut g = AnnotatedGraph::new();
        for (id, anno) in nodes {
            g.add_node(id.to_string(), anno.iter().map(|s| s.to_string()))
                .unwrap();
        }
        for (a, b, anno) in edges {
            g.add_edge(a.to_string(), b.to_string(), anno.iter().map(|s| s.to_string()))
                .unwrap();
        }
        g
    }

    fn skel(nodes: &[(&str, &[&str])], edges: &[(&str, &str, &[&str])]) -> SkeletonGraph {
        let p = |s: &&str| Skel::parse(s).unwrap();
        let mut g = SkeletonGraph::new();
        for (id, anno) in nodes {
            g.add_node(p(id), anno.iter().map(p)).unwrap();
        }
        for (a, b, anno) in edges {
            g.add_edge(p(a), p(b), anno.iter().map(p)).unwrap();
        }
        g
    }

    fn fig6_left() -> SkeletonGraph {
        skel(
            &[("*1", &["u1"]), ("u2", &["u3"])],
            &[("*1", "u2", &["*2"]), ("u2", "*1", &["*2"])],
        )
    }

    fn fig6_right() -> AnnotatedGraph {
        obj(
            &[("u4", &["u1"]), ("u2", &["u3"]), ("u8", &["u1"])],
            &[
                ("u4", "u2", &["u5", "u6"]),
                ("u2", "u4", &["u5"]),
                ("u2", "u8", &["u7"]),
                ("u8", "u2", &["u7"]),
            ],
        )
    }

    #[test]
    fn leq_is_reflexive_and_checks_annotations() {
        let g = fig6_right();
        assert!(leq(&g, &g));
        let small = obj(&[("a", &["x"])], &[]);
        let big = obj(&[("a", &[])], &[]);
        assert!(!leq(&small, &big));
        assert!(leq(&big, &small));
    }

    #[test]
    fn leq_single_node_against_larger_graph() {
        let g = fig6_right();
        assert!(leq(&obj(&[("u4", &[])], &[]), &g));
        assert!(!leq(&obj(&[("fresh", &[])], &[]), &g));
    }

    #[test]
    fn edge_must_exist_with_annotations() {
        let g = fig6_right();
        let e = obj(&[("u4", &[]), ("u2", &[])], &[("u4", "u2", &["u6"])]);
        assert!(leq(&e, &g));
        let e = obj(&[("u4", &[]), ("u2", &[])], &[("u2", "u4", &["u6"])]);
        assert!(!leq(&e, &g));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree_of(&fig6_left()).unwrap(), 2);
        assert_eq!(degree_of(&fig6_right().to_skeleton()).unwrap(), 0);
        let gap = skel(&[("*2", &[])], &[]);
        assert_eq!(
            degree_of(&gap),
            Err(GraphError::DegreeGap { max: 2, missing: 1 })
        );
    }

    #[test]
    fn substitution_of_fig6() {
        let got = substitute(&fig6_left(), &["u4", "u5"]).unwrap();
        let want = obj(
            &[("u4", &["u1"]), ("u2", &["u3"])],
            &[("u4", "u2", &["u5"]), ("u2", "u4", &["u5"])],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn degree_zero_substitution_is_identity() {
        let g = fig6_right();
        let empty: [&str; 0] = [];
        assert_eq!(substitute(&g.to_skeleton(), &empty).unwrap(), g);
    }

    #[test]
    fn node_collision_is_an_error() {
        let s = distinctness_skeleton(2);
        assert_eq!(
            substitute(&s, &["a", "a"]),
            Err(GraphError::Collision("a".into()))
        );
        // Placeholder colliding with a concrete node.
        assert!(matches!(
            substitute(&fig6_left(), &["u2", "u5"]),
            Err(GraphError::Collision(_))
        ));
    }

    #[test]
    fn annotation_collision_collapses() {
        let s = skel(&[("*1", &["*2", "x"])], &[]);
        let g = substitute(&s, &["n", "x"]).unwrap();
        assert_eq!(g.node_annotations(&"n".to_string()).unwrap().len(), 1);
    }

    #[test]
    fn fig6_instantiations_by_brute_force() {
        let m = fig6_right();
        let s = fig6_left();
        let domain: Vec<String> = m.domain().into_iter().collect();
        let mut found = Vec::new();
        for a in &domain {
            for b in &domain {
                if instantiates(&[a, b], &s, &m) {
                    found.push((a.clone(), b.clone()));
                }
            }
        }
        assert_eq!(
            found,
            vec![
                ("u4".to_string(), "u5".to_string()),
                ("u8".to_string(), "u7".to_string())
            ]
        );
        assert!(!instantiates(&["u2", "u5"], &s, &m));
    }

    #[test]
    fn wrong_arity_does_not_instantiate() {
        assert!(!instantiates(&["u4"], &fig6_left(), &fig6_right()));
    }

    #[test]
    fn placeholder_syntax() {
        assert_eq!(Skel::parse("*3").unwrap(), Skel::Hole(3));
        assert_eq!(Skel::parse("*x").unwrap(), Skel::lit("*x"));
        assert_eq!(Skel::parse("*").unwrap(), Skel::lit("*"));
        assert!(Skel::parse("*0").is_err());
        assert!(Skel::parse("*01").is_err());
    }

    #[test]
    fn remove_node_drops_incident_edges() {
        let mut g = fig6_right();
        assert!(g.remove_node(&"u2".to_string()));
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn dangling_and_duplicate_edges_rejected() {
        let mut g = obj(&[("a", &[])], &[]);
        assert!(matches!(
            g.add_edge("a".into(), "b".into(), []),
            Err(GraphError::DanglingEdge(..))
        ));
        g.add_edge("a".into(), "a".into(), []).unwrap();
        assert!(matches!(
            g.add_edge("a".into(), "a".into(), []),
            Err(GraphError::DuplicateEdge(..))
        ));
        assert!(matches!(
            g.add_node("a".into(), []),
            Err(GraphError::DuplicateNode(_))
        ));
    }
}
