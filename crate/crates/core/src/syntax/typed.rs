//! Typed discussion graphs: graph literals whose nodes and annotations are
//! terms or placeholders. They describe predicate denotations symbolically;
//! resolving the terms against an interpretation yields a skeleton graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::parse::{parse_term_in, ParseError, TermMode};
use super::Term;
use crate::graph::{
    degree_from_holes, placeholder_index, GraphDoc, GraphError, LabeledGraph, Skel, SkeletonGraph,
};

/// A node or annotation of a typed discussion graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypedElem {
    Term(Term),
    Hole(usize),
}

/// Literal syntax: constants are bare identifiers, variables are `?x`.
impl fmt::Display for TypedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Var(v) => write!(f, "?{v}"),
                Term::Apply(c, args) if args.is_empty() => f.write_str(c),
                Term::Apply(g, args) => {
                    write!(f, "{g}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        term(a, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        match self {
            TypedElem::Hole(i) => write!(f, "*{i}"),
            TypedElem::Term(t) => term(t, f),
        }
    }
}

pub type TypedDiscussionGraph = LabeledGraph<TypedElem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("in `{text}`: {err}")]
    Parse { text: String, err: ParseError },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_elem(s: &str) -> Result<TypedElem, LiteralError> {
    match placeholder_index(s) {
        Some(Ok(i)) => Ok(TypedElem::Hole(i)),
        Some(Err(e)) => Err(e.into()),
        None => parse_term_in(s, TermMode::Literal)
            .map(TypedElem::Term)
            .map_err(|err| LiteralError::Parse {
                text: s.to_string(),
                err,
            }),
    }
}

/// Parses a graph literal in the JSON graph format whose strings are terms
/// (`c`, `f(c)`, `?x`) or placeholders (`*i`).
pub fn parse_graph_literal(text: &str) -> Result<TypedDiscussionGraph, LiteralError> {
    from_doc(&GraphDoc::from_json(text)?)
}

/// Reads a typed graph from an already-decoded graph document.
pub fn from_doc(doc: &GraphDoc) -> Result<TypedDiscussionGraph, LiteralError> {
    let mut err = None;
    let g = doc.build(|s| {
        parse_elem(s).map_err(|e| {
            // `build` only carries graph errors; stash parse errors aside.
            err.get_or_insert(e);
            GraphError::Json(String::new())
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let g = g?;
    degree(&g)?;
    Ok(g)
}

fn holes(g: &TypedDiscussionGraph) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut add = |e: &TypedElem| {
        if let TypedElem::Hole(i) = e {
            out.insert(*i);
        }
    };
    for (n, anno) in g.node_entries() {
        add(n);
        anno.iter().for_each(&mut add);
    }
    for (_, anno) in g.edge_entries() {
        anno.iter().for_each(&mut add);
    }
    out
}

/// Degree of a typed graph, with the same gap rule as skeleton graphs.
pub fn degree(g: &TypedDiscussionGraph) -> Result<usize, GraphError> {
    degree_from_holes(&holes(g))
}

/// Evaluates every term, producing a skeleton graph.
///
/// Two distinct nodes evaluating to the same value is a collision.
pub fn resolve<E, F>(
    g: &TypedDiscussionGraph,
    mut eval: F,
) -> Result<Result<SkeletonGraph, GraphError>, E>
where
    F: FnMut(&Term) -> Result<String, E>,
{
    let mut values: BTreeMap<&Term, String> = BTreeMap::new();
    let elems = g
        .node_entries()
        .flat_map(|(n, anno)| std::iter::once(n).chain(anno))
        .chain(g.edge_entries().flat_map(|(_, anno)| anno));
    for e in elems {
        if let TypedElem::Term(t) = e {
            if !values.contains_key(t) {
                values.insert(t, eval(t)?);
            }
        }
    }
    Ok(g.try_map(|e| match e {
        TypedElem::Hole(i) => Skel::Hole(*i),
        TypedElem::Term(t) => Skel::Lit(values[t].clone()),
    }))
}
