//! Discussion graph structures and the satisfaction relation.
//!
//! The domain of discourse is an annotated graph; quantifiers range over its
//! nodes together with every annotation string. A predicate denotes a
//! skeleton graph of matching degree, and an atom holds when its argument
//! tuple instantiates that skeleton below the model.

pub mod engine;
mod env;
pub mod reference;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{degree_of, AnnotatedGraph, GraphError, SkeletonGraph};
use crate::syntax::{Formula, SymbolRef, Term};
use engine::{ModelIndex, SkeletonOracle, Values};

pub use env::{EnvDoc, EnvError, FunctionDoc, PredicateDoc, TableRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("predicate symbol {0} is not interpreted")]
    UnknownPredicate(SymbolRef),
    #[error("function symbol {0} is not interpreted")]
    UnknownFunction(SymbolRef),
    #[error("function `{function}` is undefined on ({})", args.join(", "))]
    TableMiss { function: String, args: Vec<String> },
    #[error("formula is not closed; free variables: {}", .0.iter().cloned().collect::<Vec<_>>().join(", "))]
    NotClosed(BTreeSet<String>),
}

/// The model: an annotated graph with its domain of discourse indexed.
#[derive(Debug, Clone)]
pub struct Model {
    graph: AnnotatedGraph,
    domain: Vec<String>,
    values: Values,
    index: ModelIndex,
}

impl Model {
    pub fn new(graph: AnnotatedGraph) -> Self {
        let domain: Vec<String> = graph.domain().into_iter().collect();
        let values = Values::from_domain(domain.iter().cloned());
        let index = ModelIndex::new(&graph, &values);
        Model {
            graph,
            domain,
            values,
            index,
        }
    }

    pub fn graph(&self) -> &AnnotatedGraph {
        &self.graph
    }

    /// Nodes ∪ annotations, sorted.
    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub(crate) fn values(&self) -> &Values {
        &self.values
    }

    pub(crate) fn index(&self) -> &ModelIndex {
        &self.index
    }
}

/// Denotation of a function symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuncDef {
    Const(String),
    /// A finite lookup table; arguments outside it are a [`CheckError::TableMiss`].
    Table(BTreeMap<Vec<String>, String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("predicate {symbol} is bound to a skeleton of degree {degree}")]
    DegreeMismatch { symbol: SymbolRef, degree: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("table row for {symbol} has {got} arguments")]
    TableArity { symbol: SymbolRef, got: usize },
}

/// Interpretation of function and predicate symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interpretation {
    funcs: BTreeMap<SymbolRef, FuncDef>,
    preds: BTreeMap<SymbolRef, SkeletonGraph>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_constant(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.funcs
            .insert(SymbolRef::new(name, 0), FuncDef::Const(value.into()));
    }

    pub fn with_constant(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.set_constant(name, value);
        self
    }

    pub fn set_function(
        &mut self,
        name: impl Into<String>,
        arity: usize,
        table: BTreeMap<Vec<String>, String>,
    ) -> Result<(), InterpError> {
        let symbol = SymbolRef::new(name, arity);
        if let Some(k) = table.keys().find(|k| k.len() != arity) {
            return Err(InterpError::TableArity {
                symbol,
                got: k.len(),
            });
        }
        let def = if arity == 0 {
            match table.into_values().next() {
                Some(v) => FuncDef::Const(v),
                None => FuncDef::Table(BTreeMap::new()),
            }
        } else {
            FuncDef::Table(table)
        };
        self.funcs.insert(symbol, def);
        Ok(())
    }

    /// Binds a predicate symbol of arity `degree_of(skeleton)`.
    pub fn set_predicate(&mut self, name: impl Into<String>, skeleton: SkeletonGraph) -> Result<(), InterpError> {
        let arity = degree_of(&skeleton)?;
        self.preds.insert(SymbolRef::new(name, arity), skeleton);
        Ok(())
    }

    /// Binds a predicate symbol whose arity is stated explicitly.
    pub fn set_predicate_checked(&mut self, symbol: SymbolRef, skeleton: SkeletonGraph) -> Result<(), InterpError> {
        let degree = degree_of(&skeleton)?;
        if degree != symbol.arity {
            return Err(InterpError::DegreeMismatch { symbol, degree });
        }
        self.preds.insert(symbol, skeleton);
        Ok(())
    }

    pub fn with_predicate(mut self, name: impl Into<String>, skeleton: SkeletonGraph) -> Result<Self, InterpError> {
        self.set_predicate(name, skeleton)?;
        Ok(self)
    }

    pub fn function(&self, s: &SymbolRef) -> Option<&FuncDef> {
        self.funcs.get(s)
    }

    pub fn predicate(&self, s: &SymbolRef) -> Option<&SkeletonGraph> {
        self.preds.get(s)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&SymbolRef, &FuncDef)> {
        self.funcs.iter()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&SymbolRef, &SkeletonGraph)> {
        self.preds.iter()
    }

    /// Copies every binding of `other` over this interpretation.
    pub fn extend(&mut self, other: &Interpretation) {
        self.funcs
            .extend(other.funcs.iter().map(|(k, v)| (k.clone(), v.clone())));
        self.preds
            .extend(other.preds.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
}

/// A variable assignment.
pub type Assignment = BTreeMap<String, String>;

/// Evaluates a term under an interpretation and assignment.
pub fn eval_term(t: &Term, i: &Interpretation, a: &Assignment) -> Result<String, CheckError> {
    match t {
        Term::Var(v) => a
            .get(v)
            .cloned()
            .ok_or_else(|| CheckError::UnboundVariable(v.clone())),
        Term::Apply(f, args) => {
            let sym = SymbolRef::new(f, args.len());
            match i.function(&sym) {
                None => Err(CheckError::UnknownFunction(sym)),
                Some(FuncDef::Const(v)) => Ok(v.clone()),
                Some(FuncDef::Table(table)) => {
                    let args = args
                        .iter()
                        .map(|t| eval_term(t, i, a))
                        .collect::<Result<Vec<_>, _>>()?;
                    table.get(&args).cloned().ok_or(CheckError::TableMiss {
                        function: f.clone(),
                        args,
                    })
                }
            }
        }
    }
}

/// `M, (μ, I) ⊨ F`.
pub fn satisfies(m: &Model, i: &Interpretation, a: &Assignment, f: &Formula) -> Result<bool, CheckError> {
    let mut prog = engine::compile(f, m.values(), i, a)?;
    let oracle = SkeletonOracle::new(&prog.preds.clone(), i, &mut prog.values, m.index());
    prog.eval(&oracle)
}

fn closed(f: &Formula) -> Result<(), CheckError> {
    let free = f.free_vars();
    if free.is_empty() {
        Ok(())
    } else {
        Err(CheckError::NotClosed(free))
    }
}

/// Satisfaction of a closed formula: for well-formed formulas the
/// assignment is irrelevant, so the empty one is used.
pub fn satisfies_closed(m: &Model, i: &Interpretation, f: &Formula) -> Result<bool, CheckError> {
    closed(f)?;
    satisfies(m, i, &Assignment::new(), f)
}

/// Like [`satisfies_closed`], also returning one binding of the outermost
/// existential prefix when the formula holds.
pub fn check_with_witness(
    m: &Model,
    i: &Interpretation,
    f: &Formula,
) -> Result<(bool, Option<Vec<(String, String)>>), CheckError> {
    closed(f)?;
    let mut prog = engine::compile(f, m.values(), i, &Assignment::new())?;
    let oracle = SkeletonOracle::new(&prog.preds.clone(), i, &mut prog.values, m.index());
    prog.eval_with_witness(&oracle)
}

/// Every argument tuple over the domain that instantiates `skel` below the
/// model, in domain order.
pub fn matches(m: &Model, skel: &SkeletonGraph) -> Result<Vec<Vec<String>>, GraphError> {
    let n = degree_of(skel)?;
    let mut values = m.values().clone();
    let tuples = engine::skeleton_matches(skel, n, &mut values, m.index());
    Ok(tuples
        .into_iter()
        .map(|t| t.into_iter().map(|v| values.name(v).to_string()).collect())
        .collect())
}

#[cfg(test)]
pub(crate) mod tests;
