//! First-order syntax with equality.
//!
//! Surface grammar (ASCII; the Unicode connectives are accepted as well):
//!
//! ```text
//! formula  := quant ('->' formula)?             -- right associative, weakest
//! quant    := ('forall'|'exists') ident '.' quant | junction
//! junction := unary (('&'|'|') unary)*          -- left associative
//! unary    := '~' unary | 'forall'.. | 'exists'.. | primary
//! primary  := 'true' | 'false' | '(' formula ')' | '[' formula ']'
//!           | term '=' term | ident | ident '(' terms ')'
//! term     := ident | ident '(' terms? ')'
//! ```
//!
//! A bare identifier in term position is a variable; constants are written
//! `c()`. Predicate atoms of arity zero may be written `p` or `p()`.

mod parse;
mod print;
mod typed;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse_formula, parse_term, ParseError};
pub use typed::{
    degree as typed_degree, from_doc as typed_from_doc, parse_graph_literal,
    resolve as resolve_typed, LiteralError, TypedDiscussionGraph, TypedElem,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Function application; a constant is an application with no arguments.
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Apply(name.into(), Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Apply(_, args) => args.iter().all(Term::is_ground),
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn collect_functions(&self, out: &mut BTreeSet<SymbolRef>) {
        if let Term::Apply(f, args) = self {
            out.insert(SymbolRef::new(f, args.len()));
            args.iter().for_each(|a| a.collect_functions(out));
        }
    }
}

/// A predicate or function symbol: the same name may be used at several
/// arities, each being an independent symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolRef {
    pub name: String,
    pub arity: usize,
}

impl SymbolRef {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        SymbolRef {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for SymbolRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Predicate application; the arity is the argument count.
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(name.into(), args)
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `∀v1.∀v2.…body`, outermost variable first.
    pub fn forall<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Self {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::Forall(v, Box::new(acc)))
    }

    /// `∃v1.∃v2.…body`, outermost variable first.
    pub fn exists<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Self {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::Exists(v, Box::new(acc)))
    }

    /// Left-nested conjunction; the empty conjunction is `⊤`.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `⊥`.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut add_term = |t: &Term, bound: &Vec<&str>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(
                vs.into_iter()
                    .filter(|v| !bound.contains(v))
                    .map(str::to_string),
            );
        };
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| add_term(t, bound)),
            Formula::Eq(a, b) => {
                add_term(a, bound);
                add_term(b, bound);
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Closed formulas are exactly the well-formed ones.
    pub fn is_well_formed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn predicates(&self) -> BTreeSet<SymbolRef> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p, args) = f {
                out.insert(SymbolRef::new(p, args.len()));
            }
        });
        out
    }

    pub fn functions(&self) -> BTreeSet<SymbolRef> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_functions(&mut out)),
            Formula::Eq(a, b) => {
                a.collect_functions(&mut out);
                b.collect_functions(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Number of AST nodes (terms not counted).
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Top | Formula::Bottom => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_depth(),
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }
}
