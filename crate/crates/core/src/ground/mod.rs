//! Quantifier expansion over the finite domain: closed formulas become
//! propositional formulas whose variables are ground atoms.

mod dimacs;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::check::engine::{self, TupleOracle};
use crate::check::{eval_term, Assignment, CheckError, Interpretation, Model};
use crate::graph::instantiates;
use crate::syntax::{Formula, SymbolRef};

pub use dimacs::{to_dimacs, Dimacs, DimacsMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropFormula {
    Var(String),
    True,
    False,
    Not(Box<PropFormula>),
    And(Vec<PropFormula>),
    Or(Vec<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
}

pub type Valuation = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("grounding exceeds {0} nodes")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("`{0}` is not a ground atom name")]
    Malformed(String),
    #[error("predicate symbol {0} is not interpreted")]
    UnknownPredicate(SymbolRef),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no value for propositional variable `{0}`")]
pub struct MissingVar(pub String);

/// `p/n(v1,…,vn)`.
pub fn atom_name(pred: &str, args: &[String]) -> String {
    format!("{pred}/{}({})", args.len(), args.join(","))
}

/// Inverse of [`atom_name`]. Values containing `,` cannot be told apart
/// and are rejected unless the arity settles it.
pub fn decode_atom(name: &str) -> Result<(SymbolRef, Vec<String>), DecodeError> {
    let bad = || DecodeError::Malformed(name.to_string());
    let open = name.find('(').ok_or_else(bad)?;
    let inner = name[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let (pred, arity) = name[..open].rsplit_once('/').ok_or_else(bad)?;
    let arity: usize = arity.parse().map_err(|_| bad())?;
    let args: Vec<String> = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::to_string).collect()
    };
    if args.len() != arity {
        return Err(bad());
    }
    Ok((SymbolRef::new(pred, arity), args))
}

impl PropFormula {
    fn not(p: PropFormula) -> PropFormula {
        match p {
            PropFormula::True => PropFormula::False,
            PropFormula::False => PropFormula::True,
            p => PropFormula::Not(Box::new(p)),
        }
    }

    fn and(parts: Vec<PropFormula>) -> PropFormula {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                PropFormula::True => {}
                PropFormula::False => return PropFormula::False,
                p => out.push(p),
            }
        }
        match out.len() {
            0 => PropFormula::True,
            1 => out.pop().unwrap(),
            _ => PropFormula::And(out),
        }
    }

    fn or(parts: Vec<PropFormula>) -> PropFormula {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                PropFormula::False => {}
                PropFormula::True => return PropFormula::True,
                p => out.push(p),
            }
        }
        match out.len() {
            0 => PropFormula::False,
            1 => out.pop().unwrap(),
            _ => PropFormula::Or(out),
        }
    }

    fn implies(a: PropFormula, b: PropFormula) -> PropFormula {
        match (a, b) {
            (PropFormula::False, _) | (_, PropFormula::True) => PropFormula::True,
            (PropFormula::True, b) => b,
            (a, PropFormula::False) => PropFormula::not(a),
            (a, b) => PropFormula::Implies(Box::new(a), Box::new(b)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PropFormula::Var(_) | PropFormula::True | PropFormula::False => 1,
            PropFormula::Not(p) => 1 + p.size(),
            PropFormula::And(ps) | PropFormula::Or(ps) => 1 + ps.iter().map(PropFormula::size).sum::<usize>(),
            PropFormula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        fn go(p: &PropFormula, out: &mut BTreeSet<String>) {
            match p {
                PropFormula::Var(v) => {
                    out.insert(v.clone());
                }
                PropFormula::True | PropFormula::False => {}
                PropFormula::Not(p) => go(p, out),
                PropFormula::And(ps) | PropFormula::Or(ps) => ps.iter().for_each(|p| go(p, out)),
                PropFormula::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, ps: &[PropFormula], op: &str| {
            f.write_str("(")?;
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        };
        match self {
            PropFormula::Var(v) => write!(f, "[{v}]"),
            PropFormula::True => f.write_str("true"),
            PropFormula::False => f.write_str("false"),
            PropFormula::Not(p) => write!(f, "~{p}"),
            PropFormula::And(ps) => join(f, ps, "&"),
            PropFormula::Or(ps) => join(f, ps, "|"),
            PropFormula::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

/// Default cap on the number of nodes built while grounding.
pub const DEFAULT_CAP: usize = 2_000_000;

struct Grounder<'a> {
    m: &'a Model,
    i: &'a Interpretation,
    built: usize,
    cap: usize,
}

impl Grounder<'_> {
    fn tick(&mut self) -> Result<(), GroundError> {
        self.built += 1;
        if self.built > self.cap {
            Err(GroundError::TooLarge(self.cap))
        } else {
            Ok(())
        }
    }

    fn go(&mut self, f: &Formula, a: &mut Assignment) -> Result<PropFormula, GroundError> {
        self.tick()?;
        Ok(match f {
            Formula::Top => PropFormula::True,
            Formula::Bottom => PropFormula::False,
            Formula::Atom(p, args) => {
                let sym = SymbolRef::new(p, args.len());
                if self.i.predicate(&sym).is_none() {
                    return Err(CheckError::UnknownPredicate(sym).into());
                }
                let vals = args
                    .iter()
                    .map(|t| eval_term(t, self.i, a))
                    .collect::<Result<Vec<_>, _>>()?;
                PropFormula::Var(atom_name(p, &vals))
            }
            Formula::Eq(s, t) => {
                if eval_term(s, self.i, a)? == eval_term(t, self.i, a)? {
                    PropFormula::True
                } else {
                    PropFormula::False
                }
            }
            Formula::Not(g) => PropFormula::not(self.go(g, a)?),
            Formula::And(g, h) => PropFormula::and(vec![self.go(g, a)?, self.go(h, a)?]),
            Formula::Or(g, h) => PropFormula::or(vec![self.go(g, a)?, self.go(h, a)?]),
            Formula::Implies(g, h) => PropFormula::implies(self.go(g, a)?, self.go(h, a)?),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let saved = a.get(v).cloned();
                let mut parts = Vec::with_capacity(self.m.domain().len());
                for d in self.m.domain() {
                    a.insert(v.clone(), d.clone());
                    parts.push(self.go(g, a)?);
                }
                match saved {
                    Some(s) => a.insert(v.clone(), s),
                    None => a.remove(v),
                };
                if matches!(f, Formula::Forall(..)) {
                    PropFormula::and(parts)
                } else {
                    PropFormula::or(parts)
                }
            }
        })
    }
}

/// Expands every quantifier over the domain (`∀` to `∧`, `∃` to `∨`),
/// folds ground equalities and constants, and names each ground atom
/// `p/n(v1,…,vn)`.
pub fn ground(f: &Formula, m: &Model, i: &Interpretation) -> Result<PropFormula, GroundError> {
    ground_capped(f, m, i, DEFAULT_CAP)
}

/// An upper bound on the node count of `ground(f)` over a domain of the
/// given size (before folding), saturating.
pub fn grounding_bound(f: &Formula, domain: usize) -> usize {
    match f {
        Formula::Top | Formula::Bottom | Formula::Atom(..) | Formula::Eq(..) => 1,
        Formula::Not(g) => grounding_bound(g, domain).saturating_add(1),
        Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) => grounding_bound(g, domain)
            .saturating_add(grounding_bound(h, domain))
            .saturating_add(1),
        Formula::Forall(_, g) | Formula::Exists(_, g) => grounding_bound(g, domain)
            .saturating_mul(domain)
            .saturating_add(1),
    }
}

pub fn ground_capped(f: &Formula, m: &Model, i: &Interpretation, cap: usize) -> Result<PropFormula, GroundError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(CheckError::NotClosed(free).into());
    }
    Grounder { m, i, built: 0, cap }.go(f, &mut Assignment::new())
}

/// The truth of each named ground atom in the model.
pub fn induced_valuation<'a>(
    m: &Model,
    i: &Interpretation,
    vars: impl IntoIterator<Item = &'a String>,
) -> Result<Valuation, DecodeError> {
    vars.into_iter()
        .map(|name| {
            let (sym, args) = decode_atom(name)?;
            let skel = i
                .predicate(&sym)
                .ok_or_else(|| DecodeError::UnknownPredicate(sym.clone()))?;
            Ok((name.clone(), instantiates(&args, skel, m.graph())))
        })
        .collect()
}

pub fn eval_prop(p: &PropFormula, v: &Valuation) -> Result<bool, MissingVar> {
    Ok(match p {
        PropFormula::Var(x) => *v.get(x).ok_or_else(|| MissingVar(x.clone()))?,
        PropFormula::True => true,
        PropFormula::False => false,
        PropFormula::Not(p) => !eval_prop(p, v)?,
        PropFormula::And(ps) => {
            for p in ps {
                if !eval_prop(p, v)? {
                    return Ok(false);
                }
            }
            true
        }
        PropFormula::Or(ps) => {
            for p in ps {
                if eval_prop(p, v)? {
                    return Ok(true);
                }
            }
            false
        }
        PropFormula::Implies(a, b) => !eval_prop(a, v)? || eval_prop(b, v)?,
    })
}

/// Closed-world evaluation: exactly the atoms in `true_atoms` hold.
pub fn eval_prop_closed(p: &PropFormula, true_atoms: &BTreeSet<String>) -> bool {
    match p {
        PropFormula::Var(x) => true_atoms.contains(x),
        PropFormula::True => true,
        PropFormula::False => false,
        PropFormula::Not(p) => !eval_prop_closed(p, true_atoms),
        PropFormula::And(ps) => ps.iter().all(|p| eval_prop_closed(p, true_atoms)),
        PropFormula::Or(ps) => ps.iter().any(|p| eval_prop_closed(p, true_atoms)),
        PropFormula::Implies(a, b) => !eval_prop_closed(a, true_atoms) || eval_prop_closed(b, true_atoms),
    }
}

/// The ground atoms over the domain that the model makes true, for every
/// predicate the interpretation binds: the closed-world form of the
/// induced valuation.
pub fn induced_true_atoms(m: &Model, i: &Interpretation) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (sym, skel) in i.predicates() {
        for t in crate::check::matches(m, skel).expect("bound skeletons have a degree") {
            out.insert(atom_name(&sym.name, &t));
        }
    }
    out
}

/// `eval_prop(ground(f), induced valuation)` without materialising the
/// grounding: quantifiers are expanded on the fly and every ground atom is
/// looked up in the set of true atoms.
pub fn eval_grounded_lazily(f: &Formula, m: &Model, i: &Interpretation) -> Result<bool, CheckError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(CheckError::NotClosed(free));
    }
    let prog = engine::compile(f, m.values(), i, &Assignment::new())?;
    let sets: Vec<HashSet<Vec<engine::Val>>> = prog
        .preds
        .iter()
        .map(|sym| {
            let skel = i.predicate(sym).expect("checked at compile time");
            crate::check::matches(m, skel)
                .expect("bound skeletons have a degree")
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|a| prog.values.get(a).expect("matches range over the domain"))
                        .collect()
                })
                .collect()
        })
        .collect();
    let arities: Vec<usize> = prog.preds.iter().map(|s| s.arity).collect();
    prog.eval(&TupleOracle::new(sets, &arities))
}

#[cfg(test)]
mod tests;
