//! Direct transcription of the satisfaction clauses: recursive evaluation
//! over strings, enumerating the whole domain at every quantifier. Slow;
//! kept as the oracle the compiled checker is tested against.

use super::{eval_term, Assignment, CheckError, Interpretation, Model};
use crate::graph::instantiates;
use crate::syntax::{Formula, SymbolRef};

pub fn satisfies(m: &Model, i: &Interpretation, a: &Assignment, f: &Formula) -> Result<bool, CheckError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Atom(p, args) => {
            let sym = SymbolRef::new(p, args.len());
            let skel = i
                .predicate(&sym)
                .ok_or(CheckError::UnknownPredicate(sym))?;
            let vals = args
                .iter()
                .map(|t| eval_term(t, i, a))
                .collect::<Result<Vec<_>, _>>()?;
            instantiates(&vals, skel, m.graph())
        }
        Formula::Eq(t1, t2) => eval_term(t1, i, a)? == eval_term(t2, i, a)?,
        Formula::Not(g) => !satisfies(m, i, a, g)?,
        Formula::And(g, h) => satisfies(m, i, a, g)? && satisfies(m, i, a, h)?,
        Formula::Or(g, h) => satisfies(m, i, a, g)? || satisfies(m, i, a, h)?,
        Formula::Implies(g, h) => !satisfies(m, i, a, g)? || satisfies(m, i, a, h)?,
        Formula::Forall(v, g) => {
            let mut a = a.clone();
            for d in m.domain() {
                a.insert(v.clone(), d.clone());
                if !satisfies(m, i, &a, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Exists(v, g) => {
            let mut a = a.clone();
            for d in m.domain() {
                a.insert(v.clone(), d.clone());
                if satisfies(m, i, &a, g)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}
