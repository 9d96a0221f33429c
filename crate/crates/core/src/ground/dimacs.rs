//! Tseitin-style CNF export.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::PropFormula;

/// Variable numbering, written next to the CNF as a JSON sidecar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimacsMap {
    /// Ground atom → DIMACS variable; numbered `1..` in name order.
    pub variables: BTreeMap<String, i64>,
    /// Auxiliary (subformula) variables are `first_aux..=num_vars`.
    pub first_aux: i64,
    pub num_vars: i64,
    pub num_clauses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimacs {
    pub clauses: Vec<Vec<i64>>,
    pub map: DimacsMap,
}

impl Dimacs {
    /// The CNF in DIMACS format, with the variable names as comments.
    /// `true` yields no clauses; `false` yields the empty clause.
    pub fn text(&self) -> String {
        let mut s = String::new();
        for (name, v) in &self.map.variables {
            writeln!(s, "c {v} {name}").unwrap();
        }
        if self.map.first_aux <= self.map.num_vars {
            writeln!(s, "c auxiliary {}..{}", self.map.first_aux, self.map.num_vars).unwrap();
        }
        writeln!(s, "p cnf {} {}", self.map.num_vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for l in c {
                write!(s, "{l} ").unwrap();
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(&self.map).expect("map serializes")
    }
}

struct Tseitin {
    vars: BTreeMap<String, i64>,
    next: i64,
    clauses: Vec<Vec<i64>>,
    truth: Option<i64>,
}

impl Tseitin {
    fn fresh(&mut self) -> i64 {
        self.next += 1;
        self.next
    }

    fn truth(&mut self) -> i64 {
        if let Some(t) = self.truth {
            return t;
        }
        let t = self.fresh();
        self.clauses.push(vec![t]);
        self.truth = Some(t);
        t
    }

    fn lit(&mut self, p: &PropFormula) -> i64 {
        match p {
            PropFormula::Var(v) => self.vars[v],
            PropFormula::True => self.truth(),
            PropFormula::False => -self.truth(),
            PropFormula::Not(q) => -self.lit(q),
            PropFormula::And(ps) => {
                let xs: Vec<i64> = ps.iter().map(|q| self.lit(q)).collect();
                let a = self.fresh();
                for &x in &xs {
                    self.clauses.push(vec![-a, x]);
                }
                let mut big = vec![a];
                big.extend(xs.iter().map(|x| -x));
                self.clauses.push(big);
                a
            }
            PropFormula::Or(ps) => {
                let xs: Vec<i64> = ps.iter().map(|q| self.lit(q)).collect();
                let a = self.fresh();
                for &x in &xs {
                    self.clauses.push(vec![a, -x]);
                }
                let mut big = vec![-a];
                big.extend(&xs);
                self.clauses.push(big);
                a
            }
            PropFormula::Implies(p, q) => {
                let (x, y) = (self.lit(p), self.lit(q));
                let a = self.fresh();
                self.clauses.push(vec![-a, -x, y]);
                self.clauses.push(vec![a, x]);
                self.clauses.push(vec![a, -y]);
                a
            }
        }
    }
}

/// An equisatisfiable CNF: one variable per ground atom, one auxiliary
/// variable per connective, and a unit clause asserting the root.
pub fn to_dimacs(p: &PropFormula) -> Dimacs {
    let vars: BTreeMap<String, i64> = p
        .vars()
        .into_iter()
        .zip(1..)
        .collect();
    let n = vars.len() as i64;
    let mut t = Tseitin {
        vars,
        next: n,
        clauses: Vec::new(),
        truth: None,
    };
    match p {
        PropFormula::True => {}
        PropFormula::False => t.clauses.push(Vec::new()),
        _ => {
            let root = t.lit(p);
            t.clauses.push(vec![root]);
        }
    }
    Dimacs {
        map: DimacsMap {
            variables: t.vars,
            first_aux: n + 1,
            num_vars: t.next,
            num_clauses: t.clauses.len(),
        },
        clauses: t.clauses,
    }
}
