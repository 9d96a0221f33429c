//! Environment files: constants, lookup tables and predicate bindings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{eval_term, Assignment, CheckError, FuncDef, InterpError, Interpretation};
use crate::graph::{GraphDoc, GraphError};
use crate::syntax::{resolve_typed, typed_from_doc, LiteralError, SymbolRef};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvDoc {
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<FunctionDoc>,
    #[serde(default)]
    pub predicates: Vec<PredicateDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub name: String,
    pub arity: usize,
    pub table: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateDoc {
    pub name: String,
    /// Defaults to the degree of the graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
    pub graph: GraphDoc,
    /// Graph strings are terms (`c`, `f(c)`) resolved through the constants
    /// and tables of this file, rather than plain values.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub typed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("invalid environment JSON: {0}")]
    Json(String),
    #[error("predicate {0}: {1}")]
    Graph(String, GraphError),
    #[error("predicate {0}: {1}")]
    Literal(String, LiteralError),
    #[error("predicate {0}: {1}")]
    Term(String, CheckError),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("symbol {0} is bound twice")]
    Duplicate(SymbolRef),
}

impl EnvDoc {
    pub fn from_json(text: &str) -> Result<Self, EnvError> {
        serde_json::from_str(text).map_err(|e| EnvError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("environment serializes")
    }

    pub fn to_interpretation(&self) -> Result<Interpretation, EnvError> {
        let mut i = Interpretation::new();
        for (c, v) in &self.constants {
            i.set_constant(c, v);
        }
        for f in &self.functions {
            let sym = SymbolRef::new(&f.name, f.arity);
            if i.function(&sym).is_some() {
                return Err(EnvError::Duplicate(sym));
            }
            let table = f
                .table
                .iter()
                .map(|r| (r.args.clone(), r.value.clone()))
                .collect();
            i.set_function(&f.name, f.arity, table)?;
        }
        let mut preds = Vec::new();
        for p in &self.predicates {
            let skel = if p.typed {
                let tg = typed_from_doc(&p.graph).map_err(|e| EnvError::Literal(p.name.clone(), e))?;
                resolve_typed(&tg, |t| eval_term(t, &i, &Assignment::new()))
                    .map_err(|e| EnvError::Term(p.name.clone(), e))?
                    .map_err(|e| EnvError::Graph(p.name.clone(), e))?
            } else {
                p.graph
                    .to_skeleton()
                    .map_err(|e| EnvError::Graph(p.name.clone(), e))?
            };
            preds.push((p, skel));
        }
        for (p, skel) in preds {
            let degree = crate::graph::degree_of(&skel).expect("validated");
            let sym = SymbolRef::new(&p.name, p.arity.unwrap_or(degree));
            if i.predicate(&sym).is_some() {
                return Err(EnvError::Duplicate(sym));
            }
            i.set_predicate_checked(sym, skel)?;
        }
        Ok(i)
    }

    pub fn from_interpretation(i: &Interpretation) -> Self {
        let mut doc = EnvDoc::default();
        for (sym, def) in i.functions() {
            match def {
                FuncDef::Const(v) => {
                    doc.constants.insert(sym.name.clone(), v.clone());
                }
                FuncDef::Table(t) => doc.functions.push(FunctionDoc {
                    name: sym.name.clone(),
                    arity: sym.arity,
                    table: t
                        .iter()
                        .map(|(args, value)| TableRow {
                            args: args.clone(),
                            value: value.clone(),
                        })
                        .collect(),
                }),
            }
        }
        for (sym, skel) in i.predicates() {
            doc.predicates.push(PredicateDoc {
                name: sym.name.clone(),
                arity: Some(sym.arity),
                graph: GraphDoc::from(skel),
                typed: false,
            });
        }
        doc
    }
}
