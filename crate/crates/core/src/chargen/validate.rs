//! Checks generated formulas against the set-based semantics, case by case.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{constant_names, generate, std_interpretation, Family, FormulaRequest, GenError, TARGET};
use crate::argue::{ArgError, EquivDungModel, NodeSet, Sigma, Tau, DEFAULT_BOUND};
use crate::check::{satisfies_closed, CheckError, Interpretation, Model};
use crate::ground::{eval_grounded_lazily, eval_prop_closed, ground_capped, grounding_bound, induced_true_atoms};
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidateOptions {
    pub bound: usize,
    /// Generate with the deliberately broken membership test.
    pub mutant: bool,
    /// Also evaluate every case through grounding.
    pub propositional: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            bound: DEFAULT_BOUND,
            mutant: false,
            propositional: false,
        }
    }
}

/// Groundings beyond this many nodes are only evaluated lazily.
const EAGER_CAP: usize = crate::ground::DEFAULT_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    /// The node tuples the constants denote, one list per argument block
    /// (`DF`/`WDF`: the target, then the set).
    pub inputs: Vec<Vec<String>>,
    pub expected: bool,
    pub got: bool,
    /// The verdict through grounding, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propositional: Option<bool>,
    /// Whether the grounding was materialised (otherwise only expanded lazily).
    #[serde(skip)]
    pub eager: bool,
}

impl CaseResult {
    pub fn agrees(&self) -> bool {
        self.got == self.expected && self.propositional.map_or(true, |p| p == self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub nodes: usize,
    pub cases: usize,
    /// Cases whose grounding was built and evaluated as a formula.
    pub grounded_eagerly: usize,
    pub mismatches: Vec<CaseResult>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum ValidateError {
    #[error(transparent)]
    Arg(#[from] ArgError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// One evaluation: the argument blocks as index lists and the oracle's answer.
struct Case {
    blocks: Vec<Vec<usize>>,
    expected: bool,
}

fn idx(s: NodeSet) -> Vec<usize> {
    s.iter().collect()
}

/// Every subset in increasing bitmask order.
fn all_sets(m: &EquivDungModel) -> impl Iterator<Item = NodeSet> {
    (0..=m.all().0).map(NodeSet)
}

fn shape(family: Family, blocks: &[Vec<usize>]) -> Vec<usize> {
    match family {
        // The target is one more constant; the shape is the set size.
        Family::Df | Family::Wdf => vec![blocks[1].len()],
        _ => blocks.iter().map(Vec::len).collect(),
    }
}

fn request(family: Family, n: usize, shape: &[usize], mutant: bool) -> FormulaRequest {
    let total: usize = shape.iter().sum();
    let (constants, split) = match family {
        Family::Df | Family::Wdf => {
            let mut cs = vec![TARGET.to_string()];
            cs.extend(constant_names(total));
            (cs, Vec::new())
        }
        // CL takes the generating subset first, then the rest of the closure.
        Family::Cl => (constant_names(total), vec![shape[0]]),
        Family::Distinct | Family::Cmps => (constant_names(total), shape.to_vec()),
        _ => (constant_names(total), Vec::new()),
    };
    FormulaRequest {
        family,
        n,
        constants,
        split,
        mutant,
    }
}

fn cases(m: &EquivDungModel, family: Family) -> Vec<Case> {
    let single = |pred: &dyn Fn(NodeSet) -> bool| {
        all_sets(m)
            .map(|s| Case {
                blocks: vec![idx(s)],
                expected: pred(s),
            })
            .collect::<Vec<_>>()
    };
    match family {
        Family::Cf => single(&|s| m.is_conflict_free(s, Sigma::Simple)),
        Family::Wcf => single(&|s| m.is_conflict_free(s, Sigma::Wide)),
        Family::Cl => {
            let mut out = Vec::new();
            for s in all_sets(m) {
                for p in all_sets(m).filter(|p| p.is_subset(s)) {
                    out.push(Case {
                        blocks: vec![idx(p), idx(NodeSet(s.0 & !p.0))],
                        expected: m.closure(p) == s,
                    });
                }
            }
            out
        }
        Family::Df | Family::Wdf => {
            let sigma = if family == Family::Df { Sigma::Simple } else { Sigma::Wide };
            let mut out = Vec::new();
            for s in all_sets(m) {
                for t in 0..m.len() {
                    out.push(Case {
                        blocks: vec![vec![t], idx(s)],
                        expected: m.defends(s, t, sigma),
                    });
                }
            }
            out
        }
        Family::Distinct => {
            let mut out = Vec::new();
            for a in all_sets(m) {
                for b in all_sets(m) {
                    out.push(Case {
                        blocks: vec![idx(a), idx(b)],
                        expected: a != b,
                    });
                }
            }
            out
        }
        Family::Cmps => cmps_cases(m),
        _ => {
            let spec = family.spec().expect("set-level family");
            single(&|s| m.is_extension(s, spec))
        }
    }
}

/// The true list of wide defence-complete extensions, and perturbations of
/// it that must all be rejected.
fn cmps_cases(m: &EquivDungModel) -> Vec<Case> {
    let complete: Vec<NodeSet> = all_sets(m)
        .filter(|&s| m.is_complete(s, Sigma::Wide, Tau::Defence))
        .collect();
    let other = all_sets(m).find(|&s| !m.is_complete(s, Sigma::Wide, Tau::Defence));
    let blocks = |sets: &[NodeSet]| sets.iter().map(|&s| idx(s)).collect::<Vec<_>>();
    let mut out = vec![Case {
        blocks: blocks(&complete),
        expected: true,
    }];
    let mut wrong = |sets: Vec<NodeSet>| {
        out.push(Case {
            blocks: blocks(&sets),
            expected: false,
        })
    };
    for j in 0..complete.len() {
        let mut dropped = complete.clone();
        dropped.remove(j);
        wrong(dropped);
    }
    if let Some(x) = other {
        let mut added = complete.clone();
        added.push(x);
        wrong(added);
        if !complete.is_empty() {
            let mut replaced = complete.clone();
            replaced[0] = x;
            wrong(replaced);
        }
    }
    if let Some(&first) = complete.first() {
        let mut doubled = complete.clone();
        doubled.push(first);
        wrong(doubled);
    }
    out
}

/// Generates each family formula once per argument shape and checks it on
/// every case against the set-based definition.
pub fn cross_validate(
    m: &EquivDungModel,
    family: Family,
    opts: &ValidateOptions,
) -> Result<FamilyReport, ValidateError> {
    if m.len() > opts.bound {
        return Err(ArgError::BoundExceeded {
            nodes: m.len(),
            bound: opts.bound,
        }
        .into());
    }
    let n = m.len();
    let cases = cases(m, family);
    let mut formulas: HashMap<Vec<usize>, (FormulaRequest, Formula)> = HashMap::new();
    for c in &cases {
        let sh = shape(family, &c.blocks);
        if !formulas.contains_key(&sh) {
            let req = request(family, n, &sh, opts.mutant);
            let f = generate(&req)?;
            formulas.insert(sh, (req, f));
        }
    }
    let model = Model::new(m.graph().clone());
    let base: HashMap<&Vec<usize>, Interpretation> =
        formulas.iter().map(|(k, (_, f))| (k, std_interpretation(f))).collect();
    // Constants do not change which atoms are true, so one set per shape serves every case.
    let true_atoms: HashMap<&Vec<usize>, _> = if opts.propositional {
        base.iter().map(|(&k, i)| (k, induced_true_atoms(&model, i))).collect()
    } else {
        HashMap::new()
    };
    let eager: HashMap<&Vec<usize>, bool> = formulas
        .iter()
        .map(|(k, (_, f))| (k, grounding_bound(f, model.domain().len()) <= EAGER_CAP))
        .collect();
    let results: Vec<CaseResult> = cases
        .par_iter()
        .map(|c| {
            let sh = shape(family, &c.blocks);
            let (req, f) = &formulas[&sh];
            let mut i = base[&sh].clone();
            let values = c.blocks.iter().flatten().map(|&u| &m.names()[u]);
            for (name, v) in req.constants.iter().zip(values) {
                i.set_constant(name.clone(), v.clone());
            }
            let got = satisfies_closed(&model, &i, f)?;
            let mut eager_used = false;
            let propositional = if opts.propositional {
                let lazy = eval_grounded_lazily(f, &model, &i)?;
                if let Some(Ok(p)) = eager[&sh].then(|| ground_capped(f, &model, &i, EAGER_CAP)) {
                    let eager = eval_prop_closed(&p, &true_atoms[&sh]);
                    eager_used = true;
                    // Report whichever route disagrees with the oracle.
                    Some(if lazy != c.expected { lazy } else { eager })
                } else {
                    Some(lazy)
                }
            } else {
                None
            };
            Ok(CaseResult {
                inputs: c
                    .blocks
                    .iter()
                    .map(|b| b.iter().map(|&u| m.names()[u].clone()).collect())
                    .collect(),
                expected: c.expected,
                got,
                propositional,
                eager: eager_used,
            })
        })
        .collect::<Result<_, CheckError>>()?;
    Ok(FamilyReport {
        family: family.to_string(),
        nodes: n,
        cases: results.len(),
        grounded_eagerly: results.iter().filter(|r| r.eager).count(),
        mismatches: results.into_iter().filter(|r| !r.agrees()).collect(),
    })
}
