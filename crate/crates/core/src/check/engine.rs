//! Compiled satisfaction checker.
//!
//! Formulas are compiled against a model: domain values are interned to
//! small integers, variables become slots, and runs of quantifiers become
//! search blocks. An `∃` block searches for a binding satisfying all of its
//! conjuncts; a `∀` block is the negation of an `∃` block over the
//! conjuncts of its negated body (antecedents of an implication become
//! guards). Conjuncts are tested as soon as their variables are bound,
//! atoms are tested partially on their bound positions, and variables
//! constrained by an equality disjunction or a positive atom only range
//! over the matching values. The result is the same as naive enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::{CheckError, FuncDef, Interpretation};
use crate::graph::{AnnotatedGraph, Skel, SkeletonGraph};
use crate::syntax::{Formula, SymbolRef, Term};

pub type Val = u32;

/// A growable bit set over interned values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new() -> Self {
        BitSet(Vec::new())
    }

    pub fn insert(&mut self, v: Val) {
        let (w, b) = (v as usize / 64, v % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    pub fn contains(&self, v: Val) -> bool {
        let (w, b) = (v as usize / 64, v % 64);
        self.0.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.0.truncate(other.0.len());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Val> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64u32)
                .filter(move |b| w & (1u64 << b) != 0)
                .map(move |b| i as u32 * 64 + b)
        })
    }
}

impl FromIterator<Val> for BitSet {
    fn from_iter<I: IntoIterator<Item = Val>>(iter: I) -> Self {
        let mut s = BitSet::new();
        iter.into_iter().for_each(|v| s.insert(v));
        s
    }
}

/// String interner; ids `0..domain_len` are the domain in sorted order,
/// later ids are values that occur only in the interpretation.
#[derive(Debug, Clone, Default)]
pub struct Values {
    names: Vec<String>,
    ids: HashMap<String, Val>,
    domain_len: usize,
}

impl Values {
    pub fn from_domain(domain: impl IntoIterator<Item = String>) -> Self {
        let mut v = Values::default();
        for s in domain {
            v.intern(&s);
        }
        v.domain_len = v.names.len();
        v
    }

    pub fn intern(&mut self, s: &str) -> Val {
        if let Some(&id) = self.ids.get(s) {
            return id;
        }
        let id = self.names.len() as Val;
        self.names.push(s.to_string());
        self.ids.insert(s.to_string(), id);
        id
    }

    pub fn get(&self, s: &str) -> Option<Val> {
        self.ids.get(s).copied()
    }

    pub fn name(&self, v: Val) -> &str {
        &self.names[v as usize]
    }

    pub fn domain_len(&self) -> usize {
        self.domain_len
    }
}

/// The model graph over interned values.
#[derive(Debug, Clone)]
pub struct ModelIndex {
    node_anno: Vec<Option<BitSet>>,
    edges: HashMap<(Val, Val), BitSet>,
    pub nodes: BitSet,
    pub annos: BitSet,
}

impl ModelIndex {
    pub fn new(g: &AnnotatedGraph, values: &Values) -> Self {
        let id = |s: &String| values.get(s).expect("domain value interned");
        let mut node_anno = vec![None; values.domain_len()];
        let mut nodes = BitSet::new();
        for (n, anno) in g.node_entries() {
            node_anno[id(n) as usize] = Some(anno.iter().map(id).collect());
            nodes.insert(id(n));
        }
        let edges = g
            .edge_entries()
            .map(|((a, b), anno)| ((id(a), id(b)), anno.iter().map(id).collect()))
            .collect();
        let annos = g.annotations().into_iter().map(id).collect();
        ModelIndex {
            node_anno,
            edges,
            nodes,
            annos,
        }
    }

    fn node_has(&self, v: Val, anno: impl Iterator<Item = Option<Val>>) -> bool {
        match self.node_anno.get(v as usize) {
            Some(Some(set)) => anno.flatten().all(|a| set.contains(a)),
            _ => false,
        }
    }

    fn edge_has(&self, a: Val, b: Val, anno: impl Iterator<Item = Option<Val>>) -> bool {
        match self.edges.get(&(a, b)) {
            Some(set) => anno.flatten().all(|x| set.contains(x)),
            None => false,
        }
    }
}

/// Truth of ground atoms, addressed by compiled predicate index.
pub trait AtomOracle: Sync {
    fn holds(&self, pred: usize, args: &[Val]) -> bool;

    /// A necessary condition for `holds` given only some arguments.
    fn may_hold(&self, _pred: usize, _args: &[Option<Val>]) -> bool {
        true
    }

    /// Values that argument `pos` must take for the atom to hold, if known.
    fn candidates(&self, _pred: usize, _pos: usize) -> Option<&BitSet> {
        None
    }
}

#[derive(Debug, Clone, Copy)]
enum SV {
    Lit(Val),
    Hole(usize),
}

impl SV {
    fn get(self, args: &[Option<Val>]) -> Option<Val> {
        match self {
            SV::Lit(v) => Some(v),
            SV::Hole(i) => args[i],
        }
    }
}

#[derive(Debug, Clone)]
struct CompiledSkel {
    nodes: Vec<(SV, Vec<SV>)>,
    edges: Vec<(SV, SV, Vec<SV>)>,
    cands: Vec<Option<BitSet>>,
}

impl CompiledSkel {
    fn new(s: &SkeletonGraph, arity: usize, values: &mut Values, idx: &ModelIndex) -> Self {
        let mut sv = |x: &Skel| match x {
            Skel::Lit(s) => SV::Lit(values.intern(s)),
            Skel::Hole(i) => SV::Hole(i - 1),
        };
        let nodes: Vec<(SV, Vec<SV>)> = s
            .node_entries()
            .map(|(n, anno)| (sv(n), anno.iter().map(&mut sv).collect()))
            .collect();
        let edges = s
            .edge_entries()
            .map(|((a, b), anno)| (sv(a), sv(b), anno.iter().map(&mut sv).collect()))
            .collect();
        let mut cands = vec![Some(idx.annos.clone()); arity];
        for (n, _) in &nodes {
            if let SV::Hole(i) = n {
                cands[*i] = Some(idx.nodes.clone());
            }
        }
        CompiledSkel {
            nodes,
            edges,
            cands,
        }
    }

    fn check(&self, idx: &ModelIndex, args: &[Option<Val>]) -> bool {
        for (i, (n, _)) in self.nodes.iter().enumerate() {
            if let Some(v) = n.get(args) {
                if self.nodes[..i].iter().any(|(m, _)| m.get(args) == Some(v)) {
                    return false;
                }
            }
        }
        let nodes_ok = self.nodes.iter().all(|(n, anno)| match n.get(args) {
            Some(v) => idx.node_has(v, anno.iter().map(|a| a.get(args))),
            None => true,
        });
        nodes_ok
            && self.edges.iter().all(|(a, b, anno)| match (a.get(args), b.get(args)) {
                (Some(a), Some(b)) => idx.edge_has(a, b, anno.iter().map(|x| x.get(args))),
                _ => true,
            })
    }
}

impl CompiledSkel {
    fn matches(&self, idx: &ModelIndex, arity: usize, domain: Val) -> Vec<Vec<Val>> {
        fn go(
            s: &CompiledSkel,
            idx: &ModelIndex,
            domain: Val,
            args: &mut Vec<Option<Val>>,
            i: usize,
            out: &mut Vec<Vec<Val>>,
        ) {
            if i == args.len() {
                out.push(args.iter().map(|v| v.unwrap()).collect());
                return;
            }
            let all: Vec<Val>;
            let cands: Box<dyn Iterator<Item = Val>> = match &s.cands[i] {
                Some(c) => Box::new(c.iter()),
                None => {
                    all = (0..domain).collect();
                    Box::new(all.iter().copied())
                }
            };
            for v in cands {
                args[i] = Some(v);
                if s.check(idx, args) {
                    go(s, idx, domain, args, i + 1, out);
                }
            }
            args[i] = None;
        }
        let mut out = Vec::new();
        if self.check(idx, &vec![None; arity]) {
            go(self, idx, domain, &mut vec![None; arity], 0, &mut out);
        }
        out
    }
}

/// Every argument tuple over the domain that instantiates `s` below the
/// model, in increasing order.
pub fn skeleton_matches(s: &SkeletonGraph, arity: usize, values: &mut Values, idx: &ModelIndex) -> Vec<Vec<Val>> {
    let domain = values.domain_len() as Val;
    CompiledSkel::new(s, arity, values, idx).matches(idx, arity, domain)
}

/// Decides atoms from explicit sets of true argument tuples.
pub struct TupleOracle {
    sets: Vec<HashSet<Vec<Val>>>,
    proj: Vec<Vec<Option<BitSet>>>,
}

impl TupleOracle {
    /// `sets[p]` holds the true tuples of compiled predicate `p`.
    pub fn new(sets: Vec<HashSet<Vec<Val>>>, arities: &[usize]) -> Self {
        let proj = sets
            .iter()
            .zip(arities)
            .map(|(set, &n)| {
                (0..n)
                    .map(|i| Some(set.iter().map(|t| t[i]).collect()))
                    .collect()
            })
            .collect();
        TupleOracle { sets, proj }
    }
}

impl AtomOracle for TupleOracle {
    fn holds(&self, pred: usize, args: &[Val]) -> bool {
        self.sets[pred].contains(args)
    }

    fn may_hold(&self, pred: usize, args: &[Option<Val>]) -> bool {
        args.iter().zip(&self.proj[pred]).all(|(a, p)| match (a, p) {
            (Some(v), Some(p)) => p.contains(*v),
            _ => true,
        })
    }

    fn candidates(&self, pred: usize, pos: usize) -> Option<&BitSet> {
        self.proj[pred][pos].as_ref()
    }
}

/// Decides atoms by instantiating the interpreted skeleton graphs.
pub struct SkeletonOracle<'a> {
    idx: &'a ModelIndex,
    skels: Vec<CompiledSkel>,
}

impl<'a> SkeletonOracle<'a> {
    pub fn new(
        preds: &[SymbolRef],
        interp: &Interpretation,
        values: &mut Values,
        idx: &'a ModelIndex,
    ) -> Self {
        let skels = preds
            .iter()
            .map(|p| {
                let s = interp.predicate(p).expect("checked at compile time");
                CompiledSkel::new(s, p.arity, values, idx)
            })
            .collect();
        SkeletonOracle { idx, skels }
    }
}

impl AtomOracle for SkeletonOracle<'_> {
    fn holds(&self, pred: usize, args: &[Val]) -> bool {
        let args: Vec<Option<Val>> = args.iter().copied().map(Some).collect();
        self.skels[pred].check(self.idx, &args)
    }

    fn may_hold(&self, pred: usize, args: &[Option<Val>]) -> bool {
        self.skels[pred].check(self.idx, args)
    }

    fn candidates(&self, pred: usize, pos: usize) -> Option<&BitSet> {
        self.skels[pred].cands[pos].as_ref()
    }
}

#[derive(Debug, Clone)]
enum CTerm {
    Slot(u32),
    Val(Val),
    Apply(usize, Vec<CTerm>),
}

impl CTerm {
    fn slots(&self, out: &mut BTreeSet<u32>) {
        match self {
            CTerm::Slot(s) => {
                out.insert(*s);
            }
            CTerm::Val(_) => {}
            CTerm::Apply(_, args) => args.iter().for_each(|a| a.slots(out)),
        }
    }
}

#[derive(Debug)]
enum Node {
    Const(bool),
    Atom(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Block(Box<Block>),
}

#[derive(Debug, Default)]
struct Step {
    /// Index into the per-evaluation candidate table.
    cand: usize,
    /// The variable must equal one of these terms.
    eq_terms: Option<Vec<CTerm>>,
    /// Conjuncts whose last block variable is this one.
    ready: Vec<usize>,
    /// Positive atom conjuncts to test partially once this variable is bound.
    partial: Vec<(usize, Vec<Option<CTerm>>)>,
}

#[derive(Debug)]
struct Block {
    universal: bool,
    vars: Vec<u32>,
    conjuncts: Vec<Node>,
    pre: Vec<usize>,
    steps: Vec<Step>,
    memo: Option<(usize, Vec<u32>)>,
}

struct Func {
    name: String,
    table: HashMap<Vec<Val>, Val>,
}

/// A formula compiled against one model and interpretation.
pub struct Compiled {
    root: Node,
    pub values: Values,
    pub preds: Vec<SymbolRef>,
    funcs: Vec<Func>,
    slots: usize,
    init: Vec<(u32, Val)>,
    memos: usize,
    /// Per step: `(pred, pos)` of positive atoms with the variable at `pos`.
    direct: Vec<Vec<(usize, usize)>>,
    /// Slots of the outermost `∃` prefix, in order.
    prefix: Vec<(String, u32)>,
}

struct Compiler<'a> {
    interp: &'a Interpretation,
    values: Values,
    preds: Vec<SymbolRef>,
    pred_ids: HashMap<SymbolRef, usize>,
    funcs: Vec<Func>,
    func_ids: HashMap<SymbolRef, usize>,
    scope: Vec<(String, u32)>,
    slots: u32,
    memos: usize,
    direct: Vec<Vec<(usize, usize)>>,
}

const MEMO_MIN_SIZE: usize = 6;

impl<'a> Compiler<'a> {
    fn term(&mut self, t: &Term) -> Result<CTerm, CheckError> {
        match t {
            Term::Var(v) => self
                .scope
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, s)| CTerm::Slot(*s))
                .ok_or_else(|| CheckError::UnboundVariable(v.clone())),
            Term::Apply(f, args) => {
                let sym = SymbolRef::new(f, args.len());
                let def = self
                    .interp
                    .function(&sym)
                    .ok_or_else(|| CheckError::UnknownFunction(sym.clone()))?;
                match def {
                    FuncDef::Const(v) => Ok(CTerm::Val(self.values.intern(v))),
                    FuncDef::Table(table) => {
                        let id = match self.func_ids.get(&sym) {
                            Some(&id) => id,
                            None => {
                                let table = table
                                    .iter()
                                    .map(|(k, v)| {
                                        let k = k.iter().map(|s| self.values.intern(s)).collect();
                                        (k, self.values.intern(v))
                                    })
                                    .collect();
                                self.funcs.push(Func {
                                    name: f.clone(),
                                    table,
                                });
                                self.func_ids.insert(sym, self.funcs.len() - 1);
                                self.funcs.len() - 1
                            }
                        };
                        let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                        Ok(CTerm::Apply(id, args))
                    }
                }
            }
        }
    }

    fn pred(&mut self, p: &str, arity: usize) -> Result<usize, CheckError> {
        let sym = SymbolRef::new(p, arity);
        if let Some(&id) = self.pred_ids.get(&sym) {
            return Ok(id);
        }
        if self.interp.predicate(&sym).is_none() {
            return Err(CheckError::UnknownPredicate(sym));
        }
        self.preds.push(sym.clone());
        self.pred_ids.insert(sym, self.preds.len() - 1);
        Ok(self.preds.len() - 1)
    }

    fn formula(&mut self, f: &Formula) -> Result<Node, CheckError> {
        Ok(match f {
            Formula::Top => Node::Const(true),
            Formula::Bottom => Node::Const(false),
            Formula::Atom(p, args) => {
                let id = self.pred(p, args.len())?;
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Node::Atom(id, args)
            }
            Formula::Eq(a, b) => Node::Eq(self.term(a)?, self.term(b)?),
            Formula::Not(g) => Node::Not(Box::new(self.formula(g)?)),
            Formula::And(..) => {
                let mut parts = Vec::new();
                self.flatten(f, true, &mut parts)?;
                Node::And(parts)
            }
            Formula::Or(..) => {
                let mut parts = Vec::new();
                self.flatten(f, false, &mut parts)?;
                Node::Or(parts)
            }
            Formula::Implies(a, b) => {
                Node::Implies(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            Formula::Forall(..) | Formula::Exists(..) => self.block(f)?,
        })
    }

    fn flatten(&mut self, f: &Formula, and: bool, out: &mut Vec<Node>) -> Result<(), CheckError> {
        match (f, and) {
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                self.flatten(a, and, out)?;
                self.flatten(b, and, out)
            }
            _ => {
                out.push(self.formula(f)?);
                Ok(())
            }
        }
    }

    fn bind(&mut self, v: &str, vars: &mut Vec<u32>) {
        let s = self.slots;
        self.slots += 1;
        self.scope.push((v.to_string(), s));
        vars.push(s);
    }

    /// Conjuncts of `f`, merging nested existentials into the block.
    fn pos(&mut self, f: &Formula, vars: &mut Vec<u32>, out: &mut Vec<Node>) -> Result<(), CheckError> {
        match f {
            Formula::And(a, b) => {
                self.pos(a, vars, out)?;
                self.pos(b, vars, out)
            }
            Formula::Top => Ok(()),
            Formula::Not(g) => self.neg(g, vars, out),
            Formula::Exists(v, g) => {
                self.bind(v, vars);
                let r = self.pos(g, vars, out);
                self.scope.pop();
                r
            }
            _ => {
                out.push(self.formula(f)?);
                Ok(())
            }
        }
    }

    /// Conjuncts of `¬f`, merging nested universals into the block.
    fn neg(&mut self, f: &Formula, vars: &mut Vec<u32>, out: &mut Vec<Node>) -> Result<(), CheckError> {
        match f {
            Formula::Or(a, b) => {
                self.neg(a, vars, out)?;
                self.neg(b, vars, out)
            }
            Formula::Implies(a, b) => {
                self.pos(a, vars, out)?;
                self.neg(b, vars, out)
            }
            Formula::Bottom => Ok(()),
            Formula::Not(g) => self.pos(g, vars, out),
            Formula::Forall(v, g) => {
                self.bind(v, vars);
                let r = self.neg(g, vars, out);
                self.scope.pop();
                r
            }
            _ => {
                out.push(Node::Not(Box::new(self.formula(f)?)));
                Ok(())
            }
        }
    }

    fn block(&mut self, f: &Formula) -> Result<Node, CheckError> {
        let mut vars = Vec::new();
        let mut conjuncts = Vec::new();
        let universal = matches!(f, Formula::Forall(..));
        if universal {
            self.neg(f, &mut vars, &mut conjuncts)?;
        } else {
            self.pos(f, &mut vars, &mut conjuncts)?;
        }
        Ok(Node::Block(Box::new(self.plan(universal, vars, conjuncts))))
    }

    fn plan(&mut self, universal: bool, vars: Vec<u32>, mut conjuncts: Vec<Node>) -> Block {
        // Cheap tests first.
        conjuncts.sort_by_key(size);
        let position: HashMap<u32, usize> = vars.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut steps: Vec<Step> = Vec::new();
        for _ in &vars {
            steps.push(Step {
                cand: self.direct.len(),
                ..Step::default()
            });
            self.direct.push(Vec::new());
        }
        let mut pre = Vec::new();
        for (ci, c) in conjuncts.iter().enumerate() {
            let free = free_slots(c);
            match free.iter().filter_map(|s| position.get(s)).max() {
                None => pre.push(ci),
                Some(&last) => steps[last].ready.push(ci),
            }
            if let Node::Atom(p, args) = c {
                // Candidate sets for variables in direct argument positions.
                for (pos, a) in args.iter().enumerate() {
                    if let CTerm::Slot(s) = a {
                        if let Some(&i) = position.get(s) {
                            self.direct[steps[i].cand].push((*p, pos));
                        }
                    }
                }
                // Partial tests at every earlier step that binds one of its variables.
                let mine: BTreeSet<usize> = free.iter().filter_map(|s| position.get(s).copied()).collect();
                let last = mine.iter().max().copied();
                for &i in &mine {
                    if Some(i) == last {
                        continue;
                    }
                    let known = |t: &CTerm| {
                        let mut ss = BTreeSet::new();
                        t.slots(&mut ss);
                        ss.iter().all(|s| position.get(s).is_none_or(|&j| j <= i))
                    };
                    let pattern = args.iter().map(|t| known(t).then(|| t.clone())).collect();
                    steps[i].partial.push((*p, pattern));
                }
            }
            if let Some((s, terms)) = eq_disjunction(c) {
                if let Some(&i) = position.get(&s) {
                    let earlier = terms.iter().all(|t| {
                        let mut ss = BTreeSet::new();
                        t.slots(&mut ss);
                        ss.iter().all(|s| position.get(s).is_none_or(|&j| j < i))
                    });
                    if earlier && steps[i].eq_terms.is_none() {
                        steps[i].eq_terms = Some(terms);
                    }
                }
            }
        }
        let mut block = Block {
            universal,
            vars,
            conjuncts,
            pre,
            steps,
            memo: None,
        };
        let total: usize = block.conjuncts.iter().map(size).sum();
        if total >= MEMO_MIN_SIZE {
            let free: Vec<u32> = block_free(&block).into_iter().collect();
            block.memo = Some((self.memos, free));
            self.memos += 1;
        }
        block
    }
}

/// `x = t1 ∨ … ∨ x = tn` (either orientation) for a single slot `x`.
fn eq_disjunction(n: &Node) -> Option<(u32, Vec<CTerm>)> {
    fn one(n: &Node) -> Option<(u32, CTerm)> {
        match n {
            Node::Eq(CTerm::Slot(s), t) | Node::Eq(t, CTerm::Slot(s)) => {
                let mut ss = BTreeSet::new();
                t.slots(&mut ss);
                (!ss.contains(s)).then(|| (*s, t.clone()))
            }
            _ => None,
        }
    }
    let parts: Vec<&Node> = match n {
        Node::Or(parts) => parts.iter().collect(),
        other => vec![other],
    };
    let mut slot = None;
    let mut terms = Vec::new();
    for p in parts {
        let (s, t) = one(p)?;
        if *slot.get_or_insert(s) != s {
            return None;
        }
        terms.push(t);
    }
    slot.map(|s| (s, terms))
}

fn size(n: &Node) -> usize {
    match n {
        Node::Const(_) | Node::Atom(..) | Node::Eq(..) => 1,
        Node::Not(g) => 1 + size(g),
        Node::And(ps) | Node::Or(ps) => 1 + ps.iter().map(size).sum::<usize>(),
        Node::Implies(a, b) => 1 + size(a) + size(b),
        Node::Block(b) => 1 + b.conjuncts.iter().map(size).sum::<usize>(),
    }
}

fn free_slots(n: &Node) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    collect_slots(n, &mut out);
    out
}

fn collect_slots(n: &Node, out: &mut BTreeSet<u32>) {
    match n {
        Node::Const(_) => {}
        Node::Atom(_, args) => args.iter().for_each(|a| a.slots(out)),
        Node::Eq(a, b) => {
            a.slots(out);
            b.slots(out);
        }
        Node::Not(g) => collect_slots(g, out),
        Node::And(ps) | Node::Or(ps) => ps.iter().for_each(|p| collect_slots(p, out)),
        Node::Implies(a, b) => {
            collect_slots(a, out);
            collect_slots(b, out);
        }
        Node::Block(b) => out.extend(block_free(b)),
    }
}

fn block_free(b: &Block) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    b.conjuncts.iter().for_each(|c| collect_slots(c, &mut out));
    for v in &b.vars {
        out.remove(v);
    }
    out
}

/// Compiles `f`; free variables take their values from `assign`.
pub fn compile(
    f: &Formula,
    domain: &Values,
    interp: &Interpretation,
    assign: &BTreeMap<String, String>,
) -> Result<Compiled, CheckError> {
    let mut c = Compiler {
        interp,
        values: domain.clone(),
        preds: Vec::new(),
        pred_ids: HashMap::new(),
        funcs: Vec::new(),
        func_ids: HashMap::new(),
        scope: Vec::new(),
        slots: 0,
        memos: 0,
        direct: Vec::new(),
    };
    let mut init = Vec::new();
    for v in f.free_vars() {
        let value = assign
            .get(&v)
            .ok_or_else(|| CheckError::UnboundVariable(v.clone()))?;
        let s = c.slots;
        c.slots += 1;
        init.push((s, c.values.intern(value)));
        c.scope.push((v, s));
    }
    let mut prefix = Vec::new();
    let mut g = f;
    let mut next = c.slots;
    while let Formula::Exists(v, body) = g {
        prefix.push((v.clone(), next));
        next += 1;
        g = body;
    }
    let root = c.formula(f)?;
    Ok(Compiled {
        root,
        values: c.values,
        preds: c.preds,
        funcs: c.funcs,
        slots: c.slots as usize,
        init,
        memos: c.memos,
        direct: c.direct,
        prefix,
    })
}

struct Ctx<'a, O: AtomOracle> {
    prog: &'a Compiled,
    oracle: &'a O,
    env: Vec<Val>,
    memo: Vec<HashMap<Vec<Val>, bool>>,
    cands: Vec<Option<BitSet>>,
    domain: Val,
}

impl<O: AtomOracle> Ctx<'_, O> {
    fn term(&self, t: &CTerm) -> Result<Val, CheckError> {
        match t {
            CTerm::Slot(s) => Ok(self.env[*s as usize]),
            CTerm::Val(v) => Ok(*v),
            CTerm::Apply(f, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                let func = &self.prog.funcs[*f];
                func.table.get(&args).copied().ok_or_else(|| CheckError::TableMiss {
                    function: func.name.clone(),
                    args: args.iter().map(|&v| self.prog.values.name(v).to_string()).collect(),
                })
            }
        }
    }

    fn eval(&mut self, n: &Node) -> Result<bool, CheckError> {
        Ok(match n {
            Node::Const(b) => *b,
            Node::Atom(p, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                self.oracle.holds(*p, &args)
            }
            Node::Eq(a, b) => self.term(a)? == self.term(b)?,
            Node::Not(g) => !self.eval(g)?,
            Node::And(ps) => {
                for p in ps {
                    if !self.eval(p)? {
                        return Ok(false);
                    }
                }
                true
            }
            Node::Or(ps) => {
                for p in ps {
                    if self.eval(p)? {
                        return Ok(true);
                    }
                }
                false
            }
            Node::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Node::Block(b) => self.block(b)?,
        })
    }

    fn block(&mut self, b: &Block) -> Result<bool, CheckError> {
        let key = b.memo.as_ref().map(|(id, free)| {
            let k: Vec<Val> = free.iter().map(|s| self.env[*s as usize]).collect();
            (*id, k)
        });
        if let Some((id, k)) = &key {
            if let Some(&r) = self.memo[*id].get(k) {
                return Ok(r);
            }
        }
        let found = self.found(b)?;
        let r = found != b.universal;
        if let Some((id, k)) = key {
            self.memo[id].insert(k, r);
        }
        Ok(r)
    }

    fn found(&mut self, b: &Block) -> Result<bool, CheckError> {
        for &ci in &b.pre {
            if !self.eval(&b.conjuncts[ci])? {
                return Ok(false);
            }
        }
        self.search(b, 0)
    }

    fn candidates(&self, b: &Block, i: usize) -> Result<Vec<Val>, CheckError> {
        let step = &b.steps[i];
        let cand = &self.cands[step.cand];
        let in_range = |v: &Val| *v < self.domain && cand.as_ref().is_none_or(|c| c.contains(*v));
        Ok(match &step.eq_terms {
            Some(terms) => {
                let mut vs = terms.iter().map(|t| self.term(t)).collect::<Result<Vec<_>, _>>()?;
                vs.sort_unstable();
                vs.dedup();
                vs.retain(in_range);
                vs
            }
            None => match &cand {
                Some(c) => c.iter().filter(in_range).collect(),
                None => (0..self.domain).collect(),
            },
        })
    }

    fn search(&mut self, b: &Block, i: usize) -> Result<bool, CheckError> {
        if i == b.vars.len() {
            return Ok(true);
        }
        let slot = b.vars[i] as usize;
        'next: for v in self.candidates(b, i)? {
            self.env[slot] = v;
            for (p, pattern) in &b.steps[i].partial {
                let args = pattern
                    .iter()
                    .map(|t| t.as_ref().map(|t| self.term(t)).transpose())
                    .collect::<Result<Vec<_>, _>>()?;
                if !self.oracle.may_hold(*p, &args) {
                    continue 'next;
                }
            }
            for &ci in &b.steps[i].ready {
                if !self.eval(&b.conjuncts[ci])? {
                    continue 'next;
                }
            }
            if self.search(b, i + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl Compiled {
    fn ctx<'a, O: AtomOracle>(&'a self, oracle: &'a O) -> Ctx<'a, O> {
        let mut env = vec![0; self.slots];
        for &(s, v) in &self.init {
            env[s as usize] = v;
        }
        let cands = self
            .direct
            .iter()
            .map(|uses| {
                let mut acc: Option<BitSet> = None;
                for &(p, pos) in uses {
                    if let Some(c) = oracle.candidates(p, pos) {
                        match &mut acc {
                            Some(x) => x.intersect_with(c),
                            None => acc = Some(c.clone()),
                        }
                    }
                }
                acc
            })
            .collect();
        Ctx {
            prog: self,
            oracle,
            env,
            memo: vec![HashMap::new(); self.memos],
            cands,
            domain: self.values.domain_len() as Val,
        }
    }

    pub fn eval<O: AtomOracle>(&self, oracle: &O) -> Result<bool, CheckError> {
        self.ctx(oracle).eval(&self.root)
    }

    /// Evaluates and, when the formula starts with `∃` and holds, returns
    /// the values bound to the outermost existential prefix.
    pub fn eval_with_witness<O: AtomOracle>(
        &self,
        oracle: &O,
    ) -> Result<(bool, Option<Vec<(String, String)>>), CheckError> {
        let mut ctx = self.ctx(oracle);
        match &self.root {
            Node::Block(b) if !b.universal && !self.prefix.is_empty() => {
                // Bypass the memo so the bindings are left in place.
                if !ctx.found(b)? {
                    return Ok((false, None));
                }
                let w = self
                    .prefix
                    .iter()
                    .map(|(name, s)| {
                        let v = ctx.env[*s as usize];
                        (name.clone(), self.values.name(v).to_string())
                    })
                    .collect();
                Ok((true, Some(w)))
            }
            root => Ok((ctx.eval(root)?, None)),
        }
    }
}
