use crate::argue::ATTACKS;
use crate::check::Interpretation;
use crate::graph::{distinctness_skeleton, Skel, SkeletonGraph};
use crate::syntax::{Formula, SymbolRef};

pub const ATTACK: &str = "p_A";
pub const DISTINCT: &str = "p_D";
pub const ANNO_EQ: &str = "p_AnnoEq";

fn attack2() -> SkeletonGraph {
    let mut s = SkeletonGraph::new();
    s.add_node(Skel::Hole(1), []).unwrap();
    s.add_node(Skel::Hole(2), []).unwrap();
    s.add_edge(Skel::Hole(1), Skel::Hole(2), [Skel::lit(ATTACKS)])
        .unwrap();
    s
}

fn attack1() -> SkeletonGraph {
    let mut s = SkeletonGraph::new();
    s.add_node(Skel::Hole(1), []).unwrap();
    s.add_edge(Skel::Hole(1), Skel::Hole(1), [Skel::lit(ATTACKS)])
        .unwrap();
    s
}

fn anno_eq() -> SkeletonGraph {
    let mut s = SkeletonGraph::new();
    s.add_node(Skel::Hole(1), [Skel::Hole(3)]).unwrap();
    s.add_node(Skel::Hole(2), [Skel::Hole(3)]).unwrap();
    s
}

/// The standard bindings for exactly the given symbols; symbols outside
/// the vocabulary are skipped.
fn bind(symbols: impl IntoIterator<Item = SymbolRef>) -> Interpretation {
    let mut i = Interpretation::new();
    for sym in symbols {
        let skel = match (sym.name.as_str(), sym.arity) {
            (ATTACK, 2) => attack2(),
            (ATTACK, 1) => attack1(),
            (DISTINCT, n) => distinctness_skeleton(n),
            (ANNO_EQ, 3) => anno_eq(),
            _ => continue,
        };
        i.set_predicate_checked(sym, skel)
            .expect("standard skeletons have the right degree");
    }
    i
}

/// Binds every standard predicate the formula uses.
pub fn std_interpretation(f: &Formula) -> Interpretation {
    bind(f.predicates())
}

/// All standard predicates, with `p_D` at arities `0..=max_arity`.
pub fn std_environment(max_arity: usize) -> Interpretation {
    let mut syms = vec![
        SymbolRef::new(ATTACK, 1),
        SymbolRef::new(ATTACK, 2),
        SymbolRef::new(ANNO_EQ, 3),
    ];
    syms.extend((0..=max_arity).map(|n| SymbolRef::new(DISTINCT, n)));
    bind(syms)
}

/// Adds constants `name ↦ node`.
pub fn bind_constants<'a>(i: &mut Interpretation, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) {
    for (c, v) in pairs {
        i.set_constant(c, v);
    }
}
