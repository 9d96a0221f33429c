use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures;
use crate::graph::{distinctness_skeleton, leq, Skel};
use crate::syntax::parse_formula;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn attack_skeleton() -> SkeletonGraph {
    let mut s = SkeletonGraph::new();
    s.add_node(Skel::Hole(1), []).unwrap();
    s.add_node(Skel::Hole(2), []).unwrap();
    s.add_edge(Skel::Hole(1), Skel::Hole(2), [Skel::lit("attacks")])
        .unwrap();
    s
}

#[test]
fn eval_term_examples() {
    let mut i = Interpretation::new().with_constant("c", "u1");
    let mut table = BTreeMap::new();
    table.insert(vec!["u1".to_string()], "ID1".to_string());
    i.set_function("f", 1, table).unwrap();
    let mut a = Assignment::new();
    a.insert("x".into(), "attacks".into());
    assert_eq!(eval_term(&Term::constant("c"), &i, &a).unwrap(), "u1");
    assert_eq!(eval_term(&Term::var("x"), &i, &a).unwrap(), "attacks");
    let fc = crate::syntax::parse_term("f(c())").unwrap();
    assert_eq!(eval_term(&fc, &i, &a).unwrap(), "ID1");
    let fx = crate::syntax::parse_term("f(x)").unwrap();
    assert!(matches!(eval_term(&fx, &i, &a), Err(CheckError::TableMiss { .. })));
    assert!(matches!(
        eval_term(&Term::var("y"), &i, &a),
        Err(CheckError::UnboundVariable(_))
    ));
    assert!(matches!(
        eval_term(&Term::constant("d"), &i, &a),
        Err(CheckError::UnknownFunction(_))
    ));
}

#[test]
fn top_holds_everywhere() {
    let m = Model::new(fixtures::equiv_chain());
    assert!(satisfies_closed(&m, &Interpretation::new(), &Formula::Top).unwrap());
    assert!(!satisfies_closed(&m, &Interpretation::new(), &Formula::Bottom).unwrap());
}

#[test]
fn toulmin_pattern_is_detected_with_witness() {
    let m = Model::new(fixtures::toulmin());
    let i = Interpretation::new()
        .with_predicate("p", fixtures::toulmin_pattern())
        .unwrap();
    let q = f("exists x1. exists x2. exists x3. exists x4. exists x5. exists x6. p(x1, x2, x3, x4, x5, x6)");
    let (ok, w) = check_with_witness(&m, &i, &q).unwrap();
    assert!(ok);
    let w: Vec<String> = w.unwrap().into_iter().map(|(_, v)| v).collect();
    assert_eq!(w, ["txt1", "txt2", "txt3", "txt4", "txt5", "txt6"]);
    assert!(reference::satisfies(&m, &i, &Assignment::new(), &q).unwrap());

    let mut g = fixtures::toulmin();
    g.remove_node(&"txt6".to_string());
    let m = Model::new(g);
    assert_eq!(check_with_witness(&m, &i, &q).unwrap(), (false, None));
}

#[test]
fn duplicated_distinct_arguments_fail() {
    let m = Model::new(fixtures::equiv_chain());
    let i = Interpretation::new()
        .with_constant("c", "u1")
        .with_predicate("p_D", distinctness_skeleton(2))
        .unwrap();
    assert!(!satisfies_closed(&m, &i, &f("p_D(c(), c())")).unwrap());
}

#[test]
fn attack_atoms() {
    let m = Model::new(fixtures::equiv_chain());
    let i = Interpretation::new()
        .with_constant("a", "u1")
        .with_constant("b", "u4")
        .with_constant("c", "u2")
        .with_constant("d", "u3")
        .with_predicate("p_A", attack_skeleton())
        .unwrap();
    assert!(satisfies_closed(&m, &i, &f("~p_A(a(), b()) & ~p_A(b(), a())")).unwrap());
    assert!(satisfies_closed(&m, &i, &f("p_A(c(), d())")).unwrap());
    assert!(satisfies_closed(&m, &i, &f("exists x. p_A(x, d()) & x = c()")).unwrap());
    assert!(!satisfies_closed(&m, &i, &f("forall x. ~p_A(x, d())")).unwrap());
}

#[test]
fn errors() {
    let m = Model::new(fixtures::equiv_chain());
    let i = Interpretation::new();
    assert!(matches!(
        satisfies_closed(&m, &i, &f("p(x)")),
        Err(CheckError::NotClosed(_))
    ));
    assert!(matches!(
        satisfies_closed(&m, &i, &f("exists x. q(x)")),
        Err(CheckError::UnknownPredicate(_))
    ));
    assert!(matches!(
        satisfies_closed(&m, &i, &f("c() = c()")),
        Err(CheckError::UnknownFunction(_))
    ));
    let mut i = Interpretation::new();
    i.set_function("g", 1, BTreeMap::new()).unwrap();
    assert!(matches!(
        satisfies_closed(&m, &i, &f("exists x. g(x) = x")),
        Err(CheckError::TableMiss { .. })
    ));
}

#[test]
fn empty_domain() {
    let m = Model::new(AnnotatedGraph::new());
    let i = Interpretation::new()
        .with_predicate("p", distinctness_skeleton(1))
        .unwrap();
    assert!(satisfies_closed(&m, &i, &f("forall x. p(x)")).unwrap());
    assert!(!satisfies_closed(&m, &i, &f("exists x. x = x")).unwrap());
    assert!(satisfies_closed(&m, &i, &f("forall x. exists y. false")).unwrap());
}

#[test]
fn values_outside_the_domain_make_atoms_false() {
    let m = Model::new(fixtures::equiv_chain());
    let i = Interpretation::new()
        .with_constant("z", "nowhere")
        .with_predicate("p_D", distinctness_skeleton(1))
        .unwrap();
    assert!(!satisfies_closed(&m, &i, &f("p_D(z())")).unwrap());
    assert!(!satisfies_closed(&m, &i, &f("exists x. x = z()")).unwrap());
}

#[test]
fn annotations_are_in_the_domain() {
    let m = Model::new(fixtures::equiv_chain());
    let i = Interpretation::new();
    let q = f("exists x. exists y. ~x = y & x = x");
    assert!(satisfies_closed(&m, &i, &q).unwrap());
    // 5 nodes, 4 IDs, "attacks".
    assert_eq!(m.domain().len(), 10);
}

// ---- randomized comparison against the reference checker ----

const NAMES: [&str; 6] = ["a", "b", "c", "d", "x1", "x2"];

pub(crate) fn random_graph(rng: &mut ChaCha8Rng) -> AnnotatedGraph {
    let mut g = AnnotatedGraph::new();
    let n = rng.gen_range(0..=4);
    for name in &NAMES[..n] {
        let anno: Vec<String> = NAMES
            .iter()
            .filter(|_| rng.gen_bool(0.25))
            .map(|s| s.to_string())
            .collect();
        g.add_node(name.to_string(), anno).unwrap();
    }
    for a in &NAMES[..n] {
        for b in &NAMES[..n] {
            if rng.gen_bool(0.35) {
                let anno: Vec<String> = NAMES[3..]
                    .iter()
                    .filter(|_| rng.gen_bool(0.4))
                    .map(|s| s.to_string())
                    .collect();
                g.add_edge(a.to_string(), b.to_string(), anno).unwrap();
            }
        }
    }
    g
}

fn random_skeleton(rng: &mut ChaCha8Rng, degree: usize) -> SkeletonGraph {
    let mut g = SkeletonGraph::new();
    let mut nodes = Vec::new();
    for i in 1..=degree {
        // Each placeholder is a node or an annotation of a literal node.
        if rng.gen_bool(0.7) {
            g.add_node(Skel::Hole(i), []).unwrap();
            nodes.push(Skel::Hole(i));
        } else {
            let lit = Skel::lit(NAMES[rng.gen_range(0..NAMES.len())]);
            if g.add_node(lit.clone(), [Skel::Hole(i)]).is_err() {
                g.node_annotations_mut(&lit).unwrap().insert(Skel::Hole(i));
            } else {
                nodes.push(lit);
            }
        }
    }
    if degree == 0 || rng.gen_bool(0.3) {
        let lit = Skel::lit(NAMES[rng.gen_range(0..4)]);
        if g.add_node(lit.clone(), []).is_ok() {
            nodes.push(lit);
        }
    }
    for a in &nodes {
        for b in &nodes {
            if rng.gen_bool(0.25) {
                let anno: Vec<Skel> = if rng.gen_bool(0.5) {
                    vec![Skel::lit(NAMES[rng.gen_range(3..6)])]
                } else {
                    vec![]
                };
                g.add_edge(a.clone(), b.clone(), anno).unwrap();
            }
        }
    }
    g
}

pub(crate) fn random_interpretation(rng: &mut ChaCha8Rng) -> Interpretation {
    let mut i = Interpretation::new()
        .with_constant("c", NAMES[rng.gen_range(0..NAMES.len())])
        .with_constant("e", "outside");
    for (name, degree) in [("p", 1), ("q", 2), ("r", 0), ("s", 3)] {
        i.set_predicate_checked(SymbolRef::new(name, degree), random_skeleton(rng, degree))
            .unwrap();
    }
    i
}

fn random_term(rng: &mut ChaCha8Rng, vars: &[String]) -> Term {
    if !vars.is_empty() && rng.gen_bool(0.8) {
        Term::Var(vars[rng.gen_range(0..vars.len())].clone())
    } else if rng.gen_bool(0.8) {
        Term::constant("c")
    } else {
        Term::constant("e")
    }
}

/// A random closed formula over the symbols of [`random_interpretation`].
pub(crate) fn random_formula(rng: &mut ChaCha8Rng, depth: usize, vars: &mut Vec<String>) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.2);
    if leaf {
        return match rng.gen_range(0..7) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            2 => Formula::Eq(random_term(rng, vars), random_term(rng, vars)),
            3 => Formula::atom("r", vec![]),
            4 => Formula::atom("p", vec![random_term(rng, vars)]),
            5 => Formula::atom("q", vec![random_term(rng, vars), random_term(rng, vars)]),
            _ => Formula::atom(
                "s",
                (0..3).map(|_| random_term(rng, vars)).collect(),
            ),
        };
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, depth - 1, vars)),
        1 => Formula::and(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars)),
        2 => Formula::or(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars)),
        3 => Formula::implies(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars)),
        k => {
            // Reuse names now and then to exercise shadowing.
            let v = if !vars.is_empty() && rng.gen_bool(0.2) {
                vars[0].clone()
            } else {
                format!("v{}", vars.len())
            };
            vars.push(v.clone());
            let body = random_formula(rng, depth - 1, vars);
            vars.pop();
            if k == 4 {
                Formula::Forall(v, Box::new(body))
            } else {
                Formula::Exists(v, Box::new(body))
            }
        }
    }
}

fn world(seed: u64) -> (Model, Interpretation, Formula) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = Model::new(random_graph(&mut rng));
    let i = random_interpretation(&mut rng);
    let f = random_formula(&mut rng, 4, &mut Vec::new());
    (m, i, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn compiled_checker_agrees_with_reference(seed in any::<u64>()) {
        let (m, i, f) = world(seed);
        let fast = satisfies_closed(&m, &i, &f).unwrap();
        let slow = reference::satisfies(&m, &i, &Assignment::new(), &f).unwrap();
        prop_assert_eq!(fast, slow, "{}", f);
    }

    #[test]
    fn assignment_is_irrelevant_for_closed_formulas(seed in any::<u64>(), pick in any::<usize>()) {
        let (m, i, f) = world(seed);
        let mut a = Assignment::new();
        if !m.domain().is_empty() {
            for v in ["v0", "v1", "v2"] {
                a.insert(v.into(), m.domain()[pick % m.domain().len()].clone());
            }
        }
        prop_assert_eq!(satisfies(&m, &i, &a, &f).unwrap(), satisfies_closed(&m, &i, &f).unwrap());
    }

    #[test]
    fn quantifier_duality(seed in any::<u64>()) {
        let (m, i, f) = world(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let body = random_formula(&mut rng, 3, &mut vec!["w".to_string()]);
        let all = Formula::Forall("w".into(), Box::new(body.clone()));
        let ex = Formula::Exists("w".into(), Box::new(Formula::not(body)));
        prop_assert_eq!(satisfies_closed(&m, &i, &all).unwrap(), !satisfies_closed(&m, &i, &ex).unwrap());
        let _ = f;
    }

    #[test]
    fn implication_as_disjunction(seed in any::<u64>()) {
        let (m, i, f) = world(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let g = random_formula(&mut rng, 3, &mut Vec::new());
        let imp = Formula::implies(f.clone(), g.clone());
        let dis = Formula::or(Formula::not(f), g);
        prop_assert_eq!(satisfies_closed(&m, &i, &imp).unwrap(), satisfies_closed(&m, &i, &dis).unwrap());
    }

    #[test]
    fn atoms_are_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small = random_graph(&mut rng);
        let i = random_interpretation(&mut rng);
        // Grow the graph: add annotations and edges, never remove.
        let mut big = small.clone();
        let nodes: Vec<String> = big.nodes().cloned().collect();
        for n in &nodes {
            if rng.gen_bool(0.5) {
                big.node_annotations_mut(n).unwrap().insert("x2".into());
            }
            for t in &nodes {
                if !big.contains_edge(n, t) && rng.gen_bool(0.3) {
                    big.add_edge(n.clone(), t.clone(), []).unwrap();
                }
            }
        }
        prop_assert!(leq(&small, &big));
        let (ms, mb) = (Model::new(small), Model::new(big));
        for (p, arity) in [("p", 1), ("q", 2), ("s", 3)] {
            let vars: Vec<String> = (0..arity).map(|k| format!("y{k}")).collect();
            let atom = Formula::atom(p, vars.iter().map(|v| Term::var(v.clone())).collect());
            for tuple in tuples(ms.domain(), arity) {
                let a: Assignment = vars.iter().cloned().zip(tuple).collect();
                if satisfies(&ms, &i, &a, &atom).unwrap() {
                    prop_assert!(satisfies(&mb, &i, &a, &atom).unwrap());
                }
            }
        }
    }
}

fn tuples(domain: &[String], n: usize) -> Vec<Vec<String>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                domain.iter().map(move |d| {
                    let mut t = t.clone();
                    t.push(d.clone());
                    t
                })
            })
            .collect()
    })
}

#[test]
fn pattern_matches() {
    let m = Model::new(fixtures::pattern_host());
    let found = matches(&m, &fixtures::pattern_skeleton()).unwrap();
    assert_eq!(found, [["u4", "u5"], ["u8", "u7"]]);
    assert_eq!(matches(&m, &SkeletonGraph::new()).unwrap(), [Vec::<String>::new()]);
    let mut lit = SkeletonGraph::new();
    lit.add_node(Skel::lit("u2"), [Skel::lit("u3")]).unwrap();
    assert_eq!(matches(&m, &lit).unwrap().len(), 1);
    lit.add_node(Skel::lit("u9"), []).unwrap();
    assert!(matches(&m, &lit).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_agree_with_instantiation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Model::new(random_graph(&mut rng));
        let degree = rng.gen_range(0..=3);
        let s = random_skeleton(&mut rng, degree);
        let found = matches(&m, &s).unwrap();
        let brute: Vec<Vec<String>> = tuples(m.domain(), degree)
            .into_iter()
            .filter(|t| crate::graph::instantiates(t, &s, m.graph()))
            .collect();
        prop_assert_eq!(found, brute);
    }
}
