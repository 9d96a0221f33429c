use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::check::satisfies_closed;
use crate::check::tests::{random_formula, random_graph, random_interpretation};
use crate::chargen::{bind_constants, std_interpretation, Gen};
use crate::fixtures;
use crate::graph::AnnotatedGraph;
use crate::syntax::{parse_formula, Term};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn var(s: &str) -> PropFormula {
    PropFormula::Var(s.into())
}

#[test]
fn constants_and_equalities_fold() {
    let m = Model::new(fixtures::equiv_chain());
    let i = Interpretation::new();
    assert_eq!(ground(&Formula::Top, &m, &i).unwrap(), PropFormula::True);
    assert_eq!(ground(&f("forall x. x = x"), &m, &i).unwrap(), PropFormula::True);
    assert_eq!(ground(&f("exists x. ~x = x"), &m, &i).unwrap(), PropFormula::False);
    let empty = Model::new(AnnotatedGraph::new());
    assert_eq!(ground(&f("forall x. false"), &empty, &i).unwrap(), PropFormula::True);
    assert_eq!(ground(&f("exists x. true"), &empty, &i).unwrap(), PropFormula::False);
    assert!(matches!(
        ground(&f("p(x)"), &m, &i),
        Err(GroundError::Check(CheckError::NotClosed(_)))
    ));
}

#[test]
fn atoms_become_variables() {
    let m = Model::new(fixtures::equiv_chain());
    let mut i = std_interpretation(&f("p_A(c(), d()) & p_D(c())"));
    bind_constants(&mut i, [("c", "u1"), ("d", "u2")]);
    let p = ground(&f("p_A(c(), d()) & ~p_D(c())"), &m, &i).unwrap();
    assert_eq!(
        p,
        PropFormula::And(vec![var("p_A/2(u1,u2)"), PropFormula::Not(Box::new(var("p_D/1(u1)")))])
    );
    assert_eq!(p.vars().len(), 2);
    let v = induced_valuation(&m, &i, &p.vars()).unwrap();
    assert!(!eval_prop(&p, &v).unwrap());
}

#[test]
fn induced_valuation_examples() {
    let m = Model::new(fixtures::equiv_chain());
    let i = std_interpretation(&f("p_A(c(), c()) & p_D(c())"));
    let names = ["p_A/2(u1,u2)", "p_A/2(u1,u3)", "p_D/1(u1)"].map(String::from);
    let v = induced_valuation(&m, &i, &names).unwrap();
    assert_eq!(v.values().copied().collect::<Vec<_>>(), [true, false, true]);
    assert!(matches!(
        induced_valuation(&m, &i, &["q/1(u1)".to_string()]),
        Err(DecodeError::UnknownPredicate(_))
    ));
    for bad in ["p_A", "p_A/2(u1)", "p_A/x(u1)", "p_A/1(u1"] {
        assert!(decode_atom(bad).is_err(), "{bad}");
    }
    assert_eq!(decode_atom("r/0()").unwrap().1, Vec::<String>::new());
    let atoms = induced_true_atoms(&m, &i);
    assert!(atoms.contains("p_A/2(u4,u5)"));
    assert_eq!(atoms.iter().filter(|a| a.starts_with("p_D/1")).count(), 5);
}

#[test]
fn eval_prop_examples() {
    let v = Valuation::from([("a".to_string(), true)]);
    assert!(eval_prop(&PropFormula::True, &v).unwrap());
    let contra = PropFormula::And(vec![var("a"), PropFormula::Not(Box::new(var("a")))]);
    assert!(!eval_prop(&contra, &v).unwrap());
    assert_eq!(eval_prop(&var("b"), &v), Err(MissingVar("b".into())));
}

#[test]
fn conflict_free_pair_grounds_to_true() {
    let m = Model::new(fixtures::equiv_chain());
    let cf = Gen::new(5).cf(&[Term::constant("c1"), Term::constant("c2")]);
    let mut i = std_interpretation(&cf);
    bind_constants(&mut i, [("c1", "u1"), ("c2", "u4")]);
    let p = ground(&cf, &m, &i).unwrap();
    let v = induced_valuation(&m, &i, &p.vars()).unwrap();
    assert!(eval_prop(&p, &v).unwrap());
    assert!(satisfies_closed(&m, &i, &cf).unwrap());
    assert!(eval_grounded_lazily(&cf, &m, &i).unwrap());
}

/// Minimal DPLL, enough to decide the small CNFs produced in tests.
fn sat(clauses: &[Vec<i64>], assumptions: &[i64]) -> bool {
    fn go(clauses: &[Vec<i64>], assign: &mut Vec<i64>) -> bool {
        loop {
            let mut unit = None;
            for c in clauses {
                if c.iter().any(|l| assign.contains(l)) {
                    continue;
                }
                let open: Vec<i64> = c.iter().copied().filter(|l| !assign.contains(&-l)).collect();
                match open.len() {
                    0 => return false,
                    1 => {
                        unit = Some(open[0]);
                        break;
                    }
                    _ => {}
                }
            }
            match unit {
                Some(l) => assign.push(l),
                None => break,
            }
        }
        let pick = clauses
            .iter()
            .flatten()
            .find(|l| !assign.contains(l) && !assign.contains(&-**l))
            .copied();
        match pick {
            None => true,
            Some(l) => [l, -l].into_iter().any(|b| {
                let mut a = assign.clone();
                a.push(b);
                go(clauses, &mut a)
            }),
        }
    }
    go(clauses, &mut assumptions.to_vec())
}

#[test]
fn dimacs_constants() {
    let t = to_dimacs(&PropFormula::True);
    assert!(t.clauses.is_empty());
    assert!(t.text().contains("p cnf 0 0"));
    let f = to_dimacs(&PropFormula::False);
    assert_eq!(f.clauses, [Vec::<i64>::new()]);
    assert!(!sat(&f.clauses, &[]));
    let d = to_dimacs(&PropFormula::Implies(Box::new(var("a")), Box::new(var("b"))));
    assert_eq!(d.map.variables["a"], 1);
    assert_eq!(d.map.first_aux, 3);
    assert!(d.text().contains("c 1 a"));
    assert!(!sat(&d.clauses, &[1, -2]));
    assert!(sat(&d.clauses, &[-1, -2]));
    let json: DimacsMap = serde_json::from_str(&d.sidecar_json()).unwrap();
    assert_eq!(json, d.map);
}

fn world(seed: u64, depth: usize) -> (Model, Interpretation, Formula) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = Model::new(random_graph(&mut rng));
    let i = random_interpretation(&mut rng);
    let f = random_formula(&mut rng, depth, &mut Vec::new());
    (m, i, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn grounding_preserves_truth(seed in any::<u64>()) {
        let (m, i, f) = world(seed, 4);
        let p = ground(&f, &m, &i).unwrap();
        let v = induced_valuation(&m, &i, &p.vars()).unwrap();
        let expected = satisfies_closed(&m, &i, &f).unwrap();
        prop_assert_eq!(eval_prop(&p, &v).unwrap(), expected);
        prop_assert_eq!(eval_grounded_lazily(&f, &m, &i).unwrap(), expected);
        let bound = f.size() * m.domain().len().max(1).pow(f.quantifier_depth() as u32);
        prop_assert!(p.size() <= bound);
    }

    #[test]
    fn cnf_is_equisatisfiable(seed in any::<u64>()) {
        let (m, i, f) = world(seed, 3);
        let p = ground(&f, &m, &i).unwrap();
        prop_assume!(p.vars().len() <= 10 && p.size() <= 200);
        let d = to_dimacs(&p);
        let vars: Vec<String> = p.vars().into_iter().collect();
        let satisfiable = (0..1u32 << vars.len()).any(|bits| {
            let v: Valuation = vars.iter().enumerate().map(|(k, x)| (x.clone(), bits >> k & 1 == 1)).collect();
            eval_prop(&p, &v).unwrap()
        });
        prop_assert_eq!(sat(&d.clauses, &[]), satisfiable);
        // Under the model's own valuation as unit assumptions.
        let v = induced_valuation(&m, &i, &vars).unwrap();
        let units: Vec<i64> = v.iter().map(|(x, &b)| if b { d.map.variables[x] } else { -d.map.variables[x] }).collect();
        prop_assert_eq!(sat(&d.clauses, &units), eval_prop(&p, &v).unwrap());
    }

    #[test]
    fn quantifier_free_grounding_keeps_its_atoms(seed in any::<u64>()) {
        let (m, i, f) = world(seed, 3);
        let mut qf = true;
        f.visit(&mut |g| if matches!(g, Formula::Forall(..) | Formula::Exists(..)) { qf = false });
        prop_assume!(qf);
        let p = ground(&f, &m, &i).unwrap();
        prop_assert!(p.vars().len() <= f.predicates().len().max(1) * 4);
    }
}
