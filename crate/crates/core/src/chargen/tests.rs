use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::argue::{random_model, RandomParams};
use crate::argue::{EquivDungModel, NodeSet};
use crate::check::{satisfies_closed, Model};
use crate::fixtures;

fn chain() -> EquivDungModel {
    EquivDungModel::new(fixtures::equiv_chain()).unwrap()
}

fn mutual() -> EquivDungModel {
    EquivDungModel::new(fixtures::equiv_mutual()).unwrap()
}

fn cs(k: usize) -> Vec<Term> {
    constant_names(k).into_iter().map(Term::constant).collect()
}

/// Truth of `f` with `c1..` bound to `nodes`.
fn holds(m: &EquivDungModel, f: &Formula, nodes: &[&str]) -> bool {
    let mut i = std_interpretation(f);
    let names = constant_names(nodes.len());
    bind_constants(&mut i, names.iter().map(String::as_str).zip(nodes.iter().copied()));
    satisfies_closed(&Model::new(m.graph().clone()), &i, f).unwrap()
}

fn report(m: &EquivDungModel, family: Family) -> FamilyReport {
    cross_validate(m, family, &ValidateOptions::default()).unwrap()
}

#[test]
fn empty_operators() {
    let mut g = Gen::new(3);
    assert_eq!(g.cf(&[]), Formula::Top);
    assert_eq!(g.wcf(&[]), Formula::Top);
    assert_eq!(g.cl(0, &[]), Formula::Top);
    assert_eq!(g.cl(0, &cs(1)), Formula::Bottom);
    assert_eq!(g.cl(2, &cs(1)), Formula::Bottom);
    assert_eq!(g.distinct(&[], &[]), Formula::Bottom);
}

#[test]
fn generated_formulas_are_closed() {
    let n = 3;
    for family in Family::all() {
        let shapes: Vec<(Vec<String>, Vec<usize>)> = match family {
            Family::Df | Family::Wdf => (0..=n)
                .map(|k| {
                    let mut c = vec![TARGET.to_string()];
                    c.extend(constant_names(k));
                    (c, vec![])
                })
                .collect(),
            Family::Cl => vec![(constant_names(3), vec![1]), (constant_names(2), vec![2])],
            Family::Distinct => vec![(constant_names(3), vec![1, 2]), (constant_names(1), vec![0, 1])],
            Family::Cmps => vec![(constant_names(3), vec![0, 1, 2])],
            _ => (0..=n).map(|k| (constant_names(k), vec![])).collect(),
        };
        for (c, split) in shapes {
            let f = generate(&FormulaRequest::new(family, n, c).with_split(split)).unwrap();
            assert!(f.free_vars().is_empty(), "{family}: {:?}", f.free_vars());
            assert!(f.is_well_formed());
        }
    }
}

#[test]
fn request_errors() {
    let req = |family, n, k| FormulaRequest::new(family, n, constant_names(k));
    assert_eq!(generate(&req(Family::Cf, 9, 1)), Err(GenError::TooLarge(9)));
    assert!(matches!(generate(&req(Family::Adm, 2, 3)), Err(GenError::KExceedsN { k: 3, n: 2, .. })));
    assert!(matches!(generate(&req(Family::Cl, 3, 2)), Err(GenError::ArityMismatch { .. })));
    assert!(matches!(generate(&req(Family::Df, 3, 0)), Err(GenError::ArityMismatch { .. })));
    assert!(matches!(
        generate(&req(Family::Distinct, 3, 2).with_split(vec![1, 2])),
        Err(GenError::ArityMismatch { .. })
    ));
    assert!(matches!(generate(&req(Family::Cf, 3, 2).with_split(vec![1])), Err(GenError::ArityMismatch { .. })));
}

#[test]
fn conflict_free_pairs_of_the_chain() {
    let m = chain();
    let cf = Gen::new(5).cf(&cs(2));
    assert!(holds(&m, &cf, &["u1", "u4"]));
    assert!(!holds(&m, &cf, &["u2", "u3"]));
    // Repeated constants are not a 2-element set.
    assert!(!holds(&m, &cf, &["u1", "u1"]));
}

#[test]
fn closure_and_wide_notions_on_the_chain() {
    let m = chain();
    let mut g = Gen::new(5);
    let cl = g.cl(1, &cs(2));
    assert!(holds(&m, &cl, &["u3", "u5"]));
    assert!(!holds(&m, &cl, &["u3", "u4"]));
    assert!(!holds(&m, &g.cl(1, &cs(1)), &["u3"]));
    assert!(holds(&m, &g.cl(1, &cs(1)), &["u1"]));
    let wcf = g.wcf(&cs(2));
    assert!(holds(&m, &wcf, &["u1", "u3"]));
    // u5 joins u3 in the closure and u4 attacks it.
    assert!(holds(&m, &g.cf(&cs(2)), &["u4", "u3"]));
    assert!(!holds(&m, &wcf, &["u4", "u3"]));
}

#[test]
fn fixture_reports_pass() {
    let top = report(&chain(), Family::Cf);
    assert_eq!((top.cases, top.passed()), (32, true));
    let bottom = report(&mutual(), Family::Complete(Base::WD));
    assert_eq!((bottom.cases, bottom.passed()), (64, true));
}

#[test]
fn lemma_families_on_fixtures() {
    for m in [chain(), mutual()] {
        for family in Family::LEMMAS {
            let r = report(&m, family);
            assert!(r.passed(), "{family}: {:?}", r.mismatches);
        }
    }
}

#[test]
fn set_families_on_fixtures() {
    for m in [chain(), mutual()] {
        for family in [Family::Adm, Family::Wadm, Family::Complete(Base::D), Family::Complete(Base::E)] {
            let r = report(&m, family);
            assert!(r.passed(), "{family}: {:?}", r.mismatches);
        }
    }
}

#[test]
fn block_lists_on_fixtures() {
    for m in [chain(), mutual()] {
        let r = report(&m, Family::Cmps);
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(r.cases >= 3);
    }
}

#[test]
fn mutant_is_caught() {
    let opts = ValidateOptions {
        mutant: true,
        ..ValidateOptions::default()
    };
    for family in [Family::Cf, Family::Cl, Family::Df] {
        let r = cross_validate(&chain(), family, &opts).unwrap();
        assert!(!r.passed(), "{family}");
    }
}

#[test]
fn bound_is_enforced() {
    let opts = ValidateOptions {
        bound: 3,
        ..ValidateOptions::default()
    };
    assert!(matches!(
        cross_validate(&chain(), Family::Cf, &opts),
        Err(ValidateError::Arg(crate::argue::ArgError::BoundExceeded { nodes: 5, bound: 3 }))
    ));
}

#[test]
fn propositional_route_agrees() {
    let opts = ValidateOptions {
        propositional: true,
        ..ValidateOptions::default()
    };
    for family in [Family::Cf, Family::Df, Family::Adm] {
        let r = cross_validate(&chain(), family, &opts).unwrap();
        assert!(r.passed(), "{family}: {:?}", r.mismatches);
    }
}

fn small_model(seed: u64, max: usize) -> EquivDungModel {
    random_model(&mut ChaCha8Rng::seed_from_u64(seed), RandomParams::up_to(max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wide_conflict_freeness_at_full_width_is_conflict_freeness(seed in any::<u64>()) {
        let m = small_model(seed, 4);
        for s in (0..=m.all().0).map(NodeSet) {
            let names = m.set_names(s);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let k = refs.len();
            let wcf = Gen::new(k).wcf(&cs(k));
            let cf = Gen::new(k).cf(&cs(k));
            prop_assert_eq!(holds(&m, &wcf, &refs), holds(&m, &cf, &refs));
        }
    }

    #[test]
    fn lemma_families_match_the_semantics(seed in any::<u64>()) {
        let m = small_model(seed, 4);
        for family in Family::LEMMAS {
            let r = report(&m, family);
            prop_assert!(r.passed(), "{}: {:?}", family, r.mismatches);
        }
    }
}
