mod support;

use std::collections::BTreeSet;

use dgl_core::argue::{seeded_distinct_models, EquivDungModel, ExtensionSpec, RandomParams};
use dgl_core::fixtures;
use proptest::prelude::*;
use support::{as_sets, Framework};

fn spec(s: &str) -> ExtensionSpec {
    s.parse().unwrap()
}

fn agrees_with_textbook(m: &EquivDungModel) -> Result<(), TestCaseError> {
    let fw = Framework::of(m);
    let e = |s: &str| as_sets(&m.enumerate(spec(s), 20).unwrap());
    let set = |v: Vec<support::Ext>| v.into_iter().collect::<BTreeSet<_>>();
    prop_assert_eq!(e("simple:defence:complete"), set(fw.complete()));
    prop_assert_eq!(e("simple:defence:preferred"), set(fw.preferred()));
    prop_assert_eq!(e("simple:defence:grounded"), BTreeSet::from([fw.grounded()]));
    prop_assert_eq!(e("simple:defence:stable"), set(fw.stable()));
    Ok(())
}

#[test]
fn plain_attack_graph_matches_textbook_semantics() {
    let m = EquivDungModel::new(fixtures::dung_cycles()).unwrap();
    agrees_with_textbook(&m).unwrap();
    // With one argument per class, wide and simple notions coincide.
    for mu in ["complete", "preferred", "grounded", "stable"] {
        assert_eq!(
            m.enumerate(spec(&format!("simple:defence:{mu}")), 20).unwrap(),
            m.enumerate(spec(&format!("wide:both:{mu}")), 20).unwrap()
        );
    }
}

#[test]
fn seeded_distinct_models_match_textbook_semantics() {
    for m in seeded_distinct_models(11, 50, RandomParams::up_to(7)) {
        agrees_with_textbook(&m).unwrap();
    }
}

proptest! {
    #[test]
    fn distinct_models_match_textbook_semantics(seed in any::<u64>()) {
        for m in seeded_distinct_models(seed, 3, RandomParams::up_to(6)) {
            agrees_with_textbook(&m)?;
        }
    }
}
