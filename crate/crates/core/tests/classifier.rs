use rickart_core::classifier::{classify, crosscheck_with_bruteforce, FgAbelianGroupSpec};
use rickart_core::rickart::{abelian_profile, PropertyId};
use rickart_core::FiniteAbelianGroup;

use PropertyId::*;

fn has_generator(g: &FiniteAbelianGroup) -> bool {
    g.elements().any(|x| g.element_order(&x) == g.order())
}

#[test]
fn finite_groups_classify_as_computed() {
    for g in FiniteAbelianGroup::all_up_to(64) {
        let c = classify(&FgAbelianGroupSpec::from_finite(&g));
        let p = abelian_profile(&g).unwrap();
        let cyclic = has_generator(&g);
        for id in [StronglyCsRickart, DualStronglyCsRickart, WeakDuo] {
            assert_eq!(c.get(id), Some(p.value(id)), "{id} for {g}");
            assert_eq!(p.value(id), cyclic, "{id} for {g}");
        }
    }
}

#[test]
fn crosscheck_up_to_32_has_no_disagreements() {
    let c = crosscheck_with_bruteforce(32).unwrap();
    assert_eq!(c.instances.len(), 55);
    assert!(c.disagreements.is_empty());
}

#[test]
fn infinite_closed_forms() {
    for (spec, strong, dual) in [
        ("Z", Some(true), Some(false)),
        ("Z+Z", Some(false), Some(false)),
        ("Z+Z4", Some(false), Some(false)),
        ("Q", Some(true), Some(true)),
        ("Q+Q", Some(false), Some(false)),
    ] {
        let c = classify(&FgAbelianGroupSpec::parse(spec).unwrap());
        assert_eq!(c.get(StronglyCsRickart), strong, "{spec}");
        assert_eq!(c.get(DualStronglyCsRickart), dual, "{spec}");
    }
    let outside = classify(&FgAbelianGroupSpec::parse("Z2+Q").unwrap());
    assert!(outside.applicability.outside_scope);
    assert!(outside.properties.is_empty());
}
