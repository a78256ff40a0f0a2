mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use proptest::prelude::*;
use rickart_core::context::AbelianContext;
use rickart_core::enumerate::enumerate_subgroups;
use rickart_core::hom::hom_group;
use rickart_core::predicates::{is_essential, is_superfluous};
use rickart_core::rickart::{abelian_profile, decide, AbelianPair, PropertyId};
use rickart_core::FiniteAbelianGroup;

use PropertyId::*;

const RELATIVE: [PropertyId; 17] = [
    CsRickart,
    DualCsRickart,
    StronglyCsRickart,
    DualStronglyCsRickart,
    Rickart,
    DualRickart,
    StronglyRickart,
    DualStronglyRickart,
    KNonsingular,
    TNonsingular,
    DirectInjective,
    DirectProjective,
    Regular,
    StronglyRegular,
    Extending,
    Lifting,
    WeakDuo,
];

struct Side {
    lat: Lattice,
    endos: Vec<Map>,
}

impl Side {
    fn new(g: &FiniteAbelianGroup) -> Self {
        Side {
            lat: Lattice::new(g),
            endos: all_maps(g, g),
        }
    }

    fn fi(&self, s: &Set) -> bool {
        self.lat.is_fully_invariant(s, &self.endos)
    }

    fn fi_summand(&self, s: &Set) -> bool {
        self.lat.is_summand(s) && self.fi(s)
    }

    fn summand_profiles(&self) -> BTreeSet<BTreeMap<u64, usize>> {
        self.lat.summands().iter().map(|s| order_profile(&self.lat.g, s)).collect()
    }
}

/// Every relative property of `Hom(M, N)` straight from the definitions.
fn relative_oracle(m: &Side, n: &Side) -> BTreeMap<PropertyId, bool> {
    let (gm, gn) = (&m.lat.g, &n.lat.g);
    let maps = all_maps(gm, gn);
    let kernels: BTreeSet<Set> = maps.iter().map(|f| kernel(gm, gn, f)).collect();
    let images: BTreeSet<Set> = maps.iter().map(|f| image(gm, gn, f)).collect();
    let all_k = |p: &dyn Fn(&Set) -> bool| kernels.iter().all(p);
    let all_i = |p: &dyn Fn(&Set) -> bool| images.iter().all(p);
    let mut v = BTreeMap::new();
    v.insert(CsRickart, all_k(&|k| m.lat.essential_in_summand(k, |_| true)));
    v.insert(StronglyCsRickart, all_k(&|k| m.lat.essential_in_summand(k, |s| m.fi(s))));
    v.insert(DualCsRickart, all_i(&|l| n.lat.lies_above_summand(l, |_| true)));
    v.insert(DualStronglyCsRickart, all_i(&|l| n.lat.lies_above_summand(l, |s| n.fi(s))));
    v.insert(Rickart, all_k(&|k| m.lat.is_summand(k)));
    v.insert(StronglyRickart, all_k(&|k| m.fi_summand(k)));
    v.insert(DualRickart, all_i(&|l| n.lat.is_summand(l)));
    v.insert(DualStronglyRickart, all_i(&|l| n.fi_summand(l)));
    v.insert(KNonsingular, all_k(&|k| !m.lat.is_essential(k) || *k == m.lat.whole));
    v.insert(TNonsingular, all_i(&|l| !n.lat.is_superfluous(l) || *l == n.lat.zero));
    let m_types = m.summand_profiles();
    v.insert(
        DirectInjective,
        n.lat
            .subs
            .iter()
            .filter(|l| m_types.contains(&order_profile(gn, l)))
            .all(|l| n.lat.is_summand(l)),
    );
    let n_types = n.summand_profiles();
    v.insert(
        DirectProjective,
        m.lat
            .subs
            .iter()
            .filter(|k| n_types.contains(&quotient_profile(gm, k)))
            .all(|k| m.lat.is_summand(k)),
    );
    v.insert(Regular, v[&Rickart] && v[&DualRickart]);
    v.insert(StronglyRegular, v[&StronglyRickart] && v[&DualStronglyRickart]);
    v
}

/// Properties of a single object that are not relative.
fn self_oracle(s: &Side) -> BTreeMap<PropertyId, bool> {
    let lat = &s.lat;
    let summands = lat.summands();
    let mut v = BTreeMap::new();
    v.insert(Extending, lat.subs.iter().all(|k| lat.essential_in_summand(k, |_| true)));
    v.insert(StronglyExtending, lat.subs.iter().all(|k| lat.essential_in_summand(k, |x| s.fi(x))));
    v.insert(Lifting, lat.subs.iter().all(|k| lat.lies_above_summand(k, |_| true)));
    v.insert(StronglyLifting, lat.subs.iter().all(|k| lat.lies_above_summand(k, |x| s.fi(x))));
    v.insert(WeakDuo, summands.iter().all(|x| s.fi(x)));
    let g = &lat.g;
    let idempotents: Vec<&Map> = s
        .endos
        .iter()
        .filter(|f| f.images.iter().all(|x| f.apply(g, x) == *x))
        .collect();
    let commute = |e: &Map, f: &Map| e.images.iter().zip(&f.images).all(|(ex, fx)| f.apply(g, ex) == e.apply(g, fx));
    v.insert(AbelianEndRing, idempotents.iter().all(|e| s.endos.iter().all(|f| commute(e, f))));
    let distinct_pairs = |op: &dyn Fn(&Set, &Set) -> Set, ok: &dyn Fn(&Set) -> bool| {
        (0..summands.len()).all(|j| (0..j).all(|i| ok(&op(&summands[i], &summands[j]))))
    };
    let meet_op = |a: &Set, b: &Set| meet(a, b);
    let join_op = |a: &Set, b: &Set| lat.join(a, b);
    v.insert(SipExtending, distinct_pairs(&meet_op, &|x| lat.essential_in_summand(x, |_| true)));
    v.insert(StrictlySipExtending, distinct_pairs(&meet_op, &|x| lat.essential_in_summand(x, |y| s.fi(y))));
    v.insert(SspLifting, distinct_pairs(&join_op, &|x| lat.lies_above_summand(x, |_| true)));
    v.insert(StrictlySspLifting, distinct_pairs(&join_op, &|x| lat.lies_above_summand(x, |y| s.fi(y))));
    v
}

fn small_end(g: &FiniteAbelianGroup, limit: u64) -> bool {
    hom_group(g, g).size <= limit
}

#[test]
fn essential_and_superfluous_match_definitions() {
    for g in FiniteAbelianGroup::all_up_to(32) {
        let ctx = AbelianContext::shared(&g);
        let lat = Lattice::new(&g);
        for k in enumerate_subgroups(&g).unwrap().iter() {
            let s = to_set(k);
            assert_eq!(is_essential(ctx.as_ref(), k).unwrap().value, lat.is_essential(&s), "{g}: {k} essential");
            assert_eq!(is_superfluous(ctx.as_ref(), k).unwrap().value, lat.is_superfluous(&s), "{g}: {k} superfluous");
        }
    }
}

#[test]
fn relative_properties_match_definitions() {
    let groups: Vec<_> = FiniteAbelianGroup::all_up_to(16).into_iter().filter(|g| small_end(g, 1 << 12)).collect();
    let sides: Vec<Side> = groups.iter().map(Side::new).collect();
    for (m, sm) in groups.iter().zip(&sides) {
        for (n, sn) in groups.iter().zip(&sides) {
            let pair = AbelianPair::new(m, n);
            for (id, want) in relative_oracle(sm, sn) {
                assert_eq!(decide(&pair, id).unwrap().value, want, "{id} for M = {m}, N = {n}");
            }
        }
    }
}

#[test]
fn self_properties_match_definitions() {
    for g in FiniteAbelianGroup::all_up_to(32) {
        if !small_end(&g, 1 << 12) {
            continue;
        }
        let side = Side::new(&g);
        let profile = abelian_profile(&g).unwrap();
        let mut want = relative_oracle(&side, &side);
        want.extend(self_oracle(&side));
        for id in RELATIVE.into_iter().chain(want.keys().copied()) {
            assert_eq!(profile.value(id), want[&id], "{id} for {g}");
        }
    }
}

fn pair_strategy() -> impl Strategy<Value = (FiniteAbelianGroup, FiniteAbelianGroup)> {
    let groups = FiniteAbelianGroup::all_up_to(32);
    let n = groups.len();
    (0..n, 0..n).prop_map(move |(i, j)| (groups[i].clone(), groups[j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Stronger notions imply weaker ones for every pair.
    #[test]
    fn relative_implications((m, n) in pair_strategy()) {
        let pair = AbelianPair::new(&m, &n);
        let v = |id| decide(&pair, id).unwrap().value;
        for (strong, weak) in [
            (Rickart, CsRickart),
            (DualRickart, DualCsRickart),
            (StronglyRickart, Rickart),
            (DualStronglyRickart, DualRickart),
            (StronglyCsRickart, CsRickart),
            (DualStronglyCsRickart, DualCsRickart),
            (StronglyRickart, StronglyCsRickart),
            (DualStronglyRickart, DualStronglyCsRickart),
            (StronglyRegular, Regular),
        ] {
            prop_assert!(!v(strong) || v(weak), "{} without {} for ({}, {})", strong, weak, m, n);
        }
    }

    /// Rickart passes to summands of the source.
    #[test]
    fn rickart_descends_to_source_summands((m, n) in pair_strategy()) {
        if decide(&AbelianPair::new(&m, &n), Rickart).unwrap().value {
            for t in m.iso_type().summand_types() {
                let part = t.to_group();
                prop_assert!(decide(&AbelianPair::new(&part, &n), Rickart).unwrap().value, "{} from {}", part, m);
            }
        }
    }
}
