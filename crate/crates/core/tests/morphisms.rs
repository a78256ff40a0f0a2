mod common;

use std::collections::BTreeSet;

use common::*;
use rickart_core::context::AbelianContext;
use rickart_core::enumerate::enumerate_subgroups;
use rickart_core::hom::{
    complementary_pairs, enumerate_idempotents, hom_group, realizable_subgroups, realize_image, realize_kernel,
    Direction,
};
use rickart_core::predicates::is_fully_invariant;
use rickart_core::{FiniteAbelianGroup, GroupElement, Homomorphism};

fn images(f: &Homomorphism) -> Vec<GroupElement> {
    (0..f.source().rank()).map(|i| f.image_of_basis(i)).collect()
}

fn groups(max: u64) -> Vec<FiniteAbelianGroup> {
    FiniteAbelianGroup::all_up_to(max)
}

#[test]
fn hom_groups_match_brute_force() {
    for m in groups(16) {
        for n in groups(16) {
            let brute = all_maps(&m, &n);
            let h = hom_group(&m, &n);
            assert_eq!(h.size, brute.len() as u64, "Hom({m}, {n})");
            if h.size <= 4096 {
                let ours: BTreeSet<Vec<GroupElement>> = h.elements().unwrap().iter().map(images).collect();
                let theirs: BTreeSet<Vec<GroupElement>> = brute.into_iter().map(|f| f.images).collect();
                assert_eq!(ours, theirs, "Hom({m}, {n})");
            }
        }
    }
}

#[test]
fn realizable_kernels_and_images_match_brute_force() {
    for m in groups(16) {
        for n in groups(16) {
            let maps = all_maps(&m, &n);
            let kernels: BTreeSet<Set> = maps.iter().map(|f| kernel(&m, &n, f)).collect();
            let images: BTreeSet<Set> = maps.iter().map(|f| image(&m, &n, f)).collect();
            let ks = realizable_subgroups(&m, &n, Direction::Kernel).unwrap();
            let is = realizable_subgroups(&m, &n, Direction::Image).unwrap();
            assert_eq!(ks.iter().map(to_set).collect::<BTreeSet<_>>(), kernels, "kernels ({m}, {n})");
            assert_eq!(is.iter().map(to_set).collect::<BTreeSet<_>>(), images, "images ({m}, {n})");
            for k in ks.iter() {
                assert_eq!(&realize_kernel(&n, k).unwrap().kernel(), k, "({m}, {n})");
            }
            for l in is.iter() {
                assert_eq!(&realize_image(&m, l).unwrap().image(), l, "({m}, {n})");
            }
        }
    }
}

#[test]
fn idempotents_correspond_to_complementary_pairs() {
    for g in groups(32) {
        if hom_group(&g, &g).size > 1 << 16 {
            continue;
        }
        let brute: BTreeSet<Vec<GroupElement>> = all_maps(&g, &g)
            .into_iter()
            .filter(|f| (0..g.rank()).all(|i| {
                let x = &f.images[i];
                f.apply(&g, x) == *x
            }))
            .map(|f| f.images)
            .collect();
        let ours = enumerate_idempotents(&g).unwrap();
        let set: BTreeSet<Vec<GroupElement>> = ours.iter().map(images).collect();
        assert_eq!(set.len(), ours.len(), "{g}: repeated idempotent");
        assert_eq!(set, brute, "{g}");
        let pairs: BTreeSet<(Set, Set)> = complementary_pairs(&g)
            .unwrap()
            .iter()
            .map(|(k, c)| (to_set(k), to_set(c)))
            .collect();
        let from_idempotents: BTreeSet<(Set, Set)> =
            ours.iter().map(|e| (to_set(&e.image()), to_set(&e.kernel()))).collect();
        assert_eq!(pairs, from_idempotents, "{g}");
    }
}

#[test]
fn full_invariance_from_generators_matches_all_endomorphisms() {
    for g in groups(32) {
        let ctx = AbelianContext::shared(&g);
        let subs = enumerate_subgroups(&g).unwrap();
        // enumerate End outright where it is small, and cross-check the
        // orbit form against it there
        let endos = (hom_group(&g, &g).size <= 1 << 14).then(|| (Lattice::new(&g), all_maps(&g, &g)));
        for k in subs.iter() {
            let s = to_set(k);
            let by_orbits = is_fully_invariant_by_orbits(&g, &s);
            if let Some((lat, endos)) = &endos {
                assert_eq!(lat.is_fully_invariant(&s, endos), by_orbits, "{g}: {k}");
            }
            assert_eq!(is_fully_invariant(ctx.as_ref(), k).unwrap().value, by_orbits, "{g}: {k}");
        }
    }
}
