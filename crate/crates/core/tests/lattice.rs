mod common;

use common::*;
use proptest::prelude::*;
use rickart_core::enumerate::enumerate_subgroups;
use rickart_core::matrix::{smith_normal_form, IntegerMatrix};
use rickart_core::{FiniteAbelianGroup, GroupElement, Subgroup};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-40i64..40, c), r))
}

fn small_group() -> impl Strategy<Value = FiniteAbelianGroup> {
    let groups = FiniteAbelianGroup::all_up_to(32);
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(rows in matrix()) {
        let a = IntegerMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntegerMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntegerMatrix::identity(a.cols()));
        prop_assert!(s.d.is_diagonal());
        let d = s.diagonal();
        prop_assert!(d.iter().all(|&x| x >= 0));
        for w in d.windows(2) {
            prop_assert!(w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0, "{:?}", d);
        }
        let content = rows.iter().flatten().fold(0, |acc, &x| gcd(acc, x));
        prop_assert_eq!(d[0], content);
        if a.rows() == a.cols() {
            prop_assert_eq!(d.iter().product::<i64>(), a.determinant().unwrap().abs());
        }
    }

    #[test]
    fn meet_and_join_satisfy_the_product_formula(g in small_group(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let subs = enumerate_subgroups(&g).unwrap();
        let (k, l) = (&subs[i.index(subs.len())], &subs[j.index(subs.len())]);
        let (m, s) = (k.intersection(l).unwrap(), k.sum(l).unwrap());
        prop_assert_eq!(m.order() * s.order(), k.order() * l.order());
        prop_assert_eq!(to_set(&m), meet(&to_set(k), &to_set(l)));
        prop_assert_eq!(to_set(&s), join(&g, &to_set(k), &to_set(l)));
    }

    #[test]
    fn equal_subgroups_have_equal_canonical_forms(g in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4), extra in any::<prop::sample::Index>()) {
        let n = g.order() as usize;
        let gens: Vec<GroupElement> = picks.iter().map(|p| g.element_at(p.index(n) as u64)).collect();
        let k = Subgroup::from_generators(&g, &gens).unwrap();
        // adding an element already inside must not change the representation
        let inside = k.elements();
        let mut more = gens.clone();
        more.push(inside[extra.index(inside.len())].clone());
        more.reverse();
        let k2 = Subgroup::from_generators(&g, &more).unwrap();
        prop_assert_eq!(&k, &k2);
        prop_assert_eq!(k.basis_rows(), k2.basis_rows());
        let ids: Vec<u64> = gens.iter().map(|x| g.index_of(x)).collect();
        prop_assert_eq!(to_set(&k), closure(&g, &ids));
        let back = Subgroup::from_basis_rows(&g, &k.basis_rows()).unwrap();
        prop_assert_eq!(back, k);
    }
}

#[test]
fn subgroup_lattices_match_element_closure() {
    for g in FiniteAbelianGroup::all_up_to(32) {
        let mut ours: Vec<Set> = enumerate_subgroups(&g).unwrap().iter().map(to_set).collect();
        ours.sort();
        let n = ours.len();
        ours.dedup();
        assert_eq!(ours.len(), n, "{g}: duplicate subgroups");
        assert_eq!(ours, all_subgroups(&g), "{g}");
    }
}

#[test]
fn known_subgroup_counts() {
    for (spec, count) in [("Z2^3", 16), ("Z2^4", 67), ("Z3^2", 6), ("Z5^2", 8), ("Z2+Z4", 8), ("Z4^2", 15), ("Z12", 6), ("Z2^5", 374)] {
        assert_eq!(enumerate_subgroups(&g(spec)).unwrap().len(), count, "{spec}");
    }
}

#[test]
fn iso_types_of_subgroups_match_order_profiles() {
    for spec in ["Z2+Z8", "Z4^2", "Z2+Z4+Z3", "Z3+Z9"] {
        let g = g(spec);
        for k in enumerate_subgroups(&g).unwrap().iter() {
            let t = k.iso_type().to_group();
            let whole: Set = (0..t.order()).collect();
            assert_eq!(order_profile(&t, &whole), order_profile(&g, &to_set(k)), "{spec}: {k}");
        }
    }
}
