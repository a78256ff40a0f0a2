//! Brute-force oracles over explicit element sets. Nothing here calls the
//! lattice or hom machinery under test; subgroups are sorted index lists.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rickart_core::{FiniteAbelianGroup, GroupElement, Subgroup};

pub type Set = Vec<u64>;

pub fn g(s: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(s).unwrap()
}

pub fn to_set(s: &Subgroup) -> Set {
    let g = s.ambient();
    let mut v: Vec<u64> = s.elements().iter().map(|x| g.index_of(x)).collect();
    v.sort_unstable();
    v
}

/// Smallest subgroup containing `gens`.
pub fn closure(g: &FiniteAbelianGroup, gens: &[u64]) -> Set {
    let gens: Vec<GroupElement> = gens.iter().map(|&i| g.element_at(i)).collect();
    let mut seen = vec![false; g.order() as usize];
    seen[0] = true;
    let mut queue = VecDeque::from([g.zero_element()]);
    while let Some(y) = queue.pop_front() {
        for x in &gens {
            let z = g.add(&y, x);
            let i = g.index_of(&z) as usize;
            if !seen[i] {
                seen[i] = true;
                queue.push_back(z);
            }
        }
    }
    (0..seen.len() as u64).filter(|&i| seen[i as usize]).collect()
}

/// Every subgroup, grown one generator at a time from the zero subgroup.
pub fn all_subgroups(g: &FiniteAbelianGroup) -> Vec<Set> {
    let mut found = BTreeSet::from([vec![0u64]]);
    let mut queue = VecDeque::from([vec![0u64]]);
    while let Some(s) = queue.pop_front() {
        for x in 0..g.order() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = s.clone();
            gens.push(x);
            let t = closure(g, &gens);
            if found.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    found.into_iter().collect()
}

pub fn meet(a: &Set, b: &Set) -> Set {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

pub fn join(g: &FiniteAbelianGroup, a: &Set, b: &Set) -> Set {
    let gens: Vec<u64> = a.iter().chain(b).copied().collect();
    closure(g, &gens)
}

pub fn subset(a: &Set, b: &Set) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// A homomorphism given by the images of the standard generators.
#[derive(Clone, Debug)]
pub struct Map {
    pub images: Vec<GroupElement>,
}

impl Map {
    pub fn apply(&self, n: &FiniteAbelianGroup, x: &GroupElement) -> GroupElement {
        let mut acc = n.zero_element();
        for (c, img) in x.0.iter().zip(&self.images) {
            acc = n.add(&acc, &n.scale(img, *c));
        }
        acc
    }
}

/// All of `Hom(M, N)`: each generator of order `m_i` may go to any element
/// of `N` killed by `m_i`.
pub fn all_maps(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup) -> Vec<Map> {
    let choices: Vec<Vec<GroupElement>> = m
        .factors()
        .iter()
        .map(|&k| n.elements().filter(|x| n.scale(x, k as i64).0.iter().all(|&c| c == 0)).collect())
        .collect();
    let mut out = vec![Map { images: Vec::new() }];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|f| {
                c.iter().map(move |x| {
                    let mut images = f.images.clone();
                    images.push(x.clone());
                    Map { images }
                })
            })
            .collect();
    }
    out
}

pub fn kernel(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, f: &Map) -> Set {
    m.elements()
        .filter(|x| f.apply(n, x).0.iter().all(|&c| c == 0))
        .map(|x| m.index_of(&x))
        .collect()
}

pub fn image(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, f: &Map) -> Set {
    let s: BTreeSet<u64> = m.elements().map(|x| n.index_of(&f.apply(n, &x))).collect();
    s.into_iter().collect()
}

pub fn image_of_set(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, f: &Map, k: &Set) -> Set {
    let s: BTreeSet<u64> = k.iter().map(|&i| n.index_of(&f.apply(n, &m.element_at(i)))).collect();
    s.into_iter().collect()
}

/// Element-order histogram; two finite abelian groups are isomorphic exactly
/// when these agree.
pub fn order_profile(g: &FiniteAbelianGroup, s: &Set) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &i in s {
        *h.entry(g.element_order(&g.element_at(i))).or_insert(0) += 1;
    }
    h
}

/// Order profile of `G/K`, computed on cosets.
pub fn quotient_profile(g: &FiniteAbelianGroup, k: &Set) -> BTreeMap<u64, usize> {
    let coset = |x: &GroupElement| -> u64 { k.iter().map(|&i| g.index_of(&g.add(x, &g.element_at(i)))).min().unwrap() };
    let mut reps = BTreeSet::new();
    let mut h = BTreeMap::new();
    for x in g.elements() {
        let r = coset(&x);
        if !reps.insert(r) {
            continue;
        }
        let mut ord = 1;
        let mut y = x.clone();
        while coset(&y) != 0 {
            y = g.add(&y, &x);
            ord += 1;
        }
        *h.entry(ord).or_insert(0) += 1;
    }
    h
}

/// Lattice and summand data of one group, computed from scratch.
pub struct Lattice {
    pub g: FiniteAbelianGroup,
    pub subs: Vec<Set>,
    pub whole: Set,
    pub zero: Set,
}

impl Lattice {
    pub fn new(g: &FiniteAbelianGroup) -> Self {
        Lattice {
            g: g.clone(),
            subs: all_subgroups(g),
            whole: (0..g.order()).collect(),
            zero: vec![0],
        }
    }

    pub fn join(&self, a: &Set, b: &Set) -> Set {
        join(&self.g, a, b)
    }

    pub fn is_summand(&self, k: &Set) -> bool {
        let want = self.g.order() as usize / k.len();
        self.subs.iter().any(|c| c.len() == want && meet(k, c) == self.zero)
    }

    pub fn summands(&self) -> Vec<Set> {
        self.subs.iter().filter(|k| self.is_summand(k)).cloned().collect()
    }

    pub fn is_essential(&self, k: &Set) -> bool {
        self.subs.iter().all(|l| l == &self.zero || meet(k, l) != self.zero)
    }

    pub fn is_superfluous(&self, k: &Set) -> bool {
        self.subs.iter().all(|l| l == &self.whole || self.join(k, l) != self.whole)
    }

    /// Invariant under every endomorphism.
    pub fn is_fully_invariant(&self, k: &Set, endos: &[Map]) -> bool {
        endos.iter().all(|f| subset(&image_of_set(&self.g, &self.g, f, k), k))
    }

    /// `k` is essential in some summand satisfying `ok`.
    pub fn essential_in_summand(&self, k: &Set, ok: impl Fn(&Set) -> bool) -> bool {
        self.summands().iter().filter(|s| subset(k, s) && ok(s)).any(|s| {
            self.subs
                .iter()
                .filter(|l| subset(l, s) && **l != self.zero)
                .all(|l| meet(k, l) != self.zero)
        })
    }

    /// Some summand `S <= k` with `k/S` superfluous in `G/S`, and `ok(S)`.
    pub fn lies_above_summand(&self, k: &Set, ok: impl Fn(&Set) -> bool) -> bool {
        self.summands().iter().filter(|s| subset(s, k) && ok(s)).any(|s| {
            self.subs
                .iter()
                .filter(|t| subset(s, t) && **t != self.whole)
                .all(|t| self.join(k, t) != self.whole)
        })
    }
}

/// `{f(x) : f in End(G)}`. A morphism picks the image of each generator `e_i`
/// independently from the elements killed by `n_i`, so the orbit is the
/// set sum of the `x_i`-multiples of those choices.
pub fn endo_orbit(g: &FiniteAbelianGroup, x: &GroupElement) -> Set {
    let mut acc: BTreeSet<u64> = BTreeSet::from([0]);
    for (&c, &n) in x.0.iter().zip(g.factors()) {
        let step: BTreeSet<u64> = g
            .elements()
            .filter(|y| g.scale(y, n as i64).is_zero())
            .map(|y| g.index_of(&g.scale(&y, c)))
            .collect();
        acc = acc
            .iter()
            .flat_map(|&a| step.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.index_of(&g.add(&g.element_at(a), &g.element_at(b))))
            .collect();
    }
    acc.into_iter().collect()
}

/// Invariant under all of `End(G)`, via the orbits of the elements of `k`.
pub fn is_fully_invariant_by_orbits(g: &FiniteAbelianGroup, k: &Set) -> bool {
    k.iter().all(|&i| subset(&endo_orbit(g, &g.element_at(i)), k))
}
