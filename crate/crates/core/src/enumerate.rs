//! Subgroup enumeration by cyclic extension within primary components.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::valuation;
use crate::error::{LabError, Result};
use crate::group::FiniteAbelianGroup;
use crate::subgroup::Subgroup;

static MAX_ORDER: AtomicU64 = AtomicU64::new(1 << 12);
static MAX_SUBGROUPS: AtomicU64 = AtomicU64::new(400_000);

/// Largest group order for which element-level enumeration is allowed.
pub fn max_order() -> u64 {
    MAX_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_order(n: u64) {
    MAX_ORDER.store(n, Ordering::Relaxed);
}

/// Largest number of subgroups a single enumeration may produce.
pub fn max_subgroups() -> u64 {
    MAX_SUBGROUPS.load(Ordering::Relaxed)
}

pub fn set_max_subgroups(n: u64) {
    MAX_SUBGROUPS.store(n, Ordering::Relaxed);
}

type Memo<T> = RwLock<HashMap<Vec<u64>, Arc<T>>>;

fn lattice_memo() -> &'static Memo<Vec<Subgroup>> {
    static M: OnceLock<Memo<Vec<Subgroup>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn atom_memo() -> &'static Memo<Vec<(u64, Subgroup)>> {
    static M: OnceLock<Memo<Vec<(u64, Subgroup)>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn memo_get<T>(memo: &Memo<T>, key: &[u64]) -> Option<Arc<T>> {
    memo.read().unwrap_or_else(|e| e.into_inner()).get(key).cloned()
}

fn memo_put<T>(memo: &Memo<T>, key: &[u64], value: Arc<T>) -> Arc<T> {
    let mut w = memo.write().unwrap_or_else(|e| e.into_inner());
    w.entry(key.to_vec()).or_insert(value).clone()
}

/// Nonzero cyclic subgroups of prime-power order, tagged with their prime,
/// sorted canonically within each prime. Every subgroup is a sum of these.
pub fn prime_power_cyclic_subgroups(g: &FiniteAbelianGroup) -> Result<Arc<Vec<(u64, Subgroup)>>> {
    if let Some(a) = memo_get(atom_memo(), g.factors()) {
        return Ok(a);
    }
    g.check_order(max_order(), "element enumeration")?;
    let mut out = Vec::new();
    for p in g.primes() {
        let pe = p.pow(valuation(g.exponent(), p)) as i64;
        let cof = g.exponent() as i64 / pe;
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for x in g.elements() {
            // keep only elements of p-power order: those fixed by the p-part
            // projection x -> c x with c = cofactor * inverse
            let y = g.scale(&x, cof);
            if y.is_zero() {
                continue;
            }
            let s = Subgroup::from_generators(g, &[y])?;
            if seen.insert(s.clone()) {
                list.push(s);
            }
        }
        list.sort();
        out.extend(list.into_iter().map(|s| (p, s)));
    }
    Ok(memo_put(atom_memo(), g.factors(), Arc::new(out)))
}

pub fn check_subgroup_count(n: usize, g: &FiniteAbelianGroup) -> Result<()> {
    if n as u64 > max_subgroups() {
        Err(LabError::resource(
            format!("subgroup count of {g}"),
            max_subgroups(),
            n as u64,
        ))
    } else {
        Ok(())
    }
}

/// All subgroups `H <= within` with `pred(H)`. `pred` must hold for a
/// subgroup iff it holds for each of its primary components, and every
/// nonzero `H` with `pred(H)` must be `H' + <a>` for some `H' < H` with
/// `pred(H')` and some `a` of prime-power order. Predicates closed under
/// passing to subgroups qualify, and so does "is a direct summand".
/// Canonically sorted.
pub fn subgroups_within_where(
    within: &Subgroup,
    pred: &(dyn Fn(&Subgroup) -> bool + Sync),
) -> Result<Vec<Subgroup>> {
    let g = within.ambient();
    let atoms = prime_power_cyclic_subgroups(g)?;
    let zero = Subgroup::zero(g);
    let mut per_prime: Vec<Vec<Subgroup>> = Vec::new();
    for p in g.primes() {
        let local: Vec<&Subgroup> = atoms
            .iter()
            .filter(|(q, s)| *q == p && s.is_subgroup_of(within))
            .map(|(_, s)| s)
            .collect();
        let mut seen: HashSet<Subgroup> = HashSet::new();
        seen.insert(zero.clone());
        let mut found = vec![zero.clone()];
        let mut i = 0;
        while i < found.len() {
            let s = found[i].clone();
            for a in &local {
                let gen = &a.generators()[0];
                if s.contains(gen) {
                    continue;
                }
                let t = s.with_generator(&gen.0);
                if seen.insert(t.clone()) && pred(&t) {
                    found.push(t);
                    check_subgroup_count(found.len(), g)?;
                }
            }
            i += 1;
        }
        per_prime.push(found);
    }
    let mut all = vec![zero];
    for list in per_prime {
        let mut next = Vec::with_capacity(all.len() * list.len());
        for a in &all {
            for b in &list {
                next.push(a.sum_unchecked(b));
            }
        }
        check_subgroup_count(next.len(), g)?;
        all = next;
    }
    all.retain(|s| pred(s));
    all.sort();
    all.dedup();
    Ok(all)
}

pub fn subgroups_where(
    g: &FiniteAbelianGroup,
    pred: &(dyn Fn(&Subgroup) -> bool + Sync),
) -> Result<Vec<Subgroup>> {
    subgroups_within_where(&Subgroup::whole(g), pred)
}

/// The full subgroup lattice, canonically sorted and memoized.
pub fn enumerate_subgroups(g: &FiniteAbelianGroup) -> Result<Arc<Vec<Subgroup>>> {
    if let Some(l) = memo_get(lattice_memo(), g.factors()) {
        return Ok(l);
    }
    g.check_order(max_order(), "subgroup enumeration")?;
    let list = subgroups_where(g, &|_| true)?;
    Ok(memo_put(lattice_memo(), g.factors(), Arc::new(list)))
}

/// Seed the lattice memo (used by the on-disk cache). The list must be the
/// complete canonical lattice of `g`.
pub fn preload_lattice(g: &FiniteAbelianGroup, list: Vec<Subgroup>) {
    memo_put(lattice_memo(), g.factors(), Arc::new(list));
}

pub fn cached_lattice(g: &FiniteAbelianGroup) -> Option<Arc<Vec<Subgroup>>> {
    memo_get(lattice_memo(), g.factors())
}

/// All `H >= base` with `pred(H)`, `pred` closed under passing to subgroups
/// that still contain `base`. Canonically sorted.
pub fn supergroups_where(
    base: &Subgroup,
    pred: &(dyn Fn(&Subgroup) -> bool + Sync),
) -> Result<Vec<Subgroup>> {
    let g = base.ambient();
    if !pred(base) {
        return Ok(Vec::new());
    }
    let atoms = prime_power_cyclic_subgroups(g)?;
    let mut seen: HashSet<Subgroup> = HashSet::new();
    seen.insert(base.clone());
    let mut found = vec![base.clone()];
    let mut i = 0;
    while i < found.len() {
        let s = found[i].clone();
        if !s.is_whole() {
            for (_, a) in atoms.iter() {
                let gen = &a.generators()[0];
                if s.contains(gen) {
                    continue;
                }
                let t = s.with_generator(&gen.0);
                if seen.insert(t.clone()) && pred(&t) {
                    found.push(t);
                    check_subgroup_count(found.len(), g)?;
                }
            }
        }
        i += 1;
    }
    found.sort();
    Ok(found)
}

/// Reference enumeration by closing element sets: every subgroup is
/// generated by at most `rank` elements, so iterating joins with cyclic
/// subgroups from the zero subgroup reaches everything. Uses element sets
/// only, no lattice arithmetic; intended as a test oracle.
pub fn subgroups_by_element_closure(g: &FiniteAbelianGroup) -> Vec<Vec<u64>> {
    let n = g.order();
    let elems: Vec<_> = g.elements().collect();
    let close = |set: &[u64]| -> Vec<u64> {
        let mut inside = vec![false; n as usize];
        let mut list: Vec<u64> = Vec::new();
        inside[0] = true;
        list.push(0);
        let mut gens: Vec<u64> = set.to_vec();
        gens.retain(|&x| x != 0);
        let mut i = 0;
        while i < list.len() {
            let a = &elems[list[i] as usize];
            for &gi in &gens {
                let s = g.add(a, &elems[gi as usize]);
                let idx = g.index_of(&s);
                if !inside[idx as usize] {
                    inside[idx as usize] = true;
                    list.push(idx);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    };
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let zero = vec![0u64];
    seen.insert(zero.clone());
    let mut queue = vec![zero];
    let mut i = 0;
    while i < queue.len() {
        let cur = queue[i].clone();
        for x in 0..n {
            if cur.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = cur.clone();
            gens.push(x);
            let next = close(&gens);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
        i += 1;
    }
    queue
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s).unwrap()
    }

    #[test]
    fn known_counts() {
        assert_eq!(enumerate_subgroups(&g("Z4")).unwrap().len(), 3);
        assert_eq!(enumerate_subgroups(&g("Z2^2")).unwrap().len(), 5);
        assert_eq!(enumerate_subgroups(&g("Z2+Z16")).unwrap().len(), 14);
        assert_eq!(enumerate_subgroups(&g("0")).unwrap().len(), 1);
        assert_eq!(enumerate_subgroups(&g("Z2^4")).unwrap().len(), 67);
    }

    #[test]
    fn sorted_and_bounded_by_zero_and_whole() {
        let l = enumerate_subgroups(&g("Z2+Z12")).unwrap();
        assert!(l.windows(2).all(|w| w[0] < w[1]));
        assert!(l.first().unwrap().is_zero());
        assert!(l.last().unwrap().is_whole());
    }

    #[test]
    fn order_bound_is_enforced() {
        let big = g("Z2+Z4096");
        assert!(matches!(
            enumerate_subgroups(&big),
            Err(LabError::ResourceLimit { .. })
        ));
    }
}
