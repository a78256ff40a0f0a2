//! Finite module contexts: the capabilities the predicates need, with a
//! lattice-based default and a specialised finite abelian group instance.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{radical_of, valuation};
use crate::enumerate::{
    enumerate_subgroups, prime_power_cyclic_subgroups, subgroups_where, subgroups_within_where,
    supergroups_where,
};
use crate::error::Result;
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::hom::{hom_group, projection_onto, quotient_group, Homomorphism};
use crate::subgroup::Subgroup;
use crate::verdict::{Evidence, EvidenceKind, PropertyVerdict, QuotientData};

/// A finite module `M` presented through its additive group. Subobjects are
/// subgroups of the additive group closed under the module structure.
pub trait ModuleContext: Send + Sync {
    fn object(&self) -> &FiniteAbelianGroup;

    /// Human-readable name of the module (a group spec for abelian groups).
    fn label(&self) -> String;

    /// Additive generators of `End(M)`.
    fn endomorphism_generators(&self) -> Result<Arc<Vec<Homomorphism>>>;

    fn is_subobject(&self, s: &Subgroup) -> bool;

    /// The full subobject lattice, canonically sorted.
    fn subobjects(&self) -> Result<Arc<Vec<Subgroup>>>;

    fn subobjects_within(&self, within: &Subgroup) -> Result<Vec<Subgroup>> {
        Ok(self
            .subobjects()?
            .iter()
            .filter(|s| s.is_subgroup_of(within))
            .cloned()
            .collect())
    }

    /// Simple subobjects, canonically sorted.
    fn minimal_subobjects(&self) -> Result<Arc<Vec<Subgroup>>>;

    /// Maximal proper subobjects, canonically sorted.
    fn maximal_subobjects(&self) -> Result<Arc<Vec<Subgroup>>>;

    fn socle(&self) -> Result<Subgroup>;

    fn radical(&self) -> Result<Subgroup>;

    /// The preimage in `M` of `rad(M/D)`, for a subobject `D`.
    fn radical_over(&self, d: &Subgroup) -> Result<Subgroup>;

    fn is_summand(&self, k: &Subgroup) -> Result<bool>;

    /// Canonically smallest complement of `k`, if `k` is a summand.
    fn complement(&self, k: &Subgroup) -> Result<Option<Subgroup>>;

    fn summands(&self) -> Result<Arc<Vec<Subgroup>>>;

    fn summands_within(&self, l: &Subgroup) -> Result<Vec<Subgroup>> {
        Ok(self
            .summands()?
            .iter()
            .filter(|s| s.is_subgroup_of(l))
            .cloned()
            .collect())
    }

    /// Summands `D >= k` in which `k` is essential, canonically sorted.
    fn essential_summands_over(&self, k: &Subgroup) -> Result<Vec<Subgroup>> {
        let soc = self.socle()?;
        let inside = soc.intersection(k)?;
        let mut out = Vec::new();
        for d in self.summands()?.iter() {
            if k.is_subgroup_of(d) && soc.intersection_unchecked(d) == inside {
                out.push(d.clone());
            }
        }
        Ok(out)
    }

    fn fully_invariant_summands(&self) -> Result<Arc<Vec<Subgroup>>>;

    /// An endomorphism generator and an element of `k` it moves out of `k`.
    fn fully_invariant_violation(
        &self,
        k: &Subgroup,
    ) -> Result<Option<(Homomorphism, GroupElement)>> {
        let gens = self.endomorphism_generators()?;
        let xs = k.generators();
        for f in gens.iter() {
            for x in &xs {
                let y = f.apply(x);
                if !k.contains(&y) {
                    return Ok(Some((f.clone(), x.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Nonzero with no summands other than `0` and `M`.
    fn is_indecomposable(&self) -> Result<bool> {
        Ok(!self.object().is_zero() && self.summands()?.len() == 2)
    }

    /// Whether every idempotent of `End(M)` is central. Idempotents are the
    /// projections along complementary summand pairs.
    fn end_ring_abelian(&self) -> Result<PropertyVerdict> {
        let gens = self.endomorphism_generators()?;
        let summands = self.summands()?;
        let m = self.object();
        let mut count = 0u64;
        for k in summands.iter() {
            for c in summands.iter() {
                if k.order() * c.order() != m.order() || !k.intersection_unchecked(c).is_zero() {
                    continue;
                }
                count += 1;
                if k.is_zero() || c.is_zero() {
                    continue;
                }
                let e = projection_onto(k, c)?;
                for g in gens.iter() {
                    if e.compose(g)? != g.compose(&e)? {
                        return Ok(PropertyVerdict::fails(
                            Evidence::new(EvidenceKind::NonCentralIdempotent)
                                .with_morphism(e)
                                .with_morphism(g.clone())
                                .with_subobjects(vec![k.clone(), c.clone()]),
                        ));
                    }
                }
            }
        }
        Ok(PropertyVerdict::holds(
            Evidence::new(EvidenceKind::IdempotentsCentral).with_count(count),
        ))
    }

    /// `M/D` together with the order of its radical.
    fn quotient_data(&self, d: &Subgroup) -> Result<QuotientData> {
        let (q, _) = quotient_group(d)?;
        let rad = self.radical_over(d)?;
        Ok(QuotientData {
            quotient: q,
            radical_order: rad.order() / d.order(),
        })
    }
}

/// Lattice-based implementations shared by contexts that materialise their
/// whole subobject lattice.
pub mod lattice_ops {
    use super::*;

    pub fn minimal(subs: &[Subgroup]) -> Vec<Subgroup> {
        let nonzero: Vec<&Subgroup> = subs.iter().filter(|s| !s.is_zero()).collect();
        nonzero
            .iter()
            .filter(|s| {
                !nonzero
                    .iter()
                    .any(|t| t.order() < s.order() && t.is_subgroup_of(s))
            })
            .map(|s| (*s).clone())
            .collect()
    }

    pub fn maximal(subs: &[Subgroup]) -> Vec<Subgroup> {
        let proper: Vec<&Subgroup> = subs.iter().filter(|s| !s.is_whole()).collect();
        proper
            .iter()
            .filter(|s| {
                !proper
                    .iter()
                    .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
            })
            .map(|s| (*s).clone())
            .collect()
    }

    pub fn sum_of(g: &FiniteAbelianGroup, subs: &[Subgroup]) -> Subgroup {
        subs.iter()
            .fold(Subgroup::zero(g), |acc, s| acc.sum_unchecked(s))
    }

    pub fn meet_of(g: &FiniteAbelianGroup, subs: &[Subgroup]) -> Subgroup {
        subs.iter()
            .fold(Subgroup::whole(g), |acc, s| acc.intersection_unchecked(s))
    }

    /// Intersection of the maximal subobjects above `d` (the whole object if
    /// `d` is everything).
    pub fn radical_over(g: &FiniteAbelianGroup, subs: &[Subgroup], d: &Subgroup) -> Subgroup {
        let above: Vec<Subgroup> = subs
            .iter()
            .filter(|s| d.is_subgroup_of(s))
            .cloned()
            .collect();
        meet_of(g, &maximal(&above))
    }

    pub fn complement(subs: &[Subgroup], k: &Subgroup) -> Option<Subgroup> {
        let n = k.ambient().order();
        subs.iter()
            .find(|c| k.order() * c.order() == n && k.intersection_unchecked(c).is_zero())
            .cloned()
    }
}

/// The finite abelian group `M` as a `Z`-module.
pub struct AbelianContext {
    group: FiniteAbelianGroup,
    generators: Arc<Vec<Homomorphism>>,
    socle: Subgroup,
    radical: Subgroup,
    /// `(p, [p M, p^2 M, ...])`, down to zero.
    prime_multiples: Vec<(u64, Vec<Subgroup>)>,
    fi_summands: Arc<Vec<Subgroup>>,
    minimal: OnceLock<Arc<Vec<Subgroup>>>,
    maximal: OnceLock<Arc<Vec<Subgroup>>>,
    summands: OnceLock<Arc<Vec<Subgroup>>>,
}

impl AbelianContext {
    pub fn new(g: &FiniteAbelianGroup) -> Self {
        let r = radical_of(g.order()) as i64;
        let whole = Subgroup::whole(g);
        let socle = Homomorphism::multiplication(g, r).kernel();
        let radical = whole.scaled(r);
        let prime_multiples = g
            .primes()
            .into_iter()
            .map(|p| {
                let e = valuation(g.exponent(), p);
                let mut v = Vec::new();
                let mut cur = whole.clone();
                for _ in 0..e {
                    cur = cur.scaled(p as i64);
                    v.push(cur.clone());
                }
                (p, v)
            })
            .collect();
        // Fully invariant summands are exactly the sums of primary components.
        let primes = g.primes();
        let parts: Vec<Subgroup> = primes
            .iter()
            .map(|&p| {
                let pe = p.pow(valuation(g.exponent(), p));
                whole.scaled((g.exponent() / pe) as i64)
            })
            .collect();
        let mut fi = Vec::with_capacity(1 << parts.len());
        for mask in 0u32..(1 << parts.len()) {
            let chosen: Vec<Subgroup> = (0..parts.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| parts[i].clone())
                .collect();
            fi.push(lattice_ops::sum_of(g, &chosen));
        }
        fi.sort();
        AbelianContext {
            group: g.clone(),
            generators: Arc::new(hom_group(g, g).generators()),
            socle,
            radical,
            prime_multiples,
            fi_summands: Arc::new(fi),
            minimal: OnceLock::new(),
            maximal: OnceLock::new(),
            summands: OnceLock::new(),
        }
    }

    /// Process-wide shared context for `g`.
    pub fn shared(g: &FiniteAbelianGroup) -> Arc<AbelianContext> {
        static MEMO: OnceLock<RwLock<HashMap<FiniteAbelianGroup, Arc<AbelianContext>>>> =
            OnceLock::new();
        let memo = MEMO.get_or_init(Default::default);
        if let Some(c) = memo.read().unwrap_or_else(|e| e.into_inner()).get(g) {
            return c.clone();
        }
        let c = Arc::new(AbelianContext::new(g));
        memo.write()
            .unwrap_or_else(|e| e.into_inner())
            .entry(g.clone())
            .or_insert(c)
            .clone()
    }

    /// Purity: `K` is a summand iff `K ∩ p^j M = p^j K` for all `p`, `j`.
    fn pure(&self, k: &Subgroup) -> bool {
        for (p, mults) in &self.prime_multiples {
            let mut pk = k.clone();
            for pm in mults {
                pk = pk.scaled(*p as i64);
                if k.intersection_unchecked(pm).order() != pk.order() {
                    return false;
                }
            }
        }
        true
    }
}

impl ModuleContext for AbelianContext {
    fn object(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    fn label(&self) -> String {
        self.group.to_string()
    }

    fn endomorphism_generators(&self) -> Result<Arc<Vec<Homomorphism>>> {
        Ok(self.generators.clone())
    }

    fn is_subobject(&self, s: &Subgroup) -> bool {
        s.ambient() == &self.group
    }

    fn subobjects(&self) -> Result<Arc<Vec<Subgroup>>> {
        enumerate_subgroups(&self.group)
    }

    fn subobjects_within(&self, within: &Subgroup) -> Result<Vec<Subgroup>> {
        subgroups_within_where(within, &|_| true)
    }

    fn minimal_subobjects(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.minimal.get() {
            return Ok(v.clone());
        }
        let atoms = prime_power_cyclic_subgroups(&self.group)?;
        let mut v: Vec<Subgroup> = atoms
            .iter()
            .filter(|(p, s)| s.order() == *p)
            .map(|(_, s)| s.clone())
            .collect();
        v.sort();
        Ok(self.minimal.get_or_init(|| Arc::new(v)).clone())
    }

    fn maximal_subobjects(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.maximal.get() {
            return Ok(v.clone());
        }
        let mut v: Vec<Subgroup> = self
            .minimal_subobjects()?
            .iter()
            .map(Subgroup::annihilator)
            .collect();
        v.sort();
        Ok(self.maximal.get_or_init(|| Arc::new(v)).clone())
    }

    fn socle(&self) -> Result<Subgroup> {
        Ok(self.socle.clone())
    }

    fn radical(&self) -> Result<Subgroup> {
        Ok(self.radical.clone())
    }

    fn radical_over(&self, d: &Subgroup) -> Result<Subgroup> {
        self.radical.sum(d)
    }

    fn is_summand(&self, k: &Subgroup) -> Result<bool> {
        Ok(self.pure(k))
    }

    fn complement(&self, k: &Subgroup) -> Result<Option<Subgroup>> {
        if !self.pure(k) {
            return Ok(None);
        }
        let target = self.group.order() / k.order();
        let disjoint = subgroups_where(&self.group, &|c| k.intersection_unchecked(c).is_zero())?;
        Ok(disjoint.into_iter().find(|c| c.order() == target))
    }

    fn summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.summands.get() {
            return Ok(v.clone());
        }
        let v = match crate::enumerate::cached_lattice(&self.group) {
            Some(l) => l.iter().filter(|s| self.pure(s)).cloned().collect(),
            None => subgroups_where(&self.group, &|s| self.pure(s))?,
        };
        Ok(self.summands.get_or_init(|| Arc::new(v)).clone())
    }

    fn summands_within(&self, l: &Subgroup) -> Result<Vec<Subgroup>> {
        if let Some(v) = self.summands.get() {
            return Ok(v.iter().filter(|s| s.is_subgroup_of(l)).cloned().collect());
        }
        subgroups_within_where(l, &|s| self.pure(s))
    }

    fn essential_summands_over(&self, k: &Subgroup) -> Result<Vec<Subgroup>> {
        let inside = self.socle.intersection(k)?;
        let candidates = supergroups_where(k, &|d| {
            self.socle.intersection_unchecked(d) == inside
        })?;
        Ok(candidates.into_iter().filter(|d| self.pure(d)).collect())
    }

    fn fully_invariant_summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        Ok(self.fi_summands.clone())
    }

    fn is_indecomposable(&self) -> Result<bool> {
        let f = self.group.factors();
        Ok(f.len() == 1 && crate::arith::factorize(f[0]).len() == 1)
    }

    fn quotient_data(&self, d: &Subgroup) -> Result<QuotientData> {
        let (q, _) = quotient_group(d)?;
        let r = radical_of(q.order()) as i64;
        let rad = Subgroup::whole(&q).scaled(r.max(1));
        Ok(QuotientData {
            quotient: q,
            radical_order: rad.order(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> AbelianContext {
        AbelianContext::new(&FiniteAbelianGroup::parse(s).unwrap())
    }

    fn sub(c: &AbelianContext, gens: &[&[i64]]) -> Subgroup {
        let gens: Vec<GroupElement> = gens.iter().map(|g| GroupElement(g.to_vec())).collect();
        Subgroup::from_generators(c.object(), &gens).unwrap()
    }

    #[test]
    fn socle_and_radical() {
        let c = ctx("Z2+Z16");
        assert_eq!(c.socle().unwrap(), sub(&c, &[&[1, 0], &[0, 8]]));
        assert_eq!(c.radical().unwrap(), sub(&c, &[&[0, 2]]));
        let z4 = ctx("Z4");
        assert_eq!(z4.socle().unwrap(), sub(&z4, &[&[2]]));
    }

    #[test]
    fn esip_summands() {
        let c = ctx("Z2+Z16");
        let s = c.summands().unwrap();
        let expect = [
            sub(&c, &[]),
            sub(&c, &[&[1, 0]]),
            sub(&c, &[&[1, 8]]),
            sub(&c, &[&[0, 1]]),
            sub(&c, &[&[1, 1]]),
            Subgroup::whole(c.object()),
        ];
        assert_eq!(s.len(), 6);
        for e in &expect {
            assert!(s.contains(e), "{e:?}");
        }
        assert_eq!(c.fully_invariant_summands().unwrap().len(), 2);
        let e = sub(&c, &[&[1, 0], &[0, 2]]);
        assert!(c.complement(&e).unwrap().is_none());
    }

    #[test]
    fn purity_agrees_with_complement_search() {
        for spec in ["Z2+Z8", "Z4+Z4", "Z2+Z2+Z4", "Z6+Z12", "Z3+Z9"] {
            let c = ctx(spec);
            let subs = c.subobjects().unwrap();
            for k in subs.iter() {
                let brute = lattice_ops::complement(&subs, k).is_some();
                assert_eq!(c.is_summand(k).unwrap(), brute, "{spec} {k:?}");
            }
        }
    }

    #[test]
    fn lattice_ops_match_specialised_paths() {
        for spec in ["Z2+Z16", "Z12", "Z2+Z2+Z4", "Z3+Z9"] {
            let c = ctx(spec);
            let subs = c.subobjects().unwrap();
            let g = c.object();
            assert_eq!(
                lattice_ops::sum_of(g, &lattice_ops::minimal(&subs)),
                c.socle().unwrap()
            );
            assert_eq!(
                lattice_ops::meet_of(g, &lattice_ops::maximal(&subs)),
                c.radical().unwrap()
            );
            assert_eq!(
                lattice_ops::maximal(&subs),
                c.maximal_subobjects().unwrap().as_ref().clone()
            );
            for d in subs.iter() {
                assert_eq!(
                    lattice_ops::radical_over(g, &subs, d),
                    c.radical_over(d).unwrap()
                );
            }
        }
    }
}
