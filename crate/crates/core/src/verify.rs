//! Re-checks of verdict evidence from element sets and the subobject
//! lattice, independent of the socle/radical and purity shortcuts used by the
//! deciders. Every check returns `LabError::Consistency` on a mismatch.

use std::collections::HashSet;

use crate::context::ModuleContext;
use crate::error::{LabError, Result};
use crate::group::GroupElement;
use crate::hom::Direction;
use crate::predicates::SipVariant;
use crate::rickart::{MorphismSpace, PropertyId};
use crate::subgroup::Subgroup;
use crate::verdict::{EvidenceKind, PropertyVerdict};

/// A subobject-level statement a verdict can be about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Essential,
    Superfluous,
    Summand,
    FullyInvariant,
    EssentialInSummand { strong: bool },
    LiesAboveSummand { strong: bool },
}

fn bad(what: impl Into<String>) -> LabError {
    LabError::Consistency(format!("evidence does not re-verify: {}", what.into()))
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(bad(what))
    }
}

fn element_set(s: &Subgroup) -> HashSet<GroupElement> {
    s.elements().into_iter().collect()
}

fn meets_trivially(a: &HashSet<GroupElement>, b: &HashSet<GroupElement>) -> bool {
    a.iter().filter(|x| b.contains(x)).count() == 1
}

fn sum_size(ctx: &dyn ModuleContext, a: &HashSet<GroupElement>, b: &HashSet<GroupElement>) -> usize {
    let g = ctx.object();
    let mut out = HashSet::new();
    for x in a {
        for y in b {
            out.insert(g.add(x, y));
        }
    }
    out.len()
}

fn is_complement(ctx: &dyn ModuleContext, d: &Subgroup, c: &Subgroup) -> bool {
    let (de, ce) = (element_set(d), element_set(c));
    ctx.is_subobject(d)
        && ctx.is_subobject(c)
        && meets_trivially(&de, &ce)
        && de.len() * ce.len() == ctx.object().order() as usize
}

fn has_complement_by_search(ctx: &dyn ModuleContext, d: &Subgroup) -> Result<bool> {
    let n = ctx.object().order();
    Ok(ctx
        .subobjects()?
        .iter()
        .any(|c| c.order() * d.order() == n && c.intersection_unchecked(d).is_zero()))
}

fn invariant_under_generators(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<bool> {
    let ke = element_set(k);
    for f in ctx.endomorphism_generators()?.iter() {
        for x in &ke {
            if !ke.contains(&f.apply(x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `k` is essential in `d`: every nonzero subobject inside `d` meets `k`.
fn essential_in(ctx: &dyn ModuleContext, k: &Subgroup, d: &Subgroup) -> Result<bool> {
    let ke = element_set(k);
    Ok(ctx
        .subobjects()?
        .iter()
        .filter(|l| !l.is_zero() && l.is_subgroup_of(d))
        .all(|l| !meets_trivially(&element_set(l), &ke)))
}

/// `l/d` is superfluous in `M/d`: a subobject `x >= d` with `x + l = M` is `M`.
fn superfluous_over(ctx: &dyn ModuleContext, l: &Subgroup, d: &Subgroup) -> Result<bool> {
    let le = element_set(l);
    let n = ctx.object().order() as usize;
    for x in ctx.subobjects()?.iter() {
        if x.is_whole() || !d.is_subgroup_of(x) {
            continue;
        }
        if sum_size(ctx, &element_set(x), &le) == n {
            return Ok(false);
        }
    }
    Ok(true)
}

fn claim_by_search(ctx: &dyn ModuleContext, claim: Claim, k: &Subgroup) -> Result<bool> {
    let zero = Subgroup::zero(ctx.object());
    match claim {
        Claim::Essential => essential_in(ctx, k, &Subgroup::whole(ctx.object())),
        Claim::Superfluous => superfluous_over(ctx, k, &zero),
        Claim::Summand => has_complement_by_search(ctx, k),
        Claim::FullyInvariant => invariant_under_generators(ctx, k),
        Claim::EssentialInSummand { strong } => {
            for d in ctx.subobjects()?.iter() {
                if k.is_subgroup_of(d)
                    && has_complement_by_search(ctx, d)?
                    && (!strong || invariant_under_generators(ctx, d)?)
                    && essential_in(ctx, k, d)?
                {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Claim::LiesAboveSummand { strong } => {
            for d in ctx.subobjects()?.iter() {
                if d.is_subgroup_of(k)
                    && has_complement_by_search(ctx, d)?
                    && (!strong || invariant_under_generators(ctx, d)?)
                    && superfluous_over(ctx, k, d)?
                {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Re-check a verdict about `k`. Witnesses and counterexamples are checked
/// directly; claims with no explicit object (such as "no complement") are
/// checked by exhaustive search.
pub fn verify_claim(
    ctx: &dyn ModuleContext,
    claim: Claim,
    k: &Subgroup,
    verdict: &PropertyVerdict,
) -> Result<()> {
    let ev = verdict.evidence();
    match (claim, verdict.value) {
        (Claim::Essential, true) | (Claim::Superfluous, true) => {
            ensure(claim_by_search(ctx, claim, k)?, "essential/superfluous witness")
        }
        (Claim::Essential, false) => {
            let l = ev.subobjects.first().ok_or_else(|| bad("missing subobject"))?;
            ensure(
                ctx.is_subobject(l) && !l.is_zero() && meets_trivially(&element_set(l), &element_set(k)),
                "disjoint subobject",
            )
        }
        (Claim::Superfluous, false) => {
            let l = ev.subobjects.first().ok_or_else(|| bad("missing subobject"))?;
            ensure(
                ctx.is_subobject(l)
                    && !l.is_whole()
                    && sum_size(ctx, &element_set(l), &element_set(k)) == ctx.object().order() as usize,
                "proper supplement",
            )
        }
        (Claim::Summand, true) => {
            let c = ev.subobjects.first().ok_or_else(|| bad("missing complement"))?;
            ensure(is_complement(ctx, k, c), "complement")
        }
        (Claim::FullyInvariant, false) => {
            let f = ev.morphisms.first().ok_or_else(|| bad("missing morphism"))?;
            let x = ev.elements.first().ok_or_else(|| bad("missing element"))?;
            ensure(
                f.source() == ctx.object() && f.target() == ctx.object() && k.contains(x) && !k.contains(&f.apply(x)),
                "moved element",
            )
        }
        (Claim::Summand, false) | (Claim::FullyInvariant, true) => {
            ensure(claim_by_search(ctx, claim, k)? == verdict.value, "claim by search")
        }
        (Claim::EssentialInSummand { strong }, true) => {
            let [d, c] = ev.subobjects.as_slice() else {
                return Err(bad("expected summand and complement"));
            };
            ensure(
                k.is_subgroup_of(d)
                    && is_complement(ctx, d, c)
                    && (!strong || invariant_under_generators(ctx, d)?)
                    && essential_in(ctx, k, d)?,
                "essential in summand",
            )
        }
        (Claim::LiesAboveSummand { strong }, true) => {
            let [d, c] = ev.subobjects.as_slice() else {
                return Err(bad("expected summand and complement"));
            };
            if let Some(q) = &ev.quotient_data {
                ensure(
                    q.quotient.order() * d.order() == ctx.object().order(),
                    "quotient order",
                )?;
            }
            ensure(
                d.is_subgroup_of(k)
                    && is_complement(ctx, d, c)
                    && (!strong || invariant_under_generators(ctx, d)?)
                    && superfluous_over(ctx, k, d)?,
                "lies above summand",
            )
        }
        (Claim::EssentialInSummand { .. }, false) | (Claim::LiesAboveSummand { .. }, false) => {
            ensure(!claim_by_search(ctx, claim, k)?, "no summand by search")
        }
    }
}

fn reason(verdict: &PropertyVerdict) -> Result<&PropertyVerdict> {
    verdict
        .evidence()
        .reason
        .as_deref()
        .ok_or_else(|| bad("counterexample without reason"))
}

/// Which subobject claim a realizable kernel/image must satisfy for `id`,
/// and in which object.
fn realizable_claim(id: PropertyId) -> Option<(Direction, bool, Claim)> {
    use PropertyId::*;
    let (dir, on_target, claim) = match id {
        CsRickart => (Direction::Kernel, false, Claim::EssentialInSummand { strong: false }),
        StronglyCsRickart => (Direction::Kernel, false, Claim::EssentialInSummand { strong: true }),
        DualCsRickart => (Direction::Image, true, Claim::LiesAboveSummand { strong: false }),
        DualStronglyCsRickart => (Direction::Image, true, Claim::LiesAboveSummand { strong: true }),
        Rickart | StronglyRickart | Regular | StronglyRegular => {
            (Direction::Kernel, false, Claim::Summand)
        }
        DualRickart | DualStronglyRickart => (Direction::Image, true, Claim::Summand),
        KNonsingular => (Direction::Kernel, false, Claim::Essential),
        TNonsingular => (Direction::Image, true, Claim::Superfluous),
        _ => return None,
    };
    Some((dir, on_target, claim))
}

/// Re-check the evidence of a property verdict computed by
/// [`crate::rickart::decide`].
pub fn verify_property(space: &dyn MorphismSpace, id: PropertyId, verdict: &PropertyVerdict) -> Result<()> {
    use PropertyId::*;
    let ev = verdict.evidence();
    let m = space.source();
    if verdict.value {
        if ev.kind == EvidenceKind::AllRealizableChecked && !matches!(id, Regular | StronglyRegular) {
            let (dir, _, _) = realizable_claim(id).expect("realizable property");
            ensure(
                ev.count == Some(space.realizable(dir)?.len() as u64),
                "realizable count",
            )?;
        }
        return Ok(());
    }
    match ev.kind {
        EvidenceKind::RealizableKernel | EvidenceKind::RealizableImage => {
            let s = ev.subobjects.first().ok_or_else(|| bad("missing subobject"))?;
            let f = ev.morphisms.first().ok_or_else(|| bad("missing morphism"))?;
            ensure(
                f.source() == m.object() && f.target() == space.target().object(),
                "morphism endpoints",
            )?;
            let dir = if ev.kind == EvidenceKind::RealizableKernel {
                ensure(&f.kernel() == s, "kernel of realizing morphism")?;
                Direction::Kernel
            } else {
                ensure(&f.image() == s, "image of realizing morphism")?;
                Direction::Image
            };
            let r = reason(verdict)?;
            let (_, on_target, mut claim) = match id {
                Regular => realizable_claim(if dir == Direction::Kernel { Rickart } else { DualRickart }),
                StronglyRegular => realizable_claim(if dir == Direction::Kernel {
                    StronglyRickart
                } else {
                    DualStronglyRickart
                }),
                _ => realizable_claim(id),
            }
            .ok_or_else(|| bad(format!("unexpected counterexample kind for {id}")))?;
            let ctx = if on_target { space.target() } else { m };
            if claim == Claim::Summand && r.evidence().kind == EvidenceKind::MovedElement {
                claim = Claim::FullyInvariant;
            }
            match id {
                KNonsingular | TNonsingular => {
                    ensure(r.value, "nonsingularity reason must hold")?;
                    ensure(
                        if id == KNonsingular { !s.is_whole() } else { !s.is_zero() },
                        "nonzero morphism",
                    )?;
                }
                _ => ensure(!r.value, "reason must fail")?,
            }
            verify_claim(ctx, claim, s, r)
        }
        EvidenceKind::AllSubobjectsChecked => {
            let s = ev.subobjects.first().ok_or_else(|| bad("missing subobject"))?;
            let strong = matches!(id, StronglyExtending | StronglyLifting);
            let claim = match id {
                Extending | StronglyExtending => Claim::EssentialInSummand { strong },
                Lifting | StronglyLifting => Claim::LiesAboveSummand { strong },
                _ => return Err(bad(format!("unexpected counterexample kind for {id}"))),
            };
            let r = reason(verdict)?;
            ensure(!r.value && m.is_subobject(s), "failing subobject")?;
            verify_claim(m, claim, s, r)
        }
        EvidenceKind::NonInvariantSummand => {
            let d = ev.subobjects.first().ok_or_else(|| bad("missing summand"))?;
            let f = ev.morphisms.first().ok_or_else(|| bad("missing morphism"))?;
            let x = ev.elements.first().ok_or_else(|| bad("missing element"))?;
            ensure(has_complement_by_search(m, d)?, "summand")?;
            ensure(d.contains(x) && !d.contains(&f.apply(x)), "moved element")
        }
        EvidenceKind::NonCentralIdempotent => {
            let [e, g] = ev.morphisms.as_slice() else {
                return Err(bad("expected idempotent and generator"));
            };
            ensure(e.is_idempotent() && e.compose(g)? != g.compose(e)?, "non-central idempotent")
        }
        EvidenceKind::NonSummandCopy | EvidenceKind::NonSummandKernel => {
            let s = ev.subobjects.first().ok_or_else(|| bad("missing subobject"))?;
            let ctx = if ev.kind == EvidenceKind::NonSummandCopy { space.target() } else { m };
            let r = reason(verdict)?;
            ensure(!r.value, "reason must fail")?;
            verify_claim(ctx, Claim::Summand, s, r)
        }
        EvidenceKind::OffendingPair | EvidenceKind::OffendingFamily => {
            let variant = id.sip_variant().ok_or_else(|| bad("pair counterexample"))?;
            verify_family(m, variant, &ev.subobjects, reason(verdict)?)
        }
        other => Err(bad(format!("unexpected counterexample kind {other:?} for {id}"))),
    }
}

fn verify_family(
    ctx: &dyn ModuleContext,
    variant: SipVariant,
    family: &[Subgroup],
    reason: &PropertyVerdict,
) -> Result<()> {
    ensure(!family.is_empty(), "empty family")?;
    for s in family {
        ensure(has_complement_by_search(ctx, s)?, "family member is a summand")?;
    }
    let mut x = family[0].clone();
    for s in &family[1..] {
        x = if variant.uses_meets() {
            x.intersection(s)?
        } else {
            x.sum(s)?
        };
    }
    let claim = if variant.uses_meets() {
        Claim::EssentialInSummand { strong: variant.is_strict() }
    } else {
        Claim::LiesAboveSummand { strong: variant.is_strict() }
    };
    ensure(!reason.value, "reason must fail")?;
    verify_claim(ctx, claim, &x, reason)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;
    use crate::rickart::{decide, AbelianPair};

    #[test]
    fn all_verdicts_reverify_on_small_groups() {
        for g in ["Z4", "Z2^2", "Z2+Z16", "Z2+Z4", "Z6", "Z2^3", "Z3+Z9"] {
            let g = FiniteAbelianGroup::parse(g).unwrap();
            let space = AbelianPair::endo(&g);
            for &id in PropertyId::ALL {
                let v = decide(&space, id).unwrap();
                verify_property(&space, id, &v).unwrap_or_else(|e| panic!("{g} {id}: {e}"));
            }
        }
    }

    #[test]
    fn tampered_evidence_is_rejected() {
        let g = FiniteAbelianGroup::parse("Z4").unwrap();
        let space = AbelianPair::endo(&g);
        let mut v = decide(&space, PropertyId::Rickart).unwrap();
        let ev = v.counterexample.as_mut().unwrap();
        ev.subobjects[0] = Subgroup::zero(&g);
        assert!(verify_property(&space, PropertyId::Rickart, &v).is_err());
    }
}
