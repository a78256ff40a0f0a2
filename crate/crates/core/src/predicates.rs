//! Subobject predicates: essential, superfluous, direct summand, fully
//! invariant, essential in / lying above a (fully invariant) summand, and the
//! SIP/SSP family.

use std::collections::HashMap;

use serde::Serialize;

use crate::context::ModuleContext;
use crate::error::Result;
use crate::subgroup::Subgroup;
use crate::verdict::{Evidence, EvidenceKind, PropertyVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Structural {
    Socle,
    Radical,
}

pub fn structural_subobject(ctx: &dyn ModuleContext, kind: Structural) -> Result<Subgroup> {
    match kind {
        Structural::Socle => ctx.socle(),
        Structural::Radical => ctx.radical(),
    }
}

/// Essential iff the socle is contained in `k`. Counterexample: the
/// canonically smallest simple subobject missing `k`.
pub fn is_essential(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<PropertyVerdict> {
    let soc = ctx.socle()?;
    if soc.is_subgroup_of(k) {
        return Ok(PropertyVerdict::holds(
            Evidence::new(EvidenceKind::ContainsSocle).with_subobject(soc),
        ));
    }
    let l = ctx
        .minimal_subobjects()?
        .iter()
        .find(|s| !s.is_subgroup_of(k))
        .cloned()
        .expect("the socle is the sum of the simple subobjects");
    Ok(PropertyVerdict::fails(
        Evidence::new(EvidenceKind::DisjointSubobject).with_subobject(l),
    ))
}

/// Superfluous iff `k` lies in the radical. Counterexample: the canonically
/// smallest maximal subobject not containing `k`.
pub fn is_superfluous(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<PropertyVerdict> {
    let rad = ctx.radical()?;
    if k.is_subgroup_of(&rad) {
        return Ok(PropertyVerdict::holds(
            Evidence::new(EvidenceKind::InsideRadical).with_subobject(rad),
        ));
    }
    let l = ctx
        .maximal_subobjects()?
        .iter()
        .find(|s| !k.is_subgroup_of(s))
        .cloned()
        .expect("the radical is the meet of the maximal subobjects");
    Ok(PropertyVerdict::fails(
        Evidence::new(EvidenceKind::ProperSupplement).with_subobject(l),
    ))
}

/// Quantifier form of essentiality: `k ∩ l != 0` for every nonzero `l`.
pub fn is_essential_by_definition(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<bool> {
    Ok(ctx
        .subobjects()?
        .iter()
        .all(|l| l.is_zero() || !l.intersection_unchecked(k).is_zero()))
}

/// Quantifier form of superfluity: `k + l = M` forces `l = M`.
pub fn is_superfluous_by_definition(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<bool> {
    Ok(ctx
        .subobjects()?
        .iter()
        .all(|l| l.is_whole() || !k.sum_unchecked(l).is_whole()))
}

pub fn summand_complement(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<PropertyVerdict> {
    Ok(match ctx.complement(k)? {
        Some(c) => {
            PropertyVerdict::holds(Evidence::new(EvidenceKind::Complement).with_subobject(c))
        }
        None => PropertyVerdict::fails(Evidence::new(EvidenceKind::NoComplement)),
    })
}

pub fn is_fully_invariant(ctx: &dyn ModuleContext, k: &Subgroup) -> Result<PropertyVerdict> {
    Ok(match ctx.fully_invariant_violation(k)? {
        Some((f, x)) => PropertyVerdict::fails(
            Evidence::new(EvidenceKind::MovedElement)
                .with_morphism(f)
                .with_elements(vec![x]),
        ),
        None => PropertyVerdict::holds(
            Evidence::new(EvidenceKind::InvariantUnderGenerators)
                .with_count(ctx.endomorphism_generators()?.len() as u64),
        ),
    })
}

/// Canonically smallest (fully invariant when `strong`) summand in which `k`
/// is essential.
pub fn find_essential_summand(
    ctx: &dyn ModuleContext,
    k: &Subgroup,
    strong: bool,
) -> Result<Option<Subgroup>> {
    if strong {
        let soc = ctx.socle()?;
        let inside = soc.intersection(k)?;
        return Ok(ctx
            .fully_invariant_summands()?
            .iter()
            .find(|d| k.is_subgroup_of(d) && soc.intersection_unchecked(d) == inside)
            .cloned());
    }
    if ctx.is_summand(k)? {
        return Ok(Some(k.clone()));
    }
    Ok(ctx.essential_summands_over(k)?.into_iter().next())
}

/// Canonically smallest (fully invariant when `strong`) summand `D <= l` with
/// `l / D` superfluous in `M / D`.
pub fn find_summand_below(
    ctx: &dyn ModuleContext,
    l: &Subgroup,
    strong: bool,
) -> Result<Option<Subgroup>> {
    // a summand L only lies above itself: L/D is a superfluous summand of M/D
    if !strong && ctx.is_summand(l)? {
        return Ok(Some(l.clone()));
    }
    let candidates: Vec<Subgroup> = if strong {
        ctx.fully_invariant_summands()?
            .iter()
            .filter(|d| d.is_subgroup_of(l))
            .cloned()
            .collect()
    } else {
        ctx.summands_within(l)?
    };
    for d in candidates {
        if l.is_subgroup_of(&ctx.radical_over(&d)?) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Witness: the summand `D` and a complement of it.
pub fn essential_in_summand(
    ctx: &dyn ModuleContext,
    k: &Subgroup,
    require_fully_invariant: bool,
) -> Result<PropertyVerdict> {
    Ok(match find_essential_summand(ctx, k, require_fully_invariant)? {
        Some(d) => {
            let c = ctx.complement(&d)?.expect("summand has a complement");
            PropertyVerdict::holds(
                Evidence::new(EvidenceKind::EssentialInSummand).with_subobjects(vec![d, c]),
            )
        }
        None => PropertyVerdict::fails(Evidence::new(EvidenceKind::NoEssentialSummand)),
    })
}

/// Witness: the summand `D`, a complement of it, and `M/D` with its radical.
pub fn lies_above_summand(
    ctx: &dyn ModuleContext,
    l: &Subgroup,
    require_fully_invariant: bool,
) -> Result<PropertyVerdict> {
    Ok(match find_summand_below(ctx, l, require_fully_invariant)? {
        Some(d) => {
            let c = ctx.complement(&d)?.expect("summand has a complement");
            let q = ctx.quotient_data(&d)?;
            PropertyVerdict::holds(
                Evidence::new(EvidenceKind::LiesAboveSummand)
                    .with_subobjects(vec![d, c])
                    .with_quotient(q),
            )
        }
        None => PropertyVerdict::fails(Evidence::new(EvidenceKind::NoSummandBelow)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SipVariant {
    SipExtending,
    StrictSipExtending,
    SsipExtending,
    StrictSsipExtending,
    SspLifting,
    StrictSspLifting,
    SsspLifting,
    StrictSsspLifting,
}

impl SipVariant {
    pub const ALL: [SipVariant; 8] = [
        SipVariant::SipExtending,
        SipVariant::StrictSipExtending,
        SipVariant::SsipExtending,
        SipVariant::StrictSsipExtending,
        SipVariant::SspLifting,
        SipVariant::StrictSspLifting,
        SipVariant::SsspLifting,
        SipVariant::StrictSsspLifting,
    ];

    /// Intersections (extending side) rather than sums (lifting side).
    pub fn uses_meets(self) -> bool {
        matches!(
            self,
            SipVariant::SipExtending
                | SipVariant::StrictSipExtending
                | SipVariant::SsipExtending
                | SipVariant::StrictSsipExtending
        )
    }

    pub fn is_strict(self) -> bool {
        matches!(
            self,
            SipVariant::StrictSipExtending
                | SipVariant::StrictSsipExtending
                | SipVariant::StrictSspLifting
                | SipVariant::StrictSsspLifting
        )
    }

    /// Arbitrary families rather than pairs.
    pub fn is_family(self) -> bool {
        matches!(
            self,
            SipVariant::SsipExtending
                | SipVariant::StrictSsipExtending
                | SipVariant::SsspLifting
                | SipVariant::StrictSsspLifting
        )
    }
}

/// Decide a SIP/SSP-type property. Subobjects essential in (lying above)
/// summands may be replaced by those summands, so pairs reduce to pairs of
/// summands and families to the closure of the summand set under pairwise
/// meets (joins). Pairs are visited in colexicographic order of the
/// canonically sorted summand list, so the first failure is canonical.
pub fn sip_ssp_check(ctx: &dyn ModuleContext, variant: SipVariant) -> Result<PropertyVerdict> {
    let summands = ctx.summands()?;
    let meet = variant.uses_meets();
    let strict = variant.is_strict();
    let combine = |a: &Subgroup, b: &Subgroup| {
        if meet {
            a.intersection_unchecked(b)
        } else {
            a.sum_unchecked(b)
        }
    };
    let decide = |x: &Subgroup| -> Result<bool> {
        Ok(if meet {
            find_essential_summand(ctx, x, strict)?.is_some()
        } else {
            find_summand_below(ctx, x, strict)?.is_some()
        })
    };
    let reason = |x: &Subgroup| -> Result<PropertyVerdict> {
        if meet {
            essential_in_summand(ctx, x, strict)
        } else {
            lies_above_summand(ctx, x, strict)
        }
    };
    let every_subobject_is_summand =
        !strict && summands.len() == ctx.subobjects()?.len();
    if every_subobject_is_summand {
        // meets and joins of summands are summands, hence trivially fine
        return Ok(PropertyVerdict::holds(
            Evidence::new(if variant.is_family() {
                EvidenceKind::AllFamiliesChecked
            } else {
                EvidenceKind::AllPairsChecked
            })
            .with_count(summands.len() as u64)
            .with_note("every subobject is a direct summand"),
        ));
    }
    let mut memo: HashMap<Subgroup, bool> = HashMap::new();
    let mut check = |x: &Subgroup| -> Result<bool> {
        if let Some(&v) = memo.get(x) {
            return Ok(v);
        }
        let v = decide(x)?;
        memo.insert(x.clone(), v);
        Ok(v)
    };
    // pairs first: a failing pair is also a failing family
    let n = summands.len();
    let pair_kind = if variant.is_family() {
        EvidenceKind::OffendingFamily
    } else {
        EvidenceKind::OffendingPair
    };
    for j in 0..n {
        for i in 0..j {
            let x = combine(&summands[i], &summands[j]);
            if !check(&x)? {
                return Ok(PropertyVerdict::fails(
                    Evidence::new(pair_kind)
                        .with_subobjects(vec![summands[i].clone(), summands[j].clone()])
                        .with_reason(reason(&x)?),
                ));
            }
        }
    }
    if !variant.is_family() {
        return Ok(PropertyVerdict::holds(
            Evidence::new(EvidenceKind::AllPairsChecked).with_count((n * n.saturating_sub(1) / 2) as u64),
        ));
    }
    // closure under the pairwise operation, remembering a generating family
    let mut closure: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    let mut index: HashMap<Subgroup, usize> = HashMap::new();
    for (i, s) in summands.iter().enumerate() {
        if !index.contains_key(s) {
            index.insert(s.clone(), closure.len());
            closure.push((s.clone(), vec![i]));
        }
    }
    let mut t = 0;
    while t < closure.len() {
        let (x, fam) = closure[t].clone();
        for (i, s) in summands.iter().enumerate() {
            let trivial = if meet { x.is_subgroup_of(s) } else { s.is_subgroup_of(&x) };
            if trivial {
                continue;
            }
            let y = combine(&x, s);
            if !index.contains_key(&y) {
                let mut f = fam.clone();
                f.push(i);
                index.insert(y.clone(), closure.len());
                closure.push((y, f));
                crate::enumerate::check_subgroup_count(closure.len(), ctx.object())?;
            }
        }
        t += 1;
    }
    closure.sort_by(|a, b| a.0.cmp(&b.0));
    for (x, fam) in &closure {
        if !check(x)? {
            return Ok(PropertyVerdict::fails(
                Evidence::new(EvidenceKind::OffendingFamily)
                    .with_subobjects(fam.iter().map(|&i| summands[i].clone()).collect())
                    .with_reason(reason(x)?),
            ));
        }
    }
    Ok(PropertyVerdict::holds(
        Evidence::new(EvidenceKind::AllFamiliesChecked).with_count(closure.len() as u64),
    ))
}
