//! Decision procedures for the CS-Rickart family of properties, relative
//! (`N` is `M`-...) and self, with a runtime check of the implications
//! between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::context::{AbelianContext, ModuleContext};
use crate::enumerate::subgroups_where;
use crate::error::{LabError, Result};
use crate::group::FiniteAbelianGroup;
use crate::hom::{realizable_subgroups, realize_image, realize_kernel, Direction, Homomorphism};
use crate::predicates::{
    essential_in_summand, find_essential_summand, find_summand_below, is_essential,
    is_fully_invariant, is_superfluous, lies_above_summand, sip_ssp_check, summand_complement,
    SipVariant,
};
use crate::subgroup::Subgroup;
use crate::verdict::{Evidence, EvidenceKind, PropertyVerdict};

macro_rules! property_ids {
    ($($v:ident => $s:literal,)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PropertyId { $($v,)* }

        impl PropertyId {
            pub const ALL: &'static [PropertyId] = &[$(PropertyId::$v,)*];

            pub fn name(self) -> &'static str {
                match self { $(PropertyId::$v => $s,)* }
            }
        }

        impl FromStr for PropertyId {
            type Err = LabError;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok(PropertyId::$v),)*
                    _ => Err(LabError::UnknownName(s.to_string())),
                }
            }
        }
    };
}

property_ids! {
    CsRickart => "CS_RICKART",
    DualCsRickart => "DUAL_CS_RICKART",
    StronglyCsRickart => "STRONGLY_CS_RICKART",
    DualStronglyCsRickart => "DUAL_STRONGLY_CS_RICKART",
    Rickart => "RICKART",
    DualRickart => "DUAL_RICKART",
    StronglyRickart => "STRONGLY_RICKART",
    DualStronglyRickart => "DUAL_STRONGLY_RICKART",
    Extending => "EXTENDING",
    StronglyExtending => "STRONGLY_EXTENDING",
    Lifting => "LIFTING",
    StronglyLifting => "STRONGLY_LIFTING",
    WeakDuo => "WEAK_DUO",
    KNonsingular => "K_NONSINGULAR",
    TNonsingular => "T_NONSINGULAR",
    DirectInjective => "DIRECT_INJECTIVE",
    DirectProjective => "DIRECT_PROJECTIVE",
    Regular => "REGULAR",
    StronglyRegular => "STRONGLY_REGULAR",
    SipExtending => "SIP_EXTENDING",
    StrictlySipExtending => "STRICTLY_SIP_EXTENDING",
    SsipExtending => "SSIP_EXTENDING",
    StrictlySsipExtending => "STRICTLY_SSIP_EXTENDING",
    SspLifting => "SSP_LIFTING",
    StrictlySspLifting => "STRICTLY_SSP_LIFTING",
    SsspLifting => "SSSP_LIFTING",
    StrictlySsspLifting => "STRICTLY_SSSP_LIFTING",
    AbelianEndRing => "ABELIAN_END_RING",
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for PropertyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl PropertyId {
    pub fn sip_variant(self) -> Option<SipVariant> {
        Some(match self {
            PropertyId::SipExtending => SipVariant::SipExtending,
            PropertyId::StrictlySipExtending => SipVariant::StrictSipExtending,
            PropertyId::SsipExtending => SipVariant::SsipExtending,
            PropertyId::StrictlySsipExtending => SipVariant::StrictSsipExtending,
            PropertyId::SspLifting => SipVariant::SspLifting,
            PropertyId::StrictlySspLifting => SipVariant::StrictSspLifting,
            PropertyId::SsspLifting => SipVariant::SsspLifting,
            PropertyId::StrictlySsspLifting => SipVariant::StrictSsspLifting,
            _ => return None,
        })
    }
}

/// The morphisms `M -> N` between two modules, seen through the kernels and
/// images they realize.
pub trait MorphismSpace: Send + Sync {
    /// `M`.
    fn source(&self) -> &dyn ModuleContext;
    /// `N`.
    fn target(&self) -> &dyn ModuleContext;

    /// Kernels (subobjects of `M`) or images (subobjects of `N`) of
    /// morphisms `M -> N`, canonically sorted.
    fn realizable(&self, direction: Direction) -> Result<Arc<Vec<Subgroup>>>;

    /// A morphism with the given kernel or image.
    fn realize(&self, direction: Direction, s: &Subgroup) -> Result<Homomorphism>;

    /// Subobjects of `N` isomorphic to a direct summand of `M`.
    fn target_copies_of_source_summands(&self) -> Result<Arc<Vec<Subgroup>>>;

    /// Subobjects `K` of `M` with `M/K` isomorphic to a direct summand of `N`.
    fn source_kernels_onto_target_summands(&self) -> Result<Arc<Vec<Subgroup>>>;

    /// Every direct summand of `M` is isomorphic to a subobject of `N`.
    fn source_summands_embed_in_target(&self) -> Result<bool>;

    /// Every direct summand of `N` is isomorphic to a factor object of `M`.
    fn target_summands_are_source_quotients(&self) -> Result<bool>;

    fn label(&self) -> String {
        format!("({}, {})", self.source().label(), self.target().label())
    }
}

/// `Hom(M, N)` for finite abelian groups, decided through isomorphism types.
pub struct AbelianPair {
    m: Arc<AbelianContext>,
    n: Arc<AbelianContext>,
    kernels: OnceLock<Arc<Vec<Subgroup>>>,
    images: OnceLock<Arc<Vec<Subgroup>>>,
    copies: OnceLock<Arc<Vec<Subgroup>>>,
    onto_summands: OnceLock<Arc<Vec<Subgroup>>>,
}

fn memo(cell: &OnceLock<Arc<Vec<Subgroup>>>, f: impl FnOnce() -> Result<Vec<Subgroup>>) -> Result<Arc<Vec<Subgroup>>> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    Ok(cell.get_or_init(|| v).clone())
}

impl AbelianPair {
    pub fn new(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup) -> Self {
        AbelianPair {
            m: AbelianContext::shared(m),
            n: AbelianContext::shared(n),
            kernels: OnceLock::new(),
            images: OnceLock::new(),
            copies: OnceLock::new(),
            onto_summands: OnceLock::new(),
        }
    }

    pub fn endo(m: &FiniteAbelianGroup) -> Self {
        Self::new(m, m)
    }
}

impl MorphismSpace for AbelianPair {
    fn source(&self) -> &dyn ModuleContext {
        self.m.as_ref()
    }

    fn target(&self) -> &dyn ModuleContext {
        self.n.as_ref()
    }

    fn realizable(&self, direction: Direction) -> Result<Arc<Vec<Subgroup>>> {
        let (m, n) = (self.m.object(), self.n.object());
        match direction {
            Direction::Kernel => memo(&self.kernels, || realizable_subgroups(m, n, direction)),
            Direction::Image => memo(&self.images, || realizable_subgroups(m, n, direction)),
        }
    }

    fn realize(&self, direction: Direction, s: &Subgroup) -> Result<Homomorphism> {
        match direction {
            Direction::Kernel => realize_kernel(self.n.object(), s),
            Direction::Image => realize_image(self.m.object(), s),
        }
    }

    fn target_copies_of_source_summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        memo(&self.copies, || {
            let mt = self.m.object().iso_type().clone();
            let mut v = subgroups_where(self.n.object(), &|s| s.iso_type().embeds_in(&mt))?;
            v.retain(|s| s.iso_type().is_summand_type_of(&mt));
            Ok(v)
        })
    }

    fn source_kernels_onto_target_summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        // M/K ~ H for H = K^perp, so search the small side
        memo(&self.onto_summands, || {
            let nt = self.n.object().iso_type().clone();
            let hs = subgroups_where(self.m.object(), &|h| h.iso_type().embeds_in(&nt))?;
            let mut v: Vec<Subgroup> = hs
                .iter()
                .filter(|h| h.iso_type().is_summand_type_of(&nt))
                .map(Subgroup::annihilator)
                .collect();
            v.sort();
            Ok(v)
        })
    }

    fn source_summands_embed_in_target(&self) -> Result<bool> {
        Ok(self.m.object().iso_type().embeds_in(self.n.object().iso_type()))
    }

    fn target_summands_are_source_quotients(&self) -> Result<bool> {
        Ok(self.n.object().iso_type().embeds_in(self.m.object().iso_type()))
    }
}

fn direction_kind(direction: Direction) -> EvidenceKind {
    match direction {
        Direction::Kernel => EvidenceKind::RealizableKernel,
        Direction::Image => EvidenceKind::RealizableImage,
    }
}

fn offending(
    space: &dyn MorphismSpace,
    direction: Direction,
    s: &Subgroup,
    reason: PropertyVerdict,
) -> Result<PropertyVerdict> {
    Ok(PropertyVerdict::fails(
        Evidence::new(direction_kind(direction))
            .with_subobject(s.clone())
            .with_morphism(space.realize(direction, s)?)
            .with_reason(reason),
    ))
}

fn all_checked(kind: EvidenceKind, n: usize) -> PropertyVerdict {
    PropertyVerdict::holds(Evidence::new(kind).with_count(n as u64))
}

/// `N` is (dual) (strongly) `M`-CS-Rickart.
pub fn cs_rickart(space: &dyn MorphismSpace, dual: bool, strong: bool) -> Result<PropertyVerdict> {
    let direction = if dual { Direction::Image } else { Direction::Kernel };
    let subs = space.realizable(direction)?;
    for s in subs.iter() {
        let ok = if dual {
            find_summand_below(space.target(), s, strong)?.is_some()
        } else {
            find_essential_summand(space.source(), s, strong)?.is_some()
        };
        if !ok {
            let reason = if dual {
                lies_above_summand(space.target(), s, strong)?
            } else {
                essential_in_summand(space.source(), s, strong)?
            };
            return offending(space, direction, s, reason);
        }
    }
    Ok(all_checked(EvidenceKind::AllRealizableChecked, subs.len()))
}

/// `N` is (dual) (strongly) `M`-Rickart: every realizable kernel (image) is
/// a (fully invariant) direct summand of `M` (`N`).
pub fn rickart(space: &dyn MorphismSpace, dual: bool, strong: bool) -> Result<PropertyVerdict> {
    let (direction, ctx) = if dual {
        (Direction::Image, space.target())
    } else {
        (Direction::Kernel, space.source())
    };
    let subs = space.realizable(direction)?;
    let fi = ctx.fully_invariant_summands()?;
    for s in subs.iter() {
        let ok = if strong {
            fi.binary_search(s).is_ok()
        } else {
            ctx.is_summand(s)?
        };
        if !ok {
            let reason = if strong && ctx.is_summand(s)? {
                is_fully_invariant(ctx, s)?
            } else {
                summand_complement(ctx, s)?
            };
            return offending(space, direction, s, reason);
        }
    }
    Ok(all_checked(EvidenceKind::AllRealizableChecked, subs.len()))
}

/// (Strongly) extending, or (strongly) lifting when `dual`: the CS-Rickart
/// condition over all subobjects.
pub fn extending_lifting(ctx: &dyn ModuleContext, dual: bool, strong: bool) -> Result<PropertyVerdict> {
    let subs = ctx.subobjects()?;
    for s in subs.iter() {
        let ok = if dual {
            find_summand_below(ctx, s, strong)?.is_some()
        } else {
            find_essential_summand(ctx, s, strong)?.is_some()
        };
        if !ok {
            let reason = if dual {
                lies_above_summand(ctx, s, strong)?
            } else {
                essential_in_summand(ctx, s, strong)?
            };
            return Ok(PropertyVerdict::fails(
                Evidence::new(EvidenceKind::AllSubobjectsChecked)
                    .with_subobject(s.clone())
                    .with_reason(reason),
            ));
        }
    }
    Ok(all_checked(EvidenceKind::AllSubobjectsChecked, subs.len()))
}

/// Every direct summand is fully invariant.
pub fn weak_duo(ctx: &dyn ModuleContext) -> Result<PropertyVerdict> {
    let summands = ctx.summands()?;
    for d in summands.iter() {
        if let Some((f, x)) = ctx.fully_invariant_violation(d)? {
            return Ok(PropertyVerdict::fails(
                Evidence::new(EvidenceKind::NonInvariantSummand)
                    .with_subobject(d.clone())
                    .with_morphism(f)
                    .with_elements(vec![x]),
            ));
        }
    }
    Ok(all_checked(EvidenceKind::AllSummandsInvariant, summands.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Nonsingularity {
    /// `N` is `M`-K-nonsingular: an essential kernel forces `f = 0`.
    K,
    /// `M` is `N`-T-nonsingular: a superfluous image forces `f = 0`.
    T,
}

pub fn nonsingular(space: &dyn MorphismSpace, kind: Nonsingularity) -> Result<PropertyVerdict> {
    let direction = match kind {
        Nonsingularity::K => Direction::Kernel,
        Nonsingularity::T => Direction::Image,
    };
    let subs = space.realizable(direction)?;
    for s in subs.iter() {
        let bad = match kind {
            Nonsingularity::K => !s.is_whole() && is_essential(space.source(), s)?.value,
            Nonsingularity::T => !s.is_zero() && is_superfluous(space.target(), s)?.value,
        };
        if bad {
            let reason = match kind {
                Nonsingularity::K => is_essential(space.source(), s)?,
                Nonsingularity::T => is_superfluous(space.target(), s)?,
            };
            return offending(space, direction, s, reason);
        }
    }
    Ok(all_checked(EvidenceKind::AllRealizableChecked, subs.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DirectKind {
    /// `M` is direct `N`-injective.
    Injective,
    /// `N` is direct `M`-projective.
    Projective,
}

pub fn direct_inj_proj(space: &dyn MorphismSpace, kind: DirectKind) -> Result<PropertyVerdict> {
    let (subs, ctx, ev) = match kind {
        DirectKind::Injective => (
            space.target_copies_of_source_summands()?,
            space.target(),
            EvidenceKind::NonSummandCopy,
        ),
        DirectKind::Projective => (
            space.source_kernels_onto_target_summands()?,
            space.source(),
            EvidenceKind::NonSummandKernel,
        ),
    };
    for s in subs.iter() {
        if !ctx.is_summand(s)? {
            return Ok(PropertyVerdict::fails(
                Evidence::new(ev)
                    .with_subobject(s.clone())
                    .with_reason(summand_complement(ctx, s)?),
            ));
        }
    }
    Ok(all_checked(EvidenceKind::AllSubobjectsChecked, subs.len()))
}

/// `N` is (strongly) `M`-regular: (strongly) `M`-Rickart and dual (strongly)
/// `M`-Rickart.
pub fn regular(space: &dyn MorphismSpace, strong: bool) -> Result<PropertyVerdict> {
    let k = rickart(space, false, strong)?;
    if !k.value {
        return Ok(k);
    }
    let i = rickart(space, true, strong)?;
    if !i.value {
        return Ok(i);
    }
    let n = k.evidence().count.unwrap_or(0) + i.evidence().count.unwrap_or(0);
    Ok(PropertyVerdict::holds(
        Evidence::new(EvidenceKind::AllRealizableChecked).with_count(n),
    ))
}

/// Decide one property of `N` relative to `M` (or of `M` itself when the
/// space is `End(M)`). Properties that only make sense for a single object
/// are evaluated on `M`.
pub fn decide(space: &dyn MorphismSpace, id: PropertyId) -> Result<PropertyVerdict> {
    use PropertyId::*;
    let m = space.source();
    if let Some(v) = id.sip_variant() {
        return sip_ssp_check(m, v);
    }
    match id {
        CsRickart => cs_rickart(space, false, false),
        DualCsRickart => cs_rickart(space, true, false),
        StronglyCsRickart => cs_rickart(space, false, true),
        DualStronglyCsRickart => cs_rickart(space, true, true),
        Rickart => rickart(space, false, false),
        DualRickart => rickart(space, true, false),
        StronglyRickart => rickart(space, false, true),
        DualStronglyRickart => rickart(space, true, true),
        Extending => extending_lifting(m, false, false),
        StronglyExtending => extending_lifting(m, false, true),
        Lifting => extending_lifting(m, true, false),
        StronglyLifting => extending_lifting(m, true, true),
        WeakDuo => weak_duo(m),
        KNonsingular => nonsingular(space, Nonsingularity::K),
        TNonsingular => nonsingular(space, Nonsingularity::T),
        DirectInjective => direct_inj_proj(space, DirectKind::Injective),
        DirectProjective => direct_inj_proj(space, DirectKind::Projective),
        Regular => regular(space, false),
        StronglyRegular => regular(space, true),
        AbelianEndRing => m.end_ring_abelian(),
        _ => unreachable!("sip variants handled above"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub object: String,
    pub properties: BTreeMap<PropertyId, PropertyVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl PropertyReport {
    pub fn value(&self, id: PropertyId) -> bool {
        self.properties[&id].value
    }
}

/// Every property of a single object `M`, given `End(M)` as a morphism
/// space, cross-checked against the known implications before returning.
pub fn full_profile(space: &dyn MorphismSpace) -> Result<PropertyReport> {
    let start = Instant::now();
    let mut properties = BTreeMap::new();
    for &id in PropertyId::ALL {
        properties.insert(id, decide(space, id)?);
    }
    let report = PropertyReport {
        object: space.source().label(),
        properties,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    };
    check_consistency(&report, space.source())?;
    Ok(report)
}

fn implies(name: &str, a: bool, b: bool) -> Result<()> {
    if a && !b {
        Err(LabError::Consistency(name.to_string()))
    } else {
        Ok(())
    }
}

fn iff(name: &str, a: bool, b: bool) -> Result<()> {
    if a != b {
        Err(LabError::Consistency(name.to_string()))
    } else {
        Ok(())
    }
}

/// The implications between self properties that hold for every object.
pub fn check_consistency(report: &PropertyReport, ctx: &dyn ModuleContext) -> Result<()> {
    use PropertyId::*;
    let v = |id| report.value(id);
    let (cs, dcs, scs, dscs) = (v(CsRickart), v(DualCsRickart), v(StronglyCsRickart), v(DualStronglyCsRickart));
    let (wd, ab) = (v(WeakDuo), v(AbelianEndRing));
    let (kn, tn) = (v(KNonsingular), v(TNonsingular));
    iff("strongly CS-Rickart iff CS-Rickart and weak duo", scs, cs && wd)?;
    iff("dual strongly CS-Rickart iff dual CS-Rickart and weak duo", dscs, dcs && wd)?;
    iff("strongly CS-Rickart iff CS-Rickart and abelian End", scs, cs && ab)?;
    iff("dual strongly CS-Rickart iff dual CS-Rickart and abelian End", dscs, dcs && ab)?;
    iff("weak duo iff abelian End", wd, ab)?;
    if ctx.is_indecomposable()? {
        iff("indecomposable: strongly CS-Rickart iff CS-Rickart", scs, cs)?;
        iff("indecomposable: dual strongly CS-Rickart iff dual CS-Rickart", dscs, dcs)?;
    }
    iff("strongly CS-Rickart and K-nonsingular iff strongly Rickart", scs && kn, v(StronglyRickart))?;
    iff("dual strongly CS-Rickart and T-nonsingular iff dual strongly Rickart", dscs && tn, v(DualStronglyRickart))?;
    let (di, dp) = (v(DirectInjective), v(DirectProjective));
    if cs {
        iff("CS-Rickart: regular iff K-nonsingular and direct injective", v(Regular), kn && di)?;
    }
    if scs {
        iff("strongly CS-Rickart: strongly regular iff K-nonsingular and direct injective", v(StronglyRegular), kn && di)?;
    }
    if dcs {
        iff("dual CS-Rickart: regular iff T-nonsingular and direct projective", v(Regular), tn && dp)?;
    }
    if dscs {
        iff("dual strongly CS-Rickart: strongly regular iff T-nonsingular and direct projective", v(StronglyRegular), tn && dp)?;
    }
    iff("regular iff Rickart and dual Rickart", v(Regular), v(Rickart) && v(DualRickart))?;
    iff("strongly regular iff strongly Rickart and dual strongly Rickart", v(StronglyRegular), v(StronglyRickart) && v(DualStronglyRickart))?;
    for (strong, weak) in [
        (StronglyCsRickart, CsRickart),
        (DualStronglyCsRickart, DualCsRickart),
        (StronglyRickart, Rickart),
        (DualStronglyRickart, DualRickart),
        (StronglyExtending, Extending),
        (StronglyLifting, Lifting),
        (StronglyRegular, Regular),
        (StrictlySipExtending, SipExtending),
        (StrictlySsipExtending, SsipExtending),
        (StrictlySspLifting, SspLifting),
        (StrictlySsspLifting, SsspLifting),
        (SsipExtending, SipExtending),
        (StrictlySsipExtending, StrictlySipExtending),
        (SsspLifting, SspLifting),
        (StrictlySsspLifting, StrictlySspLifting),
        (Rickart, CsRickart),
        (DualRickart, DualCsRickart),
        (StronglyRickart, StronglyCsRickart),
        (DualStronglyRickart, DualStronglyCsRickart),
        (Extending, CsRickart),
        (StronglyExtending, StronglyCsRickart),
        (Lifting, DualCsRickart),
        (StronglyLifting, DualStronglyCsRickart),
        (StronglyCsRickart, StrictlySipExtending),
        (DualStronglyCsRickart, StrictlySspLifting),
    ] {
        implies(&format!("{strong} implies {weak}"), v(strong), v(weak))?;
    }
    if !ctx.object().is_zero() {
        implies("uniform implies strongly CS-Rickart", ctx.minimal_subobjects()?.len() == 1, scs)?;
        implies("hollow implies dual strongly CS-Rickart", ctx.maximal_subobjects()?.len() == 1, dscs)?;
    }
    Ok(())
}

/// Full profile of a finite abelian group.
pub fn abelian_profile(g: &FiniteAbelianGroup) -> Result<PropertyReport> {
    full_profile(&AbelianPair::endo(g))
}
