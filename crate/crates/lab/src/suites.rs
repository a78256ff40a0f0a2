//! Theorem suites: hypotheses and conclusions evaluated per corpus instance.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use rickart_core::classifier::{classify, FgAbelianGroupSpec};
use rickart_core::context::{AbelianContext, ModuleContext};
use rickart_core::hom::hom_group;
use rickart_core::predicates::{essential_in_summand, lies_above_summand};
use rickart_core::rickart::{AbelianPair, MorphismSpace, PropertyId};
use rickart_core::verify::verify_property;
use rickart_core::{FiniteAbelianGroup, Result as CoreResult, Subgroup};
use serde::Serialize;

use crate::corpus::{generate_corpus, subgroup_types, sum_of, summand_types, Corpus, Instance};
use crate::error::{HarnessError, HarnessResult};
use crate::eval::{Evaluator, Trace};
use crate::report::{ClauseStats, CorpusSummary, FailureBundle, Subject, SuiteReport};
use crate::theorem::{Schema, TheoremId};
use crate::{goldens, probe};

type G = FiniteAbelianGroup;
use PropertyId::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Hypothesis not met.
    Skipped,
    Holds,
    Fails,
}

#[derive(Clone, Debug)]
pub struct ClauseOutcome {
    pub clause: &'static str,
    pub status: Status,
}

/// Evaluation state for one instance.
pub struct Ctx<'a> {
    pub eval: &'a Evaluator,
    pub trace: Trace,
    pub outcomes: Vec<ClauseOutcome>,
}

impl<'a> Ctx<'a> {
    pub fn new(eval: &'a Evaluator) -> Self {
        Ctx {
            eval,
            trace: Trace::default(),
            outcomes: Vec::new(),
        }
    }

    /// `N` relative to `M`.
    pub fn rel(&mut self, m: &G, n: &G, id: PropertyId) -> HarnessResult<bool> {
        self.eval.rel(&mut self.trace, m, n, id)
    }

    pub fn own(&mut self, g: &G, id: PropertyId) -> HarnessResult<bool> {
        self.eval.own(&mut self.trace, g, id)
    }

    pub fn note(&mut self, name: impl Into<String>, value: bool) -> bool {
        self.trace.note(name, value)
    }

    /// Record an unconditional equivalence.
    pub fn iff(&mut self, clause: &'static str, a: bool, b: bool) {
        self.push(clause, if a == b { Status::Holds } else { Status::Fails });
    }

    /// Record an implication; the conclusion is only evaluated when the
    /// hypothesis holds.
    pub fn implies(
        &mut self,
        clause: &'static str,
        hypothesis: bool,
        conclusion: impl FnOnce(&mut Self) -> HarnessResult<bool>,
    ) -> HarnessResult<()> {
        let status = if !hypothesis {
            Status::Skipped
        } else if conclusion(self)? {
            Status::Holds
        } else {
            Status::Fails
        };
        self.push(clause, status);
        Ok(())
    }

    fn push(&mut self, clause: &'static str, status: Status) {
        self.outcomes.push(ClauseOutcome { clause, status });
    }

    /// `Hom(a, b) = 0`, from the generators of the hom group.
    pub fn hom_vanishes(&mut self, a: &G, b: &G) -> bool {
        let zero = hom_group(a, b).generators().iter().all(|f| f.is_zero());
        self.note(format!("Hom({a}, {b}) = 0"), zero)
    }

    /// `m` relative to every source in `sources` and target in `targets`;
    /// stops at the first failure.
    fn all_rel(&mut self, sources: &[G], targets: &[G], id: PropertyId) -> HarnessResult<bool> {
        for s in sources {
            for t in targets {
                if !self.rel(s, t, id)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A suite body: fills `ctx.outcomes` for one instance.
pub type ClauseFn = dyn Fn(&mut Ctx, &Instance) -> HarnessResult<()> + Sync;

fn mismatch(id: &str, instance: &Instance) -> HarnessError {
    HarnessError::Usage(format!("{id} cannot evaluate a {} instance", instance.mode().name()))
}

macro_rules! expect {
    ($inst:expr, $id:literal, $pat:pat => $body:expr) => {
        match $inst {
            $pat => $body,
            other => return Err(mismatch($id, other)),
        }
    };
}

fn st0(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (m, n) = expect!(i, "ST0", Instance::Pair { source, target } => (source, target));
    let pair = c.eval.pair(m, n);
    let embed = pair.source_summands_embed_in_target()?;
    let embed = c.note("summands of M embed in N", embed);
    c.implies("strong", embed, |c| {
        Ok(c.rel(m, n, StronglyCsRickart)? == (c.rel(m, n, CsRickart)? && c.own(m, WeakDuo)?))
    })?;
    let quotients = pair.target_summands_are_source_quotients()?;
    let quotients = c.note("summands of N are quotients of M", quotients);
    c.implies("dual-strong", quotients, |c| {
        Ok(c.rel(m, n, DualStronglyCsRickart)? == (c.rel(m, n, DualCsRickart)? && c.own(n, WeakDuo)?))
    })
}

fn st00(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let g = expect!(i, "ST00", Instance::Single { object } => object);
    let (a, b) = (c.own(g, StronglyCsRickart)?, c.own(g, CsRickart)? && c.own(g, WeakDuo)?);
    c.iff("strong", a, b);
    let (a, b) = (c.own(g, DualStronglyCsRickart)?, c.own(g, DualCsRickart)? && c.own(g, WeakDuo)?);
    c.iff("dual-strong", a, b);
    Ok(())
}

fn st01(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let g = expect!(i, "ST01", Instance::Single { object } => object);
    let indecomposable = AbelianContext::shared(g).is_indecomposable()?;
    let indecomposable = c.note("indecomposable", indecomposable);
    c.implies("strong", indecomposable, |c| {
        Ok(c.own(g, StronglyCsRickart)? == c.own(g, CsRickart)?)
    })?;
    c.implies("dual-strong", indecomposable, |c| {
        Ok(c.own(g, DualStronglyCsRickart)? == c.own(g, DualCsRickart)?)
    })
}

fn st1(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let g = expect!(i, "ST1", Instance::Single { object } => object);
    let ab = c.own(g, AbelianEndRing)?;
    let (a, b) = (c.own(g, StronglyCsRickart)?, c.own(g, CsRickart)? && ab);
    c.iff("strong", a, b);
    let (a, b) = (c.own(g, DualStronglyCsRickart)?, c.own(g, DualCsRickart)? && ab);
    c.iff("dual-strong", a, b);
    Ok(())
}

fn t_nonsing(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (m, n) = expect!(i, "T_NONSING", Instance::Pair { source, target } => (source, target));
    let a = c.rel(m, n, StronglyCsRickart)? && c.rel(m, n, KNonsingular)?;
    let b = c.rel(m, n, StronglyRickart)?;
    c.iff("kernel", a, b);
    let a = c.rel(m, n, DualStronglyCsRickart)? && c.rel(m, n, TNonsingular)?;
    let b = c.rel(m, n, DualStronglyRickart)?;
    c.iff("image", a, b);
    Ok(())
}

fn reg_cor(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (m, n) = expect!(i, "REG_COR", Instance::Pair { source, target } => (source, target));
    for (clause, hyp, regular, nonsing, direct) in [
        ("cs", CsRickart, Regular, KNonsingular, DirectInjective),
        ("strongly-cs", StronglyCsRickart, StronglyRegular, KNonsingular, DirectInjective),
        ("dual-cs", DualCsRickart, Regular, TNonsingular, DirectProjective),
        ("dual-strongly-cs", DualStronglyCsRickart, StronglyRegular, TNonsingular, DirectProjective),
    ] {
        let h = c.rel(m, n, hyp)?;
        c.implies(clause, h, |c| {
            Ok(c.rel(m, n, regular)? == (c.rel(m, n, nonsing)? && c.rel(m, n, direct)?))
        })?;
    }
    Ok(())
}

/// Passage to smaller objects: the strong clause over `(sources, targets)`
/// for the non-dual statement and the dual one.
fn descend(
    c: &mut Ctx,
    m: &G,
    n: &G,
    strong: (Vec<G>, Vec<G>),
    dual: (Vec<G>, Vec<G>),
) -> HarnessResult<()> {
    let h = c.rel(m, n, StronglyCsRickart)?;
    c.implies("strong", h, |c| c.all_rel(&strong.0, &strong.1, StronglyCsRickart))?;
    let h = c.rel(m, n, DualStronglyCsRickart)?;
    c.implies("dual-strong", h, |c| c.all_rel(&dual.0, &dual.1, DualStronglyCsRickart))
}

fn t_sdr1(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (m, n) = expect!(i, "T_SDR1", Instance::Pair { source, target } => (source, target));
    // retraction M -> M' with any monomorphism N' -> N; any epimorphism with
    // a section N' -> N
    let strong = (summand_types(m), subgroup_types(n));
    let dual = (subgroup_types(m), summand_types(n));
    descend(c, m, n, strong, dual)
}

fn c_sdr5(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (m, n) = expect!(i, "C_SDR5", Instance::Pair { source, target } => (source, target));
    let both = (summand_types(m), summand_types(n));
    descend(c, m, n, both.clone(), both)
}

/// The distinct values of `op(a, b)` over unordered pairs of summands,
/// in canonical order.
fn distinct_pairwise(
    summands: &[Subgroup],
    op: impl Fn(&Subgroup, &Subgroup) -> CoreResult<Subgroup> + Sync,
) -> HarnessResult<Vec<Subgroup>> {
    let sets = (0..summands.len())
        .into_par_iter()
        .map(|i| {
            summands[i..]
                .iter()
                .map(|b| op(&summands[i], b))
                .collect::<CoreResult<HashSet<_>>>()
        })
        .collect::<CoreResult<Vec<_>>>()?;
    let mut all: Vec<_> = sets.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
    all.sort();
    Ok(all)
}

/// The first subgroup in `list` failing `test`, if any.
fn first_failing(
    list: &[Subgroup],
    test: impl Fn(&Subgroup) -> CoreResult<bool> + Sync,
) -> HarnessResult<Option<Subgroup>> {
    let ok = list.par_iter().map(&test).collect::<CoreResult<Vec<bool>>>()?;
    Ok(ok.iter().position(|v| !v).map(|i| list[i].clone()))
}

/// Any two summands meet essentially in a fully invariant summand, computed
/// from the summand list directly.
fn pairwise_meets_ok(c: &mut Ctx, g: &G) -> HarnessResult<bool> {
    let ctx = AbelianContext::shared(g);
    let meets = distinct_pairwise(&ctx.summands()?, |a, b| a.intersection(b))?;
    match first_failing(&meets, |k| Ok(essential_in_summand(ctx.as_ref(), k, true)?.value))? {
        Some(k) => Ok(c.note(format!("meet {k} essential in a fully invariant summand"), false)),
        None => Ok(c.note("every meet of two summands essential in a fully invariant summand", true)),
    }
}

fn pairwise_sums_ok(c: &mut Ctx, g: &G) -> HarnessResult<bool> {
    let ctx = AbelianContext::shared(g);
    let sums = distinct_pairwise(&ctx.summands()?, |a, b| a.sum(b))?;
    match first_failing(&sums, |l| Ok(lies_above_summand(ctx.as_ref(), l, true)?.value))? {
        Some(l) => Ok(c.note(format!("sum {l} above a fully invariant summand"), false)),
        None => Ok(c.note("every sum of two summands above a fully invariant summand", true)),
    }
}

fn l_sipssp(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let g = expect!(i, "L_SIPSSP", Instance::Single { object } => object);
    let (a, b) = (c.own(g, StrictlySipExtending)?, pairwise_meets_ok(c, g)?);
    c.iff("sip", a, b);
    let (a, b) = (c.own(g, StrictlySspLifting)?, pairwise_sums_ok(c, g)?);
    c.iff("ssp", a, b);
    Ok(())
}

fn p_sdr3(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (m, n) = expect!(i, "P_SDR3", Instance::Pair { source, target } => (source, target));
    let pair = c.eval.pair(m, n);
    let embed = pair.source_summands_embed_in_target()?;
    let h = c.note("summands of M embed in N", embed) && c.rel(m, n, StronglyCsRickart)?;
    c.implies("sip", h, |c| c.own(m, StrictlySipExtending))?;
    let quotients = pair.target_summands_are_source_quotients()?;
    let h = c.note("summands of N are quotients of M", quotients) && c.rel(m, n, DualStronglyCsRickart)?;
    c.implies("ssp", h, |c| c.own(n, StrictlySspLifting))
}

fn c_sdr4(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let g = expect!(i, "C_SDR4", Instance::Single { object } => object);
    let h = c.own(g, StronglyCsRickart)?;
    c.implies("sip", h, |c| c.own(g, StrictlySipExtending))?;
    let h = c.own(g, DualStronglyCsRickart)?;
    c.implies("ssp", h, |c| c.own(g, StrictlySspLifting))
}

/// `(A, B)` with `A` one part and `B` the sum of the others, in both orders.
fn two_way_splits(parts: &[G]) -> Vec<(G, G)> {
    let mut out = Vec::new();
    for k in 0..parts.len() {
        let rest: Vec<G> = parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let rest = sum_of(&rest);
        out.push((parts[k].clone(), rest.clone()));
        out.push((rest, parts[k].clone()));
    }
    out.sort();
    out.dedup();
    out
}

fn l_ab(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (whole, parts) = expect!(i, "L_AB", Instance::Decomposition { whole, parts } => (whole, parts));
    let splits = two_way_splits(parts);
    let h = c.own(whole, StrictlySipExtending)?;
    c.implies("sip", h, |c| {
        for (a, b) in &splits {
            if !c.rel(a, b, StronglyCsRickart)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let h = c.own(whole, StrictlySspLifting)?;
    c.implies("ssp", h, |c| {
        for (a, b) in &splits {
            if !c.rel(a, b, DualStronglyCsRickart)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn triple(i: &Instance, id: &'static str) -> HarnessResult<(G, G, G, G)> {
    match i {
        Instance::Triple { fixed, left, right } => {
            Ok((fixed.clone(), left.clone(), right.clone(), left.direct_sum(right)))
        }
        other => Err(mismatch(id, other)),
    }
}

fn t_sdr2(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (x, a, b, s) = triple(i, "T_SDR2")?;
    let h = c.rel(&x, &a, StronglyCsRickart)? && c.rel(&x, &b, StronglyCsRickart)?;
    c.implies("strong", h, |c| c.rel(&x, &s, StronglyCsRickart))?;
    let h = c.rel(&a, &x, DualStronglyCsRickart)? && c.rel(&b, &x, DualStronglyCsRickart)?;
    c.implies("dual-strong", h, |c| c.rel(&s, &x, DualStronglyCsRickart))
}

fn t_pr1(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (x, a, b, s) = triple(i, "T_PR1")?;
    let whole = c.rel(&x, &s, StronglyCsRickart)?;
    let each = c.rel(&x, &a, StronglyCsRickart)? && c.rel(&x, &b, StronglyCsRickart)?;
    c.iff("strong", whole, each);
    let whole = c.rel(&s, &x, DualStronglyCsRickart)?;
    let each = c.rel(&a, &x, DualStronglyCsRickart)? && c.rel(&b, &x, DualStronglyCsRickart)?;
    c.iff("dual-strong", whole, each);
    Ok(())
}

/// Both sides of the sum statements for a split instance.
fn split_sides(c: &mut Ctx, x: &G, parts: &[G], dual: bool) -> HarnessResult<(bool, bool)> {
    let s = sum_of(parts);
    if dual {
        let whole = c.rel(&s, x, DualStronglyCsRickart)?;
        let each = c.all_rel(parts, std::slice::from_ref(x), DualStronglyCsRickart)?;
        Ok((whole, each))
    } else {
        let whole = c.rel(x, &s, StronglyCsRickart)?;
        let each = c.all_rel(std::slice::from_ref(x), parts, StronglyCsRickart)?;
        Ok((whole, each))
    }
}

fn c_pr2(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (x, parts) = expect!(i, "C_PR2", Instance::Split { fixed, parts } => (fixed, parts));
    let (a, b) = split_sides(c, x, parts, false)?;
    c.iff("strong", a, b);
    let (a, b) = split_sides(c, x, parts, true)?;
    c.iff("dual-strong", a, b);
    Ok(())
}

fn t_ssip(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (x, parts) = expect!(i, "T_SSIP", Instance::Split { fixed, parts } => (fixed, parts));
    let h = c.own(x, StrictlySsipExtending)?;
    c.implies("strong", h, |c| {
        let (a, b) = split_sides(c, x, parts, false)?;
        Ok(a == b)
    })?;
    let h = c.own(x, StrictlySsspLifting)?;
    c.implies("dual-strong", h, |c| {
        let (a, b) = split_sides(c, x, parts, true)?;
        Ok(a == b)
    })
}

fn p_pr3(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (whole, parts) = expect!(i, "P_PR3", Instance::Decomposition { whole, parts } => (whole, parts));
    let h = c.own(whole, StronglyCsRickart)?;
    c.implies("strong", h, |c| c.all_rel(parts, parts, StronglyCsRickart))?;
    let h = c.own(whole, DualCsRickart)?;
    c.implies("dual", h, |c| c.all_rel(parts, parts, DualCsRickart))
}

fn t_pstr4(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let (whole, parts) = expect!(i, "T_PSTR4", Instance::Decomposition { whole, parts } => (whole, parts));
    let mut orthogonal = true;
    for (a, pa) in parts.iter().enumerate() {
        for (b, pb) in parts.iter().enumerate() {
            if a != b && !c.hom_vanishes(pa, pb) {
                orthogonal = false;
            }
        }
    }
    for (clause, id) in [("strong", StronglyCsRickart), ("dual-strong", DualStronglyCsRickart)] {
        let w = c.own(whole, id)?;
        let mut each = true;
        for p in parts {
            each &= c.own(p, id)?;
        }
        c.iff(clause, w, each && orthogonal);
    }
    Ok(())
}

fn c1_abgr(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let g = expect!(i, "C1_ABGR", Instance::Single { object } => object);
    let profile = classify(&FgAbelianGroupSpec::from_finite(g));
    let mut agree = true;
    for id in [StronglyCsRickart, DualStronglyCsRickart, WeakDuo] {
        let closed = profile.get(id);
        let computed = c.own(g, id)?;
        if let Some(v) = closed {
            c.note(format!("closed form {id}"), v);
        }
        agree &= closed == Some(computed);
    }
    c.iff("closed-form", agree, true);
    let cyclic = c.note("cyclic", g.is_cyclic());
    c.iff("torsion-iff-cyclic", profile.get(StronglyCsRickart) == Some(true), cyclic);
    Ok(())
}

/// The clause function of a suite theorem.
pub fn clauses(id: TheoremId) -> Option<&'static ClauseFn> {
    use TheoremId as T;
    Some(match id {
        T::ST0 => &st0,
        T::ST00 => &st00,
        T::ST01 => &st01,
        T::ST1 => &st1,
        T::T_NONSING => &t_nonsing,
        T::REG_COR => &reg_cor,
        T::T_SDR1 => &t_sdr1,
        T::C_SDR5 => &c_sdr5,
        T::L_SIPSSP => &l_sipssp,
        T::P_SDR3 => &p_sdr3,
        T::C_SDR4 => &c_sdr4,
        T::L_AB => &l_ab,
        T::T_SDR2 => &t_sdr2,
        T::T_PR1 => &t_pr1,
        T::C_PR2 => &c_pr2,
        T::P_PR3 => &p_pr3,
        T::T_SSIP => &t_ssip,
        T::T_PSTR4 => &t_pstr4,
        T::C1_ABGR => &c1_abgr,
        _ => return None,
    })
}

/// Run arbitrary clauses over a corpus. Instances are evaluated in parallel;
/// the report is assembled in corpus order.
pub fn run_clauses(name: &str, corpus: &Corpus, eval: &Evaluator, f: &ClauseFn) -> HarnessResult<SuiteReport> {
    let start = Instant::now();
    let results: Vec<HarnessResult<(Vec<ClauseOutcome>, Option<Trace>)>> = corpus
        .instances
        .par_iter()
        .map(|inst| {
            let mut ctx = Ctx::new(eval);
            f(&mut ctx, inst)?;
            let failed = ctx.outcomes.iter().any(|o| o.status == Status::Fails);
            Ok((ctx.outcomes, failed.then_some(ctx.trace)))
        })
        .collect();
    let mut clauses: BTreeMap<String, ClauseStats> = BTreeMap::new();
    let (mut checked, mut skipped) = (0, 0);
    let mut failures = Vec::new();
    for (inst, r) in corpus.instances.iter().zip(results) {
        let (outcomes, trace) = r?;
        let mut any = false;
        for o in &outcomes {
            let s = clauses.entry(o.clause.to_string()).or_default();
            match o.status {
                Status::Skipped => s.skipped += 1,
                Status::Holds => {
                    s.checked += 1;
                    any = true;
                }
                Status::Fails => {
                    s.checked += 1;
                    s.failed += 1;
                    any = true;
                    let t = trace.as_ref().expect("failing instances keep their trace");
                    failures.push(FailureBundle::for_instance(name, o.clause, inst, t));
                }
            }
        }
        if any {
            checked += 1;
        } else {
            skipped += 1;
        }
    }
    Ok(SuiteReport {
        theorem: name.to_string(),
        statement: String::new(),
        corpus: CorpusSummary::of(corpus),
        checked,
        skipped,
        clauses,
        failures,
        scope: None,
        discrepancies: Vec::new(),
        details: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Run a suite theorem over a corpus of the matching mode.
pub fn run_theorem_suite(id: TheoremId, corpus: &Corpus, eval: &Evaluator) -> HarnessResult<SuiteReport> {
    let f = clauses(id).ok_or_else(|| HarnessError::Usage(format!("{id} does not run over a corpus")))?;
    if id.corpus_mode() != Some(corpus.mode) {
        return Err(HarnessError::Usage(format!(
            "{id} needs a {} corpus, got {}",
            id.corpus_mode().map_or("", |m| m.name()),
            corpus.mode.name()
        )));
    }
    let mut report = run_clauses(id.name(), corpus, eval, f)?;
    report.statement = id.statement().to_string();
    report.scope = id.scope_note().map(str::to_string);
    Ok(report)
}

/// Run any theorem id at the given bound (its default when `None`).
pub fn run_check(id: TheoremId, max_order: Option<u64>, eval: &Evaluator) -> HarnessResult<SuiteReport> {
    let bound = max_order.unwrap_or_else(|| id.default_bound());
    match id.schema() {
        Schema::Suite(mode) => run_theorem_suite(id, &generate_corpus(bound, mode), eval),
        Schema::Golden => goldens::run(id, eval),
        Schema::Probe => probe::run(bound),
    }
}

/// Re-evaluate the clause of a bundle from scratch with the given clauses;
/// true when the failure reproduces and every recorded verdict re-verifies.
pub fn replay_with(bundle: &FailureBundle, f: &ClauseFn) -> HarnessResult<bool> {
    let Subject::Instance { instance } = &bundle.subject else {
        return Err(HarnessError::Usage("not an instance failure".into()));
    };
    for r in &bundle.verdicts {
        let space = AbelianPair::new(&r.source, &r.target);
        if verify_property(&space, r.property, &r.verdict).is_err() {
            return Ok(false);
        }
    }
    let eval = Evaluator::new();
    let mut ctx = Ctx::new(&eval);
    f(&mut ctx, instance)?;
    Ok(ctx
        .outcomes
        .iter()
        .any(|o| o.clause == bundle.clause && o.status == Status::Fails))
}

/// Replay a failure of any theorem suite or golden set.
pub fn replay(bundle: &FailureBundle) -> HarnessResult<bool> {
    let id: TheoremId = bundle.theorem.parse()?;
    match &bundle.subject {
        Subject::Golden { fact } => goldens::replay(id, fact),
        Subject::Instance { .. } => {
            let f = clauses(id).ok_or_else(|| HarnessError::Usage(format!("{id} has no clauses")))?;
            replay_with(bundle, f)
        }
    }
}
