//! A probe of the characterisation of square-free semisimple rings by
//! properties of all their right modules, measured on the modules of order
//! up to a bound. Each condition is evaluated independently; where a
//! condition disagrees with the ring-level one the disagreement is recorded,
//! not asserted.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::context::ModuleContext;
use crate::error::Result;
use crate::group::FiniteAbelianGroup;
use crate::hom::Homomorphism;
use crate::rickart::{full_profile, PropertyId, PropertyReport};
use crate::ring::{enumerate_modules, rmodule_hom_group, BuiltinRing, IsoClassifier, RightModule};
use crate::rmodule::{RModuleContext, RModulePair};
use crate::subgroup::Subgroup;
use crate::verdict::PropertyVerdict;

pub const DEFAULT_MAX_MODULE_ORDER: u64 = 16;

#[derive(Clone, Debug, Serialize)]
pub struct ProbeModule {
    pub label: String,
    pub additive: FiniteAbelianGroup,
    /// A distinguished module of the ring rather than an enumerated one.
    pub builtin: bool,
    pub semisimple: bool,
    pub square_free: bool,
    /// Every copy of the module inside an enumerated module is a summand.
    pub injective_in_fragment: bool,
    /// Every kernel of an epimorphism from an enumerated module onto it is a
    /// summand.
    pub projective_in_fragment: bool,
    pub profile: PropertyReport,
}

impl ProbeModule {
    pub fn value(&self, id: PropertyId) -> bool {
        self.profile.value(id)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionWitness {
    pub module: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<PropertyVerdict>,
    /// A summand that is not fully invariant ...
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moved_summand: Option<Subgroup>,
    /// ... and an involutive automorphism moving it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moving_automorphism: Option<Homomorphism>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub id: String,
    pub statement: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConditionWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub condition: String,
    pub statement: String,
    /// The value of the ring-level condition (i).
    pub expected: bool,
    pub observed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConditionWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingProbe {
    pub ring: String,
    pub ring_order: u64,
    pub max_module_order: u64,
    pub enumerated_modules: usize,
    pub ring_semisimple: bool,
    pub ring_square_free: bool,
    pub conditions: Vec<ConditionResult>,
    pub discrepancies: Vec<Discrepancy>,
    pub modules: Vec<ProbeModule>,
}

impl RingProbe {
    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// Two nonzero submodules meeting in zero that are isomorphic, if any.
fn square(ctx: &RModuleContext, classes: &[usize]) -> Option<(Subgroup, Subgroup)> {
    let subs = ctx.subobjects().ok()?;
    for (i, a) in subs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in subs.iter().enumerate().skip(i + 1) {
            if classes[i] == classes[j] && a.intersection_unchecked(b).is_zero() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

struct Entry {
    ctx: Arc<RModuleContext>,
    class: usize,
    sub_classes: Vec<usize>,
    quotient_classes: Vec<usize>,
    builtin: bool,
}

fn entry(m: &RightModule, builtin: bool, cl: &mut IsoClassifier) -> Result<Entry> {
    let ctx = Arc::new(RModuleContext::new(m.clone())?);
    let class = cl.classify(m)?;
    let subs = ctx.subobjects()?;
    let sub_classes = subs
        .iter()
        .map(|s| cl.classify(&m.submodule(s)?.0))
        .collect::<Result<Vec<_>>>()?;
    let quotient_classes = subs
        .iter()
        .map(|k| cl.classify(&m.quotient(k)?.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(Entry {
        ctx,
        class,
        sub_classes,
        quotient_classes,
        builtin,
    })
}

/// A non-fully-invariant summand of `ctx` and an endomorphism `f` with
/// `f^2 = 1`, `f != 1` and `f(D) != D`, if there is one.
fn moving_involution(ctx: &RModuleContext) -> Result<Option<(Subgroup, Homomorphism)>> {
    let m = ctx.module();
    let id = Homomorphism::identity(m.additive());
    let end = rmodule_hom_group(m, m)?;
    for d in ctx.summands()?.iter() {
        if ctx.fully_invariant_violation(d)?.is_none() {
            continue;
        }
        let found = end.find(|f| {
            f != &id
                && f.compose(f).map(|ff| ff == id).unwrap_or(false)
                && f.image_of(d).map(|fd| &fd != d).unwrap_or(false)
        })?;
        if let Some(f) = found {
            return Ok(Some((d.clone(), f)));
        }
    }
    Ok(None)
}

const STATEMENTS: [(&str, &str); 8] = [
    ("i", "R is square-free semisimple"),
    ("ii", "every module is square-free semisimple"),
    ("iii", "every module is weak duo and injective"),
    ("iv", "every module is strongly extending"),
    ("v", "every module is strongly self-CS-Rickart"),
    ("vi", "every module is weak duo and projective"),
    ("vii", "every module is strongly lifting"),
    ("viii", "every module is dual strongly self-CS-Rickart"),
];

/// Runs the probe on all modules of order at most `max_module_order`
/// together with the ring's distinguished modules.
pub fn ring_probe(ring: &BuiltinRing, max_module_order: u64) -> Result<RingProbe> {
    let r = &ring.ring;
    let enumerated = enumerate_modules(r, max_module_order)?;
    let mut cl = IsoClassifier::new();
    let mut entries = Vec::new();
    for m in &enumerated {
        entries.push(entry(m, false, &mut cl)?);
    }
    for m in &ring.modules {
        entries.push(entry(m, true, &mut cl)?);
    }
    let regular = entry(&RightModule::regular(r)?, true, &mut cl)?;

    let profiles: Vec<PropertyReport> = entries
        .par_iter()
        .map(|e| full_profile(&RModulePair::endo(e.ctx.clone())))
        .collect::<Result<_>>()?;

    let fragment: Vec<&Entry> = entries.iter().filter(|e| !e.builtin).collect();
    let mut modules = Vec::with_capacity(entries.len());
    for (e, profile) in entries.iter().zip(profiles) {
        let mut injective = true;
        let mut projective = true;
        for n in &fragment {
            let subs = n.ctx.subobjects()?;
            for (i, s) in subs.iter().enumerate() {
                if n.sub_classes[i] == e.class && !n.ctx.is_summand(s)? {
                    injective = false;
                }
                if n.quotient_classes[i] == e.class && !n.ctx.is_summand(s)? {
                    projective = false;
                }
            }
        }
        modules.push(ProbeModule {
            label: e.ctx.label(),
            additive: e.ctx.object().clone(),
            builtin: e.builtin,
            semisimple: e.ctx.is_semisimple(),
            square_free: square(&e.ctx, &e.sub_classes).is_none(),
            injective_in_fragment: injective,
            projective_in_fragment: projective,
            profile,
        });
    }

    let ring_semisimple = regular.ctx.radical()?.is_zero();
    let ring_square = square(&regular.ctx, &regular.sub_classes);
    let ring_square_free = ring_square.is_none();

    type Test = Box<dyn Fn(&ProbeModule) -> (bool, Option<PropertyId>, &'static str)>;
    let tests: Vec<Test> = vec![
        Box::new(|m| {
            (m.semisimple && m.square_free, None, if !m.semisimple { "not semisimple" } else { "contains a square" })
        }),
        Box::new(|m| {
            let wd = m.value(PropertyId::WeakDuo);
            (wd && m.injective_in_fragment, Some(PropertyId::WeakDuo), if !wd { "not weak duo" } else { "not injective" })
        }),
        Box::new(|m| (m.value(PropertyId::StronglyExtending), Some(PropertyId::StronglyExtending), "not strongly extending")),
        Box::new(|m| (m.value(PropertyId::StronglyCsRickart), Some(PropertyId::StronglyCsRickart), "not strongly self-CS-Rickart")),
        Box::new(|m| {
            let wd = m.value(PropertyId::WeakDuo);
            (wd && m.projective_in_fragment, Some(PropertyId::WeakDuo), if !wd { "not weak duo" } else { "not projective" })
        }),
        Box::new(|m| (m.value(PropertyId::StronglyLifting), Some(PropertyId::StronglyLifting), "not strongly lifting")),
        Box::new(|m| (m.value(PropertyId::DualStronglyCsRickart), Some(PropertyId::DualStronglyCsRickart), "not dual strongly self-CS-Rickart")),
    ];

    let mut conditions = Vec::with_capacity(8);
    conditions.push(ConditionResult {
        id: STATEMENTS[0].0.into(),
        statement: STATEMENTS[0].1.into(),
        holds: ring_semisimple && ring_square_free,
        witness: if ring_semisimple && ring_square_free {
            None
        } else {
            Some(ConditionWitness {
                module: "R_R".into(),
                detail: if !ring_semisimple {
                    "nonzero radical".into()
                } else {
                    "contains two isomorphic submodules meeting in zero".into()
                },
                verdict: None,
                moved_summand: None,
                moving_automorphism: None,
            })
        },
    });
    for (k, test) in tests.iter().enumerate() {
        let (id, statement) = STATEMENTS[k + 1];
        let mut witness = None;
        for (m, e) in modules.iter().zip(&entries).filter(|(m, _)| !m.builtin) {
            let (ok, prop, detail) = test(m);
            if ok {
                continue;
            }
            let mut w = ConditionWitness {
                module: m.label.clone(),
                detail: detail.into(),
                verdict: prop.map(|p| m.profile.properties[&p].clone()),
                moved_summand: None,
                moving_automorphism: None,
            };
            if !m.value(PropertyId::WeakDuo) {
                if let Some((d, f)) = moving_involution(&e.ctx)? {
                    w.moved_summand = Some(d);
                    w.moving_automorphism = Some(f);
                }
            }
            witness = Some(w);
            break;
        }
        conditions.push(ConditionResult {
            id: id.into(),
            statement: statement.into(),
            holds: witness.is_none(),
            witness,
        });
    }
    let expected = conditions[0].holds;
    let discrepancies = conditions[1..]
        .iter()
        .filter(|c| c.holds != expected)
        .map(|c| Discrepancy {
            condition: c.id.clone(),
            statement: c.statement.clone(),
            expected,
            observed: c.holds,
            witness: c.witness.clone(),
        })
        .collect();
    Ok(RingProbe {
        ring: r.name().to_string(),
        ring_order: r.order(),
        max_module_order,
        enumerated_modules: enumerated.len(),
        ring_semisimple,
        ring_square_free,
        conditions,
        discrepancies,
        modules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::builtin_ring;

    #[test]
    fn f2_probe_records_discrepancy() {
        let p = ring_probe(&builtin_ring("f2").unwrap(), 4).unwrap();
        assert!(p.ring_semisimple && p.ring_square_free);
        let v = p.condition("v").unwrap();
        assert!(!v.holds);
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.module, "Z2^2#0");
        let f = w.moving_automorphism.as_ref().unwrap();
        assert_eq!(f.matrix().to_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(p.discrepancies.len(), 7);
    }

    #[test]
    fn ut2_probe() {
        let p = ring_probe(&builtin_ring("ut2_f2").unwrap(), 8).unwrap();
        assert!(!p.ring_semisimple);
        let rr = p.modules.iter().find(|m| m.label == "R_R").unwrap();
        assert!(!rr.value(PropertyId::StronglyCsRickart));
        assert!(rr.projective_in_fragment);
        // the only discrepancies are conditions that happen to hold
        assert!(p.discrepancies.iter().all(|d| d.observed));
    }
}
