//! Worked examples re-derived from scratch and compared with the values they
//! are known to have.

use std::collections::BTreeMap;
use std::time::Instant;

use rickart_core::classifier::{classify, FgAbelianGroupSpec};
use rickart_core::context::{AbelianContext, ModuleContext};
use rickart_core::predicates::{is_essential, is_superfluous};
use rickart_core::rickart::PropertyId;
use rickart_core::ring::{builtin_ring, is_isomorphic, rmodule_hom_group, ModuleHom, RightModule};
use rickart_core::rmodule::module_profile;
use rickart_core::{FiniteAbelianGroup, GroupElement, Homomorphism, Subgroup};
use serde_json::{json, Map, Value};

use crate::error::{HarnessError, HarnessResult};
use crate::eval::Evaluator;
use crate::report::{ClauseStats, CorpusSummary, FailureBundle, Subject, SuiteReport};
use crate::theorem::TheoremId;

use PropertyId::*;

type Compute = Box<dyn Fn(&Evaluator) -> HarnessResult<Value> + Send + Sync>;

pub struct Fact {
    pub name: &'static str,
    pub expected: Value,
    compute: Compute,
}

impl Fact {
    fn new(
        name: &'static str,
        expected: Value,
        compute: impl Fn(&Evaluator) -> HarnessResult<Value> + Send + Sync + 'static,
    ) -> Self {
        Fact {
            name,
            expected,
            compute: Box::new(compute),
        }
    }

    pub fn observe(&self, eval: &Evaluator) -> HarnessResult<Value> {
        (self.compute)(eval)
    }
}

fn g(s: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(s).expect("valid group spec")
}

/// `{PROPERTY: value}` for `N` relative to `M`.
fn props(eval: &Evaluator, m: &str, n: &str, ids: &[PropertyId]) -> HarnessResult<Value> {
    let (m, n) = (g(m), g(n));
    let mut out = Map::new();
    for &id in ids {
        out.insert(id.name().to_string(), Value::Bool(eval.verdict(&m, &n, id)?.value));
    }
    Ok(Value::Object(out))
}

fn expect_props(pairs: &[(PropertyId, bool)]) -> Value {
    Value::Object(
        pairs
            .iter()
            .map(|&(id, v)| (id.name().to_string(), Value::Bool(v)))
            .collect(),
    )
}

fn ids(pairs: &[(PropertyId, bool)]) -> Vec<PropertyId> {
    pairs.iter().map(|p| p.0).collect()
}

/// A golden row: `N` relative to `M` has exactly these values.
fn row(name: &'static str, m: &'static str, n: &'static str, pairs: &[(PropertyId, bool)]) -> Fact {
    let list = ids(pairs);
    Fact::new(name, expect_props(pairs), move |e| props(e, m, n, &list))
}

fn closed_form(name: &'static str, spec: &'static str, pairs: &[(PropertyId, bool)]) -> Fact {
    let list = ids(pairs);
    Fact::new(name, expect_props(pairs), move |_| {
        let p = classify(&FgAbelianGroupSpec::parse(spec)?);
        Ok(Value::Object(
            list.iter()
                .map(|&id| (id.name().to_string(), p.get(id).map_or(Value::Null, Value::Bool)))
                .collect(),
        ))
    })
}

/// The named subgroups of `Z2 + Z16`.
fn sip_named() -> HarnessResult<(FiniteAbelianGroup, Vec<(&'static str, Subgroup)>)> {
    let m = g("Z2+Z16");
    let gen = |x: i64, y: i64| -> HarnessResult<Subgroup> {
        Ok(Subgroup::from_generators(&m, &[m.element(&[x, y])?])?)
    };
    let named = vec![
        ("0", Subgroup::zero(&m)),
        ("M", Subgroup::whole(&m)),
        ("A", gen(1, 1)?),
        ("B", gen(0, 1)?),
        ("C", gen(1, 0)?),
        ("D", gen(1, 8)?),
    ];
    Ok((m, named))
}

fn names_of(list: &[Subgroup], named: &[(&'static str, Subgroup)]) -> Value {
    let mut out: Vec<String> = list
        .iter()
        .map(|s| {
            named
                .iter()
                .find(|(_, t)| t == s)
                .map_or_else(|| s.to_string(), |(n, _)| n.to_string())
        })
        .collect();
    out.sort();
    json!(out)
}

fn e_sip() -> Vec<Fact> {
    let m = "Z2+Z16";
    vec![
        Fact::new("summands", json!(["0", "A", "B", "C", "D", "M"]), |_| {
            let (m, named) = sip_named()?;
            Ok(names_of(&AbelianContext::shared(&m).summands()?, &named))
        }),
        Fact::new("fully-invariant-summands", json!(["0", "M"]), |_| {
            let (m, named) = sip_named()?;
            Ok(names_of(&AbelianContext::shared(&m).fully_invariant_summands()?, &named))
        }),
        row(
            "sip-ssp",
            m,
            m,
            &[
                (SipExtending, true),
                (SspLifting, true),
                (StrictlySipExtending, false),
                (StrictlySspLifting, false),
            ],
        ),
        row(
            "self-cs-rickart",
            m,
            m,
            &[
                (CsRickart, false),
                (DualCsRickart, false),
                (StronglyCsRickart, false),
                (DualStronglyCsRickart, false),
            ],
        ),
        Fact::new(
            "a-b-meet-and-sum",
            json!({"A meet B essential": false, "A plus B superfluous": false}),
            |_| {
                let (m, named) = sip_named()?;
                let ctx = AbelianContext::shared(&m);
                let (a, b) = (&named[2].1, &named[3].1);
                Ok(json!({
                    "A meet B essential": is_essential(ctx.as_ref(), &a.intersection(b)?)?.value,
                    "A plus B superfluous": is_superfluous(ctx.as_ref(), &a.sum(b)?)?.value,
                }))
            },
        ),
        row(
            "z16-relative-to-z2",
            "Z2",
            "Z16",
            &[(StronglyCsRickart, true), (DualStronglyCsRickart, true)],
        ),
        row(
            "z2-relative-to-z16",
            "Z16",
            "Z2",
            &[(StronglyCsRickart, true), (DualStronglyCsRickart, true)],
        ),
        // the converse of the necessary condition on sums fails here
        Fact::new(
            "sum-converse",
            json!({"parts strongly self": true, "parts mutually strongly": true, "sum strongly self": false}),
            |e| {
                let (a, b, s) = (g("Z2"), g("Z16"), g(m));
                let mut parts = true;
                let mut mutual = true;
                for id in [StronglyCsRickart, DualStronglyCsRickart] {
                    parts &= e.verdict(&a, &a, id)?.value && e.verdict(&b, &b, id)?.value;
                    mutual &= e.verdict(&a, &b, id)?.value && e.verdict(&b, &a, id)?.value;
                }
                let sum = e.verdict(&s, &s, StronglyCsRickart)?.value
                    || e.verdict(&s, &s, DualStronglyCsRickart)?.value;
                Ok(json!({"parts strongly self": parts, "parts mutually strongly": mutual, "sum strongly self": sum}))
            },
        ),
    ]
}

fn ex1() -> Vec<Fact> {
    vec![
        row(
            "z4",
            "Z4",
            "Z4",
            &[
                (StronglyCsRickart, true),
                (DualStronglyCsRickart, true),
                (StronglyRickart, false),
                (DualStronglyRickart, false),
            ],
        ),
        row(
            "z4-relative-to-z9",
            "Z9",
            "Z4",
            &[(StronglyCsRickart, true), (DualStronglyCsRickart, true)],
        ),
        Fact::new("coprime-cyclic-up-to-32", json!([]), |e| {
            let mut bad = Vec::new();
            for m in 1..=32u64 {
                for n in 1..=32u64 {
                    if rickart_core::arith::gcd(m, n) != 1 {
                        continue;
                    }
                    let gm = FiniteAbelianGroup::from_cyclic_orders(&[m])?;
                    let gn = FiniteAbelianGroup::from_cyclic_orders(&[n])?;
                    if !e.verdict(&gm, &gn, StronglyCsRickart)?.value {
                        bad.push(format!("Z{n} relative to Z{m}"));
                    }
                }
            }
            Ok(json!(bad))
        }),
        closed_form("closed-form-z", "Z", &[(StronglyCsRickart, true), (DualStronglyCsRickart, false)]),
        closed_form("closed-form-q", "Q", &[(DualStronglyCsRickart, true)]),
        closed_form("closed-form-z-z2", "Z+Z2", &[(StronglyCsRickart, false), (WeakDuo, false)]),
        closed_form("closed-form-z-z3", "Z+Z3", &[(StronglyCsRickart, false), (WeakDuo, false)]),
        closed_form(
            "closed-form-z4",
            "Z4",
            &[(StronglyCsRickart, true), (DualStronglyCsRickart, true)],
        ),
    ]
}

fn module_row(name: &'static str, ring: &'static str, label: &'static str, pairs: &[(PropertyId, bool)]) -> Fact {
    let list = ids(pairs);
    Fact::new(name, expect_props(pairs), move |_| {
        let m = builtin_module(ring, label)?;
        let p = module_profile(&m)?;
        Ok(Value::Object(
            list.iter()
                .map(|&id| (id.name().to_string(), Value::Bool(p.value(id))))
                .collect(),
        ))
    })
}

fn builtin_module(ring: &str, label: &str) -> HarnessResult<RightModule> {
    builtin_ring(ring)?
        .modules
        .into_iter()
        .find(|m| m.label() == label)
        .ok_or_else(|| HarnessError::Usage(format!("ring {ring} has no module {label}")))
}

fn ec1() -> Vec<Fact> {
    let strong = [(StronglyCsRickart, true), (DualStronglyCsRickart, true)];
    let neither = [(StronglyCsRickart, false), (DualStronglyCsRickart, false)];
    let regular = [
        (Rickart, true),
        (DualRickart, true),
        (StronglyCsRickart, true),
        (DualStronglyCsRickart, true),
    ];
    vec![
        row("z2", "Z2", "Z2", &strong),
        row("z2-squared", "Z2^2", "Z2^2", &neither),
        module_row("ut2-m1", "ut2_f2", "M1", &regular),
        module_row("ut2-m2", "ut2_f2", "M2", &regular),
        module_row("ut2-regular", "ut2_f2", "R_R", &neither),
        Fact::new("ut2-endomorphism-orders", json!({"M1": 2, "M2": 2}), |_| {
            let mut out = Map::new();
            for label in ["M1", "M2"] {
                let m = builtin_module("ut2_f2", label)?;
                out.insert(label.into(), json!(rmodule_hom_group(&m, &m)?.size));
            }
            Ok(Value::Object(out))
        }),
        Fact::new("ut2-regular-is-m1-plus-m2", json!(true), |_| {
            let sum = builtin_module("ut2_f2", "M1")?.direct_sum(&builtin_module("ut2_f2", "M2")?)?;
            Ok(json!(is_isomorphic(&sum, &builtin_module("ut2_f2", "R_R")?)?))
        }),
    ]
}

fn e1_abgr() -> Vec<Fact> {
    let mut facts: Vec<Fact> = [("z2-squared", "Z2^2"), ("z3-squared", "Z3^2"), ("z5-squared", "Z5^2"), ("z7-squared", "Z7^2")]
        .into_iter()
        .map(|(name, spec)| {
            row(
                name,
                spec,
                spec,
                &[
                    (CsRickart, true),
                    (DualCsRickart, true),
                    (StronglyCsRickart, false),
                    (DualStronglyCsRickart, false),
                ],
            )
        })
        .collect();
    facts.push(closed_form(
        "closed-form-z3-squared",
        "Z3^2",
        &[(StronglyCsRickart, false), (DualStronglyCsRickart, false)],
    ));
    facts.push(Fact::new("mixed-z2-q-outside-scope", json!(true), |_| {
        Ok(json!(classify(&FgAbelianGroupSpec::parse("Z2+Q")?).applicability.outside_scope))
    }));
    facts
}

/// Left multiplication by the upper triangular matrix `(a, b; 0, a)` on the
/// coordinates `(x11, x12, x22)`.
fn left_multiplication(a: i64, b: i64) -> HarnessResult<Homomorphism> {
    let m = FiniteAbelianGroup::new(vec![2, 2, 2])?;
    let p = [a, b, a];
    let images: Vec<GroupElement> = (0..3)
        .map(|j| {
            let mut x = [0i64; 3];
            x[j] = 1;
            GroupElement(vec![
                (p[0] * x[0]) % 2,
                (p[0] * x[1] + p[1] * x[2]) % 2,
                (p[2] * x[2]) % 2,
            ])
        })
        .collect();
    Ok(Homomorphism::from_images(&m, &m, &images)?)
}

/// The four endomorphisms as displayed: zero, `e12`, identity, `1 + e12`.
const SKEW_ENDOS: [(&str, i64, i64); 4] = [("phi1", 0, 0), ("phi2", 0, 1), ("phi3", 1, 0), ("phi4", 1, 1)];

fn skew() -> Vec<Fact> {
    vec![
        Fact::new("endomorphism-count", json!(4), |_| {
            let m = builtin_module("skew_z2", "M")?;
            Ok(json!(rmodule_hom_group(&m, &m)?.size))
        }),
        Fact::new("endomorphisms-are-the-displayed-ones", json!(true), |_| {
            let m = builtin_module("skew_z2", "M")?;
            let mut all = rmodule_hom_group(&m, &m)?.elements()?;
            let mut shown = Vec::new();
            for (_, a, b) in SKEW_ENDOS {
                let f = left_multiplication(a, b)?;
                if ModuleHom::new(&m, &m, f.clone()).is_err() {
                    return Ok(json!(false));
                }
                shown.push(f);
            }
            let key = |f: &Homomorphism| format!("{:?}", f.matrix());
            all.sort_by_key(key);
            shown.sort_by_key(key);
            Ok(json!(all == shown))
        }),
        Fact::new(
            "kernel-orders",
            json!({"phi1": 8, "phi2": 4, "phi3": 1, "phi4": 2}),
            |_| {
                let mut out = BTreeMap::new();
                for (name, a, b) in SKEW_ENDOS {
                    out.insert(name, left_multiplication(a, b)?.kernel().order());
                }
                Ok(json!(out))
            },
        ),
        module_row(
            "profile",
            "skew_z2",
            "M",
            &[
                (CsRickart, true),
                (StronglyCsRickart, true),
                (AbelianEndRing, true),
                (StronglyRickart, false),
            ],
        ),
    ]
}

pub fn facts(id: TheoremId) -> Option<Vec<Fact>> {
    Some(match id {
        TheoremId::E_SIP => e_sip(),
        TheoremId::EX1 => ex1(),
        TheoremId::EC1 => ec1(),
        TheoremId::E1_ABGR => e1_abgr(),
        TheoremId::SKEW_EXAMPLE => skew(),
        _ => return None,
    })
}

fn not_golden(id: TheoremId) -> HarnessError {
    HarnessError::Usage(format!("{id} is not a golden example set"))
}

pub fn run(id: TheoremId, eval: &Evaluator) -> HarnessResult<SuiteReport> {
    let start = Instant::now();
    let facts = facts(id).ok_or_else(|| not_golden(id))?;
    let mut clauses = BTreeMap::new();
    let mut failures = Vec::new();
    for fact in &facts {
        let observed = fact.observe(eval)?;
        let ok = observed == fact.expected;
        clauses.insert(
            fact.name.to_string(),
            ClauseStats {
                checked: 1,
                skipped: 0,
                failed: usize::from(!ok),
            },
        );
        if !ok {
            failures.push(FailureBundle {
                theorem: id.name().to_string(),
                clause: fact.name.to_string(),
                subject: Subject::Golden {
                    fact: fact.name.to_string(),
                },
                description: format!("{id} {}", fact.name),
                values: BTreeMap::new(),
                verdicts: Vec::new(),
                expected: Some(fact.expected.clone()),
                observed: Some(observed),
            });
        }
    }
    Ok(SuiteReport {
        theorem: id.name().to_string(),
        statement: id.statement().to_string(),
        corpus: CorpusSummary::facts(facts.len()),
        checked: facts.len(),
        skipped: 0,
        clauses,
        failures,
        scope: id.scope_note().map(str::to_string),
        discrepancies: Vec::new(),
        details: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Recompute one fact with a fresh evaluator; true when it still mismatches.
pub fn replay(id: TheoremId, fact: &str) -> HarnessResult<bool> {
    let facts = facts(id).ok_or_else(|| not_golden(id))?;
    let f = facts
        .iter()
        .find(|f| f.name == fact)
        .ok_or_else(|| HarnessError::Usage(format!("{id} has no fact {fact:?}")))?;
    Ok(f.observe(&Evaluator::new())? != f.expected)
}
