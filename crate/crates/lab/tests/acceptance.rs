//! One line per acceptance criterion, then a single assertion over all of
//! them. Lines are written to the process stdout directly so they appear
//! whether or not the test passes.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use rickart_core::classifier::crosscheck_with_bruteforce;
use rickart_core::context::{AbelianContext, ModuleContext};
use rickart_core::enumerate::enumerate_subgroups;
use rickart_core::hom::{realizable_subgroups, Direction};
use rickart_core::predicates::{is_essential, is_fully_invariant, is_superfluous};
use rickart_core::rickart::{abelian_profile, decide, AbelianPair, PropertyId};
use rickart_core::ring::{builtin_ring, rmodule_hom_group};
use rickart_core::rmodule::module_profile;
use rickart_core::{FiniteAbelianGroup, GroupElement, Subgroup};
use rickart_lab::suites::run_check;
use rickart_lab::{Evaluator, TheoremId};

use PropertyId::*;

// time limits per criterion, wall clock
const LIMIT_SIP: Duration = Duration::from_secs(1);
const LIMIT_EX1: Duration = Duration::from_secs(1);
const LIMIT_SKEW: Duration = Duration::from_secs(5);
const LIMIT_EC1: Duration = Duration::from_secs(10);
const LIMIT_SUITES: Duration = Duration::from_secs(600);
const LIMIT_CLASSIFIER: Duration = Duration::from_secs(120);
const LIMIT_ORACLES: Duration = Duration::from_secs(600);
const LIMIT_PROBE: Duration = Duration::from_secs(60);

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn criterion(n: u32, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    let line = format!(
        "criterion {n} {} {name}: {detail} ({} ms, limit {} ms)\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_millis(),
        limit.as_millis()
    );
    let _ = std::io::stdout().write_all(line.as_bytes());
    pass
}

fn sub(g: &FiniteAbelianGroup, gens: &[&[i64]]) -> Subgroup {
    let gens: Vec<GroupElement> = gens.iter().map(|c| GroupElement(c.to_vec())).collect();
    Subgroup::from_generators(g, &gens).unwrap()
}

fn sip_example() -> Check {
    let m = g("Z2+Z16");
    let ctx = AbelianContext::shared(&m);
    let want: BTreeSet<Subgroup> = [
        Subgroup::zero(&m),
        Subgroup::whole(&m),
        sub(&m, &[&[1, 1]]),
        sub(&m, &[&[0, 1]]),
        sub(&m, &[&[1, 0]]),
        sub(&m, &[&[1, 8]]),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<Subgroup> = ctx.summands().map_err(|e| e.to_string())?.iter().cloned().collect();
    ensure(got == want, || format!("summands {got:?}"))?;
    let fi: BTreeSet<Subgroup> = ctx.fully_invariant_summands().map_err(|e| e.to_string())?.iter().cloned().collect();
    ensure(fi == BTreeSet::from([Subgroup::zero(&m), Subgroup::whole(&m)]), || format!("fully invariant summands {fi:?}"))?;
    let p = abelian_profile(&m).map_err(|e| e.to_string())?;
    for (id, v) in [
        (SipExtending, true),
        (SspLifting, true),
        (StrictlySipExtending, false),
        (StrictlySspLifting, false),
        (CsRickart, false),
    ] {
        ensure(p.value(id) == v, || format!("{id} = {}", p.value(id)))?;
    }
    Ok("6 summands, fully invariant {0, M}, SIP/SSP true, strict false, not self-CS-Rickart".into())
}

fn ex1_rows() -> Check {
    let z4 = g("Z4");
    let p = abelian_profile(&z4).map_err(|e| e.to_string())?;
    for (id, v) in [
        (StronglyCsRickart, true),
        (DualStronglyCsRickart, true),
        (StronglyRickart, false),
        (DualStronglyRickart, false),
    ] {
        ensure(p.value(id) == v, || format!("Z4 {id} = {}", p.value(id)))?;
    }
    let z9 = g("Z9");
    let pair = AbelianPair::new(&z9, &z4);
    for id in [StronglyCsRickart, DualStronglyCsRickart] {
        let v = decide(&pair, id).map_err(|e| e.to_string())?.value;
        ensure(v, || format!("Z4 relative to Z9: {id} = {v}"))?;
    }
    Ok("Z4 strongly and dual strongly, not strongly Rickart either way; Z4 strongly Z9-CS-Rickart both ways".into())
}

fn skew_example() -> Check {
    let b = builtin_ring("skew_z2").map_err(|e| e.to_string())?;
    let m = &b.modules[0];
    let ends = rmodule_hom_group(m, m).and_then(|h| h.elements()).map_err(|e| e.to_string())?;
    ensure(ends.len() == 4, || format!("|End| = {}", ends.len()))?;
    let mut got: Vec<u64> = ends.iter().map(|f| f.kernel().order()).collect();
    got.sort_unstable();
    let mut want = vec![8, 4, 1, 2];
    want.sort_unstable();
    let p = module_profile(m).map_err(|e| e.to_string())?;
    let (scs, ab) = (p.value(StronglyCsRickart), p.value(AbelianEndRing));
    ensure(got == want && scs && ab, || {
        format!("|End| = 4, kernel orders {got:?} against {want:?}, strongly self-CS-Rickart {scs}, abelian End {ab}")
    })?;
    Ok(format!("|End| = 4, kernel orders {got:?}, strongly self-CS-Rickart, abelian End"))
}

fn ec1_example() -> Check {
    let b = builtin_ring("ut2_f2").map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for (m, both) in b.modules.iter().zip([true, true, false]) {
        let p = module_profile(m).map_err(|e| e.to_string())?;
        let (s, d) = (p.value(StronglyCsRickart), p.value(DualStronglyCsRickart));
        ensure(s == both && d == both, || format!("{} strongly {s}, dual strongly {d}", m.label()))?;
        seen.push(m.label().to_string());
    }
    Ok(format!("{} strongly and dual strongly, {} neither", seen[..2].join(", "), seen[2]))
}

const SUITES: [TheoremId; 16] = [
    TheoremId::ST00,
    TheoremId::ST01,
    TheoremId::ST1,
    TheoremId::T_NONSING,
    TheoremId::REG_COR,
    TheoremId::T_SDR1,
    TheoremId::C_SDR5,
    TheoremId::L_SIPSSP,
    TheoremId::P_SDR3,
    TheoremId::C_SDR4,
    TheoremId::L_AB,
    TheoremId::T_SDR2,
    TheoremId::T_PR1,
    TheoremId::P_PR3,
    TheoremId::T_SSIP,
    TheoremId::T_PSTR4,
];

fn theorem_suites() -> Check {
    let eval = Evaluator::new();
    let mut failing = Vec::new();
    let mut checked = 0;
    for id in SUITES {
        let r = run_check(id, None, &eval).map_err(|e| format!("{id}: {e}"))?;
        ensure(r.checked + r.skipped == r.corpus.size, || format!("{id}: skip accounting"))?;
        checked += r.checked;
        if !r.passed() {
            let f = &r.failures[0];
            failing.push(format!("{id} ({} failures, first [{}] {})", r.failures.len(), f.clause, f.description));
        }
    }
    ensure(failing.is_empty(), || format!("failing: {}", failing.join(", ")))?;
    Ok(format!("{} suites, {checked} instances checked, zero failures", SUITES.len()))
}

fn classifier() -> Check {
    let small = crosscheck_with_bruteforce(32).map_err(|e| e.to_string())?;
    ensure(small.instances.len() == 55, || format!("{} groups up to 32", small.instances.len()))?;
    let large = crosscheck_with_bruteforce(64).map_err(|e| e.to_string())?;
    for c in [&small, &large] {
        ensure(c.disagreements.is_empty(), || format!("{} disagreements up to {}", c.disagreements.len(), c.max_order))?;
        for i in &c.instances {
            let cyclic = i.group.elements().any(|x| i.group.element_order(&x) == i.group.order());
            ensure(i.classified[&StronglyCsRickart] == cyclic, || format!("{}: torsion clause against cyclicity", i.group))?;
        }
    }
    Ok(format!("55 groups up to 32 and {} up to 64, zero disagreements", large.instances.len()))
}

fn oracles() -> Check {
    let mut counts = [0usize; 3];
    for m in FiniteAbelianGroup::all_up_to(32) {
        let ctx = AbelianContext::shared(&m);
        let lat = Lattice::new(&m);
        let socle = to_set(&ctx.socle().map_err(|e| e.to_string())?);
        let radical = to_set(&ctx.radical().map_err(|e| e.to_string())?);
        for k in enumerate_subgroups(&m).map_err(|e| e.to_string())?.iter() {
            let s = to_set(k);
            let ess = is_essential(ctx.as_ref(), k).map_err(|e| e.to_string())?.value;
            let sup = is_superfluous(ctx.as_ref(), k).map_err(|e| e.to_string())?.value;
            let fi = is_fully_invariant(ctx.as_ref(), k).map_err(|e| e.to_string())?.value;
            ensure(ess == lat.is_essential(&s) && ess == subset(&socle, &s), || format!("{m}: essential {k}"))?;
            ensure(sup == lat.is_superfluous(&s) && sup == subset(&s, &radical), || format!("{m}: superfluous {k}"))?;
            ensure(fi == is_fully_invariant_by_orbits(&m, &s), || format!("{m}: fully invariant {k}"))?;
            counts[0] += 1;
            counts[2] += 1;
        }
    }
    for m in FiniteAbelianGroup::all_up_to(16) {
        for n in FiniteAbelianGroup::all_up_to(16) {
            let brute: BTreeSet<Set> = all_maps(&m, &n).iter().map(|f| kernel(&m, &n, f)).collect();
            let ours: BTreeSet<Set> = realizable_subgroups(&m, &n, Direction::Kernel)
                .map_err(|e| e.to_string())?
                .iter()
                .map(to_set)
                .collect();
            ensure(ours == brute, || format!("realizable kernels ({m}, {n})"))?;
            counts[1] += 1;
        }
    }
    Ok(format!(
        "{} subgroups essential/superfluous, {} pairs realizable kernels, {} subgroups full invariance; zero mismatches",
        counts[0], counts[1], counts[2]
    ))
}

fn probe() -> Check {
    let r = run_check(TheoremId::SEMISIMPLE_PROBE, Some(16), &Evaluator::new()).map_err(|e| e.to_string())?;
    ensure(r.passed(), || "probe report failed".into())?;
    let d = r.details.as_ref().ok_or("no details")?;
    ensure(d["ring_semisimple"] == true && d["ring_square_free"] == true, || "ring flags".to_string())?;
    let conditions = d["conditions"].as_array().ok_or("no conditions")?;
    let v = conditions
        .iter()
        .find(|c| c["statement"] == "every module is strongly self-CS-Rickart")
        .ok_or("condition missing")?;
    ensure(v["holds"] == false, || format!("condition {v}"))?;
    let w = &v["witness"];
    ensure(
        w["module"].as_str().is_some_and(|s| s.starts_with("Z2^2"))
            && w["moving_automorphism"]["matrix"] == serde_json::json!([[0, 1], [1, 0]]),
        || format!("witness {w}"),
    )?;
    ensure(r.discrepancies.iter().any(|x| x["condition"] == v["id"]), || "no discrepancy record".into())?;
    Ok(format!("square-free semisimple, strong condition fails on Z2^2 with the swap, {} discrepancies", r.discrepancies.len()))
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "summands of Z2 + Z16", LIMIT_SIP, sip_example),
        criterion(2, "Z4 rows", LIMIT_EX1, ex1_rows),
        criterion(3, "skew group ring module", LIMIT_SKEW, skew_example),
        criterion(4, "upper triangular ring over F2", LIMIT_EC1, ec1_example),
        criterion(5, "theorem suites at default bounds", LIMIT_SUITES, theorem_suites),
        criterion(6, "classifier crosscheck", LIMIT_CLASSIFIER, classifier),
        criterion(7, "oracle suites", LIMIT_ORACLES, oracles),
        criterion(8, "semisimple probe over F2", LIMIT_PROBE, probe),
    ];
    let failed: Vec<usize> = (1..=results.len()).filter(|&i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
