use std::collections::BTreeSet;

use rickart_core::rickart::PropertyId;
use rickart_core::FiniteAbelianGroup;
use rickart_lab::corpus::{groupings, sum_of};
use rickart_lab::report::Subject;
use rickart_lab::suites::{replay_with, run_check, run_clauses, Ctx};
use rickart_lab::theorem::Schema;
use rickart_lab::{generate_corpus, replay, CorpusMode, Evaluator, HarnessResult, Instance, TheoremId};

fn partitions(n: u32) -> u64 {
    fn go(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| go(n - k, k)).sum()
    }
    go(n, n)
}

/// Number of abelian groups of order `n`: a product of partition numbers of
/// the prime exponents.
fn abelian_count(mut n: u64) -> u64 {
    let mut count = 1;
    let mut p = 2;
    while n > 1 {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        count *= partitions(e);
        p += 1;
    }
    count
}

#[test]
fn single_corpus_counts() {
    let total = |b: u64| (1..=b).map(abelian_count).sum::<u64>() as usize;
    assert_eq!(generate_corpus(32, CorpusMode::Single).len(), 55);
    assert_eq!(total(32), 55);
    assert_eq!(generate_corpus(4, CorpusMode::Single).len(), 5);
    assert_eq!(generate_corpus(64, CorpusMode::Single).len(), total(64));
    let one = generate_corpus(1, CorpusMode::Single);
    assert_eq!(one.len(), 1);
    assert!(matches!(&one.instances[0], Instance::Single { object } if object.is_zero()));
}

#[test]
fn pair_corpus_counts() {
    for b in [16, 64, 200] {
        let want: u64 = (1..=b.min(64))
            .flat_map(|x| (1..=b.min(64)).map(move |y| (x, y)))
            .filter(|(x, y)| x * y <= b)
            .map(|(x, y)| abelian_count(x) * abelian_count(y))
            .sum();
        assert_eq!(generate_corpus(b, CorpusMode::Pair).len() as u64, want, "bound {b}");
    }
}

#[test]
fn decompositions_are_genuine_and_distinct() {
    let corpus = generate_corpus(64, CorpusMode::Decomposition);
    let mut seen = BTreeSet::new();
    for inst in &corpus.instances {
        let Instance::Decomposition { whole, parts } = inst else { panic!("wrong mode") };
        assert!(parts.len() >= 2 && parts.iter().all(|p| !p.is_zero()), "{inst}");
        assert_eq!(sum_of(parts).iso_type(), whole.iso_type(), "{inst}");
        assert!(parts.windows(2).all(|w| w[0] <= w[1]), "{inst}");
        assert!(seen.insert((whole.clone(), parts.clone())), "duplicate {inst}");
    }
    // Z2^3 splits as Z2 + Z2^2 or Z2 + Z2 + Z2
    assert_eq!(groupings(&FiniteAbelianGroup::parse("Z2^3").unwrap()).len(), 2);
    // cyclic of prime power order never splits
    assert!(groupings(&FiniteAbelianGroup::parse("Z32").unwrap()).is_empty());
}

#[test]
fn reports_are_deterministic() {
    for (id, bound) in [(TheoremId::T_SDR2, 64), (TheoremId::REG_COR, 32), (TheoremId::SKEW_EXAMPLE, 0)] {
        let a = run_check(id, Some(bound), &Evaluator::new()).unwrap().to_json();
        let b = run_check(id, Some(bound), &Evaluator::new()).unwrap().to_json();
        assert_eq!(a, b, "{id}");
        assert!(!a.contains("elapsed"), "{id}: timing leaked into the payload");
    }
}

fn small_bound(mode: CorpusMode) -> u64 {
    match mode {
        CorpusMode::Single | CorpusMode::Decomposition => 32,
        _ => 64,
    }
}

#[test]
fn skip_accounting_adds_up() {
    let eval = Evaluator::new();
    for &id in TheoremId::ALL {
        let Schema::Suite(mode) = id.schema() else { continue };
        let r = run_check(id, Some(small_bound(mode)), &eval).unwrap();
        assert_eq!(r.checked + r.skipped, r.corpus.size, "{id}");
        for (name, c) in &r.clauses {
            assert!(c.checked + c.skipped <= r.corpus.size, "{id} {name}");
            assert!(c.failed <= c.checked, "{id} {name}");
        }
        let failed: usize = r.clauses.values().map(|c| c.failed).sum();
        assert_eq!(failed, r.failures.len(), "{id}");
    }
}

fn contradiction(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let Instance::Pair { source, target } = i else { unreachable!() };
    let v = c.rel(source, target, PropertyId::CsRickart)?;
    c.iff("contradiction", v, !v);
    Ok(())
}

fn tautology(c: &mut Ctx, i: &Instance) -> HarnessResult<()> {
    let Instance::Pair { source, target } = i else { unreachable!() };
    let v = c.rel(source, target, PropertyId::CsRickart)?;
    c.iff("tautology", v, v);
    Ok(())
}

#[test]
fn injected_failures_replay() {
    let corpus = generate_corpus(16, CorpusMode::Pair);
    let r = run_clauses("INJECTED", &corpus, &Evaluator::new(), &contradiction).unwrap();
    assert_eq!(r.failures.len(), corpus.len());
    for f in &r.failures {
        assert_eq!(f.verdicts.len(), 1);
        assert!(replay_with(f, &contradiction).unwrap(), "{}", f.description);
        assert!(!replay_with(f, &tautology).unwrap(), "{}", f.description);
        // a tampered verdict no longer re-verifies
        let mut bad = f.clone();
        bad.verdicts[0].verdict.value = !bad.verdicts[0].verdict.value;
        assert!(!replay_with(&bad, &contradiction).unwrap(), "{}", f.description);
    }
}

#[test]
fn suite_and_golden_failures_replay() {
    let eval = Evaluator::new();
    let r = run_check(TheoremId::REG_COR, Some(32), &eval).unwrap();
    assert!(!r.failures.is_empty());
    for f in &r.failures {
        assert!(replay(f).unwrap(), "{}", f.description);
    }
    let r = run_check(TheoremId::SKEW_EXAMPLE, None, &eval).unwrap();
    assert_eq!(r.failures.len(), 1);
    for f in &r.failures {
        assert!(matches!(f.subject, Subject::Golden { .. }));
        assert!(replay(f).unwrap(), "{}", f.description);
    }
}

#[test]
fn theorem_ids_parse_loosely() {
    assert_eq!("reg-cor".parse::<TheoremId>().unwrap(), TheoremId::REG_COR);
    assert_eq!("Skew_Example".parse::<TheoremId>().unwrap(), TheoremId::SKEW_EXAMPLE);
    assert!("NOPE".parse::<TheoremId>().is_err());
    assert_eq!(TheoremId::ALL.len(), 25);
}

#[test]
fn schema_mismatch_is_a_usage_error() {
    let corpus = generate_corpus(8, CorpusMode::Single);
    let err = rickart_lab::run_theorem_suite(TheoremId::T_SDR1, &corpus, &Evaluator::new()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
