//! Report-only probe of a ring through its small modules.

use std::collections::BTreeMap;
use std::time::Instant;

use rickart_core::probe::ring_probe;
use rickart_core::ring::builtin_ring;
use serde_json::json;

use crate::error::HarnessResult;
use crate::report::{ClauseStats, CorpusSummary, SuiteReport};
use crate::theorem::TheoremId;

/// The ring the semisimple probe runs on.
pub const PROBE_RING: &str = "f2";

pub fn run(max_module_order: u64) -> HarnessResult<SuiteReport> {
    let mut report = run_ring(PROBE_RING, max_module_order)?;
    let id = TheoremId::SEMISIMPLE_PROBE;
    report.theorem = id.name().to_string();
    report.statement = id.statement().to_string();
    report.scope = id.scope_note().map(str::to_string);
    Ok(report)
}

/// Probe a built-in ring. Conditions that disagree with the ring-level one
/// become discrepancies; they never fail the report.
pub fn run_ring(name: &str, max_module_order: u64) -> HarnessResult<SuiteReport> {
    let start = Instant::now();
    let ring = builtin_ring(name)?;
    let probe = ring_probe(&ring, max_module_order)?;
    let clauses: BTreeMap<String, ClauseStats> = probe
        .conditions
        .iter()
        .map(|c| {
            (
                c.id.clone(),
                ClauseStats {
                    checked: 1,
                    skipped: 0,
                    failed: 0,
                },
            )
        })
        .collect();
    let discrepancies = probe
        .discrepancies
        .iter()
        .map(|d| serde_json::to_value(d).expect("discrepancy serialises"))
        .collect();
    let modules: Vec<String> = probe.modules.iter().map(|m| m.label.clone()).collect();
    let details = json!({
        "ring": probe.ring,
        "ring_order": probe.ring_order,
        "max_module_order": probe.max_module_order,
        "enumerated_modules": probe.enumerated_modules,
        "ring_semisimple": probe.ring_semisimple,
        "ring_square_free": probe.ring_square_free,
        "conditions": probe.conditions,
        "modules": modules,
    });
    Ok(SuiteReport {
        theorem: format!("ring {name} probe"),
        statement: String::new(),
        corpus: CorpusSummary {
            mode: None,
            max_order: max_module_order,
            component_bound: None,
            size: probe.conditions.len(),
        },
        checked: probe.conditions.len(),
        skipped: 0,
        clauses,
        failures: Vec::new(),
        scope: None,
        discrepancies,
        details: Some(details),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
