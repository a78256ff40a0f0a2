use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::corpus::{Corpus, CorpusMode, Instance};
use crate::eval::{RecordedVerdict, Trace};

/// What a failure is about: a corpus instance or a named golden fact.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Subject {
    Instance { instance: Instance },
    Golden { fact: String },
}

/// Everything needed to re-check a failure in isolation.
#[derive(Clone, Debug, Serialize)]
pub struct FailureBundle {
    pub theorem: String,
    pub clause: String,
    pub subject: Subject,
    pub description: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<RecordedVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<Value>,
}

impl FailureBundle {
    pub fn for_instance(theorem: &str, clause: &str, instance: &Instance, trace: &Trace) -> Self {
        FailureBundle {
            theorem: theorem.to_string(),
            clause: clause.to_string(),
            description: instance.to_string(),
            subject: Subject::Instance {
                instance: instance.clone(),
            },
            values: trace.values.clone(),
            verdicts: trace.verdicts.clone(),
            expected: None,
            observed: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClauseStats {
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<CorpusMode>,
    pub max_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_bound: Option<u64>,
    pub size: usize,
}

impl CorpusSummary {
    pub fn of(corpus: &Corpus) -> Self {
        CorpusSummary {
            mode: Some(corpus.mode),
            max_order: corpus.max_order,
            component_bound: (corpus.component_bound != corpus.max_order).then_some(corpus.component_bound),
            size: corpus.len(),
        }
    }

    pub fn facts(n: usize) -> Self {
        CorpusSummary {
            mode: None,
            max_order: 0,
            component_bound: None,
            size: n,
        }
    }
}

/// Result of one suite. Serialises deterministically; the elapsed time is
/// kept out of the payload.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub theorem: String,
    pub statement: String,
    pub corpus: CorpusSummary,
    pub checked: usize,
    pub skipped: usize,
    pub clauses: BTreeMap<String, ClauseStats>,
    pub failures: Vec<FailureBundle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    /// Findings that are reported without failing the suite.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One line: id, verdict, counts.
    pub fn summary_line(&self) -> String {
        let mut s = format!(
            "{:<16} {}  checked {:>6}  skipped {:>6}  failures {}",
            self.theorem,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked,
            self.skipped,
            self.failures.len()
        );
        if !self.discrepancies.is_empty() {
            let _ = write!(s, "  discrepancies {}", self.discrepancies.len());
        }
        let _ = write!(s, "  ({} ms)", self.elapsed_ms);
        s
    }
}
