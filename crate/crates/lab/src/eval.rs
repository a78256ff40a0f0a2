//! Memoised property evaluation with a per-instance trace of every verdict
//! consulted.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rickart_core::rickart::{abelian_profile, decide, AbelianPair, PropertyId, PropertyReport};
use rickart_core::{FiniteAbelianGroup, PropertyVerdict};
use serde::Serialize;

use crate::error::HarnessResult;

type G = FiniteAbelianGroup;

/// A verdict together with the space it was decided in. For a self property
/// `source == target`.
#[derive(Clone, Debug, Serialize)]
pub struct RecordedVerdict {
    pub source: G,
    pub target: G,
    pub property: PropertyId,
    pub verdict: PropertyVerdict,
}

/// Everything an instance evaluation looked at.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub values: BTreeMap<String, bool>,
    pub verdicts: Vec<RecordedVerdict>,
}

impl Trace {
    pub fn note(&mut self, name: impl Into<String>, value: bool) -> bool {
        self.values.insert(name.into(), value);
        value
    }

    fn record(&mut self, m: &G, n: &G, id: PropertyId, v: &PropertyVerdict) {
        let seen = self
            .verdicts
            .iter()
            .any(|r| r.property == id && &r.source == m && &r.target == n);
        if !seen {
            self.verdicts.push(RecordedVerdict {
                source: m.clone(),
                target: n.clone(),
                property: id,
                verdict: v.clone(),
            });
        }
    }
}

/// Shared caches for a run. Independent evaluators share nothing, which is
/// what replay relies on.
#[derive(Default)]
pub struct Evaluator {
    profiles: RwLock<HashMap<G, Arc<PropertyReport>>>,
    pairs: RwLock<HashMap<(G, G), Arc<AbelianPair>>>,
    verdicts: RwLock<HashMap<(G, G, PropertyId), PropertyVerdict>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// The full self profile (consistency-checked).
    pub fn profile(&self, g: &G) -> HarnessResult<Arc<PropertyReport>> {
        if let Some(p) = self.profiles.read().expect("lock").get(g) {
            return Ok(p.clone());
        }
        let p = Arc::new(abelian_profile(g)?);
        Ok(self
            .profiles
            .write()
            .expect("lock")
            .entry(g.clone())
            .or_insert(p)
            .clone())
    }

    pub fn pair(&self, m: &G, n: &G) -> Arc<AbelianPair> {
        let key = (m.clone(), n.clone());
        if let Some(p) = self.pairs.read().expect("lock").get(&key) {
            return p.clone();
        }
        let p = Arc::new(AbelianPair::new(m, n));
        self.pairs.write().expect("lock").entry(key).or_insert(p).clone()
    }

    /// `N` relative to `M`; the self profile when `m == n`.
    pub fn verdict(&self, m: &G, n: &G, id: PropertyId) -> HarnessResult<PropertyVerdict> {
        if m == n {
            return Ok(self.profile(m)?.properties[&id].clone());
        }
        let key = (m.clone(), n.clone(), id);
        if let Some(v) = self.verdicts.read().expect("lock").get(&key) {
            return Ok(v.clone());
        }
        let v = decide(self.pair(m, n).as_ref(), id)?;
        self.verdicts.write().expect("lock").insert(key, v.clone());
        Ok(v)
    }

    /// Value of a relative property, recorded in the trace.
    pub fn rel(&self, t: &mut Trace, m: &G, n: &G, id: PropertyId) -> HarnessResult<bool> {
        let v = self.verdict(m, n, id)?;
        t.record(m, n, id, &v);
        Ok(v.value)
    }

    /// Value of a self property, recorded in the trace.
    pub fn own(&self, t: &mut Trace, g: &G, id: PropertyId) -> HarnessResult<bool> {
        self.rel(t, g, g, id)
    }
}
