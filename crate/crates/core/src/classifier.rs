//! Closed-form classification of strongly self-CS-Rickart abelian groups
//! (torsion, finitely generated and injective cases), with infinite
//! constituents handled symbolically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{factorize, is_prime};
use crate::error::{LabError, Result};
use crate::group::{FiniteAbelianGroup, IsoType, SpecParser};
use crate::rickart::{abelian_profile, PropertyId};

/// A direct sum of copies of `Z`, cyclic groups of prime-power order,
/// Prüfer groups and copies of `Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgAbelianGroupSpec {
    pub free_rank: u32,
    /// `(p, n)` for a summand `Z_{p^n}`, sorted.
    pub cyclic_parts: Vec<(u64, u32)>,
    /// `p` for a summand `Z_{p^inf}`, sorted.
    pub prufer_parts: Vec<u64>,
    pub rational_copies: u32,
}

impl FgAbelianGroupSpec {
    fn normalize(mut self) -> Self {
        self.cyclic_parts.sort_unstable();
        self.prufer_parts.sort_unstable();
        self
    }

    /// Parse `term ("+" term)*`, where a term is `Z<n>`, `Z<n>^<e>`, `Z`,
    /// `Z^<e>`, `<n>Z`, `Q`, `Q^<e>`, `Zp^inf(<p>)`, `Zp^inf(<p>)^<e>` or `0`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = FgAbelianGroupSpec::default();
        let mut p = SpecParser::new(text);
        loop {
            p.skip_ws();
            let start = p.pos;
            enum Term {
                Zero,
                Free,
                Cyclic(u64),
                Prufer(u64),
                Rational,
            }
            let term = match p.peek() {
                Some('0') => {
                    p.bump();
                    Term::Zero
                }
                Some('Q') => {
                    p.bump();
                    Term::Rational
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = p.number()?;
                    if n == 0 {
                        return Err(LabError::InvalidOrder(format!("0Z at position {start}")));
                    }
                    p.expect('Z')?;
                    Term::Free
                }
                Some('Z') => {
                    p.bump();
                    if p.peek_str("p^inf(") {
                        p.expect_str("p^inf(")?;
                        let pos = p.pos;
                        let q = p.number()?;
                        if !is_prime(q) {
                            return Err(LabError::Parse {
                                position: pos,
                                message: format!("{q} is not prime"),
                            });
                        }
                        p.expect(')')?;
                        Term::Prufer(q)
                    } else if p.peek().is_some_and(|c| c.is_ascii_digit()) {
                        let n = p.number()?;
                        if n == 0 {
                            return Err(LabError::InvalidOrder(format!("Z0 at position {start}")));
                        }
                        Term::Cyclic(n)
                    } else {
                        Term::Free
                    }
                }
                Some(c) => {
                    return Err(LabError::Parse {
                        position: start,
                        message: format!("unexpected '{c}'"),
                    })
                }
                None => {
                    return Err(LabError::Parse {
                        position: start,
                        message: "expected a term".into(),
                    })
                }
            };
            p.skip_ws();
            let mut e = 1;
            if p.peek() == Some('^') {
                p.bump();
                let pos = p.pos;
                e = p.number()?;
                if e == 0 {
                    return Err(LabError::Parse {
                        position: pos,
                        message: "exponent must be at least 1".into(),
                    });
                }
            }
            for _ in 0..e {
                match term {
                    Term::Zero => {}
                    Term::Free => spec.free_rank += 1,
                    Term::Rational => spec.rational_copies += 1,
                    Term::Prufer(q) => spec.prufer_parts.push(q),
                    Term::Cyclic(n) => spec.cyclic_parts.extend(factorize(n)),
                }
            }
            p.skip_ws();
            match p.peek() {
                None => break,
                Some('+') => p.bump(),
                Some(c) => {
                    return Err(LabError::Parse {
                        position: p.pos,
                        message: format!("expected '+', found '{c}'"),
                    })
                }
            }
        }
        Ok(spec.normalize())
    }

    pub fn from_finite(g: &FiniteAbelianGroup) -> Self {
        FgAbelianGroupSpec {
            cyclic_parts: g.iso_type().cyclic_factors(),
            ..Default::default()
        }
        .normalize()
    }

    /// The finite group, when there are no infinite constituents.
    pub fn to_finite(&self) -> Option<FiniteAbelianGroup> {
        (self.free_rank == 0 && self.prufer_parts.is_empty() && self.rational_copies == 0)
            .then(|| IsoType::from_cyclic_factors(&self.cyclic_parts).to_group())
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0
            && self.cyclic_parts.is_empty()
            && self.prufer_parts.is_empty()
            && self.rational_copies == 0
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0 && self.rational_copies == 0
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.prufer_parts.is_empty() && self.rational_copies == 0
    }

    pub fn is_injective(&self) -> bool {
        self.free_rank == 0 && self.cyclic_parts.is_empty()
    }

    /// Each prime occurs in at most one torsion constituent.
    fn distinct_torsion_primes(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.cyclic_parts
            .iter()
            .map(|&(p, _)| p)
            .chain(self.prufer_parts.iter().copied())
            .all(|p| seen.insert(p))
    }
}

impl fmt::Display for FgAbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for _ in 0..self.free_rank {
            terms.push("Z".into());
        }
        for _ in 0..self.rational_copies {
            terms.push("Q".into());
        }
        for &(p, n) in &self.cyclic_parts {
            terms.push(format!("Z{}", p.pow(n)));
        }
        for p in &self.prufer_parts {
            terms.push(format!("Zp^inf({p})"));
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

impl Serialize for FgAbelianGroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub zero: bool,
    pub torsion: bool,
    pub finitely_generated: bool,
    pub injective: bool,
    pub outside_scope: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationProfile {
    pub object: FgAbelianGroupSpec,
    pub applicability: Applicability,
    /// Only the values the applicable clauses determine.
    pub properties: BTreeMap<PropertyId, bool>,
}

impl ClassificationProfile {
    pub fn get(&self, id: PropertyId) -> Option<bool> {
        self.properties.get(&id).copied()
    }
}

pub fn classify(spec: &FgAbelianGroupSpec) -> ClassificationProfile {
    use PropertyId::*;
    let zero = spec.is_zero();
    let torsion = spec.is_torsion();
    let fg = spec.is_finitely_generated();
    let injective = spec.is_injective();
    let applicability = Applicability {
        zero,
        torsion,
        finitely_generated: fg,
        injective,
        outside_scope: !(zero || torsion || fg || injective),
    };
    let mut properties = BTreeMap::new();
    if zero {
        for id in [StronglyCsRickart, DualStronglyCsRickart, WeakDuo] {
            properties.insert(id, true);
        }
    } else if torsion {
        let v = spec.distinct_torsion_primes();
        for id in [StronglyCsRickart, DualStronglyCsRickart, WeakDuo] {
            properties.insert(id, v);
        }
    } else if fg {
        // a copy of Z is present; the finite case is covered above
        let strong = spec.free_rank == 1 && spec.cyclic_parts.is_empty();
        properties.insert(StronglyCsRickart, strong);
        properties.insert(WeakDuo, strong);
        properties.insert(DualStronglyCsRickart, false);
    } else if injective {
        // Q-copies present; pure Prufer sums are torsion
        let v = spec.rational_copies == 1 && spec.prufer_parts.is_empty();
        properties.insert(StronglyCsRickart, v);
        properties.insert(DualStronglyCsRickart, v);
    }
    ClassificationProfile {
        object: spec.clone(),
        applicability,
        properties,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckInstance {
    pub group: FiniteAbelianGroup,
    pub classified: BTreeMap<PropertyId, bool>,
    pub computed: BTreeMap<PropertyId, bool>,
    pub cyclic: bool,
}

impl CrosscheckInstance {
    pub fn agrees(&self) -> bool {
        self.classified == self.computed
            && self.classified[&PropertyId::StronglyCsRickart] == self.cyclic
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosscheck {
    pub max_order: u64,
    pub instances: Vec<CrosscheckInstance>,
    pub disagreements: Vec<CrosscheckInstance>,
}

/// Compare the closed form with the computed profile on every group of
/// order at most `max_order`.
pub fn crosscheck_with_bruteforce(max_order: u64) -> Result<Crosscheck> {
    let ids = [
        PropertyId::StronglyCsRickart,
        PropertyId::DualStronglyCsRickart,
        PropertyId::WeakDuo,
    ];
    let mut instances = Vec::new();
    for g in FiniteAbelianGroup::all_up_to(max_order) {
        let classified = classify(&FgAbelianGroupSpec::from_finite(&g)).properties;
        let report = abelian_profile(&g)?;
        let computed = ids.iter().map(|&id| (id, report.value(id))).collect();
        instances.push(CrosscheckInstance {
            cyclic: g.is_cyclic(),
            group: g,
            classified,
            computed,
        });
    }
    let disagreements = instances.iter().filter(|i| !i.agrees()).cloned().collect();
    Ok(Crosscheck {
        max_order,
        instances,
        disagreements,
    })
}
