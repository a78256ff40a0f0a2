//! Exhaustive, duplicate-free corpora of finite abelian groups.

use std::collections::BTreeSet;
use std::fmt;

use rickart_core::{FiniteAbelianGroup, IsoType};
use serde::{Deserialize, Serialize};

/// Largest order of a single object in a relative corpus. Relative corpora
/// are bounded by the product of orders; each factor also stays within the
/// range where its subgroup lattice is cheap.
pub const COMPONENT_BOUND: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusMode {
    /// Every group of order at most the bound.
    Single,
    /// Ordered pairs `(M, N)` with `|M| |N|` at most the bound.
    Pair,
    /// `(X, A, B)` with `A <= B` nonzero and `|X| |A| |B|` at most the bound.
    Triple,
    /// `(M, (M_1, ..., M_t))`, `t >= 2`, with `M = M_1 + ... + M_t` obtained by
    /// grouping the primary cyclic factors of `M`.
    Decomposition,
    /// `(X, (N_1, ..., N_t))`: a fixed object with a decomposition of a
    /// second one, bounded by the product of the two orders.
    Split,
}

impl CorpusMode {
    pub fn name(self) -> &'static str {
        match self {
            CorpusMode::Single => "single",
            CorpusMode::Pair => "pair",
            CorpusMode::Triple => "triple",
            CorpusMode::Decomposition => "decomposition",
            CorpusMode::Split => "split",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Single {
        object: FiniteAbelianGroup,
    },
    Pair {
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
    },
    Triple {
        fixed: FiniteAbelianGroup,
        left: FiniteAbelianGroup,
        right: FiniteAbelianGroup,
    },
    Decomposition {
        whole: FiniteAbelianGroup,
        parts: Vec<FiniteAbelianGroup>,
    },
    Split {
        fixed: FiniteAbelianGroup,
        parts: Vec<FiniteAbelianGroup>,
    },
}

impl Instance {
    pub fn mode(&self) -> CorpusMode {
        match self {
            Instance::Single { .. } => CorpusMode::Single,
            Instance::Pair { .. } => CorpusMode::Pair,
            Instance::Triple { .. } => CorpusMode::Triple,
            Instance::Decomposition { .. } => CorpusMode::Decomposition,
            Instance::Split { .. } => CorpusMode::Split,
        }
    }
}

fn join(parts: &[FiniteAbelianGroup]) -> String {
    parts.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(" + ")
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Single { object } => write!(f, "{object}"),
            Instance::Pair { source, target } => write!(f, "M = {source}, N = {target}"),
            Instance::Triple { fixed, left, right } => {
                write!(f, "X = {fixed}, A = {left}, B = {right}")
            }
            Instance::Decomposition { whole, parts } => write!(f, "{whole} = {}", join(parts)),
            Instance::Split { fixed, parts } => write!(f, "X = {fixed}, parts {}", join(parts)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Corpus {
    pub mode: CorpusMode,
    pub max_order: u64,
    pub component_bound: u64,
    pub instances: Vec<Instance>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}

/// Direct sum of a list of groups.
pub fn sum_of(parts: &[FiniteAbelianGroup]) -> FiniteAbelianGroup {
    parts
        .iter()
        .fold(FiniteAbelianGroup::zero(), |acc, p| acc.direct_sum(p))
}

/// Set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, if b == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Decompositions of `g` into at least two nonzero parts, each a grouping of
/// the primary cyclic factors, up to isomorphism of the parts. Parts are
/// sorted canonically.
pub fn groupings(g: &FiniteAbelianGroup) -> Vec<Vec<FiniteAbelianGroup>> {
    let factors = g.iso_type().cyclic_factors();
    let mut seen = BTreeSet::new();
    for blocks in set_partitions(factors.len()) {
        let t = blocks.iter().copied().max().map_or(0, |m| m + 1);
        if t < 2 {
            continue;
        }
        let mut parts: Vec<FiniteAbelianGroup> = (0..t)
            .map(|b| {
                let chosen: Vec<(u64, u32)> = factors
                    .iter()
                    .zip(&blocks)
                    .filter(|(_, &x)| x == b)
                    .map(|(&f, _)| f)
                    .collect();
                IsoType::from_cyclic_factors(&chosen).to_group()
            })
            .collect();
        parts.sort();
        seen.insert(parts);
    }
    seen.into_iter().collect()
}

/// Isomorphism types of the subgroups (equivalently, of the quotients) of `g`.
pub fn subgroup_types(g: &FiniteAbelianGroup) -> Vec<FiniteAbelianGroup> {
    let n = g.order();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .flat_map(FiniteAbelianGroup::all_of_order)
        .filter(|h| h.iso_type().embeds_in(g.iso_type()))
        .collect()
}

/// Isomorphism types of the direct summands of `g`.
pub fn summand_types(g: &FiniteAbelianGroup) -> Vec<FiniteAbelianGroup> {
    let mut v: Vec<FiniteAbelianGroup> = g
        .iso_type()
        .summand_types()
        .iter()
        .map(IsoType::to_group)
        .collect();
    v.sort();
    v
}

pub fn generate_corpus(max_order: u64, mode: CorpusMode) -> Corpus {
    let max_order = max_order.max(1);
    let component_bound = match mode {
        CorpusMode::Single | CorpusMode::Decomposition => max_order,
        _ => max_order.min(COMPONENT_BOUND),
    };
    let groups = FiniteAbelianGroup::all_up_to(component_bound);
    let mut instances = Vec::new();
    match mode {
        CorpusMode::Single => {
            instances.extend(groups.into_iter().map(|object| Instance::Single { object }));
        }
        CorpusMode::Pair => {
            for m in &groups {
                for n in &groups {
                    if m.order() * n.order() <= max_order {
                        instances.push(Instance::Pair {
                            source: m.clone(),
                            target: n.clone(),
                        });
                    }
                }
            }
        }
        CorpusMode::Triple => {
            for x in &groups {
                for (i, a) in groups.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for b in &groups[i..] {
                        if x.order() * a.order() * b.order() <= max_order {
                            instances.push(Instance::Triple {
                                fixed: x.clone(),
                                left: a.clone(),
                                right: b.clone(),
                            });
                        }
                    }
                }
            }
        }
        CorpusMode::Decomposition => {
            for whole in groups {
                for parts in groupings(&whole) {
                    instances.push(Instance::Decomposition {
                        whole: whole.clone(),
                        parts,
                    });
                }
            }
        }
        CorpusMode::Split => {
            for x in &groups {
                for w in &groups {
                    if x.order() * w.order() > max_order {
                        continue;
                    }
                    for parts in groupings(w) {
                        instances.push(Instance::Split {
                            fixed: x.clone(),
                            parts,
                        });
                    }
                }
            }
        }
    }
    Corpus {
        mode,
        max_order,
        component_bound,
        instances,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn groupings_of_small_groups() {
        assert!(groupings(&g("Z4")).is_empty());
        assert_eq!(groupings(&g("Z12")), vec![vec![g("Z3"), g("Z4")]]);
        // {2,2,2}: 2+2^2 and 2+2+2
        assert_eq!(groupings(&g("Z2^3")).len(), 2);
    }

    #[test]
    fn subgroup_types_of_z2_z4() {
        let names: Vec<String> = subgroup_types(&g("Z2+Z4")).iter().map(|h| h.to_string()).collect();
        assert_eq!(names, vec!["0", "Z2", "Z2^2", "Z4", "Z2+Z4"]);
    }
}
