//! Subgroups in canonical Hermite-normal-form representation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::arith::valuation;
use crate::error::{LabError, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, IsoType};
use crate::lattice::{bottom_block, span, Hnf};

/// A subgroup of `ambient`, stored as the canonical HNF basis of its preimage
/// lattice. Equal subgroups have identical bases.
#[derive(Clone)]
pub struct Subgroup {
    ambient: FiniteAbelianGroup,
    hnf: Hnf,
    order: u64,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.hnf == other.hnf && self.ambient == other.ambient
    }
}
impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.hnf.hash(state);
    }
}

/// Canonical order: by order, then lexicographically by the HNF basis rows
/// read as group elements (so `<(0,1)>` precedes `<(1,1)>`).
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.ambient.cmp(&other.ambient))
            .then_with(|| {
                let m = self.ambient.moduli();
                let k = m.len();
                let key = |raw: &[i64], idx: usize| raw[idx] % m[idx % k.max(1)];
                let (a, b) = (self.hnf.raw(), other.hnf.raw());
                (0..a.len())
                    .map(|i| key(a, i).cmp(&key(b, i)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Subgroups serialize as their generator lists.
impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators().serialize(s)
    }
}

impl Subgroup {
    pub(crate) fn from_hnf(ambient: &FiniteAbelianGroup, hnf: Hnf) -> Self {
        let order = hnf.order(ambient.moduli());
        Subgroup {
            ambient: ambient.clone(),
            hnf,
            order,
        }
    }

    pub fn zero(g: &FiniteAbelianGroup) -> Self {
        Self::from_hnf(g, Hnf::zero(g.moduli()))
    }

    pub fn whole(g: &FiniteAbelianGroup) -> Self {
        Self::from_hnf(g, Hnf::full(g.rank()))
    }

    pub fn from_generators(g: &FiniteAbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        for x in gens {
            if x.0.len() != g.rank() {
                return Err(LabError::Dimension {
                    expected: g.rank(),
                    found: x.0.len(),
                });
            }
        }
        Ok(Self::from_hnf(
            g,
            span(g.moduli(), gens.iter().map(|x| x.0.as_slice())),
        ))
    }

    pub(crate) fn from_vectors(g: &FiniteAbelianGroup, gens: &[Vec<i64>]) -> Self {
        Self::from_hnf(g, span(g.moduli(), gens.iter().map(Vec::as_slice)))
    }

    /// Rebuild from a stored canonical basis, re-normalizing for safety.
    pub fn from_basis_rows(g: &FiniteAbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != g.rank() || rows.iter().any(|r| r.len() != g.rank()) {
            return Err(LabError::Dimension {
                expected: g.rank(),
                found: rows.len(),
            });
        }
        Ok(Self::from_vectors(g, rows))
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.ambient.order()
    }

    /// Canonical basis of the preimage lattice (rows of the HNF).
    pub fn basis_rows(&self) -> Vec<Vec<i64>> {
        (0..self.hnf.dim()).map(|i| self.hnf.row(i).to_vec()).collect()
    }

    /// Nonzero basis rows reduced into the group: a generating set.
    pub fn generators(&self) -> Vec<GroupElement> {
        let m = self.ambient.moduli();
        (0..self.hnf.dim())
            .map(|i| {
                GroupElement(
                    self.hnf
                        .row(i)
                        .iter()
                        .zip(m)
                        .map(|(&x, &n)| x.rem_euclid(n))
                        .collect(),
                )
            })
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.hnf.contains(self.ambient.moduli(), &x.0)
    }

    pub(crate) fn contains_vec(&self, x: &[i64]) -> bool {
        self.hnf.contains(self.ambient.moduli(), x)
    }

    fn check_same(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(LabError::Context(format!(
                "subgroups of {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order
            && other.order.is_multiple_of(self.order)
            && (0..self.hnf.dim()).all(|i| other.contains_vec(self.hnf.row(i)))
    }

    pub fn with_generator(&self, x: &[i64]) -> Subgroup {
        let mut h = self.hnf.clone();
        h.insert(self.ambient.moduli(), x);
        h.normalize();
        Subgroup::from_hnf(&self.ambient, h)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subgroup) -> Subgroup {
        if self.is_zero() || other.is_whole() {
            return other.clone();
        }
        if other.is_zero() || self.is_whole() {
            return self.clone();
        }
        let mut h = self.hnf.clone();
        let m = self.ambient.moduli();
        for i in 0..other.hnf.dim() {
            h.insert(m, other.hnf.row(i));
        }
        h.normalize();
        Subgroup::from_hnf(&self.ambient, h)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        Ok(self.intersection_unchecked(other))
    }

    pub(crate) fn intersection_unchecked(&self, other: &Subgroup) -> Subgroup {
        if self.is_whole() || other.is_zero() {
            return other.clone();
        }
        if other.is_whole() || self.is_zero() {
            return self.clone();
        }
        let m = self.ambient.moduli();
        let k = m.len();
        let mut vecs = Vec::with_capacity(2 * k);
        for i in 0..k {
            let r = self.hnf.row(i);
            let mut v = r.to_vec();
            v.extend_from_slice(r);
            vecs.push(v);
        }
        for i in 0..k {
            let mut v = other.hnf.row(i).to_vec();
            v.extend(std::iter::repeat_n(0, k));
            vecs.push(v);
        }
        Subgroup::from_hnf(&self.ambient, bottom_block(m, m, &vecs))
    }

    /// `c * K`.
    pub fn scaled(&self, c: i64) -> Subgroup {
        let vecs: Vec<Vec<i64>> = (0..self.hnf.dim())
            .map(|i| self.hnf.row(i).iter().map(|&x| x * c).collect())
            .collect();
        Subgroup::from_vectors(&self.ambient, &vecs)
    }

    /// All elements, each exactly once.
    pub fn elements(&self) -> Vec<GroupElement> {
        let m = self.ambient.moduli();
        let k = m.len();
        let mult: Vec<i64> = (0..k).map(|i| m[i] / self.hnf.pivot(i)).collect();
        let mut out = Vec::with_capacity(self.order as usize);
        let mut y = vec![0i64; k];
        loop {
            let mut x = vec![0i64; k];
            for i in 0..k {
                if y[i] != 0 {
                    let r = self.hnf.row(i);
                    for j in i..k {
                        x[j] += y[i] * r[j];
                    }
                }
            }
            for j in 0..k {
                x[j] = x[j].rem_euclid(m[j]);
            }
            out.push(GroupElement(x));
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                y[i] += 1;
                if y[i] < mult[i] {
                    break;
                }
                y[i] = 0;
                i += 1;
            }
        }
    }

    /// Isomorphism type, computed from the orders of `p^j K_p`.
    pub fn iso_type(&self) -> IsoType {
        let mut map = std::collections::BTreeMap::new();
        if self.order == 1 {
            return IsoType(map);
        }
        let exp = self.ambient.exponent();
        for (p, _) in crate::arith::factorize(self.order) {
            let pe = p.pow(valuation(exp, p));
            let kp = self.scaled((exp / pe) as i64);
            let mut orders = vec![kp.order];
            let mut cur = kp;
            while cur.order > 1 {
                cur = cur.scaled(p as i64);
                orders.push(cur.order);
            }
            // counts[j] = number of components of exponent >= j+1
            let counts: Vec<u32> = orders
                .windows(2)
                .map(|w| valuation(w[0] / w[1], p))
                .collect();
            let mut es = Vec::new();
            for (j, &c) in counts.iter().enumerate() {
                let next = counts.get(j + 1).copied().unwrap_or(0);
                for _ in 0..(c - next) {
                    es.push(j as u32 + 1);
                }
            }
            es.sort_unstable_by(|a, b| b.cmp(a));
            map.insert(p, es);
        }
        IsoType(map)
    }

    /// `K^perp` under the standard nondegenerate pairing
    /// `<x, y> = sum x_i y_i (e / n_i) mod e`, `e` the exponent. Order-reversing
    /// bijection on the subgroup lattice with `G / K^perp ~ K`.
    pub fn annihilator(&self) -> Subgroup {
        let g = &self.ambient;
        let m = g.moduli();
        let k = m.len();
        let gens = self.generators();
        if gens.is_empty() {
            return Subgroup::whole(g);
        }
        let e = g.exponent() as i64;
        let top = vec![e; gens.len()];
        let vecs: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut v: Vec<i64> = gens.iter().map(|x| x.0[i] * (e / m[i]) % e).collect();
                v.extend((0..k).map(|j| i64::from(i == j)));
                v
            })
            .collect();
        Subgroup::from_hnf(g, bottom_block(&top, m, &vecs))
    }

    /// Whether this subgroup is contained in the socle-type subgroup
    /// `{x : n x = 0}`.
    pub fn killed_by(&self, n: i64) -> bool {
        self.generators()
            .iter()
            .all(|x| x.0.iter().zip(self.ambient.moduli()).all(|(&c, &m)| (c * n) % m == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s).unwrap()
    }

    fn el(v: &[i64]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    #[test]
    fn generated_orders() {
        let m = g("Z2+Z16");
        let a = Subgroup::from_generators(&m, &[el(&[1, 1])]).unwrap();
        assert_eq!(a.order(), 16);
        let e = Subgroup::from_generators(&m, &[el(&[1, 0]), el(&[0, 2])]).unwrap();
        assert_eq!(e.order(), 16);
        assert_ne!(a, e);
        assert_eq!(e.iso_type().0[&2], vec![3, 1]);
        assert!(Subgroup::from_generators(&g("Z4"), &[]).unwrap().is_zero());
    }

    #[test]
    fn idempotent_regeneration() {
        let m = g("Z2+Z16");
        let a = Subgroup::from_generators(&m, &[el(&[1, 1])]).unwrap();
        let again = Subgroup::from_generators(&m, &a.generators()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn meet_and_join() {
        let m = g("Z2+Z16");
        let a = Subgroup::from_generators(&m, &[el(&[1, 1])]).unwrap();
        let b = Subgroup::from_generators(&m, &[el(&[0, 1])]).unwrap();
        let meet = a.intersection(&b).unwrap();
        assert_eq!(meet, Subgroup::from_generators(&m, &[el(&[0, 2])]).unwrap());
        assert_eq!(meet.order(), 8);
        assert!(a.sum(&b).unwrap().is_whole());
    }

    #[test]
    fn element_listing_matches_order() {
        let m = g("Z2+Z4+Z12");
        let s = Subgroup::from_generators(&m, &[el(&[1, 2, 3]), el(&[0, 1, 6])]).unwrap();
        let els = s.elements();
        assert_eq!(els.len() as u64, s.order());
        let set: std::collections::HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), els.len());
        assert!(els.iter().all(|x| s.contains(x)));
    }

    #[test]
    fn annihilator_is_involutive() {
        let m = g("Z2+Z4+Z8");
        let s = Subgroup::from_generators(&m, &[el(&[1, 1, 2])]).unwrap();
        let perp = s.annihilator();
        assert_eq!(perp.order() * s.order(), m.order());
        assert_eq!(perp.annihilator(), s);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subgroup::zero(&g("Z2"));
        let b = Subgroup::zero(&g("Z4"));
        assert!(matches!(a.sum(&b), Err(LabError::Context(_))));
    }
}
