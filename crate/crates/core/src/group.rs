//! Finite abelian groups in invariant-factor form, their elements and
//! isomorphism types.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, modp};
use crate::error::{LabError, Result};

/// Isomorphism type: prime -> exponents of the cyclic p-power components,
/// sorted descending. Primes with no components are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoType(pub BTreeMap<u64, Vec<u32>>);

impl IsoType {
    pub fn order(&self) -> u64 {
        self.0
            .iter()
            .map(|(&p, es)| es.iter().map(|&e| p.pow(e)).product::<u64>())
            .product()
    }

    /// Whether a group of this type embeds into (equivalently, is a quotient
    /// of) a group of type `other`: componentwise dominance of the sorted
    /// exponent lists, prime by prime.
    pub fn embeds_in(&self, other: &IsoType) -> bool {
        self.0.iter().all(|(p, es)| match other.0.get(p) {
            None => es.is_empty(),
            Some(os) => es.len() <= os.len() && es.iter().zip(os).all(|(a, b)| a <= b),
        })
    }

    /// Whether a group of this type is isomorphic to a direct summand of a
    /// group of type `other`: a sub-multiset of the primary cyclic factors.
    pub fn is_summand_type_of(&self, other: &IsoType) -> bool {
        self.0.iter().all(|(p, es)| {
            let os = other.0.get(p).map(Vec::as_slice).unwrap_or(&[]);
            let mut j = 0;
            for e in es {
                while j < os.len() && os[j] > *e {
                    j += 1;
                }
                if j == os.len() || os[j] != *e {
                    return false;
                }
                j += 1;
            }
            true
        })
    }

    pub fn to_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_primary(self.0.clone())
    }

    /// Number of cyclic p-power components of order at least `p^j`.
    pub fn count_at_least(&self, p: u64, j: u32) -> usize {
        self.0
            .get(&p)
            .map_or(0, |es| es.iter().filter(|&&e| e >= j).count())
    }

    /// Primary cyclic factors `(p, e)` in canonical order.
    pub fn cyclic_factors(&self) -> Vec<(u64, u32)> {
        self.0
            .iter()
            .flat_map(|(&p, es)| es.iter().map(move |&e| (p, e)))
            .collect()
    }

    pub fn from_cyclic_factors(factors: &[(u64, u32)]) -> IsoType {
        let mut map: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &(p, e) in factors {
            if e > 0 {
                map.entry(p).or_default().push(e);
            }
        }
        for es in map.values_mut() {
            es.sort_unstable_by(|a, b| b.cmp(a));
        }
        IsoType(map)
    }

    /// Isomorphism types of all direct summands: sub-multisets of the
    /// primary cyclic factors.
    pub fn summand_types(&self) -> Vec<IsoType> {
        let mut out = vec![IsoType::default()];
        for (&p, es) in &self.0 {
            // group equal exponents and choose a multiplicity for each
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for &e in es {
                *counts.entry(e).or_default() += 1;
            }
            for (&e, &c) in &counts {
                let mut next = Vec::new();
                for t in &out {
                    for k in 0..=c {
                        let mut t2 = t.clone();
                        if k > 0 {
                            let v = t2.0.entry(p).or_default();
                            v.extend(std::iter::repeat_n(e, k));
                            v.sort_unstable_by(|a, b| b.cmp(a));
                        }
                        next.push(t2);
                    }
                }
                out = next;
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

struct GroupData {
    factors: Vec<u64>,
    moduli: Vec<i64>,
    iso: IsoType,
    order: u64,
}

/// A finite abelian group `Z_{n_1} + ... + Z_{n_k}` with `n_1 | n_2 | ... | n_k`,
/// all `n_i >= 2`. The empty list is the zero group.
#[derive(Clone)]
pub struct FiniteAbelianGroup(Arc<GroupData>);

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }
}
impl Eq for FiniteAbelianGroup {}

impl std::hash::Hash for FiniteAbelianGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.factors.hash(state);
    }
}

impl PartialOrd for FiniteAbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FiniteAbelianGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.0.factors).cmp(&(other.order(), &other.0.factors))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.factors.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut i = 0;
        let fs = &self.0.factors;
        while i < fs.len() {
            let mut j = i;
            while j < fs.len() && fs[j] == fs[i] {
                j += 1;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "Z{}", fs[i])?;
            } else {
                write!(f, "Z{}^{}", fs[i], j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FiniteAbelianGroup::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl FiniteAbelianGroup {
    /// Construct from an invariant-factor list, validating the divisor chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(LabError::InvalidOrder(format!(
                "invariant factor {bad} is less than 2"
            )));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(LabError::InvalidOrder(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let mut cyclic = Vec::new();
        for &n in &factors {
            cyclic.extend(factorize(n));
        }
        let iso = IsoType::from_cyclic_factors(&cyclic);
        Ok(Self::build(factors, iso))
    }

    fn build(factors: Vec<u64>, iso: IsoType) -> Self {
        let order = factors.iter().product();
        let moduli = factors.iter().map(|&n| n as i64).collect();
        FiniteAbelianGroup(Arc::new(GroupData {
            factors,
            moduli,
            iso,
            order,
        }))
    }

    pub fn zero() -> Self {
        Self::build(Vec::new(), IsoType::default())
    }

    /// CRT recombination of primary parts into the divisor chain.
    pub fn from_primary(parts: BTreeMap<u64, Vec<u32>>) -> Self {
        let mut iso = IsoType(
            parts
                .into_iter()
                .map(|(p, mut es)| {
                    es.retain(|&e| e > 0);
                    es.sort_unstable_by(|a, b| b.cmp(a));
                    (p, es)
                })
                .filter(|(_, es)| !es.is_empty())
                .collect(),
        );
        iso.0.retain(|_, es| !es.is_empty());
        let rank = iso.0.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for (&p, es) in &iso.0 {
            for (k, &e) in es.iter().enumerate() {
                factors[k] *= p.pow(e);
            }
        }
        factors.reverse();
        Self::build(factors, iso)
    }

    /// All groups of order `n` up to isomorphism: one partition of each
    /// prime exponent.
    pub fn all_of_order(n: u64) -> Vec<Self> {
        let mut out = vec![BTreeMap::new()];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for parts in &out {
                for part in crate::arith::partitions(e) {
                    let mut m: BTreeMap<u64, Vec<u32>> = parts.clone();
                    m.insert(p, part);
                    next.push(m);
                }
            }
            out = next;
        }
        let mut groups: Vec<Self> = out.into_iter().map(Self::from_primary).collect();
        groups.sort();
        groups
    }

    /// All groups of order at most `n`, by order then canonical form.
    pub fn all_up_to(n: u64) -> Vec<Self> {
        (1..=n).flat_map(Self::all_of_order).collect()
    }

    /// Direct sum of cyclic groups of the given orders (each >= 1).
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut cyclic = Vec::new();
        for &n in orders {
            if n == 0 {
                return Err(LabError::InvalidOrder("cyclic order 0".into()));
            }
            cyclic.extend(factorize(n));
        }
        Ok(Self::from_primary(IsoType::from_cyclic_factors(&cyclic).0))
    }

    /// Parse `term ("+" term)*` with `term = Z<n>` or `Z<n>^<e>`; `0` denotes
    /// the zero group.
    pub fn parse(text: &str) -> Result<Self> {
        let mut orders = Vec::new();
        let mut p = SpecParser::new(text);
        p.skip_ws();
        if p.peek() == Some('0') && text.trim() == "0" {
            return Ok(Self::zero());
        }
        loop {
            p.skip_ws();
            p.expect('Z')?;
            let pos = p.pos;
            let n = p.number()?;
            if n == 0 {
                return Err(LabError::InvalidOrder(format!(
                    "Z0 at position {pos} is not a finite cyclic group"
                )));
            }
            let mut e = 1;
            p.skip_ws();
            if p.peek() == Some('^') {
                p.bump();
                p.skip_ws();
                let epos = p.pos;
                e = p.number()?;
                if e == 0 {
                    return Err(LabError::Parse {
                        position: epos,
                        message: "exponent must be at least 1".into(),
                    });
                }
            }
            for _ in 0..e {
                orders.push(n);
            }
            p.skip_ws();
            match p.peek() {
                None => break,
                Some('+') => p.bump(),
                Some(c) => {
                    return Err(LabError::Parse {
                        position: p.pos,
                        message: format!("unexpected character '{c}'"),
                    })
                }
            }
        }
        Self::from_cyclic_orders(&orders)
    }

    pub fn factors(&self) -> &[u64] {
        &self.0.factors
    }

    pub fn moduli(&self) -> &[i64] {
        &self.0.moduli
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_zero(&self) -> bool {
        self.0.factors.is_empty()
    }

    pub fn iso_type(&self) -> &IsoType {
        &self.0.iso
    }

    pub fn primary_parts(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.0.iso.0
    }

    pub fn primes(&self) -> Vec<u64> {
        self.0.iso.0.keys().copied().collect()
    }

    pub fn exponent(&self) -> u64 {
        self.0.factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.0.moduli[i];
        GroupElement(v)
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(LabError::Dimension {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(self.moduli())
                .map(|(&c, &n)| modp(c, n))
                .collect(),
        ))
    }

    pub fn contains_element(&self, x: &GroupElement) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(self.moduli()).all(|(&c, &n)| 0 <= c && c < n)
    }

    /// Mixed-radix decoding, first coordinate least significant.
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut v = Vec::with_capacity(self.rank());
        for &n in self.factors() {
            v.push((index % n) as i64);
            index /= n;
        }
        GroupElement(v)
    }

    pub fn index_of(&self, x: &GroupElement) -> u64 {
        let mut idx = 0u64;
        for (i, &n) in self.factors().iter().enumerate().rev() {
            idx = idx * n + x.0[i] as u64;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(self.moduli())
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(self.moduli())
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(self.moduli())
                .map(|(&x, &n)| modp((x % n) * modp(k, n), n))
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(self.factors())
            .map(|(&x, &n)| n / crate::arith::gcd(x as u64, n))
            .fold(1, crate::arith::lcm)
    }

    /// Number of elements; convenience for bounds checks.
    pub fn check_order(&self, limit: u64, what: &str) -> Result<()> {
        if self.order() > limit {
            Err(LabError::resource(
                format!("order of {self} ({what})"),
                limit,
                self.order(),
            ))
        } else {
            Ok(())
        }
    }

    /// Direct sum; coordinates of the result are not the concatenation in
    /// general, see [`crate::hom::direct_sum`] for the injections.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut cyc = self.iso_type().cyclic_factors();
        cyc.extend(other.iso_type().cyclic_factors());
        IsoType::from_cyclic_factors(&cyc).to_group()
    }

    /// The p-primary component as a standalone group.
    pub fn primary_component(&self, p: u64) -> FiniteAbelianGroup {
        let mut map = BTreeMap::new();
        if let Some(es) = self.primary_parts().get(&p) {
            map.insert(p, es.clone());
        }
        FiniteAbelianGroup::from_primary(map)
    }
}

/// Coordinates of an element; coordinate `i` is a residue modulo `n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) struct SpecParser<'a> {
    chars: Vec<char>,
    pub pos: usize,
    _src: &'a str,
}

impl<'a> SpecParser<'a> {
    pub fn new(src: &'a str) -> Self {
        SpecParser {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn peek_str(&self, s: &str) -> bool {
        let n = s.chars().count();
        self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    pub fn bump(&mut self) {
        self.pos += 1;
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(LabError::Parse {
                position: self.pos,
                message: format!("expected '{c}', found '{x}'"),
            }),
            None => Err(LabError::Parse {
                position: self.pos,
                message: format!("expected '{c}', found end of input"),
            }),
        }
    }

    pub fn expect_str(&mut self, s: &str) -> Result<()> {
        for c in s.chars() {
            self.expect(c)?;
        }
        Ok(())
    }

    pub fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(LabError::Parse {
                position: start,
                message: "expected a number".into(),
            });
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| LabError::Parse {
            position: start,
            message: format!("number {s} out of range"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(FiniteAbelianGroup::parse("Z2+Z16").unwrap().factors(), &[2, 16]);
        assert_eq!(FiniteAbelianGroup::parse("Z4+Z6").unwrap().factors(), &[2, 12]);
        assert_eq!(FiniteAbelianGroup::parse("Z2^2").unwrap().factors(), &[2, 2]);
        assert_eq!(FiniteAbelianGroup::parse("Z1").unwrap().factors(), &[] as &[u64]);
        assert_eq!(FiniteAbelianGroup::parse(" Z3 + Z1 ").unwrap().factors(), &[3]);
        assert!(FiniteAbelianGroup::parse("0").unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            FiniteAbelianGroup::parse("Z0"),
            Err(LabError::InvalidOrder(_))
        ));
        assert!(matches!(
            FiniteAbelianGroup::parse("Z2+Y3"),
            Err(LabError::Parse { position: 3, .. })
        ));
        assert!(matches!(
            FiniteAbelianGroup::parse("Z2^0"),
            Err(LabError::Parse { position: 3, .. })
        ));
        assert!(FiniteAbelianGroup::parse("").is_err());
        assert!(FiniteAbelianGroup::parse("Z2+").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["Z2+Z16", "Z2^2+Z4", "0", "Z3^3"] {
            let g = FiniteAbelianGroup::parse(s).unwrap();
            assert_eq!(g.to_string(), s);
        }
    }

    #[test]
    fn chain_validation() {
        assert!(FiniteAbelianGroup::new(vec![2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(vec![1]).is_err());
        assert!(FiniteAbelianGroup::new(vec![2, 6]).is_ok());
    }

    #[test]
    fn summand_types_of_z2_z2_z4() {
        let g = FiniteAbelianGroup::parse("Z2^2+Z4").unwrap();
        // multiplicity choices: {0,1,2} copies of Z2 times {0,1} copies of Z4
        assert_eq!(g.iso_type().summand_types().len(), 6);
    }

    #[test]
    fn embedding_dominance() {
        let z2 = FiniteAbelianGroup::parse("Z2").unwrap();
        let z4 = FiniteAbelianGroup::parse("Z4").unwrap();
        let v4 = FiniteAbelianGroup::parse("Z2^2").unwrap();
        assert!(z2.iso_type().embeds_in(z4.iso_type()));
        assert!(!v4.iso_type().embeds_in(z4.iso_type()));
        assert!(!z4.iso_type().embeds_in(v4.iso_type()));
    }

    #[test]
    fn element_indexing() {
        let g = FiniteAbelianGroup::parse("Z2+Z6").unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element_at(i)), i);
        }
    }
}
