//! Homomorphisms between finite abelian groups, Hom groups, endomorphism
//! rings, quotients and realizable kernels/images.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{gcd, mod_inverse, modp, valuation};
use crate::enumerate::{enumerate_subgroups, max_order, subgroups_where};
use crate::error::{LabError, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::lattice::bottom_block;
use crate::matrix::{smith_normal_form, IntegerMatrix};
use crate::subgroup::Subgroup;
use crate::verdict::{Evidence, EvidenceKind, PropertyVerdict};

static MAX_HOMS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(1 << 20);

/// Largest Hom set that may be enumerated element by element.
pub fn max_homs() -> u64 {
    MAX_HOMS.load(std::sync::atomic::Ordering::Relaxed)
}

pub fn set_max_homs(n: u64) {
    MAX_HOMS.store(n, std::sync::atomic::Ordering::Relaxed);
}

/// `f : source -> target`; column `i` of the matrix is `f(e_i)`, entry
/// `(j, i)` reduced modulo `m_j` and satisfying `n_i a_ji = 0 (mod m_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    matrix: IntegerMatrix,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} {:?}",
            self.source,
            self.target,
            self.matrix.to_rows()
        )
    }
}

impl Serialize for Homomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Homomorphism", 3)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("matrix", &self.matrix.to_rows())?;
        st.end()
    }
}

impl Homomorphism {
    pub fn new(
        source: &FiniteAbelianGroup,
        target: &FiniteAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.rank() {
            return Err(LabError::Dimension {
                expected: target.rank(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != source.rank() {
            return Err(LabError::Dimension {
                expected: source.rank(),
                found: matrix.cols(),
            });
        }
        let mut matrix = matrix;
        let (n, m) = (source.moduli(), target.moduli());
        for j in 0..target.rank() {
            for i in 0..source.rank() {
                let a = modp(matrix.get(j, i), m[j]);
                if (a as i128 * n[i] as i128) % m[j] as i128 != 0 {
                    return Err(LabError::InvalidStructure(format!(
                        "entry ({j},{i}) = {a} is not a multiple of {}",
                        m[j] / gcd(m[j] as u64, n[i] as u64) as i64
                    )));
                }
                matrix.set(j, i, a);
            }
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// The homomorphism sending `e_i` to `images[i]`.
    pub fn from_images(
        source: &FiniteAbelianGroup,
        target: &FiniteAbelianGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(LabError::Dimension {
                expected: source.rank(),
                found: images.len(),
            });
        }
        let mut mat = IntegerMatrix::zeros(target.rank(), source.rank());
        for (i, x) in images.iter().enumerate() {
            if x.0.len() != target.rank() {
                return Err(LabError::Dimension {
                    expected: target.rank(),
                    found: x.0.len(),
                });
            }
            for j in 0..target.rank() {
                mat.set(j, i, x.0[j]);
            }
        }
        Self::new(source, target, mat)
    }

    pub fn zero(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntegerMatrix::zeros(target.rank(), source.rank()),
        }
    }

    pub fn identity(g: &FiniteAbelianGroup) -> Self {
        let mut m = IntegerMatrix::identity(g.rank());
        for (i, &n) in g.moduli().iter().enumerate() {
            m.set(i, i, 1 % n);
        }
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: m,
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn multiplication(g: &FiniteAbelianGroup, k: i64) -> Self {
        let mut m = IntegerMatrix::zeros(g.rank(), g.rank());
        for (i, &n) in g.moduli().iter().enumerate() {
            m.set(i, i, modp(k, n));
        }
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: m,
        }
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.to_rows().iter().flatten().all(|&x| x == 0)
    }

    pub fn image_of_basis(&self, i: usize) -> GroupElement {
        GroupElement((0..self.target.rank()).map(|j| self.matrix.get(j, i)).collect())
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let m = self.target.moduli();
        GroupElement(
            (0..self.target.rank())
                .map(|j| {
                    let mut acc: i64 = 0;
                    for (i, &c) in x.0.iter().enumerate() {
                        acc = (acc + self.matrix.get(j, i) * c) % m[j];
                    }
                    acc
                })
                .collect(),
        )
    }

    pub(crate) fn apply_vec(&self, x: &[i64]) -> Vec<i64> {
        let m = self.target.moduli();
        (0..self.target.rank())
            .map(|j| {
                let mut acc: i64 = 0;
                for (i, &c) in x.iter().enumerate() {
                    acc = modp(acc + self.matrix.get(j, i) * c, m[j]);
                }
                acc
            })
            .collect()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Homomorphism) -> Result<Homomorphism> {
        if f.target != self.source {
            return Err(LabError::Context(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, f.source, f.target
            )));
        }
        let images: Vec<GroupElement> = (0..f.source.rank())
            .map(|i| self.apply(&f.image_of_basis(i)))
            .collect();
        Homomorphism::from_images(&f.source, &self.target, &images)
    }

    fn check_parallel(&self, other: &Homomorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(LabError::Context("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        self.check_parallel(other)?;
        let images: Vec<GroupElement> = (0..self.source.rank())
            .map(|i| {
                self.target
                    .add(&self.image_of_basis(i), &other.image_of_basis(i))
            })
            .collect();
        Homomorphism::from_images(&self.source, &self.target, &images)
    }

    pub fn sub(&self, other: &Homomorphism) -> Result<Homomorphism> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Homomorphism {
        let images: Vec<GroupElement> = (0..self.source.rank())
            .map(|i| self.target.scale(&self.image_of_basis(i), k))
            .collect();
        Homomorphism::from_images(&self.source, &self.target, &images)
            .expect("a multiple of a homomorphism is well defined")
    }

    pub fn kernel(&self) -> Subgroup {
        let (n, m) = (self.source.moduli(), self.target.moduli());
        let k = n.len();
        let vecs: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut v = self.image_of_basis(i).0;
                v.extend((0..k).map(|j| i64::from(i == j)));
                v
            })
            .collect();
        Subgroup::from_hnf(&self.source, bottom_block(m, n, &vecs))
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<Vec<i64>> = (0..self.source.rank())
            .map(|i| self.image_of_basis(i).0)
            .collect();
        Subgroup::from_vectors(&self.target, &gens)
    }

    pub fn image_of(&self, k: &Subgroup) -> Result<Subgroup> {
        if k.ambient() != &self.source {
            return Err(LabError::Context("subgroup not in source".into()));
        }
        let gens: Vec<Vec<i64>> = k.generators().iter().map(|x| self.apply_vec(&x.0)).collect();
        Ok(Subgroup::from_vectors(&self.target, &gens))
    }

    pub fn preimage(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.ambient() != &self.target {
            return Err(LabError::Context("subgroup not in target".into()));
        }
        let (n, m) = (self.source.moduli(), self.target.moduli());
        let k = n.len();
        let mut vecs: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut v = self.image_of_basis(i).0;
                v.extend((0..k).map(|j| i64::from(i == j)));
                v
            })
            .collect();
        for r in s.basis_rows() {
            let mut v = r;
            v.extend(std::iter::repeat_n(0, k));
            vecs.push(v);
        }
        Ok(Subgroup::from_hnf(&self.source, bottom_block(m, n, &vecs)))
    }

    pub fn cokernel(&self) -> Result<FiniteAbelianGroup> {
        Ok(quotient_group(&self.image())?.0)
    }

    pub fn maps_into(&self, k: &Subgroup, l: &Subgroup) -> bool {
        k.generators().iter().all(|x| l.contains_vec(&self.apply_vec(&x.0)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.source == self.target && self.compose(self).map(|e| &e == self).unwrap_or(false)
    }
}

pub fn kernel_image_cokernel(
    f: &Homomorphism,
) -> Result<(Subgroup, Subgroup, FiniteAbelianGroup)> {
    Ok((f.kernel(), f.image(), f.cokernel()?))
}

/// `G / K` in canonical form with the projection `G -> G/K`.
pub fn quotient_group(k: &Subgroup) -> Result<(FiniteAbelianGroup, Homomorphism)> {
    let g = k.ambient();
    let rows = k.basis_rows();
    let b = IntegerMatrix::from_rows(&rows)?;
    let snf = smith_normal_form(&b)?;
    let d = snf.diagonal();
    let keep: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 1).collect();
    let q = FiniteAbelianGroup::new(keep.iter().map(|&i| d[i] as u64).collect())?;
    let mut mat = IntegerMatrix::zeros(q.rank(), g.rank());
    for (j, &c) in keep.iter().enumerate() {
        for i in 0..g.rank() {
            mat.set(j, i, modp(snf.v.get(i, c), d[c]));
        }
    }
    let proj = Homomorphism::new(g, &q, mat)?;
    Ok((q, proj))
}

/// `K` as a standalone group together with its inclusion into the ambient.
pub fn subgroup_as_group(k: &Subgroup) -> Result<(FiniteAbelianGroup, Homomorphism)> {
    let g = k.ambient();
    let n = g.moduli();
    let dim = g.rank();
    let b = k.basis_rows();
    // C = diag(n) B^{-1}, solved row by row; B is upper triangular.
    let mut c_rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut c = vec![0i128; dim];
        for j in 0..dim {
            let mut t: i128 = if i == j { n[i] as i128 } else { 0 };
            for l in 0..j {
                t -= c[l] * b[l][j] as i128;
            }
            let piv = b[j][j] as i128;
            if t % piv != 0 {
                return Err(LabError::Context(
                    "basis does not contain the modulus lattice".into(),
                ));
            }
            c[j] = t / piv;
        }
        c_rows.push(
            c.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| LabError::Overflow("subgroup presentation")))
                .collect::<Result<Vec<i64>>>()?,
        );
    }
    let snf = smith_normal_form(&IntegerMatrix::from_rows(&c_rows)?)?;
    let d = snf.diagonal();
    let keep: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 1).collect();
    let h = FiniteAbelianGroup::new(keep.iter().map(|&i| d[i] as u64).collect())?;
    let gens: Vec<GroupElement> = keep
        .iter()
        .map(|&r| {
            GroupElement(
                (0..dim)
                    .map(|j| {
                        let mut acc: i128 = 0;
                        for l in 0..dim {
                            acc += snf.v_inv.get(r, l) as i128 * b[l][j] as i128;
                        }
                        acc.rem_euclid(n[j] as i128) as i64
                    })
                    .collect(),
            )
        })
        .collect();
    let incl = Homomorphism::from_images(&h, g, &gens)?;
    Ok((h, incl))
}

/// A cyclic primary component `Z_{p^e}` of a group, generated by
/// `(n_i / p^e) e_i`.
#[derive(Clone, Debug)]
pub struct Component {
    pub prime: u64,
    pub exponent: u32,
    pub index: usize,
    pub generator: GroupElement,
}

/// Primary cyclic components, ordered by prime, then exponent descending,
/// then coordinate index.
pub fn components(g: &FiniteAbelianGroup) -> Vec<Component> {
    let mut out = Vec::new();
    for p in g.primes() {
        let mut local = Vec::new();
        for (i, &n) in g.factors().iter().enumerate() {
            let e = valuation(n, p);
            if e > 0 {
                let mut v = vec![0; g.rank()];
                v[i] = (n / p.pow(e)) as i64;
                local.push(Component {
                    prime: p,
                    exponent: e,
                    index: i,
                    generator: GroupElement(v),
                });
            }
        }
        local.sort_by(|a, b| b.exponent.cmp(&a.exponent).then(a.index.cmp(&b.index)));
        out.extend(local);
    }
    out
}

/// The homomorphism determined by images of the primary component
/// generators (aligned with [`components`]).
pub fn hom_from_component_images(
    source: &FiniteAbelianGroup,
    target: &FiniteAbelianGroup,
    images: &[GroupElement],
) -> Result<Homomorphism> {
    let comps = components(source);
    if comps.len() != images.len() {
        return Err(LabError::Dimension {
            expected: comps.len(),
            found: images.len(),
        });
    }
    let mut basis_images = vec![target.zero_element(); source.rank()];
    for (c, img) in comps.iter().zip(images) {
        let n = source.factors()[c.index];
        let pe = c.prime.pow(c.exponent) as i64;
        let coef = mod_inverse((n as i64 / pe) % pe, pe).expect("cofactor is a unit");
        let scaled = target.scale(img, coef);
        basis_images[c.index] = target.add(&basis_images[c.index], &scaled);
    }
    Homomorphism::from_images(source, target, &basis_images)
}

/// Pair components of `small` with components of `big` prime by prime,
/// largest with largest. `None` unless `small` embeds in `big`.
fn match_components(small: &[Component], big: &[Component]) -> Option<Vec<usize>> {
    let mut used = vec![false; big.len()];
    let mut out = Vec::with_capacity(small.len());
    for c in small {
        let j = (0..big.len()).find(|&j| {
            !used[j] && big[j].prime == c.prime && big[j].exponent >= c.exponent
        })?;
        used[j] = true;
        out.push(j);
    }
    Some(out)
}

/// A monomorphism `a -> b`, if `a` embeds in `b`.
pub fn embedding(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Result<Homomorphism> {
    let (ca, cb) = (components(a), components(b));
    let m = match_components(&ca, &cb)
        .ok_or_else(|| LabError::Context(format!("{a} does not embed in {b}")))?;
    let images: Vec<GroupElement> = ca
        .iter()
        .zip(&m)
        .map(|(c, &j)| {
            let shift = cb[j].prime.pow(cb[j].exponent - c.exponent) as i64;
            b.scale(&cb[j].generator, shift)
        })
        .collect();
    hom_from_component_images(a, b, &images)
}

/// An epimorphism `a -> b`, if `b` is a quotient of `a`.
pub fn surjection(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Result<Homomorphism> {
    let (ca, cb) = (components(a), components(b));
    let m = match_components(&cb, &ca)
        .ok_or_else(|| LabError::Context(format!("{b} is not a quotient of {a}")))?;
    let mut images = vec![b.zero_element(); ca.len()];
    for (k, &j) in m.iter().enumerate() {
        images[j] = cb[k].generator.clone();
    }
    hom_from_component_images(a, b, &images)
}

/// Canonical biproduct data for `a + b`: the sum and its injections and
/// projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: FiniteAbelianGroup,
    pub inj: [Homomorphism; 2],
    pub proj: [Homomorphism; 2],
}

pub fn direct_sum(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Result<DirectSum> {
    let s = a.direct_sum(b);
    let cs = components(&s);
    let mut used = vec![false; cs.len()];
    let mut assign = |comps: &[Component]| -> Vec<usize> {
        comps
            .iter()
            .map(|c| {
                let j = (0..cs.len())
                    .find(|&j| !used[j] && cs[j].prime == c.prime && cs[j].exponent == c.exponent)
                    .expect("component multiset of a sum");
                used[j] = true;
                j
            })
            .collect()
    };
    let (ca, cb) = (components(a), components(b));
    let ma = assign(&ca);
    let mb = assign(&cb);
    let inj = |src: &FiniteAbelianGroup, m: &[usize]| {
        let imgs: Vec<GroupElement> = m.iter().map(|&j| cs[j].generator.clone()).collect();
        hom_from_component_images(src, &s, &imgs)
    };
    let proj = |dst: &FiniteAbelianGroup, comps: &[Component], m: &[usize]| {
        let mut imgs = vec![dst.zero_element(); cs.len()];
        for (k, &j) in m.iter().enumerate() {
            imgs[j] = comps[k].generator.clone();
        }
        hom_from_component_images(&s, dst, &imgs)
    };
    Ok(DirectSum {
        inj: [inj(a, &ma)?, inj(b, &mb)?],
        proj: [proj(a, &ca, &ma)?, proj(b, &cb, &mb)?],
        sum: s,
    })
}

/// `Hom(M, N)` described by elementary generators, one per matrix position.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    /// Each generator with the order of its cyclic span.
    pub elementary_generators: Vec<(Homomorphism, u64)>,
    pub size: u64,
}

pub fn hom_group(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup) -> HomGroup {
    let mut gens = Vec::new();
    let mut size: u64 = 1;
    for j in 0..n.rank() {
        for i in 0..m.rank() {
            let (nj, mi) = (n.factors()[j], m.factors()[i]);
            let gc = gcd(nj, mi);
            if gc > 1 {
                let mut mat = IntegerMatrix::zeros(n.rank(), m.rank());
                mat.set(j, i, (nj / gc) as i64);
                gens.push((
                    Homomorphism {
                        source: m.clone(),
                        target: n.clone(),
                        matrix: mat,
                    },
                    gc,
                ));
                size = size.saturating_mul(gc);
            }
        }
    }
    HomGroup {
        source: m.clone(),
        target: n.clone(),
        elementary_generators: gens,
        size,
    }
}

impl HomGroup {
    /// Every homomorphism, by mixed-radix iteration over generator
    /// coefficients. Bounded by [`max_homs`].
    pub fn elements(&self) -> Result<Vec<Homomorphism>> {
        if self.size > max_homs() {
            return Err(LabError::resource(
                format!("|Hom({}, {})|", self.source, self.target),
                max_homs(),
                self.size,
            ));
        }
        let mut out = Vec::with_capacity(self.size as usize);
        let k = self.elementary_generators.len();
        let mut coef = vec![0u64; k];
        let (rows, cols) = (self.target.rank(), self.source.rank());
        loop {
            let mut mat = IntegerMatrix::zeros(rows, cols);
            for (g, &c) in self.elementary_generators.iter().zip(&coef) {
                if c > 0 {
                    for j in 0..rows {
                        for i in 0..cols {
                            let x = g.0.matrix.get(j, i);
                            if x != 0 {
                                mat.set(j, i, x * c as i64);
                            }
                        }
                    }
                }
            }
            out.push(Homomorphism {
                source: self.source.clone(),
                target: self.target.clone(),
                matrix: mat,
            });
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(out);
                }
                coef[i] += 1;
                if coef[i] < self.elementary_generators[i].1 {
                    break;
                }
                coef[i] = 0;
                i += 1;
            }
        }
    }

    pub fn generators(&self) -> Vec<Homomorphism> {
        self.elementary_generators.iter().map(|(g, _)| g.clone()).collect()
    }
}

/// `End(M)` with lazily computed idempotents.
pub struct EndRing {
    pub object: FiniteAbelianGroup,
    pub elementary_generators: Vec<Homomorphism>,
    idempotents: std::sync::OnceLock<Arc<Vec<Homomorphism>>>,
}

impl EndRing {
    pub fn new(m: &FiniteAbelianGroup) -> Self {
        EndRing {
            object: m.clone(),
            elementary_generators: hom_group(m, m).generators(),
            idempotents: std::sync::OnceLock::new(),
        }
    }

    pub fn idempotents(&self) -> Result<Arc<Vec<Homomorphism>>> {
        if let Some(v) = self.idempotents.get() {
            return Ok(v.clone());
        }
        let v = Arc::new(enumerate_idempotents(&self.object)?);
        Ok(self.idempotents.get_or_init(|| v).clone())
    }
}

/// The idempotent with image `k` and kernel `c`, for complementary `k`, `c`.
pub fn projection_onto(k: &Subgroup, c: &Subgroup) -> Result<Homomorphism> {
    let g = k.ambient();
    if k.order() * c.order() != g.order() || !k.intersection(c)?.is_zero() {
        return Err(LabError::Context("subgroups are not complementary".into()));
    }
    let k_elems = k.elements();
    let images: Vec<GroupElement> = (0..g.rank())
        .map(|i| {
            let e = g.basis_element(i);
            k_elems
                .iter()
                .find(|x| c.contains(&g.add(&e, &g.neg(x))))
                .cloned()
                .expect("direct decomposition exists")
        })
        .collect();
    Homomorphism::from_images(g, g, &images)
}

/// Ordered pairs `(K, C)` of complementary subgroups, in canonical order of
/// `K` then `C`. Requires the full lattice.
pub fn complementary_pairs(m: &FiniteAbelianGroup) -> Result<Vec<(Subgroup, Subgroup)>> {
    let lat = enumerate_subgroups(m)?;
    let mut out = Vec::new();
    for k in lat.iter() {
        for c in lat.iter() {
            if k.order() * c.order() == m.order() && k.intersection_unchecked(c).is_zero() {
                out.push((k.clone(), c.clone()));
            }
        }
    }
    Ok(out)
}

/// All idempotent endomorphisms, via complementary summand pairs.
pub fn enumerate_idempotents(m: &FiniteAbelianGroup) -> Result<Vec<Homomorphism>> {
    m.check_order(max_order(), "idempotent enumeration")?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (k, c) in complementary_pairs(m)? {
        let e = projection_onto(&k, &c)?;
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    Ok(out)
}

/// Whether every idempotent of `End(M)` is central. Centrality is tested
/// against the elementary generators only, which suffices by additivity.
pub fn is_abelian_end_ring(m: &FiniteAbelianGroup) -> Result<PropertyVerdict> {
    m.check_order(max_order(), "idempotent enumeration")?;
    let gens = hom_group(m, m).generators();
    let lat = enumerate_subgroups(m)?;
    let mut count = 0u64;
    for k in lat.iter() {
        for c in lat.iter() {
            if k.order() * c.order() != m.order() || !k.intersection_unchecked(c).is_zero() {
                continue;
            }
            count += 1;
            if k.is_zero() || c.is_zero() {
                continue;
            }
            let e = projection_onto(k, c)?;
            for g in &gens {
                if e.compose(g)? != g.compose(&e)? {
                    return Ok(PropertyVerdict::fails(
                        Evidence::new(EvidenceKind::NonCentralIdempotent)
                            .with_morphism(e)
                            .with_morphism(g.clone())
                            .with_subobjects(vec![k.clone(), c.clone()]),
                    ));
                }
            }
        }
    }
    Ok(PropertyVerdict::holds(
        Evidence::new(EvidenceKind::IdempotentsCentral).with_count(count),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Kernel,
    Image,
}

/// Kernel direction: all `K <= M` with `M/K` embeddable in `N`. Image
/// direction: all `L <= N` that are quotients of `M`. Decided by primary
/// invariants; `M/H^perp ~ H` turns the kernel search into a search for
/// small subgroups.
pub fn realizable_subgroups(
    m: &FiniteAbelianGroup,
    n: &FiniteAbelianGroup,
    direction: Direction,
) -> Result<Vec<Subgroup>> {
    match direction {
        Direction::Kernel => {
            if m.iso_type().embeds_in(n.iso_type()) {
                return Ok(enumerate_subgroups(m)?.as_ref().clone());
            }
            let nt = n.iso_type().clone();
            let hs = subgroups_where(m, &|h| h.iso_type().embeds_in(&nt))?;
            let mut ks: Vec<Subgroup> = hs.iter().map(Subgroup::annihilator).collect();
            ks.sort();
            Ok(ks)
        }
        Direction::Image => {
            if n.iso_type().embeds_in(m.iso_type()) {
                return Ok(enumerate_subgroups(n)?.as_ref().clone());
            }
            let mt = m.iso_type().clone();
            subgroups_where(n, &|l| l.iso_type().embeds_in(&mt))
        }
    }
}

/// A morphism `M -> N` with kernel exactly `k`.
pub fn realize_kernel(n: &FiniteAbelianGroup, k: &Subgroup) -> Result<Homomorphism> {
    let (q, proj) = quotient_group(k)?;
    embedding(&q, n)?.compose(&proj)
}

/// A morphism `M -> N` with image exactly `l`.
pub fn realize_image(m: &FiniteAbelianGroup, l: &Subgroup) -> Result<Homomorphism> {
    let (h, incl) = subgroup_as_group(l)?;
    incl.compose(&surjection(m, &h)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s).unwrap()
    }

    #[test]
    fn hom_sizes() {
        assert_eq!(hom_group(&g("Z4"), &g("Z6")).size, 2);
        assert_eq!(hom_group(&g("Z2+Z16"), &g("Z2+Z16")).size, 128);
        assert_eq!(hom_group(&g("Z2"), &g("Z3")).size, 1);
    }

    #[test]
    fn multiplication_by_two_on_z4() {
        let z4 = g("Z4");
        let f = Homomorphism::multiplication(&z4, 2);
        let (k, i, c) = kernel_image_cokernel(&f).unwrap();
        assert_eq!(k.order(), 2);
        assert_eq!(k, i);
        assert_eq!(c, g("Z2"));
        assert!(f.compose(&f).unwrap().is_zero());
    }

    #[test]
    fn well_definedness_is_checked() {
        let bad = Homomorphism::new(
            &g("Z2"),
            &g("Z4"),
            IntegerMatrix::from_rows(&[vec![1]]).unwrap(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn quotient_and_subgroup_presentations() {
        let m = g("Z2+Z16");
        let k = Subgroup::from_generators(&m, &[GroupElement(vec![0, 2])]).unwrap();
        let (q, p) = quotient_group(&k).unwrap();
        assert_eq!(q, g("Z2^2"));
        assert_eq!(p.kernel(), k);
        assert!(p.image().is_whole());
        let (h, incl) = subgroup_as_group(&k).unwrap();
        assert_eq!(h, g("Z8"));
        assert_eq!(incl.image(), k);
        assert!(incl.kernel().is_zero());
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(enumerate_idempotents(&g("Z4")).unwrap().len(), 2);
        assert_eq!(enumerate_idempotents(&g("Z2+Z16")).unwrap().len(), 10);
        assert_eq!(enumerate_idempotents(&g("Z2^2")).unwrap().len(), 8);
    }

    #[test]
    fn abelian_end_rings() {
        assert!(is_abelian_end_ring(&g("Z4")).unwrap().value);
        assert!(!is_abelian_end_ring(&g("Z2^2")).unwrap().value);
        assert!(!is_abelian_end_ring(&g("Z2+Z16")).unwrap().value);
        assert!(is_abelian_end_ring(&g("Z12")).unwrap().value);
    }

    #[test]
    fn realizable_examples() {
        let z4 = g("Z4");
        let ks = realizable_subgroups(&z4, &g("Z2"), Direction::Kernel).unwrap();
        assert_eq!(ks.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(realizable_subgroups(&z4, &z4, Direction::Kernel).unwrap().len(), 3);
        let ls = realizable_subgroups(&g("Z2"), &g("Z2+Z16"), Direction::Image).unwrap();
        assert_eq!(ls.len(), 4);
        assert!(ls.iter().all(|l| l.order() <= 2));
    }

    #[test]
    fn realizing_morphisms() {
        let m = g("Z2+Z8");
        let n = g("Z4+Z4");
        for k in realizable_subgroups(&m, &n, Direction::Kernel).unwrap() {
            assert_eq!(realize_kernel(&n, &k).unwrap().kernel(), k);
        }
        for l in realizable_subgroups(&m, &n, Direction::Image).unwrap() {
            assert_eq!(realize_image(&m, &l).unwrap().image(), l);
        }
    }

    #[test]
    fn direct_sum_biproduct() {
        let ds = direct_sum(&g("Z4"), &g("Z6")).unwrap();
        assert_eq!(ds.sum, g("Z2+Z12"));
        for a in 0..2 {
            for b in 0..2 {
                let pi = ds.proj[b].compose(&ds.inj[a]).unwrap();
                if a == b {
                    assert_eq!(pi, Homomorphism::identity(pi.source()));
                } else {
                    assert!(pi.is_zero());
                }
            }
        }
    }
}
