//! Finite unital rings given by structure constants on an additive basis,
//! finite right modules over them and module homomorphisms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{mod_inverse, modp};
use crate::error::{LabError, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::hom::{hom_group, max_homs, quotient_group, subgroup_as_group, Homomorphism};
use crate::lattice::bottom_block;
use crate::matrix::IntegerMatrix;
use crate::subgroup::Subgroup;

/// A finite ring whose additive group has basis `b_0, ..., b_{k-1}` (the
/// standard generators of `additive`). `table[i][j]` holds the coordinates
/// of `b_i b_j`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FiniteRing {
    name: String,
    additive: FiniteAbelianGroup,
    table: Vec<Vec<Vec<i64>>>,
    one: Vec<i64>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {})", self.name, self.additive)
    }
}

impl FiniteRing {
    /// Builds the ring and checks well-definedness of the table,
    /// associativity on all basis triples and the unit laws. Distributivity
    /// holds by bilinear extension.
    pub fn new(
        name: impl Into<String>,
        additive: FiniteAbelianGroup,
        table: Vec<Vec<Vec<i64>>>,
        one: Vec<i64>,
    ) -> Result<Self> {
        let k = additive.rank();
        let m = additive.moduli().to_vec();
        if table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(LabError::Dimension {
                expected: k,
                found: table.len(),
            });
        }
        let reduce = |v: &[i64]| -> Result<Vec<i64>> {
            if v.len() != k {
                return Err(LabError::Dimension {
                    expected: k,
                    found: v.len(),
                });
            }
            Ok(v.iter().zip(&m).map(|(&x, &q)| modp(x, q)).collect())
        };
        let mut t = Vec::with_capacity(k);
        for row in &table {
            let mut r = Vec::with_capacity(k);
            for v in row {
                r.push(reduce(v)?);
            }
            t.push(r);
        }
        let ring = FiniteRing {
            name: name.into(),
            additive,
            table: t,
            one: reduce(&one)?,
        };
        ring.verify()?;
        Ok(ring)
    }

    fn verify(&self) -> Result<()> {
        let k = self.rank();
        let m = self.additive.moduli();
        for i in 0..k {
            for j in 0..k {
                let p = &self.table[i][j];
                for &n in [m[i], m[j]].iter() {
                    if p.iter().zip(m).any(|(&x, &q)| modp(x * n, q) != 0) {
                        return Err(LabError::InvalidStructure(format!(
                            "product b{i} b{j} is not killed by the order of its factors"
                        )));
                    }
                }
            }
        }
        for i in 0..k {
            let bi = self.basis(i);
            for j in 0..k {
                let bij = &self.table[i][j];
                for l in 0..k {
                    let left = self.mul(bij, &self.basis(l));
                    let right = self.mul(&bi, &self.table[j][l]);
                    if left != right {
                        return Err(LabError::InvalidStructure(format!(
                            "multiplication is not associative on (b{i}, b{j}, b{l})"
                        )));
                    }
                }
            }
            if self.mul(&self.one, &bi) != bi || self.mul(&bi, &self.one) != bi {
                return Err(LabError::InvalidStructure(format!(
                    "the unit does not act trivially on b{i}"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn additive(&self) -> &FiniteAbelianGroup {
        &self.additive
    }

    pub fn order(&self) -> u64 {
        self.additive.order()
    }

    /// Number of additive basis elements.
    pub fn rank(&self) -> usize {
        self.additive.rank()
    }

    pub fn one(&self) -> &[i64] {
        &self.one
    }

    pub fn basis(&self, i: usize) -> Vec<i64> {
        self.additive.basis_element(i).0
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[i64] {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let m = self.additive.moduli();
        let k = self.rank();
        let mut out = vec![0i64; k];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j];
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += c * t;
                }
            }
        }
        out.iter().zip(m).map(|(&x, &q)| modp(x, q)).collect()
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        self.additive.elements().map(|e| e.0).collect()
    }

    /// `Z/n` with basis `{1}`.
    pub fn integers_mod(n: u64) -> Result<Self> {
        let g = FiniteAbelianGroup::new(vec![n])?;
        if g.rank() != 1 {
            return Err(LabError::InvalidOrder(format!(
                "Z/{n} needs a cyclic additive group"
            )));
        }
        FiniteRing::new(format!("Z/{n}"), g, vec![vec![vec![1]]], vec![1])
    }

    /// Upper triangular 2x2 matrices over `F2`, basis `e11, e12, e22`.
    pub fn upper_triangular_f2() -> Self {
        let a = FiniteAbelianGroup::new(vec![2, 2, 2]).expect("valid group");
        let table = (0..3)
            .map(|i| (0..3).map(|j| ut2_mul(&unit3(i), &unit3(j))).collect())
            .collect();
        FiniteRing::new("ut2_f2", a, table, vec![1, 0, 1]).expect("valid ring")
    }

    /// The skew group ring `A * G` for `A` the upper triangular 2x2 matrices
    /// over `F2` and `G = {1, g}` acting by conjugation with `[[1,1],[0,1]]`.
    /// Basis `e11, e12, e22, e11 g, e12 g, e22 g`.
    pub fn skew_z2() -> Self {
        let r = FiniteAbelianGroup::new(vec![2; 6]).expect("valid group");
        let mut table = vec![vec![Vec::new(); 6]; 6];
        for (s, i) in (0..2).flat_map(|s| (0..3).map(move |i| (s, i))) {
            for (t, j) in (0..2).flat_map(|t| (0..3).map(move |j| (t, j))) {
                let twisted = if s == 1 { conj(&unit3(j)) } else { unit3(j) };
                let a = ut2_mul(&unit3(i), &twisted);
                let mut v = vec![0i64; 6];
                let off = 3 * ((s + t) % 2);
                v[off..off + 3].copy_from_slice(&a);
                table[3 * s + i][3 * t + j] = v;
            }
        }
        FiniteRing::new("skew_z2", r, table, vec![1, 0, 1, 0, 0, 0]).expect("valid ring")
    }

    /// `F2` as a ring in its own right.
    pub fn f2() -> Self {
        let g = FiniteAbelianGroup::new(vec![2]).expect("valid group");
        FiniteRing::new("F2", g, vec![vec![vec![1]]], vec![1]).expect("valid ring")
    }
}

fn unit3(i: usize) -> Vec<i64> {
    let mut v = vec![0; 3];
    v[i] = 1;
    v
}

/// Product in the upper triangular 2x2 matrices over `F2`, coordinates
/// `(a11, a12, a22)`.
pub(crate) fn ut2_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![
        (a[0] * b[0]) % 2,
        (a[0] * b[1] + a[1] * b[2]) % 2,
        (a[2] * b[2]) % 2,
    ]
}

/// The action of `g`: conjugation by `[[1,1],[0,1]]`, an involution.
pub(crate) fn conj(a: &[i64]) -> Vec<i64> {
    vec![a[0], (a[0] + a[1] + a[2]) % 2, a[2]]
}

/// A finite right module: the additive group together with `x -> x b_i` for
/// every ring basis element.
#[derive(Clone, Serialize)]
pub struct RightModule {
    #[serde(skip)]
    ring: Arc<FiniteRing>,
    label: String,
    additive: FiniteAbelianGroup,
    action: Vec<Homomorphism>,
}

impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightModule({} over {})", self.label, self.ring.name)
    }
}

impl RightModule {
    /// Checks `x 1 = x`, `x (b_i b_j) = (x b_i) b_j` and that `n_i` kills the
    /// action of `b_i`. Additivity in both arguments holds by construction.
    pub fn new(
        ring: Arc<FiniteRing>,
        label: impl Into<String>,
        additive: FiniteAbelianGroup,
        action: Vec<Homomorphism>,
    ) -> Result<Self> {
        let module = RightModule {
            ring,
            label: label.into(),
            additive,
            action,
        };
        module.verify()?;
        Ok(module)
    }

    fn verify(&self) -> Result<()> {
        let k = self.ring.rank();
        if self.action.len() != k {
            return Err(LabError::Dimension {
                expected: k,
                found: self.action.len(),
            });
        }
        for f in &self.action {
            if f.source() != &self.additive || f.target() != &self.additive {
                return Err(LabError::Context(
                    "action maps must be endomorphisms of the additive group".into(),
                ));
            }
        }
        let n = self.ring.additive.moduli();
        for (i, f) in self.action.iter().enumerate() {
            if !f.scale(n[i]).is_zero() {
                return Err(LabError::InvalidStructure(format!(
                    "the action of b{i} is not killed by its additive order"
                )));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let lhs = self.act_by(self.ring.basis_product(i, j))?;
                let rhs = self.action[j].compose(&self.action[i])?;
                if lhs != rhs {
                    return Err(LabError::InvalidStructure(format!(
                        "x(b{i} b{j}) differs from (x b{i}) b{j}"
                    )));
                }
            }
        }
        if self.act_by(self.ring.one())? != Homomorphism::identity(&self.additive) {
            return Err(LabError::InvalidStructure("the unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn additive(&self) -> &FiniteAbelianGroup {
        &self.additive
    }

    pub fn order(&self) -> u64 {
        self.additive.order()
    }

    /// `x -> x b_i`.
    pub fn action(&self) -> &[Homomorphism] {
        &self.action
    }

    /// The additive map `x -> x r`.
    pub fn act_by(&self, r: &[i64]) -> Result<Homomorphism> {
        let mut acc = Homomorphism::zero(&self.additive, &self.additive);
        for (f, &c) in self.action.iter().zip(r) {
            if c != 0 {
                acc = acc.add(&f.scale(c))?;
            }
        }
        Ok(acc)
    }

    pub fn act(&self, x: &GroupElement, r: &[i64]) -> Result<GroupElement> {
        Ok(self.act_by(r)?.apply(x))
    }

    /// `R_R`.
    pub fn regular(ring: &Arc<FiniteRing>) -> Result<Self> {
        let g = ring.additive.clone();
        let action = (0..ring.rank())
            .map(|j| {
                let b = ring.basis(j);
                let images: Vec<GroupElement> = (0..ring.rank())
                    .map(|i| GroupElement(ring.mul(&ring.basis(i), &b)))
                    .collect();
                Homomorphism::from_images(&g, &g, &images)
            })
            .collect::<Result<Vec<_>>>()?;
        RightModule::new(ring.clone(), "R_R", g, action)
    }

    /// A group as a module over `Z/n` with basis `{1}`.
    pub fn over_integers(ring: &Arc<FiniteRing>, g: &FiniteAbelianGroup) -> Result<Self> {
        RightModule::new(ring.clone(), g.to_string(), g.clone(), vec![Homomorphism::identity(g)])
    }

    pub fn is_submodule(&self, s: &Subgroup) -> bool {
        s.ambient() == &self.additive
            && self
                .action
                .iter()
                .all(|f| s.generators().iter().all(|x| s.contains(&f.apply(x))))
    }

    /// The smallest submodule containing `s`.
    pub fn submodule_generated(&self, s: &Subgroup) -> Result<Subgroup> {
        let mut cur = s.clone();
        loop {
            let mut next = cur.clone();
            for f in &self.action {
                next = next.sum(&f.image_of(&cur)?)?;
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// A submodule as a module in its own right, with the inclusion.
    pub fn submodule(&self, s: &Subgroup) -> Result<(RightModule, Homomorphism)> {
        if !self.is_submodule(s) {
            return Err(LabError::Context("not a submodule".into()));
        }
        let (h, incl) = subgroup_as_group(s)?;
        let back: HashMap<GroupElement, GroupElement> =
            h.elements().map(|x| (incl.apply(&x), x)).collect();
        let action = self
            .action
            .iter()
            .map(|f| {
                let images: Vec<GroupElement> = (0..h.rank())
                    .map(|i| back[&f.apply(&incl.image_of_basis(i))].clone())
                    .collect();
                Homomorphism::from_images(&h, &h, &images)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = RightModule::new(self.ring.clone(), format!("sub({})", self.label), h, action)?;
        Ok((m, incl))
    }

    /// `M/K` with the projection.
    pub fn quotient(&self, k: &Subgroup) -> Result<(RightModule, Homomorphism)> {
        if !self.is_submodule(k) {
            return Err(LabError::Context("not a submodule".into()));
        }
        let (q, proj) = quotient_group(k)?;
        let mut lifts: Vec<Option<GroupElement>> = vec![None; q.rank()];
        for x in self.additive.elements() {
            let y = proj.apply(&x);
            let nz: Vec<usize> = (0..q.rank()).filter(|&i| y.0[i] != 0).collect();
            if nz.len() == 1 && y.0[nz[0]] == 1 && lifts[nz[0]].is_none() {
                lifts[nz[0]] = Some(x);
            }
        }
        let lifts: Vec<GroupElement> = lifts
            .into_iter()
            .map(|l| l.ok_or_else(|| LabError::Consistency("quotient basis has no lift".into())))
            .collect::<Result<_>>()?;
        let action = self
            .action
            .iter()
            .map(|f| {
                let images: Vec<GroupElement> =
                    lifts.iter().map(|x| proj.apply(&f.apply(x))).collect();
                Homomorphism::from_images(&q, &q, &images)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = RightModule::new(self.ring.clone(), format!("{}/K", self.label), q, action)?;
        Ok((m, proj))
    }

    /// External direct sum.
    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule> {
        same_ring(self, other)?;
        let g = self.additive.direct_sum(&other.additive);
        let (a, b) = (self.additive.rank(), other.additive.rank());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(f, h)| {
                let mut mat = IntegerMatrix::zeros(a + b, a + b);
                for j in 0..a {
                    for i in 0..a {
                        mat.set(j, i, f.matrix().get(j, i));
                    }
                }
                for j in 0..b {
                    for i in 0..b {
                        mat.set(a + j, a + i, h.matrix().get(j, i));
                    }
                }
                Homomorphism::new(&g, &g, mat)
            })
            .collect::<Result<Vec<_>>>()?;
        RightModule::new(
            self.ring.clone(),
            format!("{}+{}", self.label, other.label),
            g,
            action,
        )
    }
}

fn same_ring(m: &RightModule, n: &RightModule) -> Result<()> {
    if Arc::ptr_eq(&m.ring, &n.ring) || m.ring == n.ring {
        Ok(())
    } else {
        Err(LabError::Context(format!(
            "modules over different rings ({} and {})",
            m.ring.name, n.ring.name
        )))
    }
}

/// An additive map commuting with the action of every ring basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModuleHom {
    pub map: Homomorphism,
}

impl ModuleHom {
    pub fn new(m: &RightModule, n: &RightModule, map: Homomorphism) -> Result<Self> {
        same_ring(m, n)?;
        if map.source() != &m.additive || map.target() != &n.additive {
            return Err(LabError::Context("map does not go between the modules".into()));
        }
        for (a, b) in m.action.iter().zip(&n.action) {
            if map.compose(a)? != b.compose(&map)? {
                return Err(LabError::InvalidStructure(
                    "map does not commute with the ring action".into(),
                ));
            }
        }
        Ok(ModuleHom { map })
    }
}

/// `Hom_R(M, N)` as a subgroup of `Hom(M, N)`: the kernel of
/// `f -> (f x_b - x_b f)_b`, computed in the coordinates of the elementary
/// generators of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct ModuleHomGroup {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    /// Triangular generators with the number of distinct multiples each
    /// contributes; every element is uniquely `sum a_i g_i`, `0 <= a_i < n_i`.
    pub basis: Vec<(Homomorphism, u64)>,
    pub size: u64,
}

pub fn rmodule_hom_group(m: &RightModule, n: &RightModule) -> Result<ModuleHomGroup> {
    same_ring(m, n)?;
    let hg = hom_group(&m.additive, &n.additive);
    let gens = &hg.elementary_generators;
    let (rows, cols) = (n.additive.rank(), m.additive.rank());
    let nm = n.additive.moduli();
    let mut top = Vec::new();
    for _ in 0..m.action.len() {
        for j in 0..rows {
            top.extend(std::iter::repeat_n(nm[j], cols));
        }
    }
    let bottom: Vec<i64> = gens.iter().map(|(_, o)| *o as i64).collect();
    let mut vectors = Vec::with_capacity(gens.len());
    for (t, (e, _)) in gens.iter().enumerate() {
        let mut v = Vec::with_capacity(top.len() + bottom.len());
        for (a, b) in m.action.iter().zip(&n.action) {
            let d = e.compose(a)?.sub(&b.compose(e)?)?;
            for j in 0..rows {
                v.extend_from_slice(d.matrix().row(j));
            }
        }
        v.extend((0..gens.len()).map(|s| i64::from(s == t)));
        vectors.push(v);
    }
    let ker = bottom_block(&top, &bottom, &vectors);
    let mut basis = Vec::new();
    let mut size: u64 = 1;
    for i in 0..gens.len() {
        let mult = (bottom[i] / ker.pivot(i)) as u64;
        if mult <= 1 {
            continue;
        }
        let mut f = Homomorphism::zero(&m.additive, &n.additive);
        for (t, &c) in ker.row(i).iter().enumerate() {
            if c != 0 {
                f = f.add(&gens[t].0.scale(c))?;
            }
        }
        basis.push((f, mult));
        size = size.saturating_mul(mult);
    }
    Ok(ModuleHomGroup {
        source: m.additive.clone(),
        target: n.additive.clone(),
        basis,
        size,
    })
}

impl ModuleHomGroup {
    pub fn generators(&self) -> Vec<Homomorphism> {
        self.basis.iter().map(|(f, _)| f.clone()).collect()
    }

    fn check_size(&self) -> Result<()> {
        if self.size > max_homs() {
            return Err(LabError::resource(
                format!("|Hom_R({}, {})|", self.source, self.target),
                max_homs(),
                self.size,
            ));
        }
        Ok(())
    }

    /// The first element (in mixed-radix order, first coefficient fastest)
    /// satisfying `pred`.
    pub fn find(&self, mut pred: impl FnMut(&Homomorphism) -> bool) -> Result<Option<Homomorphism>> {
        self.check_size()?;
        let k = self.basis.len();
        let mut coef = vec![0u64; k];
        // partial[i] = sum of the terms with index >= i
        let zero = Homomorphism::zero(&self.source, &self.target);
        let mut partial = vec![zero.clone(); k + 1];
        loop {
            let f = &partial[0];
            if pred(f) {
                return Ok(Some(f.clone()));
            }
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(None);
                }
                coef[i] += 1;
                if coef[i] < self.basis[i].1 {
                    break;
                }
                coef[i] = 0;
                i += 1;
            }
            for j in (0..=i).rev() {
                partial[j] = partial[j + 1].add(&self.basis[j].0.scale(coef[j] as i64))?;
            }
        }
    }

    pub fn elements(&self) -> Result<Vec<Homomorphism>> {
        let mut out = Vec::with_capacity(self.size.min(max_homs()) as usize);
        self.find(|f| {
            out.push(f.clone());
            false
        })?;
        Ok(out)
    }
}

/// All module homomorphisms `M -> N`.
pub fn rmodule_homs(m: &RightModule, n: &RightModule) -> Result<Vec<ModuleHom>> {
    Ok(rmodule_hom_group(m, n)?
        .elements()?
        .into_iter()
        .map(|map| ModuleHom { map })
        .collect())
}

/// Cheap isomorphism invariant.
fn iso_key(m: &RightModule) -> Result<(Vec<u64>, u64, Vec<(u64, u64)>)> {
    let end = rmodule_hom_group(m, m)?.size;
    let ranks = m
        .action
        .iter()
        .map(|f| (f.image().order(), f.kernel().order()))
        .collect();
    Ok((m.additive.factors().to_vec(), end, ranks))
}

/// Whether `M` and `N` are isomorphic as modules.
pub fn is_isomorphic(m: &RightModule, n: &RightModule) -> Result<bool> {
    same_ring(m, n)?;
    if m.additive != n.additive {
        return Ok(false);
    }
    if m.action == n.action {
        return Ok(true);
    }
    if iso_key(m)? != iso_key(n)? {
        return Ok(false);
    }
    Ok(rmodule_hom_group(m, n)?
        .find(|f| f.kernel().is_zero())?
        .is_some())
}

/// Assigns each module a class index, comparing only against earlier
/// representatives with the same invariant.
#[derive(Default)]
pub struct IsoClassifier {
    reps: Vec<RightModule>,
    buckets: HashMap<(Vec<u64>, u64, Vec<(u64, u64)>), Vec<usize>>,
}

impl IsoClassifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classify(&mut self, m: &RightModule) -> Result<usize> {
        Ok(self.classify_new(m)?.0)
    }

    /// The class index and whether it is new.
    pub fn classify_new(&mut self, m: &RightModule) -> Result<(usize, bool)> {
        let key = iso_key(m)?;
        if let Some(list) = self.buckets.get(&key) {
            for &c in list {
                if is_isomorphic(&self.reps[c], m)? {
                    return Ok((c, false));
                }
            }
        }
        let c = self.reps.len();
        self.reps.push(m.clone());
        self.buckets.entry(key).or_default().push(c);
        Ok((c, true))
    }

    pub fn representatives(&self) -> &[RightModule] {
        &self.reps
    }
}

static MODULE_SEARCH_BUDGET: std::sync::atomic::AtomicU64 =
    std::sync::atomic::AtomicU64::new(50_000_000);

/// Largest number of relation checks a module enumeration may perform.
pub fn module_search_budget() -> u64 {
    MODULE_SEARCH_BUDGET.load(std::sync::atomic::Ordering::Relaxed)
}

pub fn set_module_search_budget(n: u64) {
    MODULE_SEARCH_BUDGET.store(n, std::sync::atomic::Ordering::Relaxed);
}

/// All nonzero right modules of order at most `max_order`, one per
/// isomorphism class, ordered by additive group and then by discovery.
///
/// For each candidate additive group the actions of the basis elements are
/// searched by backtracking over endomorphisms, checking every product
/// relation as soon as all maps it involves are assigned. One basis element
/// with a unit coefficient in `1` is solved from `x 1 = x` instead of
/// searched.
pub fn enumerate_modules(ring: &Arc<FiniteRing>, max_order: u64) -> Result<Vec<RightModule>> {
    let char_ = ring.additive.element_order(&GroupElement(ring.one.clone()));
    let mut out = Vec::new();
    let mut work = 0u64;
    for g in FiniteAbelianGroup::all_up_to(max_order) {
        if g.is_zero() || !char_.is_multiple_of(g.exponent()) {
            continue;
        }
        let mut classes = IsoClassifier::new();
        search_actions(ring, &g, &mut work, &mut |action| {
            let m = RightModule::new(ring.clone(), "", g.clone(), action)?;
            let (c, new) = classes.classify_new(&m)?;
            if new {
                out.push(m.with_label(format!("{}#{}", g, c)));
            }
            Ok(())
        })?;
    }
    Ok(out)
}

fn search_actions(
    ring: &FiniteRing,
    g: &FiniteAbelianGroup,
    work: &mut u64,
    emit: &mut dyn FnMut(Vec<Homomorphism>) -> Result<()>,
) -> Result<()> {
    let k = ring.rank();
    let exp = g.exponent() as i64;
    let solved = (0..k)
        .rev()
        .find(|&i| ring.one[i] != 0 && mod_inverse(ring.one[i], exp).is_some());
    let support = |i: usize, j: usize| -> Vec<usize> {
        (0..k).filter(|&t| ring.table[i][j][t] != 0).collect()
    };
    // idempotent-like basis elements first: their self-relation prunes most
    let mut order: Vec<usize> = (0..k).filter(|&i| Some(i) != solved).collect();
    order.sort_by_key(|&i| (!support(i, i).iter().all(|&t| t == i), i));
    order.extend(solved);
    let mut pos = vec![0; k];
    for (d, &i) in order.iter().enumerate() {
        pos[i] = d;
    }
    // relations to check at each depth: those whose last involved index is there
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..k {
            let mut last = pos[i].max(pos[j]);
            for t in support(i, j) {
                last = last.max(pos[t]);
            }
            checks[last].push((i, j));
        }
    }
    let search = ActionSearch {
        ring,
        g,
        elementary: hom_group(g, g).elementary_generators,
        order,
        checks,
        solved,
    };
    let mut rho: Vec<Option<Homomorphism>> = vec![None; k];
    if search.order.is_empty() {
        return search.descend(0, &mut rho, work, emit);
    }
    // any module can be rebased so that the first searched map is a fixed
    // representative of its conjugacy class under Aut(A)
    let first = search.order[0];
    let candidates = if Some(first) == search.solved {
        return search.descend(0, &mut rho, work, emit);
    } else {
        search.solutions(0, &rho, work)?
    };
    let auts = automorphisms_with_inverses(g)?;
    let mut seen: std::collections::HashSet<Homomorphism> = std::collections::HashSet::new();
    for f in candidates {
        if seen.contains(&f) {
            continue;
        }
        for (s, s_inv) in &auts {
            seen.insert(s.compose(&f)?.compose(s_inv)?);
        }
        search.charge(work, auts.len() as u64)?;
        rho[first] = Some(f);
        search.descend(1, &mut rho, work, emit)?;
        rho[first] = None;
    }
    Ok(())
}

/// Every automorphism of `g` paired with its inverse.
fn automorphisms_with_inverses(g: &FiniteAbelianGroup) -> Result<Vec<(Homomorphism, Homomorphism)>> {
    let elements: Vec<GroupElement> = g.elements().collect();
    let mut out = Vec::new();
    for s in hom_group(g, g).elements()? {
        if !s.kernel().is_zero() {
            continue;
        }
        let back: HashMap<GroupElement, GroupElement> =
            elements.iter().map(|x| (s.apply(x), x.clone())).collect();
        let images: Vec<GroupElement> = (0..g.rank())
            .map(|i| back[&g.basis_element(i)].clone())
            .collect();
        let inv = Homomorphism::from_images(g, g, &images)?;
        out.push((s, inv));
    }
    Ok(out)
}

struct ActionSearch<'a> {
    ring: &'a FiniteRing,
    g: &'a FiniteAbelianGroup,
    elementary: Vec<(Homomorphism, u64)>,
    order: Vec<usize>,
    checks: Vec<Vec<(usize, usize)>>,
    solved: Option<usize>,
}

impl ActionSearch<'_> {
    fn charge(&self, work: &mut u64, n: u64) -> Result<()> {
        *work = work.saturating_add(n);
        if *work > module_search_budget() {
            return Err(LabError::resource(
                format!("module search over {}", self.ring.name),
                module_search_budget(),
                *work,
            ));
        }
        Ok(())
    }

    /// `sum_t c_t x_t - x_b x_a` for the relation `(a, b)`, with `x_i = f`.
    fn defect(
        &self,
        rho: &[Option<Homomorphism>],
        i: usize,
        f: &Homomorphism,
        (a, b): (usize, usize),
    ) -> Result<Homomorphism> {
        let get = |t: usize| if t == i { f } else { rho[t].as_ref().expect("assigned") };
        let mut acc = Homomorphism::zero(self.g, self.g);
        for (t, &c) in self.ring.table[a][b].iter().enumerate() {
            if c != 0 {
                acc = acc.add(&get(t).scale(c))?;
            }
        }
        acc.sub(&get(b).compose(get(a))?)
    }

    /// All `x_i` satisfying the relations checked at this depth. Relations
    /// other than `x_i x_i` are affine in `x_i`; their solution set is a coset
    /// found with one lattice computation, then filtered by the quadratic one.
    fn solutions(
        &self,
        depth: usize,
        rho: &[Option<Homomorphism>],
        work: &mut u64,
    ) -> Result<Vec<Homomorphism>> {
        let i = self.order[depth];
        let g = self.g;
        let (rows, cols) = (g.rank(), g.rank());
        let zero = Homomorphism::zero(g, g);
        let ni = self.ring.additive.moduli()[i];
        let (quad, lin): (Vec<(usize, usize)>, Vec<(usize, usize)>) =
            self.checks[depth].iter().partition(|&&(a, b)| a == i && b == i);
        let flat = |h: &Homomorphism, out: &mut Vec<i64>| {
            for j in 0..rows {
                out.extend_from_slice(h.matrix().row(j));
            }
        };
        let mut top = Vec::new();
        for _ in 0..=lin.len() {
            for j in 0..rows {
                top.extend(std::iter::repeat_n(g.moduli()[j], cols));
            }
        }
        let consts: Vec<Homomorphism> = lin
            .iter()
            .map(|&r| self.defect(rho, i, &zero, r))
            .collect::<Result<_>>()?;
        let t_count = self.elementary.len();
        let mut bottom = vec![g.exponent() as i64];
        bottom.extend(self.elementary.iter().map(|(_, o)| *o as i64));
        let mut vectors = Vec::with_capacity(t_count + 1);
        for (t, (e, _)) in self.elementary.iter().enumerate() {
            let mut v = Vec::with_capacity(top.len() + bottom.len());
            for (&r, c) in lin.iter().zip(&consts) {
                flat(&self.defect(rho, i, e, r)?.sub(c)?, &mut v);
            }
            flat(&e.scale(ni), &mut v);
            v.push(0);
            v.extend((0..t_count).map(|s| i64::from(s == t)));
            vectors.push(v);
        }
        let mut v = Vec::with_capacity(top.len() + bottom.len());
        for c in &consts {
            flat(c, &mut v);
        }
        flat(&zero, &mut v);
        v.push(1);
        v.extend(std::iter::repeat_n(0, t_count));
        vectors.push(v);
        let h = bottom_block(&top, &bottom, &vectors);
        if h.pivot(0) != 1 {
            return Ok(Vec::new());
        }
        let base: Vec<i64> = h.row(0)[1..].to_vec();
        let mut dirs: Vec<(Vec<i64>, u64)> = Vec::new();
        let mut size: u64 = 1;
        for j in 1..=t_count {
            let mult = (bottom[j] / h.pivot(j)) as u64;
            if mult > 1 {
                dirs.push((h.row(j)[1..].to_vec(), mult));
                size = size.saturating_mul(mult);
            }
        }
        self.charge(work, size)?;
        let mut out = Vec::new();
        let mut coef = vec![0u64; dirs.len()];
        loop {
            let mut raw = base.clone();
            for ((d, _), &a) in dirs.iter().zip(&coef) {
                if a != 0 {
                    for (x, y) in raw.iter_mut().zip(d) {
                        *x += a as i64 * y;
                    }
                }
            }
            let mut mat = IntegerMatrix::zeros(rows, cols);
            for ((e, _), &c) in self.elementary.iter().zip(&raw) {
                for j in 0..rows {
                    for l in 0..cols {
                        let x = e.matrix().get(j, l);
                        if x != 0 {
                            mat.set(j, l, mat.get(j, l) + x * c);
                        }
                    }
                }
            }
            let f = Homomorphism::new(g, g, mat)?;
            let mut ok = true;
            for &r in &quad {
                if !self.defect(rho, i, &f, r)?.is_zero() {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(f);
            }
            let mut j = 0;
            loop {
                if j == dirs.len() {
                    return Ok(out);
                }
                coef[j] += 1;
                if coef[j] < dirs[j].1 {
                    break;
                }
                coef[j] = 0;
                j += 1;
            }
        }
    }

    fn descend(
        &self,
        depth: usize,
        rho: &mut Vec<Option<Homomorphism>>,
        work: &mut u64,
        emit: &mut dyn FnMut(Vec<Homomorphism>) -> Result<()>,
    ) -> Result<()> {
        if depth == self.order.len() {
            let action = rho.iter().map(|f| f.clone().expect("assigned")).collect();
            return emit(action);
        }
        let i = self.order[depth];
        let options = if Some(i) == self.solved {
            // x 1 = x determines x_i from the others
            let g = self.g;
            let one = &self.ring.one;
            let mut rest = Homomorphism::identity(g);
            for (t, f) in rho.iter().enumerate() {
                if t != i && one[t] != 0 {
                    rest = rest.sub(&f.as_ref().expect("assigned").scale(one[t]))?;
                }
            }
            let inv = mod_inverse(one[i], g.exponent() as i64).expect("unit coefficient");
            let f = rest.scale(inv);
            let mut ok = f.scale(self.ring.additive.moduli()[i]).is_zero();
            for &r in &self.checks[depth] {
                if !ok {
                    break;
                }
                self.charge(work, 1)?;
                ok = self.defect(rho, i, &f, r)?.is_zero();
            }
            if ok {
                vec![f]
            } else {
                Vec::new()
            }
        } else {
            self.solutions(depth, rho, work)?
        };
        for f in options {
            rho[i] = Some(f);
            self.descend(depth + 1, rho, work, emit)?;
        }
        rho[i] = None;
        Ok(())
    }
}

/// A ring with its distinguished modules.
pub struct BuiltinRing {
    pub ring: Arc<FiniteRing>,
    pub modules: Vec<RightModule>,
}

pub const BUILTIN_RINGS: &[&str] = &["skew_z2", "ut2_f2", "f2"];

/// Built-in rings by name: `skew_z2` (module `M = A`), `ut2_f2` (modules
/// `M1 = e11 R`, `M2 = e22 R`, `R_R`), `f2` (module `F2`) and `z<n>`.
pub fn builtin_ring(name: &str) -> Result<BuiltinRing> {
    match name.to_ascii_lowercase().as_str() {
        "skew_z2" => {
            let ring = Arc::new(FiniteRing::skew_z2());
            let a = FiniteAbelianGroup::new(vec![2, 2, 2])?;
            let action = (0..6)
                .map(|b| {
                    let (s, j) = (b / 3, b % 3);
                    let images: Vec<GroupElement> = (0..3)
                        .map(|i| {
                            let x = ut2_mul(&unit3(i), &unit3(j));
                            GroupElement(if s == 1 { conj(&x) } else { x })
                        })
                        .collect();
                    Homomorphism::from_images(&a, &a, &images)
                })
                .collect::<Result<Vec<_>>>()?;
            let m = RightModule::new(ring.clone(), "M", a, action)?;
            Ok(BuiltinRing { ring, modules: vec![m] })
        }
        "ut2_f2" => {
            let ring = Arc::new(FiniteRing::upper_triangular_f2());
            let a2 = FiniteAbelianGroup::new(vec![2, 2])?;
            let a1 = FiniteAbelianGroup::new(vec![2])?;
            // x = (x11, x12) in the top row; x r = (x11 r11, x11 r12 + x12 r22)
            let top = |b: usize| -> Result<Homomorphism> {
                let r = unit3(b);
                let images = [
                    GroupElement(vec![r[0], r[1]]),
                    GroupElement(vec![0, r[2]]),
                ];
                Homomorphism::from_images(&a2, &a2, &images)
            };
            let action1 = (0..3).map(top).collect::<Result<Vec<_>>>()?;
            let action2 = (0..3)
                .map(|b| Homomorphism::from_images(&a1, &a1, &[GroupElement(vec![unit3(b)[2]])]))
                .collect::<Result<Vec<_>>>()?;
            let m1 = RightModule::new(ring.clone(), "M1", a2, action1)?;
            let m2 = RightModule::new(ring.clone(), "M2", a1, action2)?;
            let rr = RightModule::regular(&ring)?;
            Ok(BuiltinRing { ring, modules: vec![m1, m2, rr] })
        }
        "f2" => {
            let ring = Arc::new(FiniteRing::f2());
            let m = RightModule::regular(&ring)?.with_label("F2");
            Ok(BuiltinRing { ring, modules: vec![m] })
        }
        other => {
            if let Some(n) = other.strip_prefix('z').and_then(|s| s.parse::<u64>().ok()) {
                let ring = Arc::new(FiniteRing::integers_mod(n)?);
                let m = RightModule::regular(&ring)?;
                return Ok(BuiltinRing { ring, modules: vec![m] });
            }
            Err(LabError::UnknownName(format!("ring '{name}'")))
        }
    }
}

/// File format for user-defined rings: invariant factors of the additive
/// group, the structure constants, the unit, and optional modules given by
/// one action matrix per ring basis element (column `i` is the image of
/// `e_i`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingDefinition {
    pub name: String,
    pub additive: Vec<u64>,
    pub table: Vec<Vec<Vec<i64>>>,
    pub one: Vec<i64>,
    #[serde(default)]
    pub modules: Vec<ModuleDefinition>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDefinition {
    pub label: String,
    pub additive: Vec<u64>,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl RingDefinition {
    pub fn build(&self) -> Result<BuiltinRing> {
        let g = FiniteAbelianGroup::new(self.additive.clone())?;
        if g.factors() != self.additive.as_slice() {
            return Err(LabError::InvalidStructure(
                "additive group must be given by its invariant factors".into(),
            ));
        }
        let ring = Arc::new(FiniteRing::new(
            self.name.clone(),
            g,
            self.table.clone(),
            self.one.clone(),
        )?);
        let mut modules = Vec::new();
        for md in &self.modules {
            let a = FiniteAbelianGroup::new(md.additive.clone())?;
            if a.factors() != md.additive.as_slice() {
                return Err(LabError::InvalidStructure(
                    "module additive group must be given by its invariant factors".into(),
                ));
            }
            let action = md
                .action
                .iter()
                .map(|rows| Homomorphism::new(&a, &a, IntegerMatrix::from_rows(rows)?))
                .collect::<Result<Vec<_>>>()?;
            modules.push(RightModule::new(ring.clone(), md.label.clone(), a, action)?);
        }
        Ok(BuiltinRing { ring, modules })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let s = builtin_ring("skew_z2").unwrap();
        assert_eq!(s.ring.order(), 64);
        assert_eq!(s.modules[0].order(), 8);
        let u = builtin_ring("ut2_f2").unwrap();
        assert_eq!(u.ring.order(), 8);
        assert_eq!(u.modules[0].order(), 4);
        assert_eq!(u.modules[1].order(), 2);
    }

    #[test]
    fn skew_endomorphisms() {
        let s = builtin_ring("skew_z2").unwrap();
        let m = &s.modules[0];
        let end = rmodule_homs(m, m).unwrap();
        assert_eq!(end.len(), 4);
        let mut kernels: Vec<u64> = end.iter().map(|f| f.map.kernel().order()).collect();
        kernels.sort();
        assert_eq!(kernels, vec![1, 1, 4, 8]);
    }

    #[test]
    fn ut2_endomorphisms() {
        let u = builtin_ring("ut2_f2").unwrap();
        let m1 = &u.modules[0];
        assert_eq!(rmodule_homs(m1, m1).unwrap().len(), 2);
        let m2 = &u.modules[1];
        assert_eq!(rmodule_homs(m2, m2).unwrap().len(), 2);
        assert_eq!(rmodule_homs(m2, m1).unwrap().len(), 2);
        assert_eq!(rmodule_homs(m1, m2).unwrap().len(), 1);
        let sum = m1.direct_sum(m2).unwrap();
        assert!(is_isomorphic(&sum, &u.modules[2]).unwrap());
    }

    #[test]
    fn bad_tables_rejected() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        // b0 b1 = b0 but b1 b0 = b1 with b1 b1 = b0 is not associative
        let t = vec![
            vec![vec![1, 0], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        ];
        assert!(FiniteRing::new("bad", g, t, vec![1, 0]).is_err());
    }

    #[test]
    fn f2_modules_by_dimension() {
        let r = Arc::new(FiniteRing::f2());
        let ms = enumerate_modules(&r, 16).unwrap();
        let orders: Vec<u64> = ms.iter().map(RightModule::order).collect();
        assert_eq!(orders, vec![2, 4, 8, 16]);
    }
}
