//! Finite right modules as a [`ModuleContext`], and `Hom_R(M, N)` as a
//! [`MorphismSpace`].

use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::context::{lattice_ops, ModuleContext};
use crate::enumerate::{check_subgroup_count, prime_power_cyclic_subgroups};
use crate::error::{LabError, Result};
use crate::group::FiniteAbelianGroup;
use crate::hom::{Direction, Homomorphism};
use crate::rickart::MorphismSpace;
use crate::ring::{rmodule_hom_group, IsoClassifier, RightModule};
use crate::subgroup::Subgroup;

/// All submodules, canonically sorted. Every submodule is a sum of cyclic
/// submodules generated by elements of prime-power order, so a search over
/// sums of those finds them all.
pub fn submodules(m: &RightModule) -> Result<Vec<Subgroup>> {
    let g = m.additive();
    let zero = Subgroup::zero(g);
    if g.is_zero() {
        return Ok(vec![zero]);
    }
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for (_, a) in prime_power_cyclic_subgroups(g)?.iter() {
        let c = m.submodule_generated(a)?;
        if seen_cyclic.insert(c.clone()) {
            cyclic.push(c);
        }
    }
    let mut seen: HashSet<Subgroup> = HashSet::new();
    seen.insert(zero.clone());
    let mut found = vec![zero];
    let mut i = 0;
    while i < found.len() {
        let s = found[i].clone();
        i += 1;
        for c in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let t = s.sum(c)?;
            if seen.insert(t.clone()) {
                found.push(t);
                check_subgroup_count(found.len(), g)?;
            }
        }
    }
    found.sort();
    Ok(found)
}

/// A finite right module with its submodule lattice materialised.
pub struct RModuleContext {
    module: RightModule,
    subs: Arc<Vec<Subgroup>>,
    generators: Arc<Vec<Homomorphism>>,
    minimal: Arc<Vec<Subgroup>>,
    maximal: Arc<Vec<Subgroup>>,
    socle: Subgroup,
    radical: Subgroup,
    summands: OnceLock<Arc<Vec<Subgroup>>>,
    fi_summands: OnceLock<Arc<Vec<Subgroup>>>,
}

impl RModuleContext {
    pub fn new(module: RightModule) -> Result<Self> {
        let g = module.additive().clone();
        let subs = submodules(&module)?;
        let generators = rmodule_hom_group(&module, &module)?.generators();
        let minimal = lattice_ops::minimal(&subs);
        let maximal = lattice_ops::maximal(&subs);
        let socle = lattice_ops::sum_of(&g, &minimal);
        let radical = lattice_ops::meet_of(&g, &maximal);
        Ok(RModuleContext {
            module,
            subs: Arc::new(subs),
            generators: Arc::new(generators),
            minimal: Arc::new(minimal),
            maximal: Arc::new(maximal),
            socle,
            radical,
            summands: OnceLock::new(),
            fi_summands: OnceLock::new(),
        })
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn is_semisimple(&self) -> bool {
        self.socle.is_whole()
    }
}

impl ModuleContext for RModuleContext {
    fn object(&self) -> &FiniteAbelianGroup {
        self.module.additive()
    }

    fn label(&self) -> String {
        self.module.label().to_string()
    }

    fn endomorphism_generators(&self) -> Result<Arc<Vec<Homomorphism>>> {
        Ok(self.generators.clone())
    }

    fn is_subobject(&self, s: &Subgroup) -> bool {
        self.module.is_submodule(s)
    }

    fn subobjects(&self) -> Result<Arc<Vec<Subgroup>>> {
        Ok(self.subs.clone())
    }

    fn minimal_subobjects(&self) -> Result<Arc<Vec<Subgroup>>> {
        Ok(self.minimal.clone())
    }

    fn maximal_subobjects(&self) -> Result<Arc<Vec<Subgroup>>> {
        Ok(self.maximal.clone())
    }

    fn socle(&self) -> Result<Subgroup> {
        Ok(self.socle.clone())
    }

    fn radical(&self) -> Result<Subgroup> {
        Ok(self.radical.clone())
    }

    fn radical_over(&self, d: &Subgroup) -> Result<Subgroup> {
        Ok(lattice_ops::radical_over(self.object(), &self.subs, d))
    }

    fn is_summand(&self, k: &Subgroup) -> Result<bool> {
        Ok(lattice_ops::complement(&self.subs, k).is_some())
    }

    fn complement(&self, k: &Subgroup) -> Result<Option<Subgroup>> {
        Ok(lattice_ops::complement(&self.subs, k))
    }

    fn summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.summands.get() {
            return Ok(v.clone());
        }
        let v: Vec<Subgroup> = self
            .subs
            .iter()
            .filter(|k| lattice_ops::complement(&self.subs, k).is_some())
            .cloned()
            .collect();
        Ok(self.summands.get_or_init(|| Arc::new(v)).clone())
    }

    fn fully_invariant_summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.fi_summands.get() {
            return Ok(v.clone());
        }
        let mut v = Vec::new();
        for d in self.summands()?.iter() {
            if self.fully_invariant_violation(d)?.is_none() {
                v.push(d.clone());
            }
        }
        Ok(self.fi_summands.get_or_init(|| Arc::new(v)).clone())
    }
}

/// Isomorphism classes of the submodules of `M` and `N` and of the factor
/// modules of `M`, all indexed in one shared classifier.
struct ClassTables {
    source_subs: Vec<usize>,
    target_subs: Vec<usize>,
    source_quotients: Vec<usize>,
}

/// `Hom_R(M, N)` for finite right modules. Realizable kernels and images come
/// from enumerating the (small) Hom group; isomorphism questions go through
/// class indices of submodules and factor modules.
pub struct RModulePair {
    m: Arc<RModuleContext>,
    n: Arc<RModuleContext>,
    homs: OnceLock<Arc<Vec<Homomorphism>>>,
    kernels: OnceLock<Arc<Vec<Subgroup>>>,
    images: OnceLock<Arc<Vec<Subgroup>>>,
    classes: OnceLock<Arc<ClassTables>>,
    classifier: Mutex<IsoClassifier>,
    copies: OnceLock<Arc<Vec<Subgroup>>>,
    onto_summands: OnceLock<Arc<Vec<Subgroup>>>,
}

fn memo<T: Clone>(cell: &OnceLock<T>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v).clone())
}

impl RModulePair {
    pub fn new(m: Arc<RModuleContext>, n: Arc<RModuleContext>) -> Result<Self> {
        if m.module.ring() != n.module.ring() {
            return Err(LabError::Context("modules over different rings".into()));
        }
        Ok(RModulePair {
            m,
            n,
            homs: OnceLock::new(),
            kernels: OnceLock::new(),
            images: OnceLock::new(),
            classes: OnceLock::new(),
            classifier: Mutex::new(IsoClassifier::new()),
            copies: OnceLock::new(),
            onto_summands: OnceLock::new(),
        })
    }

    pub fn endo(m: Arc<RModuleContext>) -> Self {
        RModulePair::new(m.clone(), m).expect("same ring")
    }

    pub fn homs(&self) -> Result<Arc<Vec<Homomorphism>>> {
        memo(&self.homs, || {
            Ok(Arc::new(
                rmodule_hom_group(&self.m.module, &self.n.module)?.elements()?,
            ))
        })
    }

    fn distinct(&self, f: impl Fn(&Homomorphism) -> Subgroup) -> Result<Arc<Vec<Subgroup>>> {
        let set: BTreeSet<Subgroup> = self.homs()?.iter().map(f).collect();
        Ok(Arc::new(set.into_iter().collect()))
    }

    fn classes(&self) -> Result<Arc<ClassTables>> {
        memo(&self.classes, || {
            let mut cl = self.classifier.lock().unwrap_or_else(|e| e.into_inner());
            let mut class_of_subs = |ctx: &RModuleContext| -> Result<Vec<usize>> {
                ctx.subs
                    .iter()
                    .map(|s| cl.classify(&ctx.module.submodule(s)?.0))
                    .collect()
            };
            let source_subs = class_of_subs(&self.m)?;
            let target_subs = if Arc::ptr_eq(&self.m, &self.n) {
                source_subs.clone()
            } else {
                class_of_subs(&self.n)?
            };
            let source_quotients = self
                .m
                .subs
                .iter()
                .map(|k| cl.classify(&self.m.module.quotient(k)?.0))
                .collect::<Result<Vec<_>>>()?;
            Ok(Arc::new(ClassTables {
                source_subs,
                target_subs,
                source_quotients,
            }))
        })
    }

    fn summand_classes(ctx: &RModuleContext, table: &[usize]) -> Result<HashSet<usize>> {
        let summands = ctx.summands()?;
        Ok(ctx
            .subs
            .iter()
            .zip(table)
            .filter(|(s, _)| summands.binary_search(s).is_ok())
            .map(|(_, &c)| c)
            .collect())
    }
}

impl MorphismSpace for RModulePair {
    fn source(&self) -> &dyn ModuleContext {
        self.m.as_ref()
    }

    fn target(&self) -> &dyn ModuleContext {
        self.n.as_ref()
    }

    fn realizable(&self, direction: Direction) -> Result<Arc<Vec<Subgroup>>> {
        match direction {
            Direction::Kernel => memo(&self.kernels, || self.distinct(Homomorphism::kernel)),
            Direction::Image => memo(&self.images, || self.distinct(Homomorphism::image)),
        }
    }

    fn realize(&self, direction: Direction, s: &Subgroup) -> Result<Homomorphism> {
        self.homs()?
            .iter()
            .find(|f| match direction {
                Direction::Kernel => &f.kernel() == s,
                Direction::Image => &f.image() == s,
            })
            .cloned()
            .ok_or_else(|| LabError::Context("subobject is not realizable".into()))
    }

    fn target_copies_of_source_summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        memo(&self.copies, || {
            let t = self.classes()?;
            let wanted = Self::summand_classes(&self.m, &t.source_subs)?;
            Ok(Arc::new(
                self.n
                    .subs
                    .iter()
                    .zip(&t.target_subs)
                    .filter(|(_, c)| wanted.contains(c))
                    .map(|(s, _)| s.clone())
                    .collect(),
            ))
        })
    }

    fn source_kernels_onto_target_summands(&self) -> Result<Arc<Vec<Subgroup>>> {
        memo(&self.onto_summands, || {
            let t = self.classes()?;
            let wanted = Self::summand_classes(&self.n, &t.target_subs)?;
            Ok(Arc::new(
                self.m
                    .subs
                    .iter()
                    .zip(&t.source_quotients)
                    .filter(|(_, c)| wanted.contains(c))
                    .map(|(s, _)| s.clone())
                    .collect(),
            ))
        })
    }

    fn source_summands_embed_in_target(&self) -> Result<bool> {
        let t = self.classes()?;
        let available: HashSet<usize> = t.target_subs.iter().copied().collect();
        Ok(Self::summand_classes(&self.m, &t.source_subs)?
            .iter()
            .all(|c| available.contains(c)))
    }

    fn target_summands_are_source_quotients(&self) -> Result<bool> {
        let t = self.classes()?;
        let available: HashSet<usize> = t.source_quotients.iter().copied().collect();
        Ok(Self::summand_classes(&self.n, &t.target_subs)?
            .iter()
            .all(|c| available.contains(c)))
    }

    fn label(&self) -> String {
        format!("({}, {})", self.m.label(), self.n.label())
    }
}

/// The full property report of a module with respect to itself.
pub fn module_profile(m: &RightModule) -> Result<crate::rickart::PropertyReport> {
    let ctx = Arc::new(RModuleContext::new(m.clone())?);
    crate::rickart::full_profile(&RModulePair::endo(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rickart::PropertyId::*;
    use crate::ring::{builtin_ring, FiniteRing};

    #[test]
    fn small_lattices() {
        let u = builtin_ring("ut2_f2").unwrap();
        assert_eq!(submodules(&u.modules[1]).unwrap().len(), 2);
        // M1 is uniserial: 0 < soc < M1
        assert_eq!(submodules(&u.modules[0]).unwrap().len(), 3);
        let f2 = Arc::new(FiniteRing::f2());
        let zero = RightModule::over_integers(&f2, &FiniteAbelianGroup::zero()).unwrap();
        assert_eq!(submodules(&zero).unwrap().len(), 1);
    }

    #[test]
    fn worked_examples() {
        let u = builtin_ring("ut2_f2").unwrap();
        for m in &u.modules[..2] {
            let r = module_profile(m).unwrap();
            assert!(r.value(StronglyCsRickart) && r.value(DualStronglyCsRickart), "{}", m.label());
        }
        let r = module_profile(&u.modules[2]).unwrap();
        assert!(!r.value(StronglyCsRickart) && !r.value(DualStronglyCsRickart));
        let s = builtin_ring("skew_z2").unwrap();
        let r = module_profile(&s.modules[0]).unwrap();
        assert!(r.value(StronglyCsRickart) && r.value(AbelianEndRing) && r.value(CsRickart));
    }
}
