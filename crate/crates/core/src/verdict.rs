//! Verdicts with structured, re-checkable evidence.

use serde::Serialize;

use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::hom::Homomorphism;
use crate::subgroup::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceKind {
    /// The subobject contains the socle.
    ContainsSocle,
    /// A nonzero subobject meeting the given one trivially.
    DisjointSubobject,
    /// The subobject lies inside the radical.
    InsideRadical,
    /// A proper subobject supplementing the given one.
    ProperSupplement,
    Complement,
    NoComplement,
    InvariantUnderGenerators,
    /// An endomorphism and an element it moves out of the subobject.
    MovedElement,
    EssentialInSummand,
    NoEssentialSummand,
    LiesAboveSummand,
    NoSummandBelow,
    /// A pair of subobjects violating a pairwise condition.
    OffendingPair,
    /// A family (given as the subobjects list) violating a family condition.
    OffendingFamily,
    AllPairsChecked,
    AllFamiliesChecked,
    /// A realizable kernel with a realizing morphism.
    RealizableKernel,
    /// A realizable image with a realizing morphism.
    RealizableImage,
    AllRealizableChecked,
    AllSubobjectsChecked,
    /// A summand that is not fully invariant, with a moving endomorphism.
    NonInvariantSummand,
    AllSummandsInvariant,
    NonCentralIdempotent,
    IdempotentsCentral,
    /// A subobject isomorphic to a summand but not itself a summand.
    NonSummandCopy,
    /// A kernel whose factor is isomorphic to a summand but which is not a
    /// summand.
    NonSummandKernel,
    /// Value decided by a closed-form clause rather than a search.
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    pub quotient: FiniteAbelianGroup,
    pub radical_order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub kind: EvidenceKind,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subobjects: Vec<Subgroup>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<Homomorphism>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<GroupElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_data: Option<QuotientData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// The failing sub-verdict behind a counterexample, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Box<PropertyVerdict>>,
}

impl Evidence {
    pub fn new(kind: EvidenceKind) -> Self {
        Evidence {
            kind,
            subobjects: Vec::new(),
            morphisms: Vec::new(),
            elements: Vec::new(),
            quotient_data: None,
            count: None,
            note: None,
            reason: None,
        }
    }

    pub fn with_subobjects(mut self, s: Vec<Subgroup>) -> Self {
        self.subobjects = s;
        self
    }

    pub fn with_subobject(mut self, s: Subgroup) -> Self {
        self.subobjects.push(s);
        self
    }

    pub fn with_morphism(mut self, f: Homomorphism) -> Self {
        self.morphisms.push(f);
        self
    }

    pub fn with_elements(mut self, e: Vec<GroupElement>) -> Self {
        self.elements = e;
        self
    }

    pub fn with_count(mut self, n: u64) -> Self {
        self.count = Some(n);
        self
    }

    pub fn with_note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn with_quotient(mut self, q: QuotientData) -> Self {
        self.quotient_data = Some(q);
        self
    }

    pub fn with_reason(mut self, v: PropertyVerdict) -> Self {
        self.reason = Some(Box::new(v));
        self
    }
}

/// A boolean with exactly one of witness (when true) or counterexample
/// (when false).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evidence>,
}

impl PropertyVerdict {
    pub fn holds(witness: Evidence) -> Self {
        PropertyVerdict {
            value: true,
            witness: Some(witness),
            counterexample: None,
        }
    }

    pub fn fails(counterexample: Evidence) -> Self {
        PropertyVerdict {
            value: false,
            witness: None,
            counterexample: Some(counterexample),
        }
    }

    pub fn evidence(&self) -> &Evidence {
        self.witness
            .as_ref()
            .or(self.counterexample.as_ref())
            .expect("verdict carries evidence")
    }
}
