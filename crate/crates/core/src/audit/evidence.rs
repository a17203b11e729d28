use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::tensor::TensorSearch;
use crate::params::{PremiseId, PremiseSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    pub const ALL: [Relation; 6] = [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ne, Relation::Ge, Relation::Gt];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "==",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.symbol() == s)
    }

    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An exact integer comparison instantiated at a parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub label: String,
    #[serde(with = "crate::decimal")]
    pub lhs: BigUint,
    pub relation: Relation,
    #[serde(with = "crate::decimal")]
    pub rhs: BigUint,
    pub citation: String,
}

impl Inequality {
    pub fn new(
        label: impl Into<String>,
        lhs: impl Into<BigUint>,
        relation: Relation,
        rhs: impl Into<BigUint>,
        citation: impl Into<String>,
    ) -> Inequality {
        Inequality {
            label: label.into(),
            lhs: lhs.into(),
            relation,
            rhs: rhs.into(),
            citation: citation.into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.relation.holds(&self.lhs, &self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Inequality(Inequality),
    Premise { id: PremiseId, asserted: bool },
    Fact { statement: String, citation: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    #[serde(rename = "S_nondef_table")]
    SNondefTable,
    #[serde(rename = "S_nondef_genericPSL2")]
    SNondefGenericPsl2,
    #[serde(rename = "S_nondef_alternating")]
    SNondefAlternating,
    #[serde(rename = "S_defining")]
    SDefining,
}

impl ClassTag {
    pub const ALL: [ClassTag; 11] = [
        ClassTag::C1,
        ClassTag::C2,
        ClassTag::C3,
        ClassTag::C4,
        ClassTag::C5,
        ClassTag::C6,
        ClassTag::C7,
        ClassTag::SNondefTable,
        ClassTag::SNondefGenericPsl2,
        ClassTag::SNondefAlternating,
        ClassTag::SDefining,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::C1 => "C1",
            ClassTag::C2 => "C2",
            ClassTag::C3 => "C3",
            ClassTag::C4 => "C4",
            ClassTag::C5 => "C5",
            ClassTag::C6 => "C6",
            ClassTag::C7 => "C7",
            ClassTag::SNondefTable => "S_nondef_table",
            ClassTag::SNondefGenericPsl2 => "S_nondef_genericPSL2",
            ClassTag::SNondefAlternating => "S_nondef_alternating",
            ClassTag::SDefining => "S_defining",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    TensorSearch(TensorSearch),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionVerdict {
    pub class_tag: ClassTag,
    pub excluded: bool,
    /// The argument goes through without content, e.g. no proper subfield
    /// exists when `g` is prime.
    pub vacuous: bool,
    pub evidence: Vec<Evidence>,
    pub witness: Option<Witness>,
    pub gaps: Vec<String>,
}

impl ExclusionVerdict {
    pub fn inequalities(&self) -> impl Iterator<Item = &Inequality> {
        self.evidence.iter().filter_map(|e| match e {
            Evidence::Inequality(i) => Some(i),
            _ => None,
        })
    }

    /// Excluded verdicts must carry evidence and every inequality must hold.
    pub fn is_consistent(&self) -> bool {
        !self.excluded || (!self.evidence.is_empty() && self.gaps.is_empty() && self.inequalities().all(Inequality::holds))
    }
}

/// Accumulates evidence; the verdict is `excluded` only if nothing failed.
pub(crate) struct VerdictBuilder {
    tag: ClassTag,
    evidence: Vec<Evidence>,
    gaps: Vec<String>,
    witness: Option<Witness>,
    vacuous: bool,
}

impl VerdictBuilder {
    pub fn new(tag: ClassTag) -> Self {
        VerdictBuilder { tag, evidence: Vec::new(), gaps: Vec::new(), witness: None, vacuous: false }
    }

    pub fn premise(&mut self, premises: &PremiseSet, id: PremiseId) -> &mut Self {
        let asserted = premises.is_asserted(id);
        self.evidence.push(Evidence::Premise { id, asserted });
        if !asserted {
            self.gaps.push(format!("{} premise missing: {id}", self.tag));
        }
        self
    }

    pub fn require(&mut self, inequality: Inequality) -> &mut Self {
        if !inequality.holds() {
            self.gaps.push(format!(
                "{} inequality fails: {} ({} {} {})",
                self.tag, inequality.label, inequality.lhs, inequality.relation, inequality.rhs
            ));
        }
        self.evidence.push(Evidence::Inequality(inequality));
        self
    }

    pub fn fact(&mut self, statement: impl Into<String>, citation: impl Into<String>) -> &mut Self {
        self.evidence.push(Evidence::Fact { statement: statement.into(), citation: citation.into() });
        self
    }

    pub fn gap(&mut self, gap: impl Into<String>) -> &mut Self {
        self.gaps.push(format!("{} {}", self.tag, gap.into()));
        self
    }

    pub fn witness(&mut self, witness: Witness) -> &mut Self {
        self.witness = Some(witness);
        self
    }

    pub fn vacuous(&mut self, vacuous: bool) -> &mut Self {
        self.vacuous = vacuous;
        self
    }

    pub fn finish(&mut self) -> ExclusionVerdict {
        if self.evidence.is_empty() {
            self.gaps.push(format!("{} has no evidence", self.tag));
        }
        ExclusionVerdict {
            class_tag: self.tag,
            excluded: self.gaps.is_empty(),
            vacuous: self.vacuous,
            evidence: std::mem::take(&mut self.evidence),
            witness: self.witness.take(),
            gaps: std::mem::take(&mut self.gaps),
        }
    }
}
