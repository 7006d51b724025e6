//! Toy quantum models that produce context-tagged judgments.
//!
//! Each scenario builds its states, computes the quantities that decide a
//! truth value in each context, and packages the resulting judgments with a
//! one-entity model whose contexts are pairwise incompatible.

mod cat;
mod corpus;
mod double_slit;
mod epr;
mod qcc;
mod threshold;
mod wigner;

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::logic::{SchemaKind, Tv3, ValueSet};
use crate::predication::{classify, Judgment, JudgmentSet, PredicationClass, PredicationError};
use crate::quantum::{QuantumError, C64, TOLERANCE};
use crate::semantics::{Model, ModelError};

pub use cat::{cat, cat_outcome, cat_outcomes, CAT_PREDICATE};
pub use corpus::{corpus, CorpusEntry, CorpusReport};
pub use double_slit::{double_slit, visibility, SlitSetup, SLIT_PREDICATE};
pub use epr::{epr, AliceOutcome, EprBasis, EPR_PREDICATE};
pub use qcc::{qcc, QCC_PREDICATE};
pub use threshold::{threshold, THRESHOLD_PREDICATE};
pub use wigner::{wigner, Perspective, SpinOutcome, WIGNER_PREDICATE};

/// Names accepted by [`by_name`], in corpus order.
pub const SCENARIO_NAMES: [&str; 6] = ["double_slit", "cat", "wigner", "epr", "qcc", "threshold"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("lower cut {lower} must be below upper cut {upper}")]
    BadCuts { lower: f64, upper: f64 },
    #[error("intensity level {0} is not finite")]
    BadLevel(f64),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Predication(#[from] PredicationError),
}

/// A computed quantity attached to a report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Witness {
    Real(f64),
    Complex(C64),
}

impl Witness {
    pub fn as_complex(self) -> C64 {
        match self {
            Witness::Real(x) => C64::new(x, 0.0),
            Witness::Complex(z) => z,
        }
    }
}

impl From<f64> for Witness {
    fn from(x: f64) -> Self {
        Witness::Real(x)
    }
}

impl From<C64> for Witness {
    fn from(z: C64) -> Self {
        Witness::Complex(z)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Witness::Real(x) => s.serialize_f64(*x),
            Witness::Complex(z) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("re", &z.re)?;
                m.serialize_entry("im", &z.im)?;
                m.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioReport {
    pub name: String,
    pub predicate: String,
    pub model: Model,
    pub judgments: JudgmentSet,
    pub expected: PredicationClass,
    pub witnesses: BTreeMap<String, Witness>,
    pub notes: BTreeMap<String, String>,
}

impl ScenarioReport {
    pub fn classify(&self) -> Result<PredicationClass, PredicationError> {
        classify(&self.judgments, &self.model, &self.predicate)
    }

    pub fn matches_expected(&self) -> bool {
        self.classify().is_ok_and(|c| c == self.expected)
    }

    pub fn witness(&self, name: &str) -> Option<Witness> {
        self.witnesses.get(name).copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl Serialize for ScenarioReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let classification = self
            .classify()
            .map(|c| c.to_output(&self.predicate))
            .unwrap_or_else(|e| serde_json::json!({ "error": e.to_string() }));
        let mut m = s.serialize_map(Some(8))?;
        m.serialize_entry("scenarioName", &self.name)?;
        m.serialize_entry("predicate", &self.predicate)?;
        m.serialize_entry("model", &self.model)?;
        m.serialize_entry("judgments", &self.judgments)?;
        m.serialize_entry("expectedClass", &self.expected.to_output(&self.predicate))?;
        m.serialize_entry("classification", &classification)?;
        m.serialize_entry("numericWitness", &self.witnesses)?;
        m.serialize_entry("notes", &self.notes)?;
        m.end()
    }
}

/// `T` for certainty, `F` for impossibility, `U` otherwise.
pub fn value_from_probability(p: f64) -> Tv3 {
    if (p - 1.0).abs() <= TOLERANCE {
        Tv3::True3
    } else if p.abs() <= TOLERANCE {
        Tv3::False3
    } else {
        Tv3::Undet3
    }
}

/// Shared builder: one entity, the given contexts in order, pairwise
/// incompatible, and the expected class read off the designed values.
pub(crate) struct ReportBuilder {
    name: String,
    entity: String,
    predicate: String,
    judgments: Vec<(String, Tv3)>,
    witnesses: BTreeMap<String, Witness>,
    notes: BTreeMap<String, String>,
}

impl ReportBuilder {
    pub(crate) fn new(name: &str, entity: &str, predicate: &str) -> Self {
        ReportBuilder {
            name: name.to_string(),
            entity: entity.to_string(),
            predicate: predicate.to_string(),
            judgments: Vec::new(),
            witnesses: BTreeMap::new(),
            notes: BTreeMap::new(),
        }
    }

    pub(crate) fn judge(&mut self, context: impl Into<String>, value: Tv3) -> &mut Self {
        self.judgments.push((context.into(), value));
        self
    }

    pub(crate) fn witness(&mut self, name: impl Into<String>, w: impl Into<Witness>) -> &mut Self {
        self.witnesses.insert(name.into(), w.into());
        self
    }

    pub(crate) fn note(&mut self, name: impl Into<String>, text: impl Into<String>) -> &mut Self {
        self.notes.insert(name.into(), text.into());
        self
    }

    pub(crate) fn build(&mut self) -> Result<ScenarioReport, ScenarioError> {
        let mut b = Model::builder()
            .entity(self.entity.clone())
            .predicate(self.predicate.clone());
        for (c, v) in &self.judgments {
            b = b.context(c.clone(), [self.entity.clone()]).value(
                c.clone(),
                self.entity.clone(),
                self.predicate.clone(),
                *v,
            );
        }
        let model = b.pairwise_incompatible().build()?;
        let judgments: JudgmentSet = self
            .judgments
            .iter()
            .map(|(c, v)| Judgment::new(c.clone(), self.predicate.clone(), *v))
            .collect();
        Ok(ScenarioReport {
            name: self.name.clone(),
            predicate: self.predicate.clone(),
            model,
            judgments,
            expected: designed_class(&self.judgments),
            witnesses: std::mem::take(&mut self.witnesses),
            notes: std::mem::take(&mut self.notes),
        })
    }
}

/// The class a scenario is built to exhibit: the value set of its contexts,
/// witnessed by the first context (in name order) carrying each value.
fn designed_class(judgments: &[(String, Tv3)]) -> PredicationClass {
    let set: ValueSet = judgments.iter().map(|(_, v)| *v).collect();
    match SchemaKind::from_value_set(set) {
        None => PredicationClass::degenerate(),
        Some(kind) => {
            let witnesses = kind
                .values()
                .iter()
                .map(|v| {
                    judgments
                        .iter()
                        .filter(|(_, w)| w == v)
                        .map(|(c, _)| c.clone())
                        .min()
                        .expect("value present")
                })
                .collect();
            PredicationClass::schema(kind, witnesses)
        }
    }
}

/// Runs a scenario by name with its default parameters.
pub fn by_name(name: &str, seed: u64) -> Option<Result<ScenarioReport, ScenarioError>> {
    Some(match name {
        "double_slit" => double_slit(&SlitSetup::ALL),
        "cat" => cat(true, seed),
        "wigner" => wigner(&Perspective::ALL, SpinOutcome::Up),
        "epr" => epr(&EprBasis::ALL, AliceOutcome::First),
        "qcc" => qcc(),
        "threshold" => threshold(
            &threshold::DEFAULT_LEVELS,
            threshold::DEFAULT_CUTS.0,
            threshold::DEFAULT_CUTS.1,
        ),
        _ => return None,
    })
}
