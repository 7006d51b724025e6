//! Sevenfold classification of context-tagged judgments.
//!
//! A judgment asserts one of `T`, `F`, `U` for a predicate under a context.
//! Classification is per predicate: the set of distinct values asserted
//! across contexts picks one of the seven predications, provided no context
//! contradicts itself and every pair of contexts carrying different values is
//! incompatible in the model.

mod certificate;
mod entail;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::logic::{SchemaKind, Tv3, ValueSet};
use crate::semantics::{check_incompatibility, IncompatibilityMode, Model, ModelError};
use crate::syntax::{pretty, schema, Formula};

pub use certificate::{mutual_exclusivity_certificate, CertificateRow, ExclusivityCertificate};
pub use entail::{entails, entails_formula, EntailError, Entailment};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Judgment {
    pub context: String,
    pub predicate: String,
    pub value: Tv3,
}

impl Judgment {
    pub fn new(context: impl Into<String>, predicate: impl Into<String>, value: Tv3) -> Judgment {
        Judgment {
            context: context.into(),
            predicate: predicate.into(),
            value,
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.context, self.predicate, self.value)
    }
}

/// Judgments as read from input. Conflicting duplicates are representable so
/// that [`classify`] can report them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JudgmentSet(Vec<Judgment>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("judgment {new} conflicts with {existing}")]
pub struct ConflictingJudgment {
    pub existing: Judgment,
    pub new: Judgment,
}

impl JudgmentSet {
    pub fn new() -> JudgmentSet {
        JudgmentSet::default()
    }

    /// Adds a judgment, refusing a second value for the same
    /// (context, predicate). Exact repeats are absorbed.
    pub fn insert(&mut self, j: Judgment) -> Result<(), ConflictingJudgment> {
        if let Some(existing) = self
            .0
            .iter()
            .find(|e| e.context == j.context && e.predicate == j.predicate)
        {
            if existing.value != j.value {
                return Err(ConflictingJudgment {
                    existing: existing.clone(),
                    new: j,
                });
            }
            return Ok(());
        }
        self.0.push(j);
        Ok(())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Judgment> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct predicates, sorted.
    pub fn predicates(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.0.iter().map(|j| j.predicate.as_str()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn from_json(text: &str) -> Result<JudgmentSet, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl FromIterator<Judgment> for JudgmentSet {
    /// Keeps every judgment, including conflicting duplicates.
    fn from_iter<I: IntoIterator<Item = Judgment>>(iter: I) -> Self {
        JudgmentSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a JudgmentSet {
    type Item = &'a Judgment;
    type IntoIter = std::slice::Iter<'a, Judgment>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Schema(SchemaKind),
    Inconsistent,
    Degenerate,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Schema(k) => k.tag(),
            ClassTag::Inconsistent => "Inconsistent",
            ClassTag::Degenerate => "Degenerate",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ClassTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Result of classification.
///
/// `P1`..`P3` carry one context, `P4`..`P6` two, `P7` three; `Inconsistent`
/// carries the offending context and `Degenerate` none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicationClass {
    #[serde(rename = "class")]
    tag: ClassTag,
    contexts: Vec<String>,
}

impl PredicationClass {
    pub fn schema(kind: SchemaKind, contexts: Vec<String>) -> PredicationClass {
        assert_eq!(
            contexts.len(),
            kind.arity(),
            "witness count must match {kind}"
        );
        PredicationClass {
            tag: ClassTag::Schema(kind),
            contexts,
        }
    }

    pub fn inconsistent(context: impl Into<String>) -> PredicationClass {
        PredicationClass {
            tag: ClassTag::Inconsistent,
            contexts: vec![context.into()],
        }
    }

    pub fn degenerate() -> PredicationClass {
        PredicationClass {
            tag: ClassTag::Degenerate,
            contexts: vec![],
        }
    }

    pub fn tag(&self) -> ClassTag {
        self.tag
    }

    pub fn kind(&self) -> Option<SchemaKind> {
        match self.tag {
            ClassTag::Schema(k) => Some(k),
            _ => None,
        }
    }

    pub fn contexts(&self) -> &[String] {
        &self.contexts
    }

    /// The quantified formula of this predication over its witness contexts.
    pub fn schema_formula(&self, predicate: &str) -> Option<Formula> {
        let kind = self.kind()?;
        let names: Vec<&str> = self.contexts.iter().map(String::as_str).collect();
        schema(kind, &names, predicate).ok()
    }

    /// JSON object `{ "class", "contexts", "schemaFormula" }`.
    pub fn to_output(&self, predicate: &str) -> serde_json::Value {
        serde_json::json!({
            "class": self.tag.name(),
            "contexts": self.contexts,
            "schemaFormula": self.schema_formula(predicate).map(|f| pretty(&f)),
        })
    }

    /// `P5 (syāt asti cha avaktavyam cha)`, or just the tag.
    pub fn label(&self) -> String {
        match self.tag {
            ClassTag::Schema(k) => format!("{} ({})", k.tag(), k.sanskrit()),
            other => other.name().to_string(),
        }
    }
}

impl fmt::Display for PredicationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if !self.contexts.is_empty() {
            write!(f, " [{}]", self.contexts.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PredicationError {
    #[error("undeclared context `{0}`")]
    UndeclaredName(String),
}

impl From<ModelError> for PredicationError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Undeclared { name, .. } => PredicationError::UndeclaredName(name),
            other => PredicationError::UndeclaredName(other.to_string()),
        }
    }
}

pub(crate) fn check_declared(js: &JudgmentSet, m: &Model) -> Result<(), PredicationError> {
    for j in js {
        if !m.has_context(&j.context) {
            return Err(PredicationError::UndeclaredName(j.context.clone()));
        }
    }
    Ok(())
}

/// Classifies the judgments about `predicate` using the model's declared
/// compatibility relation.
pub fn classify(
    js: &JudgmentSet,
    m: &Model,
    predicate: &str,
) -> Result<PredicationClass, PredicationError> {
    classify_with(js, m, predicate, IncompatibilityMode::Relational)
}

pub fn classify_with(
    js: &JudgmentSet,
    m: &Model,
    predicate: &str,
    mode: IncompatibilityMode,
) -> Result<PredicationClass, PredicationError> {
    check_declared(js, m)?;

    // Sorted by context name so reports and witnesses are deterministic.
    let mut by_context: BTreeMap<&str, Tv3> = BTreeMap::new();
    let mut conflicts: Vec<&str> = Vec::new();
    for j in js.iter().filter(|j| j.predicate == predicate) {
        match by_context.insert(&j.context, j.value) {
            Some(old) if old != j.value => conflicts.push(&j.context),
            _ => {}
        }
    }
    if let Some(c) = conflicts.into_iter().min() {
        return Ok(PredicationClass::inconsistent(c));
    }
    if by_context.is_empty() {
        return Ok(PredicationClass::degenerate());
    }

    let entries: Vec<(&str, Tv3)> = by_context.into_iter().collect();
    for (i, (a, va)) in entries.iter().enumerate() {
        for (b, vb) in &entries[i + 1..] {
            if va != vb && check_incompatibility(m, a, b, mode)? != Tv3::True3 {
                return Ok(PredicationClass::inconsistent(*a));
            }
        }
    }

    let set: ValueSet = entries.iter().map(|(_, v)| *v).collect();
    let kind = SchemaKind::from_value_set(set).expect("nonempty value set");
    let witnesses = kind
        .values()
        .iter()
        .map(|v| {
            entries
                .iter()
                .find(|(_, w)| w == v)
                .map(|(c, _)| c.to_string())
                .expect("value present")
        })
        .collect();
    Ok(PredicationClass::schema(kind, witnesses))
}

/// One-entity model in which each judged context holds of the entity and
/// `predicate` takes the judged value there. Incompatibilities are copied
/// from `m`.
pub fn induced_model(js: &JudgmentSet, m: &Model, predicate: &str) -> Result<Model, ModelError> {
    let mut contexts: Vec<&str> = js
        .iter()
        .filter(|j| j.predicate == predicate)
        .map(|j| j.context.as_str())
        .collect();
    contexts.sort_unstable();
    contexts.dedup();

    let taken = |n: &str| n == predicate || contexts.contains(&n);
    let mut entity = String::from("entity");
    while taken(&entity) {
        entity.push('_');
    }
    let mut background = m.background().to_string();
    while taken(&background) || background == entity {
        background.push('_');
    }

    let mut b = Model::builder()
        .entity(entity.clone())
        .background(background)
        .predicate(predicate);
    for c in &contexts {
        b = b.context(*c, [entity.clone()]);
    }
    for j in js.iter().filter(|j| j.predicate == predicate) {
        b = b.value(j.context.clone(), entity.clone(), predicate, j.value);
    }
    for (x, y) in m.incompatible_pairs() {
        if contexts.contains(&x) && contexts.contains(&y) {
            b = b.incompatible(x, y);
        }
    }
    b.build()
}
