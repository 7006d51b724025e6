//! Finite models and three-valued evaluation.
//!
//! A [`Model`] has a finite domain, a set of named contexts (each a bivalent
//! guard given by its extension), a set of predicates, and a total valuation
//! assigning a [`Tv3`] to every (context, entity, predicate) triple. One extra
//! valuation column, the *background*, is used for predicate lookups that
//! occur outside any guard.

mod eval;
mod guards;
mod json;

use std::collections::{BTreeMap, BTreeSet};

use crate::logic::Tv3;
use crate::syntax::is_identifier;

pub use eval::{check_incompatibility, evaluate, evaluate_closed, Env, EvalError, EvalOptions};
pub use guards::{guard_of, match_schema, Consequent, NotASchema, SchemaMatch};
pub use json::{ContextFile, ModelFile, ValuationEntry};

/// How `~(c1(x) <-> c2(x))` between two context guards is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum IncompatibilityMode {
    /// Look the pair up in the model's declared compatibility relation.
    #[default]
    Relational,
    /// Compare the guards' extensions.
    Extensional(ExtensionalReading),
}

/// Quantifier used by the extensional reading of an incompatibility clause.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExtensionalReading {
    /// Incompatible iff some entity is in exactly one extension.
    #[default]
    Somewhere,
    /// Incompatible iff every entity is in exactly one extension. Inside a
    /// formula this is the literal per-entity reading of the clause.
    Everywhere,
}

impl IncompatibilityMode {
    pub fn name(self) -> &'static str {
        match self {
            IncompatibilityMode::Relational => "relational",
            IncompatibilityMode::Extensional(ExtensionalReading::Somewhere) => "extensional",
            IncompatibilityMode::Extensional(ExtensionalReading::Everywhere) => {
                "extensional-everywhere"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextDef {
    pub name: String,
    /// Entities for which the guard holds, in domain order.
    pub extension: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("{kind} `{name}` declared more than once")]
    Duplicate { kind: &'static str, name: String },
    #[error("`{0}` is declared as more than one of entity, context, predicate or background")]
    NameClash(String),
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String },
    #[error("context `{context}` lists `{entity}`, which is not in the domain")]
    ExtensionOutsideDomain { context: String, entity: String },
    #[error("context `{0}` cannot be incompatible with itself")]
    SelfIncompatible(String),
    #[error("conflicting values for ({context}, {entity}, {predicate})")]
    ConflictingValuation {
        context: String,
        entity: String,
        predicate: String,
    },
    #[error("invalid model file: {0}")]
    Json(String),
}

/// An immutable finite model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    domain: Vec<String>,
    background: String,
    contexts: Vec<ContextDef>,
    predicates: Vec<String>,
    /// Row-major `[column][entity][predicate]`; column 0 is the background.
    values: Vec<Tv3>,
    /// Per context, membership of each domain entity.
    membership: Vec<Vec<bool>>,
    incompatible: BTreeSet<(usize, usize)>,
    defaulted: usize,
}

impl Model {
    pub fn builder() -> ModelBuilder {
        ModelBuilder::default()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn background(&self) -> &str {
        &self.background
    }

    pub fn contexts(&self) -> &[ContextDef] {
        &self.contexts
    }

    pub fn predicates(&self) -> &[String] {
        &self.predicates
    }

    /// Number of valuation entries that were not given and defaulted to `U`.
    pub fn defaulted_entries(&self) -> usize {
        self.defaulted
    }

    pub fn has_context(&self, name: &str) -> bool {
        self.context_index(name).is_some()
    }

    pub fn has_predicate(&self, name: &str) -> bool {
        self.predicate_index(name).is_some()
    }

    pub fn context(&self, name: &str) -> Option<&ContextDef> {
        self.context_index(name).map(|i| &self.contexts[i])
    }

    pub(crate) fn context_index(&self, name: &str) -> Option<usize> {
        self.contexts.iter().position(|c| c.name == name)
    }

    pub(crate) fn predicate_index(&self, name: &str) -> Option<usize> {
        self.predicates.iter().position(|p| p == name)
    }

    pub(crate) fn in_extension(&self, context: usize, entity: usize) -> bool {
        self.membership[context][entity]
    }

    /// Valuation lookup by column (0 = background, `i + 1` = context `i`).
    pub(crate) fn value_at(&self, column: usize, entity: usize, predicate: usize) -> Tv3 {
        let np = self.predicates.len();
        let ne = self.domain.len();
        self.values[(column * ne + entity) * np + predicate]
    }

    /// Value of `predicate` for `entity` under `context`, where `context` may
    /// also be the background name.
    pub fn value(&self, context: &str, entity: &str, predicate: &str) -> Option<Tv3> {
        let column = if context == self.background {
            0
        } else {
            self.context_index(context)? + 1
        };
        let e = self.domain.iter().position(|d| d == entity)?;
        let p = self.predicate_index(predicate)?;
        Some(self.value_at(column, e, p))
    }

    /// True when the two contexts may be jointly realized. Every context is
    /// compatible with itself.
    pub fn compatible(&self, a: &str, b: &str) -> Result<bool, ModelError> {
        let ia = self.require_context(a)?;
        let ib = self.require_context(b)?;
        Ok(self.compatible_idx(ia, ib))
    }

    pub(crate) fn compatible_idx(&self, a: usize, b: usize) -> bool {
        a == b || !self.incompatible.contains(&(a.min(b), a.max(b)))
    }

    pub(crate) fn require_context(&self, name: &str) -> Result<usize, ModelError> {
        self.context_index(name)
            .ok_or_else(|| ModelError::Undeclared {
                kind: "context",
                name: name.to_string(),
            })
    }

    /// Incompatible pairs, each ordered by declaration index.
    pub fn incompatible_pairs(&self) -> Vec<(&str, &str)> {
        self.incompatible
            .iter()
            .map(|&(a, b)| {
                (
                    self.contexts[a].name.as_str(),
                    self.contexts[b].name.as_str(),
                )
            })
            .collect()
    }
}

/// Incremental constructor for [`Model`]; all checks happen in [`build`].
///
/// [`build`]: ModelBuilder::build
#[derive(Clone, Debug, Default)]
pub struct ModelBuilder {
    domain: Vec<String>,
    background: Option<String>,
    contexts: Vec<ContextDef>,
    predicates: Vec<String>,
    valuation: Vec<(String, String, String, Tv3)>,
    incompatible: Vec<(String, String)>,
}

impl ModelBuilder {
    pub fn entity(mut self, name: impl Into<String>) -> Self {
        self.domain.push(name.into());
        self
    }

    pub fn entities<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.domain.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn background(mut self, name: impl Into<String>) -> Self {
        self.background = Some(name.into());
        self
    }

    pub fn context<S: Into<String>>(
        mut self,
        name: impl Into<String>,
        extension: impl IntoIterator<Item = S>,
    ) -> Self {
        self.contexts.push(ContextDef {
            name: name.into(),
            extension: extension.into_iter().map(Into::into).collect(),
        });
        self
    }

    pub fn predicate(mut self, name: impl Into<String>) -> Self {
        self.predicates.push(name.into());
        self
    }

    pub fn value(
        mut self,
        context: impl Into<String>,
        entity: impl Into<String>,
        predicate: impl Into<String>,
        value: Tv3,
    ) -> Self {
        self.valuation
            .push((context.into(), entity.into(), predicate.into(), value));
        self
    }

    pub fn incompatible(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.incompatible.push((a.into(), b.into()));
        self
    }

    /// Marks every pair of distinct declared contexts incompatible.
    pub fn pairwise_incompatible(mut self) -> Self {
        let names: Vec<String> = self.contexts.iter().map(|c| c.name.clone()).collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                self.incompatible.push((a.clone(), b.clone()));
            }
        }
        self
    }

    pub fn build(self) -> Result<Model, ModelError> {
        let background = self.background.unwrap_or_else(|| "background".to_string());

        let mut seen: BTreeMap<String, &'static str> = BTreeMap::new();
        let mut declare = |name: &str, kind: &'static str| -> Result<(), ModelError> {
            if !is_identifier(name) {
                return Err(ModelError::InvalidName(name.to_string()));
            }
            match seen.get(name) {
                Some(k) if *k == kind => Err(ModelError::Duplicate {
                    kind,
                    name: name.to_string(),
                }),
                Some(_) => Err(ModelError::NameClash(name.to_string())),
                None => {
                    seen.insert(name.to_string(), kind);
                    Ok(())
                }
            }
        };
        for e in &self.domain {
            declare(e, "entity")?;
        }
        declare(&background, "background")?;
        for c in &self.contexts {
            declare(&c.name, "context")?;
        }
        for p in &self.predicates {
            declare(p, "predicate")?;
        }

        let entity_index = |name: &str| self.domain.iter().position(|d| d == name);
        let mut membership = Vec::with_capacity(self.contexts.len());
        for c in &self.contexts {
            let mut row = vec![false; self.domain.len()];
            for e in &c.extension {
                let i = entity_index(e).ok_or_else(|| ModelError::ExtensionOutsideDomain {
                    context: c.name.clone(),
                    entity: e.clone(),
                })?;
                row[i] = true;
            }
            membership.push(row);
        }

        let ne = self.domain.len();
        let np = self.predicates.len();
        let columns = self.contexts.len() + 1;
        let mut values: Vec<Option<Tv3>> = vec![None; columns * ne * np];
        for (context, entity, predicate, value) in &self.valuation {
            let column = if *context == background {
                0
            } else {
                1 + self
                    .contexts
                    .iter()
                    .position(|c| c.name == *context)
                    .ok_or_else(|| ModelError::Undeclared {
                        kind: "context",
                        name: context.clone(),
                    })?
            };
            let e = entity_index(entity).ok_or_else(|| ModelError::Undeclared {
                kind: "entity",
                name: entity.clone(),
            })?;
            let p = self
                .predicates
                .iter()
                .position(|q| q == predicate)
                .ok_or_else(|| ModelError::Undeclared {
                    kind: "predicate",
                    name: predicate.clone(),
                })?;
            let slot = &mut values[(column * ne + e) * np + p];
            match slot {
                Some(old) if old != value => {
                    return Err(ModelError::ConflictingValuation {
                        context: context.clone(),
                        entity: entity.clone(),
                        predicate: predicate.clone(),
                    })
                }
                _ => *slot = Some(*value),
            }
        }
        let defaulted = values.iter().filter(|v| v.is_none()).count();
        let values = values
            .into_iter()
            .map(|v| v.unwrap_or(Tv3::Undet3))
            .collect();

        let mut incompatible = BTreeSet::new();
        for (a, b) in &self.incompatible {
            let find = |n: &str| {
                self.contexts
                    .iter()
                    .position(|c| c.name == n)
                    .ok_or_else(|| ModelError::Undeclared {
                        kind: "context",
                        name: n.to_string(),
                    })
            };
            let (ia, ib) = (find(a)?, find(b)?);
            if ia == ib {
                return Err(ModelError::SelfIncompatible(a.clone()));
            }
            incompatible.insert((ia.min(ib), ia.max(ib)));
        }

        // Extensions are kept in domain order.
        let contexts = self
            .contexts
            .into_iter()
            .zip(&membership)
            .map(|(c, row)| ContextDef {
                name: c.name,
                extension: self
                    .domain
                    .iter()
                    .zip(row)
                    .filter(|(_, m)| **m)
                    .map(|(e, _)| e.clone())
                    .collect(),
            })
            .collect();

        Ok(Model {
            domain: self.domain,
            background,
            contexts,
            predicates: self.predicates,
            values,
            membership,
            incompatible,
            defaulted,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tv3::*;

    fn two_context_model() -> Model {
        Model::builder()
            .entities(["e1", "e2"])
            .background("bg")
            .context("c1", ["e1"])
            .context("c2", ["e2", "e1"])
            .predicate("p")
            .value("c1", "e1", "p", True3)
            .value("bg", "e2", "p", False3)
            .incompatible("c2", "c1")
            .build()
            .unwrap()
    }

    #[test]
    fn lookups_and_defaults() {
        let m = two_context_model();
        assert_eq!(m.value("c1", "e1", "p"), Some(True3));
        assert_eq!(m.value("bg", "e2", "p"), Some(False3));
        assert_eq!(m.value("c2", "e2", "p"), Some(Undet3));
        assert_eq!(m.value("c3", "e2", "p"), None);
        // 3 columns x 2 entities x 1 predicate, two given.
        assert_eq!(m.defaulted_entries(), 4);
        assert_eq!(m.context("c2").unwrap().extension, vec!["e1", "e2"]);
    }

    #[test]
    fn compatibility_is_symmetric_and_reflexive() {
        let m = two_context_model();
        assert!(!m.compatible("c1", "c2").unwrap());
        assert!(!m.compatible("c2", "c1").unwrap());
        assert!(m.compatible("c1", "c1").unwrap());
        assert!(m.compatible("c1", "nope").is_err());
        assert_eq!(m.incompatible_pairs(), vec![("c1", "c2")]);
    }

    #[test]
    fn rejects_bad_models() {
        let base = || {
            Model::builder()
                .entity("e")
                .context("c", ["e"])
                .predicate("p")
        };
        assert!(matches!(
            base().predicate("c").build(),
            Err(ModelError::NameClash(n)) if n == "c"
        ));
        assert!(matches!(
            base().predicate("p").build(),
            Err(ModelError::Duplicate { .. })
        ));
        assert!(matches!(
            base().context("d", ["zz"]).build(),
            Err(ModelError::ExtensionOutsideDomain { .. })
        ));
        assert!(matches!(
            base().incompatible("c", "c").build(),
            Err(ModelError::SelfIncompatible(_))
        ));
        assert!(matches!(
            base()
                .value("c", "e", "p", True3)
                .value("c", "e", "p", False3)
                .build(),
            Err(ModelError::ConflictingValuation { .. })
        ));
        assert!(base()
            .value("c", "e", "p", True3)
            .value("c", "e", "p", True3)
            .build()
            .is_ok());
        assert!(matches!(
            base().value("c", "e", "q", True3).build(),
            Err(ModelError::Undeclared { .. })
        ));
        assert!(matches!(
            base().entity("bad name").build(),
            Err(ModelError::InvalidName(_))
        ));
    }

    #[test]
    fn zero_contexts_and_empty_domain_are_legal() {
        let m = Model::builder().predicate("p").build().unwrap();
        assert!(m.contexts().is_empty());
        assert!(m.domain().is_empty());
        assert_eq!(m.background(), "background");
    }
}
