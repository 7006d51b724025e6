//! JSON model files.
//!
//! ```json
//! { "domain": ["e"], "background": "bg",
//!   "contexts": [{ "name": "c1", "extension": ["e"] }],
//!   "predicates": ["p"],
//!   "valuation": [{ "context": "c1", "entity": "e", "predicate": "p", "value": "T" }],
//!   "incompatible": [["c1", "c2"]] }
//! ```
//!
//! Unlisted valuation entries default to `U`; the count is available from
//! [`Model::defaulted_entries`].

use serde::{Deserialize, Serialize};

use crate::logic::Tv3;

use super::{Model, ModelError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub domain: Vec<String>,
    #[serde(default = "default_background")]
    pub background: String,
    #[serde(default)]
    pub contexts: Vec<ContextFile>,
    #[serde(default)]
    pub predicates: Vec<String>,
    #[serde(default)]
    pub valuation: Vec<ValuationEntry>,
    #[serde(default)]
    pub incompatible: Vec<(String, String)>,
}

fn default_background() -> String {
    "background".to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub name: String,
    #[serde(default)]
    pub extension: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationEntry {
    pub context: String,
    pub entity: String,
    pub predicate: String,
    pub value: Tv3,
}

impl TryFrom<ModelFile> for Model {
    type Error = ModelError;

    fn try_from(file: ModelFile) -> Result<Model, ModelError> {
        let mut b = Model::builder()
            .entities(file.domain)
            .background(file.background);
        for c in file.contexts {
            b = b.context(c.name, c.extension);
        }
        for p in file.predicates {
            b = b.predicate(p);
        }
        for v in file.valuation {
            b = b.value(v.context, v.entity, v.predicate, v.value);
        }
        for (x, y) in file.incompatible {
            b = b.incompatible(x, y);
        }
        b.build()
    }
}

impl From<&Model> for ModelFile {
    fn from(m: &Model) -> ModelFile {
        let mut valuation = Vec::new();
        let columns =
            std::iter::once(m.background()).chain(m.contexts().iter().map(|c| c.name.as_str()));
        for (col, context) in columns.enumerate() {
            for (e, entity) in m.domain().iter().enumerate() {
                for (p, predicate) in m.predicates().iter().enumerate() {
                    valuation.push(ValuationEntry {
                        context: context.to_string(),
                        entity: entity.clone(),
                        predicate: predicate.clone(),
                        value: m.value_at(col, e, p),
                    });
                }
            }
        }
        ModelFile {
            domain: m.domain().to_vec(),
            background: m.background().to_string(),
            contexts: m
                .contexts()
                .iter()
                .map(|c| ContextFile {
                    name: c.name.clone(),
                    extension: c.extension.clone(),
                })
                .collect(),
            predicates: m.predicates().to_vec(),
            valuation,
            incompatible: m
                .incompatible_pairs()
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

impl Model {
    pub fn from_json(text: &str) -> Result<Model, ModelError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        Model::try_from(file)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModelFile::from(self)).expect("model serializes")
    }
}

impl Serialize for Model {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelFile::from(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAT: &str = r#"{
        "domain": ["cat"],
        "background": "bg",
        "contexts": [
            { "name": "closed", "extension": ["cat"] },
            { "name": "opened", "extension": ["cat"] }
        ],
        "predicates": ["alive"],
        "valuation": [
            { "context": "opened", "entity": "cat", "predicate": "alive", "value": "T" }
        ],
        "incompatible": [["closed", "opened"]]
    }"#;

    #[test]
    fn reads_model_file() {
        let m = Model::from_json(CAT).unwrap();
        assert_eq!(m.value("opened", "cat", "alive"), Some(Tv3::True3));
        assert_eq!(m.value("closed", "cat", "alive"), Some(Tv3::Undet3));
        assert_eq!(m.defaulted_entries(), 2);
        assert!(!m.compatible("opened", "closed").unwrap());
    }

    #[test]
    fn writes_total_valuation() {
        let m = Model::from_json(CAT).unwrap();
        let file = ModelFile::from(&m);
        assert_eq!(file.valuation.len(), 3);
        let again = Model::try_from(file).unwrap();
        assert_eq!(again.defaulted_entries(), 0);
        assert_eq!(again.value("opened", "cat", "alive"), Some(Tv3::True3));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(Model::from_json("{"), Err(ModelError::Json(_))));
        assert!(matches!(
            Model::from_json(r#"{"domain": [], "color": 1}"#),
            Err(ModelError::Json(_))
        ));
        let bad_value = CAT.replace("\"T\"", "\"maybe\"");
        assert!(matches!(
            Model::from_json(&bad_value),
            Err(ModelError::Json(_))
        ));
    }
}
