//! Contextual seven-valued predication over Kleene three-valued logic.
//!
//! [`logic`] holds the truth values and connectives, [`syntax`] the formula
//! language, [`semantics`] finite models and evaluation, [`predication`] the
//! sevenfold classifier, and [`quantum`] with [`scenarios`] the state-vector
//! toy models that generate judgments.

pub mod logic;
pub mod predication;
pub mod quantum;
pub mod scenarios;
pub mod semantics;
pub mod syntax;

pub use logic::{SchemaKind, Tv3, ValueSet};
pub use predication::{
    classify, classify_with, entails, entails_formula, induced_model,
    mutual_exclusivity_certificate, ClassTag, Entailment, Judgment, JudgmentSet, PredicationClass,
    PredicationError,
};
pub use quantum::{
    inner_product, tensor_product, weak_value, Operator, QuantumError, StateVector, C64,
};
pub use scenarios::{ScenarioError, ScenarioReport, Witness};
pub use semantics::{
    evaluate, evaluate_closed, EvalError, EvalOptions, IncompatibilityMode, Model, ModelError,
};
pub use syntax::{parse, pretty, schema, Formula, Node, ParseError, SourceSpan};
