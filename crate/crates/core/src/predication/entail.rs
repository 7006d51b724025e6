//! Entailment confined to a single context.
//!
//! Judgments under one context never license conclusions under another, so a
//! contradiction between incompatible contexts cannot spread.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::logic::{conj3, disj3, iff3, impl3, neg3, Tv3, ValueSet};
use crate::syntax::{Formula, Node};

use super::{Judgment, JudgmentSet, PredicationError};
use crate::semantics::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Entailment {
    Yes,
    No,
    Undetermined,
}

/// Whether `js` settles `query` within the query's context.
///
/// `Yes` when `js` contains the query, `No` when it assigns the same
/// (context, predicate) a different value, `Undetermined` otherwise.
pub fn entails(
    js: &JudgmentSet,
    m: &Model,
    query: &Judgment,
) -> Result<Entailment, PredicationError> {
    if !m.has_context(&query.context) {
        return Err(PredicationError::UndeclaredName(query.context.clone()));
    }
    let same: Vec<&Judgment> = js
        .iter()
        .filter(|j| j.context == query.context && j.predicate == query.predicate)
        .collect();
    Ok(if same.iter().any(|j| j.value == query.value) {
        Entailment::Yes
    } else if !same.is_empty() {
        Entailment::No
    } else {
        Entailment::Undetermined
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EntailError {
    #[error(transparent)]
    Predication(#[from] PredicationError),
    #[error("query must be a quantifier-free formula over content predicates")]
    NotPropositional,
}

/// Connective closure of the judgments under `context`.
///
/// Each predicate in `query` takes the values asserted for it under
/// `context`, or any of `T`, `F`, `U` when nothing is asserted. The answer is
/// `Yes` (or `No`) when every such assignment gives `query` the value
/// `value` (or one and the same other value), and `Undetermined` otherwise.
pub fn entails_formula(
    js: &JudgmentSet,
    m: &Model,
    context: &str,
    query: &Formula,
    value: Tv3,
) -> Result<Entailment, EntailError> {
    if !m.has_context(context) {
        return Err(PredicationError::UndeclaredName(context.to_string()).into());
    }
    let mut atoms: BTreeMap<&str, ValueSet> = BTreeMap::new();
    collect_atoms(query, m, &mut atoms)?;
    for j in js.iter().filter(|j| j.context == context) {
        if let Some(set) = atoms.get_mut(j.predicate.as_str()) {
            set.insert(j.value);
        }
    }
    let names: Vec<&str> = atoms.keys().copied().collect();
    let choices: Vec<Vec<Tv3>> = atoms
        .values()
        .map(|s| {
            if s.is_empty() {
                Tv3::ALL.to_vec()
            } else {
                s.values().collect()
            }
        })
        .collect();

    let mut outcomes = ValueSet::EMPTY;
    let mut assignment = vec![0usize; names.len()];
    loop {
        let lookup = |name: &str| {
            let i = names
                .iter()
                .position(|n| *n == name)
                .expect("atom collected");
            choices[i][assignment[i]]
        };
        outcomes.insert(eval(query, &lookup));
        // Odometer over the choice lists.
        let mut k = 0;
        while k < assignment.len() {
            assignment[k] += 1;
            if assignment[k] < choices[k].len() {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == assignment.len() {
            break;
        }
    }

    Ok(match outcomes.len() {
        1 if outcomes.contains(value) => Entailment::Yes,
        1 => Entailment::No,
        _ => Entailment::Undetermined,
    })
}

fn collect_atoms<'a>(
    f: &'a Formula,
    m: &Model,
    out: &mut BTreeMap<&'a str, ValueSet>,
) -> Result<(), EntailError> {
    match &f.node {
        Node::PredicateApp { name, .. } if !m.has_context(name) => {
            out.entry(name.as_str()).or_default();
            Ok(())
        }
        Node::PredicateApp { .. }
        | Node::ContextGuard { .. }
        | Node::ForAll { .. }
        | Node::Exists { .. } => Err(EntailError::NotPropositional),
        _ => f
            .children()
            .into_iter()
            .try_for_each(|c| collect_atoms(c, m, out)),
    }
}

fn eval(f: &Formula, lookup: &impl Fn(&str) -> Tv3) -> Tv3 {
    match &f.node {
        Node::PredicateApp { name, .. } => lookup(name),
        Node::Not { operand } => neg3(eval(operand, lookup)),
        Node::And { left, right } => conj3(eval(left, lookup), eval(right, lookup)),
        Node::Or { left, right } => disj3(eval(left, lookup), eval(right, lookup)),
        Node::Implies { left, right } => impl3(eval(left, lookup), eval(right, lookup)),
        Node::Iff { left, right } => iff3(eval(left, lookup), eval(right, lookup)),
        _ => unreachable!("rejected by collect_atoms"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use Tv3::*;

    fn setup() -> (JudgmentSet, Model) {
        let js = [
            Judgment::new("c1", "p", True3),
            Judgment::new("c2", "p", False3),
        ]
        .into_iter()
        .collect();
        let m = Model::builder()
            .entity("e")
            .context("c1", ["e"])
            .context("c2", ["e"])
            .context("c3", ["e"])
            .predicate("p")
            .predicate("r")
            .pairwise_incompatible()
            .build()
            .unwrap();
        (js, m)
    }

    #[test]
    fn contradiction_does_not_explode() {
        let (js, m) = setup();
        let q = Judgment::new("c3", "r", True3);
        assert_eq!(entails(&js, &m, &q).unwrap(), Entailment::Undetermined);
        let q = Judgment::new("c1", "r", True3);
        assert_eq!(entails(&js, &m, &q).unwrap(), Entailment::Undetermined);
        let q = Judgment::new("c3", "p", False3);
        assert_eq!(entails(&js, &m, &q).unwrap(), Entailment::Undetermined);
    }

    #[test]
    fn reflexive_and_conflicting() {
        let (js, m) = setup();
        assert_eq!(
            entails(&js, &m, &Judgment::new("c1", "p", True3)).unwrap(),
            Entailment::Yes
        );
        assert_eq!(
            entails(&js, &m, &Judgment::new("c1", "p", False3)).unwrap(),
            Entailment::No
        );
        assert!(entails(&js, &m, &Judgment::new("zz", "p", True3)).is_err());
    }

    #[test]
    fn connective_closure_within_context() {
        let (js, m) = setup();
        let f = parse("p(x) | r(x)").unwrap();
        assert_eq!(
            entails_formula(&js, &m, "c1", &f, True3).unwrap(),
            Entailment::Yes
        );
        assert_eq!(
            entails_formula(&js, &m, "c2", &f, True3).unwrap(),
            Entailment::Undetermined
        );
        let f = parse("p(x) & ~p(x)").unwrap();
        assert_eq!(
            entails_formula(&js, &m, "c1", &f, False3).unwrap(),
            Entailment::Yes
        );
        assert_eq!(
            entails_formula(&js, &m, "c1", &f, True3).unwrap(),
            Entailment::No
        );
        // Excluded middle is not a tautology when r may be U.
        let f = parse("r(x) | ~r(x)").unwrap();
        assert_eq!(
            entails_formula(&js, &m, "c1", &f, True3).unwrap(),
            Entailment::Undetermined
        );
        let f = parse("forall x. p(x)").unwrap();
        assert_eq!(
            entails_formula(&js, &m, "c1", &f, True3),
            Err(EntailError::NotPropositional)
        );
        let f = parse("c2(x) -> p(x)").unwrap();
        assert_eq!(
            entails_formula(&js, &m, "c1", &f, True3),
            Err(EntailError::NotPropositional)
        );
    }
}
