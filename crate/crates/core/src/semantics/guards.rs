use std::collections::BTreeSet;
use std::fmt;

use crate::logic::{SchemaKind, Tv3};
use crate::syntax::{Formula, Node, INDETERMINACY_PREFIX};

/// What a guarded clause asserts about the schema predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consequent {
    Holds(String),
    Fails(String),
    /// The indeterminacy marker for the predicate.
    Indeterminate(String),
}

impl Consequent {
    pub fn predicate(&self) -> &str {
        match self {
            Consequent::Holds(p) | Consequent::Fails(p) | Consequent::Indeterminate(p) => p,
        }
    }

    pub fn value(&self) -> Tv3 {
        match self {
            Consequent::Holds(_) => Tv3::True3,
            Consequent::Fails(_) => Tv3::False3,
            Consequent::Indeterminate(_) => Tv3::Undet3,
        }
    }
}

impl fmt::Display for Consequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Consequent::Holds(p) => write!(f, "{p}"),
            Consequent::Fails(p) => write!(f, "~{p}"),
            Consequent::Indeterminate(p) => write!(f, "U({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula is not an instance of the seven predication schemas: {0}")]
pub struct NotASchema(pub String);

/// A formula recognised as one of the seven schemas, up to renaming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaMatch {
    pub kind: SchemaKind,
    pub contexts: Vec<String>,
    pub predicate: String,
    /// Guarded clauses in textual order.
    pub clauses: Vec<(String, Consequent)>,
}

/// Context/consequent pairs of a schema instance, in textual order.
pub fn guard_of(f: &Formula) -> Result<Vec<(String, Consequent)>, NotASchema> {
    match_schema(f).map(|m| m.clauses)
}

fn flatten_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match &f.node {
        Node::And { left, right } => {
            flatten_and(left, out);
            flatten_and(right, out);
        }
        _ => out.push(f),
    }
}

fn atom_on<'a>(f: &'a Formula, var: &str) -> Option<&'a str> {
    match f.as_atom() {
        Some((name, v)) if v == var => Some(name),
        _ => None,
    }
}

pub fn match_schema(f: &Formula) -> Result<SchemaMatch, NotASchema> {
    let not = |why: &str| NotASchema(why.to_string());
    let Node::ForAll { var, body } = &f.node else {
        return Err(not("expected a universally quantified formula"));
    };

    let mut items = Vec::new();
    flatten_and(body, &mut items);

    let mut clauses: Vec<(String, Consequent)> = Vec::new();
    let mut pairs: BTreeSet<(String, String)> = BTreeSet::new();
    for item in items {
        match &item.node {
            Node::Implies { left, right } => {
                if !pairs.is_empty() {
                    return Err(not("guarded clause after an incompatibility clause"));
                }
                let Some(context) = atom_on(left, var) else {
                    return Err(not("implication without a context guard"));
                };
                let consequent = match &right.node {
                    Node::PredicateApp { .. } => {
                        let name = atom_on(right, var)
                            .ok_or_else(|| not("consequent on another variable"))?;
                        match name.strip_prefix(INDETERMINACY_PREFIX) {
                            Some(base) if !base.is_empty() => {
                                Consequent::Indeterminate(base.to_string())
                            }
                            _ => Consequent::Holds(name.to_string()),
                        }
                    }
                    Node::Not { operand } if matches!(operand.node, Node::PredicateApp { .. }) => {
                        let name = atom_on(operand, var)
                            .ok_or_else(|| not("consequent on another variable"))?;
                        Consequent::Fails(name.to_string())
                    }
                    _ => return Err(not("consequent is not p, ~p or the indeterminacy marker")),
                };
                clauses.push((context.to_string(), consequent));
            }
            Node::Not { operand } => {
                let Node::Iff { left, right } = &operand.node else {
                    return Err(not("negation that is not an incompatibility clause"));
                };
                let (Some(a), Some(b)) = (atom_on(left, var), atom_on(right, var)) else {
                    return Err(not("incompatibility clause between non-guards"));
                };
                let pair = if a <= b { (a, b) } else { (b, a) };
                if a == b || !pairs.insert((pair.0.to_string(), pair.1.to_string())) {
                    return Err(not("repeated or reflexive incompatibility clause"));
                }
            }
            _ => {
                return Err(not(
                    "conjunct is neither a guarded clause nor an incompatibility clause",
                ))
            }
        }
    }

    if clauses.is_empty() || clauses.len() > 3 {
        return Err(not("expected between one and three guarded clauses"));
    }
    let predicate = clauses[0].1.predicate().to_string();
    if clauses.iter().any(|(_, c)| c.predicate() != predicate) {
        return Err(not("guarded clauses concern different predicates"));
    }
    let contexts: Vec<String> = clauses.iter().map(|(c, _)| c.clone()).collect();
    for (i, c) in contexts.iter().enumerate() {
        if contexts[..i].contains(c) || *c == predicate {
            return Err(not("context repeated"));
        }
    }
    let values: Vec<Tv3> = clauses.iter().map(|(_, c)| c.value()).collect();
    let kind = SchemaKind::ALL
        .into_iter()
        .find(|k| k.values() == values.as_slice())
        .ok_or_else(|| not("value pattern is not one of the seven predications"))?;

    let mut expected = BTreeSet::new();
    for (i, a) in contexts.iter().enumerate() {
        for b in &contexts[i + 1..] {
            let pair = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            expected.insert(pair);
        }
    }
    if pairs != expected {
        return Err(not(
            "incompatibility clauses do not cover exactly the context pairs",
        ));
    }

    Ok(SchemaMatch {
        kind,
        contexts,
        predicate,
        clauses,
    })
}
