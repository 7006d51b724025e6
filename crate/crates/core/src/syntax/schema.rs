use crate::logic::{SchemaKind, Tv3};

use super::{is_identifier, Formula};

/// Variable bound by every schema formula.
pub const SCHEMA_VARIABLE: &str = "x";

/// Prefix of the derived atom stating that a predicate is indeterminate.
///
/// `undet_p(x)` holds (bivalently) iff the valuation of `p` at `x` in the
/// current context is `U`. Nothing is stored for it in a model; it is read
/// off the valuation of `p`.
pub const INDETERMINACY_PREFIX: &str = "undet_";

pub fn indeterminacy_marker(predicate: &str) -> String {
    format!("{INDETERMINACY_PREFIX}{predicate}")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("predication {kind} needs {expected} context(s), got {got}")]
    ArityMismatch {
        kind: SchemaKind,
        expected: usize,
        got: usize,
    },
    #[error("context `{0}` listed more than once")]
    DuplicateContext(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
}

/// Expanded quantified formula of a predication.
///
/// Guarded clauses come first in the order T, F, U, followed by the pairwise
/// incompatibility clauses `~(c_i(x) <-> c_j(x))` in the order (1,2), (2,3),
/// (1,3). The universal quantifier scopes over the whole conjunction.
pub fn schema(
    kind: SchemaKind,
    contexts: &[&str],
    predicate: &str,
) -> Result<Formula, SchemaError> {
    if contexts.len() != kind.arity() {
        return Err(SchemaError::ArityMismatch {
            kind,
            expected: kind.arity(),
            got: contexts.len(),
        });
    }
    for (i, c) in contexts.iter().enumerate() {
        if contexts[..i].contains(c) {
            return Err(SchemaError::DuplicateContext(c.to_string()));
        }
    }
    for name in contexts.iter().copied().chain([predicate]) {
        if !is_identifier(name) {
            return Err(SchemaError::InvalidName(name.to_string()));
        }
    }
    if contexts.contains(&predicate) {
        return Err(SchemaError::DuplicateContext(predicate.to_string()));
    }

    let x = SCHEMA_VARIABLE;
    let consequent = |v: Tv3| match v {
        Tv3::True3 => Formula::pred(predicate, x),
        Tv3::False3 => Formula::not(Formula::pred(predicate, x)),
        Tv3::Undet3 => Formula::pred(indeterminacy_marker(predicate), x),
    };

    let mut clauses: Vec<Formula> = kind
        .values()
        .iter()
        .zip(contexts)
        .map(|(v, c)| Formula::implies(Formula::guard(*c, x), consequent(*v)))
        .collect();

    let pairs: &[(usize, usize)] = match contexts.len() {
        1 => &[],
        2 => &[(0, 1)],
        _ => &[(0, 1), (1, 2), (0, 2)],
    };
    clauses.extend(pairs.iter().map(|&(i, j)| {
        Formula::not(Formula::iff(
            Formula::guard(contexts[i], x),
            Formula::guard(contexts[j], x),
        ))
    }));

    Ok(Formula::forall(x, Formula::conjunction(clauses)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, pretty};

    #[test]
    fn first_schema() {
        let f = schema(SchemaKind::P1, &["c"], "p").unwrap();
        assert_eq!(f, parse("forall x. (c(x) -> p(x))").unwrap());
    }

    #[test]
    fn seventh_schema_text() {
        let f = schema(SchemaKind::P7, &["c1", "c2", "c3"], "p").unwrap();
        assert_eq!(
            pretty(&f),
            "forall x. ((c1(x) -> p(x)) & (c2(x) -> ~p(x)) & (c3(x) -> undet_p(x)) \
             & ~(c1(x) <-> c2(x)) & ~(c2(x) <-> c3(x)) & ~(c1(x) <-> c3(x)))"
        );
        assert_eq!(parse(&pretty(&f)).unwrap(), f);
    }

    #[test]
    fn fourth_schema_matches_bracketed_text() {
        let f = schema(SchemaKind::P4, &["phi", "phi2"], "p").unwrap();
        let text = "forall x. ((phi(x) -> p(x)) & (phi2(x) -> ~p(x))) & ~(phi(x) <-> phi2(x))";
        assert_eq!(parse(text).unwrap(), f);
    }

    #[test]
    fn arity_and_duplicates() {
        assert_eq!(
            schema(SchemaKind::P4, &["c"], "p"),
            Err(SchemaError::ArityMismatch {
                kind: SchemaKind::P4,
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            schema(SchemaKind::P5, &["c", "c"], "p"),
            Err(SchemaError::DuplicateContext("c".into()))
        );
        assert!(matches!(
            schema(SchemaKind::P1, &["forall"], "p"),
            Err(SchemaError::InvalidName(_))
        ));
        assert!(schema(SchemaKind::P1, &["p"], "p").is_err());
    }

    #[test]
    fn seven_distinct_formulas() {
        let names = ["a", "b", "c"];
        let all: Vec<_> = SchemaKind::ALL
            .iter()
            .map(|k| schema(*k, &names[..k.arity()], "p").unwrap())
            .collect();
        for i in 0..7 {
            for j in i + 1..7 {
                assert_ne!(all[i], all[j]);
            }
            assert_eq!(parse(&pretty(&all[i])).unwrap(), all[i]);
        }
    }
}
