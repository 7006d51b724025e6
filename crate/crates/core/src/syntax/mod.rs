//! Formula language: AST, lexer, parser, pretty-printer and schema builder.
//!
//! Concrete syntax is ASCII (`forall`, `exists`, `~`, `&`, `|`, `->`, `<->`)
//! with the Unicode aliases `∀ ∃ ¬ ∧ ∨ → ↔` accepted by the lexer.
//! Precedence, tightest first: `~`, `&`, `|`, `->`, `<->`. Implication and
//! biconditional associate to the right; a quantifier body extends as far
//! right as possible.
//!
//! Guards and content predicates share one surface form. After parsing, every
//! atom whose name appears as the immediate antecedent of some `->` in the
//! same formula becomes a [`Node::ContextGuard`]; see [`resolve_guards`].

mod file;
mod lexer;
mod parser;
mod pretty;
mod schema;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use file::{parse_file, FormulaEntry};
pub use parser::{parse, parse_closed, ParseError, SyntaxError};
pub use pretty::pretty;
pub use schema::{
    indeterminacy_marker, schema, SchemaError, INDETERMINACY_PREFIX, SCHEMA_VARIABLE,
};

/// Location of a node in its source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    /// Byte offset of the first byte.
    pub start: usize,
    /// Byte offset one past the last byte.
    pub end: usize,
    /// 1-based line of `start`.
    pub line: usize,
    /// 1-based column (in characters) of `start`.
    pub column: usize,
}

impl SourceSpan {
    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            start: self.start,
            end: other.end.max(self.end),
            line: self.line,
            column: self.column,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// A formula together with the span it was parsed from.
///
/// Equality is structural and ignores spans.
#[derive(Clone, Debug, Serialize)]
pub struct Formula {
    #[serde(flatten)]
    pub node: Node,
    pub span: SourceSpan,
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl Eq for Formula {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Node {
    PredicateApp {
        name: String,
        var: String,
    },
    ContextGuard {
        context: String,
        var: String,
    },
    Not {
        operand: Box<Formula>,
    },
    And {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Or {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Implies {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Iff {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    ForAll {
        var: String,
        body: Box<Formula>,
    },
    Exists {
        var: String,
        body: Box<Formula>,
    },
}

impl From<Node> for Formula {
    fn from(node: Node) -> Self {
        Formula {
            node,
            span: SourceSpan::default(),
        }
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, var: impl Into<String>) -> Formula {
        Node::PredicateApp {
            name: name.into(),
            var: var.into(),
        }
        .into()
    }

    pub fn guard(context: impl Into<String>, var: impl Into<String>) -> Formula {
        Node::ContextGuard {
            context: context.into(),
            var: var.into(),
        }
        .into()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(operand: Formula) -> Formula {
        Node::Not {
            operand: Box::new(operand),
        }
        .into()
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Node::And {
            left: Box::new(left),
            right: Box::new(right),
        }
        .into()
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Node::Or {
            left: Box::new(left),
            right: Box::new(right),
        }
        .into()
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Node::Implies {
            left: Box::new(left),
            right: Box::new(right),
        }
        .into()
    }

    pub fn iff(left: Formula, right: Formula) -> Formula {
        Node::Iff {
            left: Box::new(left),
            right: Box::new(right),
        }
        .into()
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Node::ForAll {
            var: var.into(),
            body: Box::new(body),
        }
        .into()
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Node::Exists {
            var: var.into(),
            body: Box::new(body),
        }
        .into()
    }

    /// Left fold of `parts` with `&`. Panics on an empty list.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .expect("conjunction of zero formulas")
    }

    /// Name and variable if this is an atom of either kind.
    pub fn as_atom(&self) -> Option<(&str, &str)> {
        match &self.node {
            Node::PredicateApp { name, var } => Some((name, var)),
            Node::ContextGuard { context, var } => Some((context, var)),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match &self.node {
            Node::PredicateApp { .. } | Node::ContextGuard { .. } => vec![],
            Node::Not { operand } => vec![operand],
            Node::And { left, right }
            | Node::Or { left, right }
            | Node::Implies { left, right }
            | Node::Iff { left, right } => vec![left, right],
            Node::ForAll { body, .. } | Node::Exists { body, .. } => vec![body],
        }
    }

    /// Free variables, sorted, each with the span of its first occurrence.
    pub fn free_vars(&self) -> Vec<(String, SourceSpan)> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<(String, SourceSpan)>) {
            match &f.node {
                Node::PredicateApp { var, .. } | Node::ContextGuard { var, .. } => {
                    if !bound.contains(var) && !out.iter().any(|(v, _)| v == var) {
                        out.push((var.clone(), f.span));
                    }
                }
                Node::ForAll { var, body } | Node::Exists { var, body } => {
                    bound.push(var.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
                _ => {
                    for c in f.children() {
                        walk(c, bound, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn contains_guard(&self) -> bool {
        matches!(self.node, Node::ContextGuard { .. })
            || self.children().into_iter().any(Formula::contains_guard)
    }

    /// Every atom name (guards and predicates) in the formula.
    pub fn names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |name, _| {
            out.insert(name);
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a str, &'a Formula)) {
        if let Some((name, _)) = self.as_atom() {
            f(name, self);
        }
        for c in self.children() {
            c.visit_atoms(f);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self))
    }
}

/// Recomputes which atoms are context guards.
///
/// A name is a guard iff some occurrence of it is the immediate antecedent of
/// an implication. All occurrences of guard names become
/// [`Node::ContextGuard`]; all others become [`Node::PredicateApp`]. The
/// parser applies this to every formula it returns, so a formula satisfies
/// `parse(pretty(f)) == f` exactly when it is a fixpoint of this function.
pub fn resolve_guards(f: Formula) -> Formula {
    fn collect(f: &Formula, out: &mut BTreeSet<String>) {
        if let Node::Implies { left, .. } = &f.node {
            if let Some((name, _)) = left.as_atom() {
                out.insert(name.to_string());
            }
        }
        for c in f.children() {
            collect(c, out);
        }
    }
    fn rebuild(f: Formula, guards: &BTreeSet<String>) -> Formula {
        let span = f.span;
        let r = |b: Box<Formula>| Box::new(rebuild(*b, guards));
        let node = match f.node {
            Node::PredicateApp { name, var } | Node::ContextGuard { context: name, var } => {
                if guards.contains(&name) {
                    Node::ContextGuard { context: name, var }
                } else {
                    Node::PredicateApp { name, var }
                }
            }
            Node::Not { operand } => Node::Not {
                operand: r(operand),
            },
            Node::And { left, right } => Node::And {
                left: r(left),
                right: r(right),
            },
            Node::Or { left, right } => Node::Or {
                left: r(left),
                right: r(right),
            },
            Node::Implies { left, right } => Node::Implies {
                left: r(left),
                right: r(right),
            },
            Node::Iff { left, right } => Node::Iff {
                left: r(left),
                right: r(right),
            },
            Node::ForAll { var, body } => Node::ForAll { var, body: r(body) },
            Node::Exists { var, body } => Node::Exists { var, body: r(body) },
        };
        Formula { node, span }
    }
    let mut guards = BTreeSet::new();
    collect(&f, &mut guards);
    rebuild(f, &guards)
}

/// True for `[A-Za-z_][A-Za-z0-9_]*` that is not a keyword.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !lexer::is_keyword(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_ignores_spans() {
        let a = Formula::pred("p", "x");
        let mut b = Formula::pred("p", "x");
        b.span = SourceSpan {
            start: 3,
            end: 7,
            line: 2,
            column: 1,
        };
        assert_eq!(a, b);
        assert_ne!(a, Formula::pred("p", "y"));
    }

    #[test]
    fn free_variables() {
        let f = Formula::forall(
            "x",
            Formula::and(Formula::pred("p", "x"), Formula::pred("q", "y")),
        );
        let free: Vec<_> = f.free_vars().into_iter().map(|(v, _)| v).collect();
        assert_eq!(free, vec!["y".to_string()]);
        assert!(!f.is_closed());
        assert!(Formula::exists("y", f).is_closed());
    }

    #[test]
    fn guard_resolution_is_name_based() {
        let f = Formula::and(
            Formula::implies(Formula::pred("c", "x"), Formula::pred("p", "x")),
            Formula::not(Formula::iff(
                Formula::pred("c", "x"),
                Formula::guard("p", "x"),
            )),
        );
        let expected = Formula::and(
            Formula::implies(Formula::guard("c", "x"), Formula::pred("p", "x")),
            Formula::not(Formula::iff(
                Formula::guard("c", "x"),
                Formula::pred("p", "x"),
            )),
        );
        assert_eq!(resolve_guards(f), expected);
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("phi2"));
        assert!(is_identifier("_x"));
        assert!(!is_identifier("2x"));
        assert!(!is_identifier("forall"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("a-b"));
    }
}
