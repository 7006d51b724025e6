use crate::logic::{conj3, disj3, iff3, impl3, neg3, Tv3};
use crate::syntax::{Formula, Node, SourceSpan, INDETERMINACY_PREFIX};

use super::{ExtensionalReading, IncompatibilityMode, Model, ModelError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub incompatibility: IncompatibilityMode,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("undeclared name `{name}` at {span}")]
    UndeclaredName { name: String, span: SourceSpan },
    #[error("unbound variable `{var}` at {span}")]
    UnboundVariable { var: String, span: SourceSpan },
    #[error("formula uses context guards but the model declares no contexts")]
    NoContexts,
}

/// Variable bindings, innermost last.
pub type Env = Vec<(String, String)>;

/// How an atom name resolves against a model.
#[derive(Clone, Copy, Debug)]
enum Atom {
    Guard(usize),
    Predicate(usize),
    /// `undet_p`: bivalent test that `p` is `U`.
    Indeterminate(usize),
}

fn resolve(m: &Model, name: &str) -> Option<Atom> {
    if let Some(c) = m.context_index(name) {
        return Some(Atom::Guard(c));
    }
    if let Some(p) = m.predicate_index(name) {
        return Some(Atom::Predicate(p));
    }
    name.strip_prefix(INDETERMINACY_PREFIX)
        .and_then(|base| m.predicate_index(base))
        .map(Atom::Indeterminate)
}

/// Three-valued value of `f` in `m` under the bindings in `env`.
///
/// Predicate atoms read the valuation column of the innermost enclosing guard
/// (`c(x) -> ...`), or the background column outside every guard. Guards are
/// bivalent. Quantifiers fold the domain with `&` and `|`.
pub fn evaluate(
    f: &Formula,
    m: &Model,
    env: &[(String, String)],
    opts: EvalOptions,
) -> Result<Tv3, EvalError> {
    if m.contexts().is_empty() && f.contains_guard() {
        return Err(EvalError::NoContexts);
    }
    let mut bound: Vec<String> = env.iter().map(|(v, _)| v.clone()).collect();
    check(f, m, &mut bound)?;

    let mut bindings = Vec::with_capacity(env.len());
    for (var, entity) in env {
        let e = m.domain().iter().position(|d| d == entity).ok_or_else(|| {
            EvalError::UndeclaredName {
                name: entity.clone(),
                span: SourceSpan::default(),
            }
        })?;
        bindings.push((var.as_str(), e));
    }
    let mut ev = Evaluator {
        m,
        opts,
        env: bindings,
    };
    Ok(ev.eval(f, 0))
}

/// Evaluates a closed formula with no bindings.
pub fn evaluate_closed(f: &Formula, m: &Model, opts: EvalOptions) -> Result<Tv3, EvalError> {
    evaluate(f, m, &[], opts)
}

fn check(f: &Formula, m: &Model, bound: &mut Vec<String>) -> Result<(), EvalError> {
    match &f.node {
        Node::PredicateApp { name, var } | Node::ContextGuard { context: name, var } => {
            let ok = match (&f.node, resolve(m, name)) {
                (Node::ContextGuard { .. }, Some(Atom::Guard(_))) => true,
                (Node::ContextGuard { .. }, _) => false,
                (_, r) => r.is_some(),
            };
            if !ok {
                return Err(EvalError::UndeclaredName {
                    name: name.clone(),
                    span: f.span,
                });
            }
            if !bound.contains(var) {
                return Err(EvalError::UnboundVariable {
                    var: var.clone(),
                    span: f.span,
                });
            }
            Ok(())
        }
        Node::ForAll { var, body } | Node::Exists { var, body } => {
            bound.push(var.clone());
            let r = check(body, m, bound);
            bound.pop();
            r
        }
        _ => {
            for c in f.children() {
                check(c, m, bound)?;
            }
            Ok(())
        }
    }
}

struct Evaluator<'a> {
    m: &'a Model,
    opts: EvalOptions,
    env: Vec<(&'a str, usize)>,
}

impl<'a> Evaluator<'a> {
    fn entity(&self, var: &str) -> usize {
        self.env
            .iter()
            .rev()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| *e)
            .expect("variables checked before evaluation")
    }

    fn atom(&self, f: &Formula) -> Option<(Atom, usize)> {
        let (name, var) = f.as_atom()?;
        Some((resolve(self.m, name)?, self.entity(var)))
    }

    /// Context index if `f` is an atom naming a context.
    fn guard_atom(&self, f: &Formula) -> Option<(usize, usize)> {
        match self.atom(f)? {
            (Atom::Guard(c), e) => Some((c, e)),
            _ => None,
        }
    }

    /// `column` is 0 for the background or `context + 1`.
    fn eval(&mut self, f: &'a Formula, column: usize) -> Tv3 {
        match &f.node {
            Node::PredicateApp { .. } | Node::ContextGuard { .. } => {
                let (atom, e) = self.atom(f).expect("names checked before evaluation");
                match atom {
                    Atom::Guard(c) => Tv3::from(self.m.in_extension(c, e)),
                    Atom::Predicate(p) => self.m.value_at(column, e, p),
                    Atom::Indeterminate(p) => {
                        Tv3::from(self.m.value_at(column, e, p) == Tv3::Undet3)
                    }
                }
            }
            Node::Not { operand } => neg3(self.eval(operand, column)),
            Node::And { left, right } => {
                let l = self.eval(left, column);
                conj3(l, self.eval(right, column))
            }
            Node::Or { left, right } => {
                let l = self.eval(left, column);
                disj3(l, self.eval(right, column))
            }
            Node::Implies { left, right } => match self.guard_atom(left) {
                Some((c, e)) => {
                    let antecedent = Tv3::from(self.m.in_extension(c, e));
                    impl3(antecedent, self.eval(right, c + 1))
                }
                None => {
                    let l = self.eval(left, column);
                    impl3(l, self.eval(right, column))
                }
            },
            Node::Iff { left, right } => match (self.guard_atom(left), self.guard_atom(right)) {
                (Some((a, ea)), Some((b, eb))) => self.guard_equivalence(a, ea, b, eb),
                _ => {
                    let l = self.eval(left, column);
                    iff3(l, self.eval(right, column))
                }
            },
            Node::ForAll { var, body } => {
                let mut acc = Tv3::True3;
                for e in 0..self.m.domain().len() {
                    self.env.push((var, e));
                    acc = conj3(acc, self.eval(body, column));
                    self.env.pop();
                }
                acc
            }
            Node::Exists { var, body } => {
                let mut acc = Tv3::False3;
                for e in 0..self.m.domain().len() {
                    self.env.push((var, e));
                    acc = disj3(acc, self.eval(body, column));
                    self.env.pop();
                }
                acc
            }
        }
    }

    fn guard_equivalence(&self, a: usize, ea: usize, b: usize, eb: usize) -> Tv3 {
        match self.opts.incompatibility {
            IncompatibilityMode::Relational => Tv3::from(self.m.compatible_idx(a, b)),
            IncompatibilityMode::Extensional(ExtensionalReading::Somewhere) => {
                Tv3::from(self.m.membership[a] == self.m.membership[b])
            }
            IncompatibilityMode::Extensional(ExtensionalReading::Everywhere) => {
                Tv3::from(self.m.in_extension(a, ea) == self.m.in_extension(b, eb))
            }
        }
    }
}

/// Whether two contexts are incompatible under `mode`.
pub fn check_incompatibility(
    m: &Model,
    c1: &str,
    c2: &str,
    mode: IncompatibilityMode,
) -> Result<Tv3, ModelError> {
    let a = m.require_context(c1)?;
    let b = m.require_context(c2)?;
    let differs = |e: usize| m.in_extension(a, e) != m.in_extension(b, e);
    let n = m.domain().len();
    Ok(Tv3::from(match mode {
        IncompatibilityMode::Relational => !m.compatible_idx(a, b),
        IncompatibilityMode::Extensional(ExtensionalReading::Somewhere) => (0..n).any(differs),
        IncompatibilityMode::Extensional(ExtensionalReading::Everywhere) => (0..n).all(differs),
    }))
}
