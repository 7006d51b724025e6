use super::{Formula, Node};

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

/// Canonical ASCII rendering.
///
/// Parentheses are emitted only where precedence, associativity or a
/// right-extending quantifier require them, with one stylistic exception: a
/// quantifier whose body is a binary connective always brackets the body, as
/// in `forall x. (phi(x) -> p(x))`.
pub fn pretty(f: &Formula) -> String {
    let mut out = String::new();
    render(f, 0, true, &mut out);
    out
}

fn precedence(f: &Formula) -> u8 {
    match f.node {
        Node::Iff { .. } => IFF,
        Node::Implies { .. } => IMPLIES,
        Node::Or { .. } => OR,
        Node::And { .. } => AND,
        _ => UNARY,
    }
}

/// `tail_safe` is true when nothing follows `f` at this nesting level, so a
/// quantifier can extend to the right without capturing a sibling.
fn render(f: &Formula, min_prec: u8, tail_safe: bool, out: &mut String) {
    let is_quant = matches!(f.node, Node::ForAll { .. } | Node::Exists { .. });
    if precedence(f) < min_prec || (is_quant && !tail_safe) {
        out.push('(');
        render(f, 0, true, out);
        out.push(')');
        return;
    }

    match &f.node {
        Node::PredicateApp { name, var } | Node::ContextGuard { context: name, var } => {
            out.push_str(name);
            out.push('(');
            out.push_str(var);
            out.push(')');
        }
        Node::Not { operand } => {
            out.push('~');
            render(operand, UNARY, tail_safe, out);
        }
        Node::Iff { left, right } => binary(left, right, "<->", (IMPLIES, IFF), tail_safe, out),
        Node::Implies { left, right } => binary(left, right, "->", (OR, IMPLIES), tail_safe, out),
        Node::Or { left, right } => binary(left, right, "|", (OR, AND), tail_safe, out),
        Node::And { left, right } => binary(left, right, "&", (AND, UNARY), tail_safe, out),
        Node::ForAll { var, body } | Node::Exists { var, body } => {
            out.push_str(if matches!(f.node, Node::ForAll { .. }) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(var);
            out.push_str(". ");
            if precedence(body) < UNARY {
                out.push('(');
                render(body, 0, true, out);
                out.push(')');
            } else {
                render(body, 0, true, out);
            }
        }
    }
}

fn binary(
    left: &Formula,
    right: &Formula,
    op: &str,
    (lp, rp): (u8, u8),
    tail_safe: bool,
    out: &mut String,
) {
    render(left, lp, false, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    render(right, rp, tail_safe, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(name: &str) -> Formula {
        Formula::pred(name, "x")
    }

    #[test]
    fn canonical_basic_schema() {
        let f = Formula::forall("x", Formula::implies(Formula::guard("phi", "x"), p("p")));
        assert_eq!(pretty(&f), "forall x. (phi(x) -> p(x))");
    }

    #[test]
    fn no_simplification() {
        assert_eq!(pretty(&Formula::not(Formula::not(p("p")))), "~~p(x)");
    }

    #[test]
    fn associativity_parens() {
        let l = Formula::and(Formula::and(p("a"), p("b")), p("c"));
        assert_eq!(pretty(&l), "a(x) & b(x) & c(x)");
        let r = Formula::and(p("a"), Formula::and(p("b"), p("c")));
        assert_eq!(pretty(&r), "a(x) & (b(x) & c(x))");
        let i = Formula::implies(Formula::implies(p("a"), p("b")), p("c"));
        assert_eq!(pretty(&i), "(a(x) -> b(x)) -> c(x)");
        let i = Formula::implies(p("a"), Formula::implies(p("b"), p("c")));
        assert_eq!(pretty(&i), "a(x) -> b(x) -> c(x)");
        let mixed = Formula::and(
            Formula::or(p("a"), p("b")),
            Formula::not(Formula::iff(p("c"), p("d"))),
        );
        assert_eq!(pretty(&mixed), "(a(x) | b(x)) & ~(c(x) <-> d(x))");
    }

    #[test]
    fn quantifier_tail_rule() {
        let q = Formula::forall("y", Formula::pred("q", "y"));
        assert_eq!(
            pretty(&Formula::and(p("a"), q.clone())),
            "a(x) & forall y. q(y)"
        );
        assert_eq!(
            pretty(&Formula::and(q.clone(), p("a"))),
            "(forall y. q(y)) & a(x)"
        );
        let nested = Formula::or(Formula::and(p("a"), q.clone()), p("b"));
        assert_eq!(pretty(&nested), "a(x) & (forall y. q(y)) | b(x)");
        assert_eq!(
            pretty(&Formula::and(Formula::not(q.clone()), p("a"))),
            "~(forall y. q(y)) & a(x)"
        );
        for f in [nested, Formula::and(Formula::not(q.clone()), p("a"))] {
            assert_eq!(parse(&pretty(&f)).unwrap(), f);
        }
    }
}
