use std::fmt;

use super::lexer::{tokenize, Tok, Token};
use super::{resolve_guards, Formula, Node, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct SyntaxError {
    pub span: SourceSpan,
    /// Tokens that would have been accepted at `span`.
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {} (offset {}): expected ",
            self.span, self.span.start
        )?;
        for (i, e) in self.expected.iter().enumerate() {
            if i > 0 {
                f.write_str(if i + 1 == self.expected.len() {
                    " or "
                } else {
                    ", "
                })?;
            }
            write!(f, "`{e}`")?;
        }
        write!(f, ", found {}", self.found)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unbound variable `{var}` at {span}")]
    UnboundVariable { var: String, span: SourceSpan },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax(e) => e.span,
            ParseError::UnboundVariable { span, .. } => *span,
        }
    }
}

/// Parses one formula. Free variables are allowed.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_range(text, 0, text.len())
}

/// Parses one formula and rejects it if any variable is free.
pub fn parse_closed(text: &str) -> Result<Formula, ParseError> {
    let f = parse(text)?;
    check_closed(f)
}

pub(crate) fn check_closed(f: Formula) -> Result<Formula, ParseError> {
    if let Some((var, span)) = f.free_vars().into_iter().next() {
        return Err(ParseError::UnboundVariable { var, span });
    }
    Ok(f)
}

pub(crate) fn parse_range(src: &str, start: usize, end: usize) -> Result<Formula, ParseError> {
    let tokens = tokenize(src, start, end)?;
    let mut p = Parser { tokens, pos: 0 };
    let f = p.formula()?;
    if p.peek().tok != Tok::Eof {
        return Err(p
            .unexpected(&["&", "|", "->", "<->", "end of input"])
            .into());
    }
    Ok(resolve_guards(f))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> SyntaxError {
        let t = self.peek();
        SyntaxError {
            span: t.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, SyntaxError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[tok.symbol()]))
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), SyntaxError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let t = self.bump();
                Ok((s, t.span))
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        self.iff()
    }

    fn binary(
        left: Formula,
        right: Formula,
        make: fn(Box<Formula>, Box<Formula>) -> Node,
    ) -> Formula {
        let span = left.span.join(right.span);
        Formula {
            node: make(Box::new(left), Box::new(right)),
            span,
        }
    }

    fn iff(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.implication()?;
        if self.peek().tok == Tok::Iff {
            self.bump();
            let right = self.iff()?;
            return Ok(Self::binary(left, right, |left, right| Node::Iff {
                left,
                right,
            }));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.disjunction()?;
        if self.peek().tok == Tok::Implies {
            self.bump();
            let right = self.implication()?;
            return Ok(Self::binary(left, right, |left, right| Node::Implies {
                left,
                right,
            }));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.conjunction()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            let right = self.conjunction()?;
            left = Self::binary(left, right, |left, right| Node::Or { left, right });
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.unary()?;
        while self.peek().tok == Tok::And {
            self.bump();
            let right = self.unary()?;
            left = Self::binary(left, right, |left, right| Node::And { left, right });
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let start = self.peek().span;
        match self.peek().tok {
            Tok::Not => {
                self.bump();
                let operand = self.unary()?;
                Ok(Formula {
                    span: start.join(operand.span),
                    node: Node::Not {
                        operand: Box::new(operand),
                    },
                })
            }
            Tok::ForAll | Tok::Exists => {
                let universal = self.bump().tok == Tok::ForAll;
                let (var, _) = self.ident()?;
                self.expect(Tok::Dot)?;
                let body = Box::new(self.formula()?);
                let span = start.join(body.span);
                let node = if universal {
                    Node::ForAll { var, body }
                } else {
                    Node::Exists { var, body }
                };
                Ok(Formula { node, span })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Formula {
                    node: inner.node,
                    span: start.join(close.span),
                })
            }
            Tok::Ident(_) => {
                let (name, _) = self.ident()?;
                self.expect(Tok::LParen)?;
                let (var, _) = self.ident()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Formula {
                    node: Node::PredicateApp { name, var },
                    span: start.join(close.span),
                })
            }
            _ => Err(self.unexpected(&["~", "forall", "exists", "(", "identifier"])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Formula {
        Formula::pred(name, "x")
    }

    fn g(name: &str) -> Formula {
        Formula::guard(name, "x")
    }

    #[test]
    fn basic_conditional_truth_value() {
        let f = parse("forall x. (phi(x) -> p(x))").unwrap();
        assert_eq!(f, Formula::forall("x", Formula::implies(g("phi"), p("p"))));
    }

    #[test]
    fn unbalanced_delimiter() {
        let err = parse("p(x").unwrap_err();
        let ParseError::Syntax(err) = err else {
            panic!("expected a syntax error")
        };
        assert_eq!(err.span.start, 3);
        assert_eq!(err.expected, vec![")".to_string()]);
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn precedence_and_associativity() {
        // ~ > & > | > -> > <->
        let f = parse("~a(x) & b(x) | c(x) -> d(x) <-> e(x)").unwrap();
        let expected = Formula::iff(
            Formula::implies(
                Formula::or(Formula::and(Formula::not(p("a")), p("b")), p("c")),
                p("d"),
            ),
            p("e"),
        );
        // `c` is not an antecedent atom here, so nothing becomes a guard.
        assert_eq!(f, expected);

        let f = parse("a(x) -> b(x) -> c(x)").unwrap();
        assert_eq!(
            f,
            Formula::implies(g("a"), Formula::implies(g("b"), p("c")))
        );

        let f = parse("a(x) <-> b(x) <-> c(x)").unwrap();
        assert_eq!(f, Formula::iff(p("a"), Formula::iff(p("b"), p("c"))));

        let f = parse("a(x) & b(x) & c(x)").unwrap();
        assert_eq!(f, Formula::and(Formula::and(p("a"), p("b")), p("c")));
    }

    #[test]
    fn quantifier_extends_right() {
        let f = parse("a(x) & forall y. b(y) | c(y)").unwrap();
        assert_eq!(
            f,
            Formula::and(
                p("a"),
                Formula::forall(
                    "y",
                    Formula::or(Formula::pred("b", "y"), Formula::pred("c", "y"))
                )
            )
        );
    }

    #[test]
    fn literal_compound_follows_grammar_precedence() {
        // Without inner brackets `&` binds tighter than `->`.
        let f =
            parse("forall x. (phi(x) -> p(x) & phi2(x) -> ~p(x)) & ~(phi(x) <-> phi2(x))").unwrap();
        let expected = Formula::forall(
            "x",
            Formula::and(
                Formula::implies(
                    g("phi"),
                    Formula::implies(Formula::and(p("p"), p("phi2")), Formula::not(p("p"))),
                ),
                Formula::not(Formula::iff(g("phi"), p("phi2"))),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn bracketed_compound_has_two_guards() {
        let f = parse("forall x. ((phi(x) -> p(x)) & (phi2(x) -> ~p(x))) & ~(phi(x) <-> phi2(x))")
            .unwrap();
        let expected = Formula::forall(
            "x",
            Formula::and(
                Formula::and(
                    Formula::implies(g("phi"), p("p")),
                    Formula::implies(g("phi2"), Formula::not(p("p"))),
                ),
                Formula::not(Formula::iff(g("phi"), g("phi2"))),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(
            parse("∀x. (phi(x) → ¬p(x))").unwrap(),
            parse("forall x. (phi(x) -> ~p(x))").unwrap()
        );
        assert_eq!(
            parse("∃y. a(y) ∧ b(y) ∨ c(y)").unwrap(),
            parse("exists y. a(y) & b(y) | c(y)").unwrap()
        );
    }

    #[test]
    fn closed_formulas() {
        assert!(parse_closed("forall x. p(x)").is_ok());
        match parse_closed("forall x. p(y)") {
            Err(ParseError::UnboundVariable { var, span }) => {
                assert_eq!(var, "y");
                assert_eq!(span.start, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("p(y)").is_ok());
    }

    #[test]
    fn error_positions() {
        let err = parse("p(x) q(x)").unwrap_err();
        assert_eq!(err.span().start, 5);
        let err = parse("forall . p(x)").unwrap_err();
        assert_eq!(err.span().start, 7);
        let err = parse("").unwrap_err();
        assert_eq!(err.span().start, 0);
        let err = parse("p(x) &").unwrap_err();
        let ParseError::Syntax(e) = err else { panic!() };
        assert!(e.expected.contains(&"~".to_string()));
        let err = parse("a(x)\n & forall").unwrap_err();
        assert_eq!(err.span().line, 2);
        assert_eq!(err.span().column, 10);
    }

    #[test]
    fn spans_cover_nodes() {
        let f = parse("  ~p(x) & q(y)").unwrap();
        assert_eq!(f.span.start, 2);
        assert_eq!(f.span.end, 14);
        let Node::And { left, right } = &f.node else {
            panic!()
        };
        assert_eq!((left.span.start, left.span.end), (2, 7));
        assert_eq!((right.span.start, right.span.column), (10, 11));
    }

    #[test]
    fn deterministic() {
        let text = "forall x. exists y. (a(x) -> ~b(y) | c(x))";
        assert_eq!(parse(text).unwrap(), parse(text).unwrap());
    }
}
