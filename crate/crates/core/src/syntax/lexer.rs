use super::parser::SyntaxError;
use super::SourceSpan;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    ForAll,
    Exists,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub(crate) fn symbol(&self) -> &'static str {
        match self {
            Tok::Ident(_) => "identifier",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Dot => ".",
            Tok::Not => "~",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::ForAll => "forall",
            Tok::Exists => "exists",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "exists")
}

/// Tokenizes `src[start..end]`, reporting positions relative to all of `src`.
pub(crate) fn tokenize(src: &str, start: usize, end: usize) -> Result<Vec<Token>, SyntaxError> {
    let mut line = 1;
    let mut column = 1;
    for c in src[..start].chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }

    let text = &src[start..end];
    let mut chars = text.char_indices().peekable();
    let mut out = Vec::new();

    let span_at = |off: usize, len: usize, line: usize, column: usize| SourceSpan {
        start: start + off,
        end: start + off + len,
        line,
        column,
    };

    while let Some(&(off, c)) = chars.peek() {
        let (tok_line, tok_col) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };

        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                advance(&mut chars);
            }
            continue;
        }

        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            let span = span_at(off, ident.len(), tok_line, tok_col);
            let tok = match ident.as_str() {
                "forall" => Tok::ForAll,
                "exists" => Tok::Exists,
                _ => Tok::Ident(ident),
            };
            out.push(Token { tok, span });
            continue;
        }

        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '.' => Some(Tok::Dot),
            '~' | '¬' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '→' => Some(Tok::Implies),
            '↔' => Some(Tok::Iff),
            '∀' => Some(Tok::ForAll),
            '∃' => Some(Tok::Exists),
            _ => None,
        };
        if let Some(tok) = single {
            advance(&mut chars);
            out.push(Token {
                tok,
                span: span_at(off, c.len_utf8(), tok_line, tok_col),
            });
            continue;
        }

        // Multi-character ASCII operators.
        let rest = &text[off..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else {
            let expected = if c == '-' {
                vec!["->".to_string()]
            } else if c == '<' {
                vec!["<->".to_string()]
            } else {
                vec!["a formula token".to_string()]
            };
            return Err(SyntaxError {
                span: span_at(off, c.len_utf8(), tok_line, tok_col),
                expected,
                found: format!("character {c:?}"),
            });
        };
        for _ in 0..len {
            advance(&mut chars);
        }
        out.push(Token {
            tok,
            span: span_at(off, len, tok_line, tok_col),
        });
    }

    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan {
            start: end,
            end,
            line,
            column,
        },
    });
    Ok(out)
}
