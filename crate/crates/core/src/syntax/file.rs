//! Formula files.
//!
//! Each non-blank, non-comment line is one formula, except that a line
//! starting with `let NAME =` opens a named block which continues over the
//! following lines until a blank line or the next `let`.

use super::lexer::is_keyword;
use super::parser::{parse_range, ParseError, SyntaxError};
use super::{is_identifier, Formula, SourceSpan};

#[derive(Clone, Debug, PartialEq)]
pub struct FormulaEntry {
    pub name: Option<String>,
    /// 1-based line the entry starts on.
    pub line: usize,
    pub formula: Formula,
}

struct Line<'a> {
    number: usize,
    start: usize,
    text: &'a str,
}

pub fn parse_file(src: &str) -> Result<Vec<FormulaEntry>, ParseError> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for (i, raw) in src.split_inclusive('\n').enumerate() {
        let text = raw.strip_suffix('\n').unwrap_or(raw);
        let text = text.strip_suffix('\r').unwrap_or(text);
        lines.push(Line {
            number: i + 1,
            start: offset,
            text,
        });
        offset += raw.len();
    }

    let blank = |l: &Line| {
        let t = l.text.trim();
        t.is_empty()
    };
    let comment = |l: &Line| l.text.trim_start().starts_with('#');
    let opens_block = |l: &Line| {
        let t = l.text.trim_start();
        t.strip_prefix("let")
            .is_some_and(|rest| rest.starts_with(char::is_whitespace))
    };

    let mut entries: Vec<FormulaEntry> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        if blank(line) || comment(line) {
            i += 1;
            continue;
        }
        if !opens_block(line) {
            let formula = parse_range(src, line.start, line.start + line.text.len())?;
            entries.push(FormulaEntry {
                name: None,
                line: line.number,
                formula,
            });
            i += 1;
            continue;
        }

        let (name, body_start) = block_header(line)?;
        if entries
            .iter()
            .any(|e| e.name.as_deref() == Some(name.as_str()))
        {
            return Err(header_error(
                line,
                0,
                line.text.len(),
                "a name not already defined",
                format!("`{name}` again"),
            ));
        }
        let mut end = line.start + line.text.len();
        let mut j = i + 1;
        while j < lines.len() && !blank(&lines[j]) && !opens_block(&lines[j]) {
            end = lines[j].start + lines[j].text.len();
            j += 1;
        }
        let formula = parse_range(src, body_start, end)?;
        entries.push(FormulaEntry {
            name: Some(name),
            line: line.number,
            formula,
        });
        i = j;
    }
    Ok(entries)
}

fn header_error(line: &Line, col: usize, len: usize, expected: &str, found: String) -> ParseError {
    let column = line.text[..col].chars().count() + 1;
    SyntaxError {
        span: SourceSpan {
            start: line.start + col,
            end: line.start + col + len,
            line: line.number,
            column,
        },
        expected: vec![expected.to_string()],
        found,
    }
    .into()
}

/// Returns the block name and the absolute offset where its formula starts.
fn block_header(line: &Line) -> Result<(String, usize), ParseError> {
    let text = line.text;
    let indent = text.len() - text.trim_start().len();
    let after_let = indent + 3;
    let rest = &text[after_let..];
    let name_col = after_let + (rest.len() - rest.trim_start().len());
    let name_len = text[name_col..]
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(text.len() - name_col);
    let name = &text[name_col..name_col + name_len];
    if !is_identifier(name) || is_keyword(name) {
        let found = if name.is_empty() {
            "no name".to_string()
        } else {
            format!("`{name}`")
        };
        return Err(header_error(line, name_col, name_len, "identifier", found));
    }
    let after_name = name_col + name_len;
    let rest = &text[after_name..];
    let eq_col = after_name + (rest.len() - rest.trim_start().len());
    if !text[eq_col..].starts_with('=') {
        let found = text[eq_col..]
            .chars()
            .next()
            .map_or("end of line".to_string(), |c| format!("{c:?}"));
        return Err(header_error(line, eq_col, 1, "=", found));
    }
    Ok((name.to_string(), line.start + eq_col + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn lines_and_blocks() {
        let src = "# header\n\
                   forall x. (c(x) -> p(x))\n\
                   \n\
                   let four = forall x. ((a(x) -> p(x)) &\n\
                   \x20   (b(x) -> ~p(x))) & ~(a(x) <-> b(x))\n\
                   let single = exists x. p(x)\n\
                   \n\
                   ~q(y)\n";
        let entries = parse_file(src).unwrap();
        assert_eq!(entries.len(), 4);
        assert_eq!(entries[0].name, None);
        assert_eq!(entries[0].line, 2);
        assert_eq!(entries[1].name.as_deref(), Some("four"));
        assert_eq!(
            entries[1].formula,
            parse("forall x. ((a(x) -> p(x)) & (b(x) -> ~p(x))) & ~(a(x) <-> b(x))").unwrap()
        );
        assert_eq!(entries[2].name.as_deref(), Some("single"));
        assert_eq!(entries[3].line, 8);
    }

    #[test]
    fn errors_carry_file_positions() {
        let src = "p(x)\n\nq(x) &\n";
        let err = parse_file(src).unwrap_err();
        assert_eq!(err.span().line, 3);
        assert_eq!(err.span().start, 12);

        let err = parse_file("let = p(x)").unwrap_err();
        assert_eq!(err.span().column, 5);
        let err = parse_file("let a p(x)").unwrap_err();
        assert_eq!(err.span().start, 6);
        let err = parse_file("let a = p(x)\nlet a = q(x)").unwrap_err();
        assert_eq!(err.span().line, 2);
    }

    #[test]
    fn crlf_lines() {
        let entries = parse_file("p(x)\r\nq(x)\r\n").unwrap();
        assert_eq!(entries.len(), 2);
    }
}
