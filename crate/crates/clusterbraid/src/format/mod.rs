//! Line-oriented text formats: quiver documents, presentations and
//! triangulations.

mod presentation;
mod quiver;
mod triangulation;

use std::fmt;

pub use presentation::{parse_presentation, serialize_presentation};
pub use quiver::{parse_quiver, serialize_quiver};
pub use triangulation::{parse_triangulation, serialize_triangulation};

use clusterbraid_core::Qp;

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Semantic,
}

impl ParseError {
    pub(crate) fn syntax(tok: &Token<'_>, message: impl Into<String>) -> Self {
        ParseError { line: tok.line, column: tok.column, kind: ErrorKind::Syntax, message: message.into() }
    }

    pub(crate) fn semantic(tok: &Token<'_>, message: impl Into<String>) -> Self {
        ParseError { line: tok.line, column: tok.column, kind: ErrorKind::Semantic, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Semantic => "error",
        };
        write!(f, "line {}, column {}: {kind}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

/// Splits a document into lines of tokens. `#` starts a comment; `(` and
/// `)` are tokens of their own. Blank lines are dropped.
pub(crate) fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices() {
            let delimiter = ch.is_whitespace() || ch == '(' || ch == ')';
            if delimiter {
                if let Some(s) = start.take() {
                    toks.push(Token { text: &content[s..pos], line: i + 1, column: column(content, s) });
                }
                if !ch.is_whitespace() {
                    toks.push(Token { text: &content[pos..pos + 1], line: i + 1, column: column(content, pos) });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            toks.push(Token { text: &content[s..], line: i + 1, column: column(content, s) });
        }
        if !toks.is_empty() {
            lines.push(toks);
        }
    }
    lines
}

fn column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// End-of-line position for errors about a missing token.
pub(crate) fn after(tok: &Token<'_>) -> Token<'static> {
    Token { text: "", line: tok.line, column: tok.column + tok.text.chars().count() }
}

/// Reads a quiver document, or a triangulation document (first keyword
/// `surface`) as the quiver with potential of the triangulation.
pub fn parse_document(text: &str) -> Result<Qp, ParseError> {
    let first = tokenize(text).first().and_then(|l| l.first().map(|t| t.text == "surface"));
    if first == Some(true) {
        Ok(parse_triangulation(text)?.qp())
    } else {
        parse_quiver(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let lines = tokenize("  potential 1 (a b)  # note\n\n# only comment\narrow x 1 2");
        assert_eq!(lines.len(), 2);
        let texts: Vec<&str> = lines[0].iter().map(|t| t.text).collect();
        assert_eq!(texts, ["potential", "1", "(", "a", "b", ")"]);
        assert_eq!((lines[0][0].column, lines[0][2].column, lines[0][3].column), (3, 15, 16));
        assert_eq!(lines[1][0].line, 4);
    }
}
