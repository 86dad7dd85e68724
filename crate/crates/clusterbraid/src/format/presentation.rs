use clusterbraid_core::presentation::{invert_name, Presentation};

use super::{tokenize, ErrorKind, ParseError};

/// Parses `gens: a b c` followed by `rel: ...` lines, one relator per line,
/// inverses written with the first letter's case swapped.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let lines = tokenize(text);
    let Some(head) = lines.first() else {
        return Err(ParseError { line: 1, column: 1, kind: ErrorKind::Syntax, message: "empty document".into() });
    };
    if head[0].text != "gens:" {
        return Err(ParseError::syntax(&head[0], "document must start with `gens:`"));
    }
    let mut names: Vec<String> = Vec::new();
    for t in &head[1..] {
        if t.text == "1" || t.text == "(" || t.text == ")" || t.text.ends_with(':') {
            return Err(ParseError::syntax(t, format!("`{}` is not a generator name", t.text)));
        }
        if names.iter().any(|n| n == t.text || *n == invert_name(t.text)) {
            return Err(ParseError::semantic(t, format!("generator `{}` clashes with an earlier one", t.text)));
        }
        names.push(t.text.to_string());
    }
    let mut p = Presentation::new(names.clone(), Vec::new()).expect("no relators");
    let mut relators = Vec::new();
    for line in &lines[1..] {
        if line[0].text != "rel:" {
            return Err(ParseError::syntax(&line[0], format!("expected `rel:`, found `{}`", line[0].text)));
        }
        for t in &line[1..] {
            if t.text != "1" && p.generator_index(t.text).is_none() && p.generator_index(&invert_name(t.text)).is_none() {
                return Err(ParseError::semantic(t, format!("unknown generator `{}`", t.text)));
            }
        }
        let text: Vec<&str> = line[1..].iter().map(|t| t.text).collect();
        relators.push(p.parse_word(&text.join(" ")).expect("tokens checked"));
    }
    p = Presentation::new(names, relators).expect("indices in range");
    Ok(p)
}

pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::from("gens:");
    for g in p.generators() {
        out.push(' ');
        out.push_str(g);
    }
    out.push('\n');
    for r in p.relators() {
        out.push_str("rel: ");
        out.push_str(&p.format_word(r));
        out.push('\n');
    }
    out
}
