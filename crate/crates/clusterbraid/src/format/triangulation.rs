use clusterbraid_core::surface::{MarkedSurface, Side, SurfaceError, Triangulation};

use super::{after, tokenize, ErrorKind, ParseError, Token};

fn number(tok: &Token<'_>) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| ParseError::syntax(tok, format!("expected a non-negative integer, found `{}`", tok.text)))
}

fn side(tok: &Token<'_>) -> Result<Side, ParseError> {
    let bad = || ParseError::syntax(tok, format!("expected a side `a<i>` or `d<i>`, found `{}`", tok.text));
    let (kind, rest) = tok.text.split_at_checked(1).ok_or_else(bad)?;
    let i: usize = rest.parse().map_err(|_| bad())?;
    match kind {
        "a" => Ok(Side::Arc(i)),
        "d" => Ok(Side::Boundary(i)),
        _ => Err(bad()),
    }
}

/// Parses
///
/// ```text
/// surface <genus> <boundary components> <marks on each component>...
/// arcs <count>
/// triangle <side> <side> <side>
/// ```
///
/// with sides `a<i>` (arc) or `d<i>` (boundary segment) listed
/// counter-clockwise.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, ParseError> {
    let lines = tokenize(text);
    let Some(head) = lines.first() else {
        return Err(ParseError { line: 1, column: 1, kind: ErrorKind::Syntax, message: "empty document".into() });
    };
    if head[0].text != "surface" {
        return Err(ParseError::syntax(&head[0], "document must start with `surface`"));
    }
    let field = |i: usize| head.get(i).ok_or_else(|| ParseError::syntax(&after(&head[head.len() - 1]), "header too short"));
    let genus = number(field(1)?)?;
    let b = number(field(2)?)?;
    let marks = (0..b).map(|i| number(field(3 + i)?)).collect::<Result<Vec<_>, _>>()?;
    if let Some(extra) = head.get(3 + b) {
        return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text)));
    }
    let surface = MarkedSurface::new(genus, marks).map_err(|e| ParseError::semantic(&head[0], e.to_string()))?;

    let mut triangles = Vec::new();
    let mut side_tokens: Vec<(Side, Token<'_>)> = Vec::new();
    let mut arcs_seen = false;
    for line in &lines[1..] {
        let kw = &line[0];
        match kw.text {
            "arcs" => {
                let v = line.get(1).ok_or_else(|| ParseError::syntax(&after(kw), "expected a count"))?;
                let count = number(v)?;
                if count != surface.arc_count() {
                    return Err(ParseError::semantic(
                        v,
                        format!("{surface} has {} arcs, document says {count}", surface.arc_count()),
                    ));
                }
                if let Some(extra) = line.get(2) {
                    return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text)));
                }
                arcs_seen = true;
            }
            "triangle" => {
                if line.len() != 4 {
                    let at = line.get(4).copied().unwrap_or_else(|| after(&line[line.len() - 1]));
                    return Err(ParseError::syntax(&at, "a triangle has three sides"));
                }
                let mut t = [Side::Arc(0); 3];
                for (k, tok) in line[1..].iter().enumerate() {
                    t[k] = side(tok)?;
                    side_tokens.push((t[k], *tok));
                }
                triangles.push(t);
            }
            other => return Err(ParseError::syntax(kw, format!("unknown keyword `{other}`"))),
        }
    }
    if !arcs_seen {
        let last = lines.last().expect("header present");
        return Err(ParseError::syntax(&after(&last[last.len() - 1]), "missing `arcs <count>` line"));
    }
    Triangulation::new(surface, triangles).map_err(|e| {
        let at = match &e {
            SurfaceError::BadGluing(s) => side_tokens.iter().find(|(x, _)| x == s).map(|(_, t)| *t),
            _ => None,
        };
        ParseError::semantic(&at.unwrap_or(head[0]), e.to_string())
    })
}

pub fn serialize_triangulation(t: &Triangulation) -> String {
    t.to_string()
}
