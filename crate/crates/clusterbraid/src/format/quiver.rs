use std::collections::BTreeMap;
use std::fmt::Write;

use clusterbraid_core::qp::{Arrow, Coeff, Potential, Qp, Quiver};

use super::{after, tokenize, ParseError, Token};

fn integer<T: std::str::FromStr>(tok: &Token<'_>, what: &str) -> Result<T, ParseError> {
    tok.text.parse().map_err(|_| ParseError::syntax(tok, format!("expected {what}, found `{}`", tok.text)))
}

/// Parses a quiver document:
///
/// ```text
/// quiver n=3
/// arrow a 1 2
/// arrow b 2 3 deg 1
/// arrow c 3 1
/// potential 1 ( a b c )
/// N 3
/// ```
pub fn parse_quiver(text: &str) -> Result<Qp, ParseError> {
    let lines = tokenize(text);
    let Some(head) = lines.first() else {
        return Err(ParseError { line: 1, column: 1, kind: super::ErrorKind::Syntax, message: "empty document".into() });
    };
    if head[0].text != "quiver" {
        return Err(ParseError::syntax(&head[0], "document must start with `quiver n=<int>`"));
    }
    let n: usize = match head.get(1) {
        Some(t) if t.text.starts_with("n=") => {
            let value = Token { text: &t.text[2..], line: t.line, column: t.column + 2 };
            integer(&value, "a vertex count")?
        }
        Some(t) => return Err(ParseError::syntax(t, "expected `n=<int>`")),
        None => return Err(ParseError::syntax(&after(&head[0]), "expected `n=<int>`")),
    };
    if let Some(extra) = head.get(2) {
        return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text)));
    }

    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_lines: BTreeMap<String, Token<'_>> = BTreeMap::new();
    let mut terms: Vec<(Coeff, Vec<Token<'_>>, Token<'_>)> = Vec::new();
    let mut degree_n = None;
    for line in &lines[1..] {
        let kw = &line[0];
        match kw.text {
            "arrow" => {
                let field = |i: usize, what: &str| {
                    line.get(i).ok_or_else(|| ParseError::syntax(&after(&line[line.len() - 1]), format!("expected {what}")))
                };
                let id = field(1, "an arrow id")?;
                if id.text == "(" || id.text == ")" || id.text.parse::<i64>().is_ok() {
                    return Err(ParseError::syntax(id, format!("`{}` is not an arrow id", id.text)));
                }
                let src = field(2, "a source vertex")?;
                let tgt = field(3, "a target vertex")?;
                let (s, t): (usize, usize) = (integer(src, "a vertex")?, integer(tgt, "a vertex")?);
                let mut degree = 1;
                match line.get(4) {
                    None => {}
                    Some(d) if d.text == "deg" => {
                        degree = integer(field(5, "a degree")?, "a degree")?;
                        if let Some(extra) = line.get(6) {
                            return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text)));
                        }
                    }
                    Some(extra) => return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text))),
                }
                for (tok, v) in [(src, s), (tgt, t)] {
                    if v == 0 || v > n {
                        return Err(ParseError::semantic(tok, format!("vertex out of range: {v} not in 1..={n}")));
                    }
                }
                if arrow_lines.insert(id.text.to_string(), *id).is_some() {
                    return Err(ParseError::semantic(id, format!("duplicate arrow id `{}`", id.text)));
                }
                arrows.push(Arrow::new(id.text, s, t).with_degree(degree));
            }
            "potential" => {
                let coeff_tok = line.get(1).ok_or_else(|| ParseError::syntax(&after(kw), "expected a coefficient"))?;
                let coeff: Coeff = coeff_tok
                    .text
                    .parse()
                    .map_err(|_| ParseError::syntax(coeff_tok, format!("expected a rational, found `{}`", coeff_tok.text)))?;
                match line.get(2) {
                    Some(t) if t.text == "(" => {}
                    Some(t) => return Err(ParseError::syntax(t, "expected `(`")),
                    None => return Err(ParseError::syntax(&after(coeff_tok), "expected `(`")),
                }
                let close = line[3..]
                    .iter()
                    .position(|t| t.text == ")")
                    .ok_or_else(|| ParseError::syntax(&after(&line[line.len() - 1]), "expected `)`"))?;
                let cycle = line[3..3 + close].to_vec();
                if let Some(t) = cycle.iter().find(|t| t.text == "(") {
                    return Err(ParseError::syntax(t, "unexpected `(`"));
                }
                if let Some(extra) = line.get(4 + close) {
                    return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text)));
                }
                if cycle.is_empty() {
                    return Err(ParseError::semantic(&line[2], "empty cycle"));
                }
                terms.push((coeff, cycle, *kw));
            }
            "N" => {
                let v = line.get(1).ok_or_else(|| ParseError::syntax(&after(kw), "expected an integer"))?;
                if degree_n.is_some() {
                    return Err(ParseError::semantic(kw, "degree N given twice"));
                }
                let value: u32 = integer(v, "an integer")?;
                if value < 3 {
                    return Err(ParseError::semantic(v, format!("N must be at least 3, got {value}")));
                }
                if let Some(extra) = line.get(2) {
                    return Err(ParseError::syntax(extra, format!("unexpected `{}`", extra.text)));
                }
                degree_n = Some(value);
            }
            "quiver" => return Err(ParseError::syntax(kw, "`quiver` header repeated")),
            other => return Err(ParseError::syntax(kw, format!("unknown keyword `{other}`"))),
        }
    }

    let quiver = Quiver::new(n, arrows).map_err(|e| ParseError::semantic(&head[0], e.to_string()))?;
    let mut potential = Potential::zero();
    for (coeff, cycle, kw) in &terms {
        for t in cycle {
            if quiver.arrow(t.text).is_none() {
                return Err(ParseError::semantic(t, format!("unknown arrow `{}`", t.text)));
            }
        }
        let ids: Vec<String> = cycle.iter().map(|t| t.text.to_string()).collect();
        let mut single = Potential::zero();
        single.add_term(Coeff::from_integer(1), ids.clone());
        single.check_composable(&quiver).map_err(|_| {
            ParseError::semantic(kw, format!("cycle ({}) is not a closed composable path", ids.join(" ")))
        })?;
        potential.add_term(*coeff, ids);
    }
    let last = lines.last().map(|l| l[0]).unwrap_or(head[0]);
    Qp::new(quiver, potential, degree_n).map_err(|e| ParseError::semantic(&last, e.to_string()))
}

/// Canonical document: header, `N`, arrows in order, then terms in the
/// potential's canonical order.
pub fn serialize_quiver(qp: &Qp) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "quiver n={}", qp.vertex_count());
    if let Some(n) = qp.degree_n {
        let _ = writeln!(out, "N {n}");
    }
    for a in qp.quiver.arrows() {
        let _ = write!(out, "arrow {} {} {}", a.id, a.source, a.target);
        if a.degree != 1 {
            let _ = write!(out, " deg {}", a.degree);
        }
        out.push('\n');
    }
    for (cycle, c) in qp.potential.terms() {
        let _ = writeln!(out, "potential {c} ( {} )", cycle.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::ErrorKind;
    use super::*;

    const CYCLE: &str = "quiver n=3\narrow a 1 2\narrow b 2 3\narrow c 3 1\npotential 1 ( a b c )\n";

    #[test]
    fn three_cycle() {
        let qp = parse_quiver(CYCLE).unwrap();
        assert_eq!(qp.potential.len(), 1);
        assert_eq!(serialize_quiver(&qp), CYCLE);
        let tight = parse_quiver("quiver n=3 # comment\narrow a 1 2\narrow b 2 3\narrow c 3 1\npotential 1 (b c a)").unwrap();
        assert_eq!(tight, qp);
    }

    #[test]
    fn degrees_and_rationals() {
        let text = "quiver n=2\nN 4\narrow a 1 2 deg 2\n";
        let qp = parse_quiver(text).unwrap();
        assert_eq!(qp.degree_n, Some(4));
        assert_eq!(qp.quiver.arrows()[0].degree, 2);
        assert_eq!(serialize_quiver(&qp), text);
        let w = parse_quiver("quiver n=3\narrow a 1 2\narrow b 2 3\narrow c 3 1\npotential -3/2 (a b c)\n").unwrap();
        assert_eq!(w.potential.terms().next().unwrap().1, Coeff::new(-3, 2));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_quiver("quiver n=3\narrow a 1 9\n").unwrap_err();
        assert_eq!((e.line, e.column, e.kind), (2, 11, ErrorKind::Semantic));
        assert!(e.message.contains("vertex out of range"));
        let e = parse_quiver("quiver n=3\n  arow a 1 2\n").unwrap_err();
        assert_eq!((e.line, e.column, e.kind), (2, 3, ErrorKind::Syntax));
        let e = parse_quiver("quiver n=3\narrow a 1 2\narrow b 2 3\npotential 1 (a b)\n").unwrap_err();
        assert_eq!((e.line, e.kind), (4, ErrorKind::Semantic));
        let e = parse_quiver("quiver n=2\narrow a 1 2\npotential 1 (a z)\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 16));
        let e = parse_quiver("quiver n=x\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        assert!(parse_quiver("quiver n=2\narrow a 1 2\narrow a 2 1\n").is_err());
        assert!(parse_quiver("quiver n=2\npotential 1 (a\n").is_err());
        assert!(parse_quiver("").is_err());
    }
}
