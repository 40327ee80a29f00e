//! Presentation files.
//!
//! ```text
//! gsbpres 1
//! # G^2_3
//! alphabet: a b c
//! order: deglex a < b < c
//! relations:
//!   aa = 1
//!   cba = abc
//! ```
//!
//! A file may instead hold one shorthand stanza, `manturov <n> <k>` or
//! `ore sigma=<poly in y> delta=<poly in y>`, optionally followed by an
//! `order:` line.

use gsb_core::{
    manturov, ore_extension, Alphabet, ManturovSpec, MonomialOrder, OreSpec, Polynomial, Presentation,
};

use crate::error::CliError;
use crate::syntax::{is_identifier, parse_order, parse_polynomial, Letters, Span};

pub const HEADER: &str = "gsbpres 1";

struct Line<'a> {
    number: usize,
    /// 1-based column where `text` starts.
    column: usize,
    text: &'a str,
}

impl Line<'_> {
    fn span(&self) -> Span {
        Span::at(self.number, self.column)
    }

    /// The part after `key:`, with its span.
    fn value(&self, key: &str) -> Option<(Span, &str)> {
        let rest = self.text.strip_prefix(key)?.strip_prefix(':')?;
        let trimmed = rest.trim_start();
        let col = self.column + key.len() + 1 + (rest.len() - trimmed.len());
        Some((Span::at(self.number, col), trimmed.trim_end()))
    }
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let without_comment = raw.split('#').next().unwrap_or("");
            let trimmed = without_comment.trim_start();
            let column = without_comment.len() - trimmed.len() + 1;
            let text = trimmed.trim_end();
            (!text.is_empty()).then_some(Line {
                number: i + 1,
                column,
                text,
            })
        })
        .collect()
}

fn names(span: Span, value: &str) -> Result<Alphabet, CliError> {
    let names: Vec<&str> = value.split_whitespace().collect();
    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
        return Err(span.error(0, format!("letter names must be identifiers, got {bad:?}")));
    }
    Alphabet::new(&names).map_err(|e| span.error(0, e.to_string()))
}

/// Parses the documented presentation grammar.
pub fn parse_presentation_file(text: &str) -> Result<Presentation, CliError> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();
    match it.next() {
        Some(l) if l.text.split_whitespace().collect::<Vec<_>>() == ["gsbpres", "1"] => {}
        Some(l) => return Err(l.span().error(0, format!("expected header {HEADER:?}"))),
        None => return Err(CliError::Parse { line: 1, column: 1, message: format!("expected header {HEADER:?}") }),
    }

    let first = it.peek().map(|l| l.text.split_whitespace().next().unwrap_or(""));
    let (base, order_line) = match first {
        Some("manturov") => {
            let line = it.next().expect("peeked");
            (manturov_stanza(line)?, it.next())
        }
        Some("ore") => {
            let line = it.next().expect("peeked");
            (ore_stanza(line)?, it.next())
        }
        _ => return explicit(it.collect()),
    };
    let pres = match order_line {
        None => base,
        Some(line) => {
            let (span, value) = line
                .value("order")
                .ok_or_else(|| line.span().error(0, "only an order: line may follow a shorthand stanza"))?;
            let display = base.display_alphabet();
            let ord = parse_order(value, span, Letters::new(base.alphabet(), Some(&display)))?;
            base.with_order(ord).map_err(|e| span.error(0, e.to_string()))?
        }
    };
    if let Some(extra) = it.next() {
        return Err(extra.span().error(0, "unexpected line after the stanza"));
    }
    Ok(pres)
}

fn manturov_stanza(line: &Line<'_>) -> Result<Presentation, CliError> {
    let parts: Vec<&str> = line.text.split_whitespace().collect();
    let parse = |s: Option<&&str>| s.and_then(|s| s.parse::<usize>().ok());
    match (parse(parts.get(1)), parse(parts.get(2)), parts.len()) {
        (Some(n), Some(k), 3) => manturov(ManturovSpec { n, k }).map_err(|e| line.span().error(0, e.to_string())),
        _ => Err(line.span().error(0, "expected `manturov <n> <k>`")),
    }
}

fn ore_stanza(line: &Line<'_>) -> Result<Presentation, CliError> {
    let alphabet = Alphabet::new(["x", "y"]).expect("valid");
    let letters = Letters::new(&alphabet, None);
    let body = &line.text["ore".len()..];
    let sigma_at = body.find("sigma=");
    let delta_at = body.find("delta=");
    let field = |at: Option<usize>, other: Option<usize>| -> Result<Option<Polynomial>, CliError> {
        let Some(at) = at else { return Ok(None) };
        let start = at + "sigma=".len();
        let end = other.filter(|&o| o > at).unwrap_or(body.len());
        let text = &body[start..end];
        let span = Span::at(line.number, line.column + "ore".len() + start);
        parse_polynomial(text, span, letters).map(Some)
    };
    let lead = &body[..sigma_at.into_iter().chain(delta_at).min().unwrap_or(body.len())];
    if !lead.trim().is_empty() {
        return Err(line.span().error(0, "expected `ore sigma=<poly> delta=<poly>`"));
    }
    let sigma = field(sigma_at, delta_at)?.unwrap_or_else(|| Polynomial::word(alphabet.word("y")));
    let delta = field(delta_at, sigma_at)?.unwrap_or_else(Polynomial::zero);
    ore_extension(&OreSpec {
        sigma_of_y: sigma,
        delta_of_y: delta,
    })
    .map_err(|e| line.span().error(0, e.to_string()))
}

fn explicit(lines: Vec<&Line<'_>>) -> Result<Presentation, CliError> {
    let mut alphabet: Option<(Span, Alphabet)> = None;
    let mut aliases: Option<(Span, Alphabet)> = None;
    let mut order: Option<(Span, String)> = None;
    let mut relations: Option<Vec<&Line<'_>>> = None;
    for line in lines {
        if let Some(rels) = relations.as_mut() {
            rels.push(line);
            continue;
        }
        if let Some((span, v)) = line.value("alphabet") {
            if alphabet.is_some() {
                return Err(line.span().error(0, "alphabet declared twice"));
            }
            alphabet = Some((span, names(span, v)?));
        } else if let Some((span, v)) = line.value("aliases") {
            aliases = Some((span, names(span, v)?));
        } else if let Some((span, v)) = line.value("order") {
            order = Some((span, v.to_string()));
        } else if let Some((span, v)) = line.value("relations") {
            if !v.is_empty() {
                return Err(span.error(0, "relations start on the next line"));
            }
            relations = Some(Vec::new());
        } else {
            return Err(line.span().error(0, format!("unexpected line {:?}", line.text)));
        }
    }
    let (_, alphabet) = alphabet.ok_or(CliError::Parse {
        line: 1,
        column: 1,
        message: "missing alphabet: line".into(),
    })?;
    if let Some((span, a)) = &aliases {
        if a.len() != alphabet.len() {
            return Err(span.error(0, "one alias per letter required"));
        }
    }
    let alias_alphabet = aliases.as_ref().map(|(_, a)| a);
    let letters = Letters::new(&alphabet, alias_alphabet);
    let ord = match &order {
        Some((span, text)) => parse_order(text, *span, letters)?,
        None => MonomialOrder::deglex_by_index(alphabet.len()),
    };
    let mut rels = Vec::new();
    for line in relations.unwrap_or_default() {
        let Some(eq) = line.text.find('=') else {
            return Err(line.span().error(0, "expected `lhs = rhs`"));
        };
        if line.text[eq + 1..].contains('=') {
            return Err(line.span().error(line.text[eq + 1..].find('=').unwrap() + eq + 1, "more than one '='"));
        }
        let lhs = parse_polynomial(&line.text[..eq], line.span(), letters)?;
        let rhs = parse_polynomial(&line.text[eq + 1..], Span::at(line.number, line.column + eq + 1), letters)?;
        rels.push((lhs, rhs));
    }
    let pres = Presentation::new(alphabet, rels, ord).map_err(|e| CliError::Parse {
        line: 1,
        column: 1,
        message: e.to_string(),
    })?;
    match aliases {
        Some((span, a)) => pres.with_aliases(a.names().to_vec()).map_err(|e| span.error(0, e.to_string())),
        None => Ok(pres),
    }
}

/// Writes a presentation in the explicit form; the output re-parses to an
/// equal value.
pub fn serialize_presentation(pres: &Presentation) -> String {
    let a = pres.alphabet();
    let ord = pres.order();
    let mut out = format!("{HEADER}\nalphabet: {}\n", a.names().join(" "));
    if let Some(aliases) = pres.aliases() {
        out.push_str(&format!("aliases: {}\n", aliases.join(" ")));
    }
    out.push_str(&format!("order: {}\nrelations:\n", ord.describe(a)));
    for (l, r) in pres.relations() {
        out.push_str(&format!("  {} = {}\n", l.render_spaced(a, ord), r.render_spaced(a, ord)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsb_core::PresentationKind;

    const G23: &str = "gsbpres 1
# Manturov G^2_3 under deg-lex
alphabet: a b c
order: deglex a < b < c
relations:
  aa = 1
  bb = 1
  cc = 1   # involutions
  cba = abc
  cab = bac
  bca = acb
";

    #[test]
    fn g23_file() {
        let p = parse_presentation_file(G23).unwrap();
        assert_eq!(p.relations().len(), 6);
        assert_eq!(p.kind(), PresentationKind::Semigroup);
        assert_eq!(p.order(), &MonomialOrder::deglex_by_index(3));
    }

    #[test]
    fn shorthand_stanzas() {
        let p = parse_presentation_file("gsbpres 1\nmanturov 4 3\n").unwrap();
        assert_eq!(p.alphabet().len(), 4);
        assert_eq!(p.relations().len(), 16);
        let p = parse_presentation_file("gsbpres 1\nore sigma=y^2 delta=y + 1\n").unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.kind(), PresentationKind::Algebra);
        let p = parse_presentation_file("gsbpres 1\nmanturov 3 2\norder: tower c > b > a\n").unwrap();
        assert_eq!(p.order(), &MonomialOrder::tower(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn empty_relations_block() {
        let p = parse_presentation_file("gsbpres 1\nalphabet: x y\nrelations:\n").unwrap();
        assert!(p.relations().is_empty());
        let p = parse_presentation_file("gsbpres 1\nalphabet: x y\n").unwrap();
        assert!(p.relations().is_empty());
    }

    #[test]
    fn located_errors() {
        let cases = [
            ("gsbpres 2\n", 1, 1),
            ("gsbpres 1\nalphabet: a b\nrelations:\n  ab = ad\n", 4, 8),
            ("gsbpres 1\nalphabet: a b\norder: lex a < b\n", 3, 8),
            ("gsbpres 1\nalphabet: a b\nrelations:\n  ab ba\n", 4, 3),
            ("gsbpres 1\nalphabet: a b\nstray\n", 3, 1),
        ];
        for (text, line, column) in cases {
            match parse_presentation_file(text) {
                Err(CliError::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn round_trip() {
        for text in [
            G23,
            "gsbpres 1\nmanturov 4 2\n",
            "gsbpres 1\nore sigma=2y^3 delta=1/2 y - 3\n",
            "gsbpres 1\nalphabet: x y\norder: revtower y < x\nrelations:\nxy = y^2 x\n",
        ] {
            let p = parse_presentation_file(text).unwrap();
            let again = parse_presentation_file(&serialize_presentation(&p)).unwrap();
            assert_eq!(again, p);
        }
    }
}
