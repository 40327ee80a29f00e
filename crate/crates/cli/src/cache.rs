//! `.gsb` files: a completed rewrite system saved beside its presentation.
//!
//! ```text
//! gsb 1
//! input: sha256:<digest of the presentation file>
//! caps: max_deg=12 max_rules=500 max_rounds=50 schema_bound=10 step_budget=1000000
//! alphabet: a b c
//! order: deglex a < b < c
//! certified: 10
//! rule b c a -> a c b
//! schema b (a c)^m b -> (c a)^m for m >= 1
//! ```
//!
//! Only the header, `alphabet:`, `order:` and the rule lines are required,
//! so hand-written systems load too.

use gsb_core::{Alphabet, Origin, RewriteSystem, Rule, RuleSchema, Word};

use crate::error::CliError;
use crate::syntax::{is_identifier, parse_order, parse_polynomial, parse_word, Letters, Span};

pub const HEADER: &str = "gsb 1";

#[derive(Clone, Debug)]
pub struct CachedSystem {
    pub system: RewriteSystem,
    pub aliases: Option<Vec<String>>,
    pub input_digest: Option<String>,
    pub caps: Option<String>,
    pub completion: Option<String>,
}

impl CachedSystem {
    pub fn display_alphabet(&self) -> Alphabet {
        match &self.aliases {
            Some(a) => Alphabet::new(a).expect("validated on load"),
            None => self.system.alphabet().clone(),
        }
    }
}

pub fn write_cache(c: &CachedSystem) -> String {
    let sys = &c.system;
    let a = sys.alphabet();
    let ord = sys.order();
    let mut out = format!("{HEADER}\n");
    if let Some(d) = &c.input_digest {
        out.push_str(&format!("input: {d}\n"));
    }
    if let Some(caps) = &c.caps {
        out.push_str(&format!("caps: {caps}\n"));
    }
    out.push_str(&format!("alphabet: {}\n", a.names().join(" ")));
    if let Some(aliases) = &c.aliases {
        out.push_str(&format!("aliases: {}\n", aliases.join(" ")));
    }
    out.push_str(&format!("order: {}\n", ord.describe(a)));
    match sys.certified_bound() {
        Some(m) => out.push_str(&format!("certified: {m}\n")),
        None => out.push_str("certified: none\n"),
    }
    if let Some(status) = &c.completion {
        out.push_str(&format!("completion: {status}\n"));
    }
    for r in sys.rules() {
        out.push_str(&format!("rule {} -> {}\n", a.render_spaced(&r.lhs), r.rhs.render_spaced(a, ord)));
    }
    for s in sys.schemas() {
        out.push_str(&format!("schema {}\n", s.render(a)));
    }
    out
}

fn header_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.strip_prefix(key)?.strip_prefix(':').map(str::trim)
}

fn schema_side(text: &str, span: Span, letters: Letters<'_>) -> Result<(Word, Word, Word), CliError> {
    let Some(open) = text.find('(') else {
        return Ok((parse_word(text, span, letters)?, Word::empty(), Word::empty()));
    };
    let close = text[open..]
        .find(")^m")
        .map(|i| i + open)
        .ok_or_else(|| span.error(open, "expected `(block)^m`"))?;
    let word_or_empty = |t: &str, off: usize| {
        if t.trim().is_empty() {
            Ok(Word::empty())
        } else {
            parse_word(t, Span::at(span.line, span.column + off), letters)
        }
    };
    Ok((
        word_or_empty(&text[..open], 0)?,
        word_or_empty(&text[open + 1..close], open + 1)?,
        word_or_empty(&text[close + 3..], close + 3)?,
    ))
}

fn parse_schema(text: &str, span: Span, letters: Letters<'_>) -> Result<RuleSchema, CliError> {
    let (body, m_min) = text
        .rsplit_once("for m >=")
        .ok_or_else(|| span.error(0, "expected `... for m >= <m0>`"))?;
    let m_min: u32 = m_min
        .trim()
        .parse()
        .map_err(|_| span.error(body.len(), "expected a positive minimum exponent"))?;
    let (lhs, rhs) = body.split_once("->").ok_or_else(|| span.error(0, "expected `->`"))?;
    let (prefix, block, suffix) = schema_side(lhs, span, letters)?;
    let (rhs_prefix, rhs_block, rhs_suffix) = schema_side(rhs, Span::at(span.line, span.column + lhs.len() + 2), letters)?;
    if block.is_empty() {
        return Err(span.error(0, "schema left side needs a block"));
    }
    Ok(RuleSchema {
        prefix,
        block,
        suffix,
        rhs_prefix,
        rhs_block,
        rhs_suffix,
        m_min,
    })
}

pub fn parse_cache(text: &str) -> Result<CachedSystem, CliError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut aliases: Option<Alphabet> = None;
    let mut order = None;
    let mut certified = None;
    let mut input_digest = None;
    let mut caps = None;
    let mut completion = None;
    let mut rule_lines = Vec::new();
    let mut schema_lines = Vec::new();
    let mut saw_header = false;

    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let span = Span::at(number, raw.len() - raw.trim_start().len() + 1);
        if !saw_header {
            if line != HEADER {
                return Err(span.error(0, format!("expected header {HEADER:?}")));
            }
            saw_header = true;
            continue;
        }
        let names = |v: &str| -> Result<Alphabet, CliError> {
            if v.split_whitespace().any(|n| !is_identifier(n)) {
                return Err(span.error(0, "letter names must be identifiers"));
            }
            Alphabet::new(v.split_whitespace()).map_err(|e| span.error(0, e.to_string()))
        };
        if let Some(v) = line.strip_prefix("rule ") {
            rule_lines.push((Span::at(number, span.column + 5), v));
        } else if let Some(v) = line.strip_prefix("schema ") {
            schema_lines.push((Span::at(number, span.column + 7), v));
        } else if let Some(v) = header_value(line, "alphabet") {
            alphabet = Some(names(v)?);
        } else if let Some(v) = header_value(line, "aliases") {
            aliases = Some(names(v)?);
        } else if let Some(v) = header_value(line, "order") {
            order = Some((Span::at(number, span.column + line.find(v).unwrap_or(0)), v));
        } else if let Some(v) = header_value(line, "certified") {
            certified = match v {
                "none" => None,
                m => Some(m.parse::<u32>().map_err(|_| span.error(0, "expected a bound or `none`"))?),
            };
        } else if let Some(v) = header_value(line, "input") {
            input_digest = Some(v.to_string());
        } else if let Some(v) = header_value(line, "caps") {
            caps = Some(v.to_string());
        } else if let Some(v) = header_value(line, "completion") {
            completion = Some(v.to_string());
        } else {
            return Err(span.error(0, format!("unexpected line {line:?}")));
        }
    }
    if !saw_header {
        return Err(CliError::Parse { line: 1, column: 1, message: format!("expected header {HEADER:?}") });
    }
    let alphabet = alphabet.ok_or(CliError::Parse { line: 1, column: 1, message: "missing alphabet: line".into() })?;
    if aliases.as_ref().is_some_and(|a| a.len() != alphabet.len()) {
        return Err(CliError::Parse { line: 1, column: 1, message: "one alias per letter required".into() });
    }
    let letters = Letters::new(&alphabet, aliases.as_ref());
    let (ospan, otext) = order.ok_or(CliError::Parse { line: 1, column: 1, message: "missing order: line".into() })?;
    let ord = parse_order(otext, ospan, letters)?;

    let mut rules = Vec::new();
    for (span, text) in rule_lines {
        let (l, r) = text.split_once("->").ok_or_else(|| span.error(0, "expected `lhs -> rhs`"))?;
        let lhs = parse_word(l, span, letters)?;
        let rhs = parse_polynomial(r, Span::at(span.line, span.column + l.len() + 2), letters)?;
        rules.push(Rule::new(lhs, rhs, Origin::Input, &ord).map_err(|e| span.error(0, e.to_string()))?);
    }
    let mut schemas = Vec::new();
    for (span, text) in schema_lines {
        schemas.push(parse_schema(text, span, letters)?);
    }
    let system = RewriteSystem::new(alphabet, ord, rules, schemas)
        .map_err(|e| CliError::Parse { line: 1, column: 1, message: e.to_string() })?
        .with_certification(certified);
    Ok(CachedSystem {
        system,
        aliases: aliases.map(|a| a.names().to_vec()),
        input_digest,
        caps,
        completion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsb_core::{MonomialOrder, Polynomial};

    fn g23() -> RewriteSystem {
        let a = Alphabet::latin(3);
        let ord = MonomialOrder::deglex_by_index(3);
        let rules = [("aa", "1"), ("bb", "1"), ("cc", "1"), ("bca", "acb"), ("cab", "bac"), ("cba", "abc")]
            .iter()
            .map(|(l, r)| Rule::new(a.word(l), Polynomial::word(a.word(r)), Origin::Input, &ord).unwrap())
            .collect();
        let schema = RuleSchema {
            prefix: a.word("b"),
            block: a.word("ac"),
            suffix: a.word("b"),
            rhs_prefix: Word::empty(),
            rhs_block: a.word("ca"),
            rhs_suffix: Word::empty(),
            m_min: 1,
        };
        RewriteSystem::new(a, ord, rules, vec![schema]).unwrap()
    }

    #[test]
    fn round_trip() {
        let c = CachedSystem {
            system: g23().with_certification(Some(10)),
            aliases: None,
            input_digest: Some("sha256:00".into()),
            caps: Some("max_deg=12".into()),
            completion: Some("CapReached".into()),
        };
        let text = write_cache(&c);
        assert!(text.contains("schema b (a c)^m b -> (c a)^m for m >= 1\n"));
        assert!(text.contains("rule b c a -> a c b\n"));
        let back = parse_cache(&text).unwrap();
        assert_eq!(back.system.rules().len(), 6);
        assert_eq!(back.system.schemas(), c.system.schemas());
        assert_eq!(back.system.certified_bound(), Some(10));
        assert_eq!(write_cache(&back), text);
    }

    #[test]
    fn schema_sides() {
        let a = Alphabet::latin(3);
        let l = Letters::new(&a, None);
        let s = parse_schema("(a b)^m c -> c (b a)^m for m >= 2", Span::at(1, 1), l).unwrap();
        assert_eq!(s.prefix, Word::empty());
        assert_eq!(s.suffix, a.word("c"));
        assert_eq!(s.rhs_prefix, a.word("c"));
        assert_eq!(s.m_min, 2);
        let s = parse_schema("a (b)^m -> 1 for m >= 1", Span::at(1, 1), l).unwrap();
        assert!(s.rhs_block.is_empty() && s.rhs_prefix.is_empty());
        assert!(parse_schema("a b -> 1 for m >= 1", Span::at(1, 1), l).is_err());
    }

    #[test]
    fn rejects_misoriented_rules() {
        let text = "gsb 1\nalphabet: a b\norder: deglex a < b\nrule a -> b\n";
        assert!(matches!(parse_cache(text), Err(CliError::Parse { line: 4, .. })));
    }
}
