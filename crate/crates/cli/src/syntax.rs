//! Tokens, polynomials, words and order declarations as written in
//! presentation and cache files.

use std::str::FromStr;

use gsb_core::{Alphabet, Field, Letter, MonomialOrder, Polynomial, Rational, Word};
use num_bigint::BigInt;

use crate::error::CliError;

const MAX_EXPONENT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Colon,
    Semi,
    Lt,
    Gt,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    /// 0-based character offset in the parsed text.
    col: usize,
}

/// Location of a fragment inside a file, for error reporting.
#[derive(Clone, Copy, Debug)]
pub struct Span {
    pub line: usize,
    /// 1-based column of the fragment's first character.
    pub column: usize,
}

impl Span {
    pub fn at(line: usize, column: usize) -> Self {
        Span { line, column }
    }

    pub fn error(&self, offset: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            column: self.column + offset,
            message: message.into(),
        }
    }
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn tokenize(text: &str, span: Span) -> Result<Vec<Spanned>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    col: start,
                });
                continue;
            }
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Num(chars[start..i].iter().collect()),
                    col: start,
                });
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            other => return Err(span.error(i, format!("unexpected character {other:?}"))),
        };
        out.push(Spanned { tok, col: start });
        i += 1;
    }
    Ok(out)
}

/// Resolves identifiers to letters: a full letter name or alias first,
/// otherwise a run of single-character names such as `bca`.
#[derive(Clone, Copy)]
pub struct Letters<'a> {
    pub names: &'a Alphabet,
    pub aliases: Option<&'a Alphabet>,
}

impl<'a> Letters<'a> {
    pub fn new(names: &'a Alphabet, aliases: Option<&'a Alphabet>) -> Self {
        Letters { names, aliases }
    }

    fn resolve(&self, ident: &str) -> Option<Vec<Letter>> {
        let tables = std::iter::once(self.names).chain(self.aliases);
        for table in tables.clone() {
            if let Some(l) = table.letter(ident) {
                return Some(vec![l]);
            }
        }
        for table in tables {
            let split: Option<Vec<Letter>> = ident
                .chars()
                .map(|c| table.letter(c.encode_utf8(&mut [0u8; 4])))
                .collect();
            if split.is_some() {
                return split;
            }
        }
        None
    }

    fn single(&self, ident: &str) -> Option<Letter> {
        std::iter::once(self.names)
            .chain(self.aliases)
            .find_map(|t| t.letter(ident))
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    span: Span,
    end: usize,
    letters: Letters<'a>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, span: Span, letters: Letters<'a>) -> Result<Self, CliError> {
        Ok(Parser {
            toks: tokenize(text, span)?,
            pos: 0,
            span,
            end: text.chars().count(),
            letters,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |s| s.col)
    }

    fn err(&self, message: impl Into<String>) -> CliError {
        self.span.error(self.col(), message)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_end(&self) -> Result<(), CliError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected {}", describe(t)))),
        }
    }

    fn sum(&mut self) -> Result<Polynomial, CliError> {
        let mut acc = Polynomial::zero();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let term = self.product()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn product(&mut self) -> Result<Polynomial, CliError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Ident(_) | Tok::Num(_) | Tok::LParen) => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<u64>, CliError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.bump();
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => match n.parse::<u64>() {
                Ok(k) if k <= MAX_EXPONENT => Ok(Some(k)),
                _ => Err(self.span.error(col, format!("exponent must be at most {MAX_EXPONENT}"))),
            },
            _ => Err(self.span.error(col, "expected an exponent after '^'")),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, CliError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let num = BigInt::from_str(&n).expect("digits");
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Num(d)) => BigInt::from_str(&d).expect("digits"),
                        _ => return Err(self.span.error(dcol, "expected a denominator")),
                    }
                } else {
                    BigInt::from(1)
                };
                let c = Rational::from_ratio(&num, &den).ok_or_else(|| self.span.error(col, "zero denominator"))?;
                let base = Polynomial::constant(c);
                Ok(match self.exponent()? {
                    Some(k) => power(&base, k),
                    None => base,
                })
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.span.error(self.toks.get(self.pos - 1).map_or(self.end, |s| s.col), "expected ')'"));
                }
                Ok(match self.exponent()? {
                    Some(k) => power(&inner, k),
                    None => inner,
                })
            }
            Some(Tok::Ident(name)) => {
                let letters = self
                    .letters
                    .resolve(&name)
                    .ok_or_else(|| self.span.error(col, format!("unknown letter {name:?}")))?;
                let (last, head) = letters.split_last().expect("identifiers are non-empty");
                let head = Word::from_letters(head.to_vec());
                let tail = match self.exponent()? {
                    Some(k) => Word::letter(*last).pow(k as usize),
                    None => Word::letter(*last),
                };
                Ok(Polynomial::word(head.concat(&tail)))
            }
            Some(t) => Err(self.span.error(col, format!("unexpected {}", describe(&t)))),
            None => Err(self.span.error(col, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("name {s:?}"),
        Tok::Num(s) => format!("number {s}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Colon => "':'".into(),
        Tok::Semi => "';'".into(),
        Tok::Lt => "'<'".into(),
        Tok::Gt => "'>'".into(),
    }
}

fn power(p: &Polynomial, k: u64) -> Polynomial {
    (0..k).fold(Polynomial::one(), |acc, _| &acc * p)
}

/// Parses a noncommutative polynomial with rational coefficients.
pub fn parse_polynomial(text: &str, span: Span, letters: Letters<'_>) -> Result<Polynomial, CliError> {
    let mut p = Parser::new(text, span, letters)?;
    if p.peek().is_none() {
        return Err(p.err("expected a polynomial"));
    }
    let out = p.sum()?;
    p.expect_end()?;
    Ok(out)
}

/// Parses a single word (a monomial with coefficient 1, `1` for the empty
/// word).
pub fn parse_word(text: &str, span: Span, letters: Letters<'_>) -> Result<Word, CliError> {
    let p = parse_polynomial(text, span, letters)?;
    match p.as_monomial() {
        Some((w, c)) if c.is_one() => Ok(w.clone()),
        _ => Err(span.error(0, format!("{text:?} is not a word"))),
    }
}

/// Parses `deglex a < b < c`, `wdeglex x:2 y:1 ; y < x`, `tower a > b > c`
/// or `revtower y < x`. Chains may be written ascending or descending; a
/// missing chain means index order.
pub fn parse_order(text: &str, span: Span, letters: Letters<'_>) -> Result<MonomialOrder, CliError> {
    let mut p = Parser::new(text, span, letters)?;
    let n = letters.names.len();
    let col = p.col();
    let family = match p.bump() {
        Some(Tok::Ident(f)) => f,
        _ => return Err(p.span.error(col, "expected an order family")),
    };
    let weights = if family == "wdeglex" {
        let mut weights = vec![None; n];
        while let Some(Tok::Ident(_)) = p.peek() {
            let (l, lcol) = order_letter(&mut p)?;
            if p.bump() != Some(Tok::Colon) {
                return Err(p.span.error(lcol, "expected letter:weight"));
            }
            let wcol = p.col();
            let w = match p.bump() {
                Some(Tok::Num(w)) => w.parse::<u32>().ok().filter(|&w| w > 0),
                _ => None,
            }
            .ok_or_else(|| p.span.error(wcol, "weights must be positive integers"))?;
            if weights[l as usize].replace(w).is_some() {
                return Err(p.span.error(lcol, "weight given twice"));
            }
        }
        let weights: Option<Vec<u32>> = weights.into_iter().collect();
        let weights = weights.ok_or_else(|| p.span.error(col, "every letter needs a weight"))?;
        match p.peek() {
            Some(Tok::Semi) => {
                p.bump();
            }
            None => {}
            Some(t) => return Err(p.err(format!("unexpected {}", describe(t)))),
        }
        Some(weights)
    } else {
        None
    };
    let ascending = if p.peek().is_none() {
        (0..n as Letter).collect()
    } else {
        order_chain(&mut p, n)?
    };
    p.expect_end()?;
    let ord = match family.as_str() {
        "deglex" => MonomialOrder::deglex(&ascending),
        "wdeglex" => MonomialOrder::weighted_deglex(weights.expect("parsed above"), &ascending),
        "tower" => MonomialOrder::tower(&ascending),
        "revtower" => MonomialOrder::reverse_tower(&ascending),
        other => return Err(span.error(col, format!("unknown order family {other:?}"))),
    };
    ord.map_err(|e| span.error(col, e.to_string()))
}

fn order_letter(p: &mut Parser<'_>) -> Result<(Letter, usize), CliError> {
    let col = p.col();
    match p.bump() {
        Some(Tok::Ident(name)) => p
            .letters
            .single(&name)
            .map(|l| (l, col))
            .ok_or_else(|| p.span.error(col, format!("unknown letter {name:?}"))),
        _ => Err(p.span.error(col, "expected a letter")),
    }
}

fn order_chain(p: &mut Parser<'_>, n: usize) -> Result<Vec<Letter>, CliError> {
    let start = p.col();
    let mut chain = vec![order_letter(p)?.0];
    let mut direction = None;
    while let Some(t) = p.peek().cloned() {
        if t != Tok::Lt && t != Tok::Gt {
            break;
        }
        if direction.is_some_and(|d| d != t) {
            return Err(p.err("mixed '<' and '>' in one chain"));
        }
        direction = Some(t);
        p.bump();
        chain.push(order_letter(p)?.0);
    }
    if direction == Some(Tok::Gt) {
        chain.reverse();
    }
    let mut seen = vec![false; n];
    for &l in &chain {
        if std::mem::replace(&mut seen[l as usize], true) {
            return Err(p.span.error(start, "letter listed twice in the order"));
        }
    }
    if chain.len() != n {
        return Err(p.span.error(start, format!("the order must list all {n} letters")));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::latin(3)
    }

    fn poly(text: &str) -> Result<Polynomial, CliError> {
        let a = abc();
        parse_polynomial(text, Span::at(1, 1), Letters::new(&a, None))
    }

    #[test]
    fn polynomial_syntax() {
        let a = abc();
        let ord = MonomialOrder::deglex_by_index(3);
        let render = |t: &str| poly(t).unwrap().render(&a, &ord);
        assert_eq!(render("b (a c)^2 b"), "bacacb");
        assert_eq!(render("2 a*b - 1/2 c + 1"), "2 ab - 1/2 c + 1");
        assert_eq!(render("ab^3"), "abbb");
        assert_eq!(render("(a + b)^2"), "bb + ba + ab + aa");
        assert_eq!(render("-a + a"), "0");
        assert_eq!(render("1"), "1");
    }

    #[test]
    fn errors_carry_columns() {
        match poly("ab + d") {
            Err(CliError::Parse { line: 1, column: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        match poly("ab +") {
            Err(CliError::Parse { column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(poly("a ? b").is_err());
        assert!(poly("(a b").is_err());
        assert!(poly("1/0").is_err());
    }

    #[test]
    fn multi_character_names() {
        let a = Alphabet::new(["a12", "a13", "a23"]).unwrap();
        let al = Alphabet::latin(3);
        let l = Letters::new(&a, Some(&al));
        let w = parse_word("a12 a13*c", Span::at(1, 1), l).unwrap();
        assert_eq!(w, Word::from_letters(vec![0, 1, 2]));
        assert_eq!(parse_word("bca", Span::at(1, 1), l).unwrap(), Word::from_letters(vec![1, 2, 0]));
        assert!(parse_word("2 a12", Span::at(1, 1), l).is_err());
    }

    #[test]
    fn orders() {
        let a = abc();
        let l = Letters::new(&a, None);
        let sp = Span::at(1, 1);
        assert_eq!(parse_order("deglex a < b < c", sp, l).unwrap(), MonomialOrder::deglex_by_index(3));
        assert_eq!(parse_order("deglex c > b > a", sp, l).unwrap(), MonomialOrder::deglex_by_index(3));
        assert_eq!(parse_order("tower a > b > c", sp, l).unwrap(), MonomialOrder::tower(&[2, 1, 0]).unwrap());
        assert_eq!(
            parse_order("wdeglex a:1 b:2 c:1 ; c < a < b", sp, l).unwrap(),
            MonomialOrder::weighted_deglex(vec![1, 2, 1], &[2, 0, 1]).unwrap()
        );
        for bad in ["lex a < b < c", "deglex a < b", "deglex a < b > c", "deglex a < a < b", "wdeglex a:0 b:1 c:1"] {
            assert!(parse_order(bad, sp, l).is_err(), "{bad}");
        }
    }

    #[test]
    fn described_orders_reparse() {
        let a = abc();
        let l = Letters::new(&a, None);
        for ord in [
            MonomialOrder::deglex(&[1, 2, 0]).unwrap(),
            MonomialOrder::weighted_deglex(vec![3, 1, 2], &[0, 2, 1]).unwrap(),
            MonomialOrder::tower(&[2, 0, 1]).unwrap(),
            MonomialOrder::reverse_tower(&[0, 1, 2]).unwrap(),
        ] {
            assert_eq!(parse_order(&ord.describe(&a), Span::at(1, 1), l).unwrap(), ord);
        }
    }
}
