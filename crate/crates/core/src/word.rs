//! Alphabets and free-monoid words.

use std::collections::HashMap;
use std::fmt;

use crate::error::{GsbError, Result};

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u16;

/// A finite ordered set of named letters. The listing order is the default
/// base order on letters.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut out = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(GsbError::Domain("letter names must be non-empty".into()));
            }
            if name == "1" || name.chars().any(|c| c.is_whitespace() || "*()^+-=/;,<>:".contains(c)) {
                return Err(GsbError::Domain(format!("invalid letter name {name:?}")));
            }
            if out.index.contains_key(name) {
                return Err(GsbError::Domain(format!("duplicate letter {name:?}")));
            }
            if out.names.len() >= Letter::MAX as usize {
                return Err(GsbError::Domain("alphabet too large".into()));
            }
            out.index.insert(name.to_string(), out.names.len() as Letter);
            out.names.push(name.to_string());
        }
        if out.names.is_empty() {
            return Err(GsbError::Domain("alphabet must contain at least one letter".into()));
        }
        Ok(out)
    }

    /// Single-character alphabet `a, b, c, ...` of the given size.
    pub fn latin(size: usize) -> Self {
        assert!((1..=26).contains(&size));
        Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word written as whitespace- or `*`-separated letter names.
    /// A token that is not a letter name is split into single-character
    /// letters when possible, so `bca` and `b c a` both work. `1` is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() || token == "1" {
                continue;
            }
            if let Some(l) = self.letter(token) {
                letters.push(l);
                continue;
            }
            for ch in token.chars() {
                let mut buf = [0u8; 4];
                match self.letter(ch.encode_utf8(&mut buf)) {
                    Some(l) => letters.push(l),
                    None => return Err(GsbError::Domain(format!("unknown letter in {token:?}"))),
                }
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Shortcut for tests and constructors with known-good input.
    pub fn word(&self, text: &str) -> Word {
        self.parse_word(text).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Renders a word: letters concatenated for single-character alphabets,
    /// space separated otherwise; the empty word renders as `1`.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Renders with explicit separators, safe to re-parse for any alphabet.
    pub fn render_spaced(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        word.letters().iter().all(|&l| (l as usize) < self.len())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// An element of the free monoid; the empty word is the identity `1`.
///
/// The derived `Ord` is plain lexicographic on letter indices and exists only
/// so words can key ordered collections; it is not a monomial order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self · b`
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(&left.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&right.0);
        Word(v)
    }

    pub fn pow(&self, exp: usize) -> Word {
        Word(self.0.repeat(exp))
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    /// Offset of the leftmost occurrence of `factor`.
    pub fn find_factor(&self, factor: &Word) -> Option<usize> {
        if factor.is_empty() {
            return Some(0);
        }
        self.0.windows(factor.len()).position(|w| w == factor.letters())
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        self.find_factor(factor).is_some()
    }

    /// Every word of the given length over an alphabet of `size` letters, in
    /// lexicographic order.
    pub fn all_of_length(size: usize, len: usize) -> impl Iterator<Item = Word> {
        let total = size.checked_pow(len as u32).expect("word count overflow");
        (0..total).map(move |mut code| {
            let mut v = vec![0 as Letter; len];
            for slot in v.iter_mut().rev() {
                *slot = (code % size) as Letter;
                code /= size;
            }
            Word(v)
        })
    }

    /// Every word of length at most `max_len`, shortest first.
    pub fn all_up_to(size: usize, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |len| Word::all_of_length(size, len))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if *l < 26 {
                write!(f, "{}", (b'a' + *l as u8) as char)?;
            } else {
                write!(f, "#{l}")?;
            }
        }
        Ok(())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}
