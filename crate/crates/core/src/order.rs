//! Monomial orders on the free monoid.
//!
//! Four families are supported. Each carries a letter priority; the
//! weighted family also carries a positive weight per letter.
//!
//! The tower order compares `wt(u) = (u', n_u, u_0, ..., u_{n_u})`
//! lexicographically, where `u'` is the largest letter of `u`, `n_u` its
//! number of occurrences and `u_i` the segments between them. Segments are
//! compared recursively with the empty word smallest. The reverse tower order
//! compares the segments from last to first; equivalently it is the tower
//! order applied to reversed words, which makes it a monomial order for any
//! alphabet size.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::{GsbError, Result};
use crate::field::Rational;
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    DegLex { rank: Vec<u32> },
    WeightedDegLex { weights: Vec<u32>, rank: Vec<u32> },
    Tower { rank: Vec<u32> },
    ReverseTower { rank: Vec<u32> },
}

/// How far a smaller word can outgrow a larger one: `u < v` implies
/// `|u| <= f(|v|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthBound {
    /// `|u| <= c |v|`
    Linear(Rational),
    /// `|u| <= C |v|^d` for some constant `C`
    PolynomialBound(u32),
    /// No bound; growth of the monomial algebra is only a lower bound.
    NoBound,
}

fn ranks_from_ascending(ascending: &[Letter]) -> Result<Vec<u32>> {
    let n = ascending.len();
    let mut rank = vec![u32::MAX; n];
    for (pos, &l) in ascending.iter().enumerate() {
        let slot = rank
            .get_mut(l as usize)
            .ok_or_else(|| GsbError::InvalidOrder(format!("letter index {l} out of range")))?;
        if *slot != u32::MAX {
            return Err(GsbError::InvalidOrder(format!("letter index {l} listed twice")));
        }
        *slot = pos as u32;
    }
    if n == 0 {
        return Err(GsbError::InvalidOrder("empty letter priority".into()));
    }
    Ok(rank)
}

impl MonomialOrder {
    /// Deg-lex order; `ascending` lists letter indices from smallest to largest.
    pub fn deglex(ascending: &[Letter]) -> Result<Self> {
        Ok(MonomialOrder::DegLex {
            rank: ranks_from_ascending(ascending)?,
        })
    }

    /// Deg-lex with letters ordered by index.
    pub fn deglex_by_index(n: usize) -> Self {
        MonomialOrder::DegLex {
            rank: (0..n as u32).collect(),
        }
    }

    pub fn weighted_deglex(weights: Vec<u32>, ascending: &[Letter]) -> Result<Self> {
        let rank = ranks_from_ascending(ascending)?;
        if weights.len() != rank.len() {
            return Err(GsbError::InvalidOrder("one weight per letter required".into()));
        }
        if weights.contains(&0) {
            return Err(GsbError::InvalidOrder("weights must be positive".into()));
        }
        Ok(MonomialOrder::WeightedDegLex { weights, rank })
    }

    pub fn tower(ascending: &[Letter]) -> Result<Self> {
        Ok(MonomialOrder::Tower {
            rank: ranks_from_ascending(ascending)?,
        })
    }

    pub fn reverse_tower(ascending: &[Letter]) -> Result<Self> {
        Ok(MonomialOrder::ReverseTower {
            rank: ranks_from_ascending(ascending)?,
        })
    }

    fn rank(&self) -> &[u32] {
        match self {
            MonomialOrder::DegLex { rank }
            | MonomialOrder::WeightedDegLex { rank, .. }
            | MonomialOrder::Tower { rank }
            | MonomialOrder::ReverseTower { rank } => rank,
        }
    }

    pub fn num_letters(&self) -> usize {
        self.rank().len()
    }

    /// Letter indices from smallest to largest.
    pub fn ascending_letters(&self) -> Vec<Letter> {
        let rank = self.rank();
        let mut letters: Vec<Letter> = (0..rank.len() as Letter).collect();
        letters.sort_by_key(|&l| rank[l as usize]);
        letters
    }

    pub fn family(&self) -> &'static str {
        match self {
            MonomialOrder::DegLex { .. } => "deglex",
            MonomialOrder::WeightedDegLex { .. } => "wdeglex",
            MonomialOrder::Tower { .. } => "tower",
            MonomialOrder::ReverseTower { .. } => "revtower",
        }
    }

    /// The reverse tower order on more than two letters is our own
    /// generalisation of the two-letter construction.
    pub fn is_generalized_reverse_tower(&self) -> bool {
        matches!(self, MonomialOrder::ReverseTower { rank } if rank.len() > 2)
    }

    /// Compares two words, checking that both are over this order's alphabet.
    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering> {
        let n = self.num_letters();
        for w in [u, v] {
            if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= n) {
                return Err(GsbError::Domain(format!(
                    "letter index {l} outside an alphabet of {n} letters"
                )));
            }
        }
        Ok(self.cmp_words(u, v))
    }

    /// Unchecked comparison; callers guarantee the letters are in range.
    pub fn cmp_words(&self, u: &Word, v: &Word) -> Ordering {
        self.cmp_slices(u.letters(), v.letters())
    }

    pub fn cmp_slices(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        match self {
            MonomialOrder::DegLex { rank } => u.len().cmp(&v.len()).then_with(|| lex(rank, u, v)),
            MonomialOrder::WeightedDegLex { weights, rank } => {
                let wu: u64 = u.iter().map(|&l| weights[l as usize] as u64).sum();
                let wv: u64 = v.iter().map(|&l| weights[l as usize] as u64).sum();
                wu.cmp(&wv).then_with(|| lex(rank, u, v))
            }
            MonomialOrder::Tower { rank } => tower(rank, u, v, false),
            MonomialOrder::ReverseTower { rank } => tower(rank, u, v, true),
        }
    }

    pub fn less(&self, u: &Word, v: &Word) -> bool {
        self.cmp_words(u, v) == Ordering::Less
    }

    pub fn length_bound(&self) -> LengthBound {
        match self {
            MonomialOrder::DegLex { .. } => LengthBound::Linear(Rational::from_integer(BigInt::from(1))),
            MonomialOrder::WeightedDegLex { weights, .. } => {
                let max = weights.iter().copied().max().unwrap_or(1);
                LengthBound::Linear(Rational::from_integer(BigInt::from(max)))
            }
            MonomialOrder::Tower { .. } | MonomialOrder::ReverseTower { .. } => LengthBound::NoBound,
        }
    }

    /// Text form used by presentation files, e.g. `deglex a < b < c`.
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let asc: Vec<&str> = self
            .ascending_letters()
            .into_iter()
            .map(|l| alphabet.name(l))
            .collect();
        match self {
            MonomialOrder::DegLex { .. } => format!("deglex {}", asc.join(" < ")),
            MonomialOrder::WeightedDegLex { weights, .. } => {
                let ws: Vec<String> = alphabet
                    .letters()
                    .map(|l| format!("{}:{}", alphabet.name(l), weights[l as usize]))
                    .collect();
                format!("wdeglex {} ; {}", ws.join(" "), asc.join(" < "))
            }
            MonomialOrder::Tower { .. } => {
                let desc: Vec<&str> = asc.iter().rev().copied().collect();
                format!("tower {}", desc.join(" > "))
            }
            MonomialOrder::ReverseTower { .. } => format!("revtower {}", asc.join(" < ")),
        }
    }
}

fn lex(rank: &[u32], u: &[Letter], v: &[Letter]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        let c = rank[*a as usize].cmp(&rank[*b as usize]);
        if c != Ordering::Equal {
            return c;
        }
    }
    u.len().cmp(&v.len())
}

fn tower(rank: &[u32], u: &[Letter], v: &[Letter], reverse: bool) -> Ordering {
    match (u.is_empty(), v.is_empty()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    let top = |w: &[Letter]| *w.iter().max_by_key(|&&l| rank[l as usize]).unwrap();
    let (tu, tv) = (top(u), top(v));
    let c = rank[tu as usize].cmp(&rank[tv as usize]);
    if c != Ordering::Equal {
        return c;
    }
    let nu = u.iter().filter(|&&l| l == tu).count();
    let nv = v.iter().filter(|&&l| l == tv).count();
    let c = nu.cmp(&nv);
    if c != Ordering::Equal {
        return c;
    }
    let su: Vec<&[Letter]> = u.split(|&l| l == tu).collect();
    let sv: Vec<&[Letter]> = v.split(|&l| l == tv).collect();
    let pairs: Box<dyn Iterator<Item = (&&[Letter], &&[Letter])>> = if reverse {
        Box::new(su.iter().zip(sv.iter()).rev())
    } else {
        Box::new(su.iter().zip(sv.iter()))
    };
    for (a, b) in pairs {
        let c = tower(rank, a, b, reverse);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}
