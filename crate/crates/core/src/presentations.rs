//! Presentations, the Manturov and Ore constructors, and the word problem.

use crate::error::{GsbError, Result};
use crate::field::{Field, Rational};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::rewrite::RewriteSystem;
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    /// Every relation is `u = v` between words.
    Semigroup,
    Algebra,
}

/// Generators, defining relations `lhs = rhs` and a declared monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<F: Field = Rational> {
    alphabet: Alphabet,
    relations: Vec<(Polynomial<F>, Polynomial<F>)>,
    order: MonomialOrder,
    kind: PresentationKind,
    aliases: Option<Vec<String>>,
}

fn monomial_word<F: Field>(p: &Polynomial<F>) -> Option<&Word> {
    match p.as_monomial() {
        Some((w, c)) if c.is_one() => Some(w),
        _ => None,
    }
}

impl<F: Field> Presentation<F> {
    /// The kind is inferred: semigroup when both sides of every relation are
    /// single words with coefficient 1.
    pub fn new(
        alphabet: Alphabet,
        relations: Vec<(Polynomial<F>, Polynomial<F>)>,
        order: MonomialOrder,
    ) -> Result<Self> {
        if order.num_letters() != alphabet.len() {
            return Err(GsbError::Domain("order and alphabet sizes differ".into()));
        }
        for (l, r) in &relations {
            if l == r {
                return Err(GsbError::Domain("relation with identical sides".into()));
            }
            if !l.support().chain(r.support()).all(|w| alphabet.contains_word(w)) {
                return Err(GsbError::Domain("relation uses a letter outside the alphabet".into()));
            }
        }
        let kind = if relations
            .iter()
            .all(|(l, r)| monomial_word(l).is_some() && monomial_word(r).is_some())
        {
            PresentationKind::Semigroup
        } else {
            PresentationKind::Algebra
        };
        Ok(Presentation {
            alphabet,
            relations,
            order,
            kind,
            aliases: None,
        })
    }

    /// Semigroup presentation from word pairs.
    pub fn semigroup(alphabet: Alphabet, relations: Vec<(Word, Word)>, order: MonomialOrder) -> Result<Self> {
        let rels = relations
            .into_iter()
            .map(|(u, v)| (Polynomial::word(u), Polynomial::word(v)))
            .collect();
        Self::new(alphabet, rels, order)
    }

    pub fn with_aliases(mut self, aliases: Vec<String>) -> Result<Self> {
        if aliases.len() != self.alphabet.len() {
            return Err(GsbError::Domain("one alias per letter required".into()));
        }
        Alphabet::new(&aliases)?;
        self.aliases = Some(aliases);
        Ok(self)
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Result<Self> {
        if order.num_letters() != self.alphabet.len() {
            return Err(GsbError::Domain("order and alphabet sizes differ".into()));
        }
        self.order = order;
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(Polynomial<F>, Polynomial<F>)] {
        &self.relations
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn aliases(&self) -> Option<&[String]> {
        self.aliases.as_deref()
    }

    /// Alias alphabet when aliases are set, otherwise the alphabet itself.
    pub fn display_alphabet(&self) -> Alphabet {
        match &self.aliases {
            Some(a) => Alphabet::new(a).expect("aliases validated"),
            None => self.alphabet.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ManturovSpec {
    pub n: usize,
    pub k: usize,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn generator_name(subset: &[usize], n: usize) -> String {
    if n <= 9 {
        let digits: String = subset.iter().map(|i| i.to_string()).collect();
        format!("a{digits}")
    } else {
        let parts: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
        format!("a{}", parts.join("_"))
    }
}

/// The Manturov group `G^k_n` as a semigroup presentation under deg-lex with
/// generators ordered by their index sets.
///
/// Generators are named `a` followed by the sorted indices (`a12`, `a134`);
/// up to 26 generators also get single-letter aliases `a, b, c, ...` in the
/// same order.
pub fn manturov(spec: ManturovSpec) -> Result<Presentation> {
    let ManturovSpec { n, k } = spec;
    if k == 0 || n <= k {
        return Err(GsbError::Domain(format!("Manturov group needs n > k >= 1, got n = {n}, k = {k}")));
    }
    let gens = subsets(n, k);
    let names: Vec<String> = gens.iter().map(|s| generator_name(s, n)).collect();
    let alphabet = Alphabet::new(&names)?;
    let index_of = |s: &[usize]| -> Letter {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        gens.iter().position(|g| *g == sorted).expect("k-subset is a generator") as Letter
    };

    let mut relations: Vec<(Word, Word)> = Vec::new();
    for g in 0..gens.len() as Letter {
        relations.push((Word::from_letters(vec![g, g]), Word::empty()));
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let common = gens[i].iter().filter(|x| gens[j].contains(x)).count();
            if common + 1 < k {
                let (a, b) = (i as Letter, j as Letter);
                relations.push((Word::from_letters(vec![b, a]), Word::from_letters(vec![a, b])));
            }
        }
    }
    for u in subsets(n, k + 1) {
        for perm in permutations(&u) {
            let mut rev = perm.clone();
            rev.reverse();
            if perm > rev {
                continue;
            }
            let word: Vec<Letter> = perm
                .iter()
                .map(|drop| {
                    let m: Vec<usize> = u.iter().copied().filter(|x| x != drop).collect();
                    index_of(&m)
                })
                .collect();
            let lhs = Word::from_letters(word);
            relations.push((lhs.clone(), lhs.reversed()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    relations.retain(|r| seen.insert(r.clone()));

    let order = MonomialOrder::deglex_by_index(alphabet.len());
    let pres = Presentation::semigroup(alphabet, relations, order)?;
    if gens.len() <= 26 {
        let aliases = (0..gens.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        pres.with_aliases(aliases)
    } else {
        Ok(pres)
    }
}

/// Letter indices of the Ore presentations built by [`ore_extension`].
pub const ORE_X: Letter = 0;
pub const ORE_Y: Letter = 1;

/// `F[y][x; σ, δ]` given the images `σ(y)` and `δ(y)`, written as
/// polynomials over the two-letter alphabet `{x, y}` that involve `y` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreSpec<F: Field = Rational> {
    pub sigma_of_y: Polynomial<F>,
    pub delta_of_y: Polynomial<F>,
}

impl<F: Field> OreSpec<F> {
    /// `σ(y) = Σ sigma[i] y^i`, `δ(y) = Σ delta[i] y^i`.
    pub fn from_coefficients(sigma: &[i64], delta: &[i64]) -> Self {
        let poly = |cs: &[i64]| {
            Polynomial::from_terms(
                cs.iter()
                    .enumerate()
                    .map(|(i, &c)| (Word::letter(ORE_Y).pow(i), F::from_i64(c))),
            )
        };
        OreSpec {
            sigma_of_y: poly(sigma),
            delta_of_y: poly(delta),
        }
    }
}

/// The presentation `⟨x, y | xy = σ(y)·x + δ(y)⟩`, declared under the
/// weighted deg-lex order with `x` of weight `max(deg δ(y), 1)`, `y` of
/// weight 1 and `y < x`.
pub fn ore_extension<F: Field>(spec: &OreSpec<F>) -> Result<Presentation<F>> {
    let only_y = |p: &Polynomial<F>| p.support().all(|w| w.letters().iter().all(|&l| l == ORE_Y));
    if !only_y(&spec.sigma_of_y) || !only_y(&spec.delta_of_y) {
        return Err(GsbError::Domain("σ(y) and δ(y) must be polynomials in y alone".into()));
    }
    if spec.sigma_of_y.is_zero() && spec.delta_of_y.is_zero() {
        return Err(GsbError::Domain("σ(y) and δ(y) are both zero".into()));
    }
    let alphabet = Alphabet::new(["x", "y"])?;
    let x = Word::letter(ORE_X);
    let lhs = Polynomial::word(Word::from_letters(vec![ORE_X, ORE_Y]));
    let rhs = &spec.sigma_of_y.wrap(&Word::empty(), &x) + &spec.delta_of_y;
    let delta_deg = spec.delta_of_y.degree().unwrap_or(0).max(1) as u32;
    let order = MonomialOrder::weighted_deglex(vec![delta_deg, 1], &[ORE_Y, ORE_X])?;
    Presentation::new(alphabet, vec![(lhs, rhs)], order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordProblemVerdict {
    pub equal: bool,
    pub normal_form_left: Word,
    pub normal_form_right: Word,
    /// Schema bound under which the system was verified; the answer is
    /// canonical only when this is set.
    pub certified_bound: Option<u32>,
}

/// Decides `u = v` by comparing normal forms in a semigroup system.
pub fn word_problem<F: Field>(sys: &RewriteSystem<F>, u: &Word, v: &Word) -> Result<WordProblemVerdict> {
    if !sys.is_semigroup() {
        return Err(GsbError::UnsupportedKind("word problem needs a binomial system".into()));
    }
    for w in [u, v] {
        if !sys.alphabet().contains_word(w) {
            return Err(GsbError::Domain("word uses a letter outside the alphabet".into()));
        }
    }
    let left = sys.normal_word(u)?;
    let right = sys.normal_word(v)?;
    Ok(WordProblemVerdict {
        equal: left == right,
        normal_form_left: left,
        normal_form_right: right,
        certified_bound: sys.certified_bound(),
    })
}
