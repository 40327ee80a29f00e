//! Noncommutative polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GsbError, Result};
use crate::field::{Field, Rational};
use crate::order::MonomialOrder;
use crate::word::{Alphabet, Word};

/// A finitely supported combination of words. Zero coefficients never appear
/// in the support. The support has no intrinsic monomial order; anything
/// order-dependent takes a [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F: Field = Rational> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn monomial(word: Word, coeff: F) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Polynomial { terms }
    }

    pub fn word(word: Word) -> Self {
        Self::monomial(word, F::one())
    }

    /// Merges repeated words and drops cancelled terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    /// `u - v`, the polynomial of a semigroup relation `u = v`.
    pub fn binomial(u: Word, v: Word) -> Self {
        Self::from_terms([(u, F::one()), (v, F::one().neg())])
    }

    pub fn add_term(&mut self, word: Word, coeff: &F) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.add(coeff);
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, word: &Word) -> F {
        self.terms.get(word).cloned().unwrap_or_else(F::zero)
    }

    pub(crate) fn remove_term(&mut self, word: &Word) -> Option<F> {
        self.terms.remove(word)
    }

    /// The single term when the support has exactly one word.
    pub fn as_monomial(&self) -> Option<(&Word, &F)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Nonzero constant, if this is one.
    pub fn as_constant(&self) -> Option<&F> {
        match self.as_monomial() {
            Some((w, c)) if w.is_empty() => Some(c),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect(),
        }
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.wrap(left, right), c.clone()))
                .collect(),
        }
    }

    /// Free-algebra product: distributive concatenation.
    pub fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &a.mul(b));
            }
        }
        out
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &c.neg());
        }
        out
    }

    /// The order-maximal word of the support and its coefficient.
    pub fn leading(&self, ord: &MonomialOrder) -> Result<(Word, F)> {
        let (w, c) = self.leading_ref(ord).ok_or(GsbError::EmptyPolynomial)?;
        Ok((w.clone(), c.clone()))
    }

    pub(crate) fn leading_ref(&self, ord: &MonomialOrder) -> Option<(&Word, &F)> {
        self.terms
            .iter()
            .reduce(|best, cand| if ord.cmp_words(cand.0, best.0).is_gt() { cand } else { best })
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self, ord: &MonomialOrder) -> Result<Self> {
        let (_, lc) = self.leading_ref(ord).ok_or(GsbError::EmptyPolynomial)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        let inv = lc.inv().ok_or(GsbError::EmptyPolynomial)?;
        Ok(self.scale(&inv))
    }

    /// Support words in decreasing order.
    pub fn sorted_support(&self, ord: &MonomialOrder) -> Vec<&Word> {
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|a, b| ord.cmp_words(b, a));
        words
    }

    /// Human-readable form, terms in decreasing order under `ord`.
    pub fn render(&self, alphabet: &Alphabet, ord: &MonomialOrder) -> String {
        self.render_with(ord, |w| alphabet.render(w))
    }

    /// Like [`render`](Self::render) but with space-separated letters so the
    /// output re-parses for any alphabet.
    pub fn render_spaced(&self, alphabet: &Alphabet, ord: &MonomialOrder) -> String {
        self.render_with(ord, |w| alphabet.render_spaced(w))
    }

    fn render_with(&self, ord: &MonomialOrder, word: impl Fn(&Word) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, w) in self.sorted_support(ord).into_iter().enumerate() {
            let c = &self.terms[w];
            let (negative, magnitude) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&magnitude.to_string());
            } else {
                if !magnitude.is_one() {
                    out.push_str(&magnitude.to_string());
                    out.push(' ');
                }
                out.push_str(&word(w));
            }
        }
        out
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.add_poly(rhs)
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.sub_poly(rhs)
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.mul_poly(rhs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&F::one().neg())
    }
}

impl<F: Field> From<Word> for Polynomial<F> {
    fn from(w: Word) -> Self {
        Polynomial::word(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        <Rational as Field>::from_i64(v)
    }

    fn poly(alpha: &Alphabet, terms: &[(i64, &str)]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|(c, w)| (alpha.word(w), q(*c))))
    }

    #[test]
    fn difference_of_squares() {
        let x = Alphabet::latin(1);
        let f = poly(&x, &[(1, "a"), (-1, "1")]);
        let g = poly(&x, &[(1, "a"), (1, "1")]);
        assert_eq!(&f * &g, poly(&x, &[(1, "aa"), (-1, "1")]));
        assert_eq!(&Polynomial::one() * &f, f);
    }

    #[test]
    fn concatenation_product() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let f = Polynomial::<Rational>::word(xy.word("yx"));
        let g = Polynomial::word(xy.word("yxx"));
        assert_eq!(&f * &g, Polynomial::word(xy.word("yxyxx")));
    }

    #[test]
    fn leading_and_monic() {
        let abc = Alphabet::latin(3);
        let deglex = MonomialOrder::deglex_by_index(3);
        let f = poly(&abc, &[(1, "bca"), (-1, "acb")]);
        assert_eq!(f.leading(&deglex).unwrap(), (abc.word("bca"), q(1)));

        let g = poly(&abc, &[(-1, "bca"), (1, "acb")]);
        assert_eq!(g.make_monic(&deglex).unwrap(), f);

        let three_a = poly(&abc, &[(3, "a")]);
        assert_eq!(three_a.leading(&deglex).unwrap(), (abc.word("a"), q(3)));

        let x = Alphabet::latin(1);
        let ord1 = MonomialOrder::deglex_by_index(1);
        let h = poly(&x, &[(2, "aa"), (-2, "1")]);
        let monic = poly(&x, &[(1, "aa"), (-1, "1")]);
        assert_eq!(h.make_monic(&ord1).unwrap(), monic);
        assert_eq!(monic.make_monic(&ord1).unwrap(), monic);

        assert_eq!(Polynomial::<Rational>::zero().leading(&deglex), Err(GsbError::EmptyPolynomial));
        assert_eq!(Polynomial::<Rational>::zero().make_monic(&deglex), Err(GsbError::EmptyPolynomial));
    }

    #[test]
    fn cancellation_removes_terms() {
        let abc = Alphabet::latin(3);
        let f = poly(&abc, &[(1, "ab"), (2, "c")]);
        let g = poly(&abc, &[(1, "ab")]);
        let d = &f - &g;
        assert_eq!(d.len(), 1);
        assert!((&f - &f).is_zero());
        assert_eq!(d.coefficient(&abc.word("ab")), q(0));
    }

    #[test]
    fn rendering() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::deglex(&[1, 0]).unwrap();
        let f = poly(&xy, &[(1, "yx"), (-1, "xy"), (2, "1")]);
        assert_eq!(f.render(&xy, &ord), "-xy + yx + 2");
        assert_eq!(Polynomial::<Rational>::zero().render(&xy, &ord), "0");
    }
}
