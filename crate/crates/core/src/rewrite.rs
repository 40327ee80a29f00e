//! Oriented rules, parametric rule schemas and reduction to normal form.

use std::borrow::Cow;
use std::collections::HashSet;

use crate::error::{GsbError, Result};
use crate::field::{Field, Rational};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::word::{Alphabet, Letter, Word};

/// Default cap on reduction steps for a single normal-form computation.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Schema instances are checked for orientation from `m_min` up to
/// `m_min + SCHEMA_CHECK_SPAN` when a system is built.
pub const SCHEMA_CHECK_SPAN: u32 = 24;

/// Identifies a rule inside a [`RewriteSystem`]: a finite rule by index, or
/// the instance of a schema at exponent `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleRef {
    Finite(usize),
    Schema { index: usize, m: u32 },
}

/// Where a rule came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Input,
    /// Added by completion from the composition of the rules with these
    /// leading words at the given ambiguity.
    Composition { left: Word, right: Word, ambiguity: Word },
    SchemaInstance { schema: usize, m: u32 },
    /// Re-added during inter-reduction after its old leading word became
    /// reducible.
    Reduction { from: Word },
}

/// `lhs -> rhs`, standing for the monic polynomial `lhs - rhs` whose leading
/// word is `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<F: Field = Rational> {
    pub lhs: Word,
    pub rhs: Polynomial<F>,
    pub origin: Origin,
}

impl<F: Field> Rule<F> {
    pub fn new(lhs: Word, rhs: Polynomial<F>, origin: Origin, ord: &MonomialOrder) -> Result<Self> {
        let rule = Rule { lhs, rhs, origin };
        rule.check_orientation(ord)?;
        Ok(rule)
    }

    /// Orients a nonzero polynomial by its leading word and makes it monic.
    pub fn from_polynomial(p: &Polynomial<F>, ord: &MonomialOrder, origin: Origin) -> Result<Self> {
        let monic = p.make_monic(ord)?;
        let (lhs, _) = monic.leading(ord)?;
        if lhs.is_empty() {
            return Err(GsbError::Inconsistent);
        }
        let rhs = &Polynomial::word(lhs.clone()) - &monic;
        Ok(Rule { lhs, rhs, origin })
    }

    pub fn check_orientation(&self, ord: &MonomialOrder) -> Result<()> {
        let fail = |detail: String| GsbError::Orientation {
            lhs: format!("{:?}", self.lhs),
            rhs: format!("{:?}", self.rhs.support().collect::<Vec<_>>()),
            detail,
        };
        if self.lhs.is_empty() {
            return Err(fail("empty leading word".into()));
        }
        for w in self.rhs.support() {
            if ord.compare(w, &self.lhs)? != std::cmp::Ordering::Less {
                return Err(fail(format!("{w:?} is not smaller than the leading word")));
            }
        }
        Ok(())
    }

    /// The monic polynomial `lhs - rhs`.
    pub fn polynomial(&self) -> Polynomial<F> {
        &Polynomial::word(self.lhs.clone()) - &self.rhs
    }

    /// The right-hand word when this is a semigroup rule `u -> v`.
    pub fn rhs_word(&self) -> Option<&Word> {
        match self.rhs.as_monomial() {
            Some((w, c)) if c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn render(&self, alphabet: &Alphabet, ord: &MonomialOrder) -> String {
        format!("{} -> {}", alphabet.render(&self.lhs), self.rhs.render(alphabet, ord))
    }
}

/// The binomial family `P·B^m·S -> P'·B'^m·S'` for `m >= m_min`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleSchema {
    pub prefix: Word,
    pub block: Word,
    pub suffix: Word,
    pub rhs_prefix: Word,
    pub rhs_block: Word,
    pub rhs_suffix: Word,
    pub m_min: u32,
}

impl RuleSchema {
    pub fn lhs(&self, m: u32) -> Word {
        self.block.pow(m as usize).wrap(&self.prefix, &self.suffix)
    }

    pub fn rhs(&self, m: u32) -> Word {
        self.rhs_block.pow(m as usize).wrap(&self.rhs_prefix, &self.rhs_suffix)
    }

    pub fn instance<F: Field>(&self, index: usize, m: u32) -> Rule<F> {
        Rule {
            lhs: self.lhs(m),
            rhs: Polynomial::word(self.rhs(m)),
            origin: Origin::SchemaInstance { schema: index, m },
        }
    }

    /// Largest `m >= m_min` with `P·B^m·S` matching `text` at `pos`.
    fn match_at(&self, text: &[Letter], pos: usize) -> Option<u32> {
        let rest = &text[pos..];
        if !rest.starts_with(self.prefix.letters()) {
            return None;
        }
        let b = self.block.letters();
        let mut q = self.prefix.len();
        let mut count = 0u32;
        while rest[q..].starts_with(b) {
            q += b.len();
            count += 1;
        }
        (self.m_min..=count).rev().find(|&m| {
            let end = self.prefix.len() + m as usize * b.len();
            rest[end..].starts_with(self.suffix.letters())
        })
    }

    /// `P (B)^m S -> P' (B')^m S' for m >= m0`
    pub fn render(&self, alphabet: &Alphabet) -> String {
        fn side(alphabet: &Alphabet, p: &Word, b: &Word, s: &Word) -> String {
            let mut parts = Vec::new();
            if !p.is_empty() {
                parts.push(alphabet.render_spaced(p));
            }
            if !b.is_empty() {
                parts.push(format!("({})^m", alphabet.render_spaced(b)));
            }
            if !s.is_empty() {
                parts.push(alphabet.render_spaced(s));
            }
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        }
        format!(
            "{} -> {} for m >= {}",
            side(alphabet, &self.prefix, &self.block, &self.suffix),
            side(alphabet, &self.rhs_prefix, &self.rhs_block, &self.rhs_suffix),
            self.m_min
        )
    }
}

/// A leading-word occurrence inside a scanned word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub rule: RuleRef,
    pub position: usize,
}

/// One rewriting step of a normal-form computation: the term
/// `coefficient · word` was replaced by `replacement`.
#[derive(Clone, Debug)]
pub struct ReductionStep<F: Field> {
    pub word: Word,
    pub coefficient: F,
    pub occurrence: Occurrence,
    pub replacement: Polynomial<F>,
}

/// Finite rules plus rule schemas under one monomial order.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field = Rational> {
    alphabet: Alphabet,
    order: MonomialOrder,
    rules: Vec<Rule<F>>,
    schemas: Vec<RuleSchema>,
    step_budget: usize,
    certified_bound: Option<u32>,
    by_first: Vec<Vec<usize>>,
    semigroup: bool,
}

impl<F: Field> RewriteSystem<F> {
    pub fn new(
        alphabet: Alphabet,
        order: MonomialOrder,
        rules: Vec<Rule<F>>,
        schemas: Vec<RuleSchema>,
    ) -> Result<Self> {
        if order.num_letters() != alphabet.len() {
            return Err(GsbError::Domain(format!(
                "order is over {} letters but the alphabet has {}",
                order.num_letters(),
                alphabet.len()
            )));
        }
        let mut seen = HashSet::new();
        for rule in &rules {
            if !alphabet.contains_word(&rule.lhs) {
                return Err(GsbError::Domain("rule uses a letter outside the alphabet".into()));
            }
            rule.check_orientation(&order)?;
            if !seen.insert(rule.lhs.clone()) {
                return Err(GsbError::DuplicateLhs(alphabet.render(&rule.lhs)));
            }
        }
        for (i, schema) in schemas.iter().enumerate() {
            if schema.block.is_empty() {
                return Err(GsbError::Domain("schema block must be non-empty".into()));
            }
            if schema.m_min == 0 {
                return Err(GsbError::Domain("schema exponents start at 1".into()));
            }
            for m in schema.m_min..=schema.m_min + SCHEMA_CHECK_SPAN {
                let inst: Rule<F> = schema.instance(i, m);
                if !alphabet.contains_word(&inst.lhs) || !alphabet.contains_word(&schema.rhs(m)) {
                    return Err(GsbError::Domain("schema uses a letter outside the alphabet".into()));
                }
                inst.check_orientation(&order)?;
                if !seen.insert(inst.lhs.clone()) {
                    return Err(GsbError::DuplicateLhs(alphabet.render(&inst.lhs)));
                }
            }
        }
        let mut by_first = vec![Vec::new(); alphabet.len()];
        for (i, rule) in rules.iter().enumerate() {
            by_first[rule.lhs.letters()[0] as usize].push(i);
        }
        let semigroup = rules.iter().all(|r| r.rhs_word().is_some());
        Ok(RewriteSystem {
            alphabet,
            order,
            rules,
            schemas,
            step_budget: DEFAULT_STEP_BUDGET,
            certified_bound: None,
            by_first,
            semigroup,
        })
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    /// Records that the system was verified as a basis up to schema exponent
    /// `bound` (`None` clears the mark).
    pub fn with_certification(mut self, bound: Option<u32>) -> Self {
        self.certified_bound = bound;
        self
    }

    pub fn certified_bound(&self) -> Option<u32> {
        self.certified_bound
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule<F>] {
        &self.rules
    }

    pub fn schemas(&self) -> &[RuleSchema] {
        &self.schemas
    }

    pub fn step_budget(&self) -> usize {
        self.step_budget
    }

    /// Every rule rewrites a word to a single word with coefficient 1.
    pub fn is_semigroup(&self) -> bool {
        self.semigroup
    }

    pub fn rule(&self, r: RuleRef) -> Cow<'_, Rule<F>> {
        match r {
            RuleRef::Finite(i) => Cow::Borrowed(&self.rules[i]),
            RuleRef::Schema { index, m } => Cow::Owned(self.schemas[index].instance(index, m)),
        }
    }

    pub fn lhs_len(&self, r: RuleRef) -> usize {
        match r {
            RuleRef::Finite(i) => self.rules[i].lhs.len(),
            RuleRef::Schema { index, m } => {
                let s = &self.schemas[index];
                s.prefix.len() + m as usize * s.block.len() + s.suffix.len()
            }
        }
    }

    fn occurrence_at(&self, text: &[Letter], pos: usize) -> Option<RuleRef> {
        let rest = &text[pos..];
        for &i in &self.by_first[rest[0] as usize] {
            if rest.starts_with(self.rules[i].lhs.letters()) {
                return Some(RuleRef::Finite(i));
            }
        }
        self.schemas
            .iter()
            .enumerate()
            .find_map(|(index, s)| s.match_at(text, pos).map(|m| RuleRef::Schema { index, m }))
    }

    fn first_occurrence(&self, text: &[Letter]) -> Option<Occurrence> {
        (0..text.len()).find_map(|position| {
            self.occurrence_at(text, position)
                .map(|rule| Occurrence { rule, position })
        })
    }

    /// Leftmost occurrence; ties go to the lowest finite rule index, then to
    /// schemas in index order with the largest matching exponent.
    pub fn find_occurrence(&self, u: &Word) -> Option<Occurrence> {
        self.first_occurrence(u.letters())
    }

    /// Every occurrence of every rule (each matching schema exponent counts
    /// separately), sorted by position.
    pub fn occurrences(&self, u: &Word) -> Vec<Occurrence> {
        let text = u.letters();
        let mut out = Vec::new();
        for position in 0..text.len() {
            let rest = &text[position..];
            for &i in &self.by_first[rest[0] as usize] {
                if rest.starts_with(self.rules[i].lhs.letters()) {
                    out.push(Occurrence {
                        rule: RuleRef::Finite(i),
                        position,
                    });
                }
            }
            for (index, s) in self.schemas.iter().enumerate() {
                if let Some(top) = s.match_at(text, position) {
                    for m in (s.m_min..=top).rev() {
                        let end = position + s.prefix.len() + m as usize * s.block.len();
                        if text[end..].starts_with(s.suffix.letters()) {
                            out.push(Occurrence {
                                rule: RuleRef::Schema { index, m },
                                position,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_irreducible(&self, u: &Word) -> bool {
        self.find_occurrence(u).is_none()
    }

    /// Normal form under the canonical strategy.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.reduce(p, &mut |w: &Word| self.find_occurrence(w), &mut |_| {})
    }

    pub fn normal_form_of_word(&self, u: &Word) -> Result<Polynomial<F>> {
        self.normal_form(&Polynomial::word(u.clone()))
    }

    /// Normal form where `choose` picks which occurrence to rewrite among
    /// all occurrences in the current largest reducible term, and `observe`
    /// sees every step.
    pub fn normal_form_with(
        &self,
        p: &Polynomial<F>,
        mut choose: impl FnMut(&Word, &[Occurrence]) -> Occurrence,
        mut observe: impl FnMut(&ReductionStep<F>),
    ) -> Result<Polynomial<F>> {
        self.reduce(
            p,
            &mut |w: &Word| {
                let all = self.occurrences(w);
                if all.is_empty() {
                    None
                } else {
                    Some(choose(w, &all))
                }
            },
            &mut observe,
        )
    }

    fn reduce(
        &self,
        p: &Polynomial<F>,
        pick: &mut dyn FnMut(&Word) -> Option<Occurrence>,
        observe: &mut dyn FnMut(&ReductionStep<F>),
    ) -> Result<Polynomial<F>> {
        let mut work = p.clone();
        let mut done = Polynomial::zero();
        let mut steps = 0usize;
        // Every replacement is smaller than the term it replaces, so the
        // current maximum never collides with a term already in `done`.
        while let Some(top) = work.leading_ref(&self.order).map(|(w, _)| w.clone()) {
            let coefficient = work.remove_term(&top).expect("leading term present");
            match pick(&top) {
                None => done.add_term(top, &coefficient),
                Some(occurrence) => {
                    steps += 1;
                    if steps > self.step_budget {
                        return Err(GsbError::StepBudgetExceeded(self.step_budget));
                    }
                    let rule = self.rule(occurrence.rule);
                    let end = occurrence.position + rule.lhs.len();
                    let replacement = rule
                        .rhs
                        .wrap(&top.prefix(occurrence.position), &top.suffix_from(end))
                        .scale(&coefficient);
                    for (w, c) in replacement.terms() {
                        work.add_term(w.clone(), c);
                    }
                    observe(&ReductionStep {
                        word: top,
                        coefficient,
                        occurrence,
                        replacement,
                    });
                }
            }
        }
        Ok(done)
    }

    /// Normal form of a word in a semigroup system, computed by in-place
    /// rewriting.
    pub fn normal_word(&self, u: &Word) -> Result<Word> {
        if !self.semigroup {
            return Err(GsbError::UnsupportedKind(
                "word rewriting needs a system of semigroup rules".into(),
            ));
        }
        let mut text: Vec<Letter> = u.letters().to_vec();
        let mut steps = 0usize;
        while let Some(occ) = self.first_occurrence(&text) {
            steps += 1;
            if steps > self.step_budget {
                return Err(GsbError::StepBudgetExceeded(self.step_budget));
            }
            let len = self.lhs_len(occ.rule);
            let rhs = match occ.rule {
                RuleRef::Finite(i) => Cow::Borrowed(self.rules[i].rhs_word().expect("semigroup rule")),
                RuleRef::Schema { index, m } => Cow::Owned(self.schemas[index].rhs(m)),
            };
            text.splice(occ.position..occ.position + len, rhs.letters().iter().copied());
        }
        Ok(Word::from_letters(text))
    }

    /// Largest leading-word length among finite rules.
    pub fn max_rule_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }
}
