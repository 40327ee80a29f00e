//! Growth of the associated monomial algebra.
//!
//! The normal words of a rewrite system are the words avoiding every leading
//! word, including the infinite families generated by schemas. That language
//! is regular: [`build_irr_automaton`] compiles the forbidden factors into a
//! deterministic automaton whose live states all accept. Exact census,
//! growth classification and free-subalgebra certificates are read off that
//! automaton.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::code::sardinas_patterson;
use crate::error::{GsbError, Result};
use crate::field::Field;
use crate::order::LengthBound;
use crate::poly::Polynomial;
use crate::rewrite::RewriteSystem;
use crate::word::{Letter, Word};

pub const DEFAULT_STATE_CAP: usize = 100_000;

/// Words `P·B^m·S` for every `m >= m_min`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PumpedPattern {
    pub prefix: Word,
    pub block: Word,
    pub suffix: Word,
    pub m_min: u32,
}

/// Leading words of a rewrite system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenSet {
    pub finite_words: Vec<Word>,
    pub pumped_patterns: Vec<PumpedPattern>,
}

impl ForbiddenSet {
    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Self {
        ForbiddenSet {
            finite_words: words.into_iter().collect(),
            pumped_patterns: Vec::new(),
        }
    }

    pub fn from_system<F: Field>(sys: &RewriteSystem<F>) -> Self {
        ForbiddenSet {
            finite_words: sys.rules().iter().map(|r| r.lhs.clone()).collect(),
            pumped_patterns: sys
                .schemas()
                .iter()
                .map(|s| PumpedPattern {
                    prefix: s.prefix.clone(),
                    block: s.block.clone(),
                    suffix: s.suffix.clone(),
                    m_min: s.m_min,
                })
                .collect(),
        }
    }
}

/// Nondeterministic factor matcher: an implicit idle state loops on every
/// letter and may enter any pattern.
struct FactorNfa {
    entries: Vec<Vec<u32>>,
    edges: Vec<Vec<(Letter, u32)>>,
    accepting: Vec<bool>,
}

impl FactorNfa {
    fn new(num_letters: usize) -> Self {
        FactorNfa {
            entries: vec![Vec::new(); num_letters],
            edges: Vec::new(),
            accepting: Vec::new(),
        }
    }

    fn add_state(&mut self) -> u32 {
        self.edges.push(Vec::new());
        self.accepting.push(false);
        (self.edges.len() - 1) as u32
    }

    /// Adds a chain reading `word` from `from` (`None` = idle) and returns the
    /// states after each letter.
    fn chain(&mut self, from: Option<u32>, word: &[Letter]) -> Vec<u32> {
        let mut states = Vec::with_capacity(word.len());
        let mut cur = from;
        for &l in word {
            let next = self.add_state();
            match cur {
                None => self.entries[l as usize].push(next),
                Some(s) => self.edges[s as usize].push((l, next)),
            }
            states.push(next);
            cur = Some(next);
        }
        states
    }

    fn add_word(&mut self, word: &Word) -> Result<()> {
        if word.is_empty() {
            return Err(GsbError::Domain("the empty word cannot be forbidden".into()));
        }
        let states = self.chain(None, word.letters());
        self.accepting[*states.last().unwrap() as usize] = true;
        Ok(())
    }

    fn add_pumped(&mut self, p: &PumpedPattern) -> Result<()> {
        if p.block.is_empty() || p.m_min == 0 {
            return Err(GsbError::Domain("pumped pattern needs a non-empty block and m_min >= 1".into()));
        }
        let core = p.block.pow(p.m_min as usize).wrap(&p.prefix, &Word::empty());
        let states = self.chain(None, core.letters());
        let end = *states.last().unwrap();
        // Re-reading the block from the end of the last copy.
        let last_copy_start = core.len() - p.block.len();
        let after_first_letter = states[last_copy_start];
        self.edges[end as usize].push((p.block.letters()[0], after_first_letter));
        if p.suffix.is_empty() {
            self.accepting[end as usize] = true;
        } else {
            let tail = self.chain(Some(end), p.suffix.letters());
            self.accepting[*tail.last().unwrap() as usize] = true;
        }
        Ok(())
    }
}

/// Deterministic automaton accepting exactly the words with no forbidden
/// factor. Missing transitions go to the implicit dead state; every stored
/// state is reachable from `start` and accepting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrAutomaton {
    num_letters: usize,
    transitions: Vec<Option<u32>>,
}

impl IrrAutomaton {
    pub const START: usize = 0;

    pub fn num_states(&self) -> usize {
        self.transitions.len() / self.num_letters
    }

    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn next(&self, state: usize, letter: Letter) -> Option<usize> {
        self.transitions[state * self.num_letters + letter as usize].map(|s| s as usize)
    }

    pub fn run_from(&self, state: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(state, |s, &l| self.next(s, l))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.run_from(Self::START, word).is_some()
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_states()).flat_map(move |s| {
            (0..self.num_letters as Letter).filter_map(move |l| self.next(s, l).map(|t| (s, t)))
        })
    }
}

/// Compiles the complement of `Σ*·F·Σ*` by subset construction.
pub fn build_irr_automaton(fs: &ForbiddenSet, num_letters: usize, state_cap: usize) -> Result<IrrAutomaton> {
    let mut nfa = FactorNfa::new(num_letters);
    for w in &fs.finite_words {
        if w.letters().iter().any(|&l| l as usize >= num_letters) {
            return Err(GsbError::Domain("forbidden word outside the alphabet".into()));
        }
        nfa.add_word(w)?;
    }
    for p in &fs.pumped_patterns {
        nfa.add_pumped(p)?;
    }

    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut subsets: Vec<Vec<u32>> = vec![Vec::new()];
    ids.insert(Vec::new(), 0);
    let mut transitions: Vec<Option<u32>> = Vec::new();
    let mut cursor = 0;
    while cursor < subsets.len() {
        let current = subsets[cursor].clone();
        for l in 0..num_letters as Letter {
            let mut next: Vec<u32> = nfa.entries[l as usize].clone();
            for &s in &current {
                next.extend(nfa.edges[s as usize].iter().filter(|(a, _)| *a == l).map(|(_, t)| *t));
            }
            if next.iter().any(|&s| nfa.accepting[s as usize]) {
                transitions.push(None);
                continue;
            }
            next.sort_unstable();
            next.dedup();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= state_cap {
                        return Err(GsbError::StateCapExceeded(state_cap));
                    }
                    let id = subsets.len() as u32;
                    ids.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            transitions.push(Some(id));
        }
        cursor += 1;
    }
    Ok(IrrAutomaton {
        num_letters,
        transitions,
    })
}

/// Exact counts of accepted words by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// `f(i)`: accepted words of length exactly `i`.
    pub per_length: Vec<BigUint>,
    /// `f(0) + ... + f(i)`.
    pub cumulative: Vec<BigUint>,
}

pub fn count_normal_words(aut: &IrrAutomaton, n: usize) -> Census {
    let mut ways = vec![BigUint::zero(); aut.num_states()];
    ways[IrrAutomaton::START] = BigUint::one();
    let mut per_length = Vec::with_capacity(n + 1);
    let mut cumulative: Vec<BigUint> = Vec::with_capacity(n + 1);
    for len in 0..=n {
        let total: BigUint = ways.iter().sum();
        let running = match cumulative.last() {
            Some(prev) => prev + &total,
            None => total.clone(),
        };
        per_length.push(total);
        cumulative.push(running);
        if len == n {
            break;
        }
        let mut next = vec![BigUint::zero(); aut.num_states()];
        for (s, t) in aut.edges() {
            if !ways[s].is_zero() {
                next[t] += &ways[s];
            }
        }
        ways = next;
    }
    Census { per_length, cumulative }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    /// Finitely many normal words; carries their number.
    FiniteDimensional(BigUint),
    /// Cumulative census grows like `n^gk`.
    Polynomial(u32),
    Exponential,
}

impl GrowthClass {
    /// GK-dimension of the monomial algebra; `None` stands for infinity.
    pub fn gkdim(&self) -> Option<u32> {
        match self {
            GrowthClass::FiniteDimensional(_) => Some(0),
            GrowthClass::Polynomial(d) => Some(*d),
            GrowthClass::Exponential => None,
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::FiniteDimensional(n) => write!(f, "finite-dimensional ({n})"),
            GrowthClass::Polynomial(d) => write!(f, "polynomial of degree {d}"),
            GrowthClass::Exponential => write!(f, "exponential"),
        }
    }
}

/// Growth from the cycle structure: two cycles sharing a state give
/// exponential growth; otherwise the degree is the largest number of cyclic
/// components along a path.
pub fn classify_growth(aut: &IrrAutomaton) -> GrowthClass {
    let n = aut.num_states();
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, n * aut.num_letters());
    let nodes: Vec<NodeIndex> = (0..n).map(|_| graph.add_node(())).collect();
    for (s, t) in aut.edges() {
        graph.add_edge(nodes[s], nodes[t], ());
    }
    // Components come out in reverse topological order.
    let sccs = tarjan_scc(&graph);
    let mut comp = vec![0usize; n];
    for (c, members) in sccs.iter().enumerate() {
        for v in members {
            comp[v.index()] = c;
        }
    }
    let mut internal = vec![0usize; sccs.len()];
    for (s, t) in aut.edges() {
        if comp[s] == comp[t] {
            internal[comp[s]] += 1;
        }
    }
    for (c, members) in sccs.iter().enumerate() {
        if internal[c] > members.len() {
            return GrowthClass::Exponential;
        }
    }
    let mut best = vec![0u32; sccs.len()];
    for (c, members) in sccs.iter().enumerate() {
        let own = u32::from(internal[c] > 0);
        let mut downstream = 0;
        for v in members {
            for l in 0..aut.num_letters() as Letter {
                if let Some(t) = aut.next(v.index(), l) {
                    if comp[t] != c {
                        downstream = downstream.max(best[comp[t]]);
                    }
                }
            }
        }
        best[c] = own + downstream;
    }
    let degree = best[comp[IrrAutomaton::START]];
    if degree > 0 {
        return GrowthClass::Polynomial(degree);
    }
    // Acyclic: count paths from the start.
    let mut paths = vec![BigUint::zero(); n];
    for members in &sccs {
        let v = members[0].index();
        let mut total = BigUint::one();
        for l in 0..aut.num_letters() as Letter {
            if let Some(t) = aut.next(v, l) {
                total += &paths[t];
            }
        }
        paths[v] = total;
    }
    GrowthClass::FiniteDimensional(paths[IrrAutomaton::START].clone())
}

/// How the monomial-algebra growth relates to the algebra itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    /// The order is linearly length-bounded: the two GK-dimensions agree.
    ExactForA,
    /// No length bound: the monomial algebra only bounds `A` from below.
    LowerBoundForA,
    /// Polynomial length bound of degree `d`: `gk <= GKdim(A) <= d·gk`.
    Sandwich { lower: u32, upper: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub census: Census,
    pub classification: GrowthClass,
    pub validity: Validity,
    pub certified_bound: Option<u32>,
    pub automaton_states: usize,
    pub warnings: Vec<String>,
}

impl GrowthReport {
    pub fn gkdim(&self) -> Option<u32> {
        self.classification.gkdim()
    }
}

/// Growth analysis of the associated monomial algebra of `sys`, with the
/// census up to length `census_len`.
pub fn gkdim_report<F: Field>(
    sys: &RewriteSystem<F>,
    census_len: usize,
    state_cap: usize,
) -> Result<GrowthReport> {
    let fs = ForbiddenSet::from_system(sys);
    let aut = build_irr_automaton(&fs, sys.alphabet().len(), state_cap)?;
    let classification = classify_growth(&aut);
    let census = count_normal_words(&aut, census_len);
    let validity = match sys.order().length_bound() {
        LengthBound::Linear(_) => Validity::ExactForA,
        LengthBound::NoBound => Validity::LowerBoundForA,
        LengthBound::PolynomialBound(d) => {
            let gk = classification.gkdim().unwrap_or(u32::MAX);
            Validity::Sandwich {
                lower: gk,
                upper: gk.saturating_mul(d),
            }
        }
    };
    let mut warnings = Vec::new();
    if sys.certified_bound().is_none() {
        warnings.push("system is not certified as a Groebner-Shirshov basis; growth describes Irr of the given rules only".to_string());
    }
    if sys.order().is_generalized_reverse_tower() {
        warnings.push("reverse tower order on more than two letters is a generalisation".to_string());
    }
    Ok(GrowthReport {
        census,
        classification,
        validity,
        certified_bound: sys.certified_bound(),
        automaton_states: aut.num_states(),
        warnings,
    })
}

/// Dimensions of the generating filtration `V^n`, `V = F + F·X`, in the
/// algebra and in its monomial algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTable {
    pub d_a: Vec<u64>,
    pub d_tilde: Vec<u64>,
}

pub const MAX_FILTRATION_LEN: usize = 10;
const MAX_FILTRATION_WORDS: usize = 5_000_000;

/// `d_A(n)` is the rank of the normal forms of all words of length at most
/// `n`; `d_tilde(n)` counts normal words of length at most `n`.
pub fn dim_filtration<F: Field>(sys: &RewriteSystem<F>, n_max: usize, state_cap: usize) -> Result<FiltrationTable> {
    if n_max > MAX_FILTRATION_LEN {
        return Err(GsbError::Resource(format!(
            "filtration length {n_max} exceeds {MAX_FILTRATION_LEN}"
        )));
    }
    let k = sys.alphabet().len();
    let total: usize = (0..=n_max).map(|i| k.saturating_pow(i as u32)).fold(0usize, |a, b| a.saturating_add(b));
    if total > MAX_FILTRATION_WORDS {
        return Err(GsbError::Resource(format!("{total} words up to length {n_max} is too many")));
    }

    let mut d_a = Vec::with_capacity(n_max + 1);
    if sys.is_semigroup() {
        let mut seen: HashSet<Word> = HashSet::new();
        for len in 0..=n_max {
            for u in Word::all_of_length(k, len) {
                seen.insert(sys.normal_word(&u)?);
            }
            d_a.push(seen.len() as u64);
        }
    } else {
        let ord = sys.order();
        let mut echelon: HashMap<Word, Polynomial<F>> = HashMap::new();
        for len in 0..=n_max {
            for u in Word::all_of_length(k, len) {
                let mut v = sys.normal_form_of_word(&u)?;
                while let Some((lead, c)) = v.leading_ref(ord).map(|(w, c)| (w.clone(), c.clone())) {
                    match echelon.get(&lead) {
                        Some(row) => v = &v - &row.scale(&c),
                        None => {
                            echelon.insert(lead, v.make_monic(ord)?);
                            break;
                        }
                    }
                }
            }
            d_a.push(echelon.len() as u64);
        }
    }

    let aut = build_irr_automaton(&ForbiddenSet::from_system(sys), k, state_cap)?;
    let census = count_normal_words(&aut, n_max);
    let d_tilde = census
        .cumulative
        .iter()
        .map(|c| u64::try_from(c).expect("bounded by the word count"))
        .collect();
    Ok(FiltrationTable { d_a, d_tilde })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeCheckResult {
    /// The generators form a code and every product of them is a normal
    /// word, so they generate a free subalgebra.
    Free,
    /// A word with two factorizations over the generators.
    NotCode {
        witness: Word,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    /// A product of generators containing a forbidden factor.
    LeavesIrr { witness: Word, factors: Vec<usize> },
}

/// Certifies that `gens` generate a free submonoid inside the accepted
/// language: closure under concatenation stays in the language, and the set
/// is uniquely decodable.
pub fn free_submonoid_check(aut: &IrrAutomaton, gens: &[Word]) -> Result<FreeCheckResult> {
    if gens.is_empty() || gens.iter().any(Word::is_empty) {
        return Err(GsbError::Domain("generators must be non-empty words".into()));
    }
    let distinct: HashSet<&Word> = gens.iter().collect();
    if distinct.len() != gens.len() {
        return Err(GsbError::Domain("generators must be pairwise distinct".into()));
    }
    if gens.iter().flat_map(|g| g.letters()).any(|&l| l as usize >= aut.num_letters()) {
        return Err(GsbError::Domain("generator outside the alphabet".into()));
    }

    // Breadth-first over automaton states reachable by generator products.
    let mut parent: HashMap<usize, Option<(usize, usize)>> = HashMap::new();
    parent.insert(IrrAutomaton::START, None);
    let mut queue = VecDeque::from([IrrAutomaton::START]);
    let path = |parent: &HashMap<usize, Option<(usize, usize)>>, mut s: usize| {
        let mut seq = Vec::new();
        while let Some(Some((prev, g))) = parent.get(&s) {
            seq.push(*g);
            s = *prev;
        }
        seq.reverse();
        seq
    };
    while let Some(s) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            match aut.run_from(s, g) {
                None => {
                    let mut factors = path(&parent, s);
                    factors.push(gi);
                    let witness = factors.iter().fold(Word::empty(), |acc, &k| acc.concat(&gens[k]));
                    return Ok(FreeCheckResult::LeavesIrr { witness, factors });
                }
                Some(t) => {
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                        e.insert(Some((s, gi)));
                        queue.push_back(t);
                    }
                }
            }
        }
    }

    Ok(match sardinas_patterson(gens) {
        None => FreeCheckResult::Free,
        Some(amb) => FreeCheckResult::NotCode {
            witness: amb.word,
            left: amb.left,
            right: amb.right,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn aut(alpha: &Alphabet, words: &[&str]) -> IrrAutomaton {
        let fs = ForbiddenSet::from_words(words.iter().map(|w| alpha.word(w)));
        build_irr_automaton(&fs, alpha.len(), DEFAULT_STATE_CAP).unwrap()
    }

    #[test]
    fn single_forbidden_pair() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let a = aut(&xy, &["xy"]);
        assert_eq!(a.num_states(), 2);
        assert!(a.accepts(&xy.word("yyxxx")));
        assert!(!a.accepts(&xy.word("yxy")));
        let census = count_normal_words(&a, 10);
        for (n, f) in census.per_length.iter().enumerate() {
            assert_eq!(*f, BigUint::from(n + 1));
        }
        assert_eq!(classify_growth(&a), GrowthClass::Polynomial(2));
    }

    #[test]
    fn unary_cases() {
        let x = Alphabet::new(["x"]).unwrap();
        let sq = aut(&x, &["xx"]);
        assert!(sq.accepts(&Word::empty()) && sq.accepts(&x.word("x")) && !sq.accepts(&x.word("xx")));
        assert_eq!(classify_growth(&sq), GrowthClass::FiniteDimensional(BigUint::from(2u32)));
        assert_eq!(classify_growth(&aut(&x, &[])), GrowthClass::Polynomial(1));
    }

    #[test]
    fn exponential_case() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(classify_growth(&aut(&xy, &["yyx"])), GrowthClass::Exponential);
        assert_eq!(classify_growth(&aut(&xy, &[])), GrowthClass::Exponential);
    }

    #[test]
    fn pumped_pattern_matches_every_exponent() {
        let abc = Alphabet::latin(3);
        let fs = ForbiddenSet {
            finite_words: vec![],
            pumped_patterns: vec![PumpedPattern {
                prefix: abc.word("b"),
                block: abc.word("ac"),
                suffix: abc.word("b"),
                m_min: 1,
            }],
        };
        let a = build_irr_automaton(&fs, 3, DEFAULT_STATE_CAP).unwrap();
        for m in 1..8 {
            let w = abc.word("ac").pow(m).wrap(&abc.word("cb"), &abc.word("ba"));
            assert!(!a.accepts(&w), "m = {m}");
        }
        assert!(a.accepts(&abc.word("bb")));
        assert!(a.accepts(&abc.word("bacab")));
    }

    #[test]
    fn state_cap() {
        let abc = Alphabet::latin(3);
        let fs = ForbiddenSet::from_words([abc.word("abcabc")]);
        assert_eq!(build_irr_automaton(&fs, 3, 2), Err(GsbError::StateCapExceeded(2)));
    }

    #[test]
    fn free_pair_in_exponential_monomial_algebra() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let a = aut(&xy, &["yyx"]);
        assert_eq!(
            free_submonoid_check(&a, &[xy.word("yx"), xy.word("yxx")]).unwrap(),
            FreeCheckResult::Free
        );
        let full = aut(&xy, &[]);
        assert!(matches!(
            free_submonoid_check(&full, &[xy.word("x"), xy.word("xx")]).unwrap(),
            FreeCheckResult::NotCode { .. }
        ));
        match free_submonoid_check(&a, &[xy.word("y"), xy.word("x")]).unwrap() {
            FreeCheckResult::LeavesIrr { witness, .. } => assert_eq!(witness, xy.word("yyx")),
            other => panic!("{other:?}"),
        }
    }
}
