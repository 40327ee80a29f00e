//! Shared fixtures and brute-force oracles for the integration tests.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use gsb_core::*;

pub fn g23_alphabet() -> Alphabet {
    Alphabet::latin(3)
}

/// Raw G^2_3 presentation: involutions plus the three tetrahedron relations,
/// deg-lex with a < b < c.
pub fn g23_presentation() -> Presentation {
    let a = g23_alphabet();
    let rels = [("aa", "1"), ("bb", "1"), ("cc", "1"), ("cba", "abc"), ("cab", "bac"), ("bca", "acb")]
        .iter()
        .map(|(l, r)| (a.word(l), a.word(r)))
        .collect();
    Presentation::semigroup(a, rels, MonomialOrder::deglex_by_index(3)).unwrap()
}

pub fn g23_relations() -> Vec<(Word, Word)> {
    g23_presentation()
        .relations()
        .iter()
        .map(|(l, r)| (l.as_monomial().unwrap().0.clone(), r.as_monomial().unwrap().0.clone()))
        .collect()
}

pub fn g23_schema() -> RuleSchema {
    let a = g23_alphabet();
    RuleSchema {
        prefix: a.word("b"),
        block: a.word("ac"),
        suffix: a.word("b"),
        rhs_prefix: Word::empty(),
        rhs_block: a.word("ca"),
        rhs_suffix: Word::empty(),
        m_min: 1,
    }
}

pub fn g23_finite_rules() -> Vec<Rule> {
    let a = g23_alphabet();
    let ord = MonomialOrder::deglex_by_index(3);
    [("aa", "1"), ("bb", "1"), ("cc", "1"), ("bca", "acb"), ("cab", "bac"), ("cba", "abc")]
        .iter()
        .map(|(l, r)| Rule::new(a.word(l), Polynomial::word(a.word(r)), Origin::Input, &ord).unwrap())
        .collect()
}

/// Rules (i)-(iv) and the schema b(ac)^m b -> (ca)^m.
pub fn g23_system() -> RewriteSystem {
    RewriteSystem::new(g23_alphabet(), MonomialOrder::deglex_by_index(3), g23_finite_rules(), vec![g23_schema()]).unwrap()
}

pub fn xy_alphabet() -> Alphabet {
    Alphabet::new(["x", "y"]).unwrap()
}

/// `xy = y^2 x` with `y < x` under the given order family.
pub fn ex35_presentation(order: MonomialOrder) -> Presentation {
    let a = xy_alphabet();
    let rel = vec![(a.word("xy"), a.word("yyx"))];
    Presentation::semigroup(a, rel, order).unwrap()
}

pub fn ex35_deglex() -> Presentation {
    ex35_presentation(MonomialOrder::deglex(&[1, 0]).unwrap())
}

pub fn ex35_revtower() -> Presentation {
    ex35_presentation(MonomialOrder::reverse_tower(&[1, 0]).unwrap())
}

pub const G43_RULES: [(&str, &str); 10] = [
    ("aa", "1"),
    ("bb", "1"),
    ("cc", "1"),
    ("dd", "1"),
    ("ba", "cdabcd"),
    ("bcda", "adcb"),
    ("bca", "dacbd"),
    ("bda", "cadbc"),
    ("dca", "cdabcdcdb"),
    ("dcda", "cabdcdcb"),
];

/// The rule set S for G^4_3 under the tower order a > b > c > d.
pub fn g43_system() -> RewriteSystem {
    let a = Alphabet::latin(4);
    let ord = MonomialOrder::tower(&[3, 2, 1, 0]).unwrap();
    let rules = G43_RULES
        .iter()
        .map(|(l, r)| Rule::new(a.word(l), Polynomial::word(a.word(r)), Origin::Input, &ord).unwrap())
        .collect();
    RewriteSystem::new(a, ord, rules, vec![]).unwrap()
}

/// Completes a presentation with default caps.
pub fn completed(pres: &Presentation) -> RewriteSystem {
    complete(pres, CompletionCaps::default()).unwrap().0
}

/// Congruence classes of all words of length at most `max_len`, joining
/// words related by one application of a relation in either direction.
/// Derivations never leave the length window.
pub struct UnionFindOracle {
    index: HashMap<Word, usize>,
    parent: Vec<usize>,
}

impl UnionFindOracle {
    pub fn new(num_letters: usize, relations: &[(Word, Word)], max_len: usize) -> Self {
        let words: Vec<Word> = Word::all_up_to(num_letters, max_len).collect();
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut uf = UnionFindOracle {
            parent: (0..words.len()).collect(),
            index,
        };
        for (i, w) in words.iter().enumerate() {
            for (l, r) in relations {
                for (from, to) in [(l, r), (r, l)] {
                    if from.len() > w.len() || w.len() - from.len() + to.len() > max_len {
                        continue;
                    }
                    for p in 0..=w.len() - from.len() {
                        if &w.slice(p, p + from.len()) == from {
                            let next = to.wrap(&w.prefix(p), &w.suffix_from(p + from.len()));
                            let j = uf.index[&next];
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
        uf
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn class(&mut self, w: &Word) -> usize {
        let i = self.index[w];
        self.find(i)
    }
}

/// The normal-form set N of G^2_3: all factors of `(ab)^s (ac)^t`,
/// `(ab)^s (cb)^t` and `(ac)^s (bc)^t`, restricted to length at most
/// `max_len`.
pub fn g23_normal_set(max_len: usize) -> HashSet<Word> {
    let a = g23_alphabet();
    let pairs = [("ab", "ac"), ("ab", "cb"), ("ac", "bc")];
    let reach = max_len / 2 + 1;
    let mut out = HashSet::new();
    for (u, v) in pairs {
        for s in 0..=reach {
            for t in 0..=reach {
                let w = a.word(u).pow(s).concat(&a.word(v).pow(t));
                for i in 0..=w.len() {
                    for j in i..=w.len().min(i + max_len) {
                        out.insert(w.slice(i, j));
                    }
                }
            }
        }
    }
    out
}

/// Irreducible words counted by length, enumerated by extending irreducible
/// words one letter at a time (irreducibility is closed under factors).
pub fn enumerate_irr_counts<F: Field>(sys: &RewriteSystem<F>, max_len: usize) -> Vec<u64> {
    let k = sys.alphabet().len() as Letter;
    let mut counts = vec![0u64; max_len + 1];
    let mut layer = vec![Word::empty()];
    for (len, count) in counts.iter_mut().enumerate() {
        *count = layer.len() as u64;
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..k {
                let ext = w.concat(&Word::letter(l));
                if sys.is_irreducible(&ext) {
                    next.push(ext);
                }
            }
        }
        layer = next;
    }
    counts
}

/// Ambiguity words listed in the proof that rules (i)-(v) form a basis, for
/// exponents up to `bound`.
pub fn g23_proof_ambiguities(bound: usize) -> Vec<Word> {
    let a = g23_alphabet();
    let w = |s: &str| a.word(s);
    let ac = |m: usize| w("ac").pow(m);
    let mut out = vec![
        w("aaa"),
        w("bbb"),
        w("ccc"),
        w("bbca"),
        w("ccab"),
        w("ccba"),
        w("bcaa"),
        w("bcab"),
        w("cabb"),
        w("cabca"),
        w("cbaa"),
    ];
    for m in 1..=bound {
        out.push(ac(m).wrap(&w("bb"), &w("b")));
        out.push(ac(m).wrap(&w("cab"), &w("b")));
        out.push(ac(m - 1).wrap(&w("cbac"), &w("b")));
        out.push(ac(m).wrap(&w("b"), &w("bb")));
        out.push(ac(m).wrap(&w("b"), &w("bca")));
        out.push(ac(m - 1).wrap(&w("b"), &w("acba")));
        for l in 1..=bound {
            out.push(ac(m).wrap(&w("b"), &ac(l).wrap(&w("b"), &w("b"))));
        }
    }
    out
}
