//! Unique decodability of finite word sets (Sardinas–Patterson).

use std::collections::{HashSet, VecDeque};

use crate::word::Word;

/// A word with two distinct factorizations over a generator list, given as
/// generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguousFactorization {
    pub word: Word,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Runs the Sardinas–Patterson procedure on `gens` (non-empty, pairwise
/// distinct words). Returns `None` when the set is a code, otherwise a word
/// with two factorizations.
///
/// The search walks dangling suffixes breadth first, so the witness is one
/// with the fewest extension steps.
pub fn sardinas_patterson(gens: &[Word]) -> Option<AmbiguousFactorization> {
    struct Node {
        dangling: Word,
        /// The factorization that is ahead by `dangling`.
        ahead: Vec<usize>,
        behind: Vec<usize>,
    }

    let mut queue = VecDeque::new();
    let mut seen: HashSet<Word> = HashSet::new();
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            if i != j && gj.len() > gi.len() && gj.starts_with(gi) {
                let dangling = gj.suffix_from(gi.len());
                if seen.insert(dangling.clone()) {
                    queue.push_back(Node {
                        dangling,
                        ahead: vec![j],
                        behind: vec![i],
                    });
                }
            }
        }
    }

    while let Some(node) = queue.pop_front() {
        for (g, word) in gens.iter().enumerate() {
            let mut behind = node.behind.clone();
            behind.push(g);
            if *word == node.dangling {
                let concat = |seq: &[usize]| seq.iter().fold(Word::empty(), |acc, &k| acc.concat(&gens[k]));
                let left = node.ahead.clone();
                let witness = concat(&left);
                debug_assert_eq!(witness, concat(&behind));
                return Some(AmbiguousFactorization {
                    word: witness,
                    left,
                    right: behind,
                });
            }
            let next = if node.dangling.len() > word.len() && node.dangling.starts_with(word) {
                Node {
                    dangling: node.dangling.suffix_from(word.len()),
                    ahead: node.ahead.clone(),
                    behind,
                }
            } else if word.len() > node.dangling.len() && word.starts_with(&node.dangling) {
                Node {
                    dangling: word.suffix_from(node.dangling.len()),
                    ahead: behind,
                    behind: node.ahead.clone(),
                }
            } else {
                continue;
            };
            if seen.insert(next.dangling.clone()) {
                queue.push_back(next);
            }
        }
    }
    None
}
