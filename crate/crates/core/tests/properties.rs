//! Property tests over the public API.

mod common;

use std::cmp::Ordering;

use common::*;
use gsb_core::*;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn word(letters: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters as Letter, 0..=max_len).prop_map(Word::from_letters)
}

fn poly(letters: usize) -> impl Strategy<Value = Polynomial<Fp<7>>> {
    prop::collection::vec((word(letters, 4), -3i64..=3), 0..4)
        .prop_map(|ts| Polynomial::from_terms(ts.into_iter().map(|(w, c)| (w, Fp::new(c)))))
}

fn order(letters: usize) -> impl Strategy<Value = MonomialOrder> {
    let perm = Just((0..letters as Letter).collect::<Vec<_>>()).prop_shuffle();
    let weights = prop::collection::vec(1u32..4, letters);
    (0..4usize, perm, weights).prop_map(|(family, asc, w)| match family {
        0 => MonomialOrder::deglex(&asc).unwrap(),
        1 => MonomialOrder::weighted_deglex(w, &asc).unwrap(),
        2 => MonomialOrder::tower(&asc).unwrap(),
        _ => MonomialOrder::reverse_tower(&asc).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orders_are_total_and_compatible(ord in order(3), u in word(3, 7), v in word(3, 7), a in word(3, 3), b in word(3, 3)) {
        let c = ord.cmp_words(&u, &v);
        prop_assert_eq!(c == Ordering::Equal, u == v);
        prop_assert_eq!(ord.cmp_words(&v, &u), c.reverse());
        prop_assert_eq!(ord.cmp_words(&u.wrap(&a, &b), &v.wrap(&a, &b)), c);
        // The empty word is the least element.
        prop_assert!(u.is_empty() || ord.less(&Word::empty(), &u));
    }

    #[test]
    fn orders_are_transitive(ord in order(3), mut ws in prop::collection::vec(word(3, 6), 3)) {
        ws.sort_by(|x, y| ord.cmp_words(x, y));
        prop_assert_ne!(ord.cmp_words(&ws[0], &ws[2]), Ordering::Greater);
    }

    #[test]
    fn multiplication_is_associative_and_distributive(f in poly(2), g in poly(2), h in poly(2)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn leading_words_multiply(ord in order(2), f in poly(2), g in poly(2)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (lf, cf) = f.leading(&ord).unwrap();
        let (lg, cg) = g.leading(&ord).unwrap();
        let (lfg, cfg) = (&f * &g).leading(&ord).unwrap();
        prop_assert_eq!(lfg, lf.concat(&lg));
        prop_assert_eq!(cfg, cf.mul(&cg));
    }

    #[test]
    fn make_monic_is_idempotent(ord in order(2), f in poly(2)) {
        prop_assume!(!f.is_zero());
        let m = f.make_monic(&ord).unwrap();
        prop_assert!(m.leading(&ord).unwrap().1.is_one());
        prop_assert_eq!(m.make_monic(&ord).unwrap(), m);
    }

    #[test]
    fn g23_reduction_is_confluent(u in word(3, 10), seed in any::<u64>()) {
        let sys = g23_system();
        let canonical = sys.normal_form_of_word(&u).unwrap();
        let mut state = seed | 1;
        let random = sys.normal_form_with(&Polynomial::word(u.clone()), |_, occ| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            occ[(state % occ.len() as u64) as usize]
        }, |_| {}).unwrap();
        prop_assert_eq!(&random, &canonical);
        prop_assert_eq!(Polynomial::word(sys.normal_word(&u).unwrap()), canonical);
    }

    #[test]
    fn g43_reduction_is_confluent(u in word(4, 8), pick_last in any::<bool>()) {
        let sys = g43_system();
        let canonical = sys.normal_form_of_word(&u).unwrap();
        let other = sys.normal_form_with(&Polynomial::word(u), |_, occ| {
            if pick_last { *occ.last().unwrap() } else { occ[occ.len() / 2] }
        }, |_| {}).unwrap();
        prop_assert_eq!(other, canonical);
    }

    #[test]
    fn normal_forms_respect_the_congruence(u in word(3, 8), w in word(3, 8)) {
        let sys = g23_system();
        let nf = |x: &Word| sys.normal_word(x).unwrap();
        prop_assert_eq!(nf(&u.concat(&w)), nf(&nf(&u).concat(&w)));
        prop_assert_eq!(nf(&u.concat(&w)), nf(&u.concat(&nf(&w))));
        prop_assert!(word_problem(&sys, &u, &nf(&u)).unwrap().equal);
    }

    #[test]
    fn polynomial_normal_form_is_linear(f in prop::collection::vec((word(3, 7), -4i64..=4), 0..5), g in prop::collection::vec((word(3, 7), -4i64..=4), 0..5)) {
        let sys = g23_system();
        let mk = |ts: &[(Word, i64)]| Polynomial::from_terms(ts.iter().map(|(w, c)| (w.clone(), Rational::from_i64(*c))));
        let (f, g) = (mk(&f), mk(&g));
        let lhs = sys.normal_form(&(&f + &g)).unwrap();
        let rhs = &sys.normal_form(&f).unwrap() + &sys.normal_form(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn census_matches_brute_force(forbidden in prop::collection::vec(word(2, 4), 0..4)) {
        let forbidden: Vec<Word> = forbidden.into_iter().filter(|w| !w.is_empty()).collect();
        let aut = build_irr_automaton(&ForbiddenSet::from_words(forbidden.clone()), 2, DEFAULT_STATE_CAP).unwrap();
        let census = count_normal_words(&aut, 9);
        for n in 0..=9 {
            let brute = Word::all_of_length(2, n).filter(|w| !forbidden.iter().any(|f| w.contains_factor(f))).count();
            prop_assert_eq!(census.per_length[n].clone(), BigUint::from(brute));
        }
    }

    #[test]
    fn growth_class_matches_census(forbidden in prop::collection::vec(word(2, 4), 1..4)) {
        let forbidden: Vec<Word> = forbidden.into_iter().filter(|w| !w.is_empty()).collect();
        let aut = build_irr_automaton(&ForbiddenSet::from_words(forbidden), 2, DEFAULT_STATE_CAP).unwrap();
        let census = count_normal_words(&aut, 128);
        let cum = |n: usize| census.cumulative[n].to_f64().unwrap();
        match classify_growth(&aut) {
            GrowthClass::FiniteDimensional(total) => {
                prop_assert_eq!(&census.cumulative[128], &total);
                prop_assert_eq!(&census.cumulative[64], &total);
            }
            GrowthClass::Polynomial(d) => {
                prop_assert!(census.per_length[128] > BigUint::from(0u32));
                let ratio = cum(128) / cum(64);
                prop_assert!(ratio <= 2f64.powi(d as i32 + 1), "ratio {} for degree {}", ratio, d);
                prop_assert!(ratio >= 2f64.powi(d as i32 - 1), "ratio {} for degree {}", ratio, d);
            }
            GrowthClass::Exponential => {
                // Forbidden words have length <= 4, so the growth rate of an
                // infinite-rank language is bounded away from 1.
                prop_assert!(cum(128) / cum(64) > 64.0, "ratio {}", cum(128) / cum(64));
            }
        }
    }

    #[test]
    fn codes_have_unique_factorizations(gens in prop::collection::btree_set(word(2, 4), 1..4)) {
        let gens: Vec<Word> = gens.into_iter().filter(|w| !w.is_empty()).collect();
        prop_assume!(!gens.is_empty());
        // Brute force: two different factorizations of some word of length <= 8.
        fn factorizations(w: &Word, gens: &[Word], limit: usize) -> usize {
            if w.is_empty() {
                return 1;
            }
            let mut n = 0;
            for g in gens {
                if w.starts_with(g) {
                    n += factorizations(&w.suffix_from(g.len()), gens, limit);
                    if n >= limit {
                        break;
                    }
                }
            }
            n
        }
        let brute_ambiguous = Word::all_up_to(2, 8).any(|w| factorizations(&w, &gens, 2) >= 2);
        match sardinas_patterson(&gens) {
            Some(amb) => {
                let cat = |s: &[usize]| s.iter().fold(Word::empty(), |acc, &k| acc.concat(&gens[k]));
                prop_assert_eq!(cat(&amb.left), amb.word.clone());
                prop_assert_eq!(cat(&amb.right), amb.word.clone());
                prop_assert_ne!(amb.left, amb.right);
            }
            // Short generators: a non-code always has a short ambiguous word.
            None => prop_assert!(!brute_ambiguous),
        }
    }
}

#[test]
fn manturov_relation_totals() {
    for n in 2..=6usize {
        for k in 1..n {
            let pres = manturov(ManturovSpec { n, k }).unwrap();
            let gens = pres.alphabet().len();
            let subsets: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
            assert_eq!(gens, subsets.len());
            let far = subsets
                .iter()
                .enumerate()
                .flat_map(|(i, a)| subsets[i + 1..].iter().map(move |b| (a & b).count_ones() as usize + 1 < k))
                .filter(|&x| x)
                .count();
            let next: usize = (0u32..1 << n).filter(|m| m.count_ones() as usize == k + 1).count();
            let fact: usize = (1..=k + 1).product();
            assert_eq!(pres.relations().len(), gens + far + next * fact / 2, "n = {n}, k = {k}");
        }
    }
}
