//! End-to-end scenarios across presentations, completion and growth.

mod common;

use std::collections::BTreeSet;

use common::*;
use gsb_core::*;
use num_bigint::BigUint;

#[test]
fn manturov_g23_matches_the_raw_presentation() {
    let m = manturov(ManturovSpec { n: 3, k: 2 }).unwrap();
    let raw = g23_presentation();
    let as_set = |p: &Presentation| {
        p.relations()
            .iter()
            .map(|(l, r)| (l.as_monomial().unwrap().0.clone(), r.as_monomial().unwrap().0.clone()))
            .collect::<BTreeSet<_>>()
    };
    assert_eq!(as_set(&m), as_set(&raw));
    assert_eq!(m.alphabet().names(), ["a12", "a13", "a23"]);
    assert_eq!(m.aliases().unwrap(), ["a", "b", "c"]);
}

#[test]
fn word_problem_examples() {
    let (sys, _) = certify(g23_system(), 12).unwrap();
    let a = g23_alphabet();
    let v = word_problem(&sys, &a.word("bacb"), &a.word("ca")).unwrap();
    assert!(v.equal);
    assert_eq!(v.certified_bound, Some(12));
    assert!(!word_problem(&sys, &a.word("abab"), &a.word("baba")).unwrap().equal);
    // Schema instance with m = 3.
    assert_eq!(sys.normal_word(&a.word("bacacacb")).unwrap(), a.word("cacaca"));
}

#[test]
fn weyl_algebra_has_quadratic_filtration() {
    let a = xy_alphabet();
    let xy: Polynomial = Polynomial::word(a.word("xy"));
    let yx_plus_one = &Polynomial::word(a.word("yx")) + &Polynomial::one();
    let pres = Presentation::new(a.clone(), vec![(xy, yx_plus_one)], MonomialOrder::deglex(&[0, 1]).unwrap()).unwrap();
    assert_eq!(pres.kind(), PresentationKind::Algebra);
    let (sys, report) = complete(&pres, CompletionCaps::default()).unwrap();
    assert_eq!(report.status, CompletionStatus::Stabilized);
    let rules: Vec<String> = sys.rules().iter().map(|r| r.render(&a, sys.order())).collect();
    assert_eq!(rules, ["yx -> xy - 1"]);
    let g = gkdim_report(&sys, 10, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(g.classification, GrowthClass::Polynomial(2));
    assert_eq!(g.validity, Validity::ExactForA);
    let table = dim_filtration(&sys, 6, DEFAULT_STATE_CAP).unwrap();
    let expected: Vec<u64> = (0..=6u64).map(|n| (n + 1) * (n + 2) / 2).collect();
    assert_eq!(table.d_a, expected);
    assert_eq!(table.d_tilde, expected);
}

#[test]
fn completion_over_a_prime_field_agrees() {
    let raw = g23_presentation();
    let rels = raw
        .relations()
        .iter()
        .map(|(l, r)| (l.as_monomial().unwrap().0.clone(), r.as_monomial().unwrap().0.clone()))
        .collect();
    let pres: Presentation<Fp<5>> = Presentation::semigroup(g23_alphabet(), rels, raw.order().clone()).unwrap();
    let (sys, report) = complete(&pres, CompletionCaps { max_deg: 8, ..Default::default() }).unwrap();
    assert_eq!(report.status, CompletionStatus::CapReached);
    assert_eq!(report.cap, Some("max_deg"));
    let a = g23_alphabet();
    let lhs: BTreeSet<String> = sys.rules().iter().map(|r| a.render(&r.lhs)).collect();
    let expected: BTreeSet<String> =
        ["aa", "bb", "cc", "bca", "cab", "cba", "bacb", "bacacb", "bacacacb"].iter().map(|s| s.to_string()).collect();
    assert_eq!(lhs, expected);
}

#[test]
fn completion_reports_provenance() {
    let (_, report) = complete(&g23_presentation(), CompletionCaps::default()).unwrap();
    let a = g23_alphabet();
    let first = report.added.iter().find(|(w, _)| *w == a.word("bacb")).expect("bacb is derived");
    match &first.1 {
        Origin::Composition { ambiguity, .. } => assert!(ambiguity.len() >= 4),
        other => panic!("unexpected origin {other:?}"),
    }
    assert_eq!(report.history.last(), Some(&11));
    assert_eq!(report.pending, 1);
}

#[test]
fn rule_cap_stops_runaway_completion() {
    let pres = manturov(ManturovSpec { n: 4, k: 2 }).unwrap();
    let caps = CompletionCaps {
        max_rules: 40,
        ..CompletionCaps::default()
    };
    let (_, report) = complete(&pres, caps).unwrap();
    assert_eq!(report.status, CompletionStatus::CapReached);
    assert_eq!(report.cap, Some("max_rules"));
}

#[test]
fn verification_flags_missing_rules() {
    let sys = RewriteSystem::new(g23_alphabet(), MonomialOrder::deglex_by_index(3), g23_finite_rules(), vec![]).unwrap();
    let report = verify_gsb(&sys, 1).unwrap();
    assert!(!report.certified());
    let a = g23_alphabet();
    let remainders: BTreeSet<String> = report
        .nontrivial_records()
        .map(|r| r.remainder.as_ref().unwrap().make_monic(sys.order()).unwrap().render(&a, sys.order()))
        .collect();
    assert!(remainders.contains("bacb - ca"), "{remainders:?}");
}

#[test]
fn schema_bound_must_reach_the_first_exponent() {
    let err = verify_gsb(&g23_system(), 0).unwrap_err();
    assert_eq!(err.code(), "domain");
}

#[test]
fn growth_guards() {
    let sys = g23_system();
    assert!(matches!(dim_filtration(&sys, 11, DEFAULT_STATE_CAP), Err(GsbError::Resource(_))));
    assert_eq!(gkdim_report(&sys, 4, 3).unwrap_err(), GsbError::StateCapExceeded(3));
    let g = gkdim_report(&sys, 4, DEFAULT_STATE_CAP).unwrap();
    assert!(g.warnings.iter().any(|w| w.contains("not certified")));
    let (certified, _) = certify(sys, 12).unwrap();
    assert!(gkdim_report(&certified, 4, DEFAULT_STATE_CAP).unwrap().warnings.is_empty());
}

#[test]
fn reverse_tower_on_three_letters_warns() {
    let a = Alphabet::latin(3);
    let ord = MonomialOrder::reverse_tower(&[0, 1, 2]).unwrap();
    let rule: Rule = Rule::new(a.word("ca"), Polynomial::word(a.word("aac")), Origin::Input, &ord).unwrap();
    let sys = RewriteSystem::new(a, ord, vec![rule], vec![]).unwrap();
    let g = gkdim_report(&sys, 4, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(g.validity, Validity::LowerBoundForA);
    assert!(g.warnings.iter().any(|w| w.contains("generalisation")));
}

#[test]
fn g1n_normal_words_are_increasing_products() {
    let sys = completed(&manturov(ManturovSpec { n: 3, k: 1 }).unwrap());
    let census = count_normal_words(
        &build_irr_automaton(&ForbiddenSet::from_system(&sys), 3, DEFAULT_STATE_CAP).unwrap(),
        4,
    );
    let per: Vec<BigUint> = [1u32, 3, 3, 1, 0].iter().map(|&n| BigUint::from(n)).collect();
    assert_eq!(census.per_length, per);
}

#[test]
fn free_check_reports_witnesses() {
    let sys = g43_system();
    let a = sys.alphabet().clone();
    let aut = build_irr_automaton(&ForbiddenSet::from_system(&sys), 4, DEFAULT_STATE_CAP).unwrap();
    match free_submonoid_check(&aut, &[a.word("b"), a.word("a")]).unwrap() {
        FreeCheckResult::LeavesIrr { witness, .. } => assert!(!aut.accepts(&witness)),
        other => panic!("{other:?}"),
    }
    assert!(free_submonoid_check(&aut, &[a.word("ca"), a.word("ca")]).is_err());
}
