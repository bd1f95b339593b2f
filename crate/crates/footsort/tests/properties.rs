//! Cross-module property tests: the fast paths against the brute-force
//! oracles, and the structural invariants each type promises.

use proptest::prelude::*;

use footsort::classifier::match_minimal_pattern;
use footsort::decider::{decide, validate_certificate, SortingState};
use footsort::gen::seeded_rng;
use footsort::oracle::{check_with_order, oracle_by_orders, oracle_by_simulation};
use footsort::{
    canonicalize, contains_pattern, reduce_adjacent, CanonicalOrdering, Color, SockOrdering,
    TotalOrderCertificate,
};
use rand::Rng;

fn ordering(max_len: usize, alphabet: u32) -> impl Strategy<Value = SockOrdering> {
    prop::collection::vec(0..alphabet, 0..=max_len).prop_map(SockOrdering::new)
}

/// Random subsequence of `s` chosen by a bit mask.
fn subsequence(s: &SockOrdering, mask: u64) -> SockOrdering {
    let picked: Vec<Color> = s
        .colors()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << (i % 64)) != 0)
        .map(|(_, &c)| c)
        .collect();
    SockOrdering::new(picked)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_preserves_sortability(s in ordering(10, 5)) {
        let r = reduce_adjacent(&s);
        prop_assert!(r.is_reduced());
        let twice = reduce_adjacent(&r);
        prop_assert_eq!(twice.colors(), r.colors());
        prop_assert_eq!(
            oracle_by_simulation(&s).unwrap(),
            oracle_by_simulation(&r).unwrap()
        );
    }

    #[test]
    fn canonical_forms_quotient_by_color_bijection(s in ordering(10, 5), seed in any::<u64>()) {
        // relabel colors by a random bijection; the canonical form must not move
        let mut rng = seeded_rng(seed);
        let mut map: Vec<u32> = (0..64).collect();
        for i in (1..map.len()).rev() {
            let j = rng.gen_range(0..=i);
            map.swap(i, j);
        }
        let relabeled =
            SockOrdering::new(s.colors().iter().map(|&c| map[c as usize]).collect());
        prop_assert_eq!(canonicalize(&relabeled), canonicalize(&s));
        prop_assert_eq!(
            CanonicalOrdering::of(&relabeled),
            CanonicalOrdering::of(&s)
        );
        // patterns of each other with equal length iff equal canonicalization
        prop_assert!(contains_pattern(&relabeled, &s).is_some());
        prop_assert!(contains_pattern(&s, &relabeled).is_some());
    }

    #[test]
    fn containment_is_reflexive_and_transitive(s in ordering(9, 4), m1 in any::<u64>(), m2 in any::<u64>()) {
        prop_assert!(contains_pattern(&s, &s).is_some());
        let p = subsequence(&s, m1);
        let q = subsequence(&p, m2);
        // constructed chain: q <= p <= s, so containment must hold pairwise
        prop_assert!(contains_pattern(&s, &p).is_some());
        prop_assert!(contains_pattern(&p, &q).is_some());
        prop_assert!(contains_pattern(&s, &q).is_some());
    }

    #[test]
    fn containment_transports_unsortability(s in ordering(10, 5), mask in any::<u64>()) {
        let p = subsequence(&s, mask);
        if !oracle_by_simulation(&p).unwrap() {
            prop_assert!(!oracle_by_simulation(&s).unwrap());
        }
    }

    #[test]
    fn decider_agrees_with_both_oracles(s in ordering(11, 6)) {
        let verdict = decide(&s);
        let by_orders = oracle_by_orders(&s).unwrap();
        let by_sim = oracle_by_simulation(&s).unwrap();
        prop_assert_eq!(by_orders.is_sortable(), by_sim);
        prop_assert_eq!(verdict.is_sortable(), by_sim);
        if let Some(cert) = verdict.certificate() {
            prop_assert!(check_with_order(&s, cert).unwrap());
        }
        if let Some(cert) = by_orders.certificate() {
            prop_assert!(check_with_order(&s, cert).unwrap());
        }
    }

    #[test]
    fn decide_is_invariant_under_reduction(s in ordering(14, 6)) {
        prop_assert_eq!(decide(&s), decide(&reduce_adjacent(&s)));
    }

    #[test]
    fn deleting_a_sock_keeps_sortable_sortable(s in ordering(12, 6)) {
        if decide(&s).is_sortable() {
            for i in 0..s.len() {
                let shorter = s.with_position_removed(i);
                prop_assert!(decide(&shorter).is_sortable());
                prop_assert!(oracle_by_simulation(&shorter).unwrap());
            }
        }
    }

    #[test]
    fn criterion_checker_ignores_adjacent_repeats(s in ordering(10, 5), seed in any::<u64>()) {
        let alphabet = s.alphabet();
        let mut rng = seeded_rng(seed);
        let mut order = alphabet.clone();
        for i in (1..order.len()).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        let cert = TotalOrderCertificate::from_ascending(order);
        let reduced = reduce_adjacent(&s);
        prop_assert_eq!(
            check_with_order(&s, &cert).unwrap(),
            check_with_order(&reduced, &cert).unwrap()
        );
        // the linear validator is equivalent to the cubic checker
        prop_assert_eq!(
            validate_certificate(&s, &cert),
            check_with_order(&s, &cert).unwrap()
        );
    }

    #[test]
    fn sorting_state_invariants_survive_operations(s in ordering(16, 6), script in any::<u64>()) {
        let mut state = SortingState::preprocess(&s);
        state.check_invariants();
        let mut rng = seeded_rng(script);
        for _ in 0..8 {
            if state.live_len() == 0 {
                break;
            }
            // pick a random live position by walking from a random original index
            let target = rng.gen_range(0..s.len().max(1));
            let live = (target..s.len())
                .chain(0..target)
                .find_map(|p| state.handle_at(p).map(|h| (p, h)));
            let Some((pos, handle)) = live else { break };
            if rng.gen_bool(0.5) {
                state.delete_node(handle);
            } else {
                state.reduce_color(canonical_color_at(&s, pos));
            }
            state.check_invariants();
        }
    }

    #[test]
    fn nonsortable_two_bounded_always_has_witness(len in 0usize..24, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let s = footsort::gen::random_two_bounded(&mut rng, len);
        let m = match_minimal_pattern(&s).unwrap();
        prop_assert_eq!(decide(&s).is_sortable(), m.is_none());
        if let Some(m) = m {
            // the witness really embeds and is itself minimal non-sortable
            prop_assert!(contains_pattern(&s, m.pattern.as_ordering()).is_some());
            prop_assert!(!decide(m.pattern.as_ordering()).is_sortable());
        }
    }
}

/// Dense label of the color at original position `pos` (first-occurrence
/// numbering, matching the decider's internal relabeling).
fn canonical_color_at(s: &SockOrdering, pos: usize) -> u32 {
    canonicalize(s).colors()[pos]
}

#[test]
fn fourteen_sporadics_fail_both_oracles() {
    for sp in footsort::classifier::sporadic_table() {
        let s = sp.ordering.as_ordering();
        assert!(
            !oracle_by_orders(s).unwrap().is_sortable(),
            "{} should not be sortable",
            sp.ordering
        );
        assert!(!oracle_by_simulation(s).unwrap());
        assert!(!decide(s).is_sortable());
    }
}
