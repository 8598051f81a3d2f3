//! Randomised invariants of the λ machinery, braid moves, gathering and the
//! planar model. Each case draws a seed and grows a reduced word from it.

use std::collections::HashSet;

use ngt_core::braid::{
    apply_move, available_moves, braid_class, endpoints_movable, endpoints_movable_by_class, gather, gather_by_words,
    replay_trace, GatherOutcome, GatherQuery, DEFAULT_NODE_CAP,
};
use ngt_core::ngt::{admissible_triples, classical_index_pairs, construct_classical_min_ngt, orthogonal_decomposition};
use ngt_core::planar::{bundle, config_to_word, primitives, signed_one_line, word_to_config};
use ngt_core::{RootSystem, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sys(name: &str) -> RootSystem {
    RootSystem::build(name.parse().unwrap()).unwrap()
}

fn reduced(rs: &RootSystem, seed: u64) -> Word {
    let mut rng = StdRng::seed_from_u64(seed);
    let len = rng.gen_range(0..=rs.num_positive());
    rs.random_reduced_word(&mut rng, len)
}

fn any_word(rs: &RootSystem, seed: u64, max_len: usize) -> Word {
    let mut rng = StdRng::seed_from_u64(seed);
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(0..rs.rank()) as u8).collect())
}

const SMALL: [&str; 7] = ["A3", "B3", "C3", "D4", "G2", "B4", "F4"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_is_the_inversion_set(k in 0..SMALL.len(), seed in any::<u64>()) {
        let rs = sys(SMALL[k]);
        let w = reduced(&rs, seed);
        let e = rs.element_of(&w).unwrap();
        let lam = rs.lambda_sequence(&w).unwrap();
        prop_assert_eq!(lam.len(), w.len());
        prop_assert_eq!(e.length(), w.len());
        prop_assert!(lam.roots.iter().all(|&r| rs.is_positive(r)));
        prop_assert_eq!(lam.roots.iter().collect::<HashSet<_>>().len(), lam.len());
        prop_assert_eq!(lam.sorted(), e.lambda_set());
        // exchange: α ∈ λ(w) ⟺ l(w s_α) < l(w)
        for a in rs.positive() {
            let shorter = e.compose(&rs.reflection_element(a)).length() < e.length();
            prop_assert_eq!(lam.position(a).is_some(), shorter);
        }
    }

    #[test]
    fn cocycle_at_every_split(k in 0..SMALL.len(), seed in any::<u64>()) {
        let rs = sys(SMALL[k]);
        let w = reduced(&rs, seed);
        for cut in 0..=w.len() {
            let (a, b) = w.letters().split_at(cut);
            let u = rs.element_of(&Word::new(a.to_vec())).unwrap();
            let v = rs.element_of(&Word::new(b.to_vec())).unwrap();
            prop_assert!(rs.verify_cocycle(&u, &v).holds(), "{} cut {}", w, cut);
        }
    }

    #[test]
    fn reflections_distinct_iff_reduced(k in 0..SMALL.len(), seed in any::<u64>()) {
        let rs = sys(SMALL[k]);
        let w = any_word(&rs, seed, 10);
        let t = rs.coxeter_t_set(&w).unwrap();
        let distinct = t.iter().collect::<HashSet<_>>().len() == t.len();
        prop_assert_eq!(distinct, rs.is_reduced(&w));
    }

    #[test]
    fn triangle_closure(k in 0..SMALL.len(), seed in any::<u64>()) {
        let rs = sys(SMALL[k]);
        let lam = rs.lambda_sequence(&reduced(&rs, seed)).unwrap();
        for (i, &a) in lam.roots.iter().enumerate() {
            for (j, &b) in lam.roots.iter().enumerate().skip(i + 1) {
                if let Some(c) = rs.add(a, b) {
                    let p = lam.position(c);
                    prop_assert!(p.is_some_and(|p| i < p && p < j));
                }
            }
        }
    }

    #[test]
    fn braid_moves_reverse_a_window(k in 0..SMALL.len(), seed in any::<u64>()) {
        let rs = sys(SMALL[k]);
        let w = reduced(&rs, seed);
        let e = rs.element_of(&w).unwrap();
        let before = rs.lambda_sequence(&w).unwrap().written_order();
        for mv in available_moves(&rs, &w) {
            let moved = apply_move(&rs, &w, &mv).unwrap();
            prop_assert_eq!(rs.element_of(&moved).unwrap(), e.clone());
            let mut expect = before.clone();
            expect[mv.position..mv.position + mv.window].reverse();
            prop_assert_eq!(rs.lambda_sequence(&moved).unwrap().written_order(), expect);
        }
    }

    #[test]
    fn gather_agrees_with_word_search(k in 0..5usize, seed in any::<u64>()) {
        let rs = sys(["A3", "B3", "C3", "D4", "B4"][k]);
        let w = reduced(&rs, seed);
        let lam = rs.lambda_sequence(&w).unwrap();
        for t in admissible_triples(&rs, &lam) {
            let q = GatherQuery::new(w.clone(), t.triple.alpha, t.triple.gamma, t.triple.beta);
            let fast = gather(&rs, &q).unwrap();
            let slow = gather_by_words(&rs, &q).unwrap();
            prop_assert_eq!(fast.is_gathered(), slow.is_gathered(), "{}", w);
            if let GatherOutcome::Gathered { witness, trace, .. } = fast {
                prop_assert_eq!(replay_trace(&rs, &q, &trace).unwrap(), witness);
            }
        }
    }

    #[test]
    fn planar_round_trip(k in 0..9usize, seed in any::<u64>()) {
        let rs = sys(["B3", "C3", "D4", "B5", "C5", "D5", "B7", "C6", "D7"][k]);
        let w = reduced(&rs, seed);
        let c = word_to_config(&rs, &w).unwrap();
        prop_assert_eq!(config_to_word(&rs, &c).unwrap(), w.clone());
        prop_assert_eq!(c.roots_right_to_left(), rs.lambda_sequence(&w).unwrap().roots);
        let e = rs.element_of(&w).unwrap();
        prop_assert_eq!(c.left_labels, signed_one_line(&rs, &e.inverse()).unwrap());
    }

    #[test]
    fn primitives_bundle_back(k in 0..3usize, seed in any::<u64>()) {
        let rs = sys(["D4", "D5", "D6"][k]);
        let w = reduced(&rs, seed);
        prop_assert_eq!(bundle(&rs, &primitives(&rs, &w).unwrap()).unwrap(), w);
    }
}

#[test]
fn braid_classes_share_element_and_lambda_set() {
    for name in ["A3", "B3"] {
        let rs = sys(name);
        for seed in 0..20 {
            let w = reduced(&rs, seed);
            let e = rs.element_of(&w).unwrap();
            let class = braid_class(&rs, &w, DEFAULT_NODE_CAP).unwrap();
            assert!(class.complete);
            for v in &class.words {
                assert_eq!(rs.element_of(v).unwrap(), e);
                assert_eq!(rs.lambda_sequence(v).unwrap().sorted(), e.lambda_set());
            }
        }
    }
}

#[test]
fn descent_test_matches_class_search() {
    for name in ["B3", "C3"] {
        let rs = sys(name);
        for e in rs.enumerate_group(None).elements() {
            let w = rs.shortlex(&e);
            assert_eq!(
                endpoints_movable(&rs, &e),
                endpoints_movable_by_class(&rs, &w, DEFAULT_NODE_CAP).unwrap(),
                "{w}"
            );
        }
    }
}

#[test]
fn reflections_distinct_iff_reduced_exhaustive_b3() {
    let rs = sys("B3");
    let mut words = vec![Word::empty()];
    for _ in 0..6 {
        words = words.iter().flat_map(|w| (0..3u8).map(move |l| Word::new([w.letters(), &[l]].concat()))).collect();
        for w in &words {
            let t = rs.coxeter_t_set(w).unwrap();
            assert_eq!(t.iter().collect::<HashSet<_>>().len() == t.len(), rs.is_reduced(w), "{w}");
        }
    }
}

#[test]
fn classical_records_are_orthogonal_involutions() {
    for name in ["B3", "B4", "B5", "C3", "C4", "C5", "D4", "D5", "D6"] {
        let rs = sys(name);
        for (i, j) in classical_index_pairs(&rs).unwrap() {
            let (e, factors) = construct_classical_min_ngt(&rs, i, j).unwrap();
            assert!(e.is_involution(), "{name} {i} {j}");
            assert!(orthogonal_decomposition(&rs, &e).is_some(), "{name} {i} {j}");
            for (p, &a) in factors.iter().enumerate() {
                assert!(factors[p + 1..].iter().all(|&b| rs.orthogonal(a, b)));
            }
        }
    }
}

#[test]
fn static_and_dynamic_rules_agree_on_minimal_ngt() {
    use ngt_core::braid::SegmentRule;
    use ngt_core::ngt::{search_minimal_ngt, SearchOptions};
    for name in ["F4", "E6"] {
        let rs = sys(name);
        for rec in search_minimal_ngt(&rs, &SearchOptions::default()).records {
            // The outer roots fill both ends and cannot move, so both rules
            // see the whole word at every step.
            let lam = rs.lambda_sequence(&rec.word).unwrap();
            assert_eq!(lam.roots[0], rec.triple.alpha);
            assert_eq!(*lam.roots.last().unwrap(), rec.triple.beta);
            assert_eq!(endpoints_movable(&rs, &rec.element), (false, false));
            if name == "F4" {
                let t = rec.triple;
                let q = GatherQuery::new(rec.word.clone(), t.alpha, t.gamma, t.beta);
                let fixed = gather_by_words(&rs, &q.with_rule(SegmentRule::Static)).unwrap();
                assert!(matches!(fixed, GatherOutcome::NotGatherable { .. }), "{}", rec.word);
            }
        }
    }
}

#[test]
fn f4_blocks_have_simple_middle_root() {
    use ngt_core::ngt::{search_minimal_ngt, SearchOptions};
    let rs = sys("F4");
    for rec in search_minimal_ngt(&rs, &SearchOptions::default()).records {
        let lam = rec.element.lambda_set();
        assert!(!rec.blocks.is_empty());
        for b in &rec.blocks {
            assert!(rs.simple_index(b.simple[1]).is_some(), "{}", rec.word);
            assert!(!lam.contains(&b.simple[0]) && !lam.contains(&b.simple[2]), "{}", rec.word);
        }
    }
}
