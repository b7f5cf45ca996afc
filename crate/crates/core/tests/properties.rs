use num_bigint::BigUint;
use proptest::prelude::*;

use qflow::channel::{deterministic_interactive_capacity, interactive_capacity_pure_bob};
use qflow::exact::q_int;
use qflow::nfa::{parse_nfa, OrderedNfa};
use qflow::random::{random_nfa, random_poset, random_sdfst, rng};
use qflow::reduction::{build_observer_nfa, flatten};
use qflow::transducer::{induced_channel, leakage_bruteforce, parse_transducer, realizable_observation_set};
use qflow::width::{enumerate_level, exact_width, is_antichain, lex_compare, LetterPoset, LexOutcome};

fn relabel(a: &OrderedNfa, poset: LetterPoset) -> OrderedNfa {
    OrderedNfa::with_poset(
        a.states().to_vec(),
        a.initial().to_vec(),
        a.accepting_states(),
        poset,
        0,
        &a.transitions(),
    )
    .unwrap()
}

fn flip(o: LexOutcome) -> LexOutcome {
    match o {
        LexOutcome::Less => LexOutcome::Greater,
        LexOutcome::Greater => LexOutcome::Less,
        other => other,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lex_order_is_a_strict_partial_order(
        seed in any::<u64>(),
        words in prop::collection::vec(prop::collection::vec(0usize..4, 3), 3),
    ) {
        let p = random_poset(&mut rng(seed), 4);
        let (u, v, w) = (&words[0], &words[1], &words[2]);
        let uv = lex_compare(u, v, &p).unwrap();
        prop_assert_eq!(lex_compare(v, u, &p).unwrap(), flip(uv));
        prop_assert_eq!(uv == LexOutcome::Equal, u == v);
        if uv == LexOutcome::Less && lex_compare(v, w, &p).unwrap() == LexOutcome::Less {
            prop_assert_eq!(lex_compare(u, w, &p).unwrap(), LexOutcome::Less);
        }
    }

    #[test]
    fn nfa_text_round_trips(seed in any::<u64>()) {
        let a = random_nfa(&mut rng(seed), 4, 4);
        let text = a.to_text();
        let b = parse_nfa(&text).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(b.to_text(), text);
    }

    #[test]
    fn transducer_text_round_trips(seed in any::<u64>()) {
        let t = random_sdfst(&mut rng(seed), 3, 2);
        let text = t.to_text();
        let u = parse_transducer(&text).unwrap();
        prop_assert_eq!(&u, &t);
        prop_assert_eq!(u.to_text(), text);
    }

    #[test]
    fn width_is_bounded_by_extreme_orders(seed in any::<u64>(), n in 0usize..5) {
        let a = random_nfa(&mut rng(seed), 4, 3);
        let letters = a.letters().to_vec();
        let count = enumerate_level(&a, n, 1 << 12).unwrap().len();
        let discrete = relabel(&a, LetterPoset::discrete(letters.clone()).unwrap());
        prop_assert_eq!(exact_width(&discrete, n).unwrap(), BigUint::from(count));
        let chain: Vec<(usize, usize)> = (1..letters.len()).map(|i| (i - 1, i)).collect();
        let total = relabel(&a, LetterPoset::from_generators(letters, &chain).unwrap());
        prop_assert_eq!(exact_width(&total, n).unwrap(), BigUint::from(count.min(1)));
        let w = exact_width(&a, n).unwrap();
        prop_assert!(w <= BigUint::from(count));
    }

    #[test]
    fn best_observations_are_a_realizable_antichain(seed in any::<u64>(), k in 1usize..=3) {
        let t = random_sdfst(&mut rng(seed), 3, 2);
        let brute = leakage_bruteforce(&t, k, 1 << 20).unwrap();
        let obs: Vec<_> = brute.observations.iter().cloned().collect();
        prop_assert!(realizable_observation_set(&obs, &t));
        let a = build_observer_nfa(&t).unwrap();
        let words: Vec<Vec<usize>> = obs.iter().map(|o| flatten(o, t.bob_in().len())).collect();
        prop_assert!(words.iter().all(|w| a.accepts(w)));
        prop_assert!(is_antichain(&words, a.poset()));
    }

    #[test]
    fn induced_channel_capacity_counts_observations(seed in any::<u64>(), k in 1usize..=2) {
        let mut t = random_sdfst(&mut rng(seed), 3, 2).to_description();
        t.accepting = (0..t.states.len()).collect();
        let t = t.validate().unwrap();
        let induced = induced_channel(&t, k, 1 << 12).unwrap();
        let brute = leakage_bruteforce(&t, k, 1 << 12).unwrap();
        let (count, _) = deterministic_interactive_capacity(&induced.channel).unwrap();
        prop_assert_eq!(count, brute.count);
        prop_assert_eq!(interactive_capacity_pure_bob(&induced.channel).ratio, q_int(brute.count));
    }
}
