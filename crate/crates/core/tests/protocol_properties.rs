use proptest::prelude::*;

use hyperdense_sim::hyperdense::{self, run_slot, PairSource, PartyBits, SharedOutcome};
use hyperdense_sim::rng::{Seeder, Stream};

fn party() -> impl Strategy<Value = PartyBits> {
    (any::<bool>(), any::<bool>()).prop_map(|(f, s)| PartyBits::new(f, s))
}

proptest! {
    #[test]
    fn k_counts_both_directions(alice in party(), bob in party(), c in any::<bool>()) {
        let s = run_slot(alice, bob, SharedOutcome::new(c));
        prop_assert_eq!(usize::from(s.k), s.delivered_to_alice.len() + s.delivered_to_bob.len());
        prop_assert!(!s.delivered_to_alice.is_empty() && !s.delivered_to_bob.is_empty());
        prop_assert_eq!(s.a_sent.is_some(), alice.first == c);
        prop_assert_eq!(s.b_sent.is_some(), bob.first == c);
        prop_assert_eq!(s.swap_roles().swap_roles().delivered(), s.delivered());
    }

    #[test]
    fn simulated_slots_stay_in_range(seed in any::<u64>(), n in 1u64..2000, coin in any::<bool>()) {
        let source = if coin { PairSource::Coin } else { PairSource::Qubit };
        let mut rng = Stream::from_u64(seed);
        let run = hyperdense::simulate_stream(n, &mut rng, source).unwrap().finish().unwrap();
        prop_assert_eq!(run.total.n, n);
        prop_assert!(run.total.mean >= 2.0 && run.total.mean <= 3.0);
        prop_assert!((run.total.mean - run.to_alice.mean - run.to_bob.mean).abs() < 1e-9);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn worker_count_never_changes_results(seed in any::<u64>(), n in 1u64..300_000, workers in 2usize..6) {
        let seeder = Seeder::new(seed);
        let one = hyperdense::simulate(n, &seeder, PairSource::Coin, 1).unwrap();
        let many = hyperdense::simulate(n, &seeder, PairSource::Coin, workers).unwrap();
        prop_assert_eq!(one, many);
    }
}
