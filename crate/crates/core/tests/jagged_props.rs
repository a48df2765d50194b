use partition_identities::jagged::{
    add_staircase, is_jagged, is_strong, maximal_blocks, remove_staircase, sample_strong,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn strong_sequence() -> impl Strategy<Value = (Vec<i64>, u64)> {
    (0u64..=9, any::<u64>()).prop_map(|(k, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        (sample_strong(&mut rng, k, 40), k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn blocks_juxtapose_back((seq, k) in strong_sequence()) {
        let blocks = maximal_blocks(&seq, k).unwrap();
        let joined: Vec<i64> = blocks.iter().flat_map(|b| b.entries.iter().copied()).collect();
        prop_assert_eq!(&joined, &seq);
        for pair in blocks.windows(2) {
            prop_assert!(pair[0].label < pair[1].label);
        }
        for b in &blocks {
            prop_assert_eq!(b.entries[0], b.label);
            prop_assert!(b.entries.iter().all(|&a| a <= b.label && a >= b.label - k as i64));
        }
    }

    #[test]
    fn staircase_round_trips((seq, k) in strong_sequence()) {
        prop_assert!(is_jagged(&seq, k));
        let classical = add_staircase(&seq, k);
        prop_assert!(classical.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(remove_staircase(&classical, k).unwrap(), seq);
    }

    #[test]
    fn weakly_increasing_input_is_zero_jagged(mut v in prop::collection::vec(1i64..200, 0..30), k in 0u64..6) {
        v.sort_unstable();
        prop_assert!(is_strong(&v, 0));
        let lowered = remove_staircase(&add_staircase(&v, k), k).unwrap();
        prop_assert_eq!(lowered, v);
    }
}
