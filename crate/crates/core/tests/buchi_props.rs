use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_core::sample::random_automaton;
use omega_core::{Alphabet, BuchiAutomaton, Limits, UpWord};

fn pair(seed: u64) -> (BuchiAutomaton, BuchiAutomaton) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = Alphabet::new("ab").unwrap();
    (random_automaton(&mut rng, &ab, 3, 0.4), random_automaton(&mut rng, &ab, 3, 0.4))
}

fn small_words() -> Vec<UpWord> {
    UpWord::enumerate(&Alphabet::new("ab").unwrap(), 3, 3).into_iter().filter(|w| w.size() <= 3).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn de_morgan(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let left = a.union(&b).unwrap().complement().unwrap();
        let right = a.complement().unwrap().intersect(&b.complement().unwrap()).unwrap();
        for w in small_words() {
            prop_assert_eq!(left.accepts_up(&w).unwrap(), right.accepts_up(&w).unwrap(), "{}", w);
        }
    }

    #[test]
    fn emptiness_witnesses_are_accepted(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        for x in [a.clone(), a.intersect(&b).unwrap(), a.complement().unwrap()] {
            if let Some(w) = x.is_empty().witness() {
                prop_assert!(x.accepts_up(w).unwrap());
            }
        }
    }

    #[test]
    fn membership_ignores_presentation(seed in any::<u64>(), unroll in 0usize..3, pump in 1usize..3) {
        let (a, _) = pair(seed);
        for w in small_words() {
            let mut prefix = w.prefix().clone();
            for _ in 0..unroll {
                prefix = prefix.concat(w.period());
            }
            let other = UpWord::new(prefix, w.period().repeat(pump)).unwrap();
            prop_assert_eq!(a.accepts_up(&w).unwrap(), a.accepts_up(&other).unwrap());
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        prop_assert!(a.equivalent(&a, Limits::default()).unwrap());
        prop_assert_eq!(a.equivalent(&b, Limits::default()).unwrap(), b.equivalent(&a, Limits::default()).unwrap());
    }
}
