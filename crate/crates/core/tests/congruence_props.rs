use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_core::congruence::{check_condition1, check_condition2_bounded, lemma_repair, Condition2Bounds};
use omega_core::oracles::{Regular, Unbounded, UnboundedNeutral};
use omega_core::sample::{random_automaton, random_classifier};
use omega_core::{Alphabet, Classifier, LanguageOracle, Limits};

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn repair_yields_a_congruence(seed in any::<u64>()) {
        let c = random_classifier(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 6, 4);
        let r = lemma_repair(&c).unwrap();
        prop_assert!(check_condition1(&r.classifier).unwrap().is_none());
        prop_assert!(r.classifier.index() <= c.index());
        prop_assert!(r.merges.len() < c.index());
        for m in &r.merges {
            prop_assert!(c.equivalent(&m.u, &m.u_prime).is_ok());
        }
    }

    #[test]
    fn reported_violations_verify(seed in any::<u64>()) {
        let c = random_classifier(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 6, 4);
        if let Some(v) = check_condition1(&c).unwrap() {
            prop_assert!(v.verify(&c).unwrap());
        }
    }

    #[test]
    fn condition2_witnesses_reproduce(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automaton(&mut rng, &ab(), 3, 0.4);
        let c = random_classifier(&mut rng, &ab(), 4, 3);
        let o = Regular::new(a);
        let bounds = Condition2Bounds { word_len: 2, head_len: 1, cycle_len: 2 };
        if let Some(w) = check_condition2_bounded(&c, &o, bounds).unwrap() {
            let left = o.contains(&w.original.product().unwrap()).unwrap();
            let right = o.contains(&w.replaced.product().unwrap()).unwrap();
            prop_assert_ne!(left, right);
            prop_assert!(w.verify(&o).unwrap());
        }
    }

    #[test]
    fn transition_kernels_are_congruences(seed in any::<u64>()) {
        let a = random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 3, 0.4);
        let c = Classifier::transition_kernel(&a, Limits::default()).unwrap();
        prop_assert!(check_condition1(&c).unwrap().is_none());
        let o = Regular::new(a);
        for bounds in [
            Condition2Bounds { word_len: 1, head_len: 1, cycle_len: 1 },
            Condition2Bounds { word_len: 2, head_len: 1, cycle_len: 2 },
        ] {
            prop_assert!(check_condition2_bounded(&c, &o, bounds).unwrap().is_none());
        }
    }

    #[test]
    fn violation_finders_verify(seed in any::<u64>()) {
        let c = random_classifier(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 5, 3);
        let u = Unbounded::new();
        let w = u.find_violation(&c).unwrap();
        prop_assert!(w.verify(&u).unwrap());
        prop_assert!(w.verify_classes(&c, 64).unwrap());
    }
}

#[test]
fn neutral_variant_has_a_finder() {
    let up = UnboundedNeutral::new();
    let c = Classifier::single_class(up.alphabet().clone());
    let w = up.find_violation(&c).unwrap();
    assert!(w.verify(&up).unwrap());
}
