use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_core::mso::{compile_to_buchi, encode_congruence_game, evaluate, mso_satisfiable, Formula, Oracles, UpValuation};
use omega_core::sample::{random_formula, random_valuation};
use omega_core::{Alphabet, UpWord};

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compile_agrees_with_evaluate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, 4, &['a', 'b'], &["X"]);
        let compiled = compile_to_buchi(&f, &ab()).unwrap();
        for _ in 0..10 {
            let val = random_valuation(&mut rng, &ab(), &["X"], 3, 3);
            prop_assert_eq!(evaluate(&f, &val, &Oracles::new()).unwrap(), compiled.accepts(&val).unwrap(), "{}", f);
        }
    }

    #[test]
    fn set_quantifier_duality(seed in any::<u64>()) {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), 3, &['a', 'b'], &["X"]);
        let left = compile_to_buchi(&Formula::not(Formula::exists2("X", f.clone())), &ab()).unwrap();
        let right = compile_to_buchi(&Formula::forall2("X", Formula::not(f)), &ab()).unwrap();
        for w in UpWord::enumerate(&ab(), 3, 3).into_iter().filter(|w| w.size() <= 3) {
            let val = UpValuation::new(w);
            prop_assert_eq!(left.accepts(&val).unwrap(), right.accepts(&val).unwrap());
        }
    }

    #[test]
    fn satisfying_models_evaluate_true(seed in any::<u64>()) {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), 4, &['a', 'b'], &["X"]);
        if let Some(model) = mso_satisfiable(&f, &ab()).unwrap() {
            prop_assert!(evaluate(&f, &model, &Oracles::new()).unwrap());
        }
    }
}

#[test]
fn game_sentences_are_well_formed() {
    for k in 2..=6 {
        let sigma = Alphabet::from_letters("1abcde".chars().take(k)).unwrap();
        let f = encode_congruence_game(&sigma, '1', "L").unwrap();
        assert!(f.check_well_scoped(&|s| (s == "L").then_some(k)).is_ok());
        let back: Formula = f.to_string().parse().unwrap();
        assert_eq!(back, f);
    }
}
