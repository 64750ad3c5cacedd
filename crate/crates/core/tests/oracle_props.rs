use proptest::prelude::*;

use omega_core::oracles::{PrimeBlocks, Regular, Singleton, UltimatelyPeriodic, Unbounded, UnboundedNeutral};
use omega_core::{Alphabet, BuchiAutomaton, FiniteWord, LanguageOracle, UpWord};

fn word(letters: &'static [char], max: usize) -> impl Strategy<Value = FiniteWord> {
    proptest::collection::vec(proptest::sample::select(letters), 0..=max).prop_map(FiniteWord::new)
}

fn lasso(letters: &'static [char]) -> impl Strategy<Value = UpWord> {
    (word(letters, 4), word(letters, 4).prop_filter("nonempty", |w| !w.is_empty()))
        .prop_map(|(u, v)| UpWord::new(u, v).unwrap())
}

fn reshape(w: &UpWord, unroll: usize, pump: usize) -> UpWord {
    let mut prefix = w.prefix().clone();
    for _ in 0..unroll {
        prefix = prefix.concat(w.period());
    }
    UpWord::new(prefix, w.period().repeat(pump + 1)).unwrap()
}

fn oracles() -> Vec<Box<dyn LanguageOracle>> {
    let ab = Alphabet::new("ab").unwrap();
    vec![
        Box::new(Unbounded::new()),
        Box::new(UnboundedNeutral::new()),
        Box::new(UltimatelyPeriodic::new()),
        Box::new(PrimeBlocks::new()),
        Box::new(Singleton::new(UpWord::lit("a", "ab"))),
        Box::new(Regular::new(BuchiAutomaton::infinitely_many(ab, 'b').unwrap())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_ignores_presentation(w in lasso(&['a', 'b']), unroll in 0usize..3, pump in 0usize..3) {
        let other = reshape(&w, unroll, pump);
        for o in oracles() {
            prop_assert_eq!(o.contains_up(&w).unwrap(), o.contains_up(&other).unwrap(), "{}", o.name());
        }
    }

    #[test]
    fn neutral_variant_agrees_on_plain_words(w in lasso(&['a', 'b'])) {
        prop_assert_eq!(Unbounded::new().contains_up(&w).unwrap(), UnboundedNeutral::new().contains_up(&w).unwrap());
    }

    #[test]
    fn neutral_letters_are_invisible(w in lasso(&['a', 'b', '1'])) {
        let erased = UpWord::new(w.prefix().erase('1'), w.period().erase('1'));
        let member = UnboundedNeutral::new().contains_up(&w);
        match erased {
            Ok(e) => prop_assert_eq!(member.unwrap(), Unbounded::new().contains_up(&e).unwrap()),
            // An all-neutral period erases to a finite word, which is no ω-word at all.
            Err(_) => prop_assert!(!matches!(member, Ok(true))),
        }
    }

    /// Lasso members are exactly the words ending in an infinite `a`-block.
    #[test]
    fn lasso_members_have_all_a_periods(w in lasso(&['a', 'b'])) {
        prop_assert_eq!(Unbounded::new().contains_up(&w).unwrap(), !w.period().contains('b'));
    }
}
