use proptest::prelude::*;

use omega_core::trio::{
    loop_representation, member_l1, project_to_separators, right_congruence_bounded, AnBn, FiniteLanguage, FiniteSet,
    SeparatedWord, Token, DEFAULT_POWER_BOUND,
};
use omega_core::{Alphabet, FiniteWord, LanguageOracle, UpWord};

fn word(max: usize) -> impl Strategy<Value = FiniteWord> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..=max).prop_map(FiniteWord::new)
}

fn separated() -> impl Strategy<Value = SeparatedWord> {
    (proptest::collection::vec(word(3), 0..3), proptest::collection::vec(word(3), 0..3))
        .prop_map(|(w, v)| SeparatedWord::new(w, v))
}

fn letters(w: &FiniteWord) -> Vec<Token> {
    w.letters().iter().map(|&c| Token::Letter(c)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn l1_is_symmetric(u in word(6), v in word(6)) {
        let l = AnBn::new();
        let uv = [letters(&u), vec![Token::Hash], letters(&v)].concat();
        let vu = [letters(&v), vec![Token::Hash], letters(&u)].concat();
        prop_assert_eq!(member_l1(&l, &uv, 8).unwrap(), member_l1(&l, &vu, 8).unwrap());
    }

    #[test]
    fn exact_congruence_matches_bounded_search(u in word(4), v in word(4)) {
        let l = AnBn::new();
        let exact = l.exact_equivalent(&u, &v).unwrap();
        prop_assert_eq!(exact, right_congruence_bounded(&l, &u, &v, 6).equivalent);
    }

    #[test]
    fn projection_is_a_homomorphism(x in separated(), y in separated()) {
        // Appending keeps the result separated only when no '#' follows '%#'.
        prop_assume!(x.v.is_empty() || y.w.is_empty());
        let xy = x.concat(&y).unwrap();
        let joined = [project_to_separators(&x.to_tokens()), project_to_separators(&y.to_tokens())].concat();
        prop_assert_eq!(project_to_separators(&xy.to_tokens()), joined);
    }

    #[test]
    fn loop_membership_ignores_presentation(
        u in word(3),
        v in word(3).prop_filter("nonempty", |w| !w.is_empty()),
        unroll in 0usize..3,
        pump in 0usize..3,
    ) {
        let o = loop_representation(Box::new(AnBn::new()), DEFAULT_POWER_BOUND);
        let s = loop_representation(
            Box::new(FiniteSet::new(Alphabet::new("ab").unwrap(), ["ab".into(), "aa".into()]).unwrap()),
            DEFAULT_POWER_BOUND,
        );
        let w = UpWord::new(u.clone(), v.clone()).unwrap();
        let mut prefix = u;
        for _ in 0..unroll {
            prefix = prefix.concat(&v);
        }
        let other = UpWord::new(prefix, v.repeat(pump + 1)).unwrap();
        prop_assert_eq!(o.contains_up(&w).unwrap(), o.contains_up(&other).unwrap());
        prop_assert_eq!(s.contains_up(&w).unwrap(), s.contains_up(&other).unwrap());
    }
}
