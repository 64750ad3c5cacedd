use std::collections::BTreeMap;

use proptest::prelude::*;

use omega_core::words::{concat, HomImage};
use omega_core::{Alphabet, FiniteWord, Homomorphism, UpWord};

fn word(max: usize) -> impl Strategy<Value = FiniteWord> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..=max).prop_map(FiniteWord::new)
}

fn lasso() -> impl Strategy<Value = UpWord> {
    (word(3), word(3).prop_filter("nonempty period", |w| !w.is_empty())).prop_map(|(u, v)| UpWord::new(u, v).unwrap())
}

fn hom() -> impl Strategy<Value = Homomorphism> {
    (word(2), word(2)).prop_map(|(x, y)| {
        let ab = Alphabet::new("ab").unwrap();
        Homomorphism::new(ab.clone(), ab, BTreeMap::from([('a', x), ('b', y)])).unwrap()
    })
}

/// Reshapes a presentation without changing the word it denotes.
fn reshape(w: &UpWord, unroll: usize, pump: usize) -> UpWord {
    let mut prefix = w.prefix().clone();
    for _ in 0..unroll {
        prefix = prefix.concat(w.period());
    }
    UpWord::new(prefix, w.period().repeat(pump + 1)).unwrap()
}

proptest! {
    #[test]
    fn up_equal_is_an_equivalence(x in lasso(), y in lasso(), z in lasso()) {
        prop_assert!(x.up_equal(&x));
        prop_assert_eq!(x.up_equal(&y), y.up_equal(&x));
        if x.up_equal(&y) && y.up_equal(&z) {
            prop_assert!(x.up_equal(&z));
        }
    }

    #[test]
    fn pumping_and_unrolling_preserve_the_word(x in lasso()) {
        let pumped = UpWord::new(x.prefix().clone(), x.period().repeat(2)).unwrap();
        let unrolled = UpWord::new(x.prefix().concat(x.period()), x.period().clone()).unwrap();
        prop_assert!(x.up_equal(&pumped));
        prop_assert!(x.up_equal(&unrolled));
    }

    #[test]
    fn equal_presentations_agree_letterwise(x in lasso(), unroll in 0usize..3, pump in 0usize..3) {
        let y = reshape(&x, unroll, pump);
        prop_assert!(x.up_equal(&y));
        let horizon = 3 * x.size().max(y.size()) as u64;
        for i in 0..horizon {
            prop_assert_eq!(x.letter_at(i), y.letter_at(i));
        }
    }

    #[test]
    fn unequal_presentations_differ_somewhere(x in lasso(), y in lasso()) {
        let horizon = (x.size() + y.size()) as u64 * (x.period().len() * y.period().len()) as u64;
        let agree = (0..horizon).all(|i| x.letter_at(i) == y.letter_at(i));
        prop_assert_eq!(agree, x.up_equal(&y));
    }

    #[test]
    fn homomorphisms_commute_with_concatenation(h in hom(), w in word(4), x in word(4), tail in lasso()) {
        let hw = h.apply_finite(&w).unwrap();
        prop_assert_eq!(h.apply_finite(&w.concat(&x)).unwrap(), hw.concat(&h.apply_finite(&x).unwrap()));
        let whole = h.apply_up(&concat(&w, &tail)).unwrap();
        match (whole, h.apply_up(&tail).unwrap()) {
            (HomImage::Omega(l), HomImage::Omega(r)) => prop_assert!(l.up_equal(&concat(&hw, &r))),
            (HomImage::Finite(l), HomImage::Finite(r)) => prop_assert_eq!(l, hw.concat(&r)),
            (l, r) => prop_assert!(false, "image kinds differ: {:?} vs {:?}", l, r),
        }
    }
}
