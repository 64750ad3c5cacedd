//! The twelve acceptance criteria, one line each.
//!
//! Run with `cargo test -p omega-core --test acceptance -- --nocapture` to see
//! the report. Criterion 11 is expected to fail: see `criterion_11`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_core::buchi::BuchiAutomaton;
use omega_core::congruence::{
    arnold_classes_bounded, check_condition1, check_condition2_bounded, lemma_repair, right_congruence_bounded,
    Condition2Bounds,
};
use omega_core::game::{play_bounded, CopyDuplicator, DivergingSpoiler, PlayConfig, RandomSpoiler, Winner};
use omega_core::mso::{compile_to_buchi, encode_congruence_game, evaluate, Oracles};
use omega_core::oracles::{neutral_letter_property_test, PrimeBlocks, Regular, Unbounded, UnboundedNeutral};
use omega_core::sample::{random_automaton, random_classifier, random_formula, random_up_word, random_valuation};
use omega_core::trio::{for_each_l2_member, parse_tokens, project_to_separators, tokens_to_string, AnBn};
use omega_core::{Alphabet, Classifier, FiniteWord, Limits, LanguageOracle, OmegaWord, UpWord};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

fn within(t: Duration, secs: u64) -> bool {
    t < Duration::from_secs(secs)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = arnold_classes_bounded(&Unbounded::new(), 4, 3).unwrap();
    let t = start.elapsed();
    let classes: BTreeSet<BTreeSet<FiniteWord>> = p.classes.iter().map(|c| c.iter().cloned().collect()).collect();
    let (with_b, without_b): (BTreeSet<FiniteWord>, BTreeSet<FiniteWord>) =
        FiniteWord::enumerate(&ab(), 4).into_iter().partition(|w| w.contains('b'));
    let expected = BTreeSet::from([with_b, without_b]);
    outcome(classes == expected && within(t, 60), format!("{} classes, split by containing b: {}, {t:.2?}", p.classes.len(), classes == expected))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let o = PrimeBlocks::new();
    let words = FiniteWord::enumerate(o.alphabet(), 4);
    let mut distinct = 0;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if !right_congruence_bounded(&o, u, v, 3).unwrap() {
                distinct += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(distinct == 0 && within(t, 60), format!("{} words, {distinct} separated pairs, {t:.2?}", words.len()))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bounds = Condition2Bounds { word_len: 2, head_len: 2, cycle_len: 2 };
    let mut bad = Vec::new();
    for i in 0..10 {
        let a = random_automaton(&mut rng, &ab(), 4, 0.35);
        let c = Classifier::transition_kernel(&a, Limits::default()).unwrap();
        let c1 = check_condition1(&c).unwrap();
        let c2 = check_condition2_bounded(&c, &Regular::new(a), bounds).unwrap();
        if c1.is_some() || c2.is_some() {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("10 kernels, failing: {bad:?}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    let mut total_merges = 0;
    for i in 0..50 {
        let c = random_classifier(&mut rng, &ab(), 6, 4);
        let r = lemma_repair(&c).unwrap();
        total_merges += r.merges.len();
        let ok = r.merges.len() < c.index()
            && check_condition1(&r.classifier).unwrap().is_none()
            && r.classifier.index() <= c.index()
            && r.classifier.index() == c.index() - r.merges.len();
        if !ok {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("50 classifiers, {total_merges} merges, failing: {bad:?}"))
}

fn criterion_5() -> Outcome {
    let word: OmegaWord = "blocks(a,b;affine 1 0)".parse().unwrap();
    let oracles: [Box<dyn LanguageOracle>; 2] = [Box::new(Unbounded::new()), Box::new(UnboundedNeutral::new())];
    let mut wins = 0;
    let mut plays = 0;
    for o in &oracles {
        for seed in 0..100 {
            let t = play_bounded(&word, o.as_ref(), &mut RandomSpoiler::new(seed), &mut CopyDuplicator, PlayConfig::default())
                .unwrap();
            wins += usize::from(t.verdict.winner == Winner::Duplicator);
            plays += 1;
        }
        for _ in 0..100 {
            let t = play_bounded(&word, o.as_ref(), &mut DivergingSpoiler::new(), &mut CopyDuplicator, PlayConfig::default())
                .unwrap();
            wins += usize::from(t.verdict.winner == Winner::Duplicator);
            plays += 1;
        }
    }
    outcome(wins == plays, format!("Duplicator won {wins}/{plays}"))
}

fn criterion_6() -> Outcome {
    let o = UnboundedNeutral::new();
    let words: Vec<OmegaWord> =
        ["(aab)^w", "(aaaaab)^w", "blocks(a,b;const 3)"].iter().map(|s| s.parse().unwrap()).collect();
    let mut wins = 0;
    let mut plays = 0;
    for w in &words {
        for _ in 0..100 {
            let t = play_bounded(w, &o, &mut DivergingSpoiler::new(), &mut CopyDuplicator, PlayConfig::default()).unwrap();
            wins += usize::from(t.verdict.winner == Winner::Spoiler);
            plays += 1;
        }
    }
    outcome(wins == plays, format!("Spoiler won {wins}/{plays}"))
}

fn criterion_7() -> Outcome {
    let found = neutral_letter_property_test(&UnboundedNeutral::new(), 200, 7).unwrap();
    outcome(found.is_none(), format!("200 samples, counterexample: {found:?}"))
}

/// Lasso acceptance by search over (state, offset in period) pairs: some
/// pair reachable after the prefix lies on a cycle through an accepting state.
fn brute_accepts(a: &BuchiAutomaton, w: &UpWord) -> bool {
    let idx = |c: char| a.alphabet().index_of(c).unwrap();
    let mut cur: BTreeSet<usize> = a.initial().iter().copied().collect();
    for &c in w.prefix().letters() {
        cur = cur.iter().flat_map(|&q| a.successors(q, idx(c)).to_vec()).collect();
    }
    let period = w.period().letters();
    let p = period.len();
    let n = a.num_states();
    let node = |q: usize, i: usize| q * p + i;
    let succ = |v: usize| -> Vec<usize> {
        let (q, i) = (v / p, v % p);
        a.successors(q, idx(period[i])).iter().map(|&r| node(r, (i + 1) % p)).collect()
    };
    let reach_from = |starts: Vec<usize>| -> Vec<bool> {
        let mut seen = vec![false; n * p];
        let mut stack = starts;
        while let Some(v) = stack.pop() {
            if !seen[v] {
                seen[v] = true;
                stack.extend(succ(v));
            }
        }
        seen
    };
    let reachable = reach_from(cur.iter().map(|&q| node(q, 0)).collect());
    (0..n * p).any(|v| reachable[v] && a.is_accepting(v / p) && reach_from(succ(v))[v])
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let autos: Vec<BuchiAutomaton> = (0..20).map(|_| random_automaton(&mut rng, &ab(), 3, 0.4)).collect();
    let words = UpWord::enumerate(&ab(), 3, 3);
    let mut mismatches = 0;
    let mut roundtrip_failures = 0;
    let mut check_emptiness = |x: &BuchiAutomaton, truth: &dyn Fn(&UpWord) -> bool| match x.is_empty().witness() {
        Some(w) => roundtrip_failures += usize::from(!x.accepts_up(w).unwrap() || !truth(w)),
        None => roundtrip_failures += usize::from(words.iter().any(truth)),
    };
    for i in 0..autos.len() {
        let a = &autos[i];
        let b = &autos[(i + 1) % autos.len()];
        let comp = a.complement().unwrap();
        let uni = a.union(b).unwrap();
        let int = a.intersect(b).unwrap();
        for w in &words {
            let (x, y) = (brute_accepts(a, w), brute_accepts(b, w));
            mismatches += usize::from(comp.accepts_up(w).unwrap() == x);
            mismatches += usize::from(uni.accepts_up(w).unwrap() != (x || y));
            mismatches += usize::from(int.accepts_up(w).unwrap() != (x && y));
        }
        check_emptiness(a, &|w| brute_accepts(a, w));
        check_emptiness(&comp, &|w| !brute_accepts(a, w));
        check_emptiness(&uni, &|w| brute_accepts(a, w) || brute_accepts(b, w));
        check_emptiness(&int, &|w| brute_accepts(a, w) && brute_accepts(b, w));
    }
    outcome(
        mismatches == 0 && roundtrip_failures == 0,
        format!("{} words x 20 automata, {mismatches} mismatches, {roundtrip_failures} witness failures", words.len()),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let none = Oracles::new();
    let mut agree = 0;
    let mut total = 0;
    for _ in 0..50 {
        let f = random_formula(&mut rng, 4, &['a', 'b'], &[]);
        let compiled = compile_to_buchi(&f, &ab()).unwrap();
        for _ in 0..20 {
            let val = random_valuation(&mut rng, &ab(), &[], 3, 3);
            total += 1;
            agree += usize::from(evaluate(&f, &val, &none).unwrap() == compiled.accepts(&val).unwrap());
        }
    }
    outcome(agree == total, format!("{agree}/{total} agree"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let l = AnBn::new();
    let mut members = 0usize;
    let mut unequal = 0usize;
    let mut images = BTreeSet::new();
    let visited = for_each_l2_member(&l, 14, 8, |s, v| {
        assert!(v.exact);
        members += 1;
        unequal += usize::from(s.w.len() != s.v.len());
        images.insert(tokens_to_string(&project_to_separators(&s.to_tokens())));
    });
    let t = start.elapsed();
    let attained = (1..=3).all(|n| {
        let target = format!("{}{}", "#".repeat(n), "%#".repeat(n));
        images.contains(&tokens_to_string(&parse_tokens(&target).unwrap()))
    });
    outcome(
        unequal == 0 && attained && within(t, 300),
        format!("{members} members ({visited} partial lists), {unequal} with unequal counts, images {images:?}, {t:.2?}"),
    )
}

/// A lasso word is in the language exactly when its period is all `a`, so
/// random words over `{a,b}` are members whenever the sampled period has no
/// `b`. The criterion expects none; this reports the faithful count.
fn criterion_11() -> (Outcome, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let u = Unbounded::new();
    let up = UnboundedNeutral::new();
    let mut non_members = 0;
    let mut all_a_periods = 0;
    let mut explained = 0;
    for _ in 0..200 {
        let w = random_up_word(&mut rng, &ab(), 4, 4);
        let in_u = u.contains_up(&w).unwrap();
        let in_up = up.contains_up(&w).unwrap();
        let all_a = !w.period().contains('b');
        all_a_periods += usize::from(all_a);
        non_members += usize::from(!in_u && !in_up);
        explained += usize::from(in_u == all_a && in_up == all_a);
    }
    (
        outcome(non_members == 200, format!("{non_members}/200 non-members; {all_a_periods} sampled periods are all a")),
        explained,
        all_a_periods + non_members,
    )
}

fn criterion_12() -> Outcome {
    let mut sizes = Vec::new();
    let mut closed = true;
    let mut one_atom = true;
    for k in 2..=6 {
        let sigma = Alphabet::from_letters("1abcde".chars().take(k)).unwrap();
        let f = encode_congruence_game(&sigma, '1', "L").unwrap();
        closed &= f.free_vars().unwrap().is_empty();
        one_atom &= f.count_lang_atoms() == 1;
        sizes.push(f.size() as i64);
    }
    let residual: i64 = sizes.windows(3).map(|w| (w[2] - 2 * w[1] + w[0]).abs()).sum();
    outcome(closed && one_atom && residual == 0, format!("sizes {sizes:?}, closed {closed}, one atom {one_atom}, residual {residual}"))
}

#[test]
fn acceptance_criteria() {
    let (c11, explained, covered) = criterion_11();
    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, c11),
        (12, criterion_12()),
    ];
    for (n, o) in &results {
        println!("criterion {n:>2}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failing: Vec<usize> = results.iter().filter(|(_, o)| !o.pass).map(|(n, _)| *n).collect();
    assert!(failing.iter().all(|&n| n == 11), "unexpected failures: {failing:?}");
    // The known failure of criterion 11 is fully accounted for by all-a periods.
    assert_eq!(explained, 200);
    assert_eq!(covered, 200);
}
