//! Seeded random instances for tests, benches and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::buchi::BuchiAutomaton;
use crate::congruence::Classifier;
use crate::mso::{Formula, UpValuation};
use crate::words::{Alphabet, FiniteWord, UpWord};

pub fn random_finite_word(rng: &mut impl Rng, alphabet: &Alphabet, len: usize) -> FiniteWord {
    (0..len).map(|_| *alphabet.letters().choose(rng).expect("nonempty alphabet")).collect()
}

/// Prefix length in `0..=max_prefix`, period length in `1..=max_period`.
pub fn random_up_word(rng: &mut impl Rng, alphabet: &Alphabet, max_prefix: usize, max_period: usize) -> UpWord {
    let p = rng.gen_range(0..=max_prefix);
    let q = rng.gen_range(1..=max_period.max(1));
    UpWord::new(random_finite_word(rng, alphabet, p), random_finite_word(rng, alphabet, q)).expect("nonempty period")
}

/// Between 1 and `max_states` states, initial state 0, each transition
/// present with probability `density`, each state accepting with probability 0.4.
pub fn random_automaton(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize, density: f64) -> BuchiAutomaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut a = BuchiAutomaton::new(alphabet.clone(), n);
    for p in 0..n {
        for &c in alphabet.letters() {
            for q in 0..n {
                if rng.gen_bool(density) {
                    a.add_transition(p, c, q).expect("valid state");
                }
            }
        }
        if rng.gen_bool(0.4) {
            a.set_accepting(p).expect("valid state");
        }
    }
    a.set_initial(0).expect("valid state");
    a
}

/// A complete machine with up to `max_states` reachable states carrying up
/// to `max_classes` classes.
pub fn random_classifier(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize, max_classes: usize) -> Classifier {
    let n = rng.gen_range(1..=max_states.max(1));
    let delta: Vec<Vec<usize>> = (0..n).map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect()).collect();
    let machine = Classifier::from_machine(alphabet.clone(), delta, 0).expect("complete machine");
    let m = machine.num_states();
    let delta: Vec<Vec<usize>> = (0..m).map(|q| (0..alphabet.len()).map(|c| machine.step(q, c)).collect()).collect();
    let raw: Vec<usize> = (0..m).map(|_| rng.gen_range(0..max_classes.max(1))).collect();
    let mut used = raw.clone();
    used.sort_unstable();
    used.dedup();
    let classes = raw.iter().map(|r| used.binary_search(r).expect("present")).collect();
    Classifier::new(alphabet.clone(), delta, machine.initial(), classes).expect("every class is carried")
}

/// A formula of height at most `depth` whose free variables are among
/// `sets`; position variables are all bound.
pub fn random_formula(rng: &mut impl Rng, depth: usize, letters: &[char], sets: &[&str]) -> Formula {
    let mut fresh = 0;
    gen(rng, depth.max(1), letters, sets, &mut Vec::new(), &mut fresh)
}

fn atom(rng: &mut impl Rng, letters: &[char], sets: &[&str], scope: &[String]) -> Formula {
    if scope.is_empty() {
        return if rng.gen_bool(0.5) { Formula::True } else { Formula::False };
    }
    let x = scope.choose(rng).expect("nonempty scope");
    let y = scope.choose(rng).expect("nonempty scope");
    match rng.gen_range(0..4) {
        0 => Formula::less(x, y),
        1 if !sets.is_empty() => Formula::member(x, sets.choose(rng).expect("nonempty")),
        1 | 2 => Formula::letter(x, *letters.choose(rng).expect("nonempty letters")),
        _ => Formula::equal(x, y),
    }
}

fn gen(
    rng: &mut impl Rng,
    depth: usize,
    letters: &[char],
    sets: &[&str],
    scope: &mut Vec<String>,
    fresh: &mut usize,
) -> Formula {
    if depth == 1 {
        return atom(rng, letters, sets, scope);
    }
    // Without a position in scope, prefer binding one.
    let choice = if scope.is_empty() && rng.gen_bool(0.8) { 5 } else { rng.gen_range(0..7) };
    let sub = |rng: &mut _, scope: &mut Vec<String>, fresh: &mut usize| gen(rng, depth - 1, letters, sets, scope, fresh);
    match choice {
        0 => Formula::not(sub(rng, scope, fresh)),
        1 => Formula::And(vec![sub(rng, scope, fresh), sub(rng, scope, fresh)]),
        2 => Formula::Or(vec![sub(rng, scope, fresh), sub(rng, scope, fresh)]),
        3 => Formula::implies(sub(rng, scope, fresh), sub(rng, scope, fresh)),
        4 => Formula::iff(sub(rng, scope, fresh), sub(rng, scope, fresh)),
        5 | 6 => {
            *fresh += 1;
            let x = format!("x{fresh}");
            scope.push(x.clone());
            let body = sub(rng, scope, fresh);
            scope.pop();
            if rng.gen_bool(0.5) {
                Formula::exists1(&x, body)
            } else {
                Formula::forall1(&x, body)
            }
        }
        _ => unreachable!(),
    }
}

/// A lasso word with an indicator lasso word for each named set.
pub fn random_valuation(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    sets: &[&str],
    max_prefix: usize,
    max_period: usize,
) -> UpValuation {
    let bits = Alphabet::new("01").expect("valid");
    let mut val = UpValuation::new(random_up_word(rng, alphabet, max_prefix, max_period));
    for s in sets {
        val = val.with_set(s, random_up_word(rng, &bits, max_prefix, max_period)).expect("binary indicator");
    }
    val
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ab = Alphabet::new("ab").unwrap();
        for _ in 0..50 {
            let w = random_up_word(&mut rng, &ab, 3, 3);
            assert!(w.prefix().len() <= 3 && (1..=3).contains(&w.period().len()));
            let a = random_automaton(&mut rng, &ab, 4, 0.3);
            assert!((1..=4).contains(&a.num_states()));
            let c = random_classifier(&mut rng, &ab, 6, 4);
            assert!(c.index() <= 4);
            let f = random_formula(&mut rng, 4, &['a', 'b'], &["X"]);
            assert!(f.depth() <= 4);
            assert!(f.free_vars().unwrap().iter().all(|v| v.name == "X"));
        }
    }
}
