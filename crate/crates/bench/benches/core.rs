use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_core::congruence::lemma_repair;
use omega_core::mso::{compile_to_buchi, Formula};
use omega_core::sample::{random_automaton, random_classifier, random_up_word};
use omega_core::{Alphabet, BuchiAutomaton};

fn automata(n: usize) -> Vec<BuchiAutomaton> {
    let ab = Alphabet::new("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..n).map(|_| random_automaton(&mut rng, &ab, 3, 0.4)).collect()
}

fn complement(c: &mut Criterion) {
    let autos = automata(8);
    c.bench_function("complement/3-state", |b| {
        b.iter(|| autos.iter().map(|a| a.complement().unwrap().num_states()).sum::<usize>())
    });
}

fn accepts_up(c: &mut Criterion) {
    let ab = Alphabet::new("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let autos: Vec<_> = (0..8).map(|_| random_automaton(&mut rng, &ab, 12, 0.3)).collect();
    let words: Vec<_> = (0..32).map(|_| random_up_word(&mut rng, &ab, 8, 8)).collect();
    c.bench_function("accepts_up/12-state", |b| {
        b.iter(|| {
            autos
                .iter()
                .flat_map(|a| words.iter().map(move |w| a.accepts_up(w).unwrap()))
                .filter(|&x| x)
                .count()
        })
    });
}

fn repair(c: &mut Criterion) {
    let abc = Alphabet::new("abc").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    c.bench_function("lemma_repair/6-state", |b| {
        b.iter_batched(
            || random_classifier(&mut rng, &abc, 6, 4),
            |cls| lemma_repair(&cls).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn compile(c: &mut Criterion) {
    let ab = Alphabet::new("ab").unwrap();
    let f: Formula = "(and (forall1 x (exists1 y (and (< x y) (letter y a)))) \
                      (forall1 x (exists1 y (and (< x y) (letter y b)))))"
        .parse()
        .unwrap();
    c.bench_function("mso_compile/inf-a-and-inf-b", |b| b.iter(|| compile_to_buchi(&f, &ab).unwrap()));
}

criterion_group!(benches, complement, accepts_up, repair, compile);
criterion_main!(benches);
