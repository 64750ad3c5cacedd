//! Finite semigroup recognizers for ω-languages.
//!
//! A recognizer maps every nonempty word to an element of a finite
//! semigroup and stores, for each pair `(a, b)`, whether the lasso words
//! `u·v^ω` with `u ↦ a` and `v ↦ b` belong to the language. Complement flips
//! that table, Boolean combinations take a product, and projection takes
//! sets of elements; each step is followed by a quotient under the coarsest
//! congruence that keeps the table well defined.

use std::collections::HashMap;
use std::hash::Hash;

use crate::buchi::{BuchiAutomaton, TransitionMonoid};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Recognizer {
    /// Element of each letter, by letter index.
    gens: Vec<u32>,
    n: usize,
    table: Vec<u32>,
    /// `omega[a·n + b]`: membership of `u·v^ω` for `u ↦ a`, `v ↦ b`.
    omega: Vec<bool>,
}

struct Closure<K> {
    keys: Vec<K>,
    gens: Vec<u32>,
    table: Vec<u32>,
}

/// Closes the generators under multiplication, breadth first, and tabulates
/// the product through right multiplication by letters along witness words.
fn close<K: Clone + Eq + Hash>(letter_keys: Vec<K>, mul: impl Fn(&K, &K) -> K, limit: usize) -> Result<Closure<K>> {
    let mut index: HashMap<K, u32> = HashMap::new();
    let mut keys: Vec<K> = Vec::new();
    let mut witness: Vec<Vec<u32>> = Vec::new();
    let mut intern = |k: K, w: Vec<u32>, keys: &mut Vec<K>, witness: &mut Vec<Vec<u32>>| -> Result<u32> {
        if let Some(&i) = index.get(&k) {
            return Ok(i);
        }
        if keys.len() >= limit {
            return Err(Error::BudgetExceeded { what: "formula semigroup size", limit });
        }
        index.insert(k.clone(), keys.len() as u32);
        keys.push(k);
        witness.push(w);
        Ok(keys.len() as u32 - 1)
    };
    let mut gens = Vec::with_capacity(letter_keys.len());
    for k in &letter_keys {
        gens.push(intern(k.clone(), Vec::new(), &mut keys, &mut witness)?);
    }
    // Distinct generators, each with a letter index for witnesses.
    let mut distinct: Vec<u32> = gens.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for &g in &distinct {
        witness[g as usize] = vec![g];
    }
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut next = 0;
    while next < keys.len() {
        let mut row = Vec::with_capacity(distinct.len());
        for &g in &distinct {
            let prod = mul(&keys[next], &keys[g as usize]);
            let mut w = witness[next].clone();
            w.push(g);
            row.push(intern(prod, w, &mut keys, &mut witness)?);
        }
        right.push(row);
        next += 1;
    }
    let n = keys.len();
    let slot: HashMap<u32, usize> = distinct.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = witness[b].iter().fold(a as u32, |x, g| right[x as usize][slot[g]]);
        }
    }
    Ok(Closure { keys, gens, table })
}

impl Recognizer {
    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.n
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    fn omega(&self, a: u32, b: u32) -> bool {
        self.omega[a as usize * self.n + b as usize]
    }

    /// The idempotent power of every element.
    fn idempotent_powers(&self) -> Vec<u32> {
        (0..self.n as u32)
            .map(|x| {
                let mut p = x;
                while self.mul(p, p) != p {
                    p = self.mul(p, x);
                }
                p
            })
            .collect()
    }

    fn is_linked(&self, s: u32, e: u32) -> bool {
        self.mul(e, e) == e && self.mul(s, e) == s
    }

    pub fn from_automaton(a: &BuchiAutomaton, limit: usize) -> Result<Recognizer> {
        let m = TransitionMonoid::build(a, limit)?;
        let gens: Vec<usize> = (0..a.alphabet().len()).map(|c| m.letter_element(c)).collect();
        let c = close(gens, |&x, &y| m.compose(x, y), limit)?;
        let mut r = Recognizer { gens: c.gens, n: c.keys.len(), table: c.table, omega: Vec::new() };
        let pi = r.idempotent_powers();
        let keys = c.keys;
        r.omega = (0..r.n as u32)
            .flat_map(|x| (0..r.n as u32).map(move |y| (x, y)))
            .map(|(x, y)| {
                let e = pi[y as usize];
                m.pair_accepts(keys[r.mul(x, e) as usize], keys[e as usize])
            })
            .collect();
        Ok(r.minimize())
    }

    pub fn complement(&self) -> Recognizer {
        Recognizer { omega: self.omega.iter().map(|b| !b).collect(), ..self.clone() }
    }

    /// Rereads letters through `map`: new letter `c` behaves like old letter `map[c]`.
    pub fn relabel(&self, map: &[usize]) -> Recognizer {
        Recognizer { gens: map.iter().map(|&c| self.gens[c]).collect(), ..self.clone() }
    }

    /// Boolean combination of two recognizers over the same letters.
    pub fn combine(&self, other: &Recognizer, op: impl Fn(bool, bool) -> bool, limit: usize) -> Result<Recognizer> {
        let keys: Vec<(u32, u32)> = self.gens.iter().zip(&other.gens).map(|(&a, &b)| (a, b)).collect();
        let c = close(keys, |&(a1, b1), &(a2, b2)| (self.mul(a1, a2), other.mul(b1, b2)), limit)?;
        let n = c.keys.len();
        let mut omega = vec![false; n * n];
        for (i, &(a1, b1)) in c.keys.iter().enumerate() {
            for (j, &(a2, b2)) in c.keys.iter().enumerate() {
                omega[i * n + j] = op(self.omega(a1, a2), other.omega(b1, b2));
            }
        }
        Ok(Recognizer { gens: c.gens, n, table: c.table, omega }.minimize())
    }

    /// Image under the letter map `image[c]` into `targets` letters, which
    /// must be onto.
    pub fn project(&self, image: &[usize], targets: usize, limit: usize) -> Result<Recognizer> {
        let mut sets: Vec<Vec<u32>> = vec![Vec::new(); targets];
        for (c, &t) in image.iter().enumerate() {
            sets[t].push(self.gens[c]);
        }
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        if sets.iter().any(Vec::is_empty) {
            return Err(Error::invalid("projection is not onto"));
        }
        let mul = |x: &Vec<u32>, y: &Vec<u32>| {
            let mut out: Vec<u32> = x.iter().flat_map(|&a| y.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
            out.sort_unstable();
            out.dedup();
            out
        };
        let c = close(sets, mul, limit)?;
        let n = c.keys.len();
        let mut r = Recognizer { gens: c.gens, n, table: c.table, omega: Vec::new() };
        let pi = r.idempotent_powers();
        // Membership of u·v^ω depends on (S·E, E) for E the idempotent power of v's set.
        let mut memo: HashMap<(u32, u32), bool> = HashMap::new();
        let mut omega = vec![false; n * n];
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let e = pi[y as usize];
                let s = r.mul(x, e);
                omega[x as usize * n + y as usize] = *memo.entry((s, e)).or_insert_with(|| {
                    c.keys[s as usize].iter().any(|&a| {
                        c.keys[e as usize].iter().any(|&b| self.is_linked(a, b) && self.omega(a, b))
                    })
                });
            }
        }
        r.omega = omega;
        Ok(r.minimize())
    }

    /// Quotient by the coarsest congruence under which the ω-table is
    /// constant on classes: start from equal rows and columns (with the
    /// empty prefix as an extra row), then refine along left and right
    /// multiplication by letters.
    fn minimize(&self) -> Recognizer {
        let n = self.n;
        let mut ids: HashMap<Vec<bool>, u32> = HashMap::new();
        let mut class: Vec<u32> = (0..n as u32)
            .map(|s| {
                let mut sig: Vec<bool> = (0..n as u32).map(|z| self.omega(s, z)).collect();
                sig.extend((0..n as u32).map(|x| self.omega(x, s)));
                sig.push(self.omega(s, s));
                let len = ids.len() as u32;
                *ids.entry(sig).or_insert(len)
            })
            .collect();
        let mut gens: Vec<u32> = self.gens.clone();
        gens.sort_unstable();
        gens.dedup();
        let mut count = ids.len();
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let next: Vec<u32> = (0..n as u32)
                .map(|s| {
                    let mut sig = vec![class[s as usize]];
                    for &g in &gens {
                        sig.push(class[self.mul(s, g) as usize]);
                        sig.push(class[self.mul(g, s) as usize]);
                    }
                    let len = ids.len() as u32;
                    *ids.entry(sig).or_insert(len)
                })
                .collect();
            class = next;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        if count == n {
            return self.clone();
        }
        let mut rep = vec![u32::MAX; count];
        for s in 0..n {
            if rep[class[s] as usize] == u32::MAX {
                rep[class[s] as usize] = s as u32;
            }
        }
        let mut table = vec![0u32; count * count];
        let mut omega = vec![false; count * count];
        for i in 0..count {
            for j in 0..count {
                table[i * count + j] = class[self.mul(rep[i], rep[j]) as usize];
                omega[i * count + j] = self.omega(rep[i], rep[j]);
            }
        }
        Recognizer { gens: self.gens.iter().map(|&g| class[g as usize]).collect(), n: count, table, omega }
    }

    /// A Büchi automaton that guesses a factorization `u·v₁v₂⋯` with
    /// `u ↦ s`, every `vᵢ ↦ e`, `(s, e)` linked and accepted.
    pub fn to_automaton(&self, alphabet: &crate::words::Alphabet) -> Result<BuchiAutomaton> {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum State {
            Prefix(Option<u32>),
            Factor { e: u32, m: Option<u32> },
        }
        let mut accepting_for: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for s in 0..self.n as u32 {
            for e in 0..self.n as u32 {
                if self.is_linked(s, e) && self.omega(s, e) {
                    accepting_for[s as usize].push(e);
                }
            }
        }
        let step = |m: Option<u32>, c: usize| match m {
            None => self.gens[c],
            Some(x) => self.mul(x, self.gens[c]),
        };
        let mut index: HashMap<State, usize> = HashMap::new();
        let mut states: Vec<State> = Vec::new();
        let mut edges = Vec::new();
        let mut intern = |s: State, states: &mut Vec<State>| -> usize {
            *index.entry(s).or_insert_with(|| {
                states.push(s);
                states.len() - 1
            })
        };
        intern(State::Prefix(None), &mut states);
        let mut next = 0;
        while next < states.len() {
            let from = states[next];
            for c in 0..alphabet.len() {
                let letter = alphabet.letter(c);
                match from {
                    State::Prefix(m) => {
                        let s = step(m, c);
                        let t = intern(State::Prefix(Some(s)), &mut states);
                        edges.push((next, letter, t));
                        for &e in &accepting_for[s as usize] {
                            let t = intern(State::Factor { e, m: None }, &mut states);
                            edges.push((next, letter, t));
                        }
                    }
                    State::Factor { e, m } => {
                        let x = step(m, c);
                        let t = intern(State::Factor { e, m: Some(x) }, &mut states);
                        edges.push((next, letter, t));
                        if x == e {
                            let t = intern(State::Factor { e, m: None }, &mut states);
                            edges.push((next, letter, t));
                        }
                    }
                }
            }
            next += 1;
        }
        let accepting: Vec<usize> =
            states.iter().enumerate().filter(|(_, s)| matches!(s, State::Factor { m: None, .. })).map(|(i, _)| i).collect();
        BuchiAutomaton::from_parts(alphabet.clone(), states.len(), edges, [0], accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, UpWord};

    #[test]
    fn round_trip_and_complement() {
        let ab = Alphabet::new("ab").unwrap();
        let a = BuchiAutomaton::infinitely_many(ab.clone(), 'a').unwrap();
        let r = Recognizer::from_automaton(&a, 1000).unwrap();
        let back = r.to_automaton(&ab).unwrap();
        let not = r.complement().to_automaton(&ab).unwrap();
        for w in UpWord::enumerate(&ab, 2, 3) {
            let truth = a.accepts_up(&w).unwrap();
            assert_eq!(back.accepts_up(&w).unwrap(), truth, "{w}");
            assert_eq!(not.accepts_up(&w).unwrap(), !truth, "{w}");
        }
        // Infinitely many a: the quotient has the classes "contains a" and "no a".
        assert_eq!(r.len(), 2);
    }
}
