use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::buchi::format::{content_lines, parse_letter, parse_state, Header};
use crate::buchi::{BuchiAutomaton, Limits, TransitionMonoid};
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteWord};

pub type ClassId = usize;

/// A finite-index equivalence on finite words: the kernel of a complete
/// deterministic machine followed by a labelling of its states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classifier {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    class_of_state: Vec<ClassId>,
}

impl Classifier {
    /// Checks totality and that every class id labels some reachable state.
    pub fn new(alphabet: Alphabet, delta: Vec<Vec<usize>>, initial: usize, class_of_state: Vec<ClassId>) -> Result<Self> {
        let n = delta.len();
        if n == 0 || initial >= n {
            return Err(Error::invalid("classifier needs at least one state and a declared initial state"));
        }
        if class_of_state.len() != n {
            return Err(Error::invalid("every state needs exactly one class"));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::invalid(format!("state {q} has {} transitions, expected {}", row.len(), alphabet.len())));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::invalid(format!("transition from {q} to undeclared state {t}")));
            }
        }
        let c = Classifier { alphabet, delta, initial, class_of_state };
        let reach = c.reachable_states();
        let used: BTreeSet<ClassId> = reach.iter().map(|&q| c.class_of_state[q]).collect();
        if let Some(q) = (0..n).find(|q| !used.contains(&c.class_of_state[*q])) {
            return Err(Error::invalid(format!(
                "class {} of state {q} is not carried by any reachable state",
                c.class_of_state[q]
            )));
        }
        Ok(c)
    }

    /// Every state in its own class.
    pub fn from_machine(alphabet: Alphabet, delta: Vec<Vec<usize>>, initial: usize) -> Result<Self> {
        let n = delta.len();
        if initial >= n {
            return Err(Error::invalid(format!("initial state {initial} is undeclared")));
        }
        // Validate only the reachable part; unreachable states are dropped.
        let mut c = Classifier { alphabet, delta, initial, class_of_state: (0..n).collect() };
        if c.delta.iter().any(|row| row.len() != c.alphabet.len() || row.iter().any(|&t| t >= n)) {
            return Err(Error::invalid("transition table is not complete over the declared states"));
        }
        let reach = c.reachable_states();
        let classes: Vec<ClassId> = (0..n).map(|q| if reach.contains(&q) { q } else { initial }).collect();
        c.class_of_state = classes;
        c.drop_unreachable();
        Classifier::new(c.alphabet, c.delta, c.initial, c.class_of_state)
    }

    fn drop_unreachable(&mut self) {
        let reach = self.reachable_states();
        if reach.len() == self.num_states() {
            return;
        }
        let mut renum = vec![usize::MAX; self.num_states()];
        for (i, &q) in reach.iter().enumerate() {
            renum[q] = i;
        }
        self.delta = reach.iter().map(|&q| self.delta[q].iter().map(|&t| renum[t]).collect()).collect();
        self.class_of_state = reach.iter().map(|&q| self.class_of_state[q]).collect();
        self.initial = renum[self.initial];
        let ids: BTreeSet<ClassId> = self.class_of_state.iter().copied().collect();
        let ids: Vec<ClassId> = ids.into_iter().collect();
        for c in &mut self.class_of_state {
            *c = ids.binary_search(c).expect("present");
        }
    }

    /// The trivial equivalence with one class.
    pub fn single_class(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Classifier::new(alphabet, vec![vec![0; k]], 0, vec![0]).expect("valid")
    }

    /// Parity of the number of occurrences of `letter`; class 0 is even.
    pub fn parity(alphabet: Alphabet, letter: char) -> Result<Self> {
        alphabet.index_or_err(letter)?;
        let delta = (0..2).map(|q| alphabet.letters().iter().map(|&c| if c == letter { 1 - q } else { q }).collect()).collect();
        Classifier::new(alphabet, delta, 0, vec![0, 1])
    }

    /// Two classes: words containing `factor` (class 1) and the rest (class 0).
    pub fn seen_factor(alphabet: Alphabet, factor: &FiniteWord) -> Result<Self> {
        factor.check_over(&alphabet)?;
        let f = factor.letters();
        let m = f.len();
        // KMP-style automaton on the longest matched prefix; state m is absorbing.
        let delta: Vec<Vec<usize>> = (0..=m)
            .map(|q| {
                alphabet
                    .letters()
                    .iter()
                    .map(|&c| {
                        if q == m {
                            return m;
                        }
                        let mut s: Vec<char> = f[..q].to_vec();
                        s.push(c);
                        (0..=s.len().min(m)).rev().find(|&l| s[s.len() - l..] == f[..l]).unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        let classes = (0..=m).map(|q| usize::from(q == m)).collect();
        Classifier::new(alphabet, delta, 0, classes)
    }

    /// Classes: the empty word, then one class per first letter.
    pub fn first_letter(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        let mut delta = vec![(1..=k).collect::<Vec<_>>()];
        for q in 1..=k {
            delta.push(vec![q; k]);
        }
        Classifier::new(alphabet, delta, 0, (0..=k).collect()).expect("valid")
    }

    /// The kernel of the transition morphism of `a`: one class per monoid
    /// element plus one for the empty word.
    pub fn transition_kernel(a: &BuchiAutomaton, limits: Limits) -> Result<Self> {
        let m = TransitionMonoid::build(a, limits.max_monoid)?;
        let k = a.alphabet().len();
        let mut delta = vec![(0..k).map(|c| m.letter_element(c) + 1).collect::<Vec<_>>()];
        for e in 0..m.len() {
            delta.push((0..k).map(|c| m.right_letter(e, c) + 1).collect());
        }
        let n = delta.len();
        Classifier::new(a.alphabet().clone(), delta, 0, (0..n).collect())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn class_of_state(&self, q: usize) -> ClassId {
        self.class_of_state[q]
    }

    pub fn run_from(&self, q: usize, w: &FiniteWord) -> Result<usize> {
        w.letters().iter().try_fold(q, |q, &c| Ok(self.delta[q][self.alphabet.index_or_err(c)?]))
    }

    pub fn state_after(&self, w: &FiniteWord) -> Result<usize> {
        self.run_from(self.initial, w)
    }

    pub fn class_of(&self, w: &FiniteWord) -> Result<ClassId> {
        Ok(self.class_of_state[self.state_after(w)?])
    }

    pub fn equivalent(&self, u: &FiniteWord, v: &FiniteWord) -> Result<bool> {
        Ok(self.class_of(u)? == self.class_of(v)?)
    }

    /// Reachable states in breadth-first order.
    pub fn reachable_states(&self) -> Vec<usize> {
        self.access_words().into_iter().map(|(q, _)| q).collect()
    }

    /// Shortlex-least word reaching each reachable state, in BFS order.
    pub fn access_words(&self) -> Vec<(usize, FiniteWord)> {
        let mut seen = vec![false; self.num_states()];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(self.initial, FiniteWord::empty())]);
        seen[self.initial] = true;
        while let Some((q, w)) = queue.pop_front() {
            for (ci, &t) in self.delta[q].iter().enumerate() {
                if !seen[t] {
                    seen[t] = true;
                    let mut x = w.clone();
                    x.push(self.alphabet.letter(ci));
                    queue.push_back((t, x));
                }
            }
            out.push((q, w));
        }
        out
    }

    /// Distinct class ids among reachable states, ascending.
    pub fn classes(&self) -> Vec<ClassId> {
        let ids: BTreeSet<ClassId> = self.reachable_states().into_iter().map(|q| self.class_of_state[q]).collect();
        ids.into_iter().collect()
    }

    pub fn index(&self) -> usize {
        self.classes().len()
    }

    /// Shortlex-least word of each class.
    pub fn representatives(&self) -> Vec<(ClassId, FiniteWord)> {
        let mut reps: Vec<(ClassId, FiniteWord)> = Vec::new();
        for (q, w) in self.access_words() {
            let c = self.class_of_state[q];
            if !reps.iter().any(|(d, _)| *d == c) {
                reps.push((c, w));
            }
        }
        reps.sort_by_key(|(c, _)| *c);
        reps
    }

    /// Shortlex-least nonempty word of each class that has one.
    pub fn nonempty_representatives(&self) -> Vec<(ClassId, FiniteWord)> {
        // BFS over (state, read at least one letter).
        let n = self.num_states();
        let mut seen = vec![false; n];
        let mut reps: Vec<(ClassId, FiniteWord)> = Vec::new();
        let mut queue = VecDeque::new();
        for (ci, &t) in self.delta[self.initial].iter().enumerate() {
            if !seen[t] {
                seen[t] = true;
                queue.push_back((t, FiniteWord::new(vec![self.alphabet.letter(ci)])));
            }
        }
        while let Some((q, w)) = queue.pop_front() {
            let c = self.class_of_state[q];
            if !reps.iter().any(|(d, _)| *d == c) {
                reps.push((c, w.clone()));
            }
            for (ci, &t) in self.delta[q].iter().enumerate() {
                if !seen[t] {
                    seen[t] = true;
                    let mut x = w.clone();
                    x.push(self.alphabet.letter(ci));
                    queue.push_back((t, x));
                }
            }
        }
        reps.sort_by_key(|(c, _)| *c);
        reps
    }

    /// Relabels every state of class `from` with class `into`.
    pub fn merge_classes(&self, into: ClassId, from: ClassId) -> Classifier {
        let mut c = self.clone();
        for x in &mut c.class_of_state {
            if *x == from {
                *x = into;
            }
        }
        c
    }

    /// Whether both classifiers induce the same partition on words.
    pub fn same_partition(&self, other: &Classifier) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        // Product reachability: class ids must correspond bijectively.
        let mut fwd = std::collections::HashMap::new();
        let mut bwd = std::collections::HashMap::new();
        let mut seen = std::collections::HashSet::new();
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        seen.insert((self.initial, other.initial));
        while let Some((p, q)) = queue.pop_front() {
            let (a, b) = (self.class_of_state[p], other.class_of_state[q]);
            if *fwd.entry(a).or_insert(b) != b || *bwd.entry(b).or_insert(a) != a {
                return false;
            }
            for ci in 0..self.alphabet.len() {
                let next = (self.delta[p][ci], other.delta[q][ci]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        true
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alphabet")?;
        for c in self.alphabet.letters() {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        writeln!(f, "states {}", self.num_states())?;
        writeln!(f, "initial {}", self.initial)?;
        for (q, c) in self.class_of_state.iter().enumerate() {
            writeln!(f, "class {q} {c}")?;
        }
        for (p, row) in self.delta.iter().enumerate() {
            for (ci, q) in row.iter().enumerate() {
                writeln!(f, "{p} {} {q}", self.alphabet.letter(ci))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Classifier {
    type Err = Error;

    /// Same layout as the automaton format, with `class q c` lines instead of
    /// `accepting`. The transition function must be total.
    fn from_str(s: &str) -> Result<Self> {
        let mut header = Header::new();
        let mut initial = None;
        let mut classes = Vec::new();
        let mut transitions = Vec::new();
        for (line_no, toks) in content_lines(s) {
            let ctx = |e: Error| Error::parse(format!("line {line_no}: {e}"));
            if header.take(toks[0], &toks[1..]).map_err(ctx)? {
                continue;
            }
            match toks.as_slice() {
                ["initial", q] => initial = Some(parse_state(q).map_err(ctx)?),
                ["class", q, c] => classes.push((parse_state(q).map_err(ctx)?, parse_state(c).map_err(ctx)?)),
                [p, c, q] => transitions.push((
                    parse_state(p).map_err(ctx)?,
                    parse_letter(c).map_err(ctx)?,
                    parse_state(q).map_err(ctx)?,
                )),
                _ => return Err(ctx(Error::parse(format!("unrecognised line {:?}", toks.join(" "))))),
            }
        }
        let (alphabet, n) = header.finish()?;
        let initial = initial.ok_or_else(|| Error::parse("missing `initial` line"))?;
        let mut delta = vec![vec![usize::MAX; alphabet.len()]; n];
        for (p, c, q) in transitions {
            let ci = alphabet.index_or_err(c)?;
            let row = delta.get_mut(p).ok_or_else(|| Error::parse(format!("undeclared state {p}")))?;
            if row[ci] != usize::MAX && row[ci] != q {
                return Err(Error::parse(format!("state {p} has two {c:?}-transitions")));
            }
            row[ci] = q;
        }
        if let Some(p) = delta.iter().position(|row| row.contains(&usize::MAX)) {
            return Err(Error::parse(format!("transition function is not total at state {p}")));
        }
        let mut class_of_state = vec![usize::MAX; n];
        for (q, c) in classes {
            *class_of_state.get_mut(q).ok_or_else(|| Error::parse(format!("undeclared state {q}")))? = c;
        }
        if let Some(q) = class_of_state.iter().position(|&c| c == usize::MAX) {
            return Err(Error::parse(format!("state {q} has no class")));
        }
        Classifier::new(alphabet, delta, initial, class_of_state)
    }
}
