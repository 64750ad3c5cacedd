use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteWord, Homomorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransducerEdge {
    pub from: usize,
    pub to: usize,
    pub input: FiniteWord,
    pub output: FiniteWord,
}

/// A finite transducer whose edges read and write words, either possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalTransducer {
    input: Alphabet,
    output: Alphabet,
    states: usize,
    initial: usize,
    finals: BTreeSet<usize>,
    edges: Vec<TransducerEdge>,
}

/// Outputs of a transducer on one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransducerImage {
    pub outputs: BTreeSet<FiniteWord>,
    /// Some run was cut off at the output length cap.
    pub truncated: bool,
}

impl RationalTransducer {
    pub fn new(input: Alphabet, output: Alphabet, states: usize, initial: usize) -> Result<Self> {
        if initial >= states {
            return Err(Error::invalid(format!("initial state {initial} is undeclared")));
        }
        Ok(RationalTransducer { input, output, states, initial, finals: BTreeSet::new(), edges: Vec::new() })
    }

    pub fn add_edge(&mut self, from: usize, to: usize, input: FiniteWord, output: FiniteWord) -> Result<()> {
        if from >= self.states || to >= self.states {
            return Err(Error::invalid(format!("edge {from} -> {to} uses an undeclared state")));
        }
        input.check_over(&self.input)?;
        output.check_over(&self.output)?;
        self.edges.push(TransducerEdge { from, to, input, output });
        Ok(())
    }

    pub fn set_final(&mut self, q: usize) -> Result<()> {
        if q >= self.states {
            return Err(Error::invalid(format!("final state {q} is undeclared")));
        }
        self.finals.insert(q);
        Ok(())
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[TransducerEdge] {
        &self.edges
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Self::from_homomorphism(&Homomorphism::letter_map(
            alphabet.clone(),
            alphabet.clone(),
            &alphabet.letters().iter().map(|&c| (c, c)).collect::<Vec<_>>(),
        )
        .expect("identity letter map"))
    }

    /// Every letter is erased.
    pub fn erasing(alphabet: &Alphabet) -> Self {
        let mut t = RationalTransducer::new(alphabet.clone(), alphabet.clone(), 1, 0).expect("one state");
        for &c in alphabet.letters() {
            t.add_edge(0, 0, FiniteWord::new(vec![c]), FiniteWord::empty()).expect("valid edge");
        }
        t.set_final(0).expect("valid state");
        t
    }

    /// One state looping through the letter images of `h`.
    pub fn from_homomorphism(h: &Homomorphism) -> Self {
        let mut t = RationalTransducer::new(h.source().clone(), h.target().clone(), 1, 0).expect("one state");
        for &c in h.source().letters() {
            let image = h.image_of(c).expect("letter of the source").clone();
            t.add_edge(0, 0, FiniteWord::new(vec![c]), image).expect("valid edge");
        }
        t.set_final(0).expect("valid state");
        t
    }

    /// `u ↦ u·sep·u` for every `u` of length at most `max_len`.
    ///
    /// Copying is not rational on an infinite domain, so the machine keeps
    /// the word read so far in its state: one state per word up to
    /// `max_len`, plus a final sink reached by writing `sep·u`.
    pub fn duplicate_with_separator(alphabet: &Alphabet, sep: char, max_len: usize) -> Result<Self> {
        if alphabet.contains(sep) {
            return Err(Error::invalid(format!("separator {sep:?} is a letter of {alphabet}")));
        }
        let output = Alphabet::from_letters(alphabet.letters().iter().copied().chain([sep]))?;
        let words = FiniteWord::enumerate(alphabet, max_len);
        let index = |w: &FiniteWord| words.binary_search_by(|x| x.shortlex_cmp(w)).expect("enumerated");
        let sink = words.len();
        let mut t = RationalTransducer::new(alphabet.clone(), output, sink + 1, 0)?;
        for (i, u) in words.iter().enumerate() {
            if u.len() < max_len {
                for &c in alphabet.letters() {
                    let mut next = u.clone();
                    next.push(c);
                    t.add_edge(i, index(&next), FiniteWord::new(vec![c]), FiniteWord::new(vec![c]))?;
                }
            }
            let tail = FiniteWord::new(vec![sep]).concat(u);
            t.add_edge(i, sink, FiniteWord::empty(), tail)?;
        }
        t.set_final(sink)?;
        Ok(t)
    }

    /// Every output of an accepting run on `w` whose length stays within `cap`.
    pub fn apply(&self, w: &FiniteWord, cap: usize) -> Result<TransducerImage> {
        w.check_over(&self.input)?;
        let word = w.letters();
        let mut outputs = BTreeSet::new();
        let mut truncated = false;
        let start = (self.initial, 0usize, FiniteWord::empty());
        let mut seen: HashSet<(usize, usize, FiniteWord)> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((q, pos, out)) = queue.pop_front() {
            if pos == word.len() && self.finals.contains(&q) {
                outputs.insert(out.clone());
            }
            for e in self.edges.iter().filter(|e| e.from == q) {
                let inp = e.input.letters();
                if !word[pos..].starts_with(inp) {
                    continue;
                }
                if out.len() + e.output.len() > cap {
                    truncated = true;
                    continue;
                }
                let next = (e.to, pos + inp.len(), out.concat(&e.output));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(TransducerImage { outputs, truncated })
    }
}
