use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::buchi::{BuchiAutomaton, Emptiness, Limits};
use crate::error::{Error, Result};
use crate::words::{lcm, Alphabet, FiniteWord, UpWord};

use super::algebra::Recognizer;
use super::{Formula, Sort, Var};

const CODE_BASE: u32 = 0xF0000;
const MAX_TRACKS: usize = 12;

/// Letters of `Σ × {0,1}^k`, one bit per variable, packed into private-use
/// characters: the letter `(σ, bits)` is `U+F0000 + index(σ)·2^k + bits`,
/// with bit `j` standing for `vars[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coding {
    base: Alphabet,
    vars: Vec<Var>,
}

impl Coding {
    pub fn new(base: Alphabet, vars: Vec<Var>) -> Result<Self> {
        if vars.len() > MAX_TRACKS {
            return Err(Error::BudgetExceeded { what: "free variables of a compiled subformula", limit: MAX_TRACKS });
        }
        Ok(Coding { base, vars })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    fn width(&self) -> usize {
        1 << self.vars.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        let n = self.base.len() * self.width();
        Alphabet::from_letters((0..n as u32).map(|i| char::from_u32(CODE_BASE + i).expect("private-use range")))
            .expect("distinct letters")
    }

    pub fn encode(&self, base_index: usize, bits: usize) -> char {
        char::from_u32(CODE_BASE + (base_index * self.width() + bits) as u32).expect("private-use range")
    }

    /// The base letter and track bits of a coded letter.
    pub fn decode(&self, c: char) -> (char, usize) {
        let i = (c as u32 - CODE_BASE) as usize;
        (self.base.letter(i / self.width()), i % self.width())
    }

    /// Readable form of a coded letter, e.g. `[a x X]` for letter `a` with the bits of `x` and `X` set.
    pub fn describe(&self, c: char) -> String {
        let (b, bits) = self.decode(c);
        let mut s = format!("[{b}");
        for (j, v) in self.vars.iter().enumerate() {
            if bits >> j & 1 == 1 {
                s.push(' ');
                s.push_str(&v.name);
            }
        }
        s.push(']');
        s
    }

    /// The coded lasso word of a valuation.
    pub fn code_valuation(&self, val: &UpValuation) -> Result<UpWord> {
        let mut prefix_len = val.word.prefix().len() as u64;
        let mut period = val.word.period().len() as u64;
        let mut tracks: Vec<Box<dyn Fn(u64) -> bool + '_>> = Vec::new();
        for v in &self.vars {
            match v.sort {
                Sort::Position => {
                    let p = *val
                        .positions
                        .get(&v.name)
                        .ok_or_else(|| Error::invalid(format!("valuation has no position for {}", v.name)))?;
                    prefix_len = prefix_len.max(p + 1);
                    tracks.push(Box::new(move |i| i == p));
                }
                Sort::Set => {
                    let s = val.sets.get(&v.name).ok_or_else(|| Error::invalid(format!("valuation has no set for {}", v.name)))?;
                    prefix_len = prefix_len.max(s.prefix().len() as u64);
                    period = lcm(period, s.period().len() as u64);
                    tracks.push(Box::new(move |i| s.letter_at(i) == '1'));
                }
            }
        }
        let letter = |i: u64| -> Result<char> {
            let b = self.base.index_or_err(val.word.letter_at(i))?;
            let bits = tracks.iter().enumerate().filter(|(_, t)| t(i)).map(|(j, _)| 1 << j).sum();
            Ok(self.encode(b, bits))
        };
        let prefix = (0..prefix_len).map(letter).collect::<Result<Vec<_>>>()?;
        let cycle = (prefix_len..prefix_len + period).map(letter).collect::<Result<Vec<_>>>()?;
        UpWord::new(FiniteWord::new(prefix), FiniteWord::new(cycle))
    }

    /// Reads a valuation back from a coded lasso word. Position variables
    /// must have their bit set exactly once, inside the prefix.
    pub fn decode_valuation(&self, w: &UpWord) -> Result<UpValuation> {
        let split = |word: &FiniteWord| -> (Vec<char>, Vec<usize>) {
            word.letters().iter().map(|&c| self.decode(c)).unzip()
        };
        let (pb, pbits) = split(w.prefix());
        let (cb, cbits) = split(w.period());
        let word = UpWord::new(FiniteWord::new(pb), FiniteWord::new(cb))?;
        let mut val = UpValuation { word, positions: BTreeMap::new(), sets: BTreeMap::new() };
        for (j, v) in self.vars.iter().enumerate() {
            let bit = |bits: &[usize]| -> FiniteWord { bits.iter().map(|b| if b >> j & 1 == 1 { '1' } else { '0' }).collect() };
            match v.sort {
                Sort::Set => {
                    val.sets.insert(v.name.clone(), UpWord::new(bit(&pbits), bit(&cbits))?);
                }
                Sort::Position => {
                    let hits: Vec<usize> = (0..pbits.len()).filter(|&i| pbits[i] >> j & 1 == 1).collect();
                    if hits.len() != 1 || cbits.iter().any(|b| b >> j & 1 == 1) {
                        return Err(Error::invalid(format!("track of {} is not a single position", v.name)));
                    }
                    val.positions.insert(v.name.clone(), hits[0] as u64);
                }
            }
        }
        Ok(val)
    }
}

/// An ω-word over the base alphabet with values for variables. Sets are
/// indicator lasso words over `{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpValuation {
    pub word: UpWord,
    #[serde(default)]
    pub positions: BTreeMap<String, u64>,
    #[serde(default)]
    pub sets: BTreeMap<String, UpWord>,
}

impl UpValuation {
    pub fn new(word: UpWord) -> Self {
        UpValuation { word, positions: BTreeMap::new(), sets: BTreeMap::new() }
    }

    pub fn with_position(mut self, name: &str, p: u64) -> Self {
        self.positions.insert(name.into(), p);
        self
    }

    pub fn with_set(mut self, name: &str, indicator: UpWord) -> Result<Self> {
        let bits = indicator.prefix().letters().iter().chain(indicator.period().letters());
        if let Some(c) = bits.into_iter().find(|&&c| c != '0' && c != '1') {
            return Err(Error::AlphabetMismatch { letter: *c, alphabet: "01".into() });
        }
        self.sets.insert(name.into(), indicator);
        Ok(self)
    }
}

/// A compiled formula: its models, coded over [`Coding`].
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    pub automaton: BuchiAutomaton,
    pub coding: Coding,
}

impl CompiledFormula {
    pub fn accepts(&self, val: &UpValuation) -> Result<bool> {
        self.automaton.accepts_up(&self.coding.code_valuation(val)?)
    }
}

/// Compiles a formula without language atoms over the base alphabet. The
/// automaton's tracks are the formula's free variables in sorted order.
pub fn compile_to_buchi(f: &Formula, base: &Alphabet) -> Result<CompiledFormula> {
    compile_with_limits(f, base, Limits::default())
}

pub fn compile_with_limits(f: &Formula, base: &Alphabet, limits: Limits) -> Result<CompiledFormula> {
    if let Some(c) = f.letters().into_iter().find(|c| !base.contains(*c)) {
        return Err(Error::AlphabetMismatch { letter: c, alphabet: base.to_string() });
    }
    let c = Compiler { base, limit: limits.max_monoid.min(MAX_ELEMENTS) };
    let (mut r, vars) = c.compile(f)?;
    for (j, v) in vars.iter().enumerate() {
        if v.sort == Sort::Position {
            r = r.combine(&c.singleton(vars.len(), j)?, |x, y| x && y, c.limit)?;
        }
    }
    let coding = Coding::new(base.clone(), vars)?;
    let automaton = r.to_automaton(&coding.alphabet())?;
    if automaton.num_states() > limits.max_states {
        return Err(Error::BudgetExceeded { what: "compiled automaton states", limit: limits.max_states });
    }
    Ok(CompiledFormula { automaton: reduce(&automaton), coding })
}

/// Satisfiability of a formula without language atoms; a model is returned when one exists.
pub fn mso_satisfiable(f: &Formula, base: &Alphabet) -> Result<Option<UpValuation>> {
    let compiled = compile_to_buchi(f, base)?;
    match compiled.automaton.is_empty() {
        Emptiness::Empty => Ok(None),
        Emptiness::NonEmpty(w) => compiled.coding.decode_valuation(&w).map(Some),
    }
}

/// Largest semigroup the compiler tabulates; the tables are quadratic in it.
const MAX_ELEMENTS: usize = 4096;

/// Compiles bottom-up through semigroup recognizers: atoms come from small
/// automata, negation flips the ω-table, connectives take products, and
/// quantifiers project a track away.
struct Compiler<'a> {
    base: &'a Alphabet,
    limit: usize,
}

impl Compiler<'_> {
    fn coded(&self, k: usize) -> Result<Coding> {
        Coding::new(self.base.clone(), (0..k).map(|j| Var::set(format!("_{j}"))).collect())
    }

    /// Recognizer over `k` tracks of an automaton given by its transition function.
    fn build(
        &self,
        k: usize,
        states: usize,
        accepting: &[usize],
        step: impl Fn(usize, char, usize) -> Vec<usize>,
    ) -> Result<Recognizer> {
        let coding = self.coded(k)?;
        let mut edges = Vec::new();
        for q in 0..states {
            for (bi, &b) in self.base.letters().iter().enumerate() {
                for bits in 0..1usize << k {
                    for t in step(q, b, bits) {
                        edges.push((q, coding.encode(bi, bits), t));
                    }
                }
            }
        }
        let a = BuchiAutomaton::from_parts(coding.alphabet(), states, edges, vec![0], accepting.to_vec())?;
        Recognizer::from_automaton(&a, self.limit)
    }

    fn universal(&self, k: usize) -> Result<Recognizer> {
        self.build(k, 1, &[0], |_, _, _| vec![0])
    }

    fn empty(&self, k: usize) -> Result<Recognizer> {
        self.build(k, 1, &[], |_, _, _| vec![0])
    }

    /// Track `j` is set at exactly one position.
    fn singleton(&self, k: usize, j: usize) -> Result<Recognizer> {
        self.build(k, 2, &[1], |q, _, bits| match (q, bits >> j & 1) {
            (0, 0) => vec![0],
            (0, _) => vec![1],
            (1, 0) => vec![1],
            _ => vec![],
        })
    }

    /// Some position satisfies `pred` (exact on singleton tracks).
    fn somewhere(&self, k: usize, pred: impl Fn(char, usize) -> bool) -> Result<Recognizer> {
        self.build(k, 2, &[1], |q, b, bits| if q == 1 { vec![1] } else if pred(b, bits) { vec![0, 1] } else { vec![0] })
    }

    fn compile(&self, f: &Formula) -> Result<(Recognizer, Vec<Var>)> {
        use Formula::*;
        let vars: Vec<Var> = f.free_vars()?.into_iter().collect();
        let bit = |name: &str, sort: Sort| -> usize {
            vars.iter().position(|v| v.name == name && v.sort == sort).expect("free variable")
        };
        let k = vars.len();
        let r = match f {
            True => self.universal(k)?,
            False => self.empty(k)?,
            Less(x, y) if x == y => self.empty(k)?,
            Less(x, y) => {
                let (i, j) = (bit(x, Sort::Position), bit(y, Sort::Position));
                self.build(k, 3, &[2], |q, _, bits| match (q, bits >> i & 1, bits >> j & 1) {
                    (0, 0, 0) => vec![0],
                    (0, 1, 0) => vec![1],
                    (1, 0, 0) => vec![1],
                    (1, 0, 1) => vec![2],
                    (2, _, _) => vec![2],
                    _ => vec![],
                })?
            }
            Equal(x, y) if x == y => self.universal(k)?,
            Equal(x, y) => {
                let (i, j) = (bit(x, Sort::Position), bit(y, Sort::Position));
                self.somewhere(k, |_, bits| bits >> i & 1 == 1 && bits >> j & 1 == 1)?
            }
            In(x, s) => {
                let (i, j) = (bit(x, Sort::Position), bit(s, Sort::Set));
                self.somewhere(k, |_, bits| bits >> i & 1 == 1 && bits >> j & 1 == 1)?
            }
            Letter(x, c) => {
                let i = bit(x, Sort::Position);
                self.somewhere(k, |b, bits| b == *c && bits >> i & 1 == 1)?
            }
            Lang { symbol, .. } => {
                return Err(Error::unsupported(format!("language atom {symbol} has no automaton")));
            }
            Not(g) => self.compile(g)?.0.complement(),
            And(fs) | Or(fs) => {
                let conj = matches!(f, And(_));
                let mut acc = if conj { self.universal(k)? } else { self.empty(k)? };
                for g in fs {
                    let (r, gv) = self.compile(g)?;
                    let r = self.cylindrify(&r, &gv, &vars)?;
                    acc = if conj {
                        acc.combine(&r, |x, y| x && y, self.limit)?
                    } else {
                        acc.combine(&r, |x, y| x || y, self.limit)?
                    };
                }
                acc
            }
            Implies(a, b) => {
                let (ra, va) = self.compile(a)?;
                let (rb, vb) = self.compile(b)?;
                let (ra, rb) = (self.cylindrify(&ra, &va, &vars)?, self.cylindrify(&rb, &vb, &vars)?);
                ra.combine(&rb, |x, y| !x || y, self.limit)?
            }
            Iff(a, b) => {
                let (ra, va) = self.compile(a)?;
                let (rb, vb) = self.compile(b)?;
                let (ra, rb) = (self.cylindrify(&ra, &va, &vars)?, self.cylindrify(&rb, &vb, &vars)?);
                ra.combine(&rb, |x, y| x == y, self.limit)?
            }
            Exists1(x, g) => self.exists(x, Sort::Position, g, &vars)?,
            Exists2(x, g) => self.exists(x, Sort::Set, g, &vars)?,
            Forall1(x, g) => self.exists(x, Sort::Position, &Formula::not((**g).clone()), &vars)?.complement(),
            Forall2(x, g) => self.exists(x, Sort::Set, &Formula::not((**g).clone()), &vars)?.complement(),
        };
        Ok((r, vars))
    }

    /// Projects the bound variable's track away; position variables are
    /// first restricted to singletons.
    fn exists(&self, x: &str, sort: Sort, body: &Formula, outer: &[Var]) -> Result<Recognizer> {
        let (mut r, bv) = self.compile(body)?;
        let Some(j) = bv.iter().position(|v| v.name == x && v.sort == sort) else {
            // The variable does not occur; positions and sets are never empty domains.
            return self.cylindrify(&r, &bv, outer);
        };
        if sort == Sort::Position {
            r = r.combine(&self.singleton(bv.len(), j)?, |a, b| a && b, self.limit)?;
        }
        let rest: Vec<Var> = bv.iter().filter(|v| !(v.name == x && v.sort == sort)).cloned().collect();
        let width = 1usize << bv.len();
        let image: Vec<usize> = (0..self.base.len() * width)
            .map(|i| {
                let (b, bits) = (i / width, i % width);
                let low = bits & ((1 << j) - 1);
                let high = bits >> (j + 1) << j;
                (b << rest.len()) | low | high
            })
            .collect();
        let projected = r.project(&image, self.base.len() << rest.len(), self.limit)?;
        self.cylindrify(&projected, &rest, outer)
    }

    /// Re-reads a recognizer over tracks `from` as one over tracks `to ⊇ from`.
    fn cylindrify(&self, r: &Recognizer, from: &[Var], to: &[Var]) -> Result<Recognizer> {
        if from == to {
            return Ok(r.clone());
        }
        let map: Vec<usize> = from
            .iter()
            .map(|v| to.iter().position(|w| w == v).ok_or_else(|| Error::invalid(format!("track {} is missing", v.name))))
            .collect::<Result<_>>()?;
        let width = 1usize << to.len();
        let letters: Vec<usize> = (0..self.base.len() * width)
            .map(|i| {
                let (b, bits) = (i / width, i % width);
                let sub: usize = map.iter().enumerate().filter(|(_, &t)| bits >> t & 1 == 1).map(|(i, _)| 1 << i).sum();
                (b << from.len()) | sub
            })
            .collect();
        Ok(r.relabel(&letters))
    }
}

/// Trims, then merges bisimilar states. Both steps preserve the language.
pub(crate) fn reduce(a: &BuchiAutomaton) -> BuchiAutomaton {
    let a = a.trim();
    let n = a.num_states();
    if n == 0 {
        return a;
    }
    let k = a.alphabet().len();
    let mut block: Vec<usize> = (0..n).map(|q| usize::from(a.is_accepting(q))).collect();
    loop {
        let mut ids: HashMap<(usize, Vec<Vec<usize>>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig: Vec<Vec<usize>> = (0..k)
                    .map(|c| {
                        let mut s: Vec<usize> = a.successors(q, c).iter().map(|&t| block[t]).collect();
                        s.sort_unstable();
                        s.dedup();
                        s
                    })
                    .collect();
                let len = ids.len();
                *ids.entry((block[q], sig)).or_insert(len)
            })
            .collect();
        let stable = ids.len() == block.iter().collect::<std::collections::HashSet<_>>().len();
        block = next;
        if stable {
            break;
        }
    }
    let m = block.iter().max().map_or(0, |b| b + 1);
    if m == n {
        return a;
    }
    let mut edges: Vec<(usize, char, usize)> = a.transitions().map(|(p, c, q)| (block[p], c, block[q])).collect();
    edges.sort_unstable();
    edges.dedup();
    let init: Vec<usize> = a.initial().iter().map(|&q| block[q]).collect();
    let acc: Vec<usize> = (0..n).filter(|&q| a.is_accepting(q)).map(|q| block[q]).collect();
    BuchiAutomaton::from_parts(a.alphabet().clone(), m, edges, init, acc).expect("quotient is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn sentence(s: &str) -> BuchiAutomaton {
        compile_to_buchi(&s.parse().unwrap(), &ab()).unwrap().automaton
    }

    fn accepts(a: &BuchiAutomaton, prefix: &str, period: &str) -> bool {
        accepts_word(a, &UpWord::lit(prefix, period))
    }

    fn accepts_word(a: &BuchiAutomaton, w: &UpWord) -> bool {
        let c = Coding::new(ab(), vec![]).unwrap();
        a.accepts_up(&c.code_valuation(&UpValuation::new(w.clone())).unwrap()).unwrap()
    }

    #[test]
    fn infinitely_many_a() {
        let a = sentence("(forall1 x (exists1 y (and (< x y) (letter y a))))");
        assert!(accepts(&a, "", "ab"));
        assert!(!accepts(&a, "a", "b"));
    }

    #[test]
    fn some_a_and_false() {
        let a = sentence("(exists1 x (letter x a))");
        assert!(accepts(&a, "bbbbba", "b"));
        assert!(!accepts(&a, "", "b"));
        assert!(sentence("(exists1 x (< x x))").is_empty().is_empty());
    }

    #[test]
    fn satisfiability() {
        let inf = |c| format!("(forall1 x{c} (exists1 y{c} (and (< x{c} y{c}) (letter y{c} {c}))))");
        let f: Formula = format!("(and {} {})", inf('a'), inf('b')).parse().unwrap();
        let model = mso_satisfiable(&f, &ab()).unwrap().expect("satisfiable");
        assert!(model.word.period().contains('a') && model.word.period().contains('b'));
        let g: Formula = "(and (forall1 x (letter x a)) (exists1 x' (letter x' b)))".parse().unwrap();
        assert_eq!(mso_satisfiable(&g, &ab()).unwrap(), None);
        let t: Formula = "(forall1 x (not (< x x)))".parse().unwrap();
        assert!(mso_satisfiable(&t, &ab()).unwrap().is_some());
    }

    #[test]
    fn free_variables_are_tracks() {
        let f: Formula = "(and (in x X) (letter x b))".parse().unwrap();
        let c = compile_to_buchi(&f, &ab()).unwrap();
        assert_eq!(c.coding.vars(), [Var::set("X"), Var::position("x")]);
        let val = UpValuation::new(UpWord::lit("ab", "a")).with_position("x", 1).with_set("X", UpWord::lit("", "01")).unwrap();
        assert!(c.accepts(&val).unwrap());
        let val = val.with_position("x", 0);
        assert!(!c.accepts(&val).unwrap());
        let model = mso_satisfiable(&f, &ab()).unwrap().unwrap();
        assert!(c.accepts(&model).unwrap());
    }

    #[test]
    fn set_quantifier_duality() {
        let base = "(forall1 x (iff (in x X) (letter x a)))";
        let neg_exists: Formula = format!("(not (exists2 X {base}))").parse().unwrap();
        let forall_neg: Formula = format!("(forall2 X (not {base}))").parse().unwrap();
        let a = compile_to_buchi(&neg_exists, &ab()).unwrap().automaton;
        let b = compile_to_buchi(&forall_neg, &ab()).unwrap().automaton;
        for w in UpWord::enumerate(&ab(), 2, 2) {
            assert!(!accepts_word(&a, &w));
            assert!(!accepts_word(&b, &w));
        }
    }
}
