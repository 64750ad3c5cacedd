use crate::buchi::BuchiAutomaton;
use crate::congruence::{Classifier, Condition2Witness};
use crate::error::{Error, Result};
use crate::words::{primitive_root, Alphabet, BlockWord, HomImage, Homomorphism, Lengths, UpWord};

use super::{block_growth_violation, LanguageOracle};

/// `a^{k₁} b a^{k₂} b ⋯` with `limsup kₙ = ∞`, over `{a,b}`.
///
/// A lasso word qualifies exactly when its period is all `a`: then the final
/// block is infinite. Any `b` in the period bounds every block.
#[derive(Clone, Debug)]
pub struct Unbounded {
    alphabet: Alphabet,
}

impl Unbounded {
    pub fn new() -> Self {
        Unbounded { alphabet: Alphabet::new("ab").expect("valid") }
    }
}

impl Default for Unbounded {
    fn default() -> Self {
        Self::new()
    }
}

fn unbounded_up(w: &UpWord) -> bool {
    w.period().letters().iter().all(|&c| c == 'a')
}

fn unbounded_block(w: &BlockWord) -> bool {
    match (w.lengths(), w.to_up()) {
        (_, Some(up)) => unbounded_up(&up),
        // Growing a-blocks, or (for block letter b) single a's between b-blocks.
        (Lengths::Affine { .. }, None) => w.block_letter() == 'a',
        _ => unreachable!("non-affine lengths are periodic"),
    }
}

impl LanguageOracle for Unbounded {
    fn name(&self) -> String {
        "U".into()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn decide_up(&self, w: &UpWord) -> Result<bool> {
        Ok(unbounded_up(w))
    }

    fn decide_block(&self, w: &BlockWord) -> Result<bool> {
        Ok(unbounded_block(w))
    }

    fn has_violation_finder(&self) -> bool {
        true
    }

    fn find_violation(&self, c: &Classifier) -> Result<Condition2Witness> {
        block_growth_violation(self, c, 'a', 'b')
    }
}

/// [`Unbounded`] over `{a,b,1}` with neutral letter `1`: membership after erasing every `1`.
#[derive(Clone, Debug)]
pub struct UnboundedNeutral {
    alphabet: Alphabet,
    erase: Homomorphism,
}

impl UnboundedNeutral {
    pub fn new() -> Self {
        let alphabet = Alphabet::new("ab1").expect("valid");
        let erase = Homomorphism::erasing(&alphabet, '1').expect("1 is a letter");
        UnboundedNeutral { alphabet, erase }
    }
}

impl Default for UnboundedNeutral {
    fn default() -> Self {
        Self::new()
    }
}

impl LanguageOracle for UnboundedNeutral {
    fn name(&self) -> String {
        "Uprime".into()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn neutral_letter(&self) -> Option<char> {
        Some('1')
    }

    fn decide_up(&self, w: &UpWord) -> Result<bool> {
        match self.erase.apply_up(w)? {
            HomImage::Omega(x) => Ok(unbounded_up(&x)),
            HomImage::Finite(f) => Err(Error::unsupported(format!(
                "erasing the neutral letter from {w} leaves the finite word {f}"
            ))),
        }
    }

    fn decide_block(&self, w: &BlockWord) -> Result<bool> {
        match self.erase.apply_block(w)? {
            crate::words::OmegaWord::Block(b) => Ok(unbounded_block(&b)),
            crate::words::OmegaWord::Up(u) => Ok(unbounded_up(&u)),
        }
    }

    fn has_violation_finder(&self) -> bool {
        true
    }

    fn find_violation(&self, c: &Classifier) -> Result<Condition2Witness> {
        block_growth_violation(self, c, 'a', 'b')
    }
}

/// All ultimately periodic words over `{a,b}`.
#[derive(Clone, Debug)]
pub struct UltimatelyPeriodic {
    alphabet: Alphabet,
}

impl UltimatelyPeriodic {
    pub fn new() -> Self {
        UltimatelyPeriodic { alphabet: Alphabet::new("ab").expect("valid") }
    }
}

impl Default for UltimatelyPeriodic {
    fn default() -> Self {
        Self::new()
    }
}

impl LanguageOracle for UltimatelyPeriodic {
    fn name(&self) -> String {
        "P".into()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn decide_up(&self, _w: &UpWord) -> Result<bool> {
        Ok(true)
    }

    fn decide_block(&self, w: &BlockWord) -> Result<bool> {
        Ok(!matches!(w.lengths(), Lengths::Affine { .. }))
    }
}

/// `{w (aⁿb)^ω : n prime}` over `{a,b}`.
#[derive(Clone, Debug)]
pub struct PrimeBlocks {
    alphabet: Alphabet,
}

impl PrimeBlocks {
    pub fn new() -> Self {
        PrimeBlocks { alphabet: Alphabet::new("ab").expect("valid") }
    }
}

impl Default for PrimeBlocks {
    fn default() -> Self {
        Self::new()
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl LanguageOracle for PrimeBlocks {
    fn name(&self) -> String {
        "primes".into()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Some rotation of the primitive root of the period is `aⁿb`, n prime.
    /// Such a root has exactly one `b`, so the rotation is determined.
    fn decide_up(&self, w: &UpWord) -> Result<bool> {
        let root = primitive_root(w.period().letters());
        let bs = root.iter().filter(|&&c| c == 'b').count();
        Ok(bs == 1 && is_prime(root.len() - 1))
    }

    fn decide_block(&self, w: &BlockWord) -> Result<bool> {
        match w.to_up() {
            Some(up) => self.decide_up(&up),
            None => Ok(false),
        }
    }
}

/// The single word `w₀`, over the letters it uses.
#[derive(Clone, Debug)]
pub struct Singleton {
    word: UpWord,
    alphabet: Alphabet,
}

impl Singleton {
    pub fn new(word: UpWord) -> Self {
        let letters = word.prefix().letters().iter().chain(word.period().letters()).copied();
        let alphabet = Alphabet::union_of(letters).expect("nonempty period");
        Singleton { word, alphabet }
    }

    /// The singleton over a larger alphabet.
    pub fn over(word: UpWord, alphabet: Alphabet) -> Result<Self> {
        word.prefix().check_over(&alphabet)?;
        word.period().check_over(&alphabet)?;
        Ok(Singleton { word, alphabet })
    }
}

impl LanguageOracle for Singleton {
    fn name(&self) -> String {
        format!("singleton:{}", self.word)
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn decide_up(&self, w: &UpWord) -> Result<bool> {
        Ok(w.up_equal(&self.word))
    }

    fn decide_block(&self, w: &BlockWord) -> Result<bool> {
        Ok(w.to_up().is_some_and(|u| u.up_equal(&self.word)))
    }
}

/// The language of a Büchi automaton.
#[derive(Clone, Debug)]
pub struct Regular {
    automaton: BuchiAutomaton,
}

impl Regular {
    pub fn new(automaton: BuchiAutomaton) -> Self {
        Regular { automaton }
    }

    pub fn automaton(&self) -> &BuchiAutomaton {
        &self.automaton
    }
}

impl LanguageOracle for Regular {
    fn name(&self) -> String {
        "regular".into()
    }

    fn alphabet(&self) -> &Alphabet {
        self.automaton.alphabet()
    }

    fn decide_up(&self, w: &UpWord) -> Result<bool> {
        self.automaton.accepts_up(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(s: &str) -> UpWord {
        s.parse().unwrap()
    }

    #[test]
    fn u_examples() {
        let u = Unbounded::new();
        assert!(u.contains_block(&"blocks(a,b;affine 1 0)".parse().unwrap()).unwrap());
        assert!(!u.contains_up(&up("(aaaaab)^w")).unwrap());
        // The final block of a^ω is infinite.
        assert!(u.contains_up(&up("(a)^w")).unwrap());
        assert!(u.contains_up(&up("bab(a)^w")).unwrap());
        assert!(!u.contains_block(&"blocks(a,b;const 3)".parse().unwrap()).unwrap());
        assert!(!u.contains_block(&"blocks(b,a;affine 1 0)".parse().unwrap()).unwrap());
        assert!(u.contains_block(&"blocks(b,a;const 0)".parse().unwrap()).unwrap());
        assert!(u.contains_up(&up("(c)^w")).is_err());
    }

    #[test]
    fn u_prime_examples() {
        let u = UnboundedNeutral::new();
        assert!(!u.contains_up(&up("(a1b)^w")).unwrap());
        assert!(u.contains_block(&"blocks(a,b;affine 1 0)".parse().unwrap()).unwrap());
        assert!(matches!(u.contains_up(&up("(1)^w")), Err(Error::Unsupported(_))));
        assert!(matches!(u.contains_block(&"blocks(a,1;affine 1 0)".parse().unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn p_examples() {
        let p = UltimatelyPeriodic::new();
        assert!(p.contains_up(&up("ab(b)^w")).unwrap());
        assert!(!p.contains_block(&"blocks(a,b;affine 1 0)".parse().unwrap()).unwrap());
        assert!(p.contains_block(&"blocks(a,b;const 2)".parse().unwrap()).unwrap());
    }

    #[test]
    fn prime_block_examples() {
        let p = PrimeBlocks::new();
        assert!(p.contains_up(&up("b(aab)^w")).unwrap());
        assert!(!p.contains_up(&up("(aaaab)^w")).unwrap());
        assert!(p.contains_up(&up("ab(aaabaaab)^w")).unwrap());
        assert!(p.contains_up(&up("(aba)^w")).unwrap());
        assert!(!p.contains_up(&up("(a)^w")).unwrap());
        assert!(p.contains_block(&"blocks(a,b;periodic 4 | 3)".parse().unwrap()).unwrap());
        assert!(!p.contains_block(&"blocks(a,b;affine 1 0)".parse().unwrap()).unwrap());
    }

    #[test]
    fn singleton_examples() {
        let s = Singleton::new(up("(ab)^w"));
        assert!(s.contains_up(&up("a(ba)^w")).unwrap());
        assert!(!s.contains_up(&up("(a)^w")).unwrap());
        assert!(Singleton::new(up("(a)^w")).contains_up(&up("(aa)^w")).unwrap());
    }

    #[test]
    fn regular_examples() {
        let ab = Alphabet::new("ab").unwrap();
        let r = Regular::new(BuchiAutomaton::infinitely_many(ab.clone(), 'a').unwrap());
        assert!(r.contains_up(&up("(ab)^w")).unwrap());
        let e = Regular::new(BuchiAutomaton::empty_language(ab));
        assert!(!e.contains_up(&up("(ab)^w")).unwrap());
    }
}
