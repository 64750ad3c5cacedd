use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{Alphabet, BlockWord, FiniteWord, OmegaWord, UpWord};

/// A homomorphism given by one image word per source letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: Alphabet,
    target: Alphabet,
    image: BTreeMap<char, FiniteWord>,
}

/// Image of a lasso word: erasing the whole period leaves a finite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomImage {
    Finite(FiniteWord),
    Omega(UpWord),
}

impl Homomorphism {
    pub fn new(source: Alphabet, target: Alphabet, image: BTreeMap<char, FiniteWord>) -> Result<Self> {
        for &c in source.letters() {
            let img = image.get(&c).ok_or_else(|| Error::invalid(format!("no image for letter {c:?}")))?;
            img.check_over(&target)?;
        }
        if let Some(extra) = image.keys().find(|c| !source.contains(**c)) {
            return Err(Error::invalid(format!("image given for letter {extra:?} outside the source alphabet")));
        }
        Ok(Homomorphism { source, target, image })
    }

    /// A letter-to-letter homomorphism from `(letter, image letter)` pairs.
    pub fn letter_map(source: Alphabet, target: Alphabet, pairs: &[(char, char)]) -> Result<Self> {
        let image = pairs.iter().map(|&(a, b)| (a, FiniteWord::new(vec![b]))).collect();
        Homomorphism::new(source, target, image)
    }

    /// The homomorphism that deletes `letter` and fixes every other letter.
    pub fn erasing(source: &Alphabet, letter: char) -> Result<Self> {
        let target = source.without(letter)?;
        let image = source
            .letters()
            .iter()
            .map(|&c| (c, if c == letter { FiniteWord::empty() } else { FiniteWord::new(vec![c]) }))
            .collect();
        Homomorphism::new(source.clone(), target, image)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image_of(&self, c: char) -> Result<&FiniteWord> {
        self.image.get(&c).ok_or_else(|| Error::AlphabetMismatch { letter: c, alphabet: self.source.to_string() })
    }

    pub fn is_letter_to_letter(&self) -> bool {
        self.image.values().all(|w| w.len() == 1)
    }

    /// Image letter of `c` for letter-to-letter homomorphisms.
    pub fn letter_image(&self, c: char) -> Result<char> {
        let w = self.image_of(c)?;
        match w.letters() {
            [x] => Ok(*x),
            _ => Err(Error::invalid("homomorphism is not letter-to-letter")),
        }
    }

    pub fn apply_finite(&self, w: &FiniteWord) -> Result<FiniteWord> {
        let mut out = Vec::new();
        for &c in w.letters() {
            out.extend_from_slice(self.image_of(c)?.letters());
        }
        Ok(FiniteWord::new(out))
    }

    pub fn apply_up(&self, w: &UpWord) -> Result<HomImage> {
        let prefix = self.apply_finite(w.prefix())?;
        let period = self.apply_finite(w.period())?;
        if period.is_empty() {
            Ok(HomImage::Finite(prefix))
        } else {
            Ok(HomImage::Omega(UpWord::new(prefix, period)?))
        }
    }

    /// Block words are supported for letter-to-letter maps and for maps that
    /// only erase letters absent from the word.
    pub fn apply_block(&self, w: &BlockWord) -> Result<OmegaWord> {
        let img = |c: char| -> Result<char> {
            let x = self.image_of(c)?;
            match x.letters() {
                [y] => Ok(*y),
                _ => Err(Error::unsupported(format!(
                    "image of block word {w} under a homomorphism mapping {c:?} to {x}"
                ))),
            }
        };
        let (x, y) = (img(w.block_letter())?, img(w.separator())?);
        if x == y {
            return Ok(OmegaWord::Up(UpWord::new(FiniteWord::empty(), FiniteWord::new(vec![x]))?));
        }
        Ok(OmegaWord::Block(w.with_letters(x, y)?))
    }

    pub fn apply_omega(&self, w: &OmegaWord) -> Result<OmegaWord> {
        match w {
            OmegaWord::Up(u) => match self.apply_up(u)? {
                HomImage::Omega(x) => Ok(OmegaWord::Up(x)),
                HomImage::Finite(f) => Err(Error::unsupported(format!("image of {u} is the finite word {f}"))),
            },
            OmegaWord::Block(b) => self.apply_block(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab1() -> Alphabet {
        Alphabet::new("ab1").unwrap()
    }

    #[test]
    fn erase_neutral_letter() {
        let h = Homomorphism::erasing(&ab1(), '1').unwrap();
        assert_eq!(h.apply_up(&UpWord::lit("1a1", "1b")).unwrap(), HomImage::Omega(UpWord::lit("a", "b")));
    }

    #[test]
    fn partial_and_total_erasure() {
        let ab = Alphabet::new("ab").unwrap();
        let mut img = BTreeMap::new();
        img.insert('a', FiniteWord::from("a"));
        img.insert('b', FiniteWord::empty());
        let h = Homomorphism::new(ab.clone(), ab.clone(), img).unwrap();
        assert_eq!(h.apply_up(&UpWord::lit("", "ab")).unwrap(), HomImage::Omega(UpWord::lit("", "a")));

        let mut img = BTreeMap::new();
        img.insert('a', FiniteWord::empty());
        img.insert('b', FiniteWord::empty());
        let h = Homomorphism::new(ab.clone(), ab, img).unwrap();
        assert_eq!(h.apply_up(&UpWord::lit("ab", "ab")).unwrap(), HomImage::Finite(FiniteWord::empty()));
    }

    #[test]
    fn block_images() {
        let b: BlockWord = "blocks(a,b;affine 1 0)".parse().unwrap();
        let erase = Homomorphism::erasing(&ab1(), '1').unwrap();
        assert_eq!(erase.apply_block(&b).unwrap(), OmegaWord::Block(b.clone()));

        let ab = Alphabet::new("ab").unwrap();
        let swap = Homomorphism::letter_map(ab.clone(), ab.clone(), &[('a', 'b'), ('b', 'a')]).unwrap();
        assert_eq!(swap.apply_block(&b).unwrap().to_string(), "blocks(b,a;affine 1 0)");
        let collapse = Homomorphism::letter_map(ab.clone(), ab.clone(), &[('a', 'a'), ('b', 'a')]).unwrap();
        assert_eq!(collapse.apply_block(&b).unwrap(), OmegaWord::Up(UpWord::lit("", "a")));

        let drop_b = Homomorphism::erasing(&ab, 'b').unwrap();
        assert!(matches!(drop_b.apply_block(&b), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rejects_incomplete_maps() {
        let ab = Alphabet::new("ab").unwrap();
        assert!(Homomorphism::letter_map(ab.clone(), ab, &[('a', 'a')]).is_err());
    }
}
