//! Words over the generator alphabet and their interpretation as partial
//! projective maps.
//!
//! A word is a sequence over `{A, B, C, c, a, b}` (plus `T`/`t` for the ray
//! variants, which never occur in rewriting) or the distinguished absorbing
//! word `0`. The empty word is the identity and prints as `1`. Words carry
//! the variant that fixes the semantics of `C`/`c`; operations on words from
//! different variants are rejected at the boundary.

use std::fmt;

use crate::error::ParseError;
use crate::projective::{make_generator, GeneratorName, Interval, PartialLft, Variant};

/// One letter of the generator alphabet. `Zero` only ever appears inside
/// rewrite-rule patterns and transient rewrite buffers, never in a
/// [`GenWord`] letter sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    UpperA,
    UpperB,
    UpperC,
    LowerC,
    LowerA,
    LowerB,
    UpperT,
    LowerT,
    Zero,
}

impl Letter {
    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'A' => Some(Letter::UpperA),
            'B' => Some(Letter::UpperB),
            'C' => Some(Letter::UpperC),
            'c' => Some(Letter::LowerC),
            'a' => Some(Letter::LowerA),
            'b' => Some(Letter::LowerB),
            'T' => Some(Letter::UpperT),
            't' => Some(Letter::LowerT),
            '0' => Some(Letter::Zero),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::UpperA => 'A',
            Letter::UpperB => 'B',
            Letter::UpperC => 'C',
            Letter::LowerC => 'c',
            Letter::LowerA => 'a',
            Letter::LowerB => 'b',
            Letter::UpperT => 'T',
            Letter::LowerT => 't',
            Letter::Zero => '0',
        }
    }

    /// The formally inverse letter (`A <-> a` and so on).
    pub fn inverse(self) -> Letter {
        match self {
            Letter::UpperA => Letter::LowerA,
            Letter::UpperB => Letter::LowerB,
            Letter::UpperC => Letter::LowerC,
            Letter::LowerC => Letter::UpperC,
            Letter::LowerA => Letter::UpperA,
            Letter::LowerB => Letter::UpperB,
            Letter::UpperT => Letter::LowerT,
            Letter::LowerT => Letter::UpperT,
            Letter::Zero => Letter::Zero,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::UpperA | Letter::UpperB)
    }

    pub fn is_c_like(self) -> bool {
        matches!(self, Letter::UpperC | Letter::LowerC)
    }

    pub fn generator(self) -> Option<GeneratorName> {
        match self {
            Letter::UpperA => Some(GeneratorName::A),
            Letter::UpperB => Some(GeneratorName::B),
            Letter::UpperC => Some(GeneratorName::C),
            Letter::LowerC => Some(GeneratorName::CInv),
            Letter::LowerA => Some(GeneratorName::AInv),
            Letter::LowerB => Some(GeneratorName::BInv),
            Letter::UpperT => Some(GeneratorName::T),
            Letter::LowerT => Some(GeneratorName::TInv),
            Letter::Zero => None,
        }
    }
}

/// A word over the generator alphabet, or the absorbing word `ZERO`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenWord {
    variant: Variant,
    content: WordContent,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum WordContent {
    Zero,
    Letters(Vec<Letter>),
}

impl GenWord {
    pub fn empty(variant: Variant) -> Self {
        GenWord {
            variant,
            content: WordContent::Letters(Vec::new()),
        }
    }

    pub fn zero(variant: Variant) -> Self {
        GenWord {
            variant,
            content: WordContent::Zero,
        }
    }

    /// Builds a word from letters. Panics if `Zero` appears in the sequence;
    /// the absorbing word is a whole-word state, not a letter.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>, variant: Variant) -> Self {
        let letters: Vec<Letter> = letters.into_iter().collect();
        assert!(
            !letters.contains(&Letter::Zero),
            "`0` is a whole-word state, not a letter"
        );
        GenWord {
            variant,
            content: WordContent::Letters(letters),
        }
    }

    /// Parses the bit-exact word syntax: one ASCII letter per generator,
    /// `0` alone for the absorbing word, `1` alone or the empty string for
    /// the identity word.
    pub fn parse(text: &str, variant: Variant) -> Result<Self, ParseError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(GenWord::empty(variant));
        }
        if text == "0" {
            return Ok(GenWord::zero(variant));
        }
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            if ch == '0' || ch == '1' {
                return Err(ParseError::MixedZeroOrOne);
            }
            match Letter::from_char(ch) {
                Some(l) if l != Letter::Zero => letters.push(l),
                _ => return Err(ParseError::IllegalLetter(ch)),
            }
        }
        Ok(GenWord::from_letters(letters, variant))
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.content, WordContent::Zero)
    }

    pub fn is_empty(&self) -> bool {
        matches!(&self.content, WordContent::Letters(ls) if ls.is_empty())
    }

    /// The letter sequence; `None` for the absorbing word.
    pub fn letters(&self) -> Option<&[Letter]> {
        match &self.content {
            WordContent::Zero => None,
            WordContent::Letters(ls) => Some(ls),
        }
    }

    pub fn len(&self) -> usize {
        self.letters().map_or(0, <[Letter]>::len)
    }

    /// Concatenation; the absorbing word annihilates.
    pub fn concat(&self, rhs: &GenWord) -> GenWord {
        assert_eq!(self.variant, rhs.variant, "cross-variant concatenation");
        match (self.letters(), rhs.letters()) {
            (Some(l), Some(r)) => {
                GenWord::from_letters(l.iter().chain(r.iter()).copied(), self.variant)
            }
            _ => GenWord::zero(self.variant),
        }
    }

    /// The formal inverse: letters inverted and reversed.
    pub fn inverse(&self) -> GenWord {
        match self.letters() {
            None => GenWord::zero(self.variant),
            Some(ls) => {
                GenWord::from_letters(ls.iter().rev().map(|l| l.inverse()), self.variant)
            }
        }
    }

    /// `C^k` as a word (negative exponents written with `c`).
    pub fn c_power(k: i64, variant: Variant) -> GenWord {
        let letter = if k >= 0 { Letter::UpperC } else { Letter::LowerC };
        GenWord::from_letters(std::iter::repeat(letter).take(k.unsigned_abs() as usize), variant)
    }

    /// Count of `C`/`c` occurrences (the combined exponent).
    pub fn c_count(&self) -> usize {
        self.letters()
            .map_or(0, |ls| ls.iter().filter(|l| l.is_c_like()).count())
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.content {
            WordContent::Zero => write!(f, "0"),
            WordContent::Letters(ls) if ls.is_empty() => write!(f, "1"),
            WordContent::Letters(ls) => {
                for l in ls {
                    write!(f, "{}", l.to_char())?;
                }
                Ok(())
            }
        }
    }
}

/// Interprets a letter sequence as a composite of generator maps, leftmost
/// letter acting last. An empty sequence yields the identity on `ambient`.
pub fn letters_semantics(letters: &[Letter], variant: Variant, ambient: Interval) -> PartialLft {
    let mut acc: Option<PartialLft> = None;
    for letter in letters.iter().rev() {
        let map = match letter.generator() {
            Some(name) => make_generator(name, variant),
            None => PartialLft::Zero,
        };
        acc = Some(match acc {
            None => map,
            Some(prev) => map.compose(&prev),
        });
    }
    acc.unwrap_or_else(|| PartialLft::identity_on(ambient))
}

/// Left-to-right composition of the generator maps of `w` as partial maps.
///
/// The absorbing word and empty-overlap compositions give the empty map; the
/// empty word gives the identity on `[0, 1)`.
pub fn word_semantics(w: &GenWord, variant: Variant) -> PartialLft {
    assert_eq!(w.variant(), variant, "variant mismatch");
    match w.letters() {
        None => PartialLft::Zero,
        Some(ls) => letters_semantics(ls, variant, Interval::unit()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{ExtRational, ProjMatrix};

    fn w2(text: &str) -> GenWord {
        GenWord::parse(text, Variant::N2).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        assert_eq!(w2("CAB").to_string(), "CAB");
        assert_eq!(w2("0").to_string(), "0");
        assert_eq!(w2("1").to_string(), "1");
        assert_eq!(w2("").to_string(), "1");
        assert!(matches!(
            GenWord::parse("CxB", Variant::N2),
            Err(ParseError::IllegalLetter('x'))
        ));
        assert!(matches!(
            GenWord::parse("A0", Variant::N2),
            Err(ParseError::MixedZeroOrOne)
        ));
    }

    #[test]
    fn semantics_of_zero_products() {
        assert!(word_semantics(&w2("aB"), Variant::N2).is_zero());
        assert!(word_semantics(&w2("bA"), Variant::N2).is_zero());
        assert!(word_semantics(&w2("0"), Variant::N2).is_zero());
    }

    #[test]
    fn empty_word_is_identity_on_unit() {
        let id = word_semantics(&w2(""), Variant::N2);
        assert_eq!(id, PartialLft::identity_on(Interval::unit()));
    }

    #[test]
    fn interval_fixtures() {
        let aba = word_semantics(&w2("ABA"), Variant::N2);
        assert_eq!(
            aba.image_interval().unwrap(),
            Interval::new(ExtRational::new(1, 3), ExtRational::new(2, 5))
        );
        let ba = word_semantics(&w2("BA"), Variant::N2);
        assert_eq!(
            ba.image_interval().unwrap(),
            Interval::new(ExtRational::new(1, 2), ExtRational::new(2, 3))
        );
    }

    #[test]
    fn cab_equals_bac_as_partial_maps() {
        let lhs = word_semantics(&w2("CAB"), Variant::N2);
        let rhs = word_semantics(&w2("BAc"), Variant::N2);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn inverse_word_inverts_map() {
        let w = w2("ACB");
        let m = word_semantics(&w, Variant::N2);
        let minv = word_semantics(&w.inverse(), Variant::N2);
        assert_eq!(m.inverse().unwrap(), minv);
    }

    #[test]
    fn c_power_word() {
        let w = GenWord::c_power(-3, Variant::N2);
        assert_eq!(w.to_string(), "ccc");
        let m = word_semantics(&w, Variant::N2);
        let c = make_generator(GeneratorName::C, Variant::N2);
        assert_eq!(m.matrix().unwrap(), &c.matrix().unwrap().pow(-3));
        assert_eq!(m.matrix().unwrap(), &ProjMatrix::new(1, 0, -7, 8));
    }
}
