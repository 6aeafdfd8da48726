//! Generator alphabets and words in free groups.
//!
//! Words are stored verbatim. Reduction is always an explicit call to
//! [`Word::free_reduce`], because square boundaries are positional: corner
//! `i` of a square sits between letters `i - 1` and `i`, and an automatic
//! reduction would shift those positions.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::morse::WeightSystem;

/// Index of a generator inside an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub usize);

/// Ordered set of generator names with unique entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, GenId>,
}

/// `letters` followed by optional `digits`, e.g. `a`, `b12`, `xy3`.
pub fn is_valid_generator_name(name: &str) -> bool {
    let alpha = name.chars().take_while(|c| c.is_ascii_alphabetic()).count();
    alpha > 0 && name[alpha..].chars().all(|c| c.is_ascii_digit())
}

/// Splits a generator name into its alphabetic stem and numeric suffix.
pub fn split_stem(name: &str) -> (&str, Option<u32>) {
    let alpha = name.chars().take_while(|c| c.is_ascii_alphabetic()).count();
    let (stem, digits) = name.split_at(alpha);
    (stem, digits.parse().ok())
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut alphabet = Self::new();
        for name in names {
            alphabet.push(name.as_ref())?;
        }
        Ok(alphabet)
    }

    /// Appends a generator, rejecting duplicates and malformed names.
    pub fn push(&mut self, name: &str) -> Result<GenId> {
        if !is_valid_generator_name(name) {
            return Err(Error::InvalidGeneratorName(name.to_string()));
        }
        if self.lookup.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let id = GenId(self.names.len());
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<GenId> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.names.len()).map(GenId)
    }

    /// Parses a word literal against this alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, sign) = split_letter_token(token)?;
            let gen = self
                .get(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            letters.push(Letter { gen, sign });
        }
        Ok(Word(letters))
    }
}

/// Splits one token such as `a1`, `a1^-1`, `a1-` or `a1⁻¹` into name and sign.
pub fn split_letter_token(token: &str) -> Result<(&str, Sign)> {
    let (name, sign) = if let Some(stripped) = token.strip_suffix("^-1") {
        (stripped, Sign::Neg)
    } else if let Some(stripped) = token.strip_suffix("⁻¹") {
        (stripped, Sign::Neg)
    } else if let Some(stripped) = token.strip_suffix('-') {
        (stripped, Sign::Neg)
    } else {
        (token, Sign::Pos)
    };
    if !is_valid_generator_name(name) {
        return Err(Error::InvalidLetter(token.to_string()));
    }
    Ok((name, sign))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: GenId) -> Self {
        Letter { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: GenId) -> Self {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A finite sequence of letters. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse and flip every sign.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The unique freely reduced representative (stack-based cancellation).
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &letter in &self.0 {
            match out.last() {
                Some(&top) if top.cancels(letter) => {
                    out.pop();
                }
                _ => out.push(letter),
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|pair| !pair[0].cancels(pair[1]))
    }

    /// Reduced, and the last letter does not cancel the first.
    pub fn is_cyclically_reduced(&self) -> bool {
        if !self.is_reduced() {
            return false;
        }
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) if self.len() > 1 => !last.cancels(first),
            _ => true,
        }
    }

    /// Sum over letters of `sign * weight(generator)`.
    pub fn signed_weight(&self, weights: &WeightSystem) -> Result<i64> {
        self.0.iter().try_fold(0i64, |acc, letter| {
            let w = weights
                .get(letter.gen)
                .ok_or(Error::AlphabetMismatch(letter.gen.0))?;
            Ok(acc + letter.sign.as_i64() * w)
        })
    }

    /// Word cyclically rotated to start at letter `start`.
    pub fn rotated(&self, start: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return Word::empty();
        }
        Word((0..n).map(|i| self.0[(start + i) % n]).collect())
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.0.iter().map(|l| l.gen)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(letter.gen))?;
            if letter.sign == Sign::Neg {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alphabet() -> Alphabet {
        Alphabet::from_names(["a", "b", "a0", "a1", "a4"]).unwrap()
    }

    #[test]
    fn cancels_adjacent_pair() {
        let abc = alphabet();
        let w = abc.parse_word("a a^-1 b").unwrap();
        assert_eq!(w.free_reduce(), abc.parse_word("b").unwrap());
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(Word::empty().free_reduce(), Word::empty());
        assert!(alphabet().parse_word("   ").unwrap().is_empty());
    }

    #[test]
    fn reduced_word_untouched() {
        let abc = alphabet();
        let w = abc.parse_word("a1 a0 a1^-1 a4^-1").unwrap();
        assert_eq!(w.free_reduce(), w);
        assert!(w.is_cyclically_reduced());
    }

    #[test]
    fn accepts_all_inverse_spellings() {
        let abc = alphabet();
        let w1 = abc.parse_word("a1 a0- a4^-1 b⁻¹").unwrap();
        assert_eq!(w1.display(&abc).to_string(), "a1 a0^-1 a4^-1 b^-1");
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        let abc = alphabet();
        assert!(matches!(
            abc.parse_word("c"),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(matches!(
            abc.parse_word("1a"),
            Err(Error::InvalidLetter(_))
        ));
        assert!(matches!(
            Alphabet::from_names(["a", "a"]),
            Err(Error::DuplicateGenerator(_))
        ));
        assert!(Alphabet::from_names(["a_1"]).is_err());
    }

    #[test]
    fn cyclic_cancellation_detected() {
        let abc = alphabet();
        assert!(!abc.parse_word("a b a b^-1 a^-1").unwrap().is_cyclically_reduced());
        assert!(!abc.parse_word("a a^-1 b b").unwrap().is_cyclically_reduced());
    }

    #[test]
    fn signed_weight_examples() {
        let abc = Alphabet::from_names(["a0", "a1", "a4", "b0", "b2"]).unwrap();
        let all_m = WeightSystem::new(vec![3, 3, 3, 5, 5]);
        let w = abc.parse_word("a1 a0 a1^-1 a4^-1").unwrap();
        assert_eq!(w.signed_weight(&all_m).unwrap(), 0);

        let mixed = WeightSystem::new(vec![2, 2, 2, 3, 3]);
        let r = abc.parse_word("a0 b2 a1^-1 b0^-1").unwrap();
        assert_eq!(r.signed_weight(&mixed).unwrap(), 0);
        assert_eq!(abc.parse_word("a0").unwrap().signed_weight(&mixed).unwrap(), 2);

        let short = WeightSystem::new(vec![1]);
        assert!(matches!(
            r.signed_weight(&short),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..24).prop_map(|v| {
            v.into_iter()
                .map(|(g, neg)| Letter {
                    gen: GenId(g),
                    sign: if neg { Sign::Neg } else { Sign::Pos },
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn reduction_idempotent(w in arb_word()) {
            let once = w.free_reduce();
            prop_assert_eq!(once.free_reduce(), once.clone());
            prop_assert!(once.len() <= w.len());
            prop_assert!(once.is_reduced());
        }

        #[test]
        fn word_times_inverse_is_trivial(w in arb_word()) {
            prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        }

        #[test]
        fn weight_is_additive_and_reduction_invariant(
            u in arb_word(),
            v in arb_word(),
            ws in prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 3),
        ) {
            let ws = WeightSystem::new(ws);
            let uv = u.concat(&v);
            prop_assert_eq!(
                uv.signed_weight(&ws).unwrap(),
                u.signed_weight(&ws).unwrap() + v.signed_weight(&ws).unwrap()
            );
            prop_assert_eq!(
                uv.free_reduce().signed_weight(&ws).unwrap(),
                uv.signed_weight(&ws).unwrap()
            );
        }
    }
}
