use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One generator occurrence, `name` or `name^-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<String>, inverse: bool) -> Self {
        Letter {
            generator: generator.into(),
            inverse,
        }
    }

    pub fn inverted(&self) -> Self {
        Letter {
            generator: self.generator.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A word in a free group, stored as a list of signed letters.
///
/// Equality is structural; call [`Word::free_reduce`] (or build through
/// the multiplication operators, which reduce) to compare group elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from raw letters without reducing it.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(name: impl Into<String>) -> Self {
        Word {
            letters: vec![Letter::new(name, false)],
        }
    }

    /// `name^exponent` as a reduced word.
    pub fn power_of(name: &str, exponent: i64) -> Self {
        let inverse = exponent < 0;
        let letters = (0..exponent.unsigned_abs())
            .map(|_| Letter::new(name, inverse))
            .collect();
        Word { letters }
    }

    /// Product of the given generators in order.
    pub fn product_of<S: AsRef<str>>(names: &[S]) -> Self {
        Word {
            letters: names
                .iter()
                .map(|n| Letter::new(n.as_ref(), false))
                .collect(),
        }
    }

    /// The commutator `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        (a * b * a.inverse() * b.inverse()).free_reduce()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverted).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        Word { letters }.free_reduce()
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            match out.last() {
                Some(top) if top.cancels(letter) => {
                    out.pop();
                }
                _ => out.push(letter.clone()),
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Replaces every occurrence of `generator` by the empty word.
    pub fn kill(&self, generator: &str) -> Self {
        Word {
            letters: self
                .letters
                .iter()
                .filter(|l| l.generator != generator)
                .cloned()
                .collect(),
        }
        .free_reduce()
    }

    /// Exponent sum of `generator` in this word.
    pub fn exponent_sum(&self, generator: &str) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|l| l.generator.as_str())
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(rhs.letters.iter().cloned());
        Word { letters }.free_reduce()
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl Mul<&Word> for Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        &self * rhs
    }
}

impl Mul<Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self * &rhs
    }
}

/// Terms are separated by spaces; consecutive equal letters collapse to
/// `name^k`. The empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let letter = &self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == *letter {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = if letter.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "{}", letter.generator)?;
            } else {
                write!(f, "{}^{}", letter.generator, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

pub(crate) fn is_generator_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

crate::intser::serde_as_text!(Word);

/// Grammar: `word := term+ ; term := name | name "^" int`, terms separated
/// by whitespace. `1` (or an empty string) is the empty word. The parsed
/// word is not reduced.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for term in s.split_whitespace() {
            let (name, exp) = match term.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp.parse().map_err(|_| Error::parse("word", term))?;
                    (name, exp)
                }
                None => (term, 1),
            };
            if !is_generator_name(name) {
                return Err(Error::parse("word", term));
            }
            let inverse = exp < 0;
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(name, inverse));
            }
        }
        Ok(Word { letters })
    }
}
