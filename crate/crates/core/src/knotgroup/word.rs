use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    A,
    B,
}

/// A generator or its inverse. The derived order (`a < a^-1 < b < b^-1`)
/// gives the lexicographic order on words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { gen: Generator::A, inverse: false };
    pub const A_INV: Letter = Letter { gen: Generator::A, inverse: true };
    pub const B: Letter = Letter { gen: Generator::B, inverse: false };
    pub const B_INV: Letter = Letter { gen: Generator::B, inverse: true };

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in `a, b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Reduces `letters` and wraps the result.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
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

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `self^k`; negative powers use the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        Word::new(base.0.iter().copied().cycle().take(base.len() * reps))
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        Word::new(self.0.iter().chain(rhs.0.iter()).copied())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match (l.gen, l.inverse) {
                (Generator::A, false) => "a",
                (Generator::A, true) => "a^-1",
                (Generator::B, false) => "b",
                (Generator::B, true) => "b^-1",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses the compact notation `a`, `b` for generators and `A`, `B` for
/// their inverses (whitespace ignored); `"1"` or `""` is the identity.
impl FromStr for Word {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '1')
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'A' => Ok(Letter::A_INV),
                'b' => Ok(Letter::B),
                'B' => Ok(Letter::B_INV),
                other => Err(format!("unexpected letter {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Word::new)
    }
}

/// `w = (b a^-1)^m (b^-1 a)^m`.
pub fn build_word_w(m: i64) -> Result<Word> {
    if m == 0 {
        return Err(Error::ZeroParameter);
    }
    let left = Word::new([Letter::B, Letter::A_INV]).pow(m);
    let right = Word::new([Letter::B_INV, Letter::A]).pow(m);
    Ok(&left * &right)
}

/// The letters of `u` in reverse order, each keeping its exponent.
pub fn reverse_word(u: &Word) -> Word {
    Word::new(u.0.iter().rev().copied())
}

/// Image of `u` under abelianisation `a, b -> t`.
pub fn exponent_sum(u: &Word) -> i32 {
    u.0.iter().map(|l| l.exponent()).sum()
}
