use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Word;

/// Finite integral combination of reduced words, an element of `Z[F(a, b)]`.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic in the
/// words and output is reproducible. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(u: Word) -> Self {
        Self::term(u, 1)
    }

    pub fn term(u: Word, coeff: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(u, coeff);
        e
    }

    pub fn add_term(&mut self, u: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(u) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &Word) -> i64 {
        self.terms.get(u).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// `u * self`.
    pub fn left_mul(&self, u: &Word) -> Self {
        let mut out = Self::zero();
        for (v, c) in self.iter() {
            out.add_term(u * v, c);
        }
        out
    }

    /// `self * u`.
    pub fn right_mul(&self, u: &Word) -> Self {
        let mut out = Self::zero();
        for (v, c) in self.iter() {
            out.add_term(v * u, c);
        }
        out
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (u, c) in rhs.iter() {
            out.add_term(u.clone(), c);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, c) in self.iter() {
            for (v, d) in rhs.iter() {
                out.add_term(u * v, c * d);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(w, c)| format!("{c}*[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `delta_k(u) = 1 + u + ... + u^k`.
///
/// Extended to all integers by `delta_k(u) = (u^{k+1} - 1)/(u - 1)`:
/// `delta_{-1} = 0` and `delta_k(u) = -(u^-1 + ... + u^{k+1})` for `k <= -2`.
pub fn geometric_sum(u: &Word, k: i64) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    if k >= 0 {
        for i in 0..=k {
            out.add_term(u.pow(i), 1);
        }
    } else {
        for i in (k + 1)..=-1 {
            out.add_term(u.pow(i), -1);
        }
    }
    out
}
