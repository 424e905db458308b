//! Reduced words in a free group on generators `a, b, c, ...`; an
//! uppercase letter is the inverse of its lowercase generator.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::Group;

/// Largest supported rank; generators are the letters `a..=z`.
pub const MAX_RANK: usize = 26;

/// A freely reduced word; `+k` is generator `k` (from 1), `-k` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    /// Reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            debug_assert!(l != 0);
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn generator(k: usize) -> Self {
        FreeWord { letters: vec![k as i32] }
    }

    /// Parses letters of the first `rank` generators; whitespace is ignored.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            let (k, sign) = match ch {
                'a'..='z' => (ch as i32 - 'a' as i32 + 1, 1),
                'A'..='Z' => (ch as i32 - 'A' as i32 + 1, -1),
                _ => return Err(Error::Parse(format!("letter {ch:?} in word {s:?}"))),
            };
            if k as usize > rank {
                return Err(Error::Parse(format!("letter {ch:?} outside rank {rank} in word {s:?}")));
            }
            letters.push(sign * k);
        }
        Ok(FreeWord::from_letters(letters))
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn power(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// `u w u^-1`.
    pub fn conjugate_by(&self, u: &FreeWord) -> FreeWord {
        u.mul(self).mul(&u.inverse())
    }

    /// Exponent sum of each of the first `rank` generators.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut s = vec![0i64; rank.max(self.max_generator())];
        for &l in &self.letters {
            s[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        s
    }

    /// Membership in the commutator subgroup: all exponent sums vanish.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.exponent_sums(0).iter().all(|&e| e == 0)
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.letters {
            let base = if l > 0 { b'a' } else { b'A' };
            write!(f, "{}", (base + (l.unsigned_abs() - 1) as u8) as char)?;
        }
        Ok(())
    }
}

/// The free group of a given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::empty()
    }

    fn compose(&self, a: &FreeWord, b: &FreeWord) -> Result<FreeWord> {
        Ok(a.mul(b))
    }

    fn invert(&self, a: &FreeWord) -> Result<FreeWord> {
        Ok(a.inverse())
    }

    fn power(&self, a: &FreeWord, k: i64) -> Result<FreeWord> {
        Ok(a.power(k))
    }

    fn is_identity(&self, a: &FreeWord) -> bool {
        a.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 3).unwrap()
    }

    #[test]
    fn reduction_and_display() {
        assert_eq!(w("aA").to_string(), "e");
        assert_eq!(w("ab Ba c").to_string(), "aac");
        assert_eq!(w("abAB").inverse(), w("baBA"));
        assert_eq!(FreeWord::commutator(&w("a"), &w("b")), w("abAB"));
        assert!(FreeWord::parse("d", 3).is_err());
        assert!(FreeWord::parse("a1", 3).is_err());
    }

    #[test]
    fn commutator_membership() {
        assert!(w("aBAb").in_commutator_subgroup());
        assert!(!w("ab").in_commutator_subgroup());
        assert!(w("aabAAB").in_commutator_subgroup());
        assert!(w("").in_commutator_subgroup());
    }
}
