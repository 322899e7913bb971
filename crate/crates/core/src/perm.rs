//! Permutations in one-line notation.
//!
//! Letters and indices are 1-based in every public function, so `σ_i` in a
//! formula is `sigma.at(i)` here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` for which [`enumerate_sn`] will stream `S_n`.
pub const ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("token {index} ({token:?}) is not an integer")]
    InvalidToken { index: usize, token: String },
    #[error("letter {letter} at token {index} is outside 1..={n}")]
    OutOfRange { index: usize, letter: i64, n: usize },
    #[error("letter {letter} appears twice (again at token {index})")]
    Duplicate { index: usize, letter: usize },
    #[error("letter {letter} is outside 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A permutation of `{1, …, n}` in one-line notation. The empty permutation
/// (`n = 0`) is allowed.
///
/// The derived ordering is lexicographic on the one-line word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=values.len()`.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (idx, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange {
                    index: idx + 1,
                    letter: v as i64,
                    n,
                });
            }
            if seen[v] {
                return Err(PermError::Duplicate {
                    index: idx + 1,
                    letter: v,
                });
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a permutation of `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok(), "{values:?}");
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `n, n-1, …, 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ_i` for `1 ≤ i ≤ n`. Panics outside that range.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// The index `i` with `σ_i = letter`, i.e. `σ⁻¹_letter`.
    pub fn position_of(&self, letter: usize) -> Result<usize, PermError> {
        if letter == 0 || letter > self.len() {
            return Err(PermError::LetterOutOfRange {
                letter,
                n: self.len(),
            });
        }
        Ok(self.0.iter().position(|&v| v == letter).unwrap() + 1)
    }

    /// Positions indexed by letter; entry 0 is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Maps index `i` to `n+1-i`.
    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Maps letter `ℓ` to `n+1-ℓ`.
    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(values: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Parses whitespace-separated letters, e.g. `"4 7 1 8 6 3 2 5"`.
pub fn parse_permutation(text: &str) -> Result<Permutation, PermError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let n = tokens.len();
    let mut values = Vec::with_capacity(n);
    let mut seen = vec![false; n + 1];
    for (idx, tok) in tokens.iter().enumerate() {
        let letter: i64 = tok.parse().map_err(|_| PermError::InvalidToken {
            index: idx + 1,
            token: tok.to_string(),
        })?;
        if letter < 1 || letter as u64 > n as u64 {
            return Err(PermError::OutOfRange {
                index: idx + 1,
                letter,
                n,
            });
        }
        let letter = letter as usize;
        if seen[letter] {
            return Err(PermError::Duplicate {
                index: idx + 1,
                letter,
            });
        }
        seen[letter] = true;
        values.push(letter);
    }
    Ok(Permutation(values))
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lexicographic stream over permutations sharing a fixed prefix.
#[derive(Clone, Debug)]
pub struct LexPermutations {
    current: Option<Vec<usize>>,
    fixed: usize,
}

impl LexPermutations {
    /// Rearranges `word[fixed..]` into the next permutation in lexicographic
    /// order; returns false when it was already the last one.
    fn advance(word: &mut [usize]) -> bool {
        let len = word.len();
        if len < 2 {
            return false;
        }
        let mut i = len - 1;
        while i > 0 && word[i - 1] >= word[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = len - 1;
        while word[j] <= word[i - 1] {
            j -= 1;
        }
        word.swap(i - 1, j);
        word[i..].reverse();
        true
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let word = self.current.as_mut()?;
        let out = Permutation(word.clone());
        if !Self::advance(&mut word[self.fixed..]) {
            self.current = None;
        }
        Some(out)
    }
}

fn check_cap(n: usize) -> Result<(), PermError> {
    if n > ENUMERATION_CAP {
        Err(PermError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

/// All of `S_n` in lexicographic order. `n = 0` yields the empty permutation.
pub fn enumerate_sn(n: usize) -> Result<LexPermutations, PermError> {
    check_cap(n)?;
    Ok(LexPermutations {
        current: Some((1..=n).collect()),
        fixed: 0,
    })
}

/// The block of `S_n` whose first letter is `first`, in lexicographic order.
/// Concatenating the blocks for `first = 1..=n` gives [`enumerate_sn`].
pub fn enumerate_sn_with_first(n: usize, first: usize) -> Result<LexPermutations, PermError> {
    check_cap(n)?;
    if first == 0 || first > n {
        return Err(PermError::LetterOutOfRange { letter: first, n });
    }
    let mut word = Vec::with_capacity(n);
    word.push(first);
    word.extend((1..=n).filter(|&v| v != first));
    Ok(LexPermutations {
        current: Some(word),
        fixed: 1,
    })
}

/// Independent lexicographic blocks covering `S_n`, in order. For `n = 0`
/// there is a single block holding the empty permutation.
pub fn partitions_sn(n: usize) -> Result<Vec<LexPermutations>, PermError> {
    check_cap(n)?;
    if n == 0 {
        return Ok(vec![enumerate_sn(0)?]);
    }
    (1..=n).map(|first| enumerate_sn_with_first(n, first)).collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_formats() {
        let sigma = p("4 7 1 8 6 3 2 5");
        assert_eq!(sigma.len(), 8);
        assert_eq!(sigma.to_string(), "4 7 1 8 6 3 2 5");
        assert_eq!(p("1").len(), 1);
        assert_eq!(p("").len(), 0);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(
            parse_permutation("2 2 1"),
            Err(PermError::Duplicate {
                index: 2,
                letter: 2
            })
        );
        assert!(matches!(
            parse_permutation("1 4 2"),
            Err(PermError::OutOfRange { index: 2, letter: 4, n: 3 })
        ));
        assert!(matches!(
            parse_permutation("0 1"),
            Err(PermError::OutOfRange { index: 1, .. })
        ));
        assert!(matches!(
            parse_permutation("1 x"),
            Err(PermError::InvalidToken { index: 2, .. })
        ));
        assert!(matches!(
            parse_permutation("-1 1"),
            Err(PermError::OutOfRange { index: 1, letter: -1, .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("2 3 1").inverse(), p("3 1 2"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("4 7 1 8 6 3 2 5").inverse(), p("3 7 6 1 8 5 2 4"));
    }

    #[test]
    fn reverse_and_complement_examples() {
        assert_eq!(p("1 2 3").reverse(), p("3 2 1"));
        assert_eq!(p("1 2 3").complement(), p("3 2 1"));
        assert_eq!(p("4 7 1 8 6 3 2 5").complement(), p("5 2 8 1 3 6 7 4"));
    }

    #[test]
    fn position_of_examples() {
        assert_eq!(p("4 7 1 8 6 3 2 5").position_of(8), Ok(4));
        assert_eq!(p("1").position_of(1), Ok(1));
        assert_eq!(p("3 1 2").position_of(2), Ok(3));
        assert!(p("3 1 2").position_of(4).is_err());
        assert!(p("3 1 2").position_of(0).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let s0: Vec<_> = enumerate_sn(0).unwrap().collect();
        assert_eq!(s0, vec![Permutation::identity(0)]);
        let s3: Vec<_> = enumerate_sn(3).unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], p("1 2 3"));
        assert_eq!(s3[5], p("3 2 1"));
        assert!(s3.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_sn(8).unwrap().count(), 40320);
        assert!(matches!(
            enumerate_sn(13),
            Err(PermError::CapExceeded { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn partitions_concatenate_to_full_enumeration() {
        for n in 0..=6 {
            let full: Vec<_> = enumerate_sn(n).unwrap().collect();
            let parts: Vec<_> = partitions_sn(n).unwrap().into_iter().flatten().collect();
            assert_eq!(full, parts);
        }
    }

    #[test]
    fn distinct_count_matches_factorial() {
        use std::collections::HashSet;
        for n in 0..=8 {
            let set: HashSet<_> = enumerate_sn(n).unwrap().collect();
            assert_eq!(set.len() as u64, factorial(n));
        }
    }

    #[test]
    fn symmetries_are_commuting_involutions() {
        for n in 0..=7 {
            for s in enumerate_sn(n).unwrap() {
                assert_eq!(s.inverse().inverse(), s);
                assert_eq!(s.reverse().reverse(), s);
                assert_eq!(s.complement().complement(), s);
                assert_eq!(s.reverse().complement(), s.complement().reverse());
                let inv = s.inverse();
                for i in 1..=n {
                    assert_eq!(inv.at(s.at(i)), i);
                }
            }
        }
    }

    #[test]
    fn serde_rejects_non_permutations() {
        let ok: Permutation = serde_json::from_str("[2,1,3]").unwrap();
        assert_eq!(ok, p("2 1 3"));
        assert!(serde_json::from_str::<Permutation>("[2,2,3]").is_err());
    }
}
