//! Pattern occurrences with position-adjacency (underlined) and
//! value-adjacency (overlined) constraints.
//!
//! Text syntax, as accepted by [`PatternDescriptor::from_str`]:
//!
//! ```text
//! <letters> [u<group>]... [o<group>]...
//! ```
//!
//! `letters` are the pattern digits (`k ≤ 4`). `u23` underlines pattern
//! positions 2 and 3, so they must be adjacent in the text; a longer group
//! such as `u123` chains the adjacency. `o2` overlines pattern values 2 and 3,
//! so the text letters matched to them must be consecutive integers; `o23` is
//! an equivalent spelling. Baxter avoidance is `3142 u23` and `2413 u23`, its
//! value-adjacent dual is `2413 o2` and `3142 o2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

pub const MAX_PATTERN_LEN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern letters {0:?} are not a permutation of 1..=k")]
    NotPermutation(String),
    #[error("patterns longer than {MAX_PATTERN_LEN} are not supported")]
    TooLong,
    #[error("adjacency marker {0} is outside 1..k")]
    BadAdjacency(usize),
    #[error("cannot parse pattern token {0:?}")]
    BadToken(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternDescriptor {
    letters: Vec<usize>,
    /// `t` present: pattern positions `t` and `t+1` occupy adjacent indices.
    pos_adjacent: BTreeSet<usize>,
    /// `v` present: the letters matched to values `v` and `v+1` differ by one.
    val_adjacent: BTreeSet<usize>,
}

impl PatternDescriptor {
    pub fn new(
        letters: Vec<usize>,
        pos_adjacent: impl IntoIterator<Item = usize>,
        val_adjacent: impl IntoIterator<Item = usize>,
    ) -> Result<Self, PatternError> {
        let k = letters.len();
        if k > MAX_PATTERN_LEN {
            return Err(PatternError::TooLong);
        }
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        if sorted != (1..=k).collect::<Vec<_>>() {
            return Err(PatternError::NotPermutation(format!("{letters:?}")));
        }
        let pos_adjacent: BTreeSet<usize> = pos_adjacent.into_iter().collect();
        let val_adjacent: BTreeSet<usize> = val_adjacent.into_iter().collect();
        for &t in pos_adjacent.iter().chain(&val_adjacent) {
            if t == 0 || t >= k {
                return Err(PatternError::BadAdjacency(t));
            }
        }
        Ok(PatternDescriptor {
            letters,
            pos_adjacent,
            val_adjacent,
        })
    }

    /// A classical pattern with no adjacency constraints.
    pub fn classical(letters: Vec<usize>) -> Result<Self, PatternError> {
        Self::new(letters, [], [])
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Walks every order-isomorphic, constraint-satisfying index tuple;
    /// `visit` returns false to stop early.
    fn search(&self, sigma: &Permutation, visit: &mut dyn FnMut() -> bool) {
        let k = self.letters.len();
        if k > sigma.len() {
            return;
        }
        // value_slot[v] = pattern position holding value v (1-based values)
        let mut value_slot = vec![0; k + 1];
        for (t, &v) in self.letters.iter().enumerate() {
            value_slot[v] = t;
        }
        let mut chosen = vec![0usize; k];
        self.extend(sigma, &value_slot, &mut chosen, 0, visit);
    }

    fn extend(
        &self,
        sigma: &Permutation,
        value_slot: &[usize],
        chosen: &mut [usize],
        t: usize,
        visit: &mut dyn FnMut() -> bool,
    ) -> bool {
        let k = self.letters.len();
        let n = sigma.len();
        if t == k {
            return visit();
        }
        let lo = if t == 0 { 1 } else { chosen[t - 1] + 1 };
        // leave room for the remaining k-t-1 positions
        let hi = n + 1 - (k - t);
        let range = if t > 0 && self.pos_adjacent.contains(&t) {
            lo..=lo.min(hi)
        } else {
            lo..=hi
        };
        for idx in range {
            if idx > hi {
                break;
            }
            let letter = sigma.at(idx);
            let pv = self.letters[t];
            let order_ok = (0..t).all(|u| {
                let other = sigma.at(chosen[u]);
                (self.letters[u] < pv) == (other < letter)
            });
            if !order_ok {
                continue;
            }
            chosen[t] = idx;
            let values_ok = self.val_adjacent.iter().all(|&v| {
                let (a, b) = (value_slot[v], value_slot[v + 1]);
                if a > t || b > t {
                    return true;
                }
                sigma.at(chosen[b]) == sigma.at(chosen[a]) + 1
            });
            if values_ok && !self.extend(sigma, value_slot, chosen, t + 1, visit) {
                return false;
            }
        }
        true
    }

    /// Number of occurrences of this pattern in `sigma`; 0 when `k > n`.
    pub fn count_occurrences(&self, sigma: &Permutation) -> u64 {
        let mut count = 0u64;
        self.search(sigma, &mut || {
            count += 1;
            true
        });
        count
    }

    pub fn occurs_in(&self, sigma: &Permutation) -> bool {
        let mut found = false;
        self.search(sigma, &mut || {
            found = true;
            false
        });
        found
    }
}

impl FromStr for PatternDescriptor {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let head = tokens.next().ok_or_else(|| PatternError::BadToken(s.to_string()))?;
        let letters = digits(head).ok_or_else(|| PatternError::BadToken(head.to_string()))?;
        let mut pos = Vec::new();
        let mut val = Vec::new();
        for tok in tokens {
            let (kind, rest) = tok.split_at(1);
            let group = digits(rest).ok_or_else(|| PatternError::BadToken(tok.to_string()))?;
            match kind {
                "u" => {
                    if group.len() < 2 || group.windows(2).any(|w| w[1] != w[0] + 1) {
                        return Err(PatternError::BadToken(tok.to_string()));
                    }
                    pos.extend(&group[..group.len() - 1]);
                }
                "o" => match group.len() {
                    1 => val.push(group[0]),
                    _ if group.windows(2).all(|w| w[1] == w[0] + 1) => {
                        val.extend(&group[..group.len() - 1])
                    }
                    _ => return Err(PatternError::BadToken(tok.to_string())),
                },
                _ => return Err(PatternError::BadToken(tok.to_string())),
            }
        }
        PatternDescriptor::new(letters, pos, val)
    }
}

fn digits(s: &str) -> Option<Vec<usize>> {
    if s.is_empty() {
        return None;
    }
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect()
}

impl fmt::Display for PatternDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.letters {
            write!(f, "{v}")?;
        }
        for &t in &self.pos_adjacent {
            write!(f, " u{}{}", t, t + 1)?;
        }
        for &v in &self.val_adjacent {
            write!(f, " o{v}")?;
        }
        Ok(())
    }
}

/// `3-14-2` and `2-41-3`: the middle pair must be adjacent.
pub fn baxter_patterns() -> [PatternDescriptor; 2] {
    [
        PatternDescriptor::new(vec![3, 1, 4, 2], [2], []).unwrap(),
        PatternDescriptor::new(vec![2, 4, 1, 3], [2], []).unwrap(),
    ]
}

/// `2̄41 3̄` and `3̄14 2̄`: values 2 and 3 must be consecutive integers.
pub fn baxter_dual_patterns() -> [PatternDescriptor; 2] {
    [
        PatternDescriptor::new(vec![2, 4, 1, 3], [], [2]).unwrap(),
        PatternDescriptor::new(vec![3, 1, 4, 2], [], [2]).unwrap(),
    ]
}

/// Avoids both `3-14-2` and `2-41-3`.
pub fn is_baxter(sigma: &Permutation) -> bool {
    // Direct scan over the adjacent middle pair; agrees with the generic
    // matcher on the descriptors from `baxter_patterns` (see tests).
    let n = sigma.len();
    for j in 2..n.saturating_sub(1) {
        let (b, c) = (sigma.at(j), sigma.at(j + 1));
        let (lo, hi) = if b < c { (b, c) } else { (c, b) };
        // 3-14-2 (b < c): some σ_i ∈ (lo, hi) before and σ_l ∈ (lo, σ_i) after.
        // 2-41-3 (b > c): some σ_i ∈ (lo, hi) before and σ_l ∈ (σ_i, hi) after.
        let before = (1..j).map(|i| sigma.at(i)).filter(|&v| lo < v && v < hi);
        for a in before {
            let found = (j + 2..=n).map(|l| sigma.at(l)).any(|d| {
                if b < c {
                    lo < d && d < a
                } else {
                    a < d && d < hi
                }
            });
            if found {
                return false;
            }
        }
    }
    true
}

/// Avoids both value-adjacent patterns `2̄41 3̄` and `3̄14 2̄`.
pub fn is_baxter_dual(sigma: &Permutation) -> bool {
    baxter_dual_patterns().iter().all(|d| !d.occurs_in(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_sn;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Brute force over all k-subsets of indices, independent of the matcher.
    fn oracle_count(d: &PatternDescriptor, s: &Permutation) -> u64 {
        let k = d.len();
        let n = s.len();
        let mut count = 0;
        let mut idx: Vec<usize> = (1..=k).collect();
        if k > n {
            return 0;
        }
        loop {
            let vals: Vec<usize> = idx.iter().map(|&i| s.at(i)).collect();
            let iso = (0..k).all(|a| (0..k).all(|b| (d.letters[a] < d.letters[b]) == (vals[a] < vals[b])));
            let pos_ok = d.pos_adjacent.iter().all(|&t| idx[t] == idx[t - 1] + 1);
            let val_ok = d.val_adjacent.iter().all(|&v| {
                let a = d.letters.iter().position(|&x| x == v).unwrap();
                let b = d.letters.iter().position(|&x| x == v + 1).unwrap();
                vals[b] == vals[a] + 1
            });
            if iso && pos_ok && val_ok {
                count += 1;
            }
            // next combination
            let mut t = k;
            while t > 0 && idx[t - 1] == n - k + t {
                t -= 1;
            }
            if t == 0 {
                return count;
            }
            idx[t - 1] += 1;
            for u in t..k {
                idx[u] = idx[u - 1] + 1;
            }
        }
    }

    #[test]
    fn underlined_example() {
        let d: PatternDescriptor = "4321 u12".parse().unwrap();
        assert_eq!(d, PatternDescriptor::new(vec![4, 3, 2, 1], [1], []).unwrap());
        assert_eq!(d.count_occurrences(&p("5 3 4 2 6 1")), 1);
        assert_eq!(PatternDescriptor::classical(vec![4, 3, 2, 1]).unwrap().count_occurrences(&p("5 3 4 2 6 1")), 2);
    }

    #[test]
    fn overlined_pattern_on_identity() {
        let d: PatternDescriptor = "2413 o2".parse().unwrap();
        assert_eq!(d, "2413 o23".parse().unwrap());
        for n in 0..=8 {
            assert_eq!(d.count_occurrences(&Permutation::identity(n)), 0);
        }
    }

    #[test]
    fn pattern_longer_than_text_counts_zero() {
        let d: PatternDescriptor = "3142".parse().unwrap();
        assert_eq!(d.count_occurrences(&p("2 1 3")), 0);
    }

    #[test]
    fn descriptor_validation() {
        assert!(PatternDescriptor::new(vec![1, 1], [], []).is_err());
        assert!(PatternDescriptor::new(vec![1, 2, 3, 4, 5], [], []).is_err());
        assert_eq!(
            PatternDescriptor::new(vec![1, 2], [2], []),
            Err(PatternError::BadAdjacency(2))
        );
        assert!("3142 u24".parse::<PatternDescriptor>().is_err());
        assert!("3142 x2".parse::<PatternDescriptor>().is_err());
        assert!("31a2".parse::<PatternDescriptor>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["3142 u23", "2413 o2", "4321 u12 u23", "123"] {
            let d: PatternDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string().parse::<PatternDescriptor>().unwrap(), d);
        }
    }

    #[test]
    fn matcher_agrees_with_subset_oracle() {
        let descs: Vec<PatternDescriptor> = ["3142 u23", "3142", "2413 o2", "4321 u12", "132 u12", "21 o1", "1324 u12 u34 o2"]
            .iter()
            .map(|t| t.parse().unwrap())
            .collect();
        for n in 0..=7 {
            for s in enumerate_sn(n).unwrap() {
                for d in &descs {
                    assert_eq!(d.count_occurrences(&s), oracle_count(d, &s), "{d} in {s}");
                }
            }
        }
    }

    #[test]
    fn vincular_count_bounded_by_classical() {
        let vin: PatternDescriptor = "3142 u12".parse().unwrap();
        let plain: PatternDescriptor = "3142".parse().unwrap();
        for s in enumerate_sn(7).unwrap() {
            assert!(vin.count_occurrences(&s) <= plain.count_occurrences(&s));
        }
    }

    #[test]
    fn baxter_examples() {
        assert!(is_baxter(&p("4 3 6 9 7 5 1 2 8")));
        assert!(!is_baxter(&p("4 2 1 7 3 8 5 6")));
        assert!(is_baxter_dual(&p("4 3 6 9 7 5 1 2 8")));
        assert!(!is_baxter_dual(&p("4 2 1 7 3 8 5 6")));
        for n in 0..=9 {
            assert!(is_baxter(&Permutation::identity(n)));
        }
        for s in enumerate_sn(3).unwrap() {
            assert!(is_baxter(&s) && is_baxter_dual(&s));
        }
    }

    #[test]
    fn fast_baxter_scan_matches_generic_matcher() {
        let pats = baxter_patterns();
        for n in 0..=8 {
            for s in enumerate_sn(n).unwrap() {
                let generic = pats.iter().all(|d| d.count_occurrences(&s) == 0);
                assert_eq!(is_baxter(&s), generic, "{s}");
            }
        }
    }

    #[test]
    fn baxter_is_closed_under_symmetries() {
        for n in 0..=8 {
            for s in enumerate_sn(n).unwrap() {
                let b = is_baxter(&s);
                assert_eq!(b, is_baxter(&s.inverse()), "{s}");
                assert_eq!(b, is_baxter(&s.reverse()), "{s}");
                assert_eq!(b, is_baxter(&s.complement()), "{s}");
            }
        }
    }
}
