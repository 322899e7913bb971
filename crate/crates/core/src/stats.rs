//! Coordinate and aggregate permutation statistics.
//!
//! Every statistic is the literal set-builder evaluated in `O(n²)`; at the
//! sizes this crate works with the definition is its own oracle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatError {
    #[error("coordinate {index} is outside 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("{0} has no coordinate form")]
    NoCoordinate(CrossNestKind),
    #[error("unknown statistic {0:?}")]
    Unknown(String),
}

/// The four vincular statistics, named by the pattern they count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VincularStatId {
    /// `2-13`
    S213,
    /// `2-31`
    S231,
    /// `31-2`
    S312,
    /// `13-2`
    S132,
}

impl VincularStatId {
    pub const ALL: [VincularStatId; 4] = [
        VincularStatId::S213,
        VincularStatId::S231,
        VincularStatId::S312,
        VincularStatId::S132,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VincularStatId::S213 => "2-13",
            VincularStatId::S231 => "2-31",
            VincularStatId::S312 => "31-2",
            VincularStatId::S132 => "13-2",
        }
    }
}

impl fmt::Display for VincularStatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VincularStatId {
    type Err = StatError;

    /// Accepts `213`, `2-13`, `s213` and similar spellings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        match digits.as_str() {
            "213" => Ok(VincularStatId::S213),
            "231" => Ok(VincularStatId::S231),
            "312" => Ok(VincularStatId::S312),
            "132" => Ok(VincularStatId::S132),
            _ => Err(StatError::Unknown(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossNestKind {
    Cros,
    Nest,
    Ecr,
    Ucr,
    Lcr,
    Ene,
    Une,
    Lne,
    EneTilde,
    NestTilde,
}

impl CrossNestKind {
    pub const ALL: [CrossNestKind; 10] = [
        CrossNestKind::Cros,
        CrossNestKind::Nest,
        CrossNestKind::Ecr,
        CrossNestKind::Ucr,
        CrossNestKind::Lcr,
        CrossNestKind::Ene,
        CrossNestKind::Une,
        CrossNestKind::Lne,
        CrossNestKind::EneTilde,
        CrossNestKind::NestTilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossNestKind::Cros => "cros",
            CrossNestKind::Nest => "nest",
            CrossNestKind::Ecr => "ecr",
            CrossNestKind::Ucr => "ucr",
            CrossNestKind::Lcr => "lcr",
            CrossNestKind::Ene => "ene",
            CrossNestKind::Une => "une",
            CrossNestKind::Lne => "lne",
            CrossNestKind::EneTilde => "ene-tilde",
            CrossNestKind::NestTilde => "nest-tilde",
        }
    }
}

impl fmt::Display for CrossNestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CrossNestKind {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CrossNestKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| StatError::Unknown(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetStatKind {
    Aba,
    Dtb,
    EneSet,
    EneTildeSet,
}

impl SetStatKind {
    pub const ALL: [SetStatKind; 4] = [
        SetStatKind::Aba,
        SetStatKind::Dtb,
        SetStatKind::EneSet,
        SetStatKind::EneTildeSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetStatKind::Aba => "aba",
            SetStatKind::Dtb => "dtb",
            SetStatKind::EneSet => "ene-set",
            SetStatKind::EneTildeSet => "ene-tilde-set",
        }
    }
}

impl fmt::Display for SetStatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetStatKind {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetStatKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| StatError::Unknown(s.to_string()))
    }
}

fn check_coord(index: usize, n: usize) -> Result<(), StatError> {
    if index == 0 || index > n {
        Err(StatError::OutOfRange { index, n })
    } else {
        Ok(())
    }
}

/// Coordinate statistic with `letter` playing the role of the pattern's `2`;
/// `pos` is `σ⁻¹_letter`.
fn vincular_at(id: VincularStatId, letter: usize, pos: usize, s: &Permutation) -> usize {
    let n = s.len();
    let l = letter;
    match id {
        // pos < j < n, σ_j < ℓ < σ_{j+1}
        VincularStatId::S213 => (pos + 1..n)
            .filter(|&j| s.at(j) < l && l < s.at(j + 1))
            .count(),
        // pos < j < n, σ_{j+1} < ℓ < σ_j
        VincularStatId::S231 => (pos + 1..n)
            .filter(|&j| s.at(j + 1) < l && l < s.at(j))
            .count(),
        // 1 < j < pos, σ_j < ℓ < σ_{j-1}
        VincularStatId::S312 => (2..pos)
            .filter(|&j| s.at(j) < l && l < s.at(j - 1))
            .count(),
        // 1 < j < pos, σ_{j-1} < ℓ < σ_j
        VincularStatId::S132 => (2..pos)
            .filter(|&j| s.at(j - 1) < l && l < s.at(j))
            .count(),
    }
}

pub fn vincular_coord(
    id: VincularStatId,
    letter: usize,
    sigma: &Permutation,
) -> Result<usize, StatError> {
    check_coord(letter, sigma.len())?;
    let pos = sigma.position_of(letter).expect("letter checked");
    Ok(vincular_at(id, letter, pos, sigma))
}

/// All coordinates at once, indexed by letter (entry 0 unused).
pub fn vincular_coords(id: VincularStatId, sigma: &Permutation) -> Vec<usize> {
    let pos = sigma.positions();
    let mut out = vec![0; sigma.len() + 1];
    for letter in 1..=sigma.len() {
        out[letter] = vincular_at(id, letter, pos[letter], sigma);
    }
    out
}

pub fn vincular_total(id: VincularStatId, sigma: &Permutation) -> usize {
    vincular_coords(id, sigma).iter().sum()
}

/// `cros(i,σ)` or `nest(i,σ)`; `i` is an index.
pub fn crossnest_coord(
    kind: CrossNestKind,
    i: usize,
    sigma: &Permutation,
) -> Result<usize, StatError> {
    let n = sigma.len();
    check_coord(i, n)?;
    let s = |k: usize| sigma.at(k);
    let si = s(i);
    match kind {
        CrossNestKind::Cros => Ok((1..=n)
            .filter(|&j| (j < i && i <= s(j) && s(j) < si) || (j > i && i > s(j) && s(j) > si))
            .count()),
        CrossNestKind::Nest => Ok((1..=n)
            .filter(|&j| (j < i && i <= si && si < s(j)) || (j > i && i > si && si > s(j)))
            .count()),
        other => Err(StatError::NoCoordinate(other)),
    }
}

fn count_pairs(sigma: &Permutation, pred: impl Fn(usize, usize, usize, usize) -> bool) -> usize {
    let n = sigma.len();
    let mut count = 0;
    for i in 1..=n {
        for j in 1..=n {
            if pred(i, j, sigma.at(i), sigma.at(j)) {
                count += 1;
            }
        }
    }
    count
}

pub fn crossnest_total(kind: CrossNestKind, sigma: &Permutation) -> usize {
    let n = sigma.len();
    match kind {
        CrossNestKind::Cros | CrossNestKind::Nest => (1..=n)
            .map(|i| crossnest_coord(kind, i, sigma).expect("index in range"))
            .sum(),
        CrossNestKind::Ecr => count_pairs(sigma, |i, j, si, sj| i < j && j <= si && si < sj && sj == n),
        CrossNestKind::Ucr => count_pairs(sigma, |i, j, si, sj| i < j && j <= si && si < sj && sj < n),
        CrossNestKind::Lcr => count_pairs(sigma, |i, j, si, sj| i > j && j > si && si > sj),
        CrossNestKind::Ene => count_pairs(sigma, |i, j, si, sj| i < j && j <= sj && sj < si && si == n),
        CrossNestKind::Une => count_pairs(sigma, |i, j, si, sj| i < j && j <= sj && sj < si && si < n),
        CrossNestKind::Lne => count_pairs(sigma, |i, j, si, sj| i > j && j > sj && sj > si),
        CrossNestKind::EneTilde => {
            count_pairs(sigma, |i, j, si, sj| sj < j && j < i && i <= si && si == n)
        }
        CrossNestKind::NestTilde => {
            crossnest_total(CrossNestKind::EneTilde, sigma)
                + crossnest_total(CrossNestKind::Une, sigma)
                + crossnest_total(CrossNestKind::Lne, sigma)
        }
    }
}

/// Set-valued statistics, returned sorted ascending.
pub fn set_stat(kind: SetStatKind, sigma: &Permutation) -> Vec<usize> {
    let n = sigma.len();
    let s = |k: usize| sigma.at(k);
    let mut out: Vec<usize> = match kind {
        SetStatKind::Aba => (1..n)
            .filter(|&i| s(n) < s(i) && s(i) < s(i + 1))
            .map(s)
            .collect(),
        SetStatKind::Dtb => (1..n)
            .filter(|&i| s(i + 1) < s(i) && s(i) < s(n))
            .map(s)
            .collect(),
        SetStatKind::EneSet => (1..=n)
            .filter(|&j| (1..=n).any(|i| i < j && j <= s(j) && s(j) < s(i) && s(i) == n))
            .collect(),
        SetStatKind::EneTildeSet => (1..=n)
            .filter(|&j| (1..=n).any(|i| s(j) < j && j < i && i <= s(i) && s(i) == n))
            .collect(),
    };
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_sn;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Row of a coordinate statistic laid out under the letters of `sigma`.
    fn row(sigma: &Permutation, f: impl Fn(usize) -> usize) -> Vec<usize> {
        sigma.values().iter().map(|&v| f(v)).collect()
    }

    #[test]
    fn worked_example_rows() {
        let sigma = p("4 7 1 8 6 3 2 5");
        let r312 = row(&sigma, |l| vincular_coord(VincularStatId::S312, l, &sigma).unwrap());
        let r231 = row(&sigma, |l| vincular_coord(VincularStatId::S231, l, &sigma).unwrap());
        assert_eq!(r312, vec![0, 0, 0, 0, 1, 1, 1, 2]);
        assert_eq!(r231, vec![2, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(vincular_coord(VincularStatId::S312, 5, &sigma), Ok(2));
        assert_eq!(vincular_coord(VincularStatId::S231, 4, &sigma), Ok(2));
        assert_eq!(vincular_total(VincularStatId::S312, &sigma), 5);
        assert_eq!(vincular_total(VincularStatId::S231, &sigma), 3);

        let tau = p("5 7 1 4 8 2 6 3");
        let rc = row(&tau, |i| crossnest_coord(CrossNestKind::Cros, i, &tau).unwrap());
        let rn = row(&tau, |i| crossnest_coord(CrossNestKind::Nest, i, &tau).unwrap());
        assert_eq!(rc, vec![2, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(rn, vec![0, 1, 0, 2, 0, 0, 0, 0]);
        // The column headed by τ-value 5 is cros(5,τ); cros(1,τ) itself is 0.
        assert_eq!(crossnest_coord(CrossNestKind::Cros, 5, &tau), Ok(2));
        assert_eq!(crossnest_coord(CrossNestKind::Cros, 1, &tau), Ok(0));
        assert_eq!(crossnest_coord(CrossNestKind::Nest, 4, &tau), Ok(2));
    }

    #[test]
    fn identity_has_no_occurrences() {
        for n in 1..=7 {
            let id = Permutation::identity(n);
            for stat in VincularStatId::ALL {
                assert_eq!(vincular_total(stat, &id), 0);
                for l in 1..=n {
                    assert_eq!(vincular_coord(stat, l, &id), Ok(0));
                }
            }
            for i in 1..=n {
                assert_eq!(crossnest_coord(CrossNestKind::Cros, i, &id), Ok(0));
            }
            assert!(set_stat(SetStatKind::Aba, &id).is_empty());
        }
    }

    #[test]
    fn out_of_range_coordinates() {
        let sigma = p("2 1 3");
        assert_eq!(
            vincular_coord(VincularStatId::S213, 4, &sigma),
            Err(StatError::OutOfRange { index: 4, n: 3 })
        );
        assert!(crossnest_coord(CrossNestKind::Nest, 0, &sigma).is_err());
        assert_eq!(
            crossnest_coord(CrossNestKind::Ecr, 1, &sigma),
            Err(StatError::NoCoordinate(CrossNestKind::Ecr))
        );
    }

    #[test]
    fn pictorial_example_totals() {
        let sigma = p("9 3 7 4 6 11 2 8 10 1 5");
        assert_eq!(crossnest_total(CrossNestKind::Cros, &sigma), 7);
        assert_eq!(crossnest_total(CrossNestKind::Nest, &sigma), 10);
    }

    #[test]
    fn ending_crossings_vanish_when_n_is_fixed() {
        for n in 1..=6 {
            for s in enumerate_sn(n).unwrap().filter(|s| s.at(n) == n) {
                assert_eq!(crossnest_total(CrossNestKind::Ecr, &s), 0);
            }
        }
    }

    #[test]
    fn descent_tops_of_decreasing_word() {
        // σ_n = 1 leaves nothing below it.
        for n in 1..=8 {
            assert!(set_stat(SetStatKind::Dtb, &Permutation::decreasing(n)).is_empty());
        }
        let s = p("2 1 4 3");
        assert_eq!(set_stat(SetStatKind::Dtb, &s), vec![2]);
        assert_eq!(set_stat(SetStatKind::Aba, &p("1 3 4 2")), vec![3]);
    }

    #[test]
    fn ene_sets_match_pair_counts() {
        let s = p("4 7 1 8 6 3 2 5");
        // σ_4 = 8: Ene = {j > 4 : j ≤ σ_j < 8} = {5}; Ene~ = {j < i ≤ σ_i = 8 : σ_j < j} with i = 4.
        assert_eq!(set_stat(SetStatKind::EneSet, &s), vec![5]);
        assert_eq!(set_stat(SetStatKind::EneTildeSet, &s), vec![3]);
        for n in 1..=6 {
            for s in enumerate_sn(n).unwrap() {
                assert_eq!(
                    set_stat(SetStatKind::EneSet, &s).len(),
                    crossnest_total(CrossNestKind::Ene, &s)
                );
                assert_eq!(
                    set_stat(SetStatKind::EneTildeSet, &s).len(),
                    crossnest_total(CrossNestKind::EneTilde, &s)
                );
            }
        }
    }

    #[test]
    fn refined_kinds_decompose_totals() {
        for n in 0..=8 {
            for s in enumerate_sn(n).unwrap() {
                let t = |k| crossnest_total(k, &s);
                use CrossNestKind::*;
                assert_eq!(t(Cros), t(Ecr) + t(Ucr) + t(Lcr), "{s}");
                assert_eq!(t(Nest), t(Ene) + t(Une) + t(Lne), "{s}");
            }
        }
    }

    #[test]
    fn difference_identity_213_231() {
        for n in 0..=8 {
            for s in enumerate_sn(n).unwrap() {
                let lhs = vincular_total(VincularStatId::S213, &s) as i64;
                let rhs = vincular_total(VincularStatId::S231, &s) as i64
                    - set_stat(SetStatKind::Aba, &s).len() as i64
                    + set_stat(SetStatKind::Dtb, &s).len() as i64;
                assert_eq!(lhs, rhs, "{s}");
            }
        }
    }

    #[test]
    fn four_vincular_statistics_are_equidistributed() {
        for n in 0..=8 {
            let mut hist = vec![vec![0u64; n * n + 1]; 4];
            for s in enumerate_sn(n).unwrap() {
                for (k, stat) in VincularStatId::ALL.into_iter().enumerate() {
                    hist[k][vincular_total(stat, &s)] += 1;
                }
            }
            for k in 1..4 {
                assert_eq!(hist[0], hist[k], "n = {n}");
            }
        }
    }

    #[test]
    fn name_round_trips() {
        for k in CrossNestKind::ALL {
            assert_eq!(k.name().parse::<CrossNestKind>(), Ok(k));
        }
        for k in SetStatKind::ALL {
            assert_eq!(k.name().parse::<SetStatKind>(), Ok(k));
        }
        for id in VincularStatId::ALL {
            assert_eq!(id.name().parse::<VincularStatId>(), Ok(id));
        }
        assert_eq!("312".parse::<VincularStatId>(), Ok(VincularStatId::S312));
        assert!("321".parse::<VincularStatId>().is_err());
    }
}
