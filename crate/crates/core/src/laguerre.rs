//! Shifted and restricted Laguerre histories.
//!
//! A history of length `n` is a 2-Motzkin path `w` (steps `U`, `D`, red
//! level `Lr`, blue level `Lb`), its height sequence `h` (height *before*
//! each step) and weights `c` with `0 ≤ c_i ≤ h_i` after `U`/`Lr` steps and
//! `1 ≤ c_i ≤ h_i` after `D`/`Lb` steps.
//!
//! Text format: the path over `U`, `D`, `R` (= `Lr`), `B` (= `Lb`), a slash,
//! then comma-separated weights, e.g. `UUBRDBDRUD / 0,1,2,1,2,1,1,0,0,1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;
use crate::slots::SlotWord;

/// Cap on `n` for enumerating all histories.
pub const HISTORY_CAP: usize = 10;
/// Cap on `n` for enumerating prudent histories.
pub const PRUDENT_HISTORY_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    Lr,
    Lb,
    D,
}

/// `UL_r` groups up and red level steps, `DL_b` down and blue level steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepClass {
    UpRed,
    DownBlue,
}

impl StepClass {
    pub fn opposite(self) -> StepClass {
        match self {
            StepClass::UpRed => StepClass::DownBlue,
            StepClass::DownBlue => StepClass::UpRed,
        }
    }

    /// Smallest admissible weight for a step of this class.
    pub fn weight_floor(self) -> i64 {
        match self {
            StepClass::UpRed => 0,
            StepClass::DownBlue => 1,
        }
    }
}

impl Step {
    pub const ALL: [Step; 4] = [Step::U, Step::Lr, Step::Lb, Step::D];

    pub fn class(self) -> StepClass {
        match self {
            Step::U | Step::Lr => StepClass::UpRed,
            Step::D | Step::Lb => StepClass::DownBlue,
        }
    }

    pub fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
            Step::Lr | Step::Lb => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::Lr => 'R',
            Step::Lb => 'B',
        }
    }

    pub fn from_symbol(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::U),
            'D' => Some(Step::D),
            'R' => Some(Step::Lr),
            'B' => Some(Step::Lb),
            _ => None,
        }
    }

    /// Step with the given class and height change.
    fn from_class_delta(class: StepClass, delta: i64) -> Option<Step> {
        match (class, delta) {
            (StepClass::UpRed, 1) => Some(Step::U),
            (StepClass::UpRed, 0) => Some(Step::Lr),
            (StepClass::DownBlue, 0) => Some(Step::Lb),
            (StepClass::DownBlue, -1) => Some(Step::D),
            _ => None,
        }
    }

    /// Open slots placed on the (left, right) of the inserted letter.
    fn attached_slots(self) -> (bool, bool) {
        match self {
            Step::U => (true, true),
            Step::Lr => (false, true),
            Step::Lb => (true, false),
            Step::D => (false, false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HistoryError {
    #[error("path drops below zero at step {index}")]
    PathNegative { index: usize },
    #[error("path ends at height {height}, not 0")]
    PathNotClosed { height: i64 },
    #[error("height at step {index} is {found}, expected {expected}")]
    HeightMismatch { index: usize, expected: i64, found: i64 },
    #[error("weight {weight} at step {index} is below the floor {floor}")]
    WeightBelowFloor { index: usize, weight: i64, floor: i64 },
    #[error("weight {weight} at step {index} exceeds the height {height}")]
    WeightAboveHeight { index: usize, weight: i64, height: i64 },
    #[error("{steps} steps but {other} {what}")]
    LengthMismatch { steps: usize, other: usize, what: &'static str },
    #[error("cannot parse history: {0}")]
    Parse(String),
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// An unvalidated history; `heights` may be omitted and are then derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawHistory {
    pub steps: Vec<Step>,
    pub heights: Option<Vec<i64>>,
    pub weights: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaguerreHistory {
    steps: Vec<Step>,
    heights: Vec<usize>,
    weights: Vec<usize>,
}

pub fn validate_history(raw: &RawHistory) -> Result<LaguerreHistory, HistoryError> {
    let n = raw.steps.len();
    if raw.weights.len() != n {
        return Err(HistoryError::LengthMismatch {
            steps: n,
            other: raw.weights.len(),
            what: "weights",
        });
    }
    if let Some(h) = &raw.heights {
        if h.len() != n {
            return Err(HistoryError::LengthMismatch {
                steps: n,
                other: h.len(),
                what: "heights",
            });
        }
    }
    let mut derived = Vec::with_capacity(n);
    let mut height = 0i64;
    for (i, step) in raw.steps.iter().enumerate() {
        derived.push(height);
        height += step.delta();
        if height < 0 {
            return Err(HistoryError::PathNegative { index: i + 1 });
        }
    }
    if height != 0 {
        return Err(HistoryError::PathNotClosed { height });
    }
    if let Some(h) = &raw.heights {
        if let Some(i) = (0..n).find(|&i| h[i] != derived[i]) {
            return Err(HistoryError::HeightMismatch {
                index: i + 1,
                expected: derived[i],
                found: h[i],
            });
        }
    }
    for i in 0..n {
        let weight = raw.weights[i];
        let floor = raw.steps[i].class().weight_floor();
        if weight < floor {
            return Err(HistoryError::WeightBelowFloor {
                index: i + 1,
                weight,
                floor,
            });
        }
        if weight > derived[i] {
            return Err(HistoryError::WeightAboveHeight {
                index: i + 1,
                weight,
                height: derived[i],
            });
        }
    }
    Ok(LaguerreHistory {
        steps: raw.steps.clone(),
        heights: derived.into_iter().map(|h| h as usize).collect(),
        weights: raw.weights.iter().map(|&c| c as usize).collect(),
    })
}

impl LaguerreHistory {
    /// Validates a path and weights, deriving the heights.
    pub fn new(steps: Vec<Step>, weights: Vec<usize>) -> Result<Self, HistoryError> {
        validate_history(&RawHistory {
            steps,
            heights: None,
            weights: weights.into_iter().map(|c| c as i64).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// `w_i`, 1-based.
    pub fn step(&self, i: usize) -> Step {
        self.steps[i - 1]
    }

    /// `h_i`, 1-based.
    pub fn height(&self, i: usize) -> usize {
        self.heights[i - 1]
    }

    /// `c_i`, 1-based.
    pub fn weight(&self, i: usize) -> usize {
        self.weights[i - 1]
    }

    /// Index of the last step weighted 0. Every nonempty history has one
    /// because `c_1 = h_1 = 0`.
    pub fn critical_step(&self) -> usize {
        self.weights
            .iter()
            .rposition(|&c| c == 0)
            .map(|i| i + 1)
            .expect("nonempty history has c_1 = 0")
    }

    /// Weight differences after each step lie in `{0, 1}` for `UL_r` and in
    /// `{0, -1}` for `DL_b`.
    pub fn is_prudent(&self) -> bool {
        (1..self.len()).all(|i| {
            let diff = self.weights[i] as i64 - self.weights[i - 1] as i64;
            match self.steps[i - 1].class() {
                StepClass::UpRed => diff == 0 || diff == 1,
                StepClass::DownBlue => diff == 0 || diff == -1,
            }
        })
    }

    pub fn path_string(&self) -> String {
        self.steps.iter().map(|s| s.symbol()).collect()
    }

    pub fn weights_string(&self) -> String {
        self.weights
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for LaguerreHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.path_string(), self.weights_string())
    }
}

/// Parses a path string such as `UUBRDBDRUD`.
pub fn parse_path(text: &str) -> Result<Vec<Step>, HistoryError> {
    text.trim()
        .chars()
        .map(|c| Step::from_symbol(c).ok_or_else(|| HistoryError::Parse(format!("bad step {c:?}"))))
        .collect()
}

/// Parses comma-separated weights; an empty string is the empty sequence.
pub fn parse_weights(text: &str) -> Result<Vec<i64>, HistoryError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| HistoryError::Parse(format!("bad weight {t:?}")))
        })
        .collect()
}

impl FromStr for RawHistory {
    type Err = HistoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (path, weights) = s
            .split_once('/')
            .ok_or_else(|| HistoryError::Parse("expected `PATH / WEIGHTS`".into()))?;
        Ok(RawHistory {
            steps: parse_path(path)?,
            heights: None,
            weights: parse_weights(weights)?,
        })
    }
}

impl FromStr for LaguerreHistory {
    type Err = HistoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        validate_history(&s.parse()?)
    }
}

#[derive(Serialize)]
struct HistoryRecord<'a> {
    steps: String,
    heights: &'a [usize],
    weights: &'a [usize],
}

impl Serialize for LaguerreHistory {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HistoryRecord {
            steps: self.path_string(),
            heights: &self.heights,
            weights: &self.weights,
        }
        .serialize(serializer)
    }
}

/// `Φ_FV⁻¹`: insert letter `i` into the open slot labelled `c_i`, slots
/// being labelled right to left from 0, with the slots attached by `w_i`.
pub fn fv_inverse(history: &LaguerreHistory) -> Permutation {
    let n = history.len();
    let mut word = SlotWord::new(n);
    for i in 1..=n {
        let (left, right) = history.step(i).attached_slots();
        word.insert_from_right(history.weight(i), i, left, right);
    }
    Permutation::from_vec_unchecked(word.finish())
}

/// `Φ_FV`: reads off, for each letter, its step from the neighbours
/// (sentinels `-∞` on the left, `+∞` on the right) and its weight as the
/// number of open slots to its right at insertion time.
pub fn fv_forward(sigma: &Permutation) -> LaguerreHistory {
    let n = sigma.len();
    let pos = sigma.positions();
    let mut steps = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for letter in 1..=n {
        let p = pos[letter];
        let left_larger = p > 1 && sigma.at(p - 1) > letter;
        let right_larger = p == n || sigma.at(p + 1) > letter;
        steps.push(match (left_larger, right_larger) {
            (true, true) => Step::U,
            (false, true) => Step::Lr,
            (true, false) => Step::Lb,
            (false, false) => Step::D,
        });
        // q ranges over p < q ≤ n+1 with σ_{n+1} = +∞
        let weight = (p + 1..=n + 1)
            .filter(|&q| sigma.at(q - 1) < letter && (q == n + 1 || letter <= sigma.at(q)))
            .count();
        weights.push(weight);
    }
    LaguerreHistory::new(steps, weights).expect("forward image is a valid history")
}

/// The involution `ξ`. With `m` the critical step of `w` and `pivot =
/// n+1-m`, the class of `v_j` is opposite to that of `w_{n+1-j}` except at
/// the pivot, which is `UL_r`; heights `g_j` are `h_{n+1-j}` shifted by ±1
/// on either side of the pivot; concrete steps follow from consecutive
/// heights (with `g_{n+1} = 0`) and weights are `g_j - h_{n+1-j} + c_{n+1-j}`.
pub fn xi(w: &LaguerreHistory) -> LaguerreHistory {
    let n = w.len();
    if n == 0 {
        return w.clone();
    }
    let pivot = n + 1 - w.critical_step();
    let mirror = |j: usize| n + 1 - j;

    let classes: Vec<StepClass> = (1..=n)
        .map(|j| {
            if j == pivot {
                StepClass::UpRed
            } else {
                w.step(mirror(j)).class().opposite()
            }
        })
        .collect();

    let mut g: Vec<i64> = (1..=n)
        .map(|j| {
            let h = w.height(mirror(j)) as i64;
            match classes[j - 1] {
                StepClass::DownBlue if j > pivot => h + 1,
                StepClass::UpRed if j < pivot => h - 1,
                _ => h,
            }
        })
        .collect();
    g.push(0);

    let steps: Vec<Step> = (0..n)
        .map(|k| {
            Step::from_class_delta(classes[k], g[k + 1] - g[k]).unwrap_or_else(|| {
                panic!(
                    "xi({w}): class {:?} incompatible with height change {} at step {}",
                    classes[k],
                    g[k + 1] - g[k],
                    k + 1
                )
            })
        })
        .collect();
    let weights: Vec<i64> = (1..=n)
        .map(|j| g[j - 1] - w.height(mirror(j)) as i64 + w.weight(mirror(j)) as i64)
        .collect();

    validate_history(&RawHistory {
        steps,
        heights: Some(g[..n].to_vec()),
        weights,
    })
    .unwrap_or_else(|e| panic!("xi({w}) is not a history: {e}"))
}

/// Depth-first stream of histories extending a fixed prefix.
///
/// Steps are tried in the order `U, Lr, Lb, D`, weights ascending; the
/// stream order is the enumeration order used for reporting.
#[derive(Clone, Debug)]
pub struct Histories {
    n: usize,
    prudent: bool,
    base: usize,
    path: Vec<(Step, usize)>,
    pending: Vec<Vec<(Step, usize)>>,
    emit_prefix: bool,
}

impl Histories {
    fn choices(&self, path: &[(Step, usize)]) -> Vec<(Step, usize)> {
        choices(self.n, self.prudent, path)
    }
}

fn prefix_height(path: &[(Step, usize)]) -> i64 {
    path.iter().map(|(s, _)| s.delta()).sum()
}

/// Admissible next (step, weight) pairs, in reverse enumeration order so the
/// caller can pop from the back.
fn choices(n: usize, prudent: bool, path: &[(Step, usize)]) -> Vec<(Step, usize)> {
    let h = prefix_height(path);
    let remaining_after = (n - path.len() - 1) as i64;
    let mut out = Vec::new();
    for step in Step::ALL {
        let after = h + step.delta();
        if after < 0 || after > remaining_after {
            continue;
        }
        let floor = step.class().weight_floor();
        let (mut lo, mut hi) = (floor, h);
        if prudent {
            if let Some(&(prev, c)) = path.last() {
                let c = c as i64;
                match prev.class() {
                    StepClass::UpRed => {
                        lo = lo.max(c);
                        hi = hi.min(c + 1);
                    }
                    StepClass::DownBlue => {
                        lo = lo.max(c - 1);
                        hi = hi.min(c);
                    }
                }
            }
        }
        for c in lo..=hi {
            out.push((step, c as usize));
        }
    }
    out.reverse();
    out
}

impl Histories {
    fn from_prefix_unchecked(n: usize, prudent: bool, prefix: Vec<(Step, usize)>) -> Self {
        let base = prefix.len();
        let mut it = Histories {
            n,
            prudent,
            base,
            path: prefix,
            pending: Vec::new(),
            emit_prefix: base == n,
        };
        if base < n {
            let first = it.choices(&it.path);
            it.pending.push(first);
        }
        it
    }

    fn build(&self) -> LaguerreHistory {
        let (steps, weights): (Vec<Step>, Vec<usize>) = self.path.iter().copied().unzip();
        LaguerreHistory::new(steps, weights).expect("enumerated history is valid")
    }
}

impl Iterator for Histories {
    type Item = LaguerreHistory;

    fn next(&mut self) -> Option<LaguerreHistory> {
        if self.emit_prefix {
            self.emit_prefix = false;
            return Some(self.build());
        }
        loop {
            let level = self.pending.len();
            if level == 0 {
                return None;
            }
            match self.pending[level - 1].pop() {
                None => {
                    self.pending.pop();
                }
                Some(choice) => {
                    self.path.truncate(self.base + level - 1);
                    self.path.push(choice);
                    if self.path.len() == self.n {
                        return Some(self.build());
                    }
                    let next = self.choices(&self.path);
                    self.pending.push(next);
                }
            }
        }
    }
}

fn check_history_cap(n: usize, prudent: bool) -> Result<(), HistoryError> {
    let cap = if prudent { PRUDENT_HISTORY_CAP } else { HISTORY_CAP };
    if n > cap {
        Err(HistoryError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Every history of length `n` (only prudent ones if `prudent_only`).
pub fn enumerate_histories(n: usize, prudent_only: bool) -> Result<Histories, HistoryError> {
    check_history_cap(n, prudent_only)?;
    Ok(Histories::from_prefix_unchecked(n, prudent_only, Vec::new()))
}

/// Independent streams covering [`enumerate_histories`], split on the first
/// `depth` steps and listed in enumeration order.
pub fn partitions_histories(
    n: usize,
    prudent_only: bool,
    depth: usize,
) -> Result<Vec<Histories>, HistoryError> {
    check_history_cap(n, prudent_only)?;
    let depth = depth.min(n);
    let mut prefixes: Vec<Vec<(Step, usize)>> = vec![Vec::new()];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                let mut next = choices(n, prudent_only, &p);
                next.reverse();
                next.into_iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    Ok(prefixes
        .into_iter()
        .map(|p| Histories::from_prefix_unchecked(n, prudent_only, p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_sn, factorial};

    fn figure_history() -> LaguerreHistory {
        "UUBRDBDRUD / 0,1,2,1,2,1,1,0,0,1".parse().unwrap()
    }

    #[test]
    fn figure_history_is_valid() {
        let w = figure_history();
        assert_eq!(w.heights(), &[0, 1, 2, 2, 2, 1, 1, 0, 0, 1]);
        assert_eq!(w.critical_step(), 9);
        assert!(w.is_prudent());
        assert_eq!(w.to_string(), "UUBRDBDRUD / 0,1,2,1,2,1,1,0,0,1");
    }

    #[test]
    fn single_step_histories() {
        let w: LaguerreHistory = "R / 0".parse().unwrap();
        assert_eq!(w.critical_step(), 1);
        assert!(w.is_prudent());
        assert_eq!(fv_inverse(&w).to_string(), "1");
        assert_eq!(
            "B / 1".parse::<LaguerreHistory>(),
            Err(HistoryError::WeightAboveHeight {
                index: 1,
                weight: 1,
                height: 0
            })
        );
    }

    #[test]
    fn validation_errors_name_first_offender() {
        let v = |s: &str| s.parse::<LaguerreHistory>().unwrap_err();
        assert_eq!(v("DU / 1,0"), HistoryError::PathNegative { index: 1 });
        assert_eq!(v("UU / 0,1"), HistoryError::PathNotClosed { height: 2 });
        assert_eq!(
            v("UBD / 0,0,1"),
            HistoryError::WeightBelowFloor {
                index: 2,
                weight: 0,
                floor: 1
            }
        );
        assert_eq!(
            v("UD / 0,2"),
            HistoryError::WeightAboveHeight {
                index: 2,
                weight: 2,
                height: 1
            }
        );
        assert!(matches!(v("UD / 0"), HistoryError::LengthMismatch { .. }));
        assert!(matches!(v("UX / 0,1"), HistoryError::Parse(_)));
        let raw = RawHistory {
            steps: parse_path("UD").unwrap(),
            heights: Some(vec![0, 0]),
            weights: vec![0, 1],
        };
        assert_eq!(
            validate_history(&raw),
            Err(HistoryError::HeightMismatch {
                index: 2,
                expected: 1,
                found: 0
            })
        );
    }

    #[test]
    fn prudence_example() {
        let w: LaguerreHistory = "UUDD / 0,0,2,1".parse().unwrap();
        assert!(!w.is_prudent());
        let w: LaguerreHistory = "UUDD / 0,1,2,1".parse().unwrap();
        assert!(w.is_prudent());
    }

    #[test]
    fn all_zero_floor_history_is_critical_at_end() {
        let w: LaguerreHistory = "RRRR / 0,0,0,0".parse().unwrap();
        assert_eq!(w.critical_step(), 4);
    }

    #[test]
    fn insertion_worked_run() {
        assert_eq!(fv_inverse(&figure_history()).to_string(), "5 3 2 4 7 6 1 8 10 9");
        // U: _1_ ; R with c=1 → 2 goes into the left slot: 2_1_ ; D with c=1 → 2 3 1 _
        let w: LaguerreHistory = "URD / 0,1,1".parse().unwrap();
        assert_eq!(fv_inverse(&w).to_string(), "2 3 1");
    }

    #[test]
    fn forward_recovers_figure_history() {
        let sigma: Permutation = "5 3 2 4 7 6 1 8 10 9".parse().unwrap();
        assert_eq!(fv_forward(&sigma), figure_history());
        assert_eq!(fv_forward(&"1".parse().unwrap()).to_string(), "R / 0");
    }

    #[test]
    fn forward_then_inverse_is_identity() {
        for n in 0..=8 {
            for s in enumerate_sn(n).unwrap() {
                assert_eq!(fv_inverse(&fv_forward(&s)), s);
            }
        }
    }

    #[test]
    fn history_counts_are_factorials() {
        for n in 0..=8 {
            let all: Vec<_> = enumerate_histories(n, false).unwrap().collect();
            assert_eq!(all.len() as u64, factorial(n), "n = {n}");
            for w in &all {
                assert_eq!(fv_forward(&fv_inverse(w)), *w);
                if n > 0 {
                    assert_eq!(w.weight(1), 0);
                }
            }
        }
    }

    #[test]
    fn prudent_enumeration_filters_full_enumeration() {
        for n in 0..=7 {
            let filtered: Vec<_> = enumerate_histories(n, false).unwrap().filter(|w| w.is_prudent()).collect();
            let direct: Vec<_> = enumerate_histories(n, true).unwrap().collect();
            assert_eq!(filtered, direct);
        }
    }

    #[test]
    fn partitions_concatenate_in_order() {
        for n in 0..=6 {
            for prudent in [false, true] {
                let full: Vec<_> = enumerate_histories(n, prudent).unwrap().collect();
                for depth in 0..=3 {
                    let parts: Vec<_> = partitions_histories(n, prudent, depth)
                        .unwrap()
                        .into_iter()
                        .flatten()
                        .collect();
                    assert_eq!(full, parts, "n={n} depth={depth}");
                }
            }
        }
    }

    #[test]
    fn enumeration_caps() {
        assert!(enumerate_histories(11, false).is_err());
        assert!(enumerate_histories(12, true).is_ok());
        assert!(enumerate_histories(13, true).is_err());
    }

    #[test]
    fn xi_on_small_cases() {
        let one: LaguerreHistory = "R / 0".parse().unwrap();
        assert_eq!(xi(&one), one);
        let image = xi(&figure_history());
        assert_eq!(image.critical_step(), 2);
        assert_eq!(xi(&image), figure_history());
    }

    #[test]
    fn xi_is_an_involution_with_mirrored_critical_step() {
        for n in 1..=7 {
            for w in enumerate_histories(n, false).unwrap() {
                let v = xi(&w);
                let m = w.critical_step();
                assert_eq!(v.critical_step(), n + 1 - m, "{w}");
                assert_eq!(xi(&v), w, "{w}");
                for j in (1..=n).filter(|&j| j != n + 1 - m) {
                    assert_eq!(
                        v.step(j).class() == StepClass::UpRed,
                        w.step(n + 1 - j).class() == StepClass::DownBlue
                    );
                }
            }
        }
    }
}
