//! Exact polynomials in `p, q, r, s` and truncated power series in `x`
//! with polynomial coefficients.
//!
//! Coefficients are `i64` and every operation is checked: overflow is
//! reported as [`PolyError::Overflow`], never wrapped.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::laguerre::{fv_inverse, partitions_histories, HistoryError};
use crate::perm::{partitions_sn, PermError, Permutation};
use crate::stats::{vincular_coords, VincularStatId};

/// Largest `n` for distribution polynomials over all of `S_n`.
pub const ALL_CLASS_CAP: usize = 10;
/// Largest `n` for distribution polynomials over Baxter permutations.
pub const BAXTER_CLASS_CAP: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("{what} must be at least {min}, got {got}")]
    Domain { what: &'static str, min: u64, got: u64 },
    #[error("n = {n} exceeds the cap of {cap} for this class")]
    CapExceeded { n: usize, cap: usize },
    #[error("{stats} statistics but {vars} variables")]
    Arity { stats: usize, vars: usize },
    #[error("variable {0} appears more than once")]
    RepeatedVar(Var),
    #[error("polynomial involves {0}, which the grouped layout does not show")]
    Layout(Var),
    #[error("unknown variable {0:?}")]
    UnknownVar(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    History(#[from] HistoryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    P,
    Q,
    R,
    S,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::P, Var::Q, Var::R, Var::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['p', 'q', 'r', 's'][self.index()]
    }

    /// The statistic this variable marks in `P_n` and `Q_n`.
    pub fn statistic(self) -> VincularStatId {
        match self {
            Var::P => VincularStatId::S132,
            Var::Q => VincularStatId::S312,
            Var::R => VincularStatId::S213,
            Var::S => VincularStatId::S231,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "p" => Ok(Var::P),
            "q" => Ok(Var::Q),
            "r" => Ok(Var::R),
            "s" => Ok(Var::S),
            other => Err(PolyError::UnknownVar(other.to_string())),
        }
    }
}

/// Exponent vector over `(p, q, r, s)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        let mut e = [0u32; 4];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k].checked_add(other.0[k])?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, i64>,
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermRecord {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub coefficient: i64,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        MultiPoly::monomial(c, Monomial::default())
    }

    pub fn monomial(c: i64, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        MultiPoly::monomial(1, Monomial(e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) -> Result<(), PolyError> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(m).or_insert(0);
        *slot = slot.checked_add(c).ok_or(PolyError::Overflow)?;
        if *slot == 0 {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.checked_neg().ok_or(PolyError::Overflow)?);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(*mb).ok_or(PolyError::Overflow)?;
                out.add_term(m, ca.checked_mul(*cb).ok_or(PolyError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Renames variables: the exponent of `v` moves to `targets[v]`. So
    /// `P(q, p, s, r)` is `P.substitute([Q, P, S, R])`.
    pub fn substitute(&self, targets: [Var; 4]) -> Result<MultiPoly, PolyError> {
        for (i, v) in targets.iter().enumerate() {
            if targets[..i].contains(v) {
                return Err(PolyError::RepeatedVar(*v));
            }
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut e = [0u32; 4];
            for v in Var::ALL {
                e[targets[v.index()].index()] = m.0[v.index()];
            }
            out.add_term(Monomial(e), *c)?;
        }
        Ok(out)
    }

    /// Sets `v` to the integer `value`.
    pub fn evaluate(&self, v: Var, value: i64) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut reduced = *m;
            let k = reduced.0[v.index()];
            reduced.0[v.index()] = 0;
            let factor = value.checked_pow(k).ok_or(PolyError::Overflow)?;
            out.add_term(reduced, c.checked_mul(factor).ok_or(PolyError::Overflow)?)?;
        }
        Ok(out)
    }

    /// Sum of all coefficients, i.e. the value at `p = q = r = s = 1`.
    pub fn sum_coefficients(&self) -> Result<i64, PolyError> {
        self.terms
            .values()
            .try_fold(0i64, |acc, c| acc.checked_add(*c).ok_or(PolyError::Overflow))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                p: m.0[0],
                q: m.0[1],
                r: m.0[2],
                s: m.0[3],
                coefficient: *c,
            })
            .collect()
    }

    /// Layout grouping by ascending powers of `outer`, each group a
    /// polynomial in `inner` with ascending powers, e.g. for `Q_4(q, r)`:
    /// `(8 + 4q + 2q^2) + (4 + 2q)r + 2r^2`.
    pub fn to_grouped_string(&self, inner: Var, outer: Var) -> Result<String, PolyError> {
        if let Some((m, _)) = self
            .terms
            .iter()
            .find(|(m, _)| Var::ALL.iter().any(|&v| v != inner && v != outer && m.exponent(v) > 0))
        {
            let v = Var::ALL
                .into_iter()
                .find(|&v| v != inner && v != outer && m.exponent(v) > 0)
                .unwrap();
            return Err(PolyError::Layout(v));
        }
        if self.is_zero() {
            return Ok("0".to_string());
        }
        let mut groups: BTreeMap<u32, Vec<(u32, i64)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.exponent(outer))
                .or_default()
                .push((m.exponent(inner), *c));
        }
        let mut out = String::new();
        for (gi, (k, mut inner_terms)) in groups.into_iter().enumerate() {
            inner_terms.sort_unstable();
            let outer_part = power(outer, k);
            let body = if inner_terms.len() == 1 {
                let (e, c) = inner_terms[0];
                let term = term_string(c.unsigned_abs(), &power(inner, e), outer_part.is_empty());
                let sign = if c < 0 { "-" } else { "" };
                if gi == 0 {
                    format!("{sign}{term}{outer_part}")
                } else {
                    format!(" {} {term}{outer_part}", if c < 0 { '-' } else { '+' })
                }
            } else {
                let mut s = String::from("(");
                for (ti, (e, c)) in inner_terms.iter().enumerate() {
                    let term = term_string(c.unsigned_abs(), &power(inner, *e), true);
                    match (ti, *c < 0) {
                        (0, false) => s.push_str(&term),
                        (0, true) => {
                            s.push('-');
                            s.push_str(&term);
                        }
                        (_, neg) => {
                            s.push_str(if neg { " - " } else { " + " });
                            s.push_str(&term);
                        }
                    }
                }
                s.push(')');
                if gi == 0 {
                    format!("{s}{outer_part}")
                } else {
                    format!(" + {s}{outer_part}")
                }
            };
            out.push_str(&body);
        }
        Ok(out)
    }
}

fn power(v: Var, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => v.name().to_string(),
        _ => format!("{}^{e}", v.name()),
    }
}

/// `c·mono`, writing the coefficient 1 only when nothing else would show.
fn term_string(c: u64, mono: &str, standalone: bool) -> String {
    match (c, mono.is_empty()) {
        (_, true) if standalone || c != 1 => c.to_string(),
        (_, true) => String::new(),
        (1, false) => mono.to_string(),
        (_, false) => format!("{c}{mono}"),
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lexicographic order, e.g. `2p^2q + r - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: String = Var::ALL.iter().map(|&v| power(v, m.exponent(v))).collect();
            let term = term_string(c.unsigned_abs(), &mono, true);
            match (i, *c < 0) {
                (0, false) => write!(f, "{term}")?,
                (0, true) => write!(f, "-{term}")?,
                (_, false) => write!(f, " + {term}")?,
                (_, true) => write!(f, " - {term}")?,
            }
        }
        Ok(())
    }
}

/// Power series in `x` with polynomial coefficients, truncated after `x^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesInX {
    coeffs: Vec<MultiPoly>,
}

impl SeriesInX {
    pub fn zero(order: usize) -> Self {
        SeriesInX {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = SeriesInX::zero(order);
        s.coeffs[0] = MultiPoly::one();
        s
    }

    /// Largest retained power of `x`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// `a·x·self`, truncated.
    pub fn scale_shift(&self, a: &MultiPoly) -> Result<SeriesInX, PolyError> {
        let mut out = SeriesInX::zero(self.order());
        for k in 0..self.order() {
            out.coeffs[k + 1] = a.checked_mul(&self.coeffs[k])?;
        }
        Ok(out)
    }

    /// `1 / (1 - self)` for a series with zero constant term.
    pub fn one_over_one_minus(&self) -> Result<SeriesInX, PolyError> {
        assert!(self.coeffs[0].is_zero(), "constant term must vanish");
        let order = self.order();
        let mut out = SeriesInX::one(order);
        for m in 1..=order {
            let mut acc = MultiPoly::zero();
            for k in 1..=m {
                acc = acc.checked_add(&self.coeffs[k].checked_mul(&out.coeffs[m - k])?)?;
            }
            out.coeffs[m] = acc;
        }
        Ok(out)
    }
}

/// `[i]_{p,q} = p^{i-1} + p^{i-2}q + … + q^{i-1}`.
pub fn pq_integer(i: u32) -> Result<MultiPoly, PolyError> {
    if i < 1 {
        return Err(PolyError::Domain {
            what: "i",
            min: 1,
            got: i as u64,
        });
    }
    let mut out = MultiPoly::zero();
    for a in 0..i {
        out.add_term(Monomial([a, i - 1 - a, 0, 0]), 1)?;
    }
    Ok(out)
}

/// The continued fraction `1/(1 - [1]x/(1 - [1]x/(1 - [2]x/(1 - [2]x/…))))`
/// expanded through `x^order`.
pub fn cf_series(order: usize) -> Result<SeriesInX, PolyError> {
    cf_series_with_depth(order, order + 1)
}

/// As [`cf_series`], cutting the fraction after `depth` levels. Level `k`
/// contributes at least `x^k`, so any `depth > order` gives the same result.
pub fn cf_series_with_depth(order: usize, depth: usize) -> Result<SeriesInX, PolyError> {
    let mut tail = SeriesInX::one(order);
    for level in (1..=depth).rev() {
        let a = pq_integer(level.div_ceil(2) as u32)?;
        tail = tail.scale_shift(&a)?.one_over_one_minus()?;
    }
    Ok(tail)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermClass {
    All,
    /// Baxter permutations, enumerated as images of prudent histories.
    Baxter,
}

fn monomial_of(sigma: &Permutation, stats: &[(VincularStatId, Var)]) -> Monomial {
    let mut e = [0u32; 4];
    for &(stat, v) in stats {
        e[v.index()] += vincular_coords(stat, sigma).iter().sum::<usize>() as u32;
    }
    Monomial(e)
}

fn check_stats(stats: &[(VincularStatId, Var)]) -> Result<(), PolyError> {
    for (i, (_, v)) in stats.iter().enumerate() {
        if stats[..i].iter().any(|(_, w)| w == v) {
            return Err(PolyError::RepeatedVar(*v));
        }
    }
    Ok(())
}

/// `Σ_σ Π var^{stat(σ)}` over an explicit collection of permutations.
pub fn distribution_of<'a>(
    perms: impl IntoIterator<Item = &'a Permutation>,
    stats: &[(VincularStatId, Var)],
) -> Result<MultiPoly, PolyError> {
    check_stats(stats)?;
    let mut counts: BTreeMap<Monomial, i64> = BTreeMap::new();
    for s in perms {
        *counts.entry(monomial_of(s, stats)).or_insert(0) += 1;
    }
    Ok(MultiPoly { terms: counts })
}

fn merge(parts: Vec<BTreeMap<Monomial, i64>>) -> Result<MultiPoly, PolyError> {
    let mut out = MultiPoly::zero();
    for part in parts {
        for (m, c) in part {
            out.add_term(m, c)?;
        }
    }
    Ok(out)
}

/// Joint distribution polynomial of `stats` (each marked by its variable)
/// over `S_n` or over the Baxter permutations of length `n`. Runs on the
/// current rayon pool.
pub fn distribution_poly(
    n: usize,
    stats: &[(VincularStatId, Var)],
    class: PermClass,
) -> Result<MultiPoly, PolyError> {
    check_stats(stats)?;
    let tally = |it: &mut dyn Iterator<Item = Permutation>| {
        let mut counts: BTreeMap<Monomial, i64> = BTreeMap::new();
        for s in it {
            *counts.entry(monomial_of(&s, stats)).or_insert(0) += 1;
        }
        counts
    };
    match class {
        PermClass::All => {
            if n > ALL_CLASS_CAP {
                return Err(PolyError::CapExceeded { n, cap: ALL_CLASS_CAP });
            }
            let parts = partitions_sn(n)?;
            merge(parts.into_par_iter().map(|mut it| tally(&mut it)).collect())
        }
        PermClass::Baxter => {
            if n > BAXTER_CLASS_CAP {
                return Err(PolyError::CapExceeded { n, cap: BAXTER_CLASS_CAP });
            }
            let parts = partitions_histories(n, true, 3)?;
            merge(
                parts
                    .into_par_iter()
                    .map(|it| tally(&mut it.map(|w| fv_inverse(&w))))
                    .collect(),
            )
        }
    }
}

const FOUR_STATS: [(VincularStatId, Var); 4] = [
    (VincularStatId::S132, Var::P),
    (VincularStatId::S312, Var::Q),
    (VincularStatId::S213, Var::R),
    (VincularStatId::S231, Var::S),
];

/// `P_n(p,q,r,s) = Σ_{σ ∈ S_n} p^{13-2} q^{31-2} r^{2-13} s^{2-31}`.
pub fn p_n(n: usize) -> Result<MultiPoly, PolyError> {
    distribution_poly(n, &FOUR_STATS, PermClass::All)
}

/// `Q_n(p,q,r,s)`: the same sum over Baxter permutations.
pub fn q_n(n: usize) -> Result<MultiPoly, PolyError> {
    distribution_poly(n, &FOUR_STATS, PermClass::Baxter)
}

/// Distribution polynomial keeping only `vars` (each marking its own
/// statistic, see [`Var::statistic`]); the others are set to 1.
pub fn distribution_in_vars(n: usize, vars: &[Var], class: PermClass) -> Result<MultiPoly, PolyError> {
    let stats: Vec<(VincularStatId, Var)> = vars.iter().map(|&v| (v.statistic(), v)).collect();
    distribution_poly(n, &stats, class)
}

/// Checked `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<u128, PolyError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(PolyError::Overflow)?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// Baxter numbers by the triple-binomial sum
/// `Σ_{k=0}^{n-1} C(n+1,k) C(n+1,k+1) C(n+1,k+2) / (C(n+1,1) C(n+1,2))`.
/// Each summand is an integer and is divided exactly.
pub fn baxter_number(n: u64) -> Result<u64, PolyError> {
    if n < 1 {
        return Err(PolyError::Domain {
            what: "n",
            min: 1,
            got: n,
        });
    }
    let m = n + 1;
    let denom = binomial(m, 1)?
        .checked_mul(binomial(m, 2)?)
        .ok_or(PolyError::Overflow)?;
    let mut total: u128 = 0;
    for k in 0..n {
        let num = binomial(m, k)?
            .checked_mul(binomial(m, k + 1)?)
            .and_then(|x| x.checked_mul(binomial(m, k + 2).ok()?))
            .ok_or(PolyError::Overflow)?;
        assert_eq!(num % denom, 0, "summand {k} of Bax_{n} is not integral");
        total = total.checked_add(num / denom).ok_or(PolyError::Overflow)?;
    }
    u64::try_from(total).map_err(|_| PolyError::Overflow)
}

/// `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Result<u64, PolyError> {
    let two_n = n.checked_mul(2).ok_or(PolyError::Overflow)?;
    u64::try_from(binomial(two_n, n)? / (n as u128 + 1)).map_err(|_| PolyError::Overflow)
}

/// `(2m)!! = 2^m m!`.
pub fn double_factorial_even(m: u64) -> Result<u64, PolyError> {
    (1..=m).try_fold(1u64, |acc, k| acc.checked_mul(2 * k).ok_or(PolyError::Overflow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::is_baxter;
    use crate::perm::{enumerate_sn, factorial};

    fn mono(p: u32, q: u32, r: u32, s: u32) -> Monomial {
        Monomial([p, q, r, s])
    }

    #[test]
    fn pq_integers() {
        assert_eq!(pq_integer(1).unwrap(), MultiPoly::one());
        let two = MultiPoly::var(Var::P).checked_add(&MultiPoly::var(Var::Q)).unwrap();
        assert_eq!(pq_integer(2).unwrap(), two);
        assert_eq!(pq_integer(3).unwrap().to_string(), "p^2 + pq + q^2");
        assert!(pq_integer(0).is_err());
        // [i]·(p - q) = p^i - q^i
        for i in 1..=6 {
            let lhs = pq_integer(i)
                .unwrap()
                .checked_mul(&MultiPoly::var(Var::P).checked_sub(&MultiPoly::var(Var::Q)).unwrap())
                .unwrap();
            let mut rhs = MultiPoly::monomial(1, mono(i, 0, 0, 0));
            rhs.add_term(mono(0, i, 0, 0), -1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn overflow_is_detected() {
        let big = MultiPoly::constant(i64::MAX);
        assert_eq!(big.checked_add(&MultiPoly::one()), Err(PolyError::Overflow));
        assert_eq!(big.checked_mul(&MultiPoly::constant(2)), Err(PolyError::Overflow));
        assert_eq!(MultiPoly::constant(i64::MIN).checked_neg(), Err(PolyError::Overflow));
        assert_eq!(MultiPoly::monomial(3, mono(0, 40, 0, 0)).evaluate(Var::Q, 10), Err(PolyError::Overflow));
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let mut p = MultiPoly::var(Var::R);
        p.add_term(mono(0, 0, 1, 0), -1).unwrap();
        assert!(p.is_zero());
        assert_eq!(p, MultiPoly::zero());
    }

    #[test]
    fn substitution_and_evaluation() {
        let mut poly = MultiPoly::monomial(2, mono(1, 0, 2, 0));
        poly.add_term(mono(0, 3, 0, 1), 5).unwrap();
        let swapped = poly.substitute([Var::Q, Var::P, Var::S, Var::R]).unwrap();
        let mut expected = MultiPoly::monomial(2, mono(0, 1, 0, 2));
        expected.add_term(mono(3, 0, 1, 0), 5).unwrap();
        assert_eq!(swapped, expected);
        assert!(poly.substitute([Var::P, Var::P, Var::R, Var::S]).is_err());
        let at_one = poly.evaluate(Var::R, 1).unwrap();
        assert_eq!(at_one.coefficient(&mono(1, 0, 0, 0)), 2);
        let at_zero = poly.evaluate(Var::R, 0).unwrap();
        assert_eq!(at_zero, MultiPoly::monomial(5, mono(0, 3, 0, 1)));
        assert_eq!(poly.sum_coefficients(), Ok(7));
    }

    #[test]
    fn grouped_layout() {
        let mut q3 = MultiPoly::constant(4);
        q3.add_term(mono(0, 1, 0, 0), 1).unwrap();
        q3.add_term(mono(0, 0, 1, 0), 1).unwrap();
        assert_eq!(q3.to_grouped_string(Var::Q, Var::R).unwrap(), "(4 + q) + r");
        assert_eq!(MultiPoly::constant(2).to_grouped_string(Var::Q, Var::R).unwrap(), "2");
        assert_eq!(MultiPoly::zero().to_grouped_string(Var::Q, Var::R).unwrap(), "0");
        let mut mixed = MultiPoly::monomial(3, mono(0, 1, 2, 0));
        mixed.add_term(mono(0, 0, 0, 0), -1).unwrap();
        assert_eq!(mixed.to_grouped_string(Var::Q, Var::R).unwrap(), "-1 + 3qr^2");
        assert_eq!(
            MultiPoly::var(Var::S).to_grouped_string(Var::Q, Var::R),
            Err(PolyError::Layout(Var::S))
        );
    }

    #[test]
    fn series_leading_terms_and_factorials() {
        let series = cf_series(8).unwrap();
        assert_eq!(series.coefficient(0), &MultiPoly::one());
        assert_eq!(series.coefficient(1), &MultiPoly::one());
        for n in 0..=8 {
            assert_eq!(series.coefficient(n).sum_coefficients(), Ok(factorial(n) as i64));
        }
    }

    #[test]
    fn truncation_depth_is_sufficient() {
        for order in 0..=8 {
            assert_eq!(cf_series(order).unwrap(), cf_series_with_depth(order, order + 3).unwrap());
        }
    }

    #[test]
    fn series_cubic_term_matches_brute_force() {
        let s3: Vec<_> = enumerate_sn(3).unwrap().collect();
        let brute = distribution_of(&s3, &[(VincularStatId::S231, Var::P), (VincularStatId::S312, Var::Q)]).unwrap();
        assert_eq!(cf_series(3).unwrap().coefficient(3), &brute);
    }

    #[test]
    fn closed_forms() {
        let bax: Vec<u64> = (1..=6).map(|n| baxter_number(n).unwrap()).collect();
        assert_eq!(bax, vec![1, 2, 6, 22, 92, 422]);
        assert!(baxter_number(0).is_err());
        assert_eq!(catalan(0), Ok(1));
        assert_eq!(catalan(3), Ok(5));
        assert_eq!(double_factorial_even(0), Ok(1));
        assert_eq!(double_factorial_even(1), Ok(2));
        assert_eq!(double_factorial_even(4), Ok(384));
        for n in 1..=25 {
            // either exact or a reported overflow, never a wrapped value
            match baxter_number(n) {
                Ok(v) => assert!(v > 0),
                Err(e) => assert_eq!(e, PolyError::Overflow),
            }
        }
        assert_eq!(double_factorial_even(40), Err(PolyError::Overflow));
    }

    #[test]
    fn baxter_numbers_match_filter() {
        for n in 1..=8 {
            let count = enumerate_sn(n as usize).unwrap().filter(is_baxter).count() as u64;
            assert_eq!(baxter_number(n), Ok(count));
        }
    }

    #[test]
    fn small_distribution_polys() {
        assert_eq!(p_n(1).unwrap(), MultiPoly::one());
        let q3 = distribution_in_vars(3, &[Var::Q, Var::R], PermClass::Baxter).unwrap();
        assert_eq!(q3.to_grouped_string(Var::Q, Var::R).unwrap(), "(4 + q) + r");
        let q4 = distribution_in_vars(4, &[Var::Q, Var::R], PermClass::Baxter).unwrap();
        assert_eq!(
            q4.to_grouped_string(Var::Q, Var::R).unwrap(),
            "(8 + 4q + 2q^2) + (4 + 2q)r + 2r^2"
        );
        assert!(matches!(q_n(12), Err(PolyError::CapExceeded { .. })));
        assert!(matches!(p_n(11), Err(PolyError::CapExceeded { .. })));
    }

    #[test]
    fn baxter_route_matches_filtered_route() {
        for n in 1..=8 {
            let filtered: Vec<_> = enumerate_sn(n).unwrap().filter(is_baxter).collect();
            assert_eq!(q_n(n).unwrap(), distribution_of(&filtered, &FOUR_STATS).unwrap());
        }
    }
}
