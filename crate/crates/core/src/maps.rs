//! Bijections and involutions on permutations.

use crate::laguerre::{fv_forward, fv_inverse, xi, LaguerreHistory};
use crate::perm::Permutation;
use crate::slots::SlotWord;
use crate::stats::{vincular_coords, VincularStatId};

/// `θ̂(σ) = σ̂_n … σ̂_1` where `â = n - a` for `a < n` and `n̂ = n`.
pub fn theta_hat(sigma: &Permutation) -> Permutation {
    let n = sigma.len();
    let hat = |a: usize| if a < n { n - a } else { a };
    Permutation::from_vec_unchecked(sigma.values().iter().rev().map(|&a| hat(a)).collect())
}

/// `θ(π) = π^c_{n-1} … π^c_1 π^c_n` with `π^c_i = n + 1 - π_i`.
pub fn theta(pi: &Permutation) -> Permutation {
    let n = pi.len();
    if n == 0 {
        return pi.clone();
    }
    let c = |i: usize| n + 1 - pi.at(i);
    let mut out: Vec<usize> = (1..n).rev().map(c).collect();
    out.push(c(n));
    Permutation::from_vec_unchecked(out)
}

/// `Φ_SZ`. Descent tops `F` are matched to descent bottoms `F'` in
/// increasing order of `j ∈ F`, taking the `(31-2(j,σ)+1)`-th largest free
/// bottom below `j`; the remaining letters `G` are matched to `G'` in
/// decreasing order of `j`, taking the `(31-2(j,σ)+1)`-th smallest free
/// element `≥ j`. The image sends `j` to its partner.
pub fn phi_sz(sigma: &Permutation) -> Permutation {
    phi_sz_ranked(sigma, |s| s + 1)
}

/// [`phi_sz`] with the selection rank computed from `31-2(j,σ)` by `rank`.
/// Only the reference rank `s + 1` gives a bijection.
pub fn phi_sz_ranked(sigma: &Permutation, rank: impl Fn(usize) -> usize) -> Permutation {
    let n = sigma.len();
    let s312 = vincular_coords(VincularStatId::S312, sigma);
    let mut top = vec![false; n + 1];
    let mut bottom = vec![false; n + 1];
    for i in 1..n {
        if sigma.at(i) > sigma.at(i + 1) {
            top[sigma.at(i)] = true;
            bottom[sigma.at(i + 1)] = true;
        }
    }
    let mut taken = vec![false; n + 1];
    let mut image = vec![0; n + 1];

    for j in (1..=n).filter(|&j| top[j]) {
        let r = rank(s312[j]);
        let pick = (1..j)
            .rev()
            .filter(|&x| bottom[x] && !taken[x])
            .nth(r.wrapping_sub(1))
            .unwrap_or_else(|| panic!("phi_sz({sigma}): no rank-{r} descent bottom below {j}"));
        taken[pick] = true;
        image[j] = pick;
    }
    for j in (1..=n).rev().filter(|&j| !top[j]) {
        let r = rank(s312[j]);
        let pick = (j..=n)
            .filter(|&x| !bottom[x] && !taken[x])
            .nth(r.wrapping_sub(1))
            .unwrap_or_else(|| panic!("phi_sz({sigma}): no rank-{r} free letter at or above {j}"));
        taken[pick] = true;
        image[j] = pick;
    }
    Permutation::from_vec_unchecked(image.split_off(1))
}

/// `Φ_SZ⁻¹`, built constructively.
///
/// `F = {a : τ_a < a}` and `F' = τ(F)` recover the descent tops and bottoms.
/// Replaying the biword selections gives `s_j = 31-2(j,π)` for every letter.
/// Letter `j` has a larger left neighbour iff `j ∈ F'` and a larger right
/// neighbour iff `j ∉ F` (sentinels `-∞` left, `+∞` right), so `π` is rebuilt
/// by inserting `1, 2, …, n` with those slots attached into the slot that has
/// exactly `s_j` open slots to its left.
pub fn phi_sz_inv(tau: &Permutation) -> Permutation {
    let n = tau.len();
    let in_f: Vec<bool> = (0..=n).map(|a| a >= 1 && tau.at(a) < a).collect();
    let mut in_fp = vec![false; n + 1];
    for a in (1..=n).filter(|&a| in_f[a]) {
        in_fp[tau.at(a)] = true;
    }

    let mut taken = vec![false; n + 1];
    let mut s312 = vec![0; n + 1];
    for j in (1..=n).filter(|&j| in_f[j]) {
        let t = tau.at(j);
        s312[j] = (t + 1..j).filter(|&x| in_fp[x] && !taken[x]).count();
        taken[t] = true;
    }
    for j in (1..=n).rev().filter(|&j| !in_f[j]) {
        let t = tau.at(j);
        s312[j] = (j..t).filter(|&x| !in_fp[x] && !taken[x]).count();
        taken[t] = true;
    }

    let mut word = SlotWord::new(n);
    for j in 1..=n {
        word.insert_from_left(s312[j], j, in_fp[j], !in_f[j]);
    }
    Permutation::from_vec_unchecked(word.finish())
}

/// `φ̂ = Φ_SZ⁻¹ ∘ θ̂ ∘ Φ_SZ`.
pub fn phi_hat(sigma: &Permutation) -> Permutation {
    phi_sz_inv(&theta_hat(&phi_sz(sigma)))
}

/// `φ = Φ_FV⁻¹ ∘ ξ ∘ Φ_FV`, computed through Laguerre histories.
pub fn phi_laguerre(sigma: &Permutation) -> Permutation {
    fv_inverse(&xi(&fv_forward(sigma)))
}

/// `Φ_FZ`, defined here as the composite `Φ_FV ∘ Φ_SZ⁻¹ ∘ ι`.
pub fn phi_fz(pi: &Permutation) -> LaguerreHistory {
    fv_forward(&phi_sz_inv(&pi.inverse()))
}

/// `Φ_FZ⁻¹ = ι ∘ Φ_SZ ∘ Φ_FV⁻¹`.
pub fn phi_fz_inv(history: &LaguerreHistory) -> Permutation {
    phi_sz(&fv_inverse(history)).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_sn;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn theta_hat_examples() {
        assert_eq!(theta_hat(&p("1 2")), p("2 1"));
        assert_eq!(theta_hat(&p("2 1")), p("1 2"));
        assert_eq!(theta_hat(&p("4 7 1 8 6 3 2 5")), p("3 6 5 2 8 7 1 4"));
        for s in enumerate_sn(6).unwrap().filter(|s| s.at(6) == 6) {
            assert_eq!(theta_hat(&s).at(1), 6);
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&p("1")), p("1"));
        assert_eq!(theta(&p("1 2 3")), p("2 3 1"));
        for s in enumerate_sn(6).unwrap() {
            assert_eq!(theta(&theta(&s)), s);
            assert_eq!(theta_hat(&theta_hat(&s)), s);
        }
    }

    #[test]
    fn phi_sz_worked_example() {
        let sigma = p("4 7 1 8 6 3 2 5");
        let tau = p("5 7 1 4 8 2 6 3");
        assert_eq!(phi_sz(&sigma), tau);
        assert_eq!(phi_sz_inv(&tau), sigma);
        assert_eq!(phi_sz(&p("1")), p("1"));
    }

    #[test]
    fn phi_sz_fixes_identity() {
        for n in 0..=9 {
            let id = Permutation::identity(n);
            assert_eq!(phi_sz(&id), id);
            assert_eq!(phi_sz_inv(&id), id);
        }
    }

    #[test]
    fn phi_sz_round_trips() {
        for n in 0..=7 {
            for s in enumerate_sn(n).unwrap() {
                assert_eq!(phi_sz_inv(&phi_sz(&s)), s, "{s}");
                assert_eq!(phi_sz(&phi_sz_inv(&s)), s, "{s}");
            }
        }
    }

    #[test]
    fn phi_hat_has_two_fixed_points_in_s3() {
        let fixed = enumerate_sn(3).unwrap().filter(|s| phi_hat(s) == *s).count();
        assert_eq!(fixed, 2);
    }

    #[test]
    fn phi_routes_agree_and_are_involutive() {
        for n in 1..=7 {
            for s in enumerate_sn(n).unwrap() {
                let a = phi_hat(&s);
                assert_eq!(a, phi_laguerre(&s), "{s}");
                assert_eq!(phi_hat(&a), s);
            }
        }
    }

    #[test]
    fn phi_fz_composite() {
        assert_eq!(phi_fz(&p("1")).to_string(), "R / 0");
        for n in 1..=6 {
            for s in enumerate_sn(n).unwrap() {
                assert_eq!(phi_fz_inv(&phi_fz(&s)), s);
                assert_eq!(phi_fz_inv(&xi(&phi_fz(&s))), theta(&s), "{s}");
            }
        }
    }

    #[test]
    fn theta_hat_conjugates_theta_by_inverse() {
        for n in 1..=7 {
            for s in enumerate_sn(n).unwrap() {
                assert_eq!(theta_hat(&s), theta(&s.inverse()).inverse());
            }
        }
    }
}
