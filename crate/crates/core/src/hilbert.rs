//! The ideal families `L_{r,i,J}`, `L_k`, `L_k^ℓ` and Hilbert–Poincaré series
//! of their quotients.
//!
//! Two engines compute the series of `S_k / I`:
//!
//! - [`GradedQuotient::hp_brute`] counts standard monomials degree by degree;
//! - [`GradedQuotient::hp_split`] applies
//!   `HP(A/I) = q^w HP(A/(I : f)) + HP(A/(I, f))` recursively with a variable
//!   pivot `f = x_k`.
//!
//! They share no code beyond the ideal type, so agreement between them is a
//! meaningful check.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::partitions::{check_r, check_ri};
use crate::qseries::TruncatedSeries;

/// `S_k / I` graded by weight, with `S_k = F[x_k, x_{k+1}, …]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotient {
    ideal: MonomialIdeal,
}

impl GradedQuotient {
    pub fn new(ideal: MonomialIdeal) -> Self {
        Self { ideal }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn min_var(&self) -> usize {
        self.ideal.min_var()
    }

    pub fn trunc(&self) -> usize {
        self.ideal.trunc()
    }

    /// Hilbert–Poincaré series by direct enumeration of standard monomials.
    ///
    /// Monomials are grown one variable at a time in non-increasing index
    /// order; a non-standard monomial has no standard multiples, so its
    /// subtree is skipped.
    pub fn hp_brute(&self) -> TruncatedSeries {
        let n = self.trunc();
        if self.ideal.is_unit() {
            return TruncatedSeries::zero(n);
        }
        let mut by_var: Vec<Vec<&Monomial>> = vec![Vec::new(); n + 1];
        for g in self.ideal.gens() {
            for &(k, _) in g.exps() {
                by_var[k].push(g);
            }
        }
        let mut walk = BruteWalk {
            by_var,
            exps: vec![0; n + 1],
            counts: vec![0; n + 1],
            min_var: self.min_var(),
        };
        walk.visit(n, 0);
        TruncatedSeries::from_coeffs(walk.counts.into_iter().map(BigInt::from).collect())
    }

    /// Hilbert–Poincaré series by the splitting recursion, memoized per call.
    pub fn hp_split(&self) -> TruncatedSeries {
        Splitter::default().hp(&self.ideal)
    }
}

struct BruteWalk<'a> {
    by_var: Vec<Vec<&'a Monomial>>,
    exps: Vec<u32>,
    counts: Vec<u64>,
    min_var: usize,
}

impl BruteWalk<'_> {
    fn visit(&mut self, max_var: usize, sum: usize) {
        self.counts[sum] += 1;
        let top = max_var.min(self.counts.len() - 1 - sum);
        for v in (self.min_var..=top).rev() {
            self.exps[v] += 1;
            let exps = &self.exps;
            let hit = self.by_var[v]
                .iter()
                .any(|g| g.exps().iter().all(|&(k, e)| exps[k] >= e));
            if !hit {
                self.visit(v, sum + v);
            }
            self.exps[v] -= 1;
        }
    }
}

/// Memo table for the splitting recursion, keyed on the canonical ideal
/// (minimal generators, ambient ring, remaining degree budget).
///
/// Each step removes weight from the problem:
/// - variables below the smallest one in any generator are free and factor
///   out, raising the ambient ring's first variable;
/// - a linear generator `x_k` with `k` the first variable removes `x_k` from
///   the ring;
/// - otherwise `x_k` divides some generator, so `(I : x_k)` strictly lowers
///   that generator's degree while the budget drops by `k`, and `I + (x_k)`
///   falls into the previous case.
///
/// Generator degrees and the budget are finite, so the recursion terminates.
#[derive(Default)]
struct Splitter {
    memo: HashMap<MonomialIdeal, TruncatedSeries>,
}

impl Splitter {
    fn hp(&mut self, ideal: &MonomialIdeal) -> TruncatedSeries {
        let n = ideal.trunc();
        if ideal.is_unit() {
            return TruncatedSeries::zero(n);
        }
        if ideal.is_zero() {
            return TruncatedSeries::parts_at_least(ideal.min_var(), n);
        }
        if let Some(hit) = self.memo.get(ideal) {
            return hit.clone();
        }
        let pivot = ideal
            .gens()
            .iter()
            .filter_map(Monomial::min_var)
            .min()
            .expect("a proper nonzero ideal has a non-unit generator");
        let out = if pivot > ideal.min_var() {
            let free: Vec<usize> = (ideal.min_var()..pivot).collect();
            let free = TruncatedSeries::product_geometric_inverses(&free, n)
                .expect("variable indices are positive");
            &free * &self.hp(&ideal.rebased(pivot))
        } else if ideal.gens().contains(&Monomial::var(pivot)) {
            self.hp(&ideal.without_var(pivot, pivot + 1))
        } else {
            let colon = self.hp(&ideal.colon_var(pivot).with_trunc(n - pivot));
            let rest = self.hp(&ideal.add_var(pivot));
            &raise(&colon, pivot, n) + &rest
        };
        self.memo.insert(ideal.clone(), out.clone());
        out
    }
}

/// `q^w · s` where `s` is certified through `n - w`, returned through `n`.
fn raise(s: &TruncatedSeries, w: usize, n: usize) -> TruncatedSeries {
    debug_assert_eq!(s.trunc() + w, n);
    let mut coeffs = vec![BigInt::default(); w];
    coeffs.extend_from_slice(s.coeffs());
    TruncatedSeries::from_coeffs(coeffs)
}

fn mono(pairs: &[(usize, u32)]) -> Monomial {
    Monomial::new(pairs.iter().copied())
}

/// Generators of `L_k` (weight at most `trunc`) for indices `>= k`.
fn l_k_gens(k: usize, r: usize, trunc: usize) -> Vec<Monomial> {
    let r32 = r as u32;
    let mut gens = Vec::new();
    for v in k..=trunc {
        if v % 2 == 1 {
            gens.push(mono(&[(v, 2)]));
            gens.push(mono(&[(v, 1), (v + 1, r32 - 1)]));
        } else {
            for n1 in 0..r32 {
                gens.push(mono(&[(v, r32 - n1), (v + 2, n1)]));
            }
            for n2 in 0..r32 - 1 {
                gens.push(mono(&[(v, r32 - n2 - 1), (v + 1, 1), (v + 2, n2)]));
            }
        }
    }
    gens
}

fn l_k_ell_gens(k: usize, ell: usize, r: usize, trunc: usize) -> Vec<Monomial> {
    let (ell, r32) = (ell as u32, r as u32);
    let mut gens = Vec::new();
    if k % 2 == 1 {
        gens.push(mono(&[(k, 2)]));
        gens.push(mono(&[(k, 1), (k + 1, ell - 1)]));
        gens.extend(l_k_ell_gens(k + 1, ell as usize, r, trunc));
    } else {
        gens.push(mono(&[(k, ell)]));
        for j in 1..ell {
            gens.push(mono(&[(k, ell - j), (k + 2, r32 - ell + j)]));
        }
        // x_k keeps exponent >= 1, so the family is empty for ell = 1
        for j in 0..ell.saturating_sub(1) {
            gens.push(mono(&[
                (k, ell - 1 - j),
                (k + 1, 1),
                (k + 2, r32 - ell + j),
            ]));
        }
        gens.extend(l_k_gens(k + 1, r, trunc));
    }
    gens
}

/// `L_{r,i,J} ⊂ S_{2J+1}`.
pub fn build_l_rij(r: usize, i: usize, j: usize, trunc: usize) -> Result<MonomialIdeal> {
    check_ri(r, i)?;
    let (lo, hi) = (2 * j + 1, 2 * j + 2);
    let i32_ = i as u32;
    let mut gens = vec![
        mono(&[(lo, 2)]),
        mono(&[(lo, 1), (hi, i32_ - 1)]),
        mono(&[(hi, i32_)]),
    ];
    gens.extend(l_k_gens(hi, r, trunc));
    MonomialIdeal::new(gens, lo, trunc)
}

/// `L_k ⊂ S_k`.
pub fn build_l_k(k: usize, r: usize, trunc: usize) -> Result<MonomialIdeal> {
    check_r(r)?;
    if k == 0 {
        return Err(Error::ParamOutOfRange("k must be at least 1".into()));
    }
    MonomialIdeal::new(l_k_gens(k, r, trunc), k, trunc)
}

/// `L_k^ℓ ⊂ S_k`.
pub fn build_l_k_ell(k: usize, ell: usize, r: usize, trunc: usize) -> Result<MonomialIdeal> {
    check_ri(r, ell)?;
    if k == 0 {
        return Err(Error::ParamOutOfRange("k must be at least 1".into()));
    }
    MonomialIdeal::new(l_k_ell_gens(k, ell, r, trunc), k, trunc)
}

/// `HP^k` (when `ell` is `None`) or `HP_ℓ^k`, through `q^trunc`.
pub fn hp_notation(
    k: usize,
    ell: Option<usize>,
    r: usize,
    trunc: usize,
) -> Result<TruncatedSeries> {
    let ideal = match ell {
        None => build_l_k(k, r, trunc)?,
        Some(ell) => build_l_k_ell(k, ell, r, trunc)?,
    };
    Ok(GradedQuotient::new(ideal).hp_split())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::series_e;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn quotient(gens: &[&str], min_var: usize, n: usize) -> GradedQuotient {
        GradedQuotient::new(MonomialIdeal::new(gens.iter().map(|s| m(s)), min_var, n).unwrap())
    }

    #[test]
    fn free_quotient_counts_partitions() {
        let q = quotient(&[], 1, 20);
        let p = TruncatedSeries::parts_at_least(1, 20);
        assert_eq!(q.hp_brute(), p);
        assert_eq!(q.hp_split(), p);
        let q3 = quotient(&[], 3, 20);
        assert_eq!(q3.hp_split(), TruncatedSeries::parts_at_least(3, 20));
        assert_eq!(q3.hp_brute(), TruncatedSeries::parts_at_least(3, 20));
    }

    #[test]
    fn square_of_first_variable() {
        // 1, x1, x2 survive through weight 2
        assert_eq!(
            quotient(&["x1^2"], 1, 2).hp_brute(),
            TruncatedSeries::from_i64s(&[1, 1, 1])
        );
        let q = quotient(&["x1^2"], 1, 12);
        let one_plus_q = &TruncatedSeries::one(12) + &TruncatedSeries::monomial(1, 12);
        let expected = &one_plus_q * &TruncatedSeries::parts_at_least(2, 12);
        assert_eq!(q.hp_brute(), expected);
        assert_eq!(q.hp_split(), expected);
    }

    #[test]
    fn unit_ideal_has_zero_series() {
        let q = GradedQuotient::new(MonomialIdeal::unit(1, 6));
        assert_eq!(q.hp_brute(), TruncatedSeries::zero(6));
        assert_eq!(q.hp_split(), TruncatedSeries::zero(6));
    }

    #[test]
    fn pivot_above_first_variable() {
        let q = quotient(&["x3^2", "x3*x5", "x7"], 2, 18);
        assert_eq!(q.hp_split(), q.hp_brute());
    }

    #[test]
    fn l_rij_small_case() {
        let i = build_l_rij(2, 2, 0, 8).unwrap();
        assert_eq!(
            i.gen_strings(),
            ["x1^2", "x1*x2", "x2^2", "x2*x3", "x2*x4", "x3^2", "x3*x4", "x4^2"]
        );
        assert_eq!(i.min_var(), 1);
    }

    #[test]
    fn l_rij_with_i_one_collapses_boundary() {
        let i = build_l_rij(3, 1, 1, 20).unwrap();
        assert!(i.gens().contains(&m("x3")));
        assert!(!i.gens().iter().any(|g| g == &m("x3^2")));
        assert!(i.gens().iter().all(|g| g.weight() <= 20));
    }

    #[test]
    fn l_k_pure_powers() {
        let l = build_l_k(4, 3, 30).unwrap();
        assert!(l.gens().contains(&m("x4^3")));
        assert!(l.gens().contains(&m("x5^2")));
        assert!(l.gens().contains(&m("x5*x6^2")));
        assert_eq!(l.min_var(), 4);
    }

    #[test]
    fn l_k_ell_degenerate_even_case() {
        let l = build_l_k_ell(2, 1, 3, 20).unwrap();
        let expected = MonomialIdeal::new(
            build_l_k(3, 3, 20)
                .unwrap()
                .gens()
                .iter()
                .cloned()
                .chain([m("x2")]),
            2,
            20,
        )
        .unwrap();
        assert_eq!(l, expected);
    }

    #[test]
    fn builders_reject_bad_params() {
        assert!(build_l_rij(1, 1, 0, 10).is_err());
        assert!(build_l_rij(3, 4, 0, 10).is_err());
        assert!(build_l_k(0, 3, 10).is_err());
        assert!(build_l_k_ell(3, 0, 3, 10).is_err());
        assert!(hp_notation(3, Some(5), 3, 10).is_err());
    }

    #[test]
    fn splitting_step_holds_for_brute_force() {
        let ideal = build_l_rij(3, 2, 0, 16).unwrap();
        let n = ideal.trunc();
        for k in 1..=4 {
            let whole = GradedQuotient::new(ideal.clone()).hp_brute();
            let colon = GradedQuotient::new(ideal.colon_var(k)).hp_brute();
            let plus = GradedQuotient::new(ideal.add_var(k)).hp_brute();
            assert_eq!(whole, &colon.shift(k) + &plus, "pivot x{k}");
            assert_eq!(whole.trunc(), n);
        }
    }

    #[test]
    fn hp_bridge_small() {
        for r in 2..=3 {
            for i in 1..=r {
                for j in 0..=1 {
                    let q = GradedQuotient::new(build_l_rij(r, i, j, 20).unwrap());
                    assert_eq!(
                        q.hp_split(),
                        series_e(r, i, j, 20).unwrap(),
                        "r={r} i={i} J={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn tail_of_hp_k() {
        for d in 0..=6 {
            let hp = hp_notation(2 * d + 3, None, 3, 24).unwrap();
            let tail = &hp - &TruncatedSeries::one(24);
            assert!(tail.valuation().at_least(2 * d + 3), "d={d}");
        }
    }
}
