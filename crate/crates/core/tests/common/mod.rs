//! Oracles shared by the integration tests. Nothing here calls into the
//! library's counting code: partitions are generated by a separate recursion
//! and every condition is restated from its definition.

#![allow(dead_code)]

use ggverify::{Monomial, MonomialIdeal};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Calls `visit` on every partition of `n` (parts non-increasing, all `>= min`).
pub fn for_each_partition(n: usize, min: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(
        rest: usize,
        max: usize,
        min: usize,
        parts: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if rest == 0 {
            visit(parts);
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            parts.push(p);
            go(rest - p, p, min, parts, visit);
            parts.pop();
        }
    }
    go(n, n, min.max(1), &mut Vec::new(), visit);
}

/// Counts, for each `n <= n_max`, the partitions accepted by `pred`.
pub fn counts(n_max: usize, min: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Vec<u64> {
    (0..=n_max)
        .map(|n| {
            let mut c = 0;
            for_each_partition(n, min, &mut |p| c += u64::from(pred(p)));
            c
        })
        .collect()
}

/// A part allowed in `C_{r,i}(n)`: not 2 mod 4, not 0 or ±(2i−1) mod 4r.
pub fn c_part(r: usize, i: usize, m: usize) -> bool {
    let modulus = 4 * r;
    let res = m % modulus;
    let odd = 2 * i - 1;
    m % 4 != 2 && res != 0 && res != odd && res != modulus - odd
}

/// The five conditions defining `E_{r,i,J}(n)`; `J = 0` gives `D_{r,i}(n)`.
pub fn e_conditions(parts: &[usize], r: usize, i: usize, shift: usize) -> bool {
    let s = parts.len();
    for m in 0..s {
        let lam = parts[m];
        if lam % 2 == 1 && parts[m + 1..].contains(&lam) {
            return false;
        }
        if m + r - 1 < s {
            let gap = lam - parts[m + r - 1];
            if (lam % 2 == 1 && gap < 2) || (lam.is_multiple_of(2) && gap < 3) {
                return false;
            }
        }
    }
    if parts.iter().any(|&p| p <= 2 * shift) {
        return false;
    }
    let boundary = parts
        .iter()
        .filter(|&&p| p == 2 * shift + 1 || p == 2 * shift + 2)
        .count();
    boundary < i
}

pub fn e_counts(r: usize, i: usize, shift: usize, n_max: usize) -> Vec<u64> {
    counts(n_max, 1, |p| e_conditions(p, r, i, shift))
}

pub fn c_counts(r: usize, i: usize, n_max: usize) -> Vec<u64> {
    counts(n_max, 1, |p| p.iter().all(|&m| c_part(r, i, m)))
}

fn x(pairs: &[(usize, usize)]) -> Monomial {
    Monomial::new(pairs.iter().map(|&(k, e)| (k, e as u32)))
}

/// `L_{r,i,J}` written out term by term: the three boundary generators, then
/// `x_{2a−1}^2`, `x_{2b−1} x_{2b}^{r−1}`, `x_{2c}^{r−n1} x_{2c+2}^{n1}` and
/// `x_{2c}^{r−n2−1} x_{2c+1} x_{2c+2}^{n2}` over all indices `>= 2J+2`.
pub fn literal_l_rij(r: usize, i: usize, shift: usize, trunc: usize) -> MonomialIdeal {
    let lo = 2 * shift + 1;
    let mut gens = vec![
        x(&[(lo, 2)]),
        x(&[(lo, 1), (lo + 1, i - 1)]),
        x(&[(lo + 1, i)]),
    ];
    for idx in 2 * shift + 2..=trunc + 2 {
        if idx % 2 == 1 {
            // idx = 2a−1 = 2b−1
            gens.push(x(&[(idx, 2)]));
            gens.push(x(&[(idx, 1), (idx + 1, r - 1)]));
        } else {
            // idx = 2c
            for n1 in 0..r {
                gens.push(x(&[(idx, r - n1), (idx + 2, n1)]));
            }
            for n2 in 0..r - 1 {
                gens.push(x(&[(idx, r - n2 - 1), (idx + 1, 1), (idx + 2, n2)]));
            }
        }
    }
    MonomialIdeal::new(gens, lo, trunc).expect("literal ideal is well formed")
}

/// Standard-monomial count of `S_min / I` in each degree, by listing every
/// monomial as a partition with parts `>= min` and testing divisibility.
pub fn standard_counts(ideal: &MonomialIdeal, n_max: usize) -> Vec<u64> {
    counts(n_max, ideal.min_var(), |p| {
        let mut exps: Vec<(usize, usize)> = Vec::new();
        for &v in p {
            match exps.iter_mut().find(|(k, _)| *k == v) {
                Some(e) => e.1 += 1,
                None => exps.push((v, 1)),
            }
        }
        !ideal.gens().iter().any(|g| {
            g.exps()
                .iter()
                .all(|&(k, e)| exps.iter().any(|&(v, f)| v == k && f >= e as usize))
        })
    })
}

/// A random monomial ideal over `x_min .. x_8` with at most six generators.
pub fn random_ideal(rng: &mut ChaCha8Rng, trunc: usize) -> MonomialIdeal {
    let min_var = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=6);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| {
            let vars = rng.gen_range(1..=3);
            Monomial::new((0..vars).map(|_| (rng.gen_range(min_var..=8), rng.gen_range(1..=3u32))))
        })
        .collect();
    MonomialIdeal::new(gens, min_var, trunc).expect("variables respect min_var")
}
