//! Monomials in `x_1, x_2, …` graded by weight, and monomial ideals cut off
//! at a truncation degree.
//!
//! The variable `x_k` has weight `k`, so a monomial of weight `n` is the same
//! thing as a partition of `n`. Only degrees up to the truncation matter, which
//! keeps every ideal finitely generated: generators heavier than the
//! truncation can never divide a monomial that is counted.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// `∏ x_k^{α_k}` stored as `(k, α_k)` pairs with increasing `k` and `α_k > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
    weight: usize,
}

impl Monomial {
    /// The unit monomial `1`.
    pub fn one() -> Self {
        Self {
            exps: Vec::new(),
            weight: 0,
        }
    }

    pub fn var(k: usize) -> Self {
        Self::new([(k, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs. Repeated variables
    /// are merged and zero exponents dropped.
    ///
    /// # Panics
    ///
    /// Panics on variable index 0.
    pub fn new(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exps: Vec<(usize, u32)> = Vec::new();
        for (k, e) in pairs {
            assert!(k >= 1, "variables are indexed from 1");
            if e > 0 {
                exps.push((k, e));
            }
        }
        exps.sort_unstable();
        exps.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        let weight = exps.iter().map(|&(k, e)| k * e as usize).sum();
        Self { exps, weight }
    }

    /// The monomial `x_{λ_1} x_{λ_2} ⋯` of a partition.
    pub fn from_partition(p: &Partition) -> Self {
        Self::new(p.parts().iter().map(|&k| (k, 1)))
    }

    /// The partition read off the exponents.
    pub fn to_partition(&self) -> Partition {
        let parts = self
            .exps
            .iter()
            .rev()
            .flat_map(|&(k, e)| std::iter::repeat_n(k, e as usize))
            .collect();
        Partition::new(parts).expect("variable indices are positive")
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn exps(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.exps
            .binary_search_by_key(&k, |&(v, _)| v)
            .map_or(0, |pos| self.exps[pos].1)
    }

    /// Smallest variable index present, `None` for the unit.
    pub fn min_var(&self) -> Option<usize> {
        self.exps.first().map(|&(k, _)| k)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(k, _)| k)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.weight > other.weight {
            return false;
        }
        self.exps.iter().all(|&(k, e)| other.exponent(k) >= e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().chain(&other.exps).copied())
    }

    /// `self / x_k` when `x_k` divides `self`.
    pub fn div_var(&self, k: usize) -> Option<Monomial> {
        let pos = self.exps.binary_search_by_key(&k, |&(v, _)| v).ok()?;
        let mut exps = self.exps.clone();
        if exps[pos].1 == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 -= 1;
        }
        Some(Monomial {
            exps,
            weight: self.weight - k,
        })
    }
}

impl Ord for Monomial {
    /// Weight first, then exponent pairs lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (n, &(k, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{k}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let bad = || Error::ParamOutOfRange(format!("malformed monomial {s:?}"));
        let mut pairs = Vec::new();
        for factor in s.split('*') {
            let body = factor.trim().strip_prefix('x').ok_or_else(bad)?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let var: usize = var.parse().map_err(|_| bad())?;
            if var == 0 {
                return Err(bad());
            }
            pairs.push((var, exp));
        }
        Ok(Monomial::new(pairs))
    }
}

/// Divisibility-minimal elements of `ms`, sorted; they generate the same ideal.
pub fn minimalize(ms: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = ms.into_iter().collect();
    all.sort_unstable();
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    // a proper divisor is strictly lighter, so it is already in `kept`
    for m in all {
        if !kept.iter().any(|g| g.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

/// Monomial ideal of `F[x_{min_var}, x_{min_var+1}, …]`, tracked only through
/// weight `trunc`.
///
/// Generators are kept minimal and sorted, so two ideals are equal exactly
/// when they have the same generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
    min_var: usize,
    trunc: usize,
}

impl MonomialIdeal {
    /// Ideal generated by `gens`; generators heavier than `trunc` are dropped.
    ///
    /// Fails if a generator uses a variable below `min_var` or if `min_var` is 0.
    pub fn new(
        gens: impl IntoIterator<Item = Monomial>,
        min_var: usize,
        trunc: usize,
    ) -> Result<Self> {
        if min_var == 0 {
            return Err(Error::ParamOutOfRange(
                "variables are indexed from 1".into(),
            ));
        }
        let mut kept = Vec::new();
        for g in gens {
            if let Some(k) = g.min_var() {
                if k < min_var {
                    return Err(Error::ParamOutOfRange(format!(
                        "generator {g} uses x{k} outside the ring starting at x{min_var}"
                    )));
                }
            }
            if g.weight() <= trunc {
                kept.push(g);
            }
        }
        Ok(Self {
            gens: minimalize(kept),
            min_var,
            trunc,
        })
    }

    /// The zero ideal.
    pub fn zero(min_var: usize, trunc: usize) -> Self {
        Self::new([], min_var, trunc).expect("no generators")
    }

    /// The whole ring.
    pub fn unit(min_var: usize, trunc: usize) -> Self {
        Self::new([Monomial::one()], min_var, trunc).expect("unit is in every ring")
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn min_var(&self) -> usize {
        self.min_var
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The same generators over `F[x_{min_var}, …]`; every generator must
    /// already avoid the variables below `min_var`.
    pub(crate) fn rebased(&self, min_var: usize) -> Self {
        debug_assert!(self
            .gens
            .iter()
            .all(|g| g.min_var().is_none_or(|k| k >= min_var)));
        Self {
            gens: self.gens.clone(),
            min_var,
            trunc: self.trunc,
        }
    }

    /// Drops every generator divisible by `x_k` and moves to the ring
    /// without the variables below `min_var`.
    pub(crate) fn without_var(&self, k: usize, min_var: usize) -> Self {
        Self {
            gens: self
                .gens
                .iter()
                .filter(|g| g.exponent(k) == 0)
                .cloned()
                .collect(),
            min_var,
            trunc: self.trunc,
        }
    }

    /// Same generators viewed through a smaller truncation.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        Self {
            gens: self
                .gens
                .iter()
                .filter(|g| g.weight() <= trunc)
                .cloned()
                .collect(),
            min_var: self.min_var,
            trunc,
        }
    }

    /// `(I : x_k)`.
    pub fn colon_var(&self, k: usize) -> Self {
        debug_assert!(k >= self.min_var);
        let gens = self
            .gens
            .iter()
            .map(|g| g.div_var(k).unwrap_or_else(|| g.clone()));
        Self {
            gens: minimalize(gens),
            min_var: self.min_var,
            trunc: self.trunc,
        }
    }

    /// `I + (x_k)`.
    pub fn add_var(&self, k: usize) -> Self {
        debug_assert!(k >= self.min_var);
        let x = Monomial::var(k);
        let gens = self
            .gens
            .iter()
            .cloned()
            .chain((k <= self.trunc).then_some(x));
        Self {
            gens: minimalize(gens),
            min_var: self.min_var,
            trunc: self.trunc,
        }
    }

    /// Ideal membership, up to the truncation.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// True when no generator divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.contains(m)
    }

    /// Number of standard monomials of weight `j` in `x_{min_var}, x_{min_var+1}, …`.
    pub fn standard_count(&self, j: usize) -> Result<u64> {
        if j > self.trunc {
            return Err(Error::DegreeBeyondTruncation {
                degree: j,
                trunc: self.trunc,
            });
        }
        Ok(enumerate_partitions(j, self.min_var)
            .filter(|p| self.is_standard(&Monomial::from_partition(p)))
            .count() as u64)
    }

    /// Generators in text form, e.g. `["x1^2", "x1*x2"]`.
    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(Monomial::to_string).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (n, g) in self.gens.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
