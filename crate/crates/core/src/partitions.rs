//! Partition enumeration and the three counting families.
//!
//! - `C`: partitions into parts avoiding `2 (mod 4)`, `0 (mod 4r)` and
//!   `2r ± (2·index − 1) (mod 4r)`; counted through the product expansion.
//! - `D`: gap-condition partitions, counted by exhaustive enumeration.
//! - `E`: the `J`-shifted gap family; `E` at `J = 0` is `D`.
//!
//! `D` and `E` never go through the series code, so they serve as an
//! independent check of the product side.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::TruncatedSeries;

/// Non-increasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts `parts` into non-increasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPart(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The integer being partitioned.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: usize) -> usize {
        self.0.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Validated parameter bundle `(r, i, J, ℓ = r − i + 1, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IdentityParams {
    pub r: usize,
    pub i: usize,
    #[serde(rename = "J")]
    pub j: usize,
    pub ell: usize,
    #[serde(rename = "N")]
    pub n: usize,
}

impl IdentityParams {
    pub fn new(r: usize, i: usize, j: usize, n: usize) -> Result<Self> {
        check_ri(r, i)?;
        Ok(Self {
            r,
            i,
            j,
            ell: r - i + 1,
            n,
        })
    }

    /// Index `(r − 1)J + ℓ` of the product-side series.
    pub fn c_index(&self) -> usize {
        (self.r - 1) * self.j + self.ell
    }
}

pub(crate) fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::ParamOutOfRange(format!(
            "r must be at least 2, got {r}"
        )));
    }
    Ok(())
}

pub(crate) fn check_ri(r: usize, i: usize) -> Result<()> {
    check_r(r)?;
    if !(1..=r).contains(&i) {
        return Err(Error::ParamOutOfRange(format!(
            "i must lie in 1..={r}, got {i}"
        )));
    }
    Ok(())
}

/// Lazy stream of the partitions of `n` with every part `>= min_part`, in
/// lexicographically decreasing order.
#[derive(Clone, Debug)]
pub struct Partitions {
    parts: Vec<usize>,
    rem: usize,
    min_part: usize,
    fresh: bool,
    done: bool,
}

/// Every partition of `n` whose parts are at least `min_part` (clamped to 1).
pub fn enumerate_partitions(n: usize, min_part: usize) -> Partitions {
    Partitions {
        parts: Vec::new(),
        rem: n,
        min_part: min_part.max(1),
        fresh: true,
        done: false,
    }
}

impl Partitions {
    // Replaces the last part that can still shrink by the next smaller value.
    fn backtrack(&mut self) -> bool {
        while let Some(p) = self.parts.pop() {
            self.rem += p;
            if p > self.min_part {
                self.parts.push(p - 1);
                self.rem -= p - 1;
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.backtrack() {
            self.done = true;
            return None;
        }
        loop {
            if self.rem == 0 {
                return Some(Partition(self.parts.clone()));
            }
            let cap = self.parts.last().map_or(self.rem, |&p| p.min(self.rem));
            if cap >= self.min_part {
                self.parts.push(cap);
                self.rem -= cap;
            } else if !self.backtrack() {
                self.done = true;
                return None;
            }
        }
    }
}

/// Part sizes `m <= n` allowed in the product `𝒞_index`: not `2 (mod 4)`,
/// not `0 (mod 4r)`, not `2r ± (2·index − 1) (mod 4r)`.
pub fn allowed_parts_c(r: usize, index: usize, n: usize) -> Result<Vec<usize>> {
    check_r(r)?;
    if !(1..=r).contains(&index) {
        return Err(Error::IndexOutOfRange { index, r });
    }
    let modulus = 4 * r;
    let odd = 2 * index - 1;
    let excluded = [
        0,
        (2 * r + odd) % modulus,
        (2 * r + modulus - odd) % modulus,
    ];
    Ok((1..=n)
        .filter(|m| m % 4 != 2 && !excluded.contains(&(m % modulus)))
        .collect())
}

/// `C_{r,i}(n)` for `n <= params.n`: partitions into the parts of `𝒞_ℓ`.
pub fn series_c(params: &IdentityParams) -> TruncatedSeries {
    let parts = allowed_parts_c(params.r, params.ell, params.n).expect("validated params");
    TruncatedSeries::product_geometric_inverses(&parts, params.n).expect("parts are positive")
}

/// `C_{r,i}(n)`, read off the product expansion.
pub fn count_c(params: &IdentityParams, n: usize) -> BigInt {
    let at_n = IdentityParams { n, ..*params };
    series_c(&at_n).coeff(n).clone()
}

/// Gap-condition filter for the `E_{r,i,J}` family (and `D_{r,i}` at `J = 0`).
#[derive(Clone, Copy, Debug)]
struct GapRules {
    r: usize,
    i: usize,
    j: usize,
}

impl GapRules {
    fn new(r: usize, i: usize, j: usize) -> Result<Self> {
        check_ri(r, i)?;
        Ok(Self { r, i, j })
    }

    fn min_part(&self) -> usize {
        2 * self.j + 1
    }

    fn is_boundary(&self, p: usize) -> bool {
        p == 2 * self.j + 1 || p == 2 * self.j + 2
    }

    /// Whether appending `next` to an admissible non-increasing prefix keeps it
    /// admissible. Every condition only looks backwards, so a rejected prefix
    /// has no admissible extension.
    fn accepts(&self, prefix: &[usize], boundary: usize, next: usize) -> bool {
        if next < self.min_part() {
            return false;
        }
        if next % 2 == 1 && prefix.last() == Some(&next) {
            return false;
        }
        if self.is_boundary(next) && boundary + 1 > self.i - 1 {
            return false;
        }
        // λ_m − λ_{m+r−1} where next sits at position m + r − 1
        if prefix.len() + 1 >= self.r {
            let lead = prefix[prefix.len() + 1 - self.r];
            let gap = if lead % 2 == 1 { 2 } else { 3 };
            if lead - next < gap {
                return false;
            }
        }
        true
    }

    /// Counts admissible partitions of every `n <= trunc` in one pass.
    fn count_all(&self, trunc: usize) -> Vec<u64> {
        let mut counts = vec![0u64; trunc + 1];
        let mut prefix = Vec::new();
        self.walk(&mut prefix, 0, 0, trunc, &mut counts);
        counts
    }

    fn walk(
        &self,
        prefix: &mut Vec<usize>,
        sum: usize,
        boundary: usize,
        trunc: usize,
        counts: &mut [u64],
    ) {
        counts[sum] += 1;
        let cap = prefix.last().map_or(trunc - sum, |&p| p.min(trunc - sum));
        for next in (self.min_part()..=cap).rev() {
            if self.accepts(prefix, boundary, next) {
                prefix.push(next);
                let b = boundary + usize::from(self.is_boundary(next));
                self.walk(prefix, sum + next, b, trunc, counts);
                prefix.pop();
            }
        }
    }
}

/// `D_{r,i}(n)` by pruned exhaustive enumeration.
pub fn count_d(r: usize, i: usize, n: usize) -> Result<u64> {
    count_e(r, i, 0, n)
}

/// `E_{r,i,J}(n)` by pruned exhaustive enumeration.
pub fn count_e(r: usize, i: usize, j: usize, n: usize) -> Result<u64> {
    Ok(GapRules::new(r, i, j)?.count_all(n)[n])
}

/// Generating function of `E_{r,i,J}` through `q^trunc`.
pub fn series_e(r: usize, i: usize, j: usize, trunc: usize) -> Result<TruncatedSeries> {
    let counts = GapRules::new(r, i, j)?.count_all(trunc);
    Ok(TruncatedSeries::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// The partitions of `n` counted by `E_{r,i,J}(n)`, in enumeration order.
pub fn e_partitions(r: usize, i: usize, j: usize, n: usize) -> Result<Vec<Partition>> {
    let rules = GapRules::new(r, i, j)?;
    Ok(enumerate_partitions(n, rules.min_part())
        .filter(|p| satisfies_e(p, r, i, j))
        .collect())
}

/// Literal check of the five `E_{r,i,J}` conditions on a whole partition.
pub fn satisfies_e(p: &Partition, r: usize, i: usize, j: usize) -> bool {
    let parts = p.parts();
    let no_repeated_odd = parts.windows(2).all(|w| !(w[0] == w[1] && w[0] % 2 == 1));
    let gaps = parts.iter().zip(parts.iter().skip(r - 1)).all(|(&a, &b)| {
        if a % 2 == 1 {
            a - b >= 2
        } else {
            a - b >= 3
        }
    });
    let above = parts.iter().all(|&x| x > 2 * j);
    let boundary = p.multiplicity(2 * j + 1) + p.multiplicity(2 * j + 2);
    no_repeated_odd && gaps && above && boundary < i
}
