//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`TruncatedSeries`] certifies its coefficients for degrees `0..=trunc`.
//! Binary operations take the smaller of the two certified ranges, and exact
//! division by a power of `q` gives up the top coefficients instead of
//! inventing them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficients `c_0, …, c_N` of a power series known modulo `q^(N+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

/// q-adic valuation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Degree of the lowest nonzero coefficient.
    At(usize),
    /// Every certified coefficient vanishes.
    BeyondTruncation,
}

impl Valuation {
    /// True when the valuation is provably at least `bound` within the
    /// certified range.
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Valuation::At(v) => v >= bound,
            Valuation::BeyondTruncation => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::At(v) => write!(f, "{v}"),
            Valuation::BeyondTruncation => f.write_str("beyond truncation"),
        }
    }
}

/// First degree at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: usize,
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    #[serde(with = "decimal")]
    pub rhs: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}: {} vs {}", self.degree, self.lhs, self.rhs)
    }
}

impl TruncatedSeries {
    /// The zero series certified through `q^trunc`.
    pub fn zero(trunc: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, trunc)
    }

    /// `q^w` certified through `q^trunc` (zero when `w > trunc`).
    pub fn monomial(w: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if w <= trunc {
            s.coeffs[w] = BigInt::one();
        }
        s
    }

    /// Builds a series from its coefficients; the truncation is `len - 1`.
    ///
    /// # Panics
    ///
    /// Panics on an empty coefficient vector.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series has at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Last certified degree.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^j`; panics if `j` is past the certified range.
    pub fn coeff(&self, j: usize) -> &BigInt {
        &self.coeffs[j]
    }

    /// Forgets every coefficient above `q^n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.trunc());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Multiplication by `q^w`; coefficients pushed past the truncation are dropped.
    pub fn shift(&self, w: usize) -> Self {
        let n = self.trunc();
        let mut out = Self::zero(n);
        if w <= n {
            out.coeffs[w..].clone_from_slice(&self.coeffs[..=n - w]);
        }
        out
    }

    /// Exact division by `q^w`.
    ///
    /// The result is certified through `trunc - w`. Fails when a coefficient
    /// below `q^w` is nonzero, or when `w` exceeds the certified range.
    pub fn div_q_pow(&self, w: usize) -> Result<Self> {
        if w == 0 {
            return Ok(self.clone());
        }
        if let Some((degree, value)) = self
            .coeffs
            .iter()
            .take(w)
            .enumerate()
            .find(|(_, c)| !c.is_zero())
        {
            return Err(Error::NonDivisible {
                power: w,
                degree,
                value: value.to_string(),
            });
        }
        if w > self.trunc() {
            return Err(Error::TruncationTooShort {
                requested: w,
                available: self.trunc(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[w..].to_vec(),
        })
    }

    /// Smallest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(Valuation::BeyondTruncation, Valuation::At)
    }

    /// Compares coefficients `0..=n`; `Ok(None)` means they agree.
    pub fn eq_up_to(&self, other: &Self, n: usize) -> Result<Option<Mismatch>> {
        let available = self.trunc().min(other.trunc());
        if n > available {
            return Err(Error::TruncationTooShort {
                requested: n,
                available,
            });
        }
        Ok(self.coeffs[..=n]
            .iter()
            .zip(&other.coeffs[..=n])
            .position(|(a, b)| a != b)
            .map(|degree| Mismatch {
                degree,
                lhs: self.coeffs[degree].clone(),
                rhs: other.coeffs[degree].clone(),
            }))
    }

    /// Truncated expansion of `∏_{m ∈ parts} 1/(1 - q^m)`.
    ///
    /// The coefficient of `q^n` counts partitions of `n` whose parts lie in
    /// `parts`. Part sizes above `trunc` are ignored; duplicates are treated as
    /// a single part size.
    pub fn product_geometric_inverses(parts: &[usize], trunc: usize) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPart(0));
        }
        let mut sizes: Vec<usize> = parts.iter().copied().filter(|&m| m <= trunc).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let mut c = Self::one(trunc).coeffs;
        for m in sizes {
            for j in m..=trunc {
                let (lo, hi) = c.split_at_mut(j);
                hi[0] += &lo[j - m];
            }
        }
        Ok(Self { coeffs: c })
    }

    /// Partitions of `n` into parts `>= min_part`, for all `n <= trunc`.
    pub fn parts_at_least(min_part: usize, trunc: usize) -> Self {
        let parts: Vec<usize> = (min_part.max(1)..=trunc).collect();
        Self::product_geometric_inverses(&parts, trunc).expect("parts are positive")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let n = self.trunc().min(other.trunc());
        Self {
            coeffs: (0..=n)
                .map(|j| f(&self.coeffs[j], &other.coeffs[j]))
                .collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Truncated Cauchy product.
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut out = vec![BigInt::zero(); n + 1];
        for (u, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (v, b) in rhs.coeffs[..=n - u].iter().enumerate() {
                if !b.is_zero() {
                    out[u + v] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(q^{})", self.trunc() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    trunc: usize,
    coeffs: Vec<String>,
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr {
            trunc: s.trunc(),
            coeffs: s.coeffs.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = String;

    fn try_from(repr: SeriesRepr) -> std::result::Result<Self, String> {
        if repr.coeffs.len() != repr.trunc + 1 {
            return Err(format!(
                "trunc {} needs {} coefficients, found {}",
                repr.trunc,
                repr.trunc + 1,
                repr.coeffs.len()
            ));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient {c:?}: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

/// Serde adapter writing big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(c)
    }

    #[test]
    fn one_is_identity() {
        assert_eq!(TruncatedSeries::one(3), s(&[1, 0, 0, 0]));
        assert_eq!(TruncatedSeries::one(0), s(&[1]));
        let a = s(&[4, -2, 9]);
        assert_eq!(&TruncatedSeries::one(2) * &a, a);
    }

    #[test]
    fn add_and_sub() {
        assert_eq!(&s(&[1, 2]) + &s(&[0, 3]), s(&[1, 5]));
        assert_eq!(&s(&[1, 1]) - &s(&[1, 1]), s(&[0, 0]));
        assert_eq!(&s(&[0, 1]) - &s(&[0, 2]), s(&[0, -1]));
        // mixed truncation takes the minimum
        assert_eq!((&s(&[1, 1, 1]) + &s(&[1, 1])).trunc(), 1);
    }

    #[test]
    fn cauchy_product() {
        assert_eq!(&s(&[1, 1, 1]) * &s(&[1, 1, 1]), s(&[1, 2, 3]));
        assert_eq!(&s(&[0, 1, 0]) * &s(&[0, 1, 0]), s(&[0, 0, 1]));
    }

    #[test]
    fn shift_drops_overflow() {
        assert_eq!(s(&[1, 2, 3]).shift(1), s(&[0, 1, 2]));
        assert_eq!(s(&[1, 2, 3]).shift(0), s(&[1, 2, 3]));
        assert_eq!(s(&[1, 0, 0]).shift(5), s(&[0, 0, 0]));
    }

    #[test]
    fn exact_deshift() {
        assert_eq!(s(&[0, 0, 1, 4]).div_q_pow(2).unwrap(), s(&[1, 4]));
        assert!(matches!(
            s(&[1, 0]).div_q_pow(1),
            Err(Error::NonDivisible { degree: 0, .. })
        ));
        assert_eq!(s(&[3, 1]).div_q_pow(0).unwrap(), s(&[3, 1]));
        assert!(matches!(
            s(&[0, 0]).div_q_pow(2),
            Err(Error::TruncationTooShort { .. })
        ));
    }

    #[test]
    fn geometric_products_count_partitions() {
        let p = TruncatedSeries::product_geometric_inverses;
        assert_eq!(p(&[1], 4).unwrap(), s(&[1, 1, 1, 1, 1]));
        // parts 1, 4, 7 mod 8
        assert_eq!(p(&[1, 4, 7], 6).unwrap(), s(&[1, 1, 1, 1, 2, 2, 2]));
        // parts 3, 4, 5 mod 8; weight 7 has only 4 + 3
        assert_eq!(p(&[3, 4, 5], 7).unwrap(), s(&[1, 0, 0, 1, 1, 1, 1, 1]));
        assert_eq!(p(&[0, 1], 3), Err(Error::InvalidPart(0)));
    }

    #[test]
    fn comparison_reports_first_mismatch() {
        assert_eq!(s(&[1, 1]).eq_up_to(&s(&[1, 1]), 1).unwrap(), None);
        let m = s(&[1, 1]).eq_up_to(&s(&[1, 2]), 1).unwrap().unwrap();
        assert_eq!((m.degree, m.lhs, m.rhs), (1, 1.into(), 2.into()));
        assert!(matches!(
            s(&[1, 1]).eq_up_to(&s(&[1, 1, 1]), 2),
            Err(Error::TruncationTooShort {
                requested: 2,
                available: 1
            })
        ));
    }

    #[test]
    fn valuations() {
        assert_eq!(s(&[0, 0, 5, 1]).valuation(), Valuation::At(2));
        assert_eq!(s(&[0, 0, 0]).valuation(), Valuation::BeyondTruncation);
        assert_eq!(s(&[7]).valuation(), Valuation::At(0));
        assert!(Valuation::BeyondTruncation.at_least(1000));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let big = TruncatedSeries::from_coeffs(vec![
            BigInt::from(1),
            "123456789012345678901234567890".parse().unwrap(),
        ]);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(
            text,
            r#"{"trunc":1,"coeffs":["1","123456789012345678901234567890"]}"#
        );
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<TruncatedSeries>(r#"{"trunc":2,"coeffs":["1"]}"#).is_err());
    }

    fn series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-50i64..50, n + 1).prop_map(|c| TruncatedSeries::from_i64s(&c))
    }

    fn brute_partition_count(n: usize, parts: &[usize], max_idx: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (0..max_idx)
            .filter(|&k| parts[k] <= n)
            .map(|k| brute_partition_count(n - parts[k], parts, k + 1))
            .sum()
    }

    proptest! {
        #[test]
        fn ring_laws(a in series(8), b in series(8), c in series(8)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn deshift_inverts_shift(a in series(10), w in 0usize..6) {
            let shifted = a.shift(w);
            let back = shifted.div_q_pow(w).unwrap();
            // the quotient is certified through 10 - w only
            prop_assert_eq!(back.shift(w).eq_up_to(&shifted, 10 - w).unwrap(), None);
            prop_assert_eq!(back, a.truncate(10 - w));
        }

        #[test]
        fn product_matches_brute_force(
            parts in prop::collection::btree_set(1usize..12, 1..5),
            n in 0usize..20,
        ) {
            let parts: Vec<usize> = parts.into_iter().collect();
            let dp = TruncatedSeries::product_geometric_inverses(&parts, n).unwrap();
            for j in 0..=n {
                prop_assert_eq!(dp.coeff(j), &BigInt::from(brute_partition_count(j, &parts, parts.len())));
            }
        }

        #[test]
        fn larger_truncation_keeps_prefix(
            parts in prop::collection::btree_set(1usize..12, 1..5),
            n in 0usize..15,
            extra in 0usize..10,
        ) {
            let parts: Vec<usize> = parts.into_iter().collect();
            let short = TruncatedSeries::product_geometric_inverses(&parts, n).unwrap();
            let long = TruncatedSeries::product_geometric_inverses(&parts, n + extra).unwrap();
            prop_assert_eq!(long.truncate(n), short);
        }
    }
}
