//! Structured outcome of a single identity check.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qseries::{Mismatch, TruncatedSeries};

/// One identity checked through `q^truncation`.
///
/// Serializes as
/// `{"check", "params", "pass", "first_mismatch", "truncation"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, usize>,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    pub truncation: usize,
}

impl Report {
    /// Compares `lhs` and `rhs` through `q^n`.
    pub fn compare(
        check: &str,
        params: &[(&str, usize)],
        lhs: &TruncatedSeries,
        rhs: &TruncatedSeries,
        n: usize,
    ) -> Result<Self> {
        let mismatch = lhs.eq_up_to(rhs, n)?;
        Ok(Self {
            check: check.to_owned(),
            params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            pass: mismatch.is_none(),
            first_mismatch: mismatch,
            truncation: n,
        })
    }

    pub fn with_param(mut self, key: &str, value: usize) -> Self {
        self.params.insert(key.to_owned(), value);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.check)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        write!(f, " N={}", self.truncation)?;
        if let Some(m) = &self.first_mismatch {
            write!(f, " first mismatch at {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema() {
        let a = TruncatedSeries::from_i64s(&[1, 2, 3]);
        let b = TruncatedSeries::from_i64s(&[1, 2, 4]);
        let ok = Report::compare("demo", &[("r", 2)], &a, &a, 2).unwrap();
        assert_eq!(
            ok.to_json_line(),
            r#"{"check":"demo","params":{"r":2},"pass":true,"first_mismatch":null,"truncation":2}"#
        );
        let bad = Report::compare("demo", &[("r", 2)], &a, &b, 2).unwrap();
        assert_eq!(
            bad.to_json_line(),
            r#"{"check":"demo","params":{"r":2},"pass":false,"first_mismatch":{"degree":2,"lhs":"3","rhs":"4"},"truncation":2}"#
        );
        let back: Report = serde_json::from_str(&bad.to_json_line()).unwrap();
        assert_eq!(back, bad);
        assert!(bad.to_string().starts_with("FAIL demo r=2"));
    }
}
