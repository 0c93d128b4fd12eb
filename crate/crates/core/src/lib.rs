//! Exact verification of Göllnitz–Gordon–Andrews type partition identities.
//!
//! The crate computes three independent descriptions of the same generating
//! functions and compares them coefficient by coefficient up to a chosen
//! truncation degree:
//!
//! - the congruence products and their recursive extension ([`recursion`]),
//! - gap-condition partition counts by exhaustive enumeration ([`partitions`]),
//! - Hilbert–Poincaré series of monomial quotient algebras graded by weight
//!   ([`monomial`], [`hilbert`]).
//!
//! All arithmetic is over arbitrary-precision integers ([`qseries`]).

pub mod error;
pub mod hilbert;
pub mod monomial;
pub mod partitions;
pub mod qseries;
pub mod recursion;
pub mod report;

pub use error::{Error, Result};
pub use hilbert::GradedQuotient;
pub use monomial::{Monomial, MonomialIdeal};
pub use partitions::{IdentityParams, Partition};
pub use qseries::{Mismatch, TruncatedSeries, Valuation};
pub use recursion::{CoeffKind, CoeffTable};
pub use report::Report;
