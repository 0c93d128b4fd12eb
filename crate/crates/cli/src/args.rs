use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ggverify",
    version,
    about = "Exact coefficient checks for Göllnitz–Gordon–Andrews type identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a product-side series C_index or a gap-side series E_{r,i,J}.
    Series(SeriesArgs),
    /// Print the partition counts C_{r,i}(n), D_{r,i}(n) or E_{r,i,J}(n).
    Count(CountArgs),
    /// Dump an ideal's minimal generators and its Hilbert–Poincaré series.
    Hilbert(HilbertArgs),
    /// Run identity checks over a parameter matrix.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// C_index(q), the product side and its recursive extension.
    C,
    /// E_{r,i,J}(q), the gap-condition generating function.
    E,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SeriesArgs {
    pub kind: SeriesKind,
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub index: Option<i64>,
    #[arg(long)]
    pub i: Option<i64>,
    #[arg(long = "J", default_value_t = 0)]
    pub shift: i64,
    #[arg(long = "N", default_value_t = 20)]
    pub n: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CountArgs {
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub i: i64,
    #[arg(long = "J", default_value_t = 0)]
    pub shift: i64,
    #[arg(long = "N", default_value_t = 20)]
    pub n: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "LriJ")]
    LriJ,
    #[value(name = "Lk")]
    Lk,
    #[value(name = "Lkl")]
    Lkl,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct HilbertArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub i: Option<i64>,
    #[arg(long = "J")]
    pub shift: Option<i64>,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub ell: Option<i64>,
    #[arg(long = "N", default_value_t = 20)]
    pub n: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Single value or inclusive range `A..B`.
    #[arg(long, default_value = "2..4")]
    pub r: IntRange,
    /// A single i, or `all` for 1..=r.
    #[arg(long, default_value = "all")]
    pub i: ISelect,
    #[arg(long = "J", default_value = "0")]
    pub shift: IntRange,
    #[arg(long = "N", default_value_t = 40)]
    pub n: i64,
    /// Add the lemma-level checks (n1, f1–f3, t1, M-expansion, M = N, limits).
    #[arg(long)]
    pub lemmas: bool,
    /// Emit reports in parameter order instead of completion order.
    #[arg(long)]
    pub ordered: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

/// Inclusive integer range parsed from `A` or `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("expected an integer or A..B, got {s:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ISelect {
    All,
    One(i64),
}

impl FromStr for ISelect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::All);
        }
        s.trim()
            .parse()
            .map(Self::One)
            .map_err(|_| format!("expected an integer or `all`, got {s:?}"))
    }
}
