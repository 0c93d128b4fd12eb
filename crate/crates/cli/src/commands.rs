use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Mutex;

use ggverify::hilbert::{build_l_k, build_l_k_ell, build_l_rij};
use ggverify::partitions::{series_c, series_e};
use ggverify::recursion::{
    c_series, verify_c_expansion, verify_hp_expansion, verify_hp_step, verify_limits,
    verify_m_equals_n, verify_main,
};
use ggverify::{Error, GradedQuotient, IdentityParams, MonomialIdeal, Report, TruncatedSeries};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    CountArgs, Family, Format, HilbertArgs, ISelect, OutputArgs, SeriesArgs, SeriesKind, VerifyArgs,
};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Mismatch = 1,
    Usage = 2,
    Arithmetic = 3,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(o as u8)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl CliError {
    pub fn outcome(&self) -> Outcome {
        match self {
            CliError::Usage(_) => Outcome::Usage,
            CliError::Core(
                Error::ParamOutOfRange(_) | Error::IndexOutOfRange { .. } | Error::InvalidPart(_),
            ) => Outcome::Usage,
            CliError::Core(_) | CliError::Io(_) => Outcome::Arithmetic,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn nonneg(name: &str, v: i64) -> CliResult<usize> {
    usize::try_from(v).map_err(|_| CliError::Usage(format!("{name} must be nonnegative, got {v}")))
}

fn positive(name: &str, v: i64) -> CliResult<usize> {
    match usize::try_from(v) {
        Ok(u) if u >= 1 => Ok(u),
        _ => Err(CliError::Usage(format!(
            "{name} must be at least 1, got {v}"
        ))),
    }
}

fn r_value(v: i64) -> CliResult<usize> {
    match usize::try_from(v) {
        Ok(u) if u >= 2 => Ok(u),
        _ => Err(CliError::Usage(format!("r ≥ 2 required, got {v}"))),
    }
}

fn required(name: &str, v: Option<i64>) -> CliResult<i64> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required here")))
}

fn open_sink(out: &OutputArgs) -> CliResult<Box<dyn Write + Send>> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout()),
    })
}

fn series_json(s: &TruncatedSeries) -> serde_json::Value {
    serde_json::to_value(s).expect("series always serialize")
}

fn write_series_table(w: &mut dyn Write, s: &TruncatedSeries) -> io::Result<()> {
    for (n, c) in s.coeffs().iter().enumerate() {
        writeln!(w, "{n:>4} {c}")?;
    }
    Ok(())
}

/// `series c|e`: one series as JSON (or a degree/coefficient table).
pub fn cmd_series(args: &SeriesArgs) -> CliResult<Outcome> {
    let r = r_value(args.r)?;
    let n = nonneg("N", args.n)?;
    let series = match args.kind {
        SeriesKind::C => {
            let index = positive("index", required("index", args.index)?)?;
            c_series(r, index, n)?
        }
        SeriesKind::E => {
            let i = positive("i", required("i", args.i)?)?;
            let shift = nonneg("J", args.shift)?;
            series_e(r, i, shift, n)?
        }
    };
    let mut sink = open_sink(&args.output)?;
    match args.output.format {
        Format::Json => writeln!(
            sink,
            "{}",
            serde_json::to_string(&series).expect("serializes")
        )?,
        Format::Table => write_series_table(&mut sink, &series)?,
    }
    sink.flush()?;
    Ok(Outcome::Pass)
}

/// `count`: per-degree partition counts. `C` and `D` are printed only at
/// `J = 0`, where `C` has a partition meaning.
pub fn cmd_count(args: &CountArgs) -> CliResult<Outcome> {
    let r = r_value(args.r)?;
    let i = positive("i", args.i)?;
    let shift = nonneg("J", args.shift)?;
    let n = nonneg("N", args.n)?;
    let params = IdentityParams::new(r, i, shift, n)?;
    let e = series_e(r, i, shift, n)?;
    let c = (shift == 0).then(|| series_c(&params));
    let mut sink = open_sink(&args.output)?;
    match args.output.format {
        Format::Json => {
            let rows: Vec<_> = (0..=n)
                .map(|d| match &c {
                    Some(c) => {
                        json!({"n": d, "C": c.coeff(d).to_string(), "D": e.coeff(d).to_string()})
                    }
                    None => json!({"n": d, "E": e.coeff(d).to_string()}),
                })
                .collect();
            let doc = json!({"r": r, "i": i, "J": shift, "N": n, "counts": rows});
            writeln!(sink, "{doc}")?;
        }
        Format::Table => {
            for d in 0..=n {
                match &c {
                    Some(c) => writeln!(sink, "{d:>4} C={} D={}", c.coeff(d), e.coeff(d))?,
                    None => writeln!(sink, "{d:>4} E={}", e.coeff(d))?,
                }
            }
        }
    }
    sink.flush()?;
    Ok(if c.as_ref().is_none_or(|c| c == &e) {
        Outcome::Pass
    } else {
        Outcome::Mismatch
    })
}

fn hilbert_ideal(
    args: &HilbertArgs,
    r: usize,
    n: usize,
) -> CliResult<(MonomialIdeal, serde_json::Value)> {
    Ok(match args.family {
        Family::LriJ => {
            let i = positive("i", required("i", args.i)?)?;
            let shift = nonneg("J", args.shift.unwrap_or(0))?;
            (
                build_l_rij(r, i, shift, n)?,
                json!({"r": r, "i": i, "J": shift}),
            )
        }
        Family::Lk => {
            let k = positive("k", required("k", args.k)?)?;
            (build_l_k(k, r, n)?, json!({"r": r, "k": k}))
        }
        Family::Lkl => {
            let k = positive("k", required("k", args.k)?)?;
            let ell = positive("ell", required("ell", args.ell)?)?;
            (
                build_l_k_ell(k, ell, r, n)?,
                json!({"r": r, "k": k, "ell": ell}),
            )
        }
    })
}

/// `hilbert`: generators plus the series from both engines; exit 1 if the
/// engines disagree.
pub fn cmd_hilbert(args: &HilbertArgs) -> CliResult<Outcome> {
    let r = r_value(args.r)?;
    let n = nonneg("N", args.n)?;
    let (ideal, params) = hilbert_ideal(args, r, n)?;
    let q = GradedQuotient::new(ideal);
    let brute = q.hp_brute();
    let split = q.hp_split();
    let agree = brute == split;
    let family = match args.family {
        Family::LriJ => "LriJ",
        Family::Lk => "Lk",
        Family::Lkl => "Lkl",
    };
    let mut sink = open_sink(&args.output)?;
    match args.output.format {
        Format::Json => {
            let doc = json!({
                "family": family,
                "params": params,
                "min_var": q.min_var(),
                "trunc": n,
                "generators": q.ideal().gen_strings(),
                "hp_brute": series_json(&brute),
                "hp_split": series_json(&split),
                "agree": agree,
            });
            writeln!(sink, "{doc}")?;
        }
        Format::Table => {
            writeln!(
                sink,
                "{family} {params} over x{}.. through q^{n}",
                q.min_var()
            )?;
            for g in q.ideal().gens() {
                writeln!(sink, "  {g}")?;
            }
            for (d, (a, b)) in brute.coeffs().iter().zip(split.coeffs()).enumerate() {
                let flag = if a == b { "" } else { "  <-- engines disagree" };
                writeln!(sink, "{d:>4} {a} {b}{flag}")?;
            }
        }
    }
    sink.flush()?;
    Ok(if agree {
        Outcome::Pass
    } else {
        Outcome::Mismatch
    })
}

/// Validated verification run: the expanded parameter matrix plus flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub cells: Vec<(usize, usize, usize)>,
    pub n: usize,
    pub lemmas: bool,
    pub ordered: bool,
}

impl RunConfig {
    pub fn from_args(args: &VerifyArgs) -> CliResult<Self> {
        let n = nonneg("N", args.n)?;
        let mut cells = Vec::new();
        for r in args.r.values() {
            let r = r_value(r)?;
            let is: Vec<usize> = match args.i {
                ISelect::All => (1..=r).collect(),
                ISelect::One(i) => {
                    let i = positive("i", i)?;
                    if i > r {
                        return Err(CliError::Usage(format!("i must lie in 1..={r}, got {i}")));
                    }
                    vec![i]
                }
            };
            for i in is {
                for shift in args.shift.values() {
                    cells.push((r, i, nonneg("J", shift)?));
                }
            }
        }
        Ok(Self {
            cells,
            n,
            lemmas: args.lemmas,
            ordered: args.ordered,
        })
    }
}

/// Every report for one `(r, i, J)` cell.
pub fn run_cell(
    r: usize,
    i: usize,
    shift: usize,
    n: usize,
    lemmas: bool,
) -> Result<Vec<Report>, Error> {
    let mut reports = verify_main(r, i, shift, n)?;
    if lemmas {
        let ell = r - i + 1;
        for k in [2 * shift + 1, 2 * shift + 3] {
            reports.extend(verify_hp_step(r, k, i, shift, n)?);
        }
        for d in shift + 1..=shift + 3 {
            reports.push(verify_hp_expansion(r, i, shift, d, n)?);
            reports.push(verify_c_expansion(r, ell, shift, d, n)?);
        }
        reports.extend(verify_m_equals_n(r, i, shift, shift + 4, n)?);
        reports.extend(verify_limits(r, i, shift, n)?);
    }
    Ok(reports)
}

fn emit(sink: &Mutex<Box<dyn Write + Send>>, format: Format, reports: &[Report]) -> io::Result<()> {
    let mut text = String::new();
    for rep in reports {
        match format {
            Format::Json => text.push_str(&rep.to_json_line()),
            Format::Table => text.push_str(&rep.to_string()),
        }
        text.push('\n');
    }
    let mut w = sink.lock().expect("output lock poisoned");
    w.write_all(text.as_bytes())?;
    w.flush()
}

/// `verify`: streams one JSON report per line; exit 0 iff every check passes.
pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let config = RunConfig::from_args(args)?;
    let sink = Mutex::new(open_sink(&args.output)?);
    let format = args.output.format;
    let run =
        |&(r, i, shift): &(usize, usize, usize)| run_cell(r, i, shift, config.n, config.lemmas);

    let results: Vec<Result<bool, CliError>> = if config.ordered {
        let computed: Vec<_> = config.cells.par_iter().map(run).collect();
        computed
            .into_iter()
            .map(|res| {
                let reports = res?;
                emit(&sink, format, &reports)?;
                Ok(reports.iter().all(|r| r.pass))
            })
            .collect()
    } else {
        config
            .cells
            .par_iter()
            .map(|cell| {
                let reports = run(cell)?;
                emit(&sink, format, &reports)?;
                Ok(reports.iter().all(|r| r.pass))
            })
            .collect()
    };

    let mut all_pass = true;
    for res in results {
        all_pass &= res?;
    }
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::Mismatch
    })
}
