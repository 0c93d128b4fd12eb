//! The product side `𝒞_n(q)` and its recursive extension, the coefficient
//! tables `M` and `N`, and the verifiers that tie the three descriptions of the
//! same series together.
//!
//! Limits in the q-adic topology are realized at a finite depth: an entry
//! `(j, d)` of either table is divisible by `q^{2d(j−1)}`, so once
//! `2d > N` every entry with `j >= 2` vanishes through `q^N`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{build_l_rij, hp_notation, GradedQuotient};
use crate::partitions::{allowed_parts_c, check_r, check_ri, series_e, IdentityParams};
use crate::qseries::TruncatedSeries;
use crate::report::Report;

/// Rows of the `𝒞` family: level `g` holds indices `(r−1)g + 1 ..= (r−1)g + r`.
///
/// Level 0 is the congruence products. Each later level divides by powers of
/// `q`, so the family is computed at a padded working truncation chosen so
/// the deepest level is still certified through the requested degree.
#[derive(Clone, Debug)]
pub struct CFamily {
    r: usize,
    trunc: usize,
    rows: Vec<Vec<TruncatedSeries>>,
}

impl CFamily {
    /// Builds levels `0..=max_level`, each certified through `q^trunc`.
    pub fn build(r: usize, max_level: usize, trunc: usize) -> Result<Self> {
        check_r(r)?;
        // level g loses 2g(i−1) for each i = 2..=r, i.e. g·r(r−1) in total
        let budget = r * (r - 1) * max_level * (max_level + 1) / 2;
        let work = trunc + budget;
        let mut rows = Vec::with_capacity(max_level + 1);
        let base = (1..=r)
            .map(|index| {
                let parts = allowed_parts_c(r, index, work)?;
                TruncatedSeries::product_geometric_inverses(&parts, work)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(base);
        for g in 1..=max_level {
            let prev = &rows[g - 1];
            let mut row: Vec<TruncatedSeries> = Vec::with_capacity(r);
            row.push(prev[r - 1].clone());
            for i in 2..=r {
                let w = 2 * g * (i - 1);
                // (A − B)/q^w − C/q  ==  ((A − B) − q^{w−1} C) / q^w
                let diff = &prev[r - i] - &prev[r - i + 1];
                let numer = &diff - &row[i - 2].shift(w - 1);
                row.push(numer.div_q_pow(w)?);
            }
            rows.push(row);
        }
        debug_assert!(rows.iter().flatten().all(|s| s.trunc() >= trunc));
        Ok(Self { r, trunc, rows })
    }

    /// Smallest level containing `index`.
    pub fn level_of(r: usize, index: usize) -> usize {
        if index <= r {
            0
        } else {
            (index - r).div_ceil(r - 1)
        }
    }

    pub fn max_level(&self) -> usize {
        self.rows.len() - 1
    }

    /// `𝒞_index` through `q^trunc`.
    pub fn series(&self, index: usize) -> Result<TruncatedSeries> {
        if index == 0 {
            return Err(Error::ParamOutOfRange("C indices start at 1".into()));
        }
        let g = Self::level_of(self.r, index);
        if g > self.max_level() {
            return Err(Error::ParamOutOfRange(format!(
                "C_{index} needs level {g}, family only reaches {}",
                self.max_level()
            )));
        }
        let i = index - (self.r - 1) * g;
        Ok(self.rows[g][i - 1].truncate(self.trunc))
    }
}

/// `𝒞_index(q)` through `q^trunc`.
pub fn c_series(r: usize, index: usize, trunc: usize) -> Result<TruncatedSeries> {
    check_r(r)?;
    if index == 0 {
        return Err(Error::ParamOutOfRange("C indices start at 1".into()));
    }
    CFamily::build(r, CFamily::level_of(r, index), trunc)?.series(index)
}

/// Which recursion a coefficient table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoeffKind {
    /// Coefficients of the `𝒞` expansion, anchored at `ℓ`.
    M,
    /// Coefficients of the Hilbert–Poincaré expansion, anchored at `i`.
    N,
}

/// Entries `(j, d)` for `1 <= j <= r` and `J+1 <= d <= d_max`.
///
/// For [`CoeffKind::N`] entry `(j, d)` is `N^J_{i,j,(r−1)d+j}`; for
/// [`CoeffKind::M`] it is `M^J_{ℓ,j,(r−1)d+j}`.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    kind: CoeffKind,
    r: usize,
    shift: usize,
    anchor: usize,
    trunc: usize,
    rows: Vec<Vec<TruncatedSeries>>,
}

impl CoeffTable {
    pub fn build(
        kind: CoeffKind,
        r: usize,
        shift: usize,
        anchor: usize,
        d_max: usize,
        trunc: usize,
    ) -> Result<Self> {
        check_ri(r, anchor)?;
        let first = shift + 1;
        if d_max < first {
            return Err(Error::ParamOutOfRange(format!(
                "d_max must be at least J+1 = {first}, got {d_max}"
            )));
        }
        let initial = match kind {
            CoeffKind::N => n_initial(r, shift, anchor, trunc),
            CoeffKind::M => m_initial(r, shift, anchor, trunc),
        };
        let mut rows = vec![initial];
        for d in first..d_max {
            let next = advance(rows.last().expect("nonempty"), d, trunc);
            rows.push(next);
        }
        Ok(Self {
            kind,
            r,
            shift,
            anchor,
            trunc,
            rows,
        })
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn first_depth(&self) -> usize {
        self.shift + 1
    }

    pub fn d_max(&self) -> usize {
        self.shift + self.rows.len()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Entry `(j, d)`; panics outside `1..=r` × `J+1..=d_max`.
    pub fn entry(&self, j: usize, d: usize) -> &TruncatedSeries {
        assert!((1..=self.r).contains(&j), "j = {j} outside 1..={}", self.r);
        assert!(
            (self.first_depth()..=self.d_max()).contains(&d),
            "d = {d} outside the table"
        );
        &self.rows[d - self.first_depth()][j - 1]
    }
}

/// `N` at `d = J+1`, pieces by `j` against `i`.
fn n_initial(r: usize, shift: usize, i: usize, n: usize) -> Vec<TruncatedSeries> {
    let step = 2 * (shift + 1);
    (1..=r)
        .map(|j| {
            if j < i {
                &TruncatedSeries::monomial(step * j - 1, n)
                    + &TruncatedSeries::monomial(step * (j - 1), n)
            } else if j == i {
                TruncatedSeries::monomial(step * (j - 1), n)
            } else {
                TruncatedSeries::zero(n)
            }
        })
        .collect()
}

/// `M` at `d = J+1`, pieces by `j` against `r − ℓ`.
fn m_initial(r: usize, shift: usize, ell: usize, n: usize) -> Vec<TruncatedSeries> {
    let step = 2 * (shift + 1);
    (1..=r)
        .map(|j| {
            if (1..=r - ell).contains(&j) {
                &TruncatedSeries::monomial(step * j - 1, n)
                    + &TruncatedSeries::monomial(step * (j - 1), n)
            } else if j == r - ell + 1 {
                TruncatedSeries::monomial(step * (j - 1), n)
            } else {
                TruncatedSeries::zero(n)
            }
        })
        .collect()
}

/// Row `d+1` from row `d`:
/// `e(j, d+1) = q^{2(d+1)(j−1)} Σ_{m≤r−j+1} e(m, d) + q^{2(d+1)j−1} Σ_{m≤r−j} e(m, d)`.
fn advance(row: &[TruncatedSeries], d: usize, n: usize) -> Vec<TruncatedSeries> {
    let r = row.len();
    // prefix[t] = Σ_{m=1}^{t} e(m, d)
    let mut prefix = vec![TruncatedSeries::zero(n)];
    for e in row {
        let next = prefix.last().expect("nonempty") + e;
        prefix.push(next);
    }
    (1..=r)
        .map(|j| {
            let a = prefix[r - j + 1].shift(2 * (d + 1) * (j - 1));
            let b = prefix[r - j].shift(2 * (d + 1) * j - 1);
            &a + &b
        })
        .collect()
}

/// `Σ_j coeff(j) · basis(j)` for `j = 1..=r`.
fn expand(
    r: usize,
    coeff: impl Fn(usize) -> TruncatedSeries,
    mut basis: impl FnMut(usize) -> Result<TruncatedSeries>,
    n: usize,
) -> Result<TruncatedSeries> {
    let mut sum = TruncatedSeries::zero(n);
    for j in 1..=r {
        sum = &sum + &(&coeff(j) * &basis(j)?);
    }
    Ok(sum)
}

/// Memoized `HP^k` / `HP_ℓ^k` for one verification call.
struct HpCache {
    r: usize,
    trunc: usize,
    known: HashMap<(usize, Option<usize>), TruncatedSeries>,
}

impl HpCache {
    fn new(r: usize, trunc: usize) -> Self {
        Self {
            r,
            trunc,
            known: HashMap::new(),
        }
    }

    fn get(&mut self, k: usize, ell: Option<usize>) -> Result<TruncatedSeries> {
        if let Some(s) = self.known.get(&(k, ell)) {
            return Ok(s.clone());
        }
        let s = hp_notation(k, ell, self.r, self.trunc)?;
        self.known.insert((k, ell), s.clone());
        Ok(s)
    }
}

/// The odd-`k` step for `HP_ℓ^k` and the two intermediate identities it is
/// assembled from.
///
/// Reports `n1`, then `f1` (for `ℓ = 1`) or `f2`, then `f3` at the even index
/// `k + 1`.
pub fn verify_hp_step(
    r: usize,
    k: usize,
    ell: usize,
    shift: usize,
    n: usize,
) -> Result<Vec<Report>> {
    check_ri(r, ell)?;
    if k.is_multiple_of(2) || k < 2 * shift + 1 {
        return Err(Error::ParamOutOfRange(format!(
            "k must be odd and at least 2J+1 = {}, got {k}",
            2 * shift + 1
        )));
    }
    let params = [("r", r), ("k", k), ("ell", ell), ("J", shift)];
    let mut hp = HpCache::new(r, n);
    let mut reports = Vec::new();

    let lhs = hp.get(k, Some(ell))?;
    let mut rhs = TruncatedSeries::zero(n);
    for j in 1..ell {
        rhs = &rhs + &hp.get(k + 2, Some(r - j + 1))?.shift((k + 1) * j - 1);
    }
    for j in 1..=ell {
        rhs = &rhs + &hp.get(k + 2, Some(r - j + 1))?.shift((k + 1) * (j - 1));
    }
    reports.push(Report::compare("n1", &params, &lhs, &rhs, n)?);

    if ell == 1 {
        let plain = hp.get(k + 2, None)?;
        reports.push(Report::compare("f1", &params, &lhs, &plain, n)?);
        let top = hp.get(k + 2, Some(r))?;
        reports.push(Report::compare("f1.top", &params, &plain, &top, n)?);
    } else {
        let rhs = &hp.get(k + 1, Some(ell - 1))?.shift(k) + &hp.get(k + 1, Some(ell))?;
        reports.push(Report::compare("f2", &params, &lhs, &rhs, n)?);
    }

    let even = k + 1;
    let lhs = hp.get(even, Some(ell))?;
    let mut rhs = TruncatedSeries::zero(n);
    for j in 1..=ell {
        rhs = &rhs + &hp.get(even + 1, Some(r - j + 1))?.shift(even * (j - 1));
    }
    reports.push(Report::compare("f3", &params, &lhs, &rhs, n)?);
    Ok(reports)
}

/// `HP_i^{2J+1} = Σ_j N(j, d) · HP_{r−j+1}^{2d+1}`.
pub fn verify_hp_expansion(r: usize, i: usize, shift: usize, d: usize, n: usize) -> Result<Report> {
    let table = CoeffTable::build(CoeffKind::N, r, shift, i, d, n)?;
    let mut hp = HpCache::new(r, n);
    let lhs = hp.get(2 * shift + 1, Some(i))?;
    let rhs = expand(
        r,
        |j| table.entry(j, d).clone(),
        |j| hp.get(2 * d + 1, Some(r - j + 1)),
        n,
    )?;
    Report::compare(
        "t1",
        &[("r", r), ("i", i), ("J", shift), ("d", d)],
        &lhs,
        &rhs,
        n,
    )
}

/// `𝒞_{(r−1)J+ℓ} = Σ_j M(j, d) · 𝒞_{(r−1)d+j}`.
pub fn verify_c_expansion(
    r: usize,
    ell: usize,
    shift: usize,
    d: usize,
    n: usize,
) -> Result<Report> {
    let table = CoeffTable::build(CoeffKind::M, r, shift, ell, d, n)?;
    let family = CFamily::build(r, d.max(CFamily::level_of(r, (r - 1) * shift + ell)), n)?;
    let lhs = family.series((r - 1) * shift + ell)?;
    let rhs = expand(
        r,
        |j| table.entry(j, d).clone(),
        |j| family.series((r - 1) * d + j),
        n,
    )?;
    Report::compare(
        "m_expansion",
        &[("r", r), ("ell", ell), ("J", shift), ("d", d)],
        &lhs,
        &rhs,
        n,
    )
}

/// Entrywise `M^J_{ℓ,·} = N^J_{i,·}` with `ℓ = r − i + 1`, one report per depth.
pub fn verify_m_equals_n(
    r: usize,
    i: usize,
    shift: usize,
    d_max: usize,
    n: usize,
) -> Result<Vec<Report>> {
    let params = IdentityParams::new(r, i, shift, n)?;
    let m = CoeffTable::build(CoeffKind::M, r, shift, params.ell, d_max, n)?;
    let nt = CoeffTable::build(CoeffKind::N, r, shift, i, d_max, n)?;
    let mut reports = Vec::new();
    for d in m.first_depth()..=d_max {
        let base = [("r", r), ("i", i), ("J", shift), ("d", d)];
        let mut report = Report::compare("m_equals_n", &base, m.entry(1, d), nt.entry(1, d), n)?;
        for j in 2..=r {
            if !report.pass {
                break;
            }
            report = Report::compare("m_equals_n", &base, m.entry(j, d), nt.entry(j, d), n)?;
            if !report.pass {
                report = report.with_param("j", j);
            }
        }
        reports.push(report);
    }
    Ok(reports)
}

/// `HP^{2d+3} ≡ 1 (mod q^{2d+3})`.
pub fn verify_hp_tail(r: usize, d: usize, n: usize) -> Result<Report> {
    let k = 2 * d + 3;
    let hp = hp_notation(k, None, r, n)?;
    let one = TruncatedSeries::one(n);
    let bound = k.min(n + 1);
    // compare only below the claimed valuation
    Report::compare("g5", &[("r", r), ("d", d)], &hp, &one, bound - 1).map(|rep| Report {
        truncation: n,
        ..rep
    })
}

/// Depth at which both coefficient tables have stabilized through `q^n`.
///
/// This is `d_stop + 1`, where `d_stop` is the first `d` with `2(d+1) > n`
/// (and at least `J`): entry `(j, d_stop + 1)` is divisible by
/// `q^{2(d_stop+1)(j−1)}`.
pub fn stable_depth(shift: usize, n: usize) -> usize {
    (n / 2).max(shift) + 1
}

/// The finite shadows of the limit arguments.
///
/// Checks, at depth `D = stable_depth(J, n)`:
/// - `limits.vanishing`: `M(j, D)` and `N(j, D)` vanish through `q^n` for `j >= 2`;
/// - `limits.hp_tail`: `HP^{2D+1} ≡ 1`;
/// - `limits.c_tail`: `𝒞_{(r−1)D+1} ≡ 1`;
/// - `limits.m_stable`: `M(1, D) ≡ 𝒞_{(r−1)J+ℓ}`;
/// - `limits.n_stable`: `N(1, D) ≡ HP_i^{2J+1}`.
pub fn verify_limits(r: usize, i: usize, shift: usize, n: usize) -> Result<Vec<Report>> {
    let params = IdentityParams::new(r, i, shift, n)?;
    let depth = stable_depth(shift, n);
    let m = CoeffTable::build(CoeffKind::M, r, shift, params.ell, depth, n)?;
    let nt = CoeffTable::build(CoeffKind::N, r, shift, i, depth, n)?;
    let zero = TruncatedSeries::zero(n);
    let one = TruncatedSeries::one(n);
    let base = [("r", r), ("i", i), ("J", shift), ("d", depth)];
    let mut reports = Vec::new();

    let mut vanish = Report::compare("limits.vanishing", &base, &zero, &zero, n)?;
    'outer: for table in [&m, &nt] {
        for j in 2..=r {
            let rep = Report::compare("limits.vanishing", &base, table.entry(j, depth), &zero, n)?;
            if !rep.pass {
                vanish = rep.with_param("j", j);
                break 'outer;
            }
        }
    }
    reports.push(vanish);

    let hp_tail = hp_notation(2 * depth + 1, None, r, n)?;
    reports.push(Report::compare("limits.hp_tail", &base, &hp_tail, &one, n)?);

    let target = params.c_index();
    let family = CFamily::build(r, depth.max(CFamily::level_of(r, target)), n)?;
    let c_tail = family.series((r - 1) * depth + 1)?;
    reports.push(Report::compare("limits.c_tail", &base, &c_tail, &one, n)?);

    let c = family.series(target)?;
    reports.push(Report::compare(
        "limits.m_stable",
        &base,
        m.entry(1, depth),
        &c,
        n,
    )?);

    let hp = hp_notation(2 * shift + 1, Some(i), r, n)?;
    reports.push(Report::compare(
        "limits.n_stable",
        &base,
        nt.entry(1, depth),
        &hp,
        n,
    )?);
    Ok(reports)
}

/// Three-way agreement of `𝒞_{(r−1)J+ℓ}`, `HP_i^{2J+1}` and the `E_{r,i,J}`
/// counts; at `J = 0` also `C_{r,i}(n) = D_{r,i}(n)`.
pub fn verify_main(r: usize, i: usize, shift: usize, n: usize) -> Result<Vec<Report>> {
    let params = IdentityParams::new(r, i, shift, n)?;
    let base = [("r", r), ("i", i), ("J", shift)];
    let c = c_series(r, params.c_index(), n)?;
    let hp = GradedQuotient::new(build_l_rij(r, i, shift, n)?).hp_split();
    let e = series_e(r, i, shift, n)?;
    let mut reports = vec![
        Report::compare("main.c_vs_hp", &base, &c, &hp, n)?,
        Report::compare("main.hp_vs_e", &base, &hp, &e, n)?,
        Report::compare("main.c_vs_e", &base, &c, &e, n)?,
    ];
    if shift == 0 {
        let counts_c = crate::partitions::series_c(&params);
        reports.push(Report::compare("main.c_vs_d", &base, &counts_c, &e, n)?);
    }
    Ok(reports)
}
