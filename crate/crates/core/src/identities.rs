//! Equality between |N_r(n, k)| and |S̄_r(n, k)|, the signed difference,
//! the difference summed over k, and the two difference tables.

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{div_exact, divisors, nu2, pow2, ramanujan_sum, ExactInt, Valuation2};
use crate::error::{invalid, Result};
use crate::subsets::{count_sbar, enumerate_subsets, Universe};
use crate::words::{
    count_coperiod_div, count_coperiod_div_any_r, count_lplus, count_lyndon, count_necklaces,
    enumerate_coperiod_div,
};

/// The five sufficient (and jointly necessary) conditions for equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// n odd
    A,
    /// k odd
    B,
    /// ν₂(n) < ν₂(k), including k = 0
    C,
    /// ν₂(k) − ν₂(r) ≥ 2
    D,
    /// k = n even and r ∉ {0, n/2}
    E,
}

impl Condition {
    pub fn letter(self) -> char {
        match self {
            Condition::A => 'a',
            Condition::B => 'b',
            Condition::C => 'c',
            Condition::D => 'd',
            Condition::E => 'e',
        }
    }
}

/// Letters of the matched conditions, or "-" when none match.
pub fn condition_letters(conds: &[Condition]) -> String {
    if conds.is_empty() {
        "-".to_string()
    } else {
        conds.iter().map(|c| c.letter()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityVerdict {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub predicted_equal: bool,
    pub matched_conditions: Vec<Condition>,
    pub predicted_difference: ExactInt,
    /// +1, -1, or 0 when equal.
    pub sign: i8,
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// Which of the conditions (a)–(e) hold for (n, k, r mod n).
pub fn matched_conditions(n: usize, k: usize, r: usize) -> Result<Vec<Condition>> {
    check_nk(n, k)?;
    Ok(analogue_conditions(n, k, r))
}

/// The same tests without requiring k ≤ n, as used for q-ary entry sums.
pub fn analogue_conditions(n: usize, k: usize, r: usize) -> Vec<Condition> {
    let r = if n == 0 { r } else { r % n };
    let (vn, vk, vr) = (nu2(n as u64), nu2(k as u64), nu2(r as u64));
    let mut out = Vec::new();
    if n % 2 == 1 {
        out.push(Condition::A);
    }
    if k % 2 == 1 {
        out.push(Condition::B);
    }
    if vn < vk {
        out.push(Condition::C);
    }
    if let (Valuation2::Finite(a), Valuation2::Finite(b)) = (vk, vr) {
        if a >= b + 2 {
            out.push(Condition::D);
        }
    }
    if k == n && n.is_multiple_of(2) && r != 0 && r != n / 2 {
        out.push(Condition::E);
    }
    out
}

pub fn predict_equality(n: usize, k: usize, r: usize) -> Result<EqualityVerdict> {
    let matched = matched_conditions(n, k, r)?;
    let r = r % n;
    let (difference, sign) = if matched.is_empty() {
        // none of (a), (c) hold, so k ≠ 0 and 2^ν₂(k) divides n
        let v = k.trailing_zeros();
        let (n2, k2) = (n >> v, k >> v);
        let size = count_coperiod_div_any_r(n2, k2, r)?;
        let negative = r != 0 && v == r.trailing_zeros() + 1;
        if negative {
            (-size, -1)
        } else {
            (size, 1)
        }
    } else {
        (ExactInt::zero(), 0)
    };
    Ok(EqualityVerdict {
        n,
        k,
        r,
        predicted_equal: !matched.is_empty(),
        matched_conditions: matched,
        predicted_difference: difference,
        sign,
    })
}

/// |N_r(n, k)| − |S̄_r(n, k)| from the closed form for the difference.
pub fn difference(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    Ok(predict_equality(n, k, r)?.predicted_difference)
}

/// |N_r(n, k)| − |S̄_r(n, k)| from the two separate counting formulas.
pub fn formula_difference(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    check_nk(n, k)?;
    let r = r % n;
    Ok(count_coperiod_div(n, k, r)? - count_sbar(n, k, r)?)
}

/// The same difference by listing both sets.
pub fn enumeration_difference(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    check_nk(n, k)?;
    let r = r % n;
    let necklaces = enumerate_coperiod_div(n, k, r)?.len();
    let subsets = enumerate_subsets(n, k, r, Universe::Full)?.len();
    Ok(ExactInt::from(necklaces) - ExactInt::from(subsets))
}

/// Σ_k (|N_r(n, k)| − |S̄_r(n, k)|) = (1/n) Σ_{d | n, d even} 2^{n/d} c_d(r).
pub fn aggregate_difference(n: usize, r: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let r = r % n;
    let mut sum = ExactInt::zero();
    for d in divisors(n)?.into_iter().filter(|d| d.is_even()) {
        sum += pow2(n / d) * ramanujan_sum(d, r)?;
    }
    div_exact(&sum, n, "aggregate_difference")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub index: usize,
    pub values: Vec<ExactInt>,
}

/// A triangular table; rows may be shorter than `width`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffTable {
    /// Key naming the row index in JSON output ("m" or "n").
    pub row_key: &'static str,
    /// Header of the column index in plain output ("k" or "r").
    pub column_key: &'static str,
    pub width: usize,
    pub rows: Vec<TableRow>,
}

impl DiffTable {
    /// No header, no row label, LF endings, empty cells past a row's end.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = (0..self.width)
                .map(|i| row.values.get(i).map(ToString::to_string).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                obj.insert(self.row_key.to_string(), json!(row.index));
                obj.insert(
                    "values".to_string(),
                    Value::Array(row.values.iter().map(exact_to_json).collect()),
                );
                Value::Object(obj)
            })
            .collect();
        json!({ "rows": rows })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json_value()).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_plain(&self) -> String {
        let cell_w = self
            .rows
            .iter()
            .flat_map(|r| r.values.iter().map(|v| v.to_string().len()))
            .chain(std::iter::once(self.width.saturating_sub(1).to_string().len()))
            .max()
            .unwrap_or(1);
        let label_w =
            self.rows.iter().map(|r| r.index.to_string().len()).max().unwrap_or(1).max(self.row_key.len());
        let mut out = String::new();
        let _ = write!(
            out,
            "{:>label_w$} |",
            format!("{}\\{}", self.row_key, self.column_key).chars().take(label_w).collect::<String>()
        );
        for c in 0..self.width {
            let _ = write!(out, " {c:>cell_w$}");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{:>label_w$} |", row.index);
            for v in &row.values {
                let _ = write!(out, " {:>cell_w$}", v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Integers that fit in i64 become JSON numbers, larger ones strings.
pub fn exact_to_json(v: &ExactInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// Row m holds difference(2m, 2k, r) for k = 0..=m.
pub fn table_diff_grid(r: usize, m_max: usize) -> Result<DiffTable> {
    if m_max == 0 {
        return Err(invalid("m_max must be at least 1"));
    }
    let rows = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let values =
                (0..=m).map(|k| difference(2 * m, 2 * k, r % (2 * m))).collect::<Result<Vec<_>>>()?;
            Ok(TableRow { index: m, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiffTable { row_key: "m", column_key: "k", width: m_max + 1, rows })
}

/// Row n holds aggregate_difference(n, r mod n) for r = 0..=n.
pub fn table_diff_sum(n_max: usize) -> Result<DiffTable> {
    if n_max == 0 {
        return Err(invalid("n_max must be at least 1"));
    }
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let values = (0..=n).map(|r| aggregate_difference(n, r % n)).collect::<Result<Vec<_>>>()?;
            Ok(TableRow { index: n, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiffTable { row_key: "n", column_key: "r", width: n_max + 1, rows })
}

/// A named batch of checks with any violations found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(describe());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    /// (m, |N_2(2m, 6)| − |S̄_2(2m, 6)|)
    pub values: Vec<(usize, ExactInt)>,
    pub report: CheckReport,
}

/// For m > 3 the difference at (2m, 6, 2) equals |N_2(m, 3)| = |L(m, 3)|.
pub fn sequence_a001840_check(m_from: usize, m_to: usize) -> Result<SequenceReport> {
    if m_from <= 3 {
        return Err(invalid("m_from must exceed 3"));
    }
    let mut values = Vec::new();
    let mut report = CheckReport::new("sequence");
    for m in m_from..=m_to {
        let d = difference(2 * m, 6, 2)?;
        let nr = count_coperiod_div(m, 3, 2)?;
        let l = count_lyndon(m, 3)?;
        let fd = formula_difference(2 * m, 6, 2)?;
        report.check(d == nr && d == l && d == fd, || {
            format!("m={m}: difference {d}, formula {fd}, N_2(m,3) {nr}, L(m,3) {l}")
        });
        values.push((m, d));
    }
    Ok(SequenceReport { values, report })
}

/// Size of S₀⁺(n, k): S̄_0(n, k), joined with S̄_0(n', k') when no r = 0
/// equality condition holds.
pub fn count_s0_plus(n: usize, k: usize) -> Result<ExactInt> {
    let base = count_sbar(n, k, 0)?;
    if matched_conditions(n, k, 0)?.is_empty() {
        let v = k.trailing_zeros();
        Ok(base + count_sbar(n >> v, k >> v, 0)?)
    } else {
        Ok(base)
    }
}

/// Exhaustive check of the r = 0 and r = 1 special cases for n ≤ n_max.
pub fn corollary_reports(n_max: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("corollaries");
    for n in 1..=n_max {
        for k in 0..=n {
            let necklaces = count_necklaces(n, k)?;
            let s0 = count_sbar(n, k, 0)?;
            let equal_r0 = n % 2 == 1 || k % 2 == 1 || nu2(n as u64) < nu2(k as u64);
            let diff = &necklaces - &s0;
            report.check(equal_r0 == diff.is_zero(), || format!("r=0 equality mismatch at (n={n}, k={k})"));
            if !equal_r0 {
                let v = k.trailing_zeros();
                let (n2, k2) = (n >> v, k >> v);
                let expect = count_coperiod_div(n2, k2, 0)?;
                let expect_s = count_sbar(n2, k2, 0)?;
                report.check(diff == expect && diff == expect_s, || {
                    format!("r=0 difference at (n={n}, k={k}): got {diff}, expected {expect}")
                });
            }
            let s0p = count_s0_plus(n, k)?;
            report
                .check(s0p == necklaces, || format!("|S0+({n},{k})| = {s0p} but |N({n},{k})| = {necklaces}"));

            let r1 = 1 % n;
            let s1 = count_sbar(n, k, r1)?;
            let lp = count_lplus(n, k)?;
            report.check(s1 == lp, || format!("|S1({n},{k})| = {s1} but |L+({n},{k})| = {lp}"));
            if n % 2 == 0 && k % 4 == 2 {
                let expect = -count_lyndon(n / 2, k / 2)?;
                let got = count_lyndon(n, k)? - &s1;
                report.check(got == expect, || {
                    format!("r=1 difference at (n={n}, k={k}): got {got}, expected {expect}")
                });
            }
        }
    }
    Ok(report)
}

/// Predicted, formula and (for n ≤ enum_max) enumerated differences agree.
pub fn theorem_sweep(n_max: usize, enum_max: usize) -> Result<CheckReport> {
    let cells: Vec<(usize, usize, usize)> =
        (1..=n_max).flat_map(|n| (0..=n).flat_map(move |k| (0..n).map(move |r| (n, k, r)))).collect();
    let parts = cells
        .par_iter()
        .map(|&(n, k, r)| {
            let mut rep = CheckReport::new("theorem");
            let verdict = predict_equality(n, k, r)?;
            let formula = formula_difference(n, k, r)?;
            rep.check(verdict.predicted_difference == formula, || {
                format!(
                    "(n={n}, k={k}, r={r}): predicted {}, formula {formula}",
                    verdict.predicted_difference
                )
            });
            rep.check(verdict.predicted_equal == formula.is_zero(), || {
                format!(
                    "(n={n}, k={k}, r={r}): verdict equal={} but difference {formula}",
                    verdict.predicted_equal
                )
            });
            if n <= enum_max {
                let listed = enumeration_difference(n, k, r)?;
                rep.check(listed == formula, || {
                    format!("(n={n}, k={k}, r={r}): enumerated {listed}, formula {formula}")
                });
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new("theorem");
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}
