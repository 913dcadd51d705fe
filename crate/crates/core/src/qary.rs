//! Multisets of `[n]` with multiplicities below `q`, classified by sum mod n,
//! against q-ary necklaces with fixed entry sum whose co-period divides r.
//! Enumeration only; the scanner records evidence and asserts nothing.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{gcd, ExactInt};
use crate::error::{invalid, Error, Result};
use crate::identities::{analogue_conditions, condition_letters};
use crate::words::{coperiod_of, divides, for_each_fixed_sum_necklace};

/// Largest alphabet handled; symbols are stored as bytes.
pub const MAX_Q: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundedMultiset {
    modulus: usize,
    bound: usize,
    /// `multiplicities[a - 1]` is the count of element `a`.
    multiplicities: Vec<usize>,
    size: usize,
    residue: usize,
}

impl BoundedMultiset {
    pub fn new(modulus: usize, bound: usize, multiplicities: Vec<usize>) -> Result<Self> {
        check_nq(modulus, bound)?;
        if multiplicities.len() != modulus {
            return Err(invalid(format!("expected {modulus} multiplicities, got {}", multiplicities.len())));
        }
        if let Some(m) = multiplicities.iter().find(|&&m| m >= bound) {
            return Err(invalid(format!("multiplicity {m} is not below q = {bound}")));
        }
        let size = multiplicities.iter().sum();
        let residue = multiplicities.iter().enumerate().map(|(i, &m)| (i + 1) * m).sum::<usize>() % modulus;
        Ok(Self { modulus, bound, multiplicities, size, residue })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn residue(&self) -> usize {
        self.residue
    }

    /// Elements with repetition, ascending.
    pub fn elements(&self) -> Vec<usize> {
        self.multiplicities.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i + 1, m)).collect()
    }

    pub fn render(&self, zero_based: bool) -> String {
        let mut items = self.elements();
        if zero_based {
            items = items.into_iter().map(|a| a % self.modulus).collect();
            items.sort_unstable();
        }
        let body: Vec<String> = items.iter().map(ToString::to_string).collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Display for BoundedMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QaryWord {
    symbols: Vec<u8>,
    q: usize,
}

impl QaryWord {
    pub fn new(symbols: Vec<u8>, q: usize) -> Result<Self> {
        if symbols.is_empty() {
            return Err(invalid("word must be non-empty"));
        }
        check_q(q)?;
        if let Some(s) = symbols.iter().find(|&&s| s as usize >= q) {
            return Err(invalid(format!("symbol {s} is not below q = {q}")));
        }
        Ok(Self { symbols, q })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.q
    }

    /// Plain integer sum of the symbols.
    pub fn entry_sum(&self) -> usize {
        self.symbols.iter().map(|&s| s as usize).sum()
    }

    pub fn coperiod(&self) -> usize {
        coperiod_of(&self.symbols)
    }
}

/// Digits when q ≤ 10, otherwise comma-separated symbols.
impl fmt::Display for QaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(ToString::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

fn check_q(q: usize) -> Result<()> {
    if !(2..=MAX_Q).contains(&q) {
        return Err(invalid(format!("q = {q} must lie in 2..={MAX_Q}")));
    }
    Ok(())
}

fn check_nq(n: usize, q: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    check_q(q)
}

fn check_nr(n: usize, r: usize) -> Result<()> {
    if r >= n {
        return Err(invalid(format!("residue r = {r} must be below n = {n}")));
    }
    Ok(())
}

/// Visits multiplicity vectors of size `k` and residue `r`, in ascending
/// order of the sorted element sequence.
fn for_each_multiset(n: usize, k: usize, r: usize, q: usize, mut visit: impl FnMut(&[usize])) {
    #[allow(clippy::too_many_arguments)]
    fn go(
        a: usize,
        left: usize,
        sum: usize,
        n: usize,
        r: usize,
        q: usize,
        mult: &mut [usize],
        visit: &mut impl FnMut(&[usize]),
    ) {
        if a > n {
            if left == 0 && sum % n == r {
                visit(mult);
            }
            return;
        }
        if left > (n - a + 1) * (q - 1) {
            return;
        }
        for m in (0..=left.min(q - 1)).rev() {
            mult[a - 1] = m;
            go(a + 1, left - m, sum + a * m, n, r, q, mult, visit);
        }
        mult[a - 1] = 0;
    }
    let mut mult = vec![0; n];
    go(1, k, 0, n, r, q, &mut mult, &mut visit);
}

pub fn enumerate_multisets(n: usize, k: usize, r: usize, q: usize) -> Result<Vec<BoundedMultiset>> {
    check_nq(n, q)?;
    check_nr(n, r)?;
    let mut out = Vec::new();
    for_each_multiset(n, k, r, q, |m| {
        out.push(BoundedMultiset { modulus: n, bound: q, multiplicities: m.to_vec(), size: k, residue: r });
    });
    Ok(out)
}

/// |S̄_r^q(n, k)| by listing.
pub fn count_multisets(n: usize, k: usize, r: usize, q: usize) -> Result<usize> {
    check_nq(n, q)?;
    check_nr(n, r)?;
    let mut c = 0;
    for_each_multiset(n, k, r, q, |_| c += 1);
    Ok(c)
}

/// Independent count by dynamic programming over (size, residue).
pub fn count_multisets_dp(n: usize, k: usize, r: usize, q: usize) -> Result<ExactInt> {
    check_nq(n, q)?;
    check_nr(n, r)?;
    // table[s][t]: multisets of size s with sum ≡ t
    let mut table = vec![vec![ExactInt::zero(); n]; k + 1];
    table[0][0] = ExactInt::from(1);
    for a in 1..=n {
        let mut next = vec![vec![ExactInt::zero(); n]; k + 1];
        for s in 0..=k {
            for t in 0..n {
                if table[s][t].is_zero() {
                    continue;
                }
                for m in 0..q.min(k - s + 1) {
                    let cell = &mut next[s + m][(t + a * m) % n];
                    *cell += &table[s][t];
                }
            }
        }
        table = next;
    }
    Ok(table[k][r].clone())
}

fn check_necklace_args(n: usize, k: usize, r: usize, q: usize) -> Result<()> {
    check_nq(n, q)?;
    check_nr(n, r)?;
    if k > n * (q - 1) {
        return Err(invalid(format!("entry sum k = {k} exceeds n(q-1) = {}", n * (q - 1))));
    }
    Ok(())
}

/// Least rotations, ascending.
pub fn enumerate_qary_necklaces(n: usize, k: usize, r: usize, q: usize) -> Result<Vec<QaryWord>> {
    check_necklace_args(n, k, r, q)?;
    let mut out = Vec::new();
    for_each_fixed_sum_necklace(n, q as u8, k, |a, p| {
        if divides(n / p, r) {
            out.push(QaryWord { symbols: a.to_vec(), q });
        }
    });
    Ok(out)
}

/// |N_r^q(n, k)| by listing.
pub fn count_qary_necklaces(n: usize, k: usize, r: usize, q: usize) -> Result<usize> {
    check_necklace_args(n, k, r, q)?;
    let mut c = 0;
    for_each_fixed_sum_necklace(n, q as u8, k, |_, p| {
        if divides(n / p, r) {
            c += 1;
        }
    });
    Ok(c)
}

/// One row of the scanner output; `k = None` marks the total over all k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: usize,
    pub q: usize,
    pub k: Option<usize>,
    pub r: usize,
    pub count_multisets: usize,
    pub count_necklaces: usize,
    pub equal: bool,
    /// Letters of the binary-case conditions that hold, "-" for none.
    pub conditions: String,
}

pub const SCAN_HEADER: &str = "n,q,k,r,count_multisets,count_necklaces,equal,conditions";

impl ScanRow {
    pub fn to_csv(&self) -> String {
        let k = self.k.map_or_else(|| "all".to_string(), |k| k.to_string());
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.q,
            k,
            self.r,
            self.count_multisets,
            self.count_necklaces,
            self.equal,
            self.conditions
        )
    }
}

fn scan_cell(n: usize, q: usize, k_max: Option<usize>) -> Result<Vec<ScanRow>> {
    let top = n * (q - 1);
    let k_top = k_max.map_or(top, |m| m.min(top));
    let mut rows = Vec::new();
    for r in 0..n {
        let (mut tm, mut tn) = (0, 0);
        for k in 0..=top {
            let cm = count_multisets(n, k, r, q)?;
            let cn = count_qary_necklaces(n, k, r, q)?;
            tm += cm;
            tn += cn;
            if k <= k_top {
                rows.push(ScanRow {
                    n,
                    q,
                    k: Some(k),
                    r,
                    count_multisets: cm,
                    count_necklaces: cn,
                    equal: cm == cn,
                    conditions: condition_letters(&analogue_conditions(n, k, r)),
                });
            }
        }
        rows.push(ScanRow {
            n,
            q,
            k: None,
            r,
            count_multisets: tm,
            count_necklaces: tn,
            equal: tm == tn,
            conditions: "-".to_string(),
        });
    }
    Ok(rows)
}

/// Rows for 1 ≤ n ≤ n_max, 2 ≤ q ≤ q_max, every r, and k up to `k_max`
/// (default: all k). Grouped by (n, q, r) with a totals row closing each.
pub fn scan_equality(n_max: usize, q_max: usize, k_max: Option<usize>) -> Result<Vec<ScanRow>> {
    if n_max < 2 || q_max < 2 {
        return Err(invalid("scan bounds must be at least 2"));
    }
    if let Some(m) = k_max {
        if m < 2 {
            return Err(invalid("scan bounds must be at least 2"));
        }
    }
    check_q(q_max)?;
    let cells: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (2..=q_max).map(move |q| (n, q))).collect();
    let parts = cells.par_iter().map(|&(n, q)| scan_cell(n, q, k_max)).collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChanReport {
    pub n: usize,
    pub q: usize,
    pub multisets_total: usize,
    pub necklaces_total: usize,
}

impl ChanReport {
    pub fn passed(&self) -> bool {
        self.multisets_total == self.necklaces_total
    }
}

/// Totals over all k of multisets with sum ≡ 0 and of necklaces (every
/// co-period divides 0), counted by listing. Requires gcd(q, n) = 1.
pub fn chan_total_check(n: usize, q: usize) -> Result<ChanReport> {
    check_nq(n, q)?;
    if gcd(n, q) != 1 {
        return Err(Error::GcdNotOne { n, q });
    }
    let mut multisets_total = 0;
    let mut necklaces_total = 0;
    for k in 0..=n * (q - 1) {
        multisets_total += count_multisets(n, k, 0, q)?;
        necklaces_total += count_qary_necklaces(n, k, 0, q)?;
    }
    Ok(ChanReport { n, q, multisets_total, necklaces_total })
}
