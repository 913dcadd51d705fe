//! Binary words, necklaces and Lyndon words.
//!
//! A necklace is stored through its canonical representative, the
//! lexicographically smallest rotation (with `0 < 1`). Enumeration has two
//! engines: a fixed-density prenecklace generator (the fast path) and a
//! filter over all words of the requested weight (the oracle). They must
//! agree exactly.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::arith::{binomial, div_exact, divisors, euler_phi, gcd, moebius, pow2, ramanujan_sum, ExactInt};
use crate::error::{invalid, Error, Result};

/// A non-empty word over `{0, 1}` with its weight cached.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    bits: Vec<u8>,
    weight: usize,
}

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(invalid("binary word must be non-empty"));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(invalid(format!("binary word contains symbol {b}")));
        }
        let weight = bits.iter().filter(|&&b| b == 1).count();
        Ok(Self { bits, weight })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Rotation starting at 0-based offset `j`: `w_j w_{j+1} ... w_{j-1}`.
    pub fn rotate(&self, j: usize) -> Self {
        let j = j % self.len();
        let mut bits = Vec::with_capacity(self.len());
        bits.extend_from_slice(&self.bits[j..]);
        bits.extend_from_slice(&self.bits[..j]);
        Self { bits, weight: self.weight }
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Self {
        Self { bits: self.bits.repeat(times), weight: self.weight * times }
    }

    /// Running parities of the prefixes.
    pub fn partial_sums(&self) -> Self {
        let mut acc = 0u8;
        let bits: Vec<u8> = self
            .bits
            .iter()
            .map(|&b| {
                acc ^= b;
                acc
            })
            .collect();
        Self::new(bits).expect("partial sums of a non-empty word are a non-empty word")
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid bit {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }
}

/// A conjugacy class of binary words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Necklace {
    canonical: BinaryWord,
    coperiod: usize,
}

impl Necklace {
    pub fn canonical(&self) -> &BinaryWord {
        &self.canonical
    }

    pub fn coperiod(&self) -> usize {
        self.coperiod
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> usize {
        self.canonical.weight()
    }

    pub fn is_primitive(&self) -> bool {
        self.coperiod == 1
    }

    /// The word `v` with `canonical = v^coperiod`.
    pub fn primitive_root(&self) -> BinaryWord {
        let p = self.len() / self.coperiod;
        BinaryWord::new(self.canonical.bits[..p].to_vec()).expect("non-empty root")
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

/// Index of the lexicographically smallest rotation (first one on ties).
pub(crate) fn least_rotation(s: &[u8]) -> usize {
    let n = s.len();
    let mut best = 0;
    for j in 1..n {
        let better = (0..n)
            .map(|i| (s[(j + i) % n], s[(best + i) % n]))
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a < b);
        if better {
            best = j;
        }
    }
    best
}

/// Largest `j` with `s = v^j`.
pub(crate) fn coperiod_of(s: &[u8]) -> usize {
    let n = s.len();
    for p in divisors(n).expect("non-empty word") {
        if (0..n).all(|i| s[i] == s[(i + p) % n]) {
            return n / p;
        }
    }
    unreachable!("p = n always matches")
}

pub(crate) fn is_canonical(s: &[u8]) -> bool {
    let n = s.len();
    (1..n).all(|j| (0..n).map(|i| s[(j + i) % n]).ge(s.iter().copied()))
}

pub fn canonical_form(w: &BinaryWord) -> Result<Necklace> {
    if w.is_empty() {
        return Err(invalid("canonical_form of the empty word"));
    }
    let canonical = w.rotate(least_rotation(&w.bits));
    let coperiod = coperiod_of(&canonical.bits);
    Ok(Necklace { canonical, coperiod })
}

pub fn co_period(w: &BinaryWord) -> usize {
    coperiod_of(&w.bits)
}

/// Primitive and strictly smallest among its rotations. Single letters are Lyndon.
pub fn is_lyndon(w: &BinaryWord) -> bool {
    co_period(w) == 1 && is_canonical(&w.bits)
}

/// Prenecklace generation over `0..q` restricted to entry sum `target`.
///
/// `visit` receives each generated word together with the length of its
/// longest Lyndon prefix; the word is a necklace iff that divides `n`, and a
/// Lyndon word iff it equals `n`. Words are produced in ascending order.
pub(crate) fn for_each_fixed_sum_necklace(
    n: usize,
    q: u8,
    target: usize,
    mut visit: impl FnMut(&[u8], usize),
) {
    if n == 0 || target > n * (q as usize - 1) {
        return;
    }
    let mut a = vec![0u8; n + 1];
    fkm(1, 1, 0, n, q, target, &mut a, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn fkm(
    t: usize,
    p: usize,
    sum: usize,
    n: usize,
    q: u8,
    target: usize,
    a: &mut [u8],
    visit: &mut impl FnMut(&[u8], usize),
) {
    if t > n {
        if n.is_multiple_of(p) {
            visit(&a[1..], p);
        }
        return;
    }
    let remaining_cap = (n - t) * (q as usize - 1);
    let feasible = |v: u8| {
        let s = sum + v as usize;
        s <= target && s + remaining_cap >= target
    };
    let first = a[t - p];
    if feasible(first) {
        a[t] = first;
        fkm(t + 1, p, sum + first as usize, n, q, target, a, visit);
    }
    for v in first + 1..q {
        if feasible(v) {
            a[t] = v;
            fkm(t + 1, t, sum + v as usize, n, q, target, a, visit);
        }
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("word length n must be at least 1"));
    }
    if k > n {
        return Err(invalid(format!("weight k = {k} exceeds length n = {n}")));
    }
    Ok(())
}

fn check_nkr(n: usize, k: usize, r: usize) -> Result<()> {
    check_nk(n, k)?;
    if r >= n {
        return Err(invalid(format!("residue r = {r} must be below n = {n}")));
    }
    Ok(())
}

/// Necklaces of length `n` with `k` ones, ascending (fast path).
pub fn enumerate_necklaces(n: usize, k: usize) -> Result<Vec<Necklace>> {
    check_nk(n, k)?;
    let mut out = Vec::new();
    for_each_fixed_sum_necklace(n, 2, k, |bits, p| {
        out.push(Necklace {
            canonical: BinaryWord::new(bits.to_vec()).expect("valid bits"),
            coperiod: n / p,
        });
    });
    Ok(out)
}

/// Filter over all C(n, k) words (oracle).
pub fn enumerate_necklaces_by_filter(n: usize, k: usize) -> Result<Vec<Necklace>> {
    check_nk(n, k)?;
    let mut out: Vec<Necklace> = words_of_weight(n, k)
        .into_iter()
        .filter(|w| is_canonical(&w.bits))
        .map(|canonical| {
            let coperiod = coperiod_of(&canonical.bits);
            Necklace { canonical, coperiod }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All words of length `n` with `k` ones, ascending.
pub fn words_of_weight(n: usize, k: usize) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    let mut bits = vec![0u8; n];
    fn rec(i: usize, left: usize, bits: &mut Vec<u8>, out: &mut Vec<BinaryWord>) {
        let n = bits.len();
        if i == n {
            if left == 0 {
                out.push(BinaryWord::new(bits.clone()).expect("non-empty"));
            }
            return;
        }
        if n - i > left {
            bits[i] = 0;
            rec(i + 1, left, bits, out);
        }
        if left > 0 {
            bits[i] = 1;
            rec(i + 1, left - 1, bits, out);
            bits[i] = 0;
        }
    }
    if n > 0 && k <= n {
        rec(0, k, &mut bits, &mut out);
    }
    out
}

pub fn enumerate_lyndon(n: usize, k: usize) -> Result<Vec<BinaryWord>> {
    check_nk(n, k)?;
    let mut out = Vec::new();
    for_each_fixed_sum_necklace(n, 2, k, |bits, p| {
        if p == n {
            out.push(BinaryWord::new(bits.to_vec()).expect("valid bits"));
        }
    });
    Ok(out)
}

pub fn enumerate_lyndon_by_filter(n: usize, k: usize) -> Result<Vec<BinaryWord>> {
    check_nk(n, k)?;
    Ok(words_of_weight(n, k).into_iter().filter(is_lyndon).collect())
}

/// Every positive integer divides 0.
pub(crate) fn divides(j: usize, r: usize) -> bool {
    r.is_multiple_of(j)
}

pub fn enumerate_coperiod_div(n: usize, k: usize, r: usize) -> Result<Vec<Necklace>> {
    check_nkr(n, k, r)?;
    Ok(enumerate_necklaces(n, k)?.into_iter().filter(|nk| divides(nk.coperiod, r)).collect())
}

/// L(n, k), together with L(n/2, k/2) when n is even and k ≡ 2 (mod 4).
pub fn enumerate_lplus(n: usize, k: usize) -> Result<Vec<BinaryWord>> {
    let mut out = enumerate_lyndon(n, k)?;
    if lplus_has_half(n, k) {
        out.extend(enumerate_lyndon(n / 2, k / 2)?);
    }
    Ok(out)
}

pub(crate) fn lplus_has_half(n: usize, k: usize) -> bool {
    n.is_multiple_of(2) && k % 4 == 2
}

fn weighted_divisor_sum(
    n: usize,
    k: usize,
    mut weight: impl FnMut(usize) -> Result<ExactInt>,
) -> Result<ExactInt> {
    let mut total = ExactInt::default();
    for d in divisors(gcd(n, k))? {
        total += binomial(n / d, (k / d) as i64) * weight(d)?;
    }
    Ok(total)
}

pub fn count_necklaces(n: usize, k: usize) -> Result<ExactInt> {
    check_nk(n, k)?;
    let sum = weighted_divisor_sum(n, k, euler_phi)?;
    div_exact(&sum, n, "count_necklaces")
}

pub fn count_necklaces_total(n: usize) -> Result<ExactInt> {
    check_nk(n, 0)?;
    let mut sum = ExactInt::default();
    for d in divisors(n)? {
        sum += euler_phi(d)? * pow2(n / d);
    }
    div_exact(&sum, n, "count_necklaces_total")
}

pub fn count_lyndon(n: usize, k: usize) -> Result<ExactInt> {
    check_nk(n, k)?;
    let sum = weighted_divisor_sum(n, k, |d| Ok(moebius(d)?.into()))?;
    div_exact(&sum, n, "count_lyndon")
}

pub fn count_lyndon_total(n: usize) -> Result<ExactInt> {
    check_nk(n, 0)?;
    let mut sum = ExactInt::default();
    for d in divisors(n)? {
        sum += ExactInt::from(moebius(d)?) * pow2(n / d);
    }
    div_exact(&sum, n, "count_lyndon_total")
}

/// |N_r(n, k)|: necklaces with `k` ones whose co-period divides `r`.
pub fn count_coperiod_div(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    check_nkr(n, k, r)?;
    let sum = weighted_divisor_sum(n, k, |d| ramanujan_sum(d, r))?;
    div_exact(&sum, n, "count_coperiod_div")
}

pub fn count_lplus(n: usize, k: usize) -> Result<ExactInt> {
    let base = count_lyndon(n, k)?;
    if lplus_has_half(n, k) {
        Ok(base + count_lyndon(n / 2, k / 2)?)
    } else {
        Ok(base)
    }
}

/// Same as [`count_coperiod_div`] but accepts any `r`, reducing it mod `n`.
/// The co-period always divides `n`, so only gcd(r, n) matters.
pub(crate) fn count_coperiod_div_any_r(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    count_coperiod_div(n, k, r.mod_floor(&n))
}
