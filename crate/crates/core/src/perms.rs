//! V-shaped and cyclic permutations.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::arith::{divisors, moebius, sign_pow, ExactInt};
use crate::error::{invalid, Error, Result};
use crate::poly::IntPolynomial;
use crate::words::count_lplus;

/// A permutation of `1..=n` in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    oneline: Vec<usize>,
}

impl Permutation {
    pub fn new(oneline: Vec<usize>) -> Result<Self> {
        let n = oneline.len();
        if n == 0 {
            return Err(invalid("permutation must be non-empty"));
        }
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            if v == 0 || v > n || seen[v] {
                return Err(invalid(format!("{oneline:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(Self { oneline })
    }

    pub fn identity(n: usize) -> Self {
        Self { oneline: (1..=n).collect() }
    }

    /// The permutation whose single cycle is `(c_1, c_2, ..., c_n)`.
    pub fn from_cycle(cycle: &[usize]) -> Result<Self> {
        let n = cycle.len();
        let mut oneline = vec![0; n];
        for (i, &a) in cycle.iter().enumerate() {
            if a == 0 || a > n || oneline[a - 1] != 0 {
                return Err(invalid(format!("{cycle:?} is not a cycle on 1..={n}")));
            }
            oneline[a - 1] = cycle[(i + 1) % n];
        }
        Self::new(oneline)
    }

    pub fn len(&self) -> usize {
        self.oneline.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oneline.is_empty()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.oneline
    }

    /// σ(i) for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.oneline[i - 1]
    }

    /// The cycle through `start`, beginning with `start`.
    pub fn cycle_from(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut cur = self.apply(start);
        while cur != start {
            cycle.push(cur);
            cur = self.apply(cur);
        }
        cycle
    }

    pub fn cycles(&self) -> CycleForm {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let c = self.cycle_from(start);
            for &a in &c {
                seen[a] = true;
            }
            cycles.push(c);
        }
        CycleForm { cycles }
    }

    /// σ_1...σ_n ↦ (n+1-σ_n)...(n+1-σ_1).
    pub fn reverse_complement(&self) -> Self {
        let n = self.len();
        Self { oneline: self.oneline.iter().rev().map(|&v| n + 1 - v).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.oneline {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.oneline.iter().map(ToString::to_string).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Concatenated digits (`54213`) or integers separated by spaces or commas.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Result<Vec<usize>> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}"))))
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect()
        };
        Self::new(values?)
    }
}

/// Cycle decomposition; each cycle starts at its smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleForm {
    cycles: Vec<Vec<usize>>,
}

impl CycleForm {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        let n: usize = self.cycles.iter().map(Vec::len).sum();
        let mut oneline = vec![0; n];
        for c in &self.cycles {
            for (i, &a) in c.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(invalid("cycle entry out of range"));
                }
                oneline[a - 1] = c[(i + 1) % c.len()];
            }
        }
        Permutation::new(oneline)
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// 1-based position of the minimum if σ strictly decreases to it and then
/// strictly increases.
pub fn is_v_shaped(p: &Permutation) -> Option<usize> {
    let v = p.oneline();
    let pos = v.iter().position(|&x| x == 1)?;
    let decreasing = v[..=pos].windows(2).all(|w| w[0] > w[1]);
    let increasing = v[pos..].windows(2).all(|w| w[0] < w[1]);
    (decreasing && increasing).then_some(pos + 1)
}

pub fn is_cyclic(p: &Permutation) -> bool {
    p.cycle_from(1).len() == p.len()
}

/// σ_1 > ... > σ_k and σ_{k+1} < ... < σ_n, i.e. σ is V-shaped with its
/// minimum at position k or k + 1.
pub fn has_threshold_shape(p: &Permutation, k: usize) -> bool {
    let v = p.oneline();
    if k > v.len() {
        return false;
    }
    v[..k].windows(2).all(|w| w[0] > w[1]) && v[k..].windows(2).all(|w| w[0] < w[1])
}

/// CVP(n, k), in lexicographic one-line order.
///
/// Candidates are built from the value set of the descending prefix (the
/// minimum 1 sits at position k), so only C(n-1, k-1) permutations are
/// tested for cyclicity.
pub fn enumerate_cvp(n: usize, k: usize) -> Result<Vec<Permutation>> {
    if n == 0 || k == 0 || k > n {
        return Err(invalid(format!("enumerate_cvp requires 1 <= k <= n, got n={n} k={k}")));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k - 1);
    choose_prefix(2, n, k - 1, &mut prefix, &mut |prefix| {
        let mut oneline: Vec<usize> = prefix.iter().rev().copied().collect();
        oneline.push(1);
        oneline.extend((2..=n).filter(|v| prefix.binary_search(v).is_err()));
        let p = Permutation { oneline };
        if is_cyclic(&p) {
            out.push(p);
        }
    });
    out.sort();
    Ok(out)
}

fn choose_prefix(
    start: usize,
    top: usize,
    need: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == need {
        visit(cur);
        return;
    }
    let left = need - cur.len();
    for v in start..=top {
        if v + left > top + 1 {
            break;
        }
        cur.push(v);
        choose_prefix(v + 1, top, need, cur, visit);
        cur.pop();
    }
}

/// Σ_k |CVP(n, k)| x^(k-1) = (1/(n(1+x))) Σ_{d|n} μ(d) (1 - (-x)^d)^(n/d).
pub fn thibon_poly(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let mut acc = IntPolynomial::zero();
    for d in divisors(n)? {
        let mu = moebius(d)?;
        if mu == 0 {
            continue;
        }
        let base = &IntPolynomial::one() - &IntPolynomial::monomial(sign_pow(d), d);
        acc = &acc + &base.pow(n / d).scale(&mu.into());
    }
    acc.divide_exact(&IntPolynomial::from_i64s(&[1, 1]))?.scale_exact(n)
}

/// |CVP(n, k)| = Σ_{i<k} (-1)^(k-1-i) |L⁺(n, i)|; zero for k = 0 or k > n.
pub fn count_cvp(n: usize, k: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if k == 0 || k > n {
        return Ok(ExactInt::zero());
    }
    let mut total = ExactInt::zero();
    for i in 0..k {
        total += count_lplus(n, i)? * sign_pow(k - 1 - i);
    }
    Ok(total)
}

/// |CVP(n, k)| + |CVP(n, k + 1)|, for 0 <= k <= n.
pub fn count_cvp_pair(n: usize, k: usize) -> Result<ExactInt> {
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    Ok(count_cvp(n, k)? + count_cvp(n, k + 1)?)
}

pub fn count_cvp_total(n: usize) -> Result<ExactInt> {
    (1..=n).map(|k| count_cvp(n, k)).sum()
}
