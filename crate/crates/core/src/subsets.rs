//! Subsets of `[n]` (full universe) and `[n-1]` (short universe) classified
//! by the residue of their element sum modulo `n`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{binomial, div_exact, divisors, gcd, moebius, ramanujan_sum, sign_pow, ExactInt};
use crate::error::{invalid, Error, Result};
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Universe {
    /// `{1, ..., n}`
    Full,
    /// `{1, ..., n-1}`
    Short,
}

/// Strictly increasing elements of `[1, n]`; `n` stands for the class of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueSubset {
    modulus: usize,
    elements: Vec<usize>,
    residue: usize,
}

impl ResidueSubset {
    /// Builds a subset from elements in any order. Duplicates and elements
    /// outside `[1, n]` are rejected.
    pub fn new(modulus: usize, mut elements: Vec<usize>) -> Result<Self> {
        if modulus == 0 {
            return Err(invalid("modulus must be at least 1"));
        }
        elements.sort_unstable();
        if let Some(bad) = elements.iter().find(|&&a| a == 0 || a > modulus) {
            return Err(invalid(format!("element {bad} outside 1..={modulus}")));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("subset elements must be distinct"));
        }
        let residue = elements.iter().sum::<usize>() % modulus;
        Ok(Self { modulus, elements, residue })
    }

    /// Accepts the 0-based rendering as well: 0 is read as `n`.
    pub fn from_zero_based(modulus: usize, elements: Vec<usize>) -> Result<Self> {
        let lifted = elements.into_iter().map(|a| if a == 0 { modulus } else { a }).collect();
        Self::new(modulus, lifted)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn residue(&self) -> usize {
        self.residue
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Elements with `n` rendered as 0, ascending.
    pub fn zero_based(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements.iter().map(|&a| a % self.modulus).collect();
        v.sort_unstable();
        v
    }

    pub fn render(&self, zero_based: bool) -> String {
        let items = if zero_based { self.zero_based() } else { self.elements.clone() };
        let body: Vec<String> = items.iter().map(ToString::to_string).collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Display for ResidueSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Parses `"{1,2,4}"`, `"1,2,4"` or `"{}"`.
pub fn parse_elements(s: &str) -> Result<Vec<usize>> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad subset element {t:?}: {e}")))
        })
        .collect()
}

fn check_nkr(n: usize, k: usize, r: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    if r >= n {
        return Err(invalid(format!("residue r = {r} must be below n = {n}")));
    }
    Ok(())
}

fn check_short(n: usize, k: usize, r: usize) -> Result<()> {
    check_nkr(n, k, r)?;
    if k + 1 > n {
        return Err(invalid(format!("short universe [{}] has no {k}-subsets", n - 1)));
    }
    Ok(())
}

/// All qualifying `k`-subsets in lexicographic order of element sequence.
pub fn enumerate_subsets(n: usize, k: usize, r: usize, universe: Universe) -> Result<Vec<ResidueSubset>> {
    let top = match universe {
        Universe::Full => {
            check_nkr(n, k, r)?;
            n
        }
        Universe::Short => {
            check_short(n, k, r)?;
            n - 1
        }
    };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    combinations(1, top, k, &mut cur, &mut |elems| {
        if elems.iter().sum::<usize>() % n == r {
            out.push(ResidueSubset { modulus: n, elements: elems.to_vec(), residue: r });
        }
    });
    Ok(out)
}

fn combinations(start: usize, top: usize, k: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    let need = k - cur.len();
    let mut a = start;
    while a + need <= top + 1 {
        cur.push(a);
        combinations(a + 1, top, k, cur, visit);
        cur.pop();
        a += 1;
    }
}

/// |S̄_r(n, k)| from the signed Ramanujan divisor sum.
pub fn count_sbar(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    check_nkr(n, k, r)?;
    let mut sum = ExactInt::zero();
    for d in divisors(gcd(n, k))? {
        sum += binomial(n / d, (k / d) as i64) * ramanujan_sum(d, r)? * sign_pow(k / d + k);
    }
    div_exact(&sum, n, "count_sbar")
}

/// |S_r(n, k)| as the alternating sum of |S̄_r(n, i)| for i = 0..=k.
pub fn count_s_short(n: usize, k: usize, r: usize) -> Result<ExactInt> {
    check_short(n, k, r)?;
    let mut total = ExactInt::zero();
    for i in 0..=k {
        total += count_sbar(n, i, r)? * sign_pow(k - i);
    }
    Ok(total)
}

/// Second counting oracle: dynamic programming over (size, residue).
/// Independent of the closed forms; usable well past enumeration range.
pub fn count_subsets_dp(n: usize, k: usize, r: usize, universe: Universe) -> Result<ExactInt> {
    let top = match universe {
        Universe::Full => {
            check_nkr(n, k, r)?;
            n
        }
        Universe::Short => {
            check_short(n, k, r)?;
            n - 1
        }
    };
    // table[size][residue]
    let mut table = vec![vec![ExactInt::zero(); n]; k + 1];
    table[0][0] = ExactInt::from(1);
    for a in 1..=top {
        let step = a % n;
        for size in (1..=k.min(a)).rev() {
            let (lower, upper) = table.split_at_mut(size);
            let prev = &lower[size - 1];
            let row = &mut upper[0];
            for (res, v) in prev.iter().enumerate() {
                if !v.is_zero() {
                    row[(res + step) % n] += v;
                }
            }
        }
    }
    Ok(std::mem::take(&mut table[k][r]))
}

/// (1 - (-x)^d)^e
fn one_minus_neg_x_pow(d: usize, e: usize) -> IntPolynomial {
    let base = &IntPolynomial::one() - &IntPolynomial::monomial(sign_pow(d), d);
    base.pow(e)
}

/// Σ_k |S̄_r(n, k)| x^k, from the roots-of-unity filter in Ramanujan form.
pub fn sbar_generating_poly(n: usize, r: usize) -> Result<IntPolynomial> {
    check_nkr(n, 0, r)?;
    let mut acc = IntPolynomial::zero();
    for d in divisors(n)? {
        acc = &acc + &one_minus_neg_x_pow(d, n / d).scale(&ramanujan_sum(d, r)?);
    }
    acc.scale_exact(n)
}

/// Σ_k |S_1(n, k-1)| x^(k-1), built from the grouped filter terms
/// μ(n/d)·(1 - (-x)^(n/d))^d, then divided by (1 + x) and by n.
pub fn s1_short_poly(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let mut acc = IntPolynomial::zero();
    for d in divisors(n)? {
        let mu = moebius(n / d)?;
        if mu != 0 {
            acc = &acc + &one_minus_neg_x_pow(n / d, d).scale(&mu.into());
        }
    }
    acc.divide_exact(&IntPolynomial::from_i64s(&[1, 1]))?.scale_exact(n)
}

/// Integers with `n·x + k·y + r·z = 1` and gcd(z, n) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BezoutTriple {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl BezoutTriple {
    pub fn is_valid(&self) -> bool {
        let (n, k, r) = (self.n as i128, self.k as i128, self.r as i128);
        n * self.x as i128 + k * self.y as i128 + r * self.z as i128 == 1
            && gcd(self.z.unsigned_abs() as usize, self.n) == 1
    }
}

/// (g, s, t) with a·s + b·t = g = gcd(a, b).
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Extended gcd followed by the shift (x, y - r·j, z + k·j) for
/// j = 0, 1, 2, ... until z + k·j is coprime to n.
pub fn bezout_solve(n: usize, k: usize, r: usize) -> Result<BezoutTriple> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if gcd(gcd(n, k), r) != 1 {
        return Err(Error::NotCoprime { n, k, r });
    }
    let (g1, a, b) = extended_gcd(n as i64, k as i64);
    let (g, c, e) = extended_gcd(g1, r as i64);
    debug_assert_eq!(g, 1);
    let (x, y0, z0) = (a * c, b * c, e);
    let limit = n * crate::arith::factorize(n).len() + 1;
    for j in 0..limit as i64 {
        let z = z0 + k as i64 * j;
        if gcd(z.unsigned_abs() as usize, n) == 1 {
            let triple = BezoutTriple { x, y: y0 - r as i64 * j, z, n, k, r };
            debug_assert!(triple.is_valid());
            return Ok(triple);
        }
    }
    Err(Error::SearchExhausted { n, k, r })
}

/// A ↦ (z·A + y) mod n, with residue 0 rendered as n.
pub fn affine_bijection(a: &ResidueSubset, y: i64, z: i64) -> Result<ResidueSubset> {
    let n = a.modulus;
    if gcd(z.unsigned_abs() as usize, n) != 1 {
        return Err(Error::ZNotCoprime { z, n });
    }
    let n_i = n as i128;
    let image = a
        .elements
        .iter()
        .map(|&e| {
            let v = (z as i128 * e as i128 + y as i128).mod_floor(&n_i) as usize;
            if v == 0 {
                n
            } else {
                v
            }
        })
        .collect();
    ResidueSubset::new(n, image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, e: &[usize]) -> ResidueSubset {
        ResidueSubset::new(n, e.to_vec()).unwrap()
    }

    fn rendered(v: &[ResidueSubset]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    /// Brute force over all 2^top bitmasks.
    fn brute_count(n: usize, k: usize, r: usize, top: usize) -> usize {
        (0u32..1 << top)
            .filter(|m| m.count_ones() as usize == k)
            .filter(|m| (1..=top).filter(|a| m >> (a - 1) & 1 == 1).sum::<usize>() % n == r)
            .count()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            rendered(&enumerate_subsets(6, 3, 2, Universe::Full).unwrap()),
            ["{1,2,5}", "{1,3,4}", "{3,5,6}"]
        );
        for n in 1..6 {
            assert_eq!(rendered(&enumerate_subsets(n, 0, 0, Universe::Full).unwrap()), ["{}"]);
        }
        assert_eq!(rendered(&enumerate_subsets(5, 2, 1, Universe::Short).unwrap()), ["{2,4}"]);
        assert!(enumerate_subsets(5, 2, 5, Universe::Full).is_err());
        assert!(enumerate_subsets(5, 5, 0, Universe::Short).is_err());
    }

    #[test]
    fn zero_based_rendering() {
        let s = set(6, &[3, 5, 6]);
        assert_eq!(s.render(true), "{0,3,5}");
        assert_eq!(ResidueSubset::from_zero_based(6, vec![0, 3, 5]).unwrap(), s);
        assert_eq!(parse_elements("{1, 2,4}").unwrap(), vec![1, 2, 4]);
        assert_eq!(parse_elements("{}").unwrap(), Vec::<usize>::new());
        assert!(parse_elements("1,x").is_err());
        assert!(ResidueSubset::new(4, vec![1, 1]).is_err());
        assert!(ResidueSubset::new(4, vec![5]).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_sbar(4, 2, 2).unwrap(), 1.into());
        for n in 1..10 {
            assert_eq!(count_sbar(n, 0, 0).unwrap(), 1.into());
            assert_eq!(count_s_short(n, 0, 0).unwrap(), 1.into());
            for r in 1..n {
                assert_eq!(count_s_short(n, 0, r).unwrap(), 0.into());
            }
        }
        assert_eq!(count_sbar(6, 3, 1).unwrap(), 3.into());
        assert_eq!(
            rendered(&enumerate_subsets(6, 3, 1, Universe::Full).unwrap()),
            ["{1,2,4}", "{2,5,6}", "{3,4,6}"]
        );
        assert_eq!(count_s_short(5, 1, 1).unwrap(), 1.into());
        assert_eq!(count_s_short(5, 2, 1).unwrap(), 1.into());
    }

    #[test]
    fn formulas_match_enumeration_and_bitmask_oracle() {
        for n in 1..=14 {
            for k in 0..=n {
                for r in 0..n {
                    let full = enumerate_subsets(n, k, r, Universe::Full).unwrap().len();
                    assert_eq!(full, brute_count(n, k, r, n));
                    assert_eq!(count_sbar(n, k, r).unwrap(), full.into(), "n={n} k={k} r={r}");
                    if k < n {
                        let short = enumerate_subsets(n, k, r, Universe::Short).unwrap().len();
                        assert_eq!(count_s_short(n, k, r).unwrap(), short.into());
                    }
                }
            }
        }
    }

    #[test]
    fn dp_oracle_agrees_far_out() {
        for n in [20, 31, 48, 60] {
            for k in [0, 1, 2, n / 3, n / 2, n - 1, n] {
                for r in [0, 1, 2, n / 2] {
                    assert_eq!(
                        count_subsets_dp(n, k, r, Universe::Full).unwrap(),
                        count_sbar(n, k, r).unwrap()
                    );
                }
            }
        }
        for n in 1..=12 {
            for k in 0..n {
                for r in 0..n {
                    assert_eq!(
                        count_subsets_dp(n, k, r, Universe::Short).unwrap(),
                        count_s_short(n, k, r).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn full_universe_splits_on_n() {
        for n in 1..=14 {
            for k in 1..=n {
                for r in 0..n {
                    let full = enumerate_subsets(n, k, r, Universe::Full).unwrap();
                    let lhs = count_sbar(n, k, r).unwrap();
                    let short_k = if k < n { count_s_short(n, k, r).unwrap() } else { 0.into() };
                    assert_eq!(lhs, short_k + count_s_short(n, k - 1, r).unwrap());
                    // removing n from the sets containing it lands exactly on S_r(n, k-1)
                    let mut stripped: Vec<ResidueSubset> = full
                        .iter()
                        .filter(|s| s.contains(n))
                        .map(|s| {
                            let e: Vec<usize> = s.elements().iter().copied().filter(|&a| a != n).collect();
                            ResidueSubset::new(n, e).unwrap()
                        })
                        .collect();
                    stripped.sort();
                    assert_eq!(stripped, enumerate_subsets(n, k - 1, r, Universe::Short).unwrap());
                }
            }
        }
    }

    #[test]
    fn generating_poly_examples() {
        // {1,2,3,4} sums to 10 = 2 mod 4, so the x^4 coefficient is 1
        assert_eq!(sbar_generating_poly(4, 2).unwrap(), IntPolynomial::from_i64s(&[0, 1, 1, 1, 1]));
        assert_eq!(sbar_generating_poly(1, 0).unwrap(), IntPolynomial::from_i64s(&[1, 1]));
        assert_eq!(sbar_generating_poly(5, 1).unwrap().coeff(3), 2.into());
        for n in 1..=12 {
            for r in 0..n {
                let p = sbar_generating_poly(n, r).unwrap();
                for k in 0..=n {
                    assert_eq!(p.coeff(k), count_sbar(n, k, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn s1_poly_examples() {
        assert_eq!(s1_short_poly(5).unwrap(), IntPolynomial::from_i64s(&[0, 1, 1, 1]));
        assert_eq!(s1_short_poly(1).unwrap(), IntPolynomial::one());
        assert_eq!(s1_short_poly(6).unwrap().coeff(2), brute_count(6, 2, 1, 5).into());
        for n in 1..=14 {
            let p = s1_short_poly(n).unwrap();
            for k in 1..=n {
                assert_eq!(p.coeff(k - 1), brute_count(n, k - 1, 1 % n, n - 1).into(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bezout_examples() {
        let t = bezout_solve(6, 3, 2).unwrap();
        assert_eq!((t.x, t.y, t.z), (0, 1, -1));
        for n in 1..20 {
            for k in 0..=n {
                let t = bezout_solve(n, k, 1).unwrap();
                assert!(t.is_valid());
            }
        }
        let t = bezout_solve(5, 2, 3).unwrap();
        assert!(t.is_valid());
        assert!(matches!(bezout_solve(6, 4, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn bezout_always_found() {
        for n in 1..=60 {
            for k in 0..=n {
                for r in 0..n {
                    if gcd(gcd(n, k), r) == 1 {
                        assert!(bezout_solve(n, k, r).unwrap().is_valid(), "n={n} k={k} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn affine_examples() {
        assert_eq!(affine_bijection(&set(6, &[3, 5, 6]), 1, -1).unwrap(), set(6, &[1, 2, 4]));
        let s = set(7, &[1, 4, 7]);
        assert_eq!(affine_bijection(&s, 0, 1).unwrap(), s);
        let img = affine_bijection(&set(6, &[1, 2, 5]), 1, -1).unwrap();
        assert_eq!(img, set(6, &[2, 5, 6]));
        assert_eq!(img.render(true), "{0,2,5}");
        assert!(matches!(affine_bijection(&s, 0, 7), Err(Error::ZNotCoprime { .. })));
    }

    #[test]
    fn gcd_one_counts_match_r1() {
        for n in 2..=14 {
            for k in 0..=n {
                for r in 0..n {
                    if gcd(gcd(n, k), r) == 1 {
                        assert_eq!(count_sbar(n, k, r).unwrap(), count_sbar(n, k, 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn full_set_residue() {
        for n in 1..=30 {
            for r in 0..n {
                let expected = i32::from(r == (n * (n + 1) / 2) % n);
                assert_eq!(count_sbar(n, n, r).unwrap(), expected.into());
            }
        }
    }
}
