//! Number-theoretic helpers behind every counting formula.
//!
//! All inputs are machine-sized (the parameters `n`, `k`, `r` are tiny);
//! every value that can grow is returned as an [`ExactInt`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// Arbitrary-precision signed integer used for all counts and coefficients.
pub type ExactInt = BigInt;

/// 2-adic valuation. `Infinity` is reserved for the valuation of zero.
///
/// The derived ordering places every finite value below `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation2 {
    Finite(u32),
    Infinity,
}

impl Valuation2 {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation2::Finite(v) => Some(v),
            Valuation2::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation2::Finite(v) => write!(f, "{v}"),
            Valuation2::Infinity => f.write_str("inf"),
        }
    }
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(invalid(format!("{what} requires a positive argument")))
    } else {
        Ok(())
    }
}

/// gcd with the convention gcd(0, d) = d.
pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

/// Divisors of `n` in ascending order, by trial division up to sqrt(n).
pub fn divisors(n: usize) -> Result<Vec<usize>> {
    require_positive(n, "divisors")?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: usize) -> Result<ExactInt> {
    require_positive(n, "euler_phi")?;
    Ok(ExactInt::from(phi_usize(n)))
}

fn phi_usize(n: usize) -> usize {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn moebius(n: usize) -> Result<i8> {
    require_positive(n, "moebius")?;
    Ok(mu_usize(n))
}

fn mu_usize(n: usize) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn nu2(m: u64) -> Valuation2 {
    if m == 0 {
        Valuation2::Infinity
    } else {
        Valuation2::Finite(m.trailing_zeros())
    }
}

/// C(n, k), zero when `k` lies outside `0..=n`.
pub fn binomial(n: usize, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n as u64 {
        return ExactInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = ExactInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// 2^e as an exact integer.
pub fn pow2(e: usize) -> ExactInt {
    ExactInt::one() << e
}

/// Ramanujan sum c_d(r) via the divisor sum over j | gcd(r, d) of j·μ(d/j).
///
/// The value is cross-checked against the closed form
/// μ(d/g)·φ(d)/φ(d/g) with g = gcd(r, d); a mismatch is a hard bug.
pub fn ramanujan_sum(d: usize, r: usize) -> Result<ExactInt> {
    require_positive(d, "ramanujan_sum")?;
    let by_divisors = ramanujan_divisor_sum(d, r);
    let by_closed_form = ramanujan_closed_form(d, r);
    assert_eq!(by_divisors, by_closed_form, "Ramanujan sum forms disagree for d={d}, r={r}");
    Ok(ExactInt::from(by_divisors))
}

fn ramanujan_divisor_sum(d: usize, r: usize) -> i64 {
    let g = gcd(r, d);
    divisors(g)
        .expect("gcd of positive d is positive")
        .into_iter()
        .map(|j| j as i64 * mu_usize(d / j) as i64)
        .sum()
}

fn ramanujan_closed_form(d: usize, r: usize) -> i64 {
    let q = d / gcd(r, d);
    mu_usize(q) as i64 * (phi_usize(d) / phi_usize(q)) as i64
}

/// Divide exactly, reporting a remainder as `NonExactDivision`.
pub fn div_exact(value: &ExactInt, divisor: usize, context: &str) -> Result<ExactInt> {
    let (q, rem) = value.div_rem(&ExactInt::from(divisor));
    if rem.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonExactDivision(format!("{context}: {value} is not divisible by {divisor}")))
    }
}

/// (-1)^e as an exact integer.
pub(crate) fn sign_pow(e: usize) -> ExactInt {
    if e.is_multiple_of(2) {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_divisors(n: usize) -> Vec<usize> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn brute_phi(n: usize) -> usize {
        (1..=n).filter(|&j| gcd(j, n) == 1).count()
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), brute_divisors(12));
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert!(divisors(0).is_err());
        for n in 1..300 {
            assert_eq!(divisors(n).unwrap(), brute_divisors(n));
        }
    }

    #[test]
    fn phi_and_mu_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1.into());
        assert_eq!(euler_phi(4).unwrap(), 2.into());
        assert_eq!(euler_phi(9).unwrap(), 6.into());
        for n in 1..200 {
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n).into());
        }
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(euler_phi(0).is_err());
        assert!(moebius(0).is_err());
    }

    #[test]
    fn divisor_sum_identities() {
        for n in 1..=500 {
            let ds = divisors(n).unwrap();
            let phi_sum: usize = ds.iter().map(|&d| phi_usize(d)).sum();
            assert_eq!(phi_sum, n);
            let mu_sum: i64 = ds.iter().map(|&d| mu_usize(d) as i64).sum();
            assert_eq!(mu_sum, i64::from(n == 1));
        }
    }

    #[test]
    fn nu2_examples() {
        assert_eq!(nu2(0), Valuation2::Infinity);
        assert_eq!(nu2(12), Valuation2::Finite(2));
        assert_eq!(nu2(7), Valuation2::Finite(0));
        assert!(Valuation2::Finite(60) < Valuation2::Infinity);
        for m in 1..2000u64 {
            let v = nu2(m).finite().unwrap();
            assert_eq!(m % (1 << v), 0);
            assert_ne!(m % (1 << (v + 1)), 0);
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 3), 10.into());
        assert_eq!(binomial(0, 0), 1.into());
        assert_eq!(binomial(4, 7), 0.into());
        assert_eq!(binomial(4, -1), 0.into());
        // Pascal's rule
        for n in 1..40usize {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn ramanujan_examples() {
        for r in 0..10 {
            assert_eq!(ramanujan_sum(1, r).unwrap(), 1.into());
        }
        assert_eq!(ramanujan_sum(4, 0).unwrap(), 2.into());
        assert_eq!(ramanujan_sum(6, 2).unwrap(), (-1).into());
        assert_eq!(ramanujan_sum(2, 1).unwrap(), (-1).into());
        assert!(ramanujan_sum(0, 1).is_err());
    }

    #[test]
    fn ramanujan_forms_agree() {
        for d in 1..=200 {
            for r in 0..d {
                assert_eq!(ramanujan_divisor_sum(d, r), ramanujan_closed_form(d, r));
            }
        }
    }

    // Independent oracle: the real part of the sum of r-th powers of the
    // primitive d-th roots of unity, rounded.
    #[test]
    fn ramanujan_matches_trigonometric_sum() {
        for d in 1..=60usize {
            for r in 0..d {
                let s: f64 = (1..=d)
                    .filter(|&j| gcd(j, d) == 1)
                    .map(|j| (2.0 * std::f64::consts::PI * (j * r) as f64 / d as f64).cos())
                    .sum();
                assert_eq!(ramanujan_sum(d, r).unwrap(), (s.round() as i64).into());
            }
        }
    }

    #[test]
    fn ramanujan_multiplicative_and_gcd_dependent() {
        for a in 1..=50 {
            for b in 1..=50 {
                if gcd(a, b) != 1 {
                    continue;
                }
                for r in 0..a * b {
                    assert_eq!(
                        ramanujan_divisor_sum(a * b, r),
                        ramanujan_divisor_sum(a, r) * ramanujan_divisor_sum(b, r)
                    );
                }
            }
        }
        for d in 1..=100 {
            for r in 0..2 * d {
                assert_eq!(ramanujan_divisor_sum(d, r), ramanujan_divisor_sum(d, gcd(r, d)));
            }
        }
    }

    #[test]
    fn div_exact_reports_remainder() {
        assert_eq!(div_exact(&12.into(), 4, "t").unwrap(), 3.into());
        assert!(matches!(div_exact(&13.into(), 4, "t"), Err(Error::NonExactDivision(_))));
    }
}
