//! Named verification suites shared by the CLI and the tests.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::arith::{div_exact, divisors, euler_phi, gcd, moebius, pow2, ExactInt};
use crate::bijection::{corollary_partition_check, cvp_pair_domain, psi, psi_inverse};
use crate::error::{invalid, Error, Result};
use crate::identities::{
    aggregate_difference, corollary_reports, difference, predict_equality, sequence_a001840_check,
    theorem_sweep, CheckReport,
};
use crate::perms::{count_cvp, enumerate_cvp, thibon_poly};
use crate::qary::{chan_total_check, scan_equality};
use crate::subsets::{count_s_short, count_sbar, enumerate_subsets, s1_short_poly, Universe};
use crate::words::{
    canonical_form, count_coperiod_div, count_lyndon, count_necklaces, enumerate_coperiod_div,
    enumerate_lplus, enumerate_lyndon_by_filter, enumerate_necklaces_by_filter,
};

/// Enumeration-level checks never go beyond this length.
pub const ENUMERATION_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Theorem,
    S1Cvp,
    Bijection,
    Corollaries,
    Chan,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "theorem" => Suite::Theorem,
            "s1cvp" => Suite::S1Cvp,
            "bijection" => Suite::Bijection,
            "corollaries" => Suite::Corollaries,
            "chan" => Suite::Chan,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Theorem => "theorem",
            Suite::S1Cvp => "s1cvp",
            Suite::Bijection => "bijection",
            Suite::Corollaries => "corollaries",
            Suite::Chan => "chan",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub sections: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(CheckReport::passed)
    }

    pub fn checks(&self) -> usize {
        self.sections.iter().map(|s| s.checks).sum()
    }

    pub fn violations(&self) -> impl Iterator<Item = &String> {
        self.sections.iter().flat_map(|s| s.violations.iter())
    }
}

/// Runs `suite` for lengths up to `max_n`. With `deep`, the formula checks
/// are repeated against full listings (capped at [`ENUMERATION_CAP`]).
pub fn run_suite(suite: Suite, max_n: usize, deep: bool) -> Result<VerifyReport> {
    if max_n == 0 {
        return Err(invalid("max_n must be at least 1"));
    }
    let mut report = VerifyReport::default();
    let enum_max = if deep { max_n.min(ENUMERATION_CAP) } else { 0 };
    let run = |s: Suite| suite == Suite::All || suite == s;
    if run(Suite::Theorem) {
        report.sections.push(theorem_sweep(max_n, enum_max)?);
        report.sections.push(aggregate_checks(max_n)?);
        report.sections.push(total_checks(max_n)?);
        if deep {
            report.sections.push(count_oracle_checks(enum_max)?);
        }
    }
    if run(Suite::S1Cvp) {
        report.sections.push(s1cvp_checks(max_n, enum_max)?);
    }
    if run(Suite::Bijection) {
        report.sections.push(bijection_checks(max_n)?);
    }
    if run(Suite::Corollaries) {
        let mut c = corollary_reports(max_n)?;
        let seq = sequence_a001840_check(4, max_n.max(12))?;
        c.merge(seq.report);
        c.check(difference(6, 6, 2)?.is_zero(), || "difference at (6, 6, 2) is not zero".to_string());
        report.sections.push(c);
    }
    if run(Suite::Chan) {
        report.sections.push(chan_checks(40, max_n.min(10))?);
    }
    Ok(report)
}

/// Summing the difference over k, the symmetry in r, and the bound on
/// distinct values by the number of divisors.
pub fn aggregate_checks(max_n: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("aggregate");
    for n in 1..=max_n {
        let row: Vec<ExactInt> = (0..n).map(|r| aggregate_difference(n, r)).collect::<Result<_>>()?;
        for (r, agg) in row.iter().enumerate() {
            let total: ExactInt = (0..=n).map(|k| difference(n, k, r)).sum::<Result<ExactInt>>()?;
            rep.check(&total == agg, || format!("aggregate (n={n}, r={r}): {agg} vs sum {total}"));
            if r > 0 {
                rep.check(row[n - r] == *agg, || {
                    format!("aggregate (n={n}, r={r}) differs from r={}", n - r)
                });
            }
        }
        let distinct: std::collections::BTreeSet<&ExactInt> = row.iter().collect();
        let bound = divisors(n)?.len();
        rep.check(distinct.len() <= bound, || {
            format!("aggregate row n={n} has {} distinct values", distinct.len())
        });
    }
    Ok(rep)
}

/// Σ_k |S̄_0(n, k)| against the odd-divisor totient sum, and Σ_k |CVP(n, k)|
/// against the odd-divisor Möbius sum.
pub fn total_checks(max_n: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("totals");
    for n in 1..=max_n {
        let sbar: ExactInt = (0..=n).map(|k| count_sbar(n, k, 0)).sum::<Result<ExactInt>>()?;
        let mut phi_sum = ExactInt::zero();
        let mut mu_sum = ExactInt::zero();
        for d in divisors(n)?.into_iter().filter(|d| d % 2 == 1) {
            phi_sum += euler_phi(d)? * pow2(n / d);
            mu_sum += ExactInt::from(moebius(d)?) * pow2(n / d);
        }
        let phi_total = div_exact(&phi_sum, n, "odd totient total")?;
        rep.check(sbar == phi_total, || {
            format!("n={n}: sum of |S0(n,k)| = {sbar}, totient form {phi_total}")
        });
        let cvp: ExactInt = (1..=n).map(|k| count_cvp(n, k)).sum::<Result<ExactInt>>()?;
        let mu_total = div_exact(&mu_sum, 2 * n, "odd Moebius total")?;
        rep.check(cvp == mu_total, || format!("n={n}: sum of |CVP(n,k)| = {cvp}, Moebius form {mu_total}"));
    }
    Ok(rep)
}

/// Every closed-form count against the length of its listing.
pub fn count_oracle_checks(max_n: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("count-oracles");
    for n in 1..=max_n {
        for k in 0..=n {
            let nl = enumerate_necklaces_by_filter(n, k)?.len();
            let c = count_necklaces(n, k)?;
            rep.check(c == ExactInt::from(nl), || format!("necklaces ({n},{k}): {c} vs {nl}"));
            let ll = enumerate_lyndon_by_filter(n, k)?.len();
            let c = count_lyndon(n, k)?;
            rep.check(c == ExactInt::from(ll), || format!("lyndon ({n},{k}): {c} vs {ll}"));
            for r in 0..n {
                let listed = enumerate_coperiod_div(n, k, r)?.len();
                let c = count_coperiod_div(n, k, r)?;
                rep.check(c == ExactInt::from(listed), || format!("coperiod ({n},{k},{r}): {c} vs {listed}"));
                let listed = enumerate_subsets(n, k, r, Universe::Full)?.len();
                let c = count_sbar(n, k, r)?;
                rep.check(c == ExactInt::from(listed), || format!("sbar ({n},{k},{r}): {c} vs {listed}"));
                if k < n {
                    let listed = enumerate_subsets(n, k, r, Universe::Short)?.len();
                    let c = count_s_short(n, k, r)?;
                    rep.check(c == ExactInt::from(listed), || format!("s ({n},{k},{r}): {c} vs {listed}"));
                }
            }
        }
    }
    Ok(rep)
}

/// |S_1(n, k-1)| = |CVP(n, k)| and the matching generating polynomials.
pub fn s1cvp_checks(max_n: usize, enum_max: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("s1cvp");
    for n in 1..=max_n {
        for k in 1..=n {
            let s = count_s_short(n, k - 1, 1 % n)?;
            let c = count_cvp(n, k)?;
            rep.check(s == c, || format!("(n={n}, k={k}): |S1| = {s}, |CVP| = {c}"));
            if n <= enum_max {
                let listed = enumerate_cvp(n, k)?.len();
                rep.check(c == ExactInt::from(listed), || {
                    format!("(n={n}, k={k}): |CVP| = {c}, listed {listed}")
                });
            }
        }
    }
    for n in 1..=max_n.max(30) {
        let (a, b) = (s1_short_poly(n)?, thibon_poly(n)?);
        rep.check(a == b, || format!("n={n}: polynomials differ: {a} vs {b}"));
    }
    Ok(rep)
}

/// Round trips on both sides, image equal to L⁺(n, k), and the
/// odd/even partition totals.
pub fn bijection_checks(max_n: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("bijection");
    for n in 1..=max_n {
        for k in 0..=n {
            let mut images = Vec::new();
            for p in cvp_pair_domain(n, k)? {
                match psi(&p, k).and_then(|img| {
                    let back = psi_inverse(img.canonical(), n, k)?;
                    Ok((img, back))
                }) {
                    Ok((img, back)) => {
                        rep.check(back == p, || format!("(n={n}, k={k}): {p} -> {img} -> {back}"));
                        images.push(img.canonical().clone());
                    }
                    Err(e) => rep.check(false, || format!("(n={n}, k={k}) at {p}: {} {e}", e.name())),
                }
            }
            images.sort();
            let mut target = enumerate_lplus(n, k)?;
            target.sort();
            rep.check(images == target, || format!("(n={n}, k={k}): image differs from L+"));
            for v in target {
                match psi_inverse(&v, n, k).and_then(|p| psi(&p, k)) {
                    Ok(img) => {
                        rep.check(img == canonical_form(&v)?, || format!("(n={n}, k={k}): {v} -> {img}"))
                    }
                    Err(e) => rep.check(false, || format!("(n={n}, k={k}) at {v}: {} {e}", e.name())),
                }
            }
        }
        let part = corollary_partition_check(n)?;
        rep.checks += 1;
        rep.violations.extend(part.violations.into_iter().map(|v| format!("n={n}: {v}")));
    }
    Ok(rep)
}

/// Chan totals for coprime (n, q) with n·q ≤ `product_max`, and the q = 2
/// scanner slice against the equality verdicts for n ≤ `scan_n`.
pub fn chan_checks(product_max: usize, scan_n: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("chan");
    for n in 1..=product_max / 2 {
        for q in 2..=product_max / n {
            if gcd(n, q) != 1 {
                continue;
            }
            let c = chan_total_check(n, q)?;
            rep.check(c.passed(), || {
                format!("(n={n}, q={q}): {} multisets vs {} necklaces", c.multisets_total, c.necklaces_total)
            });
        }
    }
    if scan_n >= 2 {
        for row in scan_equality(scan_n, 2, None)? {
            if let Some(k) = row.k {
                let v = predict_equality(row.n, k, row.r)?;
                rep.check(v.predicted_equal == row.equal, || {
                    format!("scanner row {} disagrees with verdict", row.to_csv())
                });
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        for suite in [Suite::Theorem, Suite::S1Cvp, Suite::Bijection, Suite::Corollaries, Suite::Chan] {
            let r = run_suite(suite, 8, true).unwrap();
            assert!(r.passed(), "{suite}: {:?}", r.violations().take(5).collect::<Vec<_>>());
            assert!(r.checks() > 0);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("s1cvp".parse::<Suite>().unwrap(), Suite::S1Cvp);
        assert!(run_suite(Suite::All, 0, false).is_err());
    }
}
