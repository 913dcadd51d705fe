//! The map Ψ from CVP(n, k) ∪ CVP(n, k+1) onto L⁺(n, k), and its inverse.
//!
//! Forward: write σ as a cycle starting at 1 and replace each entry by
//! `[a <= k]`. The resulting necklace is primitive or of the form (vv); in
//! the second case the image is (v).
//!
//! Inverse: rank the cyclic shifts of the word by their partial-sum words,
//! largest first, and read the ranks as a cycle. For the halved case the
//! shifts of `vv` tie in pairs `(j, j + n/2)`; the relative order inside
//! consecutive pairs is propagated along the word, flipping at every 1.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perms::{enumerate_cvp, has_threshold_shape, is_cyclic, Permutation};
use crate::words::{
    canonical_form, co_period, enumerate_lplus, enumerate_lyndon, lplus_has_half, BinaryWord, Necklace,
};

/// One row of the ranking table used by the inverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedShift {
    /// 1-based shift index `j`.
    pub index: usize,
    pub shifted: BinaryWord,
    pub partial_sum: BinaryWord,
    /// Position in the decreasing order of partial-sum words, 1-based.
    pub rank: usize,
}

/// Intermediate data of a forward evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTrace {
    /// Cycle notation starting at 1.
    pub cycle: Vec<usize>,
    /// `[a_i <= k]` along the cycle.
    pub cycle_word: BinaryWord,
    /// True when the cycle word was (vv) and the image is (v).
    pub halved: bool,
    pub image: Necklace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiInverseTrace {
    /// The ranked word: `w` itself, or `ww` in the halved case.
    pub ranked_word: BinaryWord,
    pub shifts: Vec<RankedShift>,
    pub cycle: Vec<usize>,
    pub permutation: Permutation,
}

pub fn psi(p: &Permutation, k: usize) -> Result<Necklace> {
    psi_trace(p, k).map(|t| t.image)
}

pub fn psi_trace(p: &Permutation, k: usize) -> Result<PsiTrace> {
    psi_from_cycle(p, k, 1)
}

/// Ψ with the cycle notation started at `start` instead of 1.
pub fn psi_trace_from(p: &Permutation, k: usize, start: usize) -> Result<PsiTrace> {
    psi_from_cycle(p, k, start)
}

fn psi_from_cycle(p: &Permutation, k: usize, start: usize) -> Result<PsiTrace> {
    let n = p.len();
    if !is_cyclic(p) {
        return Err(Error::NotCyclic(p.to_string()));
    }
    if !has_threshold_shape(p, k) {
        return Err(Error::ShapeViolation { perm: p.to_string(), k });
    }
    let cycle = p.cycle_from(start);
    let cycle_word = BinaryWord::new(cycle.iter().map(|&a| u8::from(a <= k)).collect())?;
    let necklace = canonical_form(&cycle_word)?;
    let (image, halved) = match necklace.coperiod() {
        1 => (necklace, false),
        2 if lplus_has_half(n, k) => (canonical_form(&necklace.primitive_root())?, true),
        c => return Err(Error::UnexpectedCoperiod(c)),
    };
    Ok(PsiTrace { cycle, cycle_word, halved, image })
}

fn not_in_domain(w: &BinaryWord, n: usize, k: usize) -> Error {
    Error::NotInDomain { word: w.to_string(), n, k }
}

/// Shifts of `w` with their partial sums, 1-based `index`, rank unset.
fn shifts_of(w: &BinaryWord) -> Vec<RankedShift> {
    (0..w.len())
        .map(|j| {
            let shifted = w.rotate(j);
            let partial_sum = shifted.partial_sums();
            RankedShift { index: j + 1, shifted, partial_sum, rank: 0 }
        })
        .collect()
}

pub fn psi_inverse(w: &BinaryWord, n: usize, k: usize) -> Result<Permutation> {
    psi_inverse_trace(w, n, k).map(|t| t.permutation)
}

pub fn psi_inverse_trace(w: &BinaryWord, n: usize, k: usize) -> Result<PsiInverseTrace> {
    if w.len() == n {
        full_inverse(w, n, k)
    } else if 2 * w.len() == n && lplus_has_half(n, k) {
        halved_inverse(w, n, k)
    } else {
        Err(not_in_domain(w, n, k))
    }
}

fn full_inverse(w: &BinaryWord, n: usize, k: usize) -> Result<PsiInverseTrace> {
    if co_period(w) != 1 || w.weight() != k {
        return Err(not_in_domain(w, n, k));
    }
    let mut shifts = shifts_of(w);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| shifts[b].partial_sum.cmp(&shifts[a].partial_sum));
    if order.windows(2).any(|p| shifts[p[0]].partial_sum == shifts[p[1]].partial_sum) {
        // partial sums are injective on the distinct shifts of a primitive word
        return Err(not_in_domain(w, n, k));
    }
    for (pos, &j) in order.iter().enumerate() {
        shifts[j].rank = pos + 1;
    }
    let cycle: Vec<usize> = shifts.iter().map(|s| s.rank).collect();
    let permutation = Permutation::from_cycle(&cycle)?;
    if !has_threshold_shape(&permutation, k) {
        return Err(Error::ShapeViolation { perm: permutation.to_string(), k });
    }
    Ok(PsiInverseTrace { ranked_word: w.clone(), shifts, cycle, permutation })
}

fn halved_inverse(v: &BinaryWord, n: usize, k: usize) -> Result<PsiInverseTrace> {
    let half = n / 2;
    if co_period(v) != 1 || 2 * v.weight() != k {
        return Err(not_in_domain(v, n, k));
    }
    let ww = v.repeat(2);
    let mut shifts = shifts_of(&ww);
    // the first half holds one representative of every tied pair
    let mut groups: Vec<usize> = (0..half).collect();
    groups.sort_by(|&a, &b| shifts[b].partial_sum.cmp(&shifts[a].partial_sum));

    let candidate = |anchor_lower_first: bool| -> Vec<usize> {
        // lower_first[j]: a_j < a_{j + n/2}
        let mut lower_first = vec![false; half];
        lower_first[0] = anchor_lower_first;
        for j in 1..half {
            lower_first[j] = lower_first[j - 1] ^ (ww.bits()[j - 1] == 1);
        }
        let mut ranks = vec![0; n];
        for (g, &j) in groups.iter().enumerate() {
            let (lo, hi) = (2 * g + 1, 2 * g + 2);
            if lower_first[j] {
                ranks[j] = lo;
                ranks[j + half] = hi;
            } else {
                ranks[j] = hi;
                ranks[j + half] = lo;
            }
        }
        ranks
    };

    let mut valid: Vec<(Vec<usize>, Permutation)> = Vec::new();
    for anchor in [true, false] {
        let cycle = candidate(anchor);
        let perm = Permutation::from_cycle(&cycle)?;
        if is_cyclic(&perm) && has_threshold_shape(&perm, k) {
            valid.push((cycle, perm));
        }
    }
    // Flipping the anchor flips every pair, which only rotates the cycle
    // notation by n/2; both anchors must describe one permutation.
    let distinct: BTreeSet<&Permutation> = valid.iter().map(|(_, p)| p).collect();
    if distinct.len() != 1 {
        return Err(Error::AmbiguousAnchor(v.to_string()));
    }
    let (cycle, permutation) = valid.swap_remove(0);
    for (s, &rank) in shifts.iter_mut().zip(&cycle) {
        s.rank = rank;
    }
    Ok(PsiInverseTrace { ranked_word: ww, shifts, cycle, permutation })
}

/// CVP(n, k) ∪ CVP(n, k+1) for 0 <= k <= n.
pub fn cvp_pair_domain(n: usize, k: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    if k >= 1 {
        out.extend(enumerate_cvp(n, k)?);
    }
    if k < n {
        out.extend(enumerate_cvp(n, k + 1)?);
    }
    out.sort();
    Ok(out)
}

/// Outcome of checking Ψ over all odd or all even thresholds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionReport {
    pub n: usize,
    pub cvp_total: usize,
    pub odd_image_size: usize,
    pub odd_target_size: usize,
    pub even_image_size: usize,
    pub even_target_size: usize,
    pub violations: Vec<String>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn corollary_partition_check(n: usize) -> Result<PartitionReport> {
    let mut report = PartitionReport { n, ..Default::default() };
    report.cvp_total = (1..=n).map(|k| enumerate_cvp(n, k).map(|v| v.len())).sum::<Result<usize>>()?;

    for parity in [1usize, 0] {
        let mut images = BTreeSet::new();
        let mut applied = 0;
        let mut target = BTreeSet::new();
        for k in (parity..=n).step_by(2) {
            for p in cvp_pair_domain(n, k)? {
                match psi(&p, k) {
                    Ok(img) => {
                        applied += 1;
                        images.insert(img.canonical().clone());
                    }
                    Err(e) => report.violations.push(format!("psi({p}, k={k}) failed: {e}")),
                }
            }
            if parity == 1 {
                target.extend(enumerate_lyndon(n, k)?);
            } else {
                target.extend(enumerate_lplus(n, k)?);
            }
        }
        let label = if parity == 1 { "odd" } else { "even" };
        if applied != report.cvp_total {
            report.violations.push(format!(
                "{label} thresholds cover {applied} permutations, expected {}",
                report.cvp_total
            ));
        }
        if images.len() != applied {
            report.violations.push(format!("{label} thresholds: psi is not injective"));
        }
        if images != target {
            report.violations.push(format!("{label} thresholds: image differs from target union"));
        }
        if parity == 1 {
            report.odd_image_size = images.len();
            report.odd_target_size = target.len();
        } else {
            report.even_image_size = images.len();
            report.even_target_size = target.len();
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn forward_examples() {
        let t = psi_trace(&perm("54213"), 3).unwrap();
        assert_eq!(t.cycle, vec![1, 5, 3, 2, 4]);
        assert_eq!(t.cycle_word.to_string(), "10110");
        assert_eq!(t.image.to_string(), "01011");
        assert!(!t.halved);

        let t = psi_trace(&perm("651234"), 2).unwrap();
        assert_eq!(t.cycle, vec![1, 6, 4, 2, 5, 3]);
        assert_eq!(t.cycle_word.to_string(), "100100");
        assert!(t.halved);
        assert_eq!(t.image.to_string(), "001");

        assert_eq!(psi(&perm("1"), 1).unwrap().to_string(), "1");
        assert_eq!(psi(&perm("1"), 0).unwrap().to_string(), "0");
    }

    #[test]
    fn forward_errors() {
        assert!(matches!(psi(&perm("12"), 1), Err(Error::NotCyclic(_))));
        assert!(matches!(psi(&perm("54213"), 2), Err(Error::ShapeViolation { .. })));
        assert!(matches!(psi(&perm("54213"), 6), Err(Error::ShapeViolation { .. })));
    }

    #[test]
    fn inverse_examples() {
        let t = psi_inverse_trace(&w("10110"), 5, 3).unwrap();
        assert_eq!(t.permutation.to_string(), "54213");
        assert_eq!(t.cycle, vec![1, 5, 3, 2, 4]);
        let ranks: Vec<usize> = t.shifts.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![1, 5, 3, 2, 4]);

        let t = psi_inverse_trace(&w("100"), 6, 2).unwrap();
        assert_eq!(t.permutation.to_string(), "651234");
        assert_eq!(t.ranked_word.to_string(), "100100");
        let sums: Vec<String> = t.shifts.iter().map(|s| s.partial_sum.to_string()).collect();
        assert_eq!(sums, ["111000", "001110", "011100", "111000", "001110", "011100"]);

        assert_eq!(psi_inverse(&w("1"), 1, 1).unwrap().to_string(), "1");
    }

    #[test]
    fn inverse_domain_errors() {
        assert!(matches!(psi_inverse(&w("0101"), 4, 2), Err(Error::NotInDomain { .. })));
        assert!(matches!(psi_inverse(&w("10110"), 5, 2), Err(Error::NotInDomain { .. })));
        // n/2-length words only when k = 2 mod 4
        assert!(matches!(psi_inverse(&w("0011"), 8, 4), Err(Error::NotInDomain { .. })));
        assert!(matches!(psi_inverse(&w("101"), 7, 2), Err(Error::NotInDomain { .. })));
    }

    #[test]
    fn round_trips() {
        for n in 1..=10 {
            for k in 0..=n {
                let domain = cvp_pair_domain(n, k).unwrap();
                let mut images = Vec::new();
                for p in &domain {
                    let t = psi_trace(p, k).unwrap();
                    let img = t.image.canonical().clone();
                    assert!(crate::words::is_lyndon(&img));
                    if t.halved {
                        assert_eq!(img.weight(), k / 2);
                        assert_eq!(img.weight() % 2, 1);
                    } else {
                        assert_eq!(img.weight(), k);
                    }
                    assert_eq!(&psi_inverse(&img, n, k).unwrap(), p, "n={n} k={k} p={p}");
                    images.push(img);
                }
                images.sort();
                let mut target = enumerate_lplus(n, k).unwrap();
                target.sort();
                assert_eq!(images, target, "n={n} k={k}");
                for v in target {
                    let p = psi_inverse(&v, n, k).unwrap();
                    assert_eq!(psi(&p, k).unwrap(), canonical_form(&v).unwrap());
                    // any rotation of the word names the same class
                    for j in 0..v.len() {
                        assert_eq!(psi_inverse(&v.rotate(j), n, k).unwrap(), p);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_independent_of_cycle_start() {
        for n in 1..=9 {
            for k in 0..=n {
                for p in cvp_pair_domain(n, k).unwrap() {
                    let base = psi(&p, k).unwrap();
                    for start in 1..=n {
                        assert_eq!(psi_trace_from(&p, k, start).unwrap().image, base);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_reports() {
        let r = corollary_partition_check(5).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!((r.odd_image_size, r.even_image_size), (3, 3));

        // "0" and "1" are both Lyndon, so both unions have one element
        let r = corollary_partition_check(1).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!((r.odd_image_size, r.even_image_size), (1, 1));

        let r = corollary_partition_check(6).unwrap();
        assert!(r.passed());
        let odd: usize = [1, 3, 5].iter().map(|&k| enumerate_lyndon(6, k).unwrap().len()).sum();
        assert_eq!(r.odd_image_size, odd);
        for n in 1..=12 {
            assert!(corollary_partition_check(n).unwrap().passed());
        }
    }
}
