//! Brute-force enumeration of permutations with cycle statistics, and the
//! polynomials `D_n` they generate.
//!
//! For `i` with predecessor `p = σ⁻¹(i)` and successor `s = σ(i)`:
//! fixed point if `s = i`; cycle peak if `p < i > s`; cycle valley if
//! `p > i < s`; double rise if `p < i < s`; double fall if `p > i > s`.
//! Peaks are split by the parity of `i`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{Poly, Scalar, VarSet};
use crate::schett::schett_poly;

/// Statistic vector of one permutation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermStats {
    pub cpeakodd: u32,
    pub cpeakeven: u32,
    pub cdrise: u32,
    pub cdfall: u32,
    pub fix: u32,
    pub cyc: u32,
    /// Cycle valleys; always equal to the number of cycle peaks.
    pub cvalley: u32,
}

impl PermStats {
    pub fn peaks(&self) -> u32 {
        self.cpeakodd + self.cpeakeven
    }
}

/// Statistics of `sigma`, given in one-line notation on `{1, ..., n}`.
pub fn perm_stats(sigma: &[usize]) -> Result<PermStats> {
    let n = sigma.len();
    let mut inv = vec![0usize; n + 1];
    for (i, &s) in sigma.iter().enumerate() {
        if s == 0 || s > n || inv[s] != 0 {
            return Err(Error::Validation(format!("{sigma:?} is not a permutation of 1..={n}")));
        }
        inv[s] = i + 1;
    }
    Ok(stats_unchecked(sigma, &inv))
}

fn stats_unchecked(sigma: &[usize], inv: &[usize]) -> PermStats {
    let n = sigma.len();
    let mut st = PermStats::default();
    let mut seen = vec![false; n + 1];
    for i in 1..=n {
        let (p, s) = (inv[i], sigma[i - 1]);
        if s == i {
            st.fix += 1;
        } else if p < i && s < i {
            if i % 2 == 1 {
                st.cpeakodd += 1;
            } else {
                st.cpeakeven += 1;
            }
        } else if p > i && s > i {
            st.cvalley += 1;
        } else if p < i {
            st.cdrise += 1;
        } else {
            st.cdfall += 1;
        }
        if !seen[i] {
            st.cyc += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = sigma[j - 1];
            }
        }
    }
    st
}

/// Rearranges `a` into the next permutation in lexicographic order.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Number of permutations of `[n]` for each statistic vector.
///
/// Work is split by the first letter of the one-line notation; each block is
/// walked in lexicographic order and the partial histograms merged, so the
/// result is independent of scheduling.
pub fn stats_histogram(n: usize) -> BTreeMap<PermStats, u64> {
    if n == 0 {
        return BTreeMap::from([(PermStats::default(), 1)]);
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut hist = BTreeMap::new();
            let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            let mut sigma = vec![0; n];
            let mut inv = vec![0; n + 1];
            loop {
                sigma[0] = first;
                sigma[1..].copy_from_slice(&rest);
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s] = i + 1;
                }
                *hist.entry(stats_unchecked(&sigma, &inv)).or_insert(0u64) += 1;
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            hist
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Variables of `D_n`: `x, y, z`, plus `lambda` when cycles are counted.
pub fn dumont_vars(with_lambda: bool) -> VarSet {
    if with_lambda {
        VarSet::new(["x", "y", "z", "lambda"]).expect("distinct names")
    } else {
        VarSet::xyz()
    }
}

/// `D_n = Σ_σ (x²)^cpeakodd (y²)^cpeakeven z^(cdrise+cdfall+fix)`, optionally
/// weighted by `λ^cyc`.
pub fn dumont_poly(n: usize, with_lambda: bool) -> Poly {
    let vars = dumont_vars(with_lambda);
    dumont_from_histogram(&stats_histogram(n), &vars, with_lambda)
}

fn dumont_from_histogram(hist: &BTreeMap<PermStats, u64>, vars: &VarSet, with_lambda: bool) -> Poly {
    let terms = hist.iter().map(|(st, &count)| {
        let mut exps = vec![2 * st.cpeakodd, 2 * st.cpeakeven, st.cdrise + st.cdfall + st.fix];
        if with_lambda {
            exps.push(st.cyc);
        }
        (exps, Scalar::from(count))
    });
    Poly::from_terms(vars, terms).expect("exponent vectors match the variable set")
}

/// `X_n == x·D_n` (even `n`) or `X_n == y·D_n` (odd `n`).
pub fn oracle_check(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Validation("oracle_check needs n >= 1".into()));
    }
    let xn = schett_poly(n, 2)?;
    let v = VarSet::xyz();
    let lead = Poly::var(&v, if n.is_multiple_of(2) { "x" } else { "y" })?;
    Ok(xn == &lead * &dumont_poly(n, false))
}

/// One CSV row per statistic vector:
/// `n,cpeakodd,cpeakeven,cdrise,cdfall,fix,cyc,count`.
pub fn histogram_csv(n: usize) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "cpeakodd", "cpeakeven", "cdrise", "cdfall", "fix", "cyc", "count"])
        .expect("writing to memory");
    // The valley count always equals the peak count, so the printed columns
    // identify a statistic vector; keying on them keeps the CSV order explicit.
    let mut merged: BTreeMap<[u32; 6], u64> = BTreeMap::new();
    for (st, count) in stats_histogram(n) {
        let key = [st.cpeakodd, st.cpeakeven, st.cdrise, st.cdfall, st.fix, st.cyc];
        *merged.entry(key).or_insert(0) += count;
    }
    for (key, count) in merged {
        let mut rec = vec![n.to_string()];
        rec.extend(key.iter().map(u32::to_string));
        rec.push(count.to_string());
        w.write_record(&rec).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}
