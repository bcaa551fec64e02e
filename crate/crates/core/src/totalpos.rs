//! Exact determinants and exhaustive bounded-order minor certification of
//! coefficientwise total positivity.
//!
//! Minors are computed level by level: every `k x k` minor is a Laplace
//! expansion along its first row over the memoized `(k-1) x (k-1)` minors.
//! Each level is evaluated in parallel, but the result is scanned in the
//! fixed order `(order, rows, cols)`, so the reported first violation never
//! depends on the number of worker threads.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrixkit::{build_generic_quad, build_p, build_q, build_t, hankel, PolyMatrix, VarStyle};
use crate::polyring::{Poly, PolyJson, VarSet};
use crate::schett::reduced_sequence;
use crate::Parity;

/// Exact determinant by dynamic programming over column subsets.
pub fn det(m: &PolyMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::one(&VarSet::empty()));
    }
    if n > 24 {
        return Err(Error::Shape(format!("{n}x{n} is too large for subset expansion")));
    }
    let vars = m.get(0, 0).vars().clone();
    // level[S] = det(rows 0..|S|, columns S)
    let mut level: HashMap<u32, Poly> = HashMap::from([(0u32, Poly::one(&vars))]);
    for r in 0..n {
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for (&mask, sub) in &level {
            if sub.is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = m.get(r, j);
                if a.is_zero() {
                    continue;
                }
                // Position of column j inside mask ∪ {j}, counted from the right end.
                let above = (mask >> j).count_ones();
                let term = a.checked_mul(sub)?;
                let term = if above % 2 == 1 { -term } else { term };
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| Poly::zero(&vars));
                *slot = slot.checked_add(&term)?;
            }
        }
        level = next;
    }
    Ok(level.remove(&((1u32 << n) - 1)).unwrap_or_else(|| Poly::zero(&vars)))
}

/// Fail verdict detail: the first minor with a negative coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Bounded total-positivity certificate for one truncated matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpCertificate {
    pub source: String,
    /// Truncation size; non-square inputs record the row count.
    pub n: usize,
    pub max_order: usize,
    pub verdict: Verdict,
    pub violation: Option<Violation>,
    pub minors_checked: u64,
}

impl TpCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            source: self.source.clone(),
            n: self.n,
            max_order: self.max_order,
            verdict: self.verdict,
            violation: self.violation.as_ref().map(|v| ViolationJson {
                rows: v.rows.clone(),
                cols: v.cols.clone(),
                minor: PolyJson::from(&v.minor),
            }),
            minors_checked: self.minors_checked,
        }
    }
}

impl fmt::Display for TpCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "{}: PASS, all {} minors of order <= {} of the {}x{} truncation are \
                 coefficientwise nonnegative (bounded check, not a proof for the infinite matrix)",
                self.source, self.minors_checked, self.max_order, self.n, self.n
            ),
            Some(v) => write!(
                f,
                "{}: FAIL at rows {:?}, cols {:?} (order <= {}, {}x{} truncation, {} minors checked): minor = {}",
                self.source, v.rows, v.cols, self.max_order, self.n, self.n, self.minors_checked, v.minor
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub source: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub max_order: usize,
    pub verdict: Verdict,
    pub violation: Option<ViolationJson>,
    pub minors_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: PolyJson,
}

/// All `k`-subsets of `0..n` as bitmasks, in lexicographic order of their
/// sorted index lists.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

/// Checks every minor of order `1..=max_order` for nonnegative coefficients,
/// stopping at the first violation in `(order, rows, cols)` order.
pub fn enumerate_minors(m: &PolyMatrix, max_order: usize) -> Result<TpCertificate> {
    let limit = m.rows().min(m.cols());
    if max_order > limit {
        return Err(Error::Shape(format!(
            "minor order {max_order} exceeds a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > 63 || m.cols() > 63 {
        return Err(Error::Shape("matrices beyond 63 rows or columns are not supported".into()));
    }
    let mut cert = TpCertificate {
        source: m.source().to_string(),
        n: m.rows(),
        max_order,
        verdict: Verdict::Pass,
        violation: None,
        minors_checked: 0,
    };
    if max_order == 0 {
        return Ok(cert);
    }
    let vars = m.get(0, 0).vars().clone();
    let mut prev: HashMap<(u64, u64), Poly> = HashMap::new();
    for k in 1..=max_order {
        let row_sets = subsets(m.rows(), k);
        let col_sets = subsets(m.cols(), k);
        let pairs: Vec<(u64, u64)> =
            row_sets.iter().flat_map(|&r| col_sets.iter().map(move |&c| (r, c))).collect();
        let minors: Vec<Poly> = pairs
            .par_iter()
            .map(|&(rmask, cmask)| -> Result<Poly> {
                let rows = indices(rmask);
                let cols = indices(cmask);
                if k == 1 {
                    return Ok(m.get(rows[0], cols[0]).clone());
                }
                let top = rows[0];
                let rest = rmask & !(1 << top);
                let mut acc = Poly::zero(&vars);
                for (idx, &c) in cols.iter().enumerate() {
                    let a = m.get(top, c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub = &prev[&(rest, cmask & !(1 << c))];
                    if sub.is_zero() {
                        continue;
                    }
                    let term = a.checked_mul(sub)?;
                    acc = if idx % 2 == 0 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        for (i, minor) in minors.iter().enumerate() {
            cert.minors_checked += 1;
            if !minor.is_coeff_nonneg() {
                let (rmask, cmask) = pairs[i];
                cert.verdict = Verdict::Fail;
                cert.violation =
                    Some(Violation { rows: indices(rmask), cols: indices(cmask), minor: minor.clone() });
                return Ok(cert);
            }
        }
        if k < max_order {
            prev = pairs.into_iter().zip(minors).collect();
        }
    }
    Ok(cert)
}

/// Truncation sizes and minor orders for [`certify_standard_claims`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyParams {
    pub production_size: usize,
    pub production_order: usize,
    pub hankel_size: usize,
    pub hankel_order: usize,
    pub generic_size: usize,
    pub generic_order: usize,
}

impl Default for CertifyParams {
    fn default() -> Self {
        CertifyParams {
            production_size: 8,
            production_order: 4,
            hankel_size: 6,
            hankel_order: 4,
            generic_size: 5,
            generic_order: 3,
        }
    }
}

/// Hankel matrix of the even or odd reduced Schett polynomials, in `X, Y, Z`.
pub fn schett_hankel(parity: Parity, size: usize) -> Result<PolyMatrix> {
    let seq = reduced_sequence(parity, (2 * size).saturating_sub(1))?;
    let tag = match parity {
        Parity::Even => "hankel-even",
        Parity::Odd => "hankel-odd",
    };
    hankel(&seq, size, tag)
}

/// Hankel matrix `(a_{i+j+1})` of the reduced sequence. Not claimed to be
/// totally positive; exposed for exploration only.
pub fn schett_shifted_hankel(parity: Parity, size: usize) -> Result<PolyMatrix> {
    let seq = reduced_sequence(parity, 2 * size)?;
    let tag = match parity {
        Parity::Even => "shifted-hankel-even (exploratory)",
        Parity::Odd => "shifted-hankel-odd (exploratory)",
    };
    hankel(&seq[1..], size, tag)
}

/// Bounded certificates for `P`, `Q`, `T`, both Hankel matrices and the
/// generic quadridiagonal matrix.
pub fn certify_standard_claims(params: &CertifyParams) -> Result<Vec<TpCertificate>> {
    let targets = [
        (build_p(params.production_size, VarStyle::Squared), params.production_order),
        (build_q(params.production_size, VarStyle::Squared), params.production_order),
        (build_t(params.production_size, VarStyle::Squared), params.production_order),
        (schett_hankel(Parity::Even, params.hankel_size)?, params.hankel_order),
        (schett_hankel(Parity::Odd, params.hankel_size)?, params.hankel_order),
        (build_generic_quad(params.generic_size)?, params.generic_order),
    ];
    targets.iter().map(|(m, order)| enumerate_minors(m, *order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixkit::build_l;
    use crate::polyring::Scalar;

    fn generic2() -> (PolyMatrix, Poly) {
        let v = VarSet::new(["a", "b", "c", "d"]).unwrap();
        let var = |n: &str| Poly::var(&v, n).unwrap();
        let m = PolyMatrix::from_rows(vec![vec![var("a"), var("b")], vec![var("c"), var("d")]], "generic2")
            .unwrap();
        (m, &(&var("a") * &var("d")) - &(&var("b") * &var("c")))
    }

    #[test]
    fn det_two_by_two() {
        let (m, expected) = generic2();
        assert_eq!(det(&m).unwrap(), expected);
    }

    #[test]
    fn det_leading_t_block() {
        let t = build_t(2, VarStyle::Raw);
        let d = det(&t).unwrap();
        assert_eq!(d.to_string(), "9*y^4 + 6*y^2*z^2 + 9*z^4");
        assert!(d.is_coeff_nonneg());
    }

    #[test]
    fn det_hankel_even_minor() {
        let h = schett_hankel(Parity::Even, 2).unwrap();
        let d = det(&h).unwrap();
        let v = VarSet::squared();
        let expected = Poly::from_terms(
            &v,
            [
                (vec![1, 1, 0], Scalar::from(4)),
                (vec![1, 0, 1], Scalar::from(4)),
                (vec![0, 1, 1], Scalar::from(12)),
            ],
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn det_rejects_non_square() {
        let v = VarSet::xyz();
        let m = PolyMatrix::from_rows(vec![vec![Poly::one(&v), Poly::one(&v)]], "r").unwrap();
        assert!(matches!(det(&m), Err(Error::Shape(_))));
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s: Vec<Vec<usize>> = subsets(4, 2).into_iter().map(indices).collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn t_passes_order_three() {
        let cert = enumerate_minors(&build_t(6, VarStyle::Squared), 3).unwrap();
        assert!(cert.passed(), "{cert}");
        assert_eq!(cert.minors_checked, 36 + 225 + 400);
    }

    #[test]
    fn perturbed_p_fails_first() {
        let mut p = build_p(6, VarStyle::Raw);
        let v = VarSet::xyz();
        let bad = Poly::from_terms(&v, [(vec![0, 2, 0], Scalar::from(1)), (vec![0, 0, 2], Scalar::from(-1))])
            .unwrap();
        p.set(0, 0, bad.clone());
        let cert = enumerate_minors(&p, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        let v = cert.violation.unwrap();
        assert_eq!((v.rows, v.cols, v.minor), (vec![0], vec![0], bad));
        assert_eq!(cert.minors_checked, 1);
    }

    #[test]
    fn even_hankel_order_two() {
        let cert = enumerate_minors(&schett_hankel(Parity::Even, 4).unwrap(), 2).unwrap();
        assert!(cert.passed(), "{cert}");
    }

    #[test]
    fn bidiagonal_l_is_tp() {
        let l = build_l(6, VarStyle::Raw);
        assert!(enumerate_minors(&l, 6).unwrap().passed());
    }

    #[test]
    fn order_bound_checked() {
        assert!(matches!(enumerate_minors(&build_t(3, VarStyle::Raw), 4), Err(Error::Shape(_))));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = enumerate_minors(&build_t(2, VarStyle::Raw), 1).unwrap();
        let j = serde_json::to_value(cert.to_json()).unwrap();
        assert_eq!(j["N"], 2);
        assert_eq!(j["verdict"], "pass");
        assert!(j["violation"].is_null());
        assert_eq!(j["minors_checked"], 4);
        assert_eq!(j["source"], "T");
    }

    #[test]
    fn negative_second_order_minor_is_found() {
        // [[1, 1], [1, 1 - y]] has determinant -y at rows {0,1}, cols {0,1}.
        let v = VarSet::xyz();
        let one = Poly::one(&v);
        let y = Poly::var(&v, "y").unwrap();
        let m = PolyMatrix::from_rows(
            vec![vec![one.clone(), one.clone()], vec![one.clone(), &one + &y]],
            "custom",
        )
        .unwrap();
        assert!(enumerate_minors(&m, 2).unwrap().passed());
        let m2 = PolyMatrix::from_rows(
            vec![vec![&one + &y, one.clone()], vec![one.clone(), one.clone()]],
            "custom",
        )
        .unwrap();
        assert!(enumerate_minors(&m2, 2).unwrap().passed());
        let m3 = PolyMatrix::from_rows(
            vec![vec![one.clone(), &one + &y], vec![one.clone(), one.clone()]],
            "custom",
        )
        .unwrap();
        let cert = enumerate_minors(&m3, 2).unwrap();
        let v = cert.violation.unwrap();
        assert_eq!((v.rows, v.cols), (vec![0, 1], vec![0, 1]));
        assert_eq!(cert.minors_checked, 5);
    }
}
