//! Each verifiable claim as a function returning a [`CheckOutcome`].
//!
//! The `*_mismatch` / `*_violation` helpers take their inputs explicitly so
//! that a single perturbed entry can be fed through the same comparison that
//! the check itself uses.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::egfseries::{
    b_series, compose_poly, egf_mul, riordan_min_order, riordan_submatrix, solve_g, thm21_production,
    EgfSeries,
};
use crate::error::Result;
use crate::matrixkit::build_generic_quad;
use crate::matrixkit::{
    build_l, build_p, build_q, build_t, mat_mul_truncated, specialize_generic_to_t, PolyMatrix, VarStyle,
};
use crate::outputmat::{egf_column_identity_check, output_matrix, zeroth_column};
use crate::permoracle::dumont_poly;
use crate::polyring::{Poly, Scalar, VarSet};
use crate::schett::{reduced_sequence, schett_at_ones, schett_poly, schett_reduced};
use crate::totalpos::{enumerate_minors, schett_hankel, schett_shifted_hankel, TpCertificate};
use crate::Parity;

/// Result of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Effective parameters, echoed so the run can be reproduced.
    pub params: BTreeMap<String, Value>,
    /// One line: what was verified, or the first failure.
    pub detail: String,
    /// Total-positivity certificates, when the check produced any.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl CheckOutcome {
    fn new(name: &str, params: &[(&str, Value)], failure: Option<String>, ok: String) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed: failure.is_none(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            detail: failure.unwrap_or(ok),
            certificates: Vec::new(),
            timing_ms: None,
        }
    }
}

/// Depths used by [`run_all`]; the defaults are the documented acceptance depths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Depths {
    pub oracle_nmax: usize,
    pub factorial_nmax: usize,
    pub column_rows: usize,
    pub factorization_size: usize,
    pub tp_size: usize,
    pub tp_order: usize,
    pub hankel_size: usize,
    pub hankel_order: usize,
    pub riordan_nmax: usize,
    pub thm21_nmax: usize,
    pub thm21_order: usize,
    pub generic_size: usize,
    pub generic_order: usize,
    pub symmetry_nmax: usize,
    pub coincidence_kmax: usize,
    pub tridiagonal_size: usize,
    pub egf_order: usize,
}

impl Default for Depths {
    fn default() -> Self {
        Depths {
            oracle_nmax: 9,
            factorial_nmax: 25,
            column_rows: 16,
            factorization_size: 20,
            tp_size: 8,
            tp_order: 4,
            hankel_size: 6,
            hankel_order: 4,
            riordan_nmax: 10,
            thm21_nmax: 10,
            thm21_order: 20,
            generic_size: 5,
            generic_order: 3,
            symmetry_nmax: 20,
            coincidence_kmax: 12,
            tridiagonal_size: 12,
            egf_order: 16,
        }
    }
}

/// Times `f` and stores the elapsed milliseconds in the outcome if `timing`.
pub fn timed(timing: bool, f: impl FnOnce() -> Result<CheckOutcome>) -> Result<CheckOutcome> {
    let start = Instant::now();
    let mut out = f()?;
    if timing {
        out.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(out)
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

// ---------------------------------------------------------------- oracle

/// `None` if `X_n` equals `x·dn` (even `n`) or `y·dn` (odd `n`); otherwise
/// the difference `X_n - lead·dn`.
pub fn oracle_mismatch(n: usize, dn: &Poly) -> Result<Option<Poly>> {
    let xn = schett_poly(n, 2)?;
    let lead = Poly::var(&VarSet::xyz(), if n.is_multiple_of(2) { "x" } else { "y" })?;
    let diff = xn.checked_sub(&lead.checked_mul(dn)?)?;
    Ok((!diff.is_zero()).then_some(diff))
}

/// Schett operator against brute-force permutation enumeration, `1 <= n <= nmax`.
pub fn check_oracle(nmax: usize) -> Result<CheckOutcome> {
    let mut failure = None;
    for n in 1..=nmax {
        if let Some(diff) = oracle_mismatch(n, &dumont_poly(n, false))? {
            failure = Some(format!("n = {n}: X_n - lead*D_n = {diff}"));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "oracle",
        &[("nmax", json!(nmax))],
        failure,
        format!("X_n = x*D_n (n even), y*D_n (n odd) for 1 <= n <= {nmax}"),
    ))
}

// ------------------------------------------------------------- factorial

/// First `n` with `values[n] != n!`.
pub fn factorial_mismatch(values: &[Scalar]) -> Option<usize> {
    values.iter().enumerate().find(|(n, v)| **v != Scalar::factorial(*n as u64)).map(|(n, _)| n)
}

pub fn check_factorial(nmax: usize) -> Result<CheckOutcome> {
    let values = (0..=nmax).map(|n| schett_at_ones(n, 2)).collect::<Result<Vec<_>>>()?;
    let failure = factorial_mismatch(&values)
        .map(|n| format!("X_{n}(1,1,1) = {}, expected {}", values[n], Scalar::factorial(n as u64)));
    Ok(CheckOutcome::new(
        "factorial",
        &[("nmax", json!(nmax))],
        failure,
        format!("X_n(1,1,1) = n! for 0 <= n <= {nmax}"),
    ))
}

// ------------------------------------------------------ output columns

/// First index where `actual` and `expected` differ (including length).
pub fn sequence_mismatch(actual: &[Poly], expected: &[Poly]) -> Option<usize> {
    actual
        .iter()
        .zip(expected)
        .position(|(a, e)| a != e)
        .or_else(|| (actual.len() != expected.len()).then(|| actual.len().min(expected.len())))
}

/// Zeroth columns of `O(P)` and `O(Q)` against the reduced Schett polynomials,
/// rows `0 .. rows`.
pub fn check_zeroth_columns(rows: usize) -> Result<CheckOutcome> {
    let mut failure = None;
    for (parity, prod) in
        [(Parity::Even, build_p(rows, VarStyle::Squared)), (Parity::Odd, build_q(rows, VarStyle::Squared))]
    {
        let col = zeroth_column(&output_matrix(&prod, rows)?);
        let expected = reduced_sequence(parity, rows)?;
        if let Some(n) = sequence_mismatch(&col, &expected) {
            failure =
                Some(format!("{}: row {n} of column 0 differs from the reduced polynomial", prod.source()));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "columns",
        &[("rows", json!(rows))],
        failure,
        format!("column 0 of O(P), O(Q) = reduced even/odd sequence for n < {rows}"),
    ))
}

// --------------------------------------------------------- factorization

/// First entry of the leading `size` block where `prod != left·right`.
pub fn factorization_mismatch(
    prod: &PolyMatrix,
    left: &PolyMatrix,
    right: &PolyMatrix,
    size: usize,
) -> Result<Option<(usize, usize)>> {
    mat_mul_truncated(left, right, size)?.first_mismatch(prod, size)
}

/// `P = L·T` and `Q = T·L` on exact `size x size` leading blocks.
pub fn check_factorization(size: usize) -> Result<CheckOutcome> {
    let sq = VarStyle::Squared;
    // T·L reaches one column past the block (T has upper bandwidth 1).
    let p_bad = factorization_mismatch(&build_p(size, sq), &build_l(size, sq), &build_t(size, sq), size)?;
    let q_bad =
        factorization_mismatch(&build_q(size, sq), &build_t(size + 1, sq), &build_l(size + 1, sq), size)?;
    let failure = match (p_bad, q_bad) {
        (Some((i, j)), _) => Some(format!("P != L*T at ({i}, {j})")),
        (None, Some((i, j))) => Some(format!("Q != T*L at ({i}, {j})")),
        _ => None,
    };
    Ok(CheckOutcome::new(
        "factorization",
        &[("size", json!(size))],
        failure,
        format!("P = L*T and Q = T*L on exact {size}x{size} leading blocks"),
    ))
}

// ----------------------------------------------------- total positivity

/// Bundles certificates into one outcome; the first failing one is reported.
pub fn from_certificates(name: &str, params: &[(&str, Value)], certs: Vec<TpCertificate>) -> CheckOutcome {
    let failure = certs.iter().find(|c| !c.passed()).map(ToString::to_string);
    let total: u64 = certs.iter().map(|c| c.minors_checked).sum();
    let sources: Vec<&str> = certs.iter().map(|c| c.source.as_str()).collect();
    let mut out = CheckOutcome::new(
        name,
        params,
        failure,
        format!(
            "{total} minors of {} coefficientwise nonnegative (bounded check at the stated truncation)",
            sources.join(", ")
        ),
    );
    out.certificates =
        certs.iter().map(|c| serde_json::to_value(c.to_json()).expect("certificate serializes")).collect();
    out
}

/// Minors of order `<= order` of the `size x size` truncations of `P`, `Q`, `T`.
pub fn check_tp(size: usize, order: usize) -> Result<CheckOutcome> {
    let certs = [build_p, build_q, build_t]
        .iter()
        .map(|build| enumerate_minors(&build(size, VarStyle::Squared), order))
        .collect::<Result<Vec<_>>>()?;
    Ok(from_certificates("tp", &[("size", json!(size)), ("order", json!(order))], certs))
}

/// Minors of order `<= order` of the even and odd `size x size` Hankel matrices.
pub fn check_hankel(size: usize, order: usize) -> Result<CheckOutcome> {
    let certs = [Parity::Even, Parity::Odd]
        .iter()
        .map(|&p| enumerate_minors(&schett_hankel(p, size)?, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(from_certificates("hankel", &[("size", json!(size)), ("order", json!(order))], certs))
}

/// Exploratory: the shifted Hankel matrices `(a_{i+j+1})`. No positivity is
/// claimed for them; the outcome just records what was found.
pub fn check_shifted_hankel(size: usize, order: usize) -> Result<CheckOutcome> {
    let certs = [Parity::Even, Parity::Odd]
        .iter()
        .map(|&p| enumerate_minors(&schett_shifted_hankel(p, size)?, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(from_certificates(
        "shifted-hankel (exploratory)",
        &[("size", json!(size)), ("order", json!(order))],
        certs,
    ))
}

/// Bounded positivity of the generic quadridiagonal matrix, plus its
/// specialization to `T`.
pub fn check_generic(size: usize, order: usize) -> Result<CheckOutcome> {
    let cert = enumerate_minors(&build_generic_quad(size)?, order)?;
    let special = specialize_generic_to_t(size)?;
    let spec_bad = special.first_mismatch(&build_t(size, VarStyle::Raw), size)?;
    let mut out = from_certificates("generic", &[("size", json!(size)), ("order", json!(order))], vec![cert]);
    if out.passed {
        if let Some((i, j)) = spec_bad {
            out.passed = false;
            out.detail = format!("specialized generic matrix differs from T at ({i}, {j})");
        } else {
            out.detail.push_str("; specialization reproduces T");
        }
    }
    Ok(out)
}

// --------------------------------------------------------------- riordan

/// Riordan-array submatrices against the output matrices, `n, k <= nmax`.
pub fn check_riordan(nmax: usize) -> Result<CheckOutcome> {
    let size = nmax + 1;
    let mut failure = None;
    for (parity, prod) in
        [(Parity::Even, build_p(size, VarStyle::Raw)), (Parity::Odd, build_q(size, VarStyle::Raw))]
    {
        let riordan = riordan_submatrix(parity, nmax, riordan_min_order(nmax))?;
        let out = output_matrix(&prod, size)?;
        if let Some((n, k)) = riordan.first_mismatch(out.matrix(), size)? {
            failure = Some(format!(
                "{} riordan entry ({n}, {k}) differs from the output matrix",
                parity_name(parity)
            ));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "riordan",
        &[("nmax", json!(nmax))],
        failure,
        format!("Riordan submatrices = O(P), O(Q) entrywise for n, k <= {nmax}"),
    ))
}

// ----------------------------------------------------------------- thm21

/// First power `t^j` where `(G')²` and `B(G)` differ.
pub fn g_equation_mismatch(g: &EgfSeries, order: usize) -> Result<Option<usize>> {
    let gp = g.derivative()?;
    let lhs = egf_mul(&gp, &gp)?.truncate(order);
    let b = b_series(6);
    let rhs = compose_poly(b.coeffs(), &g.truncate(order))?;
    Ok((0..=order).find(|&j| lhs.coeff(j) != rhs.coeff(j)))
}

/// Series-derived production matrices against `P`, `Q`; `(G')² = B(G)`
/// through `t^order`; integrality of `G`.
pub fn check_thm21(nmax: usize, order: usize) -> Result<CheckOutcome> {
    let size = nmax + 1;
    let mut failure = None;
    for (parity, expected) in
        [(Parity::Even, build_p(size, VarStyle::Raw)), (Parity::Odd, build_q(size, VarStyle::Raw))]
    {
        let derived = thm21_production(parity, nmax)?;
        if let Some((i, j)) = derived.first_mismatch(&expected, size)? {
            failure = Some(format!(
                "{} series-derived entry ({i}, {j}) differs from {}",
                parity_name(parity),
                expected.source()
            ));
            break;
        }
    }
    // One extra term so the derivative is exact through t^order.
    let g = solve_g(order + 1)?;
    if failure.is_none() {
        if let Some(j) = g_equation_mismatch(&g, order)? {
            failure = Some(format!("(G')^2 != B(G) at t^{j}"));
        } else if let Some(j) = (0..=order).find(|&j| !g.coeff(j).is_integral()) {
            failure = Some(format!("G coefficient of t^{j}/{j}! is not integral"));
        }
    }
    Ok(CheckOutcome::new(
        "thm21",
        &[("nmax", json!(nmax)), ("order", json!(order))],
        failure,
        format!("series-derived production matrices = P, Q for n, k <= {nmax}; (G')^2 = B(G) and G integral through t^{order}"),
    ))
}

// ------------------------------------------------------------ structural

fn swap_yz() -> HashMap<String, Poly> {
    let v = VarSet::xyz();
    HashMap::from([
        ("y".to_string(), Poly::var(&v, "z").expect("z")),
        ("z".to_string(), Poly::var(&v, "y").expect("y")),
    ])
}

/// True if `p(x, y, z) == p(x, z, y)`.
pub fn is_yz_symmetric(p: &Poly) -> Result<bool> {
    Ok(p.substitute(&swap_yz())? == *p)
}

pub fn check_symmetry(nmax: usize) -> Result<CheckOutcome> {
    let mut failure = None;
    for n in 0..=nmax {
        if !is_yz_symmetric(&schett_poly(n, 2)?)? {
            failure = Some(format!("X_{n} is not symmetric in y and z"));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "symmetry",
        &[("nmax", json!(nmax))],
        failure,
        format!("X_n(x,y,z) = X_n(x,z,y) for n <= {nmax}"),
    ))
}

/// `None` if `even|_{X=0} == odd|_{X=0}`; otherwise the difference.
pub fn coincidence_mismatch(even: &Poly, odd: &Poly) -> Result<Option<Poly>> {
    let at = |p: &Poly| p.substitute_scalars(&[("X", Scalar::zero())]);
    let diff = at(even)?.checked_sub(&at(odd)?)?;
    Ok((!diff.is_zero()).then_some(diff))
}

pub fn check_coincidence(kmax: usize) -> Result<CheckOutcome> {
    let mut failure = None;
    for k in 0..=kmax {
        let even = schett_reduced(2 * k)?.poly;
        let odd = schett_reduced(2 * k + 1)?.poly;
        if let Some(diff) = coincidence_mismatch(&even, &odd)? {
            failure = Some(format!("k = {k}: difference at X = 0 is {diff}"));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "coincidence",
        &[("kmax", json!(kmax))],
        failure,
        format!("reduced X_2k = reduced X_2k+1 at X = 0 for k <= {kmax}"),
    ))
}

/// First entry below the subdiagonal that survives `z = 0`.
pub fn tridiagonal_violation(m: &PolyMatrix) -> Result<Option<(usize, usize)>> {
    let zname = if m.get(0, 0).vars().contains("Z") { "Z" } else { "z" };
    for (i, j, p) in m.entries() {
        if i > j + 1 && !p.substitute_scalars(&[(zname, Scalar::zero())])?.is_zero() {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

pub fn check_tridiagonal(size: usize) -> Result<CheckOutcome> {
    let mut failure = None;
    for m in [build_p(size, VarStyle::Raw), build_q(size, VarStyle::Raw)] {
        if let Some((i, j)) = tridiagonal_violation(&m)? {
            failure = Some(format!("{} at z = 0 has a nonzero entry at ({i}, {j})", m.source()));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "tridiagonal",
        &[("size", json!(size))],
        failure,
        format!("P and Q are tridiagonal at z = 0 on {size}x{size} truncations"),
    ))
}

/// Column-EGF differential identity for both `P` and `Q` through `t^order`.
pub fn check_egf(order: usize) -> Result<CheckOutcome> {
    let rows = order / 2 + 2;
    let mut failure = None;
    let mut checked = 0;
    for (parity, prod) in
        [(Parity::Even, build_p(rows, VarStyle::Raw)), (Parity::Odd, build_q(rows, VarStyle::Raw))]
    {
        let out = output_matrix(&prod, rows)?;
        let res = egf_column_identity_check(&prod, &out, parity, order)?;
        checked += res.coefficients_checked;
        if let Some((k, j)) = res.first_mismatch {
            failure = Some(format!("{}: column {k} differs at t^{j}", prod.source()));
            break;
        }
    }
    Ok(CheckOutcome::new(
        "egf",
        &[("order", json!(order))],
        failure,
        format!("column EGF identity holds for P and Q through t^{order} ({checked} coefficients)"),
    ))
}

/// Every check at the given depths, in a fixed order.
pub fn run_all(d: &Depths, timing: bool) -> Result<Vec<CheckOutcome>> {
    let checks: Vec<Box<dyn Fn() -> Result<CheckOutcome>>> = vec![
        Box::new(|| check_oracle(d.oracle_nmax)),
        Box::new(|| check_factorial(d.factorial_nmax)),
        Box::new(|| check_zeroth_columns(d.column_rows)),
        Box::new(|| check_factorization(d.factorization_size)),
        Box::new(|| check_tp(d.tp_size, d.tp_order)),
        Box::new(|| check_hankel(d.hankel_size, d.hankel_order)),
        Box::new(|| check_riordan(d.riordan_nmax)),
        Box::new(|| check_thm21(d.thm21_nmax, d.thm21_order)),
        Box::new(|| check_generic(d.generic_size, d.generic_order)),
        Box::new(|| check_symmetry(d.symmetry_nmax)),
        Box::new(|| check_coincidence(d.coincidence_kmax)),
        Box::new(|| check_tridiagonal(d.tridiagonal_size)),
        Box::new(|| check_egf(d.egf_order)),
    ];
    checks.iter().map(|c| timed(timing, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        for out in [
            check_oracle(5).unwrap(),
            check_factorial(10).unwrap(),
            check_zeroth_columns(5).unwrap(),
            check_factorization(6).unwrap(),
            check_tp(4, 2).unwrap(),
            check_hankel(3, 2).unwrap(),
            check_riordan(3).unwrap(),
            check_thm21(3, 8).unwrap(),
            check_generic(3, 2).unwrap(),
            check_symmetry(6).unwrap(),
            check_coincidence(3).unwrap(),
            check_tridiagonal(6).unwrap(),
            check_egf(6).unwrap(),
        ] {
            assert!(out.passed, "{}: {}", out.name, out.detail);
        }
    }

    #[test]
    fn sequence_mismatch_reports_length() {
        let v = VarSet::xyz();
        let a = vec![Poly::one(&v)];
        assert_eq!(sequence_mismatch(&a, &a), None);
        assert_eq!(sequence_mismatch(&a, &[]), Some(0));
        assert_eq!(sequence_mismatch(&a, &[Poly::zero(&v)]), Some(0));
    }

    #[test]
    fn params_are_echoed() {
        let out = check_factorial(3).unwrap();
        assert_eq!(out.params["nmax"], json!(3));
        let json = serde_json::to_value(&out).unwrap();
        assert!(json.get("timing_ms").is_none());
        assert!(json.get("certificates").is_none());
    }
}
