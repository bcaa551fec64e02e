//! Output matrices `O(P)` with `a_{nk} = (P^n)_{0k}`, built row by row via
//! `a_{m+1,k} = Σ_n a_{m,n} p_{n,k}`.

use crate::egfseries::EgfSeries;
use crate::error::{Error, Result};
use crate::matrixkit::PolyMatrix;
use crate::polyring::Poly;
use crate::Parity;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputMatrix {
    matrix: PolyMatrix,
    provenance: String,
}

impl OutputMatrix {
    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    /// Source tag of the production matrix this was generated from.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, n: usize, k: usize) -> &Poly {
        self.matrix.get(n, k)
    }
}

/// Rows `0 .. n_rows` of `O(prod)`, as an `n_rows x n_rows` matrix.
///
/// For the leading block of a band matrix the upper bandwidth must be at most
/// one (so row `m` of the output is supported on columns `0..=m`) and `prod`
/// must be at least `n_rows x n_rows`. A finite `prod` is used as given.
pub fn output_matrix(prod: &PolyMatrix, n_rows: usize) -> Result<OutputMatrix> {
    if n_rows == 0 {
        return Err(Error::Validation("output matrix needs at least one row".into()));
    }
    if !prod.is_square() {
        return Err(Error::Shape("production matrix must be square".into()));
    }
    if let Some(band) = prod.band() {
        if band.upper > 1 {
            return Err(Error::Structure(format!(
                "upper bandwidth {} is not row-finite in the required sense",
                band.upper
            )));
        }
        if prod.rows() < n_rows {
            return Err(Error::Truncation(format!(
                "{n_rows} output rows need a {n_rows}x{n_rows} production block, have {}",
                prod.rows()
            )));
        }
    }
    let vars = prod.get(0, 0).vars().clone();
    let width = prod.cols();
    let mut current: Vec<Poly> =
        (0..width).map(|k| if k == 0 { Poly::one(&vars) } else { Poly::zero(&vars) }).collect();
    let mut rows = Vec::with_capacity(n_rows);
    for m in 0..n_rows {
        rows.push(current[..n_rows.min(width)].to_vec());
        if m + 1 == n_rows {
            break;
        }
        let mut next = vec![Poly::zero(&vars); width];
        for (n, a) in current.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, slot) in next.iter_mut().enumerate() {
                let p = prod.get(n, k);
                if !p.is_zero() {
                    *slot = slot.checked_add(&a.checked_mul(p)?)?;
                }
            }
        }
        current = next;
    }
    let mut rows: Vec<Vec<Poly>> = rows;
    for r in rows.iter_mut() {
        r.resize(n_rows, Poly::zero(&vars));
    }
    let provenance = prod.source().to_string();
    let matrix = PolyMatrix::from_rows(rows, format!("output-of:{provenance}"))?;
    Ok(OutputMatrix { matrix, provenance })
}

/// Column `k = 0` of an output matrix.
pub fn zeroth_column(out: &OutputMatrix) -> Vec<Poly> {
    (0..out.rows()).map(|n| out.get(n, 0).clone()).collect()
}

/// Outcome of [`egf_column_identity_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfCheck {
    pub passed: bool,
    /// First `(k, power of t)` where the two sides differ.
    pub first_mismatch: Option<(usize, usize)>,
    pub coefficients_checked: usize,
}

/// Column EGF `Σ_n a_{nk} t^{2n+s} / (2n+s)!` through `t^order`.
pub fn column_egf(out: &OutputMatrix, k: usize, parity: Parity, order: usize) -> Result<EgfSeries> {
    let s = parity.offset();
    let vars = out.get(0, 0).vars().clone();
    let coeffs = (0..=order)
        .map(|j| {
            if j >= s && (j - s).is_multiple_of(2) && (j - s) / 2 < out.rows() {
                out.get((j - s) / 2, k).clone()
            } else {
                Poly::zero(&vars)
            }
        })
        .collect();
    EgfSeries::new(coeffs)
}

/// Checks `d²/dt² A_k = Σ_n p_{nk} A_n` for the column EGFs of `out`
/// coefficient by coefficient through `t^order`, for every column `k`.
///
/// Needs `out` to have at least `(order - s)/2 + 2` rows.
pub fn egf_column_identity_check(
    prod: &PolyMatrix,
    out: &OutputMatrix,
    parity: Parity,
    order: usize,
) -> Result<EgfCheck> {
    let s = parity.offset();
    let m_max = order.saturating_sub(s) / 2;
    if out.rows() < m_max + 2 || prod.rows() < m_max + 1 {
        return Err(Error::Truncation(format!(
            "order {order} needs {} output rows and {} production rows",
            m_max + 2,
            m_max + 1
        )));
    }
    // A_k for enough terms that the second derivative reaches t^order.
    let columns =
        (0..out.rows()).map(|k| column_egf(out, k, parity, order + 2)).collect::<Result<Vec<_>>>()?;
    let n_terms = out.rows().min(prod.rows());
    let mut checked = 0;
    for k in 0..out.rows().min(prod.cols()) {
        let lhs = columns[k].derivative()?.derivative()?;
        let vars = out.get(0, 0).vars().clone();
        let mut rhs = EgfSeries::new(vec![Poly::zero(&vars); order + 1])?;
        for (n, col) in columns.iter().enumerate().take(n_terms) {
            let p = prod.get(n, k);
            if !p.is_zero() {
                rhs = rhs.add(&col.truncate(order).scale(p)?)?;
            }
        }
        for j in 0..=order {
            // Only powers t^{2m+s} with a complete set of contributing rows.
            if j < s || !(j - s).is_multiple_of(2) {
                continue;
            }
            checked += 1;
            if lhs.coeff(j) != rhs.coeff(j) {
                return Ok(EgfCheck {
                    passed: false,
                    first_mismatch: Some((k, j)),
                    coefficients_checked: checked,
                });
            }
        }
    }
    Ok(EgfCheck { passed: true, first_mismatch: None, coefficients_checked: checked })
}
