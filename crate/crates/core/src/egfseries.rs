//! Truncated power series with polynomial coefficients, the elliptic-type
//! series `G` solving `G'' = e1 G + 2 e2 G^3 + 3 e3 G^5`, checkerboard
//! exponential Riordan submatrices, and the production-matrix formulas
//! derived from the series `A` and `Z`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrixkit::{Band, PolyMatrix};
use crate::polyring::{squared_to_raw, Poly, PolyJson, Scalar, VarSet};
use crate::schett::schett_reduced;
use crate::Parity;

/// `Σ c_n t^n / n!` for `n <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    coeffs: Vec<Poly>,
}

/// `Σ c_n s^n` for `n <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdSeries {
    coeffs: Vec<Poly>,
}

impl EgfSeries {
    /// Coefficients of `t^n / n!`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Validation("a series needs at least one coefficient".into()));
        }
        Ok(EgfSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    fn vars(&self) -> VarSet {
        self.coeffs[0].vars().clone()
    }

    pub fn truncate(&self, order: usize) -> EgfSeries {
        EgfSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Index of the first nonzero coefficient, `None` if all vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `d/dt`; the order drops by one.
    pub fn derivative(&self) -> Result<EgfSeries> {
        if self.order() == 0 {
            return Err(Error::Truncation("derivative of an order-0 series".into()));
        }
        Ok(EgfSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn add(&self, other: &EgfSeries) -> Result<EgfSeries> {
        let order = self.order().min(other.order());
        let coeffs =
            (0..=order).map(|n| self.coeffs[n].checked_add(&other.coeffs[n])).collect::<Result<_>>()?;
        Ok(EgfSeries { coeffs })
    }

    /// Multiplies every coefficient by a polynomial constant in `t`.
    pub fn scale(&self, p: &Poly) -> Result<EgfSeries> {
        let coeffs = self.coeffs.iter().map(|c| c.checked_mul(p)).collect::<Result<_>>()?;
        Ok(EgfSeries { coeffs })
    }

    pub fn to_ord(&self) -> OrdSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Scalar::factorial(n as u64).recip().unwrap()))
            .collect();
        OrdSeries { coeffs }
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            kind: "egf".into(),
            order: self.order(),
            coeffs: self.coeffs.iter().map(PolyJson::from).collect(),
        }
    }
}

impl OrdSeries {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Validation("a series needs at least one coefficient".into()));
        }
        Ok(OrdSeries { coeffs })
    }

    /// A polynomial in `s` given by its coefficient list, zero-padded to `order`.
    pub fn from_poly_coeffs(coeffs: Vec<Poly>, order: usize, vars: &VarSet) -> OrdSeries {
        let mut c = coeffs;
        c.resize(order + 1, Poly::zero(vars));
        c.truncate(order + 1);
        OrdSeries { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn to_egf(&self) -> EgfSeries {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&Scalar::factorial(n as u64))).collect();
        EgfSeries { coeffs }
    }

    pub fn add(&self, other: &OrdSeries) -> Result<OrdSeries> {
        let order = self.order().min(other.order());
        let coeffs =
            (0..=order).map(|n| self.coeffs[n].checked_add(&other.coeffs[n])).collect::<Result<_>>()?;
        Ok(OrdSeries { coeffs })
    }

    pub fn mul(&self, other: &OrdSeries) -> Result<OrdSeries> {
        let order = self.order().min(other.order());
        let vars = self.coeffs[0].vars().clone();
        let mut coeffs = vec![Poly::zero(&vars); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(OrdSeries { coeffs })
    }

    pub fn scale(&self, s: &Scalar) -> OrdSeries {
        OrdSeries { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// Multiplication by `s^k`, keeping the order.
    pub fn shift(&self, k: usize) -> OrdSeries {
        let vars = self.coeffs[0].vars().clone();
        let mut coeffs = vec![Poly::zero(&vars); k.min(self.coeffs.len())];
        coeffs.extend(self.coeffs.iter().take(self.coeffs.len().saturating_sub(k)).cloned());
        OrdSeries { coeffs }
    }

    /// `d/ds`; the order drops by one.
    pub fn derivative(&self) -> Result<OrdSeries> {
        if self.order() == 0 {
            return Err(Error::Truncation("derivative of an order-0 series".into()));
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Scalar::from((n + 1) as u64)))
            .collect();
        Ok(OrdSeries { coeffs })
    }

    /// `1 / (1 + u s^2)` through `order`, by the alternating geometric series.
    pub fn geometric_inverse(u: &Poly, order: usize) -> OrdSeries {
        let vars = u.vars().clone();
        let mut coeffs = vec![Poly::zero(&vars); order + 1];
        let mut pow = Poly::one(&vars);
        for k in 0..=order / 2 {
            coeffs[2 * k] = if k % 2 == 0 { pow.clone() } else { -&pow };
            pow = &pow * u;
        }
        OrdSeries { coeffs }
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            kind: "ord".into(),
            order: self.order(),
            coeffs: self.coeffs.iter().map(PolyJson::from).collect(),
        }
    }
}

/// Interchange form of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub kind: String,
    pub order: usize,
    pub coeffs: Vec<PolyJson>,
}

/// Binomial convolution: `c_n = Σ_k C(n,k) a_k b_{n-k}`, to the common order.
pub fn egf_mul(a: &EgfSeries, b: &EgfSeries) -> Result<EgfSeries> {
    let order = a.order().min(b.order());
    let vars = a.vars();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = Poly::zero(&vars);
        for k in 0..=n {
            let (x, y) = (&a.coeffs[k], &b.coeffs[n - k]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let term = x.checked_mul(y)?.scale(&Scalar::binomial(n as u64, k as u64));
            acc = acc.checked_add(&term)?;
        }
        coeffs.push(acc);
    }
    Ok(EgfSeries { coeffs })
}

/// Truncated quotient `a / b`.
///
/// `b = t^v u(t)` where the leading coefficient of `u` must be a nonzero
/// constant, and `a` must vanish to order `v`. The result is valid through
/// order `min(order(a), order(b)) - v`.
pub fn egf_divide(a: &EgfSeries, b: &EgfSeries) -> Result<EgfSeries> {
    let v = b.valuation().ok_or_else(|| Error::Valuation("division by the zero series".into()))?;
    if let Some(va) = a.valuation() {
        if va < v {
            return Err(Error::Valuation(format!("dividend has valuation {va}, divisor {v}")));
        }
    }
    let order = a.order().min(b.order());
    if order < v {
        return Err(Error::Truncation("series too short for its valuation".into()));
    }
    let lead = b.coeffs[v]
        .as_constant()
        .ok_or_else(|| Error::Valuation("leading coefficient of divisor is not a constant".into()))?;
    let lead_ord_inv = (lead / Scalar::factorial(v as u64)).recip().unwrap();
    // Work with ordinary coefficients, shifted down by the valuation.
    let (ao, bo) = (a.to_ord(), b.to_ord());
    let num: Vec<&Poly> = ao.coeffs[v..=order].iter().collect();
    let den: Vec<&Poly> = bo.coeffs[v..=order].iter().collect();
    let mut q: Vec<Poly> = Vec::with_capacity(num.len());
    for n in 0..num.len() {
        let mut r = num[n].clone();
        for k in 1..=n {
            if den[k].is_zero() || q[n - k].is_zero() {
                continue;
            }
            r = r.checked_sub(&den[k].checked_mul(&q[n - k])?)?;
        }
        q.push(r.scale(&lead_ord_inv));
    }
    Ok(OrdSeries { coeffs: q }.to_egf())
}

/// `e1 = x²+y²+z²`, `e2 = x²y²+x²z²+y²z²`, `e3 = x²y²z²` in raw variables.
fn elementary_squares() -> (Poly, Poly, Poly) {
    let v = VarSet::xyz();
    let [x2, y2, z2] = ["x", "y", "z"].map(|n| Poly::var(&v, n).unwrap().pow(2));
    let e1 = &(&x2 + &y2) + &z2;
    let e2 = &(&(&x2 * &y2) + &(&x2 * &z2)) + &(&y2 * &z2);
    let e3 = &(&x2 * &y2) * &z2;
    (e1, e2, e3)
}

/// The odd series `G` with `G(0) = 0`, `G'(0) = 1` and
/// `G'' = e1 G + 2 e2 G^3 + 3 e3 G^5`, through `t^order`.
///
/// This is the derivative of `(G')^2 = B(G)` with
/// `B(s) = (1+x²s²)(1+y²s²)(1+z²s²)`, divided by `2G'`.
pub fn solve_g(order: usize) -> Result<EgfSeries> {
    if order == 0 {
        return Err(Error::Validation("solve_g needs order >= 1".into()));
    }
    let v = VarSet::xyz();
    let (e1, e2, e3) = elementary_squares();
    let two_e2 = e2.scale(&Scalar::from(2));
    let three_e3 = e3.scale(&Scalar::from(3));
    let zero = Poly::zero(&v);
    // pows[k][n] = [t^n/n!] G^(k+1), filled one index at a time.
    let mut g: Vec<Poly> = vec![zero.clone(), Poly::one(&v)];
    let mut pows: [Vec<Poly>; 5] = Default::default();
    let conv = |a: &[Poly], b: &[Poly], n: usize| -> Poly {
        let mut acc = Poly::zero(&VarSet::xyz());
        for k in 0..=n {
            if a[k].is_zero() || b[n - k].is_zero() {
                continue;
            }
            acc = &acc + &(&a[k] * &b[n - k]).scale(&Scalar::binomial(n as u64, k as u64));
        }
        acc
    };
    for n in 0..=order {
        // g_n is known here for every n <= order: g_0, g_1 seeded, g_{n} set at step n-2.
        pows[0].push(g[n].clone());
        for k in 1..5 {
            let c = conv(&pows[k - 1], &g, n);
            pows[k].push(c);
        }
        if n + 2 <= order {
            let next = &(&(&e1 * &pows[0][n]) + &(&two_e2 * &pows[2][n])) + &(&three_e3 * &pows[4][n]);
            g.push(next);
        }
    }
    g.truncate(order + 1);
    Ok(EgfSeries { coeffs: g })
}

/// `B(s) = (1+x²s²)(1+y²s²)(1+z²s²)` as a series through `order`.
pub fn b_series(order: usize) -> OrdSeries {
    let v = VarSet::xyz();
    let (e1, e2, e3) = elementary_squares();
    OrdSeries::from_poly_coeffs(
        vec![Poly::one(&v), Poly::zero(&v), e1, Poly::zero(&v), e2, Poly::zero(&v), e3],
        order,
        &v,
    )
}

/// Substitutes a series with zero constant term into a polynomial in `s`:
/// `Σ p_k G^k`, all in exponential form.
pub fn compose_poly(p_coeffs: &[Poly], g: &EgfSeries) -> Result<EgfSeries> {
    if !g.coeff(0).is_zero() {
        return Err(Error::Valuation("inner series must vanish at t = 0".into()));
    }
    let vars = g.vars();
    let mut acc = EgfSeries { coeffs: vec![Poly::zero(&vars); g.order() + 1] };
    let mut pow = EgfSeries::new({
        let mut c = vec![Poly::zero(&vars); g.order() + 1];
        c[0] = Poly::one(&vars);
        c
    })?;
    for (k, pk) in p_coeffs.iter().enumerate() {
        if k > 0 {
            pow = egf_mul(&pow, g)?;
        }
        if !pk.is_zero() {
            acc = acc.add(&pow.scale(pk)?)?;
        }
    }
    Ok(acc)
}

/// Exponential generating function of the even or odd reduced Schett
/// polynomials, rendered in `x, y, z`, through `t^order`.
pub fn egf_from_schett(parity: Parity, order: usize) -> Result<EgfSeries> {
    let v = VarSet::xyz();
    let coeffs = (0..=order)
        .map(|n| {
            if n % 2 == parity.offset() {
                squared_to_raw(&schett_reduced(n)?.poly)
            } else {
                Ok(Poly::zero(&v))
            }
        })
        .collect::<Result<_>>()?;
    Ok(EgfSeries { coeffs })
}

/// Minimal series order needed by [`riordan_submatrix`] for `n_max`.
pub fn riordan_min_order(n_max: usize) -> usize {
    2 * n_max + 1
}

/// Even-even (or odd-odd) submatrix of the checkerboard exponential Riordan
/// array with `G` from [`solve_g`] and `F` the even Schett EGF (even case), or
/// `F·G` the odd Schett EGF (odd case). Entries `(n, k)` for `n, k <= n_max`.
pub fn riordan_submatrix(parity: Parity, n_max: usize, order: usize) -> Result<PolyMatrix> {
    if order < riordan_min_order(n_max) {
        return Err(Error::Truncation(format!(
            "order {order} below the required {}",
            riordan_min_order(n_max)
        )));
    }
    let g = solve_g(order)?;
    let g2 = egf_mul(&g, &g)?;
    // Column k uses F·G^(2k+s); the odd case starts from F·G directly.
    let mut col = egf_from_schett(parity, order)?;
    let s = parity.offset();
    let v = VarSet::xyz();
    let size = n_max + 1;
    let mut rows = vec![vec![Poly::zero(&v); size]; size];
    for k in 0..size {
        if k > 0 {
            col = egf_mul(&col, &g2)?;
        }
        let denom = Scalar::factorial((2 * k + s) as u64).recip().unwrap();
        for (n, row) in rows.iter_mut().enumerate() {
            row[k] = col.coeff(2 * n + s).scale(&denom);
        }
    }
    let tag = match parity {
        Parity::Even => "riordan-even",
        Parity::Odd => "riordan-odd",
    };
    PolyMatrix::from_rows(rows, tag)
}

/// `b_m`, `c_m`, `d_m` extracted from `B = A²`, `C = 2AZ`, `D = Z² + AZ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionCoefficients {
    pub b: Vec<Poly>,
    pub c: Vec<Poly>,
    pub d: Vec<Poly>,
}

/// The rational factor `R(s)` with `Z(s) = s A(s) R(s)`:
/// `y²/(1+y²s²) + z²/(1+z²s²)` for the even array, `x²/(1+x²s²)` for the odd one.
pub fn r_series(parity: Parity, order: usize) -> OrdSeries {
    let v = VarSet::xyz();
    let sq = |n: &str| Poly::var(&v, n).unwrap().pow(2);
    let term = |u: Poly| {
        let g = OrdSeries::geometric_inverse(&u, order);
        OrdSeries { coeffs: g.coeffs.iter().map(|c| c * &u).collect() }
    };
    match parity {
        Parity::Even => term(sq("y")).add(&term(sq("z"))).unwrap(),
        Parity::Odd => term(sq("x")),
    }
}

/// Computes `b_m, c_m, d_m` for `m <= m_max` using only `B = A²`:
/// `C = 2sBR`, `D = s²BR² + BR + (s/2)B'R + sBR'`.
pub fn production_coefficients(parity: Parity, m_max: usize) -> Result<ProductionCoefficients> {
    let order = 2 * m_max + 3;
    let b = b_series(order + 1);
    let r = r_series(parity, order + 1);
    let b_prime = b.derivative()?;
    let r_prime = r.derivative()?;
    let b = OrdSeries { coeffs: b.coeffs[..=order].to_vec() };
    let r = OrdSeries { coeffs: r.coeffs[..=order].to_vec() };
    let br = b.mul(&r)?;
    let c = br.shift(1).scale(&Scalar::from(2));
    let d = br
        .mul(&r)?
        .shift(2)
        .add(&br)?
        .add(&b_prime.mul(&r)?.shift(1).scale(&Scalar::ratio(1, 2)))?
        .add(&b.mul(&r_prime)?.shift(1))?;
    let even = |s: &OrdSeries, m: usize| s.coeff(2 * m).clone();
    Ok(ProductionCoefficients {
        b: (0..=m_max + 1).map(|m| even(&b, m)).collect(),
        c: (0..=m_max).map(|m| c.coeff(2 * m + 1).clone()).collect(),
        d: (0..=m_max).map(|m| even(&d, m)).collect(),
    })
}

/// Production matrix of the even-even (odd-odd) submatrix assembled from
/// `b_m, c_m, d_m`; entries `(n, k)` for `n, k <= n_max`, in raw variables.
pub fn thm21_production(parity: Parity, n_max: usize) -> Result<PolyMatrix> {
    if n_max == 0 {
        return Err(Error::Validation("n_max must be >= 1".into()));
    }
    let coeffs = production_coefficients(parity, n_max)?;
    let v = VarSet::xyz();
    let s = parity.offset() as i64;
    let at = |seq: &[Poly], idx: i64| -> Poly {
        if idx < 0 {
            Poly::zero(&v)
        } else {
            seq.get(idx as usize).cloned().unwrap_or_else(|| Poly::zero(&v))
        }
    };
    let size = n_max + 1;
    let tag = match parity {
        Parity::Even => "thm-even",
        Parity::Odd => "thm-odd",
    };
    let mut err = None;
    let m = PolyMatrix::from_band_fn(size, Band { lower: size, upper: 1 }, &v, tag, |i, j| {
        let (n, k) = (i as i64, j as i64);
        let two_k_s = 2 * k + s;
        let lead = Scalar::from(two_k_s * (n + k + s));
        let inner = &(&at(&coeffs.b, n - k + 1).scale(&lead)
            + &at(&coeffs.c, n - k).scale(&Scalar::from(two_k_s)))
            + &at(&coeffs.d, n - k);
        let ratio = Scalar::factorial((2 * n + s) as u64) / Scalar::factorial((2 * k + s) as u64);
        let entry = inner.scale(&ratio);
        if !entry.is_integral() && err.is_none() {
            err = Some(Error::Structure(format!("non-integral production entry ({i},{j}): {entry}")));
        }
        entry
    });
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(n: &str) -> Poly {
        Poly::var(&VarSet::xyz(), n).unwrap()
    }

    fn k(n: i64) -> Poly {
        Poly::constant(&VarSet::xyz(), n)
    }

    fn exp_like(order: usize) -> EgfSeries {
        EgfSeries::new(vec![k(1); order + 1]).unwrap()
    }

    #[test]
    fn egf_square_of_exp() {
        let e2 = egf_mul(&exp_like(8), &exp_like(8)).unwrap();
        for n in 0..=8 {
            assert_eq!(e2.coeff(n), &k(1 << n));
        }
        let one = EgfSeries::new(vec![k(1), k(0), k(0)]).unwrap();
        let a = EgfSeries::new(vec![k(3), xyz("x"), k(-2)]).unwrap();
        assert_eq!(egf_mul(&a, &one).unwrap(), a);
    }

    #[test]
    fn divide_examples() {
        let a = EgfSeries::new(vec![k(3), xyz("x"), k(-2)]).unwrap();
        let one = EgfSeries::new(vec![k(1), k(0), k(0)]).unwrap();
        assert_eq!(egf_divide(&a, &one).unwrap(), a);
        // t^2 / t = t: valuation drops from 2 to 1, order drops by one.
        let t2 = EgfSeries::new(vec![k(0), k(0), k(2), k(0)]).unwrap();
        let t = EgfSeries::new(vec![k(0), k(1), k(0), k(0)]).unwrap();
        let q = egf_divide(&t2, &t).unwrap();
        assert_eq!(q.valuation(), Some(1));
        assert_eq!(q.order(), 2);
        assert!(matches!(egf_divide(&t, &t2), Err(Error::Valuation(_))));
        let nonconst = EgfSeries::new(vec![xyz("x"), k(1)]).unwrap();
        assert!(matches!(egf_divide(&a, &nonconst), Err(Error::Valuation(_))));
    }

    #[test]
    fn g_low_order() {
        let g = solve_g(9).unwrap();
        assert!(g.coeff(0).is_zero());
        assert_eq!(g.coeff(1), &k(1));
        assert!(g.coeff(2).is_zero());
        assert_eq!(g.coeff(3), &(&(&xyz("x").pow(2) + &xyz("y").pow(2)) + &xyz("z").pow(2)));
        for n in (0..=9).step_by(2) {
            assert!(g.coeff(n).is_zero());
        }
    }

    #[test]
    fn g_reduces_to_sinh_at_x_z_zero() {
        // G'' = y² G with G(0)=0, G'(0)=1 gives G = sinh(yt)/y.
        let g = solve_g(13).unwrap();
        let zero = Scalar::zero();
        for kk in 0..=6 {
            let c =
                g.coeff(2 * kk + 1).substitute_scalars(&[("x", zero.clone()), ("z", zero.clone())]).unwrap();
            assert_eq!(c, xyz("y").pow(2 * kk as u32));
        }
    }

    #[test]
    fn g_satisfies_squared_first_order_equation() {
        let order = 12;
        let g = solve_g(order + 1).unwrap();
        let gp = g.derivative().unwrap();
        let lhs = egf_mul(&gp, &gp).unwrap();
        let b = b_series(6);
        let rhs = compose_poly(b.coeffs(), &g.truncate(order)).unwrap();
        assert_eq!(lhs.coeffs()[..=order], rhs.coeffs()[..=order]);
    }

    #[test]
    fn schett_egfs() {
        let even = egf_from_schett(Parity::Even, 4).unwrap();
        assert_eq!(even.coeff(0), &k(1));
        assert_eq!(even.coeff(2), &(&xyz("y").pow(2) + &xyz("z").pow(2)));
        assert!(even.coeff(1).is_zero() && even.coeff(3).is_zero());
        let odd = egf_from_schett(Parity::Odd, 4).unwrap();
        let x3 = &(&xyz("x").pow(2).scale(&Scalar::from(4)) + &xyz("y").pow(2)) + &xyz("z").pow(2);
        assert_eq!(odd.coeff(3), &x3);
        assert!(odd.coeff(0).is_zero());
    }

    #[test]
    fn odd_f_has_unit_constant_term() {
        let fg = egf_from_schett(Parity::Odd, 9).unwrap();
        let g = solve_g(9).unwrap();
        let f = egf_divide(&fg, &g).unwrap();
        assert_eq!(f.coeff(0), &k(1));
        assert_eq!(f.coeff(2), &xyz("x").pow(2));
    }

    #[test]
    fn riordan_corner_entries() {
        let even = riordan_submatrix(Parity::Even, 2, 5).unwrap();
        assert_eq!(even.get(0, 0), &k(1));
        assert_eq!(even.get(1, 0), &(&xyz("y").pow(2) + &xyz("z").pow(2)));
        let odd = riordan_submatrix(Parity::Odd, 2, 5).unwrap();
        let x3 = &(&xyz("x").pow(2).scale(&Scalar::from(4)) + &xyz("y").pow(2)) + &xyz("z").pow(2);
        assert_eq!(odd.get(1, 0), &x3);
        assert!(matches!(riordan_submatrix(Parity::Even, 2, 4), Err(Error::Truncation(_))));
    }

    #[test]
    fn production_coefficients_low() {
        let even = production_coefficients(Parity::Even, 3).unwrap();
        assert_eq!(even.b[0], k(1));
        assert_eq!(even.b[1], &(&xyz("x").pow(2) + &xyz("y").pow(2)) + &xyz("z").pow(2));
        assert_eq!(even.d[0], &xyz("y").pow(2) + &xyz("z").pow(2));
        let odd = production_coefficients(Parity::Odd, 3).unwrap();
        assert_eq!(odd.c[0], xyz("x").pow(2).scale(&Scalar::from(2)));
        assert_eq!(odd.d[0], xyz("x").pow(2));
    }

    #[test]
    fn thm21_corners() {
        let even = thm21_production(Parity::Even, 3).unwrap();
        assert_eq!(even.get(0, 0), &(&xyz("y").pow(2) + &xyz("z").pow(2)));
        assert_eq!(even.get(0, 1), &k(1));
        let odd = thm21_production(Parity::Odd, 3).unwrap();
        let x3 = &(&xyz("x").pow(2).scale(&Scalar::from(4)) + &xyz("y").pow(2)) + &xyz("z").pow(2);
        assert_eq!(odd.get(0, 0), &x3);
        assert!(odd.get(0, 2).is_zero());
    }

    #[test]
    fn geometric_inverse_times_base_is_one() {
        let u = xyz("y").pow(2);
        let inv = OrdSeries::geometric_inverse(&u, 8);
        let base = OrdSeries::from_poly_coeffs(vec![k(1), k(0), u.clone()], 8, &VarSet::xyz());
        let prod = base.mul(&inv).unwrap();
        assert_eq!(prod.coeff(0), &k(1));
        assert!(prod.coeffs()[1..].iter().all(Poly::is_zero));
    }
}
