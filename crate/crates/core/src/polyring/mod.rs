//! Exact sparse multivariate polynomials over the rationals.

mod json;
mod poly;
mod render;
mod scalar;
mod varset;

pub use json::{PolyJson, TermJson};
pub use poly::{Degree, Monomial, Poly};
pub use scalar::Scalar;
pub use varset::VarSet;

/// `x -> X` style renaming between raw `x, y, z` and squared `X, Y, Z`.
///
/// Raw to squared requires every exponent of `x`, `y`, `z` to be even.
pub fn squared_to_raw(p: &Poly) -> crate::Result<Poly> {
    let raw = VarSet::xyz();
    let map = [("X", "x"), ("Y", "y"), ("Z", "z")]
        .into_iter()
        .filter(|(s, _)| p.vars().contains(s))
        .map(|(s, r)| Ok((s.to_string(), Poly::var(&raw, r)?.pow(2))))
        .collect::<crate::Result<_>>()?;
    p.substitute(&map)?.with_vars(&raw)
}

/// Inverse of [`squared_to_raw`]; fails on any odd exponent of `x`, `y` or `z`.
pub fn raw_to_squared(p: &Poly) -> crate::Result<Poly> {
    let sq = VarSet::squared();
    let idx: Vec<Option<usize>> = ["x", "y", "z"].iter().map(|n| p.vars().index_of(n)).collect();
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut exps = vec![0; 3];
        for (slot, i) in idx.iter().enumerate() {
            if let Some(i) = *i {
                let e = m.exps()[i];
                if e % 2 == 1 {
                    return Err(crate::Error::Structure(format!(
                        "odd exponent of {} in {p}",
                        p.vars().names()[i]
                    )));
                }
                exps[slot] = e / 2;
            }
        }
        let used: u32 = idx.iter().flatten().map(|&i| m.exps()[i]).sum();
        if used != m.degree() {
            return Err(crate::Error::Structure(format!("{p} involves variables other than x, y, z")));
        }
        terms.push((exps, c.clone()));
    }
    Poly::from_terms(&sq, terms)
}
