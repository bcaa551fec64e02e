//! Schett polynomials `X_n`, obtained by iterating the operator
//! `Σ_i (Π_{j≠i} x_j) ∂/∂x_i` on `x_0`, and their reduced forms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::polyring::{raw_to_squared, Poly, Scalar, VarSet};
use crate::Parity;

/// Variable set for the `(m+1)`-variable operator: `x, y, z` when `m = 2`,
/// otherwise `x0, ..., xm`.
pub fn schett_vars(m: usize) -> VarSet {
    if m == 2 {
        VarSet::xyz()
    } else {
        VarSet::new((0..=m).map(|i| format!("x{i}"))).expect("distinct names")
    }
}

/// One application of the Schett operator in `m + 1` variables.
pub fn schett_operator_apply(p: &Poly, m: usize) -> Result<Poly> {
    if m == 0 {
        return Err(Error::Validation("the Schett operator needs m >= 1".into()));
    }
    let vars = schett_vars(m);
    let p = p.with_vars(&vars)?;
    let xs: Vec<Poly> = vars.names().iter().map(|n| Poly::var(&vars, n)).collect::<Result<_>>()?;
    let mut acc = Poly::zero(&vars);
    for (i, name) in vars.names().iter().enumerate() {
        let d = p.partial(name)?;
        if d.is_zero() {
            continue;
        }
        let mut coeff = Poly::one(&vars);
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                coeff = &coeff * xj;
            }
        }
        acc = &acc + &(&coeff * &d);
    }
    Ok(acc)
}

/// Append-only cache of `X_0, X_1, ...` for a fixed `m`.
#[derive(Debug)]
pub struct SchettSequence {
    m: usize,
    cache: RwLock<Vec<Poly>>,
}

impl SchettSequence {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Validation("Schett polynomials need m >= 1".into()));
        }
        let vars = schett_vars(m);
        let x0 = Poly::var(&vars, &vars.names()[0])?;
        Ok(SchettSequence { m, cache: RwLock::new(vec![x0]) })
    }

    /// Process-wide sequence for `m`, shared between callers.
    pub fn shared(m: usize) -> Result<Arc<SchettSequence>> {
        static SEQS: OnceLock<Mutex<HashMap<usize, Arc<SchettSequence>>>> = OnceLock::new();
        let mut map = SEQS.get_or_init(Default::default).lock().expect("cache lock");
        if let Some(s) = map.get(&m) {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(SchettSequence::new(m)?);
        map.insert(m, Arc::clone(&s));
        Ok(s)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vars(&self) -> VarSet {
        schett_vars(self.m)
    }

    /// `X_n`, materializing `X_0 ..= X_n` on first request.
    pub fn get(&self, n: usize) -> Poly {
        if let Some(p) = self.cache.read().expect("cache lock").get(n) {
            return p.clone();
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= n {
            let next = schett_operator_apply(cache.last().unwrap(), self.m)
                .expect("operator stays inside its own variable set");
            cache.push(next);
        }
        cache[n].clone()
    }

    /// `X_0 ..= X_n`.
    pub fn prefix(&self, n: usize) -> Vec<Poly> {
        self.get(n);
        self.cache.read().expect("cache lock")[..=n].to_vec()
    }
}

/// `X_n^{[m+1]}`; `m = 2` gives the classical three-variable polynomials.
pub fn schett_poly(n: usize, m: usize) -> Result<Poly> {
    Ok(SchettSequence::shared(m)?.get(n))
}

/// Reduced Schett polynomial in the squared variables `X, Y, Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSchett {
    pub parity: Parity,
    /// `n = 2k` or `n = 2k + 1`.
    pub k: usize,
    pub poly: Poly,
}

impl ReducedSchett {
    pub fn index(&self) -> usize {
        match self.parity {
            Parity::Even => 2 * self.k,
            Parity::Odd => 2 * self.k + 1,
        }
    }
}

/// Divides `X_n` by `x` (even `n`) or `yz` (odd `n`) and rewrites the
/// quotient in `X = x², Y = y², Z = z²`.
pub fn schett_reduced(n: usize) -> Result<ReducedSchett> {
    let xn = schett_poly(n, 2)?;
    let (parity, divisor): (Parity, &[(&str, u32)]) =
        if n.is_multiple_of(2) { (Parity::Even, &[("x", 1)]) } else { (Parity::Odd, &[("y", 1), ("z", 1)]) };
    let quotient = xn
        .div_monomial(divisor)
        .map_err(|e| Error::Structure(format!("X_{n} is not divisible as expected: {e}")))?;
    let poly = raw_to_squared(&quotient)
        .map_err(|e| Error::Structure(format!("X_{n} quotient is not even: {e}")))?;
    Ok(ReducedSchett { parity, k: n / 2, poly })
}

/// The reduced polynomials `X̂_{2n+s}` for `n < count`, `s` given by `parity`.
pub fn reduced_sequence(parity: Parity, count: usize) -> Result<Vec<Poly>> {
    (0..count)
        .map(|n| {
            let idx = match parity {
                Parity::Even => 2 * n,
                Parity::Odd => 2 * n + 1,
            };
            schett_reduced(idx).map(|r| r.poly)
        })
        .collect()
}

/// `X_n^{[m+1]}(1, ..., 1)`.
pub fn schett_at_ones(n: usize, m: usize) -> Result<Scalar> {
    let p = schett_poly(n, m)?;
    let ones: Vec<(&str, Scalar)> = p.vars().names().iter().map(|n| (n.as_str(), Scalar::one())).collect();
    let v = p.substitute_scalars(&ones)?;
    Ok(v.as_constant().expect("all variables substituted"))
}
