use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{Scalar, VarSet};

/// Exponent vector over some [`VarSet`], ordered graded-lexicographically:
/// total degree first, then exponents compared from the first variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    fn remap(&self, map: &[usize], len: usize) -> Monomial {
        let mut exps = vec![0; len];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] = e;
        }
        Monomial { degree: self.degree, exps }
    }
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by [`Monomial`]; no zero coefficient is ever
/// stored. Iteration via [`Poly::terms`] yields the canonical order (descending
/// graded-lex), which is also the serialization order.
#[derive(Clone)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: impl Into<Scalar>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Poly { vars: vars.clone(), terms }
    }

    pub fn one(vars: &VarSet) -> Self {
        Poly::constant(vars, Scalar::one())
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let idx = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Poly::monomial(vars, Monomial::new(exps), Scalar::one()))
    }

    /// `coeff * m`; `m` must have one exponent per variable of `vars`.
    pub fn monomial(vars: &VarSet, m: Monomial, coeff: impl Into<Scalar>) -> Self {
        assert_eq!(m.exps.len(), vars.len(), "monomial length must match the variable set");
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Poly { vars: vars.clone(), terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut acc = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} over {} variables",
                    exps.len(),
                    vars.len()
                )));
            }
            accumulate(&mut acc, Monomial::new(exps), c);
        }
        Ok(Poly { vars: vars.clone(), terms: acc })
    }

    /// Product of named variables with exponents, e.g. `[("y", 1), ("z", 1)]`.
    pub fn monomial_from_names(vars: &VarSet, factors: &[(&str, u32)]) -> Result<Self> {
        let m = named_monomial(vars, factors)?;
        Ok(Poly::monomial(vars, m, Scalar::one()))
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn degree(&self) -> Degree {
        self.terms.keys().next_back().map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree))
    }

    /// True for the zero polynomial and for polynomials whose terms all share one degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m.degree == first.degree),
        }
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let idx = self.vars.index_of(name)?;
        self.terms.keys().map(|m| m.exps[idx]).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Monomial::one(self.vars.len())).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the monomial given by name/exponent pairs.
    pub fn coeff_of(&self, factors: &[(&str, u32)]) -> Result<Scalar> {
        let m = named_monomial(&self.vars, factors)?;
        Ok(self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero))
    }

    /// Returns the scalar value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Every stored coefficient is `>= 0`.
    pub fn is_coeff_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Scalar::is_integer)
    }

    /// Re-expresses this polynomial over `vars`, which must contain every
    /// variable that occurs with a nonzero exponent.
    pub fn with_vars(&self, vars: &VarSet) -> Result<Poly> {
        if self.vars.same_as(vars) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps.iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        for (i, name) in self.vars.names().iter().enumerate() {
            match vars.index_of(name) {
                Some(j) => map.push(j),
                None if !used[i] => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0; vars.len()];
                for (i, &e) in m.exps.iter().enumerate() {
                    if e > 0 {
                        exps[map[i]] = e;
                    }
                }
                (Monomial { degree: m.degree, exps }, c.clone())
            })
            .collect();
        Ok(Poly { vars: vars.clone(), terms })
    }

    fn aligned(&self, other: &Poly) -> Result<(VarSet, Poly, Poly)> {
        if self.vars.same_as(&other.vars) {
            return Ok((self.vars.clone(), self.clone(), other.clone()));
        }
        let (joint, lm, rm) = self.vars.union(&other.vars)?;
        Ok((joint.clone(), self.remapped(&joint, &lm), other.remapped(&joint, &rm)))
    }

    fn remapped(&self, joint: &VarSet, map: &[usize]) -> Poly {
        if self.vars.same_as(joint) {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map, joint.len()), c.clone())).collect();
        Poly { vars: joint.clone(), terms }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        if !self.vars.same_as(&other.vars) {
            let (_, a, b) = self.aligned(other)?;
            return a.checked_add(&b);
        }
        let (mut big, small) =
            if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            accumulate(&mut big.terms, m.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if !self.vars.same_as(&other.vars) {
            let (_, a, b) = self.aligned(other)?;
            return a.checked_mul(&b);
        }
        if self.is_integral() && other.is_integral() {
            return Ok(self.mul_integral(other));
        }
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Ok(Poly { vars: self.vars.clone(), terms: acc })
    }

    /// Product of two integer-coefficient polynomials over the same variables,
    /// accumulated in place on plain integers (no rational normalization).
    fn mul_integral(&self, other: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            let a = ca.numer();
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += a * cb.numer();
            }
        }
        let terms =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Scalar::from(c))).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    fn neg_ref(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `name`.
    pub fn partial(&self, name: &str) -> Result<Poly> {
        let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[idx] -= 1;
            let dm = Monomial { degree: m.degree - 1, exps };
            accumulate(&mut acc, dm, c * &Scalar::from(e as u64));
        }
        Ok(Poly { vars: self.vars.clone(), terms: acc })
    }

    /// Image under the ring homomorphism sending each assigned variable to its
    /// image polynomial; unassigned variables map to themselves.
    pub fn substitute(&self, assignment: &HashMap<String, Poly>) -> Result<Poly> {
        if assignment.is_empty() {
            return Ok(self.clone());
        }
        let mut images: Vec<Option<&Poly>> = vec![None; self.vars.len()];
        for (name, image) in assignment {
            let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            images[idx] = Some(image);
        }
        // Joint target: free variables of `self`, then every image's variables.
        let mut target = self.vars.clone();
        for image in images.iter().flatten() {
            target = target.union(image.vars())?.0;
        }
        let images: Vec<Option<Poly>> = images
            .into_iter()
            .map(|img| img.map(|p| p.with_vars(&target)).transpose())
            .collect::<Result<_>>()?;
        let self_in_target = self.remapped(&target, &(0..self.vars.len()).collect::<Vec<_>>());

        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut result = Poly::zero(&target);
        for (m, c) in self_in_target.terms.iter() {
            let mut free = m.exps.clone();
            let mut term = Poly::one(&target);
            for (i, image) in images.iter().enumerate() {
                let e = m.exps[i];
                if let (Some(image), true) = (image, e > 0) {
                    free[i] = 0;
                    let p = powers.entry((i, e)).or_insert_with(|| image.pow(e));
                    term = &term * p;
                }
            }
            let mono = Poly::monomial(&target, Monomial::new(free), c.clone());
            result = &result + &(&term * &mono);
        }
        Ok(result)
    }

    /// Convenience wrapper around [`Poly::substitute`] for scalar values.
    pub fn substitute_scalars(&self, assignment: &[(&str, Scalar)]) -> Result<Poly> {
        let map = assignment
            .iter()
            .map(|(n, s)| (n.to_string(), Poly::constant(&VarSet::empty(), s.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Exact quotient by the monomial given by name/exponent pairs.
    pub fn div_monomial(&self, factors: &[(&str, u32)]) -> Result<Poly> {
        let d = named_monomial(&self.vars, factors)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exps.iter().zip(&d.exps).any(|(a, b)| a < b) {
                return Err(Error::Divisibility {
                    term: fmt_monomial(&self.vars, m).unwrap_or_else(|| "1".into()),
                    divisor: fmt_monomial(&self.vars, &d).unwrap_or_else(|| "1".into()),
                });
            }
            let exps = m.exps.iter().zip(&d.exps).map(|(a, b)| a - b).collect();
            terms.insert(Monomial { degree: m.degree - d.degree, exps }, c.clone());
        }
        Ok(Poly { vars: self.vars.clone(), terms })
    }

    /// Applies `f` to every coefficient, dropping results that become zero.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Terms keyed by `(name, exponent)` lists of nonzero exponents; used to
    /// compare polynomials whose variable sets disagree on order.
    fn named_terms(&self) -> BTreeMap<Vec<(&str, u32)>, &Scalar> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut key: Vec<(&str, u32)> = m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.vars.names()[i].as_str(), e))
                    .collect();
                key.sort_unstable();
                (key, c)
            })
            .collect()
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn named_monomial(vars: &VarSet, factors: &[(&str, u32)]) -> Result<Monomial> {
    let mut exps = vec![0; vars.len()];
    for &(name, e) in factors {
        let idx = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        exps[idx] += e;
    }
    Ok(Monomial::new(exps))
}

/// Plain rendering `x^2*y`; `None` for the unit monomial.
pub(crate) fn fmt_monomial(vars: &VarSet, m: &Monomial) -> Option<String> {
    let parts: Vec<String> = m
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = &vars.names()[i];
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        if self.vars.same_as(&other.vars) {
            return self.terms == other.terms;
        }
        if self.len() != other.len() {
            return false;
        }
        match self.aligned(other) {
            Ok((_, a, b)) => a.terms == b.terms,
            Err(_) => self.named_terms() == other.named_terms(),
        }
    }
}

impl Eq for Poly {}

/// Plain text, e.g. `4*x^2*y*z + y^3*z - 1/2*z`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let (neg, abs) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match fmt_monomial(&self.vars, m) {
                None => write!(f, "{abs}")?,
                Some(mono) if abs.is_one() => f.write_str(&mono)?,
                Some(mono) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// Operator forms panic when variable sets order shared names differently;
// use the `checked_*` methods where that can happen.
impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("incompatible variable sets")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("incompatible variable sets")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("incompatible variable sets")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}
