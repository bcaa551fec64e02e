//! Dense polynomial matrices with explicit truncation metadata, and the
//! band constructors for the production matrices `P`, `Q`, `T`, `L` and the
//! generic quadridiagonal matrix.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{squared_to_raw, Poly, PolyJson, Scalar, VarSet};

/// Band widths of an infinite matrix: nonzero entries satisfy
/// `j + lower >= i` and `i + upper >= j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    pub lower: usize,
    pub upper: usize,
}

/// What a [`PolyMatrix`] stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    /// A finite matrix, complete as stored.
    Finite,
    /// The leading block of an infinite band matrix.
    Leading(Band),
}

/// Which variables carry `x², y², z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarStyle {
    /// Monomials in `x, y, z` with even exponents.
    #[default]
    Raw,
    /// Fresh variables `X, Y, Z`.
    Squared,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    source: String,
    exact_block: usize,
    extent: Extent,
}

impl PolyMatrix {
    /// Finite matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Poly>>, source: impl Into<String>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(PolyMatrix {
            rows: nrows,
            cols: ncols,
            entries,
            source: source.into(),
            exact_block: nrows.min(ncols),
            extent: Extent::Finite,
        })
    }

    /// `rows x cols` leading block of an infinite band matrix given entrywise.
    pub fn from_band_fn(
        size: usize,
        band: Band,
        vars: &VarSet,
        source: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let inside = j + band.lower >= i && i + band.upper >= j;
                entries.push(if inside { f(i, j) } else { Poly::zero(vars) });
            }
        }
        PolyMatrix {
            rows: size,
            cols: size,
            entries,
            source: source.into(),
            exact_block: size,
            extent: Extent::Leading(band),
        }
    }

    /// Leading block of the infinite identity.
    pub fn identity(size: usize, vars: &VarSet) -> Self {
        PolyMatrix::from_band_fn(size, Band { lower: 0, upper: 0 }, vars, "identity", |_, _| Poly::one(vars))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn exact_block(&self) -> usize {
        self.exact_block
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn band(&self) -> Option<Band> {
        match self.extent {
            Extent::Finite => None,
            Extent::Leading(b) => Some(b),
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    /// Replaces one entry; the matrix becomes an ad-hoc finite matrix unless
    /// the replacement stays inside the recorded band.
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if let Extent::Leading(b) = self.extent {
            if !p.is_zero() && !(j + b.lower >= i && i + b.upper >= j) {
                self.extent = Extent::Finite;
            }
        }
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> + '_ {
        self.entries.iter().enumerate().map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    /// Square-ness check used by determinant code.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Leading `size x size` block.
    pub fn leading(&self, size: usize) -> Result<PolyMatrix> {
        if size > self.rows || size > self.cols {
            return Err(Error::Shape(format!(
                "leading {size}x{size} block of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let entries = (0..size).flat_map(|i| self.row(i)[..size].iter().cloned()).collect();
        Ok(PolyMatrix {
            rows: size,
            cols: size,
            entries,
            source: self.source.clone(),
            exact_block: self.exact_block.min(size),
            extent: self.extent,
        })
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
            source: self.source.clone(),
            exact_block: rows.len().min(cols.len()),
            extent: Extent::Finite,
        }
    }

    pub fn map_entries(&self, f: impl FnMut(&Poly) -> Result<Poly>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<_>>()?;
        Ok(PolyMatrix { entries, ..self.clone() })
    }

    pub fn substitute(&self, assignment: &HashMap<String, Poly>) -> Result<PolyMatrix> {
        self.map_entries(|p| p.substitute(assignment))
    }

    /// Entrywise sum; shapes must agree.
    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!("{}x{} + {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        let extent = match (self.band(), other.band()) {
            (Some(a), Some(b)) => {
                Extent::Leading(Band { lower: a.lower.max(b.lower), upper: a.upper.max(b.upper) })
            }
            _ => Extent::Finite,
        };
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            source: "sum".into(),
            exact_block: self.exact_block.min(other.exact_block),
            extent,
        })
    }

    /// True if every nonzero entry lies inside the band.
    pub fn fits_band(&self, band: Band) -> bool {
        self.entries().all(|(i, j, p)| p.is_zero() || (j + band.lower >= i && i + band.upper >= j))
    }

    /// First entry, in row-major order, where `self` and `other` differ on
    /// their common leading `size x size` block.
    pub fn first_mismatch(&self, other: &PolyMatrix, size: usize) -> Result<Option<(usize, usize)>> {
        if size > self.rows.min(self.cols) || size > other.rows.min(other.cols) {
            return Err(Error::Shape(format!(
                "cannot compare {size}x{size} blocks of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok((0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j)))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(PolyJson::from).collect()).collect(),
            source: self.source.clone(),
            exact_block: self.exact_block,
        }
    }

    /// One CSV record per row, each cell the plain rendering of its entry.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for i in 0..self.rows {
            w.write_record(self.row(i).iter().map(|p| p.to_string())).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{pmatrix}\n");
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(Poly::to_latex).collect();
            let _ = writeln!(out, "{} \\\\", cells.join(" & "));
        }
        out.push_str("\\end{pmatrix}");
        out
    }
}

/// Interchange form of a [`PolyMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyJson>>,
    pub source: String,
    pub exact_block: usize,
}

impl TryFrom<&MatrixJson> for PolyMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<PolyMatrix> {
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(Poly::try_from).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = PolyMatrix::from_rows(rows, j.source.clone())?;
        if m.rows != j.rows || m.cols != j.cols {
            return Err(Error::Shape("declared dimensions disagree with entries".into()));
        }
        Ok(m)
    }
}

/// Leading `result_size x result_size` block of the infinite product `A·B`.
///
/// The inner sum is cut at `result_size + min(upper(A), lower(B))`, past
/// which every term vanishes; operands must be at least that large. Two
/// finite operands multiply as ordinary matrices.
pub fn mat_mul_truncated(a: &PolyMatrix, b: &PolyMatrix, result_size: usize) -> Result<PolyMatrix> {
    if result_size > a.rows || result_size > b.cols {
        return Err(Error::Truncation(format!(
            "{result_size}x{result_size} block requested from {}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let pad = match (a.band(), b.band()) {
        (None, None) => None,
        (Some(x), None) => Some(x.upper),
        (None, Some(y)) => Some(y.lower),
        (Some(x), Some(y)) => Some(x.upper.min(y.lower)),
    };
    let inner = match pad {
        None => {
            if a.cols != b.rows {
                return Err(Error::Shape(format!(
                    "finite product {}x{} times {}x{}",
                    a.rows, a.cols, b.rows, b.cols
                )));
            }
            a.cols
        }
        Some(pad) => {
            let needed = result_size + pad;
            if a.cols < needed || b.rows < needed {
                return Err(Error::Truncation(format!(
                    "exact {result_size}x{result_size} product needs inner dimension {needed}, \
                     operands offer {} and {}",
                    a.cols, b.rows
                )));
            }
            needed
        }
    };
    let vars = a.entries.first().map(|p| p.vars().clone()).unwrap_or_else(VarSet::empty);
    let mut entries = Vec::with_capacity(result_size * result_size);
    for i in 0..result_size {
        for j in 0..result_size {
            let mut acc = Poly::zero(&vars);
            for k in 0..inner {
                let (x, y) = (a.get(i, k), b.get(k, j));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&x.checked_mul(y)?)?;
            }
            entries.push(acc);
        }
    }
    let extent = match (a.band(), b.band()) {
        (Some(x), Some(y)) => Extent::Leading(Band { lower: x.lower + y.lower, upper: x.upper + y.upper }),
        _ => Extent::Finite,
    };
    Ok(PolyMatrix {
        rows: result_size,
        cols: result_size,
        entries,
        source: "product".into(),
        exact_block: result_size,
        extent,
    })
}

/// `size x size` Hankel matrix `(seq[i + j])`.
pub fn hankel(seq: &[Poly], size: usize, source: impl Into<String>) -> Result<PolyMatrix> {
    let needed = (2 * size).saturating_sub(1);
    if seq.len() < needed {
        return Err(Error::Length { needed, have: seq.len() });
    }
    let rows = (0..size).map(|i| (0..size).map(|j| seq[i + j].clone()).collect()).collect();
    PolyMatrix::from_rows(rows, source)
}

fn sq_vars() -> (VarSet, Poly, Poly, Poly) {
    let v = VarSet::squared();
    let x = Poly::var(&v, "X").unwrap();
    let y = Poly::var(&v, "Y").unwrap();
    let z = Poly::var(&v, "Z").unwrap();
    (v, x, y, z)
}

fn int(v: &VarSet, n: i64) -> Poly {
    Poly::constant(v, Scalar::from(n))
}

fn styled(m: PolyMatrix, style: VarStyle) -> PolyMatrix {
    match style {
        VarStyle::Squared => m,
        VarStyle::Raw => m.map_entries(squared_to_raw).expect("squared entries convert"),
    }
}

const QUAD: Band = Band { lower: 2, upper: 1 };
const TRI: Band = Band { lower: 1, upper: 1 };
const LOWER_BI: Band = Band { lower: 1, upper: 0 };

/// Even production matrix `P(x, y, z)`.
pub fn build_p(size: usize, style: VarStyle) -> PolyMatrix {
    let (v, x, y, z) = sq_vars();
    let ypz = &y + &z;
    let yz = &y * &z;
    let xyz = &(&x * &y) * &z;
    let m = PolyMatrix::from_band_fn(size, QUAD, &v, "P", |i, j| {
        let n = i as i64;
        if j == i + 1 {
            Poly::one(&v)
        } else if j == i {
            &(&int(&v, (2 * n) * (2 * n)) * &x) + &(&int(&v, (2 * n + 1) * (2 * n + 1)) * &ypz)
        } else if j + 1 == i {
            let inner = &(&int(&v, 2 * n - 1) * &(&x * &ypz)) + &(&int(&v, 2 * n + 1) * &yz);
            &int(&v, (2 * n) * (2 * n) * (2 * n - 1)) * &inner
        } else {
            let c = (2 * n) * (2 * n) * (2 * n - 2) * (2 * n - 2) * (2 * n - 1) * (2 * n - 3);
            &int(&v, c) * &xyz
        }
    });
    styled(m, style)
}

/// Odd production matrix `Q(x, y, z)`.
pub fn build_q(size: usize, style: VarStyle) -> PolyMatrix {
    let (v, x, y, z) = sq_vars();
    let ypz = &y + &z;
    let yz = &y * &z;
    let xyz = &(&x * &y) * &z;
    let m = PolyMatrix::from_band_fn(size, QUAD, &v, "Q", |i, j| {
        let n = i as i64;
        if j == i + 1 {
            Poly::one(&v)
        } else if j == i {
            &(&int(&v, (2 * n + 2) * (2 * n + 2)) * &x) + &(&int(&v, (2 * n + 1) * (2 * n + 1)) * &ypz)
        } else if j + 1 == i {
            let inner = &(&int(&v, 2 * n + 1) * &(&x * &ypz)) + &(&int(&v, 2 * n - 1) * &yz);
            &int(&v, (2 * n) * (2 * n) * (2 * n + 1)) * &inner
        } else {
            let c = (2 * n) * (2 * n) * (2 * n - 2) * (2 * n - 2) * (2 * n + 1) * (2 * n - 1);
            &int(&v, c) * &xyz
        }
    });
    styled(m, style)
}

/// Tridiagonal `T(y, z) = P(0, y, z) = Q(0, y, z)`.
pub fn build_t(size: usize, style: VarStyle) -> PolyMatrix {
    let (v, _, y, z) = sq_vars();
    let ypz = &y + &z;
    let yz = &y * &z;
    let m = PolyMatrix::from_band_fn(size, TRI, &v, "T", |i, j| {
        let n = i as i64;
        if j == i + 1 {
            Poly::one(&v)
        } else if j == i {
            &int(&v, (2 * n + 1) * (2 * n + 1)) * &ypz
        } else {
            &int(&v, 4 * n * n * (4 * n * n - 1)) * &yz
        }
    });
    styled(m, style)
}

/// Lower-bidiagonal `L(x)` with unit diagonal and `4n² x²` below it.
pub fn build_l(size: usize, style: VarStyle) -> PolyMatrix {
    let (v, x, _, _) = sq_vars();
    let m = PolyMatrix::from_band_fn(size, LOWER_BI, &v, "L", |i, j| {
        if i == j {
            Poly::one(&v)
        } else {
            let n = i as i64;
            &int(&v, 4 * n * n) * &x
        }
    });
    styled(m, style)
}

/// Indeterminates of the generic quadridiagonal matrix at truncation `size`.
pub fn generic_vars(size: usize) -> VarSet {
    let mut names: Vec<String> = ["alpha", "beta", "xi", "eta"].map(String::from).to_vec();
    for (stem, start) in [("a", 0), ("b", 1), ("c", 1), ("d", 0), ("e", 0), ("f", 0)] {
        names.extend((start..size).map(|n| format!("{stem}{n}")));
    }
    VarSet::new(names).expect("distinct names")
}

/// `L1·L2·U + L1·D1 + L2·D2` with `L1 = αI + ξL`, `L2 = βI + ηL`, where `L`
/// carries `a_n` / `b_n`, `U` carries `d_n` / `c_n`, and `D1`, `D2` are
/// diagonal in `e_n`, `f_n`.
pub fn build_generic_quad(size: usize) -> Result<PolyMatrix> {
    if size == 0 {
        return Err(Error::Validation("generic matrix needs size >= 1".into()));
    }
    let v = generic_vars(size);
    let var = |name: String| Poly::var(&v, &name).expect("declared indeterminate");
    let (alpha, beta, xi, eta) =
        (var("alpha".into()), var("beta".into()), var("xi".into()), var("eta".into()));
    let l = PolyMatrix::from_band_fn(size, LOWER_BI, &v, "L", |i, j| {
        if i == j {
            var(format!("a{i}"))
        } else {
            var(format!("b{i}"))
        }
    });
    let u = PolyMatrix::from_band_fn(size, Band { lower: 0, upper: 1 }, &v, "U", |i, j| {
        if i == j {
            var(format!("d{i}"))
        } else {
            var(format!("c{j}"))
        }
    });
    let diag = |stem: &str| {
        PolyMatrix::from_band_fn(size, Band { lower: 0, upper: 0 }, &v, "D", |i, _| var(format!("{stem}{i}")))
    };
    let (d1, d2) = (diag("e"), diag("f"));
    let id = PolyMatrix::identity(size, &v);
    let scaled = |m: &PolyMatrix, s: &Poly| m.map_entries(|p| p.checked_mul(s));
    let l1 = scaled(&id, &alpha)?.add(&scaled(&l, &xi)?)?;
    let l2 = scaled(&id, &beta)?.add(&scaled(&l, &eta)?)?;
    let l1l2 = mat_mul_truncated(&l1, &l2, size)?;
    let first = mat_mul_truncated(&l1l2, &u, size)?;
    let second = mat_mul_truncated(&l1, &d1, size)?;
    let third = mat_mul_truncated(&l2, &d2, size)?;
    Ok(first.add(&second)?.add(&third)?.with_source("generic"))
}

/// Applies the substitutions that turn the generic matrix (with `d = 0`)
/// into `T`: `α = β = 1`, `ξ = y²`, `η = z²`, `a_n = 0`, `b_n = 2n(2n+1)`,
/// `c_n = 1`, `e_n = (2n+1) z²`, `f_n = (2n+1) y²`.
pub fn specialize_generic_to_t(size: usize) -> Result<PolyMatrix> {
    let generic = build_generic_quad(size)?;
    let raw = VarSet::xyz();
    let y2 = Poly::var(&raw, "y")?.pow(2);
    let z2 = Poly::var(&raw, "z")?.pow(2);
    let k = |n: i64| Poly::constant(&raw, Scalar::from(n));
    let mut map: HashMap<String, Poly> = HashMap::new();
    map.insert("alpha".into(), k(1));
    map.insert("beta".into(), k(1));
    map.insert("xi".into(), y2.clone());
    map.insert("eta".into(), z2.clone());
    for n in 0..size as i64 {
        map.insert(format!("a{n}"), k(0));
        map.insert(format!("d{n}"), k(0));
        map.insert(format!("e{n}"), &k(2 * n + 1) * &z2);
        map.insert(format!("f{n}"), &k(2 * n + 1) * &y2);
        if n >= 1 {
            map.insert(format!("b{n}"), k(2 * n * (2 * n + 1)));
            map.insert(format!("c{n}"), k(1));
        }
    }
    let t = generic.map_entries(|p| p.substitute(&map)?.with_vars(&raw))?;
    Ok(t.with_source("generic-specialized-T"))
}
