//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Everything in this crate that needs a rank, a kernel or a membership
//! test goes through here: invariants are kernels of stacked adjoint
//! operators, bracket spans are row spaces of generator lists, and the
//! defect witnesses are solutions of `generators · w = v`.
//!
//! Matrices are dense and row-major. The dimensions that show up in practice
//! (graded components of `S(g)` up to degree eight or so) are in the low
//! hundreds, where dense Gauss–Jordan with zero-skipping is plenty.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with decimal integers. Anything else (decimal
/// points, exponents, a zero denominator) is rejected.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("`{s}` is not a decimal-integer fraction"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            check_dim(cols, row.len())?;
            data.extend(row);
        }
        Ok(RationalMatrix { rows: n, cols, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(cols, data).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Q) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `row -= factor * pivot_row`, skipping zeros of the pivot row.
fn axpy_neg(row: &mut [Q], factor: &Q, pivot_row: &[Q]) {
    for (x, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *x -= factor * p;
        }
    }
}

/// Reduced row-echelon form and its pivot columns.
///
/// The result keeps the input shape: rank-deficient inputs end with zero rows.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let factor = row[col].clone();
                axpy_neg(row, &factor, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    let out = RationalMatrix::from_rows(m.cols, rows).expect("shape preserved");
    (out, pivots)
}

/// Canonical basis of the right null space.
///
/// One vector per free column `f` of the RREF: a `1` at `f` and the negated
/// RREF column at the pivots. The returned subspace keeps these vectors as
/// its spanning set.
pub fn kernel_basis(m: &RationalMatrix) -> SubspaceBasis {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); m.cols];
        v[free] = Q::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free).clone();
        }
        vectors.push(v);
    }
    SubspaceBasis::from_spanning_set(m.cols, vectors).expect("kernel vectors have ambient length")
}

/// An exact basis of a subspace, stored in RREF next to the spanning set it
/// was built from so that membership witnesses can be expressed over the
/// original generators.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    generators: Vec<Vec<Q>>,
    basis_rows: Vec<Vec<Q>>,
    pivot_cols: Vec<usize>,
    /// Indices into `generators` of a maximal independent subset.
    independent: Vec<usize>,
    /// `basis_rows[r] = Σ_t combos[r][t] · generators[independent[t]]`.
    combos: Vec<Vec<Q>>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            generators: Vec::new(),
            basis_rows: Vec::new(),
            pivot_cols: Vec::new(),
            independent: Vec::new(),
            combos: Vec::new(),
        }
    }

    /// Incrementally row-reduces the spanning set, keeping the basis fully
    /// reduced after every insertion.
    pub fn from_spanning_set(ambient_dim: usize, generators: Vec<Vec<Q>>) -> Result<Self> {
        for g in &generators {
            check_dim(ambient_dim, g.len())?;
        }
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut combos: Vec<Vec<Q>> = Vec::new();
        let mut independent: Vec<usize> = Vec::new();

        for (gi, g) in generators.iter().enumerate() {
            // rows are fully reduced, so the elimination factors are just the
            // generator's own entries at the pivot columns
            let factors: Vec<(usize, Q)> = pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| !g[p].is_zero())
                .map(|(r, &p)| (r, g[p].clone()))
                .collect();
            let mut residue = g.clone();
            for (r, f) in &factors {
                axpy_neg(&mut residue, f, &rows[*r]);
            }
            let Some(pivot) = residue.iter().position(|x| !x.is_zero()) else {
                continue;
            };

            let t = independent.len();
            independent.push(gi);
            for c in combos.iter_mut() {
                c.push(Q::zero());
            }
            let mut combo = vec![Q::zero(); t + 1];
            combo[t] = Q::one();
            for (r, f) in &factors {
                axpy_neg(&mut combo, f, &combos[*r]);
            }

            let inv = residue[pivot].recip();
            for x in residue.iter_mut().chain(combo.iter_mut()) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            for r in 0..rows.len() {
                if !rows[r][pivot].is_zero() {
                    let f = rows[r][pivot].clone();
                    axpy_neg(&mut rows[r], &f, &residue);
                    axpy_neg(&mut combos[r], &f, &combo);
                }
            }
            let at = pivots.partition_point(|&p| p < pivot);
            pivots.insert(at, pivot);
            rows.insert(at, residue);
            combos.insert(at, combo);
        }

        Ok(SubspaceBasis {
            ambient_dim,
            generators,
            basis_rows: rows,
            pivot_cols: pivots,
            independent,
            combos,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis_rows.len()
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    pub fn basis_rows(&self) -> &[Vec<Q>] {
        &self.basis_rows
    }

    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_rows(self.ambient_dim, self.basis_rows.clone()).expect("shape")
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Q]) -> Result<Vec<Q>> {
        check_dim(self.ambient_dim, v.len())?;
        let mut residue = v.to_vec();
        for (row, &p) in self.basis_rows.iter().zip(&self.pivot_cols) {
            if !v[p].is_zero() {
                axpy_neg(&mut residue, &v[p], row);
            }
        }
        Ok(residue)
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Coefficients over the original spanning set reconstructing `v`, or
    /// `None` when `v` is outside the span.
    pub fn membership(&self, v: &[Q]) -> Result<Option<Vec<Q>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        let mut witness = vec![Q::zero(); self.generators.len()];
        for (r, &p) in self.pivot_cols.iter().enumerate() {
            let y = &v[p];
            if y.is_zero() {
                continue;
            }
            for (t, c) in self.combos[r].iter().enumerate() {
                if !c.is_zero() {
                    witness[self.independent[t]] += y * c;
                }
            }
        }
        debug_assert_eq!(self.combine(&witness), v);
        Ok(Some(witness))
    }

    /// `Σ_i w_i · generators[i]`.
    pub fn combine(&self, witness: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.ambient_dim];
        for (w, g) in witness.iter().zip(&self.generators) {
            if !w.is_zero() {
                for (o, x) in out.iter_mut().zip(g) {
                    if !x.is_zero() {
                        *o += w * x;
                    }
                }
            }
        }
        out
    }

    /// Dimension of the intersection with another subspace of the same
    /// ambient space.
    pub fn intersection_dim(&self, other: &SubspaceBasis) -> Result<usize> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let joint: Vec<Vec<Q>> = self.basis_rows.iter().chain(&other.basis_rows).cloned().collect();
        let sum = SubspaceBasis::from_spanning_set(self.ambient_dim, joint)?;
        Ok(self.dim() + other.dim() - sum.dim())
    }
}
