//! Dense square matrices over F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, PrimeModulus};
use crate::poly::FpPoly;

/// An `n x n` matrix over F_p stored row-major with every entry in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    modulus: PrimeModulus,
    n: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(modulus: PrimeModulus, n: usize) -> Self {
        Self {
            modulus,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        Self::scalar(modulus, n, 1)
    }

    /// `c * I_n`.
    pub fn scalar(modulus: PrimeModulus, n: usize, c: u32) -> Self {
        let c = c % modulus.value();
        let mut m = Self::zeros(modulus, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_fn(modulus: PrimeModulus, n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(modulus.reduce(f(i, j)));
            }
        }
        Self { modulus, n, data }
    }

    /// Builds a matrix from rows, reducing every entry mod p.
    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(Self::from_fn(modulus, n, |i, j| rows[i][j]))
    }

    /// Takes ownership of a row-major buffer of residues in `[0, p)`.
    pub fn from_data(modulus: PrimeModulus, n: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if data.iter().any(|&x| x >= modulus.value()) {
            return Err(Error::InvalidInput("entry not reduced mod p".into()));
        }
        Ok(Self { modulus, n, data })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(modulus: PrimeModulus, cols: &[Vec<u32>]) -> Self {
        let n = cols.len();
        Self::from_fn(modulus, n, |i, j| u64::from(cols[j][i]))
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated low coefficients in the last column.
    pub fn companion(f: &FpPoly) -> Result<Self> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        if !f.is_monic() {
            return Err(Error::InvalidInput("companion matrix needs a monic polynomial".into()));
        }
        let p = f.modulus();
        let mut m = Self::zeros(p, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, p.neg(f.coeff(i)));
        }
        Ok(m)
    }

    /// The elementary matrix with a single one at `(i, j)`.
    pub fn unit(modulus: PrimeModulus, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(modulus, n);
        m.set(i, j, 1);
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v % self.modulus.value();
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar::new(u64::from(self.get(i, j)), self.modulus)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus, self.n)
    }

    /// Returns `c` if the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<u32> {
        let c = if self.n == 0 { 0 } else { self.get(0, 0) };
        (*self == Self::scalar(self.modulus, self.n, c)).then_some(c)
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                expected: self.modulus.value(),
                found: other.modulus.value(),
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let p = self.modulus;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| p.add(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let p = self.modulus;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| p.sub(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let p = self.modulus;
        let pm = u64::from(p.value());
        let max_term = (pm - 1) * (pm - 1);
        // how many products fit in a u64 accumulator before reduction
        let budget = (u64::MAX - pm)
            .checked_div(max_term)
            .map_or(usize::MAX, |b| b.min(usize::MAX as u64) as usize);
        let mut data = vec![0u32; n * n];
        let mut acc = vec![0u64; n];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..n {
                let a = u64::from(self.data[i * n + k]);
                if a == 0 {
                    continue;
                }
                if pending == budget {
                    acc.iter_mut().for_each(|x| *x %= pm);
                    pending = 1;
                } else {
                    pending += 1;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * u64::from(b);
                }
            }
            for (d, &x) in data[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *d = (x % pm) as u32;
            }
        }
        Self {
            modulus: p,
            n,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.modulus;
        let c = c % p.value();
        Self {
            data: self.data.iter().map(|&a| p.mul(a, c)).collect(),
            ..*self
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self::from_fn(self.modulus, n, |i, j| u64::from(self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.n);
        let p = self.modulus;
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        row_reduce(self.modulus, &mut work, self.n, self.n, self.n).len()
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let p = self.modulus;
        let w = 2 * n;
        let mut aug = vec![0u32; n * w];
        for i in 0..n {
            aug[i * w..i * w + n].copy_from_slice(&self.data[i * n..(i + 1) * n]);
            aug[i * w + n + i] = 1 % p.value();
        }
        let pivots = row_reduce(p, &mut aug, n, w, n);
        if pivots.len() < n {
            return Err(Error::Singular { rank: pivots.len() });
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            data.extend_from_slice(&aug[i * w + n..(i + 1) * w]);
        }
        Ok(Self { modulus: p, n, data })
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// `A^e` by square-and-multiply; `A^0 = I`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.modulus, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `P^{-1} A P`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        let inv = p.inverse()?;
        inv.try_mul(self)?.try_mul(p)
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &FpPoly) -> Self {
        assert_eq!(f.modulus(), self.modulus);
        let mut acc = Self::zeros(self.modulus, self.n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self);
            for i in 0..self.n {
                let d = &mut acc.data[i * self.n + i];
                *d = self.modulus.add(*d, c);
            }
        }
        acc
    }

    /// The relative trace `sum_{i < l/k} A^(q^i)` with `q = p^k`.
    pub fn relative_trace(&self, l: usize, k: usize) -> Result<Self> {
        if k == 0 || l % k != 0 {
            return Err(Error::NonDivisor { l, k });
        }
        let p = u64::from(self.modulus.value());
        let mut term = self.clone();
        let mut sum = self.clone();
        for _ in 1..l / k {
            for _ in 0..k {
                term = term.pow(p);
            }
            sum = &sum + &term;
        }
        Ok(sum)
    }

    /// Minimal polynomial of `A`: the lcm over the standard basis vectors of
    /// the local minimal polynomials found from their Krylov sequences.
    pub fn minimal_polynomial(&self) -> FpPoly {
        let p = self.modulus;
        let n = self.n;
        let mut acc = FpPoly::one(p);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            if self.apply_poly(&acc, &e).iter().all(|&x| x == 0) {
                continue;
            }
            let local = self.local_minimal_polynomial(e);
            acc = acc.lcm(&local);
            if acc.degree() == Some(n) {
                break;
            }
        }
        acc
    }

    /// `f(A) v` without forming `f(A)`.
    fn apply_poly(&self, f: &FpPoly, v: &[u32]) -> Vec<u32> {
        let p = self.modulus;
        let mut acc = vec![0u32; self.n];
        for &c in f.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = p.add(*a, p.mul(c, x));
            }
        }
        acc
    }

    /// Monic generator of the annihilator of `v` in F_p[x].
    fn local_minimal_polynomial(&self, v: Vec<u32>) -> FpPoly {
        let p = self.modulus;
        // reduced Krylov vectors with their pivot and the polynomial that produced them
        let mut rows: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
        let mut w = v;
        for k in 0..=self.n {
            let mut vec = w.clone();
            let mut combo = vec![0u32; k + 1];
            combo[k] = 1;
            for (pivot, rv, rc) in &rows {
                let c = vec[*pivot];
                if c == 0 {
                    continue;
                }
                for (x, &y) in vec.iter_mut().zip(rv) {
                    *x = p.sub(*x, p.mul(c, y));
                }
                for (x, &y) in combo.iter_mut().zip(rc) {
                    *x = p.sub(*x, p.mul(c, y));
                }
            }
            match vec.iter().position(|&x| x != 0) {
                None => return FpPoly::from_residues(p, combo),
                Some(pivot) => {
                    let inv = p.inv(vec[pivot]).expect("nonzero pivot");
                    vec.iter_mut().for_each(|x| *x = p.mul(*x, inv));
                    combo.iter_mut().for_each(|x| *x = p.mul(*x, inv));
                    rows.push((pivot, vec, combo));
                }
            }
            w = self.mul_vec(&w);
        }
        unreachable!("Krylov sequence of length n + 1 is always dependent")
    }
}

/// Row-reduces the leftmost `pivot_cols` columns of a `rows x cols` buffer to
/// reduced echelon form and returns the pivot `(row, column)` positions.
fn row_reduce(
    p: PrimeModulus,
    a: &mut [u32],
    rows: usize,
    cols: usize,
    pivot_cols: usize,
) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if sel != r {
            for j in 0..cols {
                a.swap(sel * cols + j, r * cols + j);
            }
        }
        let inv = p.inv(a[r * cols + c]).expect("nonzero pivot");
        for j in c..cols {
            a[r * cols + j] = p.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let v = p.mul(f, a[r * cols + j]);
                a[i * cols + j] = p.sub(a[i * cols + j], v);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Coordinates of `a` in the span of `basis` (matrices flattened to length
/// `n^2`), or `None` if `a` is not in the span. Free coordinates are zero.
pub fn span_membership(a: &FpMatrix, basis: &[FpMatrix]) -> Result<Option<Vec<u32>>> {
    for b in basis {
        a.ensure_compatible(b)?;
    }
    let p = a.modulus;
    let rows = a.n * a.n;
    let t = basis.len();
    let cols = t + 1;
    let mut sys = vec![0u32; rows * cols];
    for (j, b) in basis.iter().enumerate() {
        for (i, &x) in b.data.iter().enumerate() {
            sys[i * cols + j] = x;
        }
    }
    for (i, &x) in a.data.iter().enumerate() {
        sys[i * cols + t] = x;
    }
    let pivots = row_reduce(p, &mut sys, rows, cols, cols);
    if pivots.iter().any(|&(_, c)| c == t) {
        return Ok(None);
    }
    let mut coords = vec![0u32; t];
    for (r, c) in pivots {
        coords[c] = sys[r * cols + t];
    }
    Ok(Some(coords))
}

/// Recombines span coordinates into a matrix.
pub fn combine(basis: &[FpMatrix], coords: &[u32]) -> Option<FpMatrix> {
    let first = basis.first()?;
    let mut acc = FpMatrix::zeros(first.modulus, first.n);
    for (b, &c) in basis.iter().zip(coords) {
        if c != 0 {
            acc = &acc + &b.scale(c);
        }
    }
    Some(acc)
}

impl Add for &FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_add(rhs).expect("incompatible matrices")
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_sub(rhs).expect("incompatible matrices")
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_mul(rhs).expect("incompatible matrices")
    }
}

impl Neg for &FpMatrix {
    type Output = FpMatrix;
    fn neg(self) -> FpMatrix {
        let p = self.modulus;
        FpMatrix {
            data: self.data.iter().map(|&a| p.neg(a)).collect(),
            ..*self
        }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {:?})", self.modulus, self.to_rows())
    }
}
