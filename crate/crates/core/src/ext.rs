//! An explicit model of F_{p^n} as F_p[x]/(f) with the polynomial basis
//! `1, x, ..., x^{n-1}`.
//!
//! Elements are plain coordinate vectors; every operation goes through the
//! context so the modulus and the precomputed Frobenius matrices are shared.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::PrimeModulus;
use crate::matrix::FpMatrix;
use crate::poly::{find_irreducible, FpPoly};

/// Largest extension degree accepted by [`ExtFieldCtx`].
pub const MAX_EXTENSION_DEGREE: usize = 64;

/// An element of F_{p^n} in coordinates w.r.t. the context basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem {
    coords: Vec<u32>,
}

impl ExtElem {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// F_p[x]/(f) for a monic irreducible `f` of degree `n`.
#[derive(Clone)]
pub struct ExtFieldCtx {
    p: PrimeModulus,
    n: usize,
    modulus: FpPoly,
    // frob[k] is the matrix of y -> y^(p^k), 0 <= k < n
    frob: Vec<FpMatrix>,
}

impl fmt::Debug for ExtFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtFieldCtx")
            .field("p", &self.p)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for ExtFieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for ExtFieldCtx {}

impl ExtFieldCtx {
    /// Context over the given modulus, which must be monic and irreducible.
    pub fn new(modulus: FpPoly) -> Result<Self> {
        let n = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 || n > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidInput(format!(
                "extension degree {n} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidInput("modulus must be monic".into()));
        }
        if !modulus.is_irreducible()? {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus} is reducible"
            )));
        }
        let p = modulus.modulus();
        let mut ctx = Self {
            p,
            n,
            modulus,
            frob: Vec::new(),
        };
        ctx.frob = ctx.frobenius_matrices();
        Ok(ctx)
    }

    /// Context over the deterministic modulus `find_irreducible(p, n)`.
    pub fn with_degree(p: PrimeModulus, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidInput(format!(
                "extension degree {n} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        Self::new(find_irreducible(p, n))
    }

    fn frobenius_matrices(&self) -> Vec<FpMatrix> {
        let x = FpPoly::x(self.p);
        let xp = x
            .pow_mod(u64::from(self.p.value()), &self.modulus)
            .expect("modulus is nonzero");
        // column i holds (x^i)^p = (x^p)^i
        let mut cols = Vec::with_capacity(self.n);
        let mut acc = FpPoly::one(self.p);
        for _ in 0..self.n {
            cols.push(self.poly_to_coords(&acc));
            acc = (&acc * &xp).rem(&self.modulus).expect("modulus is nonzero");
        }
        let f = FpMatrix::from_columns(self.p, &cols);
        let mut out = Vec::with_capacity(self.n);
        let mut m = FpMatrix::identity(self.p, self.n);
        for _ in 0..self.n {
            let next = &f * &m;
            out.push(m);
            m = next;
        }
        out
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// `p^n`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        u64::from(self.p.value()).checked_pow(self.n as u32)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coords: vec![0; self.n],
        }
    }

    pub fn one(&self) -> ExtElem {
        self.from_scalar(1)
    }

    pub fn from_scalar(&self, c: u32) -> ExtElem {
        let mut e = self.zero();
        e.coords[0] = c % self.p.value();
        e
    }

    /// The `i`-th basis element `x^i`.
    pub fn basis(&self, i: usize) -> ExtElem {
        let mut e = self.zero();
        e.coords[i] = 1;
        e
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> ExtElem {
        self.from_poly(&FpPoly::x(self.p))
    }

    /// Validated construction; coordinates must be residues in `[0, p)`.
    pub fn elem(&self, coords: Vec<u32>) -> Result<ExtElem> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: coords.len(),
            });
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.p.value()) {
            return Err(Error::InvalidInput(format!(
                "coordinate {c} is not a residue mod {}",
                self.p
            )));
        }
        Ok(ExtElem { coords })
    }

    /// Construction reducing arbitrary integers mod p.
    pub fn elem_reduced(&self, coords: impl IntoIterator<Item = u64>) -> Result<ExtElem> {
        let coords: Vec<u32> = coords.into_iter().map(|c| self.p.reduce(c)).collect();
        self.elem(coords)
    }

    pub fn from_poly(&self, f: &FpPoly) -> ExtElem {
        let r = f.rem(&self.modulus).expect("modulus is nonzero");
        ExtElem {
            coords: self.poly_to_coords(&r),
        }
    }

    pub fn to_poly(&self, a: &ExtElem) -> FpPoly {
        FpPoly::from_residues(self.p, a.coords.clone())
    }

    fn poly_to_coords(&self, f: &FpPoly) -> Vec<u32> {
        let mut coords = vec![0; self.n];
        for (c, &v) in coords.iter_mut().zip(f.coeffs()) {
            *c = v;
        }
        coords
    }

    /// The element whose coordinates are the base-p digits of `index`,
    /// coordinate 0 least significant.
    pub fn from_index(&self, mut index: u64) -> ExtElem {
        let p = u64::from(self.p.value());
        let mut coords = vec![0; self.n];
        for c in coords.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
        ExtElem { coords }
    }

    /// Inverse of [`Self::from_index`].
    pub fn index_of(&self, a: &ExtElem) -> u64 {
        let p = u64::from(self.p.value());
        a.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + u64::from(c))
    }

    /// Number of lines through the origin, `(p^n - 1)/(p - 1)`.
    pub fn projective_count(&self) -> Option<u64> {
        Some((self.order()? - 1) / (u64::from(self.p.value()) - 1))
    }

    /// The `index`-th representative with first nonzero coordinate 1.
    ///
    /// Representatives are grouped by the position of the leading one, from
    /// the last coordinate down to the first.
    pub fn projective_rep(&self, mut index: u64) -> ExtElem {
        let p = u64::from(self.p.value());
        for lead in (0..self.n).rev() {
            let block = p.pow((self.n - 1 - lead) as u32);
            if index < block {
                let mut coords = vec![0; self.n];
                coords[lead] = 1;
                for c in coords[lead + 1..].iter_mut() {
                    *c = (index % p) as u32;
                    index /= p;
                }
                return ExtElem { coords };
            }
            index -= block;
        }
        panic!("projective index out of range");
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| p.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| p.sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem {
            coords: a.coords.iter().map(|&x| p.neg(x)).collect(),
        }
    }

    /// Multiplication by an F_p scalar.
    pub fn scale(&self, c: u32, a: &ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem {
            coords: a.coords.iter().map(|&x| p.mul(c, x)).collect(),
        }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let prod = &self.to_poly(a) * &self.to_poly(b);
        self.from_poly(&prod)
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let (g, s, _) = self.to_poly(a).ext_gcd(&self.modulus);
        debug_assert!(g.is_one());
        Ok(self.from_poly(&s))
    }

    pub fn pow(&self, a: &ExtElem, e: u64) -> ExtElem {
        let r = self
            .to_poly(a)
            .pow_mod(e, &self.modulus)
            .expect("modulus is nonzero");
        self.from_poly(&r)
    }

    /// `a^(p^k)`; `k` is taken mod `n`.
    pub fn frobenius(&self, a: &ExtElem, k: usize) -> ExtElem {
        ExtElem {
            coords: self.frob[k % self.n].mul_vec(&a.coords),
        }
    }

    /// Matrix of `y -> y^(p^k)`.
    pub fn frobenius_matrix(&self, k: usize) -> &FpMatrix {
        &self.frob[k % self.n]
    }

    /// Matrix of `y -> beta * y`; column `i` holds `beta * x^i`.
    pub fn mult_matrix(&self, beta: &ExtElem) -> FpMatrix {
        let mut cols = Vec::with_capacity(self.n);
        let mut col = beta.clone();
        let x = self.generator();
        for _ in 0..self.n {
            let next = self.mul(&col, &x);
            cols.push(col.coords);
            col = next;
        }
        FpMatrix::from_columns(self.p, &cols)
    }

    /// `[F_p(a) : F_p]`, the least `e` with `a^(p^e) = a`.
    pub fn element_degree(&self, a: &ExtElem) -> usize {
        (1..=self.n)
            .find(|&e| self.n % e == 0 && self.frobenius(a, e) == *a)
            .expect("a^(p^n) = a")
    }

    /// Whether `a` lies in the subfield F_{p^e}; `e` must divide `n`.
    pub fn in_subfield(&self, a: &ExtElem, e: usize) -> bool {
        self.frobenius(a, e) == *a
    }

    /// Iterates all `p^n` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let count = self.order().expect("field too large to enumerate");
        (0..count).map(move |i| self.from_index(i))
    }
}

/// Free-function form of the context's multiplication matrix.
pub fn mult_matrix(ctx: &ExtFieldCtx, beta: &ExtElem) -> FpMatrix {
    ctx.mult_matrix(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, n: usize) -> ExtFieldCtx {
        ExtFieldCtx::with_degree(PrimeModulus::new(p).unwrap(), n).unwrap()
    }

    fn random(c: &ExtFieldCtx, rng: &mut ChaCha8Rng) -> ExtElem {
        let p = c.p().value();
        c.elem((0..c.n()).map(|_| rng.gen_range(0..p)).collect())
            .unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        let p = PrimeModulus::new(3).unwrap();
        assert!(ExtFieldCtx::new(FpPoly::new(p, [2, 0, 1])).is_err());
        assert!(ExtFieldCtx::new(FpPoly::new(p, [2, 0, 2])).is_err());
        assert!(ExtFieldCtx::new(FpPoly::new(p, [1, 0, 1])).is_ok());
    }

    #[test]
    fn arithmetic_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, n) in [(2, 5), (3, 3), (5, 2), (7, 4), (3, 8)] {
            let c = ctx(p, n);
            for _ in 0..20 {
                let a = random(&c, &mut rng);
                let b = random(&c, &mut rng);
                assert_eq!(c.mul(&a, &c.one()), a);
                assert_eq!(c.frobenius(&a, n), a);
                assert_eq!(c.frobenius(&a, 1), c.pow(&a, p));
                assert_eq!(c.frobenius(&c.mul(&a, &b), 2), c.mul(&c.frobenius(&a, 2), &c.frobenius(&b, 2)));
                if !b.is_zero() {
                    assert_eq!(c.mul(&b, &c.inv(&b).unwrap()), c.one());
                }
                assert_eq!(
                    &c.mult_matrix(&a) * &c.mult_matrix(&b),
                    c.mult_matrix(&c.mul(&a, &b))
                );
            }
            assert_eq!(c.inv(&c.zero()), Err(Error::ZeroInversion));
        }
    }

    #[test]
    fn mult_matrix_examples() {
        let c = ctx(3, 3);
        assert!(c.mult_matrix(&c.one()).is_identity());
        assert!(c.mult_matrix(&c.zero()).is_zero());
        let g = c.generator();
        assert_eq!(c.mult_matrix(&g), FpMatrix::companion(c.modulus()).unwrap());
    }

    #[test]
    fn index_round_trip_and_projective_reps() {
        let c = ctx(3, 3);
        for i in 0..27 {
            assert_eq!(c.index_of(&c.from_index(i)), i);
        }
        let count = c.projective_count().unwrap();
        assert_eq!(count, 13);
        let reps: Vec<_> = (0..count).map(|i| c.projective_rep(i)).collect();
        let p = c.p().value();
        // every nonzero element is a unique scalar multiple of a unique rep
        let mut seen = std::collections::HashSet::new();
        for r in &reps {
            assert_eq!(r.coords().iter().find(|&&x| x != 0), Some(&1));
            for s in 1..p {
                assert!(seen.insert(c.scale(s, r)));
            }
        }
        assert_eq!(seen.len(), 26);
    }

    #[test]
    fn element_degrees() {
        let c = ctx(3, 6);
        assert_eq!(c.element_degree(&c.one()), 1);
        assert_eq!(c.element_degree(&c.generator()), 6);
        // x^((3^6-1)/(3^2-1)) lies in F_9 inside F_729
        let h = c.pow(&c.generator(), (729 - 1) / 8);
        assert!(c.in_subfield(&h, 2));
        assert!(c.element_degree(&h) <= 2);
        let count = c.elements().filter(|a| c.element_degree(a) == 2).count();
        assert_eq!(count, 9 - 3);
        let count = c.elements().filter(|a| c.element_degree(a) == 3).count();
        assert_eq!(count, 27 - 3);
    }
}
