//! Deciding whether a matrix algebra `F_p[A_1, ..., A_t]` is a finite field.
//!
//! The decision never needs the multiplicative order of an element, so no
//! factorization of `p^n - 1` is required. A single generator of the algebra
//! is built by folding [`compute_generator`] over the inputs; the algebra is a
//! field exactly when that generator has an irreducible minimal polynomial and
//! every input lies in the span of its powers.

use crate::error::{Error, Result};
use crate::matrix::{span_membership, FpMatrix};
use crate::poly::FpPoly;

/// Prime factorization `prod q_i^{e_i}` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    factors: Vec<(u64, u32)>,
}

impl IntFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, q: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(r, _)| r == q)
            .map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(q, e)| q.pow(e))
            .product()
    }
}

/// Trial division; intended for the tiny integers that occur as degrees.
pub fn factor_small_integer(mut m: u64) -> IntFactorization {
    assert!(m >= 1, "factorization of zero");
    let mut factors = Vec::new();
    let mut q = 2;
    while q * q <= m {
        let mut e = 0;
        while m % q == 0 {
            m /= q;
            e += 1;
        }
        if e > 0 {
            factors.push((q, e));
        }
        q += 1;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    IntFactorization { factors }
}

/// Why an algebra failed to be a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFieldWitness {
    /// The computed generator has a reducible minimal polynomial.
    ReducibleMinPoly { element: FpMatrix, min_poly: FpPoly },
    /// Input `index` is not a polynomial in the computed generator.
    OutsideSpan { index: usize },
    /// A relative-trace search found no element of the required degree.
    NoGenerator,
    /// A nonzero element of the algebra is not invertible.
    ZeroDivisor { element: FpMatrix },
    /// Two elements of the algebra do not commute.
    NonCommutative { left: FpMatrix, right: FpMatrix },
    /// The algebra has dimension larger than `n`, so it cannot be a field.
    DimensionExceeds { dimension: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDecision {
    Field {
        degree: usize,
        generator: FpMatrix,
        min_poly: FpPoly,
        /// Coordinates of each input w.r.t. `I, a, ..., a^{n-1}`.
        coordinates: Vec<Vec<u32>>,
    },
    NotField(NotFieldWitness),
}

impl FieldDecision {
    pub fn is_field(&self) -> bool {
        matches!(self, Self::Field { .. })
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Self::Field { degree, .. } => Some(*degree),
            Self::NotField(_) => None,
        }
    }
}

fn degree_of_min_poly(a: &FpMatrix) -> usize {
    a.minimal_polynomial().degree().expect("minimal polynomial is nonzero")
}

/// Returns `c` with `F_p[a, b] = F_p[c]` whenever `F_p[a, b]` is a field.
///
/// `Ok(None)` means a relative-trace search was exhausted, which can only
/// happen when `F_p[a]` or `F_p[b]` is not a field. When `F_p[a, b]` is not a
/// field the returned matrix carries no guarantee.
pub fn compute_generator(a: &FpMatrix, b: &FpMatrix) -> Result<Option<FpMatrix>> {
    a.ensure_compatible(b)?;
    for (index, x) in [a, b].into_iter().enumerate() {
        if !x.is_invertible() {
            return Err(Error::NotInvertible { index });
        }
    }
    Ok(generator_of_pair(a, b))
}

fn generator_of_pair(a: &FpMatrix, b: &FpMatrix) -> Option<FpMatrix> {
    let m = degree_of_min_poly(a);
    let k = degree_of_min_poly(b);
    let d = gcd(m, k);
    if d == k {
        return Some(a.clone());
    }
    if d == m {
        return Some(b.clone());
    }
    if d == 1 {
        return Some(a * b);
    }

    let fm = factor_small_integer(m as u64);
    let fk = factor_small_integer(k as u64);
    let mut primes: Vec<u64> = fm
        .factors()
        .iter()
        .chain(fk.factors())
        .map(|&(q, _)| q)
        .collect();
    primes.sort_unstable();
    primes.dedup();

    let mut product = FpMatrix::identity(a.modulus(), a.n());
    for q in primes {
        let (em, ek) = (fm.exponent_of(q), fk.exponent_of(q));
        let (base, deg, e) = if em >= ek { (a, m, em) } else { (b, k, ek) };
        let target = q.pow(e) as usize;
        let mut power = FpMatrix::identity(a.modulus(), a.n());
        let mut found = None;
        for _j in 1..deg {
            power = &power * base;
            let c = power
                .relative_trace(deg, target)
                .expect("prime power divides the degree");
            if degree_of_min_poly(&c) == target {
                found = Some(c);
                break;
            }
        }
        product = &product * &found?;
    }
    Some(product)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn validate_inputs(s: &[FpMatrix]) -> Result<()> {
    let first = s.first().ok_or(Error::EmptyInput)?;
    for a in s {
        first.ensure_compatible(a)?;
    }
    for (index, a) in s.iter().enumerate() {
        if !a.is_invertible() {
            return Err(Error::NotInvertible { index });
        }
    }
    Ok(())
}

/// Decides whether `F_p[S]` is a field and, if so, returns its degree over
/// F_p together with a generator and the span coordinates of every input.
///
/// Inputs must be invertible; a singular input is reported as an error.
pub fn finite_field_decide(s: &[FpMatrix]) -> Result<FieldDecision> {
    validate_inputs(s)?;
    let mut a = s[0].clone();
    for b in &s[1..] {
        // intermediate generators may be singular when the algebra is not a
        // field; the irreducibility check below rejects those
        match generator_of_pair(&a, b) {
            Some(c) => a = c,
            None => return Ok(FieldDecision::NotField(NotFieldWitness::NoGenerator)),
        }
    }
    let min_poly = a.minimal_polynomial();
    if !min_poly.is_irreducible()? {
        return Ok(FieldDecision::NotField(NotFieldWitness::ReducibleMinPoly {
            element: a,
            min_poly,
        }));
    }
    let n = a.n();
    let mut powers = Vec::with_capacity(n);
    let mut x = FpMatrix::identity(a.modulus(), n);
    for _ in 0..n {
        let next = &x * &a;
        powers.push(x);
        x = next;
    }
    let mut coordinates = Vec::with_capacity(s.len());
    for (index, m) in s.iter().enumerate() {
        match span_membership(m, &powers)? {
            Some(c) => coordinates.push(c),
            None => return Ok(FieldDecision::NotField(NotFieldWitness::OutsideSpan { index })),
        }
    }
    Ok(FieldDecision::Field {
        degree: min_poly.degree().expect("nonzero"),
        generator: a,
        min_poly,
        coordinates,
    })
}
