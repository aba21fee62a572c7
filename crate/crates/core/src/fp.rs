//! Arithmetic in the prime field F_p.
//!
//! Residues are stored as `u32`; every product is formed in a `u64` before
//! reduction, so any prime below 2^32 is supported.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime modulus `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self(p as u32))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// Reduces an arbitrary `u64` into `[0, p)`.
    #[inline]
    pub fn reduce(self, a: u64) -> u32 {
        (a % u64::from(self.0)) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.0)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = u64::from(a) + u64::from(b);
        let p = u64::from(self.0);
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (u64::from(a) + u64::from(self.0) - u64::from(b)) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    pub fn pow(self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::ZeroInversion);
        }
        let (mut r0, mut r1) = (i64::from(self.0), i64::from(a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_signed(t0))
    }

    /// `(p - 1) / 2`-th power test; only meaningful for odd `p`.
    pub fn is_square(self, a: u32) -> bool {
        a == 0 || self.0 == 2 || self.pow(a, u64::from((self.0 - 1) / 2)) == 1
    }

    pub fn scalar(self, value: u64) -> FpScalar {
        FpScalar {
            value: self.reduce(value),
            modulus: self,
        }
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        u64::from(p.0)
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.0)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of F_p tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    modulus: PrimeModulus,
}

impl FpScalar {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        modulus.scalar(value)
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        Self { value: 0, modulus }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::new(1, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        fp_inv(self)
    }

    pub fn pow(self, e: u64) -> Self {
        Self {
            value: self.modulus.pow(self.value, e),
            modulus: self.modulus,
        }
    }
}

/// Inverse of a nonzero scalar.
pub fn fp_inv(a: FpScalar) -> Result<FpScalar> {
    Ok(FpScalar {
        value: a.modulus.inv(a.value)?,
        modulus: a.modulus,
    })
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Debug for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.0)
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn validates_primality() {
        assert!(PrimeModulus::new(2).is_ok());
        assert!(PrimeModulus::new(4_294_967_291).is_ok());
        assert_eq!(PrimeModulus::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeModulus::new(9), Err(Error::NotPrime(9)));
        assert_eq!(
            PrimeModulus::new(1 << 33),
            Err(Error::ModulusTooLarge(1 << 33))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(fp_inv(FpScalar::new(1, m(7))).unwrap().value(), 1);
        assert_eq!(fp_inv(FpScalar::new(2, m(5))).unwrap().value(), 3);
        assert_eq!(fp_inv(FpScalar::new(0, m(3))), Err(Error::ZeroInversion));
    }

    #[test]
    fn large_modulus_products_do_not_overflow() {
        let p = m(4_294_967_291);
        let a = p.value() - 1;
        // (-1)(-1) = 1
        assert_eq!(p.mul(a, a), 1);
        assert_eq!(p.add(a, a), p.value() - 2);
        assert_eq!(p.mul(p.inv(a).unwrap(), a), 1);
    }

    proptest! {
        #[test]
        fn inverse_is_involutive(idx in 0usize..6, a in 1u64..1_000_000) {
            let p = m([2u64, 3, 5, 7, 65_537, 4_294_967_291][idx]);
            let x = p.scalar(a);
            prop_assume!(!x.is_zero());
            let y = fp_inv(x).unwrap();
            prop_assert_eq!((x * y).value(), 1);
            prop_assert_eq!(fp_inv(y).unwrap(), x);
        }
    }
}
