//! Univariate polynomials over F_p.
//!
//! Coefficients are stored constant term first with trailing zeros stripped;
//! the zero polynomial has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fp::{FpScalar, PrimeModulus};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    modulus: PrimeModulus,
    coeffs: Vec<u32>,
}

impl FpPoly {
    /// Builds a polynomial from residues, reducing each one mod p.
    pub fn new(modulus: PrimeModulus, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| modulus.reduce(c)).collect();
        Self::from_residues(modulus, coeffs)
    }

    /// Builds a polynomial from values already in `[0, p)`.
    pub fn from_residues(modulus: PrimeModulus, coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus.value()));
        let mut poly = Self { modulus, coeffs };
        poly.normalize();
        poly
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        Self {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: PrimeModulus, c: u32) -> Self {
        Self::from_residues(modulus, vec![c % modulus.value()])
    }

    /// The indeterminate `x`.
    pub fn x(modulus: PrimeModulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    /// `c * x^deg`.
    pub fn monomial(modulus: PrimeModulus, deg: usize, c: u32) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c % modulus.value();
        Self::from_residues(modulus, coeffs)
    }

    /// `x - c`.
    pub fn linear_root(modulus: PrimeModulus, c: u32) -> Self {
        Self::from_residues(modulus, vec![modulus.neg(c % modulus.value()), 1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn scalar_coeffs(&self) -> impl Iterator<Item = FpScalar> + '_ {
        self.coeffs
            .iter()
            .map(move |&c| FpScalar::new(u64::from(c), self.modulus))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "polynomials over different prime fields"
        );
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.modulus;
        Self::from_residues(p, self.coeffs.iter().map(|&a| p.mul(a, c)).collect())
    }

    /// Scales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => self.scale(self.modulus.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, a: u32) -> u32 {
        let p = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| p.add(p.mul(acc, a), c))
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor);
        let p = self.modulus;
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let lc_inv = p.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = p.mul(rem[i + dd], lc_inv);
            quot[i] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = p.sub(rem[i + j], p.mul(c, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_residues(p, quot), Self::from_residues(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        self.check(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        self.check(other);
        let p = self.modulus;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = p.inv(r0.leading()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Monic least common multiple; zero if either argument is zero.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let g = self.gcd(other);
        let (q, _) = self.div_rem(&g).expect("gcd is nonzero");
        (&q * other).monic()
    }

    /// `self^e mod f` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, f: &Self) -> Result<Self> {
        let p = self.modulus;
        let mut base = self.rem(f)?;
        let mut acc = Self::one(p).rem(f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(f)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(f)?;
            }
        }
        Ok(acc)
    }

    /// Irreducibility over F_p: `x^(p^d) = x (mod f)` and
    /// `gcd(x^(p^(d/q)) - x, f) = 1` for every prime `q | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        match d {
            0 => return Ok(false),
            1 => return Ok(true),
            _ => {}
        }
        let p = self.modulus;
        let f = self.monic();
        let x = Self::x(p);
        let maximal_divisors: Vec<usize> = prime_divisors(d).into_iter().map(|q| d / q).collect();
        let mut h = x.clone();
        for i in 1..=d {
            h = h.pow_mod(u64::from(p.value()), &f)?;
            if maximal_divisors.contains(&i) && !(&h - &x).gcd(&f).is_one() {
                return Ok(false);
            }
        }
        Ok(h == x)
    }
}

fn prime_divisors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Free-function form of [`FpPoly::is_irreducible`].
pub fn is_irreducible(f: &FpPoly) -> Result<bool> {
    f.is_irreducible()
}

/// The first monic irreducible polynomial of degree `n` in the order that
/// reads `(c_{n-1}, ..., c_1, c_0)` as a base-p number, i.e. the lower
/// coefficients are incremented first.
pub fn find_irreducible(p: PrimeModulus, n: usize) -> FpPoly {
    assert!(n >= 1, "degree must be positive");
    let mut coeffs = vec![0u32; n + 1];
    coeffs[n] = 1;
    loop {
        let cand = FpPoly::from_residues(p, coeffs.clone());
        if cand.is_irreducible().expect("monic candidate is nonzero") {
            return cand;
        }
        // increment the base-p counter, c_0 least significant
        let mut i = 0;
        loop {
            assert!(i < n, "exhausted candidates without finding an irreducible");
            coeffs[i] += 1;
            if coeffs[i] == p.value() {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        let p = self.modulus;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| p.add(self.coeff(i), rhs.coeff(i)))
            .collect();
        FpPoly::from_residues(p, coeffs)
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        let p = self.modulus;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| p.sub(self.coeff(i), rhs.coeff(i)))
            .collect();
        FpPoly::from_residues(p, coeffs)
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.check(rhs);
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(p);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = p.add(out[i + j], p.mul(a, b));
            }
        }
        FpPoly::from_residues(p, out)
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        let p = self.modulus;
        FpPoly::from_residues(p, self.coeffs.iter().map(|&c| p.neg(c)).collect())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.modulus);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.modulus)
    }
}

/// Text form `p:3 coeffs:1,0,1`, constant term first.
impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p:{} coeffs:", self.modulus)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FpPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let p_part = parts
            .next()
            .ok_or_else(|| Error::Parse("empty polynomial text".into()))?;
        let c_part = parts
            .next()
            .ok_or_else(|| Error::Parse("missing `coeffs:` field".into()))?;
        if parts.next().is_some() {
            return Err(Error::Parse("trailing data after coefficients".into()));
        }
        let p_str = p_part
            .strip_prefix("p:")
            .ok_or_else(|| Error::Parse("expected `p:<prime>`".into()))?;
        let p: u64 = p_str
            .parse()
            .map_err(|_| Error::Parse(format!("invalid prime `{p_str}`")))?;
        let p = PrimeModulus::new(p)?;
        let c_str = c_part
            .strip_prefix("coeffs:")
            .ok_or_else(|| Error::Parse("expected `coeffs:<list>`".into()))?;
        let mut coeffs = Vec::new();
        if !c_str.is_empty() {
            for tok in c_str.split(',') {
                let c: u64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid coefficient `{tok}`")))?;
                if c >= u64::from(p.value()) {
                    return Err(Error::Parse(format!("coefficient {c} not reduced mod {p}")));
                }
                coeffs.push(c as u32);
            }
        }
        Ok(Self::from_residues(p, coeffs))
    }
}
