//! The quotient set `Quot(D_g) = { X Y^-1 : X, Y in D_g, Y invertible }`
//! of a spread set, its similarity-class multiset, and the test for linear
//! equivalence to `x^2`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use smallvec::SmallVec;

use crate::dopoly::{ensure_odd, projective_count_checked, DOPoly};
use crate::error::{Error, Result};
use crate::field::{finite_field_decide, FieldDecision, NotFieldWitness};
use crate::fp::PrimeModulus;
use crate::matrix::FpMatrix;
use crate::poly::FpPoly;
use crate::rcf::{rcf, RcfForm};

type PackedKey = SmallVec<[u64; 2]>;

/// A set of `n x n` matrices over F_p stored as bit-packed entry vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotSet {
    p: PrimeModulus,
    n: usize,
    keys: HashSet<PackedKey>,
}

fn entry_bits(p: PrimeModulus) -> u32 {
    32 - (p.value() - 1).leading_zeros()
}

fn pack(m: &FpMatrix) -> PackedKey {
    let bits = entry_bits(m.modulus());
    let per_word = (64 / bits) as usize;
    let mut key = PackedKey::with_capacity(m.data().len().div_ceil(per_word));
    for chunk in m.data().chunks(per_word) {
        let word = chunk
            .iter()
            .enumerate()
            .fold(0u64, |w, (k, &x)| w | (u64::from(x) << (k as u32 * bits)));
        key.push(word);
    }
    key
}

fn unpack(p: PrimeModulus, n: usize, key: &PackedKey) -> FpMatrix {
    let bits = entry_bits(p);
    let per_word = (64 / bits) as usize;
    let mask = (1u64 << bits) - 1;
    let data = (0..n * n)
        .map(|idx| ((key[idx / per_word] >> ((idx % per_word) as u32 * bits)) & mask) as u32)
        .collect();
    FpMatrix::from_data(p, n, data).expect("packed entries are residues")
}

impl QuotSet {
    pub fn empty(p: PrimeModulus, n: usize) -> Self {
        Self {
            p,
            n,
            keys: HashSet::new(),
        }
    }

    pub fn from_matrices<'a>(
        p: PrimeModulus,
        n: usize,
        matrices: impl IntoIterator<Item = &'a FpMatrix>,
    ) -> Result<Self> {
        let mut set = Self::empty(p, n);
        for m in matrices {
            set.insert(m)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, m: &FpMatrix) -> Result<bool> {
        m.ensure_compatible(&FpMatrix::zeros(self.p, self.n))?;
        Ok(self.keys.insert(pack(m)))
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, m: &FpMatrix) -> bool {
        m.modulus() == self.p && m.n() == self.n && self.keys.contains(&pack(m))
    }

    /// All elements, sorted by their row-major entries.
    pub fn matrices(&self) -> Vec<FpMatrix> {
        let mut out: Vec<FpMatrix> = self
            .keys
            .iter()
            .map(|k| unpack(self.p, self.n, k))
            .collect();
        out.sort_unstable_by(|a, b| a.data().cmp(b.data()));
        out
    }

    /// Whether `other` is obtained by conjugating every element by `a`.
    pub fn is_conjugate_by(&self, other: &Self, a: &FpMatrix) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        let a_inv = a.inverse()?;
        Ok(self
            .keys
            .par_iter()
            .all(|k| other.contains(&(&(&a_inv * &unpack(self.p, self.n, k)) * a))))
    }
}

/// Enumerates `Quot(D_g)` using one direction per F_p-line and closing under
/// the scalar action `M_{g,cβ} M_{g,dα}^-1 = c d^-1 M_{g,β} M_{g,α}^-1`.
pub fn quot_set(g: &DOPoly) -> Result<QuotSet> {
    let ctx = g.ctx();
    let p = ctx.p();
    let n = ctx.n();
    let count = projective_count_checked(ctx)?;
    let spread = g.spread_basis();
    let mats: Vec<FpMatrix> = (0..count)
        .into_par_iter()
        .map(|i| spread.matrix_for(&ctx.projective_rep(i)))
        .collect();
    let inverses: Vec<FpMatrix> = mats.par_iter().filter_map(|m| m.inverse().ok()).collect();
    if inverses.is_empty() {
        return Ok(QuotSet::empty(p, n));
    }
    let scalars: Vec<u32> = (1..p.value()).collect();
    let mut keys = inverses
        .par_iter()
        .fold(HashSet::new, |mut acc, y_inv| {
            for x in &mats {
                let q = x * y_inv;
                for &c in &scalars {
                    acc.insert(pack(&q.scale(c)));
                }
            }
            acc
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    keys.insert(pack(&FpMatrix::zeros(p, n)));
    Ok(QuotSet { p, n, keys })
}

/// `(p^n - p)(p^n - 1)/(p - 1) + p`.
pub fn quot_upper_bound(p: PrimeModulus, n: usize) -> Result<u128> {
    let p = u128::from(p.value());
    let q = checked_pow(p, n)?;
    ((q - p).checked_mul(q - 1).ok_or(Error::Overflow)? / (p - 1))
        .checked_add(p)
        .ok_or(Error::Overflow)
}

/// `|Quot|` for `x^(p^k + 1)` over F_{p^n}:
/// `(p^n - p^d)(p^n - 1)/(p^d - 1) + p^d` with `d = gcd(k, n)`, which is
/// `p^n` when `k = 0 mod n`.
pub fn twisted_quot_cardinality(p: PrimeModulus, n: usize, k: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    let d = gcd(k, n);
    if (n / d) % 2 == 0 {
        return Err(Error::NotPlanarParameters { n, k });
    }
    let p = u128::from(p.value());
    let q = checked_pow(p, n)?;
    let pd = checked_pow(p, d)?;
    ((q - pd).checked_mul(q - 1).ok_or(Error::Overflow)? / (pd - 1))
        .checked_add(pd)
        .ok_or(Error::Overflow)
}

fn checked_pow(p: u128, e: usize) -> Result<u128> {
    u32::try_from(e)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .ok_or(Error::Overflow)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Similarity classes with the number of distinct matrices in each, sorted
/// by [`RcfForm`]'s order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcfMultiset {
    classes: Vec<(RcfForm, usize)>,
}

impl RcfMultiset {
    pub fn from_matrices(matrices: &[FpMatrix]) -> Self {
        let forms: Vec<RcfForm> = matrices.par_iter().map(rcf).collect();
        let mut counts = BTreeMap::new();
        for f in forms {
            *counts.entry(f).or_insert(0usize) += 1;
        }
        Self {
            classes: counts.into_iter().collect(),
        }
    }

    /// Validated construction from a class list; the order is normalized.
    pub fn from_classes(classes: Vec<(RcfForm, usize)>) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (f, m) in classes {
            if m == 0 {
                return Err(Error::InvalidInput("multiplicity must be positive".into()));
            }
            if counts.insert(f, m).is_some() {
                return Err(Error::InvalidInput("duplicate similarity class".into()));
            }
        }
        Ok(Self {
            classes: counts.into_iter().collect(),
        })
    }

    pub fn classes(&self) -> &[(RcfForm, usize)] {
        &self.classes
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.classes.iter().map(|(_, m)| m).sum()
    }

    /// One line per class: invariant factors, `:`, multiplicity.
    pub fn canonical_text(&self) -> String {
        self.classes
            .iter()
            .map(|(f, m)| format!("{}:{m}\n", f.canonical_text()))
            .collect()
    }

    /// Hex SHA-256 of [`Self::canonical_text`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

pub fn rcf_multiset(q: &QuotSet) -> RcfMultiset {
    RcfMultiset::from_matrices(&q.matrices())
}

/// Outcome of the test for linear equivalence to `x^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum X2Certificate {
    /// `F_p[D_g Y^-1]` is a field of order `p^n`, with `Y = M_{g,1}`.
    Equivalent {
        generator: FpMatrix,
        min_poly: FpPoly,
        degree: usize,
    },
    NotEquivalent(X2Failure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum X2Failure {
    /// `M_{g,1}` is singular.
    SingularBase { rank: usize },
    /// `M_{g,α_i} Y^-1` is a nonzero singular matrix, i.e. a zero divisor.
    SingularGenerator { index: usize },
    NotField(NotFieldWitness),
    /// The algebra is a field, but of order `p^degree` with `degree < n`.
    WrongDegree { degree: usize },
}

impl X2Certificate {
    pub fn verdict(&self) -> bool {
        matches!(self, Self::Equivalent { .. })
    }
}

/// Decides whether `g` is linearly equivalent to `x^2`: with `Y = M_{g,1}`
/// this holds iff `Y` is invertible and the algebra generated by
/// `M_{g,α_i} Y^-1` over the basis directions is a field of order `p^n`.
pub fn decide_x2(g: &DOPoly) -> Result<X2Certificate> {
    let ctx = g.ctx();
    ensure_odd(ctx)?;
    let n = ctx.n();
    let spread = g.spread_basis();
    let y = spread.matrix_for(&ctx.one());
    let y_inv = match y.inverse() {
        Ok(inv) => inv,
        Err(Error::Singular { rank }) => {
            return Ok(X2Certificate::NotEquivalent(X2Failure::SingularBase { rank }))
        }
        Err(e) => return Err(e),
    };
    let mut generators = Vec::with_capacity(n);
    for (index, m) in spread.mats().iter().enumerate() {
        let x = m * &y_inv;
        if x.is_zero() {
            continue;
        }
        if !x.is_invertible() {
            return Ok(X2Certificate::NotEquivalent(
                X2Failure::SingularGenerator { index },
            ));
        }
        generators.push(x);
    }
    Ok(match finite_field_decide(&generators)? {
        FieldDecision::Field {
            degree,
            generator,
            min_poly,
            ..
        } if degree == n => X2Certificate::Equivalent {
            generator,
            min_poly,
            degree,
        },
        FieldDecision::Field { degree, .. } => {
            X2Certificate::NotEquivalent(X2Failure::WrongDegree { degree })
        }
        FieldDecision::NotField(w) => X2Certificate::NotEquivalent(X2Failure::NotField(w)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::ExtFieldCtx;
    use crate::linearized::LinearizedPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn ctx(p: u64, n: usize) -> Arc<ExtFieldCtx> {
        Arc::new(ExtFieldCtx::with_degree(m(p), n).unwrap())
    }

    #[test]
    fn packing_round_trips() {
        for p in [2u64, 3, 5, 65_537, 4_294_967_291] {
            let a = FpMatrix::from_fn(m(p), 5, |i, j| (i as u64 * 7919 + j as u64 * 104_729) % p);
            assert_eq!(unpack(m(p), 5, &pack(&a)), a);
        }
    }

    #[test]
    fn cardinality_formulas() {
        assert_eq!(quot_upper_bound(m(3), 1).unwrap(), 3);
        assert_eq!(quot_upper_bound(m(3), 5).unwrap(), 29043);
        assert_eq!(twisted_quot_cardinality(m(3), 3, 1).unwrap(), 315);
        assert_eq!(twisted_quot_cardinality(m(3), 5, 1).unwrap(), 29043);
        assert_eq!(twisted_quot_cardinality(m(3), 3, 0).unwrap(), 27);
        assert_eq!(
            twisted_quot_cardinality(m(3), 4, 1),
            Err(Error::NotPlanarParameters { n: 4, k: 1 })
        );
        assert_eq!(quot_upper_bound(m(4_294_967_291), 5), Err(Error::Overflow));
    }

    #[test]
    fn quot_examples() {
        let c = ctx(3, 3);
        let sq = quot_set(&DOPoly::square(&c)).unwrap();
        assert_eq!(sq.len(), 27);
        assert!(quot_set(&DOPoly::zero(&c)).unwrap().is_empty());
        let tw = quot_set(&DOPoly::twisted_monomial(&c, 1)).unwrap();
        assert_eq!(tw.len(), 315);
        for q in [&sq, &tw] {
            for s in 0..3 {
                assert!(q.contains(&FpMatrix::scalar(m(3), 3, s)));
            }
        }
    }

    #[test]
    fn x2_quot_is_the_multiplication_field() {
        let c = ctx(3, 2);
        let q = quot_set(&DOPoly::square(&c)).unwrap();
        let expected: Vec<FpMatrix> = c.elements().map(|a| c.mult_matrix(&a)).collect();
        let expected = QuotSet::from_matrices(m(3), 2, &expected).unwrap();
        assert_eq!(q, expected);

        let ms = rcf_multiset(&q);
        assert_eq!(ms.total(), 9);
        // three scalars, and the six non-scalars pair up by minimal polynomial
        let scalar_classes = ms.classes().iter().filter(|(f, _)| f.degrees() == [1, 1]).count();
        assert_eq!(scalar_classes, 3);
        let mut by_min_poly = BTreeMap::new();
        for a in c.elements() {
            let mp = c.mult_matrix(&a).minimal_polynomial();
            *by_min_poly.entry(mp.coeffs().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(ms.classes().len(), by_min_poly.len());
    }

    #[test]
    fn multiset_examples() {
        let i = FpMatrix::identity(m(3), 2);
        let ms = RcfMultiset::from_matrices(&[i]);
        assert_eq!(ms.classes().len(), 1);
        assert_eq!(ms.classes()[0].1, 1);
        assert_eq!(ms.classes()[0].0.degrees(), vec![1, 1]);
        assert_eq!(ms.digest().len(), 64);

        let c = ctx(3, 3);
        let q = quot_set(&DOPoly::twisted_monomial(&c, 1)).unwrap();
        let ms = rcf_multiset(&q);
        let pm = FpMatrix::from_rows(m(3), &[vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 2]]).unwrap();
        assert!(pm.is_invertible());
        let conj: Vec<FpMatrix> = q
            .matrices()
            .iter()
            .map(|a| a.conjugate_by(&pm).unwrap())
            .collect();
        assert_eq!(RcfMultiset::from_matrices(&conj).digest(), ms.digest());
    }

    #[test]
    fn x2_decision_examples() {
        let c = ctx(3, 3);
        let sq = decide_x2(&DOPoly::square(&c)).unwrap();
        assert!(sq.verdict());
        assert!(!decide_x2(&DOPoly::twisted_monomial(&c, 1)).unwrap().verdict());
        assert_eq!(
            decide_x2(&DOPoly::zero(&c)).unwrap(),
            X2Certificate::NotEquivalent(X2Failure::SingularBase { rank: 0 })
        );

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rand_perm = |rng: &mut ChaCha8Rng| loop {
            let u = (0..3)
                .map(|_| c.elem((0..3).map(|_| rng.gen_range(0..3)).collect()).unwrap())
                .collect();
            let l = LinearizedPoly::from_coeffs(&c, u).unwrap();
            if l.is_permutation() {
                return l;
            }
        };
        for _ in 0..5 {
            let (l, lo) = (rand_perm(&mut rng), rand_perm(&mut rng));
            let g = DOPoly::square(&c).apply_linear_equivalence(&l, &lo).unwrap();
            assert!(decide_x2(&g).unwrap().verdict());
        }
        assert_eq!(
            decide_x2(&DOPoly::square(&ctx(2, 3))),
            Err(Error::EvenCharacteristic)
        );
    }
}
