//! Rational canonical form (Frobenius normal form) of matrices over F_p.
//!
//! The invariant factors are read off the Smith normal form of the
//! characteristic matrix `xI - A` over the Euclidean domain F_p[x].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::FpMatrix;
use crate::poly::FpPoly;

/// The invariant factors `f_1 | f_2 | ... | f_r` of a similarity class;
/// all monic of positive degree, degrees summing to the dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RcfForm {
    invariant_factors: Vec<FpPoly>,
}

impl RcfForm {
    /// Validates a divisibility chain of monic polynomials of positive degree.
    pub fn from_factors(factors: Vec<FpPoly>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::EmptyInput);
        };
        let p = first.modulus();
        for f in &factors {
            if f.modulus() != p {
                return Err(Error::ModulusMismatch {
                    expected: p.value(),
                    found: f.modulus().value(),
                });
            }
            if !f.is_monic() || f.degree().map_or(true, |d| d == 0) {
                return Err(Error::InvalidInput(format!(
                    "invariant factor {f} is not monic of positive degree"
                )));
            }
        }
        for w in factors.windows(2) {
            if !w[1].rem(&w[0])?.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            invariant_factors: factors,
        })
    }

    pub fn invariant_factors(&self) -> &[FpPoly] {
        &self.invariant_factors
    }

    pub fn dimension(&self) -> usize {
        self.invariant_factors
            .iter()
            .map(|f| f.degree().unwrap_or(0))
            .sum()
    }

    /// The largest invariant factor, i.e. the minimal polynomial.
    pub fn minimal_polynomial(&self) -> Option<&FpPoly> {
        self.invariant_factors.last()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.invariant_factors
            .iter()
            .map(|f| f.degree().unwrap_or(0))
            .collect()
    }

    /// The block-diagonal matrix of companion blocks.
    pub fn to_matrix(&self) -> Option<FpMatrix> {
        let p = self.invariant_factors.first()?.modulus();
        let n = self.dimension();
        let mut out = FpMatrix::zeros(p, n);
        let mut off = 0;
        for f in &self.invariant_factors {
            let c = FpMatrix::companion(f).ok()?;
            for i in 0..c.n() {
                for j in 0..c.n() {
                    out.set(off + i, off + j, c.get(i, j));
                }
            }
            off += c.n();
        }
        Some(out)
    }

    /// Stable text used for digests: factors separated by `;`, each
    /// factor as its comma-separated coefficients, constant term first.
    pub fn canonical_text(&self) -> String {
        self.invariant_factors
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Degree sequence first, then the coefficient tuples.
impl Ord for RcfForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degrees().cmp(&other.degrees()).then_with(|| {
            self.invariant_factors
                .iter()
                .map(FpPoly::coeffs)
                .cmp(other.invariant_factors.iter().map(FpPoly::coeffs))
        })
    }
}

impl PartialOrd for RcfForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RcfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.invariant_factors).finish()
    }
}

/// Computes the invariant factors of `A`.
pub fn rcf(a: &FpMatrix) -> RcfForm {
    let n = a.n();
    let p = a.modulus();
    let mut m: Vec<Vec<FpPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = p.neg(a.get(i, j));
                    if i == j {
                        FpPoly::from_residues(p, vec![c, 1])
                    } else {
                        FpPoly::constant(p, c)
                    }
                })
                .collect()
        })
        .collect();

    let mut diagonal = Vec::with_capacity(n);
    for t in 0..n {
        while let Some((pi, pj)) = min_degree_entry(&m, t) {
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut cleared = true;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&m[t][t]).expect("pivot is nonzero");
                for j in t..n {
                    let sub = &q * &m[t][j];
                    m[i][j] = &m[i][j] - &sub;
                }
                debug_assert_eq!(m[i][t], r);
                cleared &= r.is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&m[t][t]).expect("pivot is nonzero");
                for row in m.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] = &row[j] - &sub;
                }
                cleared &= r.is_zero();
            }
            if !cleared {
                continue;
            }
            // pivot must divide the remaining block; otherwise fold the
            // offending row into the pivot row and repeat
            let offending = (t + 1..n).find(|&i| {
                (t + 1..n).any(|j| !m[i][j].rem(&m[t][t]).expect("nonzero").is_zero())
            });
            match offending {
                Some(i) => {
                    for j in t..n {
                        let s = &m[t][j] + &m[i][j];
                        m[t][j] = s;
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[t][t].monic());
    }

    RcfForm {
        invariant_factors: diagonal
            .into_iter()
            .filter(|f| f.degree().is_some_and(|d| d > 0))
            .collect(),
    }
}

fn min_degree_entry(m: &[Vec<FpPoly>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, e) in row.iter().enumerate().skip(t) {
            if let Some(d) = e.degree() {
                if best.map_or(true, |(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                    if d == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Whether `A` and `B` lie in the same similarity class.
pub fn similar(a: &FpMatrix, b: &FpMatrix) -> Result<bool> {
    a.ensure_compatible(b)?;
    Ok(rcf(a) == rcf(b))
}
