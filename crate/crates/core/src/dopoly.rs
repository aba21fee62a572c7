//! Dembowski-Ostrom polynomials `g(x) = sum_{i <= j} u_ij x^(p^i + p^j)`,
//! their linearized derivatives, spread sets and linear-equivalence
//! transforms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtFieldCtx};
use crate::linearized::LinearizedPoly;
use crate::matrix::{combine, FpMatrix};

#[derive(Clone)]
pub struct DOPoly {
    ctx: Arc<ExtFieldCtx>,
    terms: BTreeMap<(usize, usize), ExtElem>,
}

impl PartialEq for DOPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for DOPoly {}

impl fmt::Debug for DOPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.terms
                    .iter()
                    .map(|((i, j), u)| (format!("x^(p^{i}+p^{j})"), u)),
            )
            .finish()
    }
}

impl DOPoly {
    pub fn zero(ctx: &Arc<ExtFieldCtx>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    /// `x^(p^i + p^j)` with coefficient one.
    pub fn monomial(ctx: &Arc<ExtFieldCtx>, i: usize, j: usize) -> Self {
        let mut g = Self::zero(ctx);
        g.add_term(i, j, &ctx.one());
        g
    }

    /// `x^2`.
    pub fn square(ctx: &Arc<ExtFieldCtx>) -> Self {
        Self::monomial(ctx, 0, 0)
    }

    /// `x^(p^k + 1)`; for `k = 0 mod n` this is `x^2`.
    pub fn twisted_monomial(ctx: &Arc<ExtFieldCtx>, k: usize) -> Self {
        Self::monomial(ctx, 0, k)
    }

    pub fn ctx(&self) -> &Arc<ExtFieldCtx> {
        &self.ctx
    }

    /// Adds `u` to the coefficient of `x^(p^i + p^j)`; indices are reduced
    /// mod `n` and ordered so that `i <= j`.
    pub fn add_term(&mut self, i: usize, j: usize, u: &ExtElem) {
        let n = self.ctx.n();
        let (i, j) = (i % n, j % n);
        let key = (i.min(j), i.max(j));
        let sum = match self.terms.get(&key) {
            Some(old) => self.ctx.add(old, u),
            None => u.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn with_term(mut self, i: usize, j: usize, u: &ExtElem) -> Self {
        self.add_term(i, j, u);
        self
    }

    /// Nonzero terms keyed by `(i, j)` with `i <= j`.
    pub fn terms(&self) -> &BTreeMap<(usize, usize), ExtElem> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> ExtElem {
        let key = (i.min(j), i.max(j));
        self.terms.get(&key).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, x: &ExtElem) -> ExtElem {
        let ctx = &self.ctx;
        self.terms.iter().fold(ctx.zero(), |acc, (&(i, j), u)| {
            let t = ctx.mul(&ctx.frobenius(x, i), &ctx.frobenius(x, j));
            ctx.add(&acc, &ctx.mul(u, &t))
        })
    }

    /// `Δ_{g,α}(x) = g(x + α) - g(x) - g(α)`. The term `u x^(p^i + p^j)`
    /// contributes `u α^(p^j)` to `x^(p^i)` and `u α^(p^i)` to `x^(p^j)`.
    pub fn linearized_derivative(&self, alpha: &ExtElem) -> LinearizedPoly {
        let ctx = &self.ctx;
        let mut out = LinearizedPoly::zero(ctx);
        for (&(i, j), u) in &self.terms {
            out.add_term(i, &ctx.mul(u, &ctx.frobenius(alpha, j)));
            out.add_term(j, &ctx.mul(u, &ctx.frobenius(alpha, i)));
        }
        out
    }

    /// The matrix `M_{g,α}` of the derivative in direction `α`.
    pub fn derivative_matrix(&self, alpha: &ExtElem) -> FpMatrix {
        self.linearized_derivative(alpha).to_matrix()
    }

    /// `a ⋆ b = Δ_{g,a}(b)`.
    pub fn presemifield_mult(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        self.linearized_derivative(a).evaluate(b)
    }

    /// The derivative matrices for the context basis directions.
    pub fn spread_basis(&self) -> SpreadBasis {
        let ctx = &self.ctx;
        let mats = (0..ctx.n())
            .map(|i| self.derivative_matrix(&ctx.basis(i)))
            .collect();
        SpreadBasis {
            ctx: Arc::clone(ctx),
            mats,
        }
    }

    /// Whether every derivative in a nonzero direction is a permutation.
    /// One direction per F_p-line is checked, since `M_{g,cα} = c M_{g,α}`.
    pub fn is_planar(&self) -> Result<bool> {
        ensure_odd(&self.ctx)?;
        let count = projective_count_checked(&self.ctx)?;
        let spread = self.spread_basis();
        Ok((0..count)
            .into_par_iter()
            .all(|i| spread.matrix_for(&self.ctx.projective_rep(i)).is_invertible()))
    }

    /// `g'(x) = L'(g(L(x)))` reduced mod `x^(p^n) - x`.
    ///
    /// Substituting `L` into `u x^(p^i + p^j)` gives terms
    /// `u l_a^(p^i) l_b^(p^j) x^(p^(a+i) + p^(b+j))`; applying `L'` then raises
    /// each coefficient to `p^c` and shifts both indices by `c`.
    pub fn apply_linear_equivalence(
        &self,
        l: &LinearizedPoly,
        l_outer: &LinearizedPoly,
    ) -> Result<Self> {
        if !l.is_permutation() || !l_outer.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        let ctx = &self.ctx;
        let nonzero = |lp: &LinearizedPoly| -> Vec<(usize, ExtElem)> {
            lp.coeffs()
                .iter()
                .cloned()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };
        let inner = nonzero(l);
        let mut substituted = Self::zero(ctx);
        for (&(i, j), u) in &self.terms {
            for (a, la) in &inner {
                let left = ctx.mul(u, &ctx.frobenius(la, i));
                for (b, lb) in &inner {
                    let coeff = ctx.mul(&left, &ctx.frobenius(lb, j));
                    substituted.add_term(a + i, b + j, &coeff);
                }
            }
        }
        let mut out = Self::zero(ctx);
        for (c, lc) in nonzero(l_outer) {
            for (&(s, t), w) in &substituted.terms {
                out.add_term(s + c, t + c, &ctx.mul(&lc, &ctx.frobenius(w, c)));
            }
        }
        Ok(out)
    }
}

pub(crate) fn ensure_odd(ctx: &ExtFieldCtx) -> Result<()> {
    if ctx.p().is_odd() {
        Ok(())
    } else {
        Err(Error::EvenCharacteristic)
    }
}

pub(crate) fn projective_count_checked(ctx: &ExtFieldCtx) -> Result<u64> {
    ctx.projective_count().ok_or(Error::SizeGuard {
        size: u128::from(ctx.p().value()).saturating_pow(ctx.n() as u32),
        limit: u128::from(u64::MAX),
    })
}

/// The spread set of `g` in coordinates: `M_{g,α}` is linear in `α`, so the
/// matrices for the basis directions determine every other one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadBasis {
    ctx: Arc<ExtFieldCtx>,
    mats: Vec<FpMatrix>,
}

impl SpreadBasis {
    pub fn mats(&self) -> &[FpMatrix] {
        &self.mats
    }

    pub fn ctx(&self) -> &Arc<ExtFieldCtx> {
        &self.ctx
    }

    /// `M_{g,α}` as the combination of the basis matrices with `α`'s
    /// coordinates.
    pub fn matrix_for(&self, alpha: &ExtElem) -> FpMatrix {
        combine(&self.mats, alpha.coords()).expect("spread basis is nonempty")
    }
}
