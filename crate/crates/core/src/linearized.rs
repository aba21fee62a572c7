//! Linearized polynomials `L(x) = sum_i u_i x^(p^i)` over F_{p^n}, reduced
//! mod `x^(p^n) - x` so that exactly `n` coefficients are stored.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtFieldCtx};
use crate::matrix::FpMatrix;

#[derive(Clone)]
pub struct LinearizedPoly {
    ctx: Arc<ExtFieldCtx>,
    u: Vec<ExtElem>,
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.u == other.u
    }
}

impl Eq for LinearizedPoly {}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.u
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (format!("x^(p^{i})"), c)),
            )
            .finish()
    }
}

impl LinearizedPoly {
    pub fn zero(ctx: &Arc<ExtFieldCtx>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            u: vec![ctx.zero(); ctx.n()],
        }
    }

    /// The polynomial `x`.
    pub fn identity(ctx: &Arc<ExtFieldCtx>) -> Self {
        Self::scalar(ctx, ctx.one())
    }

    /// `beta * x`.
    pub fn scalar(ctx: &Arc<ExtFieldCtx>, beta: ExtElem) -> Self {
        Self::monomial(ctx, 0, beta)
    }

    /// `c * x^(p^i)`, with `i` reduced mod `n`.
    pub fn monomial(ctx: &Arc<ExtFieldCtx>, i: usize, c: ExtElem) -> Self {
        let mut l = Self::zero(ctx);
        l.u[i % ctx.n()] = c;
        l
    }

    /// From the coefficients of `x, x^p, ..., x^(p^(n-1))`.
    pub fn from_coeffs(ctx: &Arc<ExtFieldCtx>, u: Vec<ExtElem>) -> Result<Self> {
        if u.len() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                found: u.len(),
            });
        }
        for c in &u {
            ctx.elem(c.coords().to_vec())?;
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            u,
        })
    }

    pub fn ctx(&self) -> &Arc<ExtFieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.u
    }

    pub fn coeff(&self, i: usize) -> &ExtElem {
        &self.u[i % self.ctx.n()]
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(ExtElem::is_zero)
    }

    /// Adds `c` to the coefficient of `x^(p^i)`.
    pub fn add_term(&mut self, i: usize, c: &ExtElem) {
        let i = i % self.ctx.n();
        self.u[i] = self.ctx.add(&self.u[i], c);
    }

    pub fn add(&self, other: &Self) -> Self {
        let u = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| self.ctx.add(a, b))
            .collect();
        Self {
            ctx: Arc::clone(&self.ctx),
            u,
        }
    }

    /// `c * L(x)`.
    pub fn left_scale(&self, c: &ExtElem) -> Self {
        Self {
            ctx: Arc::clone(&self.ctx),
            u: self.u.iter().map(|a| self.ctx.mul(c, a)).collect(),
        }
    }

    pub fn evaluate(&self, x: &ExtElem) -> ExtElem {
        let ctx = &self.ctx;
        self.u
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(ctx.zero(), |acc, (i, c)| {
                ctx.add(&acc, &ctx.mul(c, &ctx.frobenius(x, i)))
            })
    }

    /// The composition `self(other(x))`: the coefficient of `x^(p^s)` is
    /// `sum_{i + j = s mod n} u_i * v_j^(p^i)`.
    pub fn symbolic_product(&self, other: &Self) -> Self {
        let ctx = &self.ctx;
        let n = ctx.n();
        let mut out = Self::zero(ctx);
        for (i, ui) in self.u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in other.u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = ctx.mul(ui, &ctx.frobenius(vj, i));
                out.add_term((i + j) % n, &t);
            }
        }
        out
    }

    /// Matrix of the F_p-linear map; column `i` holds `L(x^i)`.
    pub fn to_matrix(&self) -> FpMatrix {
        let ctx = &self.ctx;
        let mut m = FpMatrix::zeros(ctx.p(), ctx.n());
        for (i, c) in self.u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let term = &ctx.mult_matrix(c) * ctx.frobenius_matrix(i);
            m = &m + &term;
        }
        m
    }

    pub fn is_permutation(&self) -> bool {
        self.to_matrix().is_invertible()
    }
}

/// Free-function form of [`LinearizedPoly::symbolic_product`].
pub fn symbolic_product(l: &LinearizedPoly, m: &LinearizedPoly) -> LinearizedPoly {
    l.symbolic_product(m)
}

/// Free-function form of [`LinearizedPoly::to_matrix`].
pub fn matrix_of_linearized(l: &LinearizedPoly) -> FpMatrix {
    l.to_matrix()
}
