//! Structure checks for the planar monomials `x^(p^k + 1)`, whose
//! derivatives are `φ_α(x) = α x^(p^k) + α^(p^k) x`.
//!
//! Every map is materialized as a matrix and identities are checked as exact
//! matrix equalities.

use std::sync::Arc;

use rayon::prelude::*;

use crate::dopoly::{ensure_odd, projective_count_checked, DOPoly};
use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtFieldCtx};
use crate::linearized::LinearizedPoly;
use crate::matrix::{combine, FpMatrix};
use crate::poly::FpPoly;
use crate::quot::{quot_set, QuotSet};

/// Enumeration limit for [`verify_twisted_structure`]: bounds both the
/// number of direction pairs behind `Quot` and the size of `F_p[X]`.
pub const TWISTED_CHECK_LIMIT: u128 = 2_000_000;

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `φ_α(x) = α x^(p^k) + α^(p^k) x`.
pub fn phi(ctx: &Arc<ExtFieldCtx>, alpha: &ExtElem, k: usize) -> LinearizedPoly {
    let mut l = LinearizedPoly::monomial(ctx, k, alpha.clone());
    l.add_term(0, &ctx.frobenius(alpha, k));
    l
}

/// Closed-form inverse of `φ_α` when `d = n / gcd(k, n)` is odd:
/// `(α/2) sum_{i<d} (-1)^i α^(-(p^k+1) p^(ki)) x^(p^(ki))`.
pub fn phi_inverse(ctx: &Arc<ExtFieldCtx>, alpha: &ExtElem, k: usize) -> Result<LinearizedPoly> {
    ensure_odd(ctx)?;
    let n = ctx.n();
    let d = n / gcd(k, n);
    if d % 2 == 0 {
        return Err(Error::NotInvertibleParameters { n, k });
    }
    if alpha.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let alpha_inv = ctx.inv(alpha)?;
    // α^-(p^k + 1)
    let base = ctx.mul(&alpha_inv, &ctx.frobenius(&alpha_inv, k));
    let half = ctx.p().inv(2)?;
    let lead = ctx.scale(half, alpha);
    let minus_lead = ctx.neg(&lead);
    let mut out = LinearizedPoly::zero(ctx);
    for i in 0..d {
        let shift = (k * i) % n;
        let sign = if i % 2 == 0 { &lead } else { &minus_lead };
        out.add_term(shift, &ctx.mul(sign, &ctx.frobenius(&base, shift)));
    }
    Ok(out)
}

/// Pass/fail for each identity relating `φ_β ∘ φ_α^-1` to multiplication
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationReport {
    /// `β^(p^k) - α^(p^k - 1) β = 0`, i.e. `α^-1 β` lies in F_{p^gcd(k,n)}.
    pub subfield: bool,
    /// The closed-form inverse agrees with Gaussian elimination.
    pub inverse_matches: bool,
    /// `φ_β ∘ φ_α^-1 = c φ_α^-1 + α^-1 β x` with `c = β^(p^k) - α^(p^k-1) β`.
    pub composition: bool,
    /// Subfield case: `φ_β ∘ φ_α^-1 = T_{α^-1 β}`. Otherwise, with
    /// `ψ(x) = α^(p^k) φ_α(c^-1 x)`: `ψ ∘ φ_β ∘ φ_α^-1 ∘ ψ^-1 = T_{(α^-1 β)^(p^k)}`.
    pub conjugation: bool,
    /// `γ^-(p^k+1) φ_{γβ}(φ_{γα}^-1(γ^(p^k+1) x)) = φ_β(φ_α^-1(x))`.
    pub self_equivalence: bool,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.inverse_matches && self.composition && self.conjugation && self.self_equivalence
    }
}

/// Checks the composition, conjugation and self-equivalence identities for
/// `φ_β ∘ φ_α^-1` with scaling element `γ`.
pub fn verify_conjugation_identities(
    ctx: &Arc<ExtFieldCtx>,
    k: usize,
    alpha: &ExtElem,
    beta: &ExtElem,
    gamma: &ExtElem,
) -> Result<ConjugationReport> {
    if gamma.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let phi_a = phi(ctx, alpha, k).to_matrix();
    let phi_a_inv_poly = phi_inverse(ctx, alpha, k)?;
    let phi_a_inv = phi_a_inv_poly.to_matrix();
    let inverse_matches = phi_a.inverse().is_ok_and(|inv| inv == phi_a_inv);

    let composed = &phi(ctx, beta, k).to_matrix() * &phi_a_inv;
    let alpha_inv = ctx.inv(alpha)?;
    let ratio = ctx.mul(&alpha_inv, beta);
    // α^(p^k - 1) β = α^(p^k) α^-1 β
    let c = ctx.sub(
        &ctx.frobenius(beta, k),
        &ctx.mul(&ctx.frobenius(alpha, k), &ratio),
    );
    let closed = phi_a_inv_poly
        .left_scale(&c)
        .add(&LinearizedPoly::scalar(ctx, ratio.clone()));
    let composition = closed.to_matrix() == composed;

    let subfield = c.is_zero();
    let conjugation = if subfield {
        composed == ctx.mult_matrix(&ratio)
    } else {
        let c_inv = ctx.inv(&c)?;
        let psi = phi(ctx, alpha, k)
            .symbolic_product(&LinearizedPoly::scalar(ctx, c_inv))
            .left_scale(&ctx.frobenius(alpha, k))
            .to_matrix();
        match psi.inverse() {
            Ok(psi_inv) => {
                &(&psi * &composed) * &psi_inv == ctx.mult_matrix(&ctx.frobenius(&ratio, k))
            }
            Err(_) => false,
        }
    };

    // γ^(p^k + 1)
    let g_pow = ctx.mul(gamma, &ctx.frobenius(gamma, k));
    let g_pow_inv = ctx.inv(&g_pow)?;
    let ga = ctx.mul(gamma, alpha);
    let gb = ctx.mul(gamma, beta);
    let scaled = &(&(&ctx.mult_matrix(&g_pow_inv) * &phi(ctx, &gb, k).to_matrix())
        * &phi_inverse(ctx, &ga, k)?.to_matrix())
        * &ctx.mult_matrix(&g_pow);
    let self_equivalence = scaled == composed;

    Ok(ConjugationReport {
        subfield,
        inverse_matches,
        composition,
        conjugation,
        self_equivalence,
    })
}

/// Result of checking that `X = M_{g,β} M_{g,α}^-1` generates a field inside
/// `Quot(D_g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedReport {
    pub quotient: FpMatrix,
    pub min_poly: FpPoly,
    pub irreducible: bool,
    pub degree: usize,
    /// `[F_p(α^-1 β) : F_p]`.
    pub expected_degree: usize,
    /// Number of elements of `F_p[X]` checked for membership.
    pub checked: u64,
    /// The first element of `F_p[X]` missing from `Quot(D_g)`, if any.
    pub missing: Option<FpMatrix>,
}

impl TwistedReport {
    pub fn passed(&self) -> bool {
        self.irreducible && self.degree == self.expected_degree && self.missing.is_none()
    }
}

/// Enumerates `Quot(D_g)` and checks the field generated by
/// `M_{g,β} M_{g,α}^-1` against it. Refuses inputs beyond
/// [`TWISTED_CHECK_LIMIT`].
pub fn verify_twisted_structure(g: &DOPoly, alpha: &ExtElem, beta: &ExtElem) -> Result<TwistedReport> {
    let count = u128::from(projective_count_checked(g.ctx())?);
    let pairs = count * count;
    if pairs > TWISTED_CHECK_LIMIT {
        return Err(Error::SizeGuard {
            size: pairs,
            limit: TWISTED_CHECK_LIMIT,
        });
    }
    let quot = quot_set(g)?;
    verify_twisted_structure_in(g, &quot, alpha, beta)
}

/// As [`verify_twisted_structure`], against a precomputed `Quot(D_g)`.
pub fn verify_twisted_structure_in(
    g: &DOPoly,
    quot: &QuotSet,
    alpha: &ExtElem,
    beta: &ExtElem,
) -> Result<TwistedReport> {
    let ctx = g.ctx();
    ensure_odd(ctx)?;
    if alpha.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let spread = g.spread_basis();
    let y_inv = spread.matrix_for(alpha).inverse().map_err(|e| match e {
        Error::Singular { rank } => Error::SingularDirection { rank },
        other => other,
    })?;
    let x = &spread.matrix_for(beta) * &y_inv;
    let min_poly = x.minimal_polynomial();
    let degree = min_poly.degree().expect("minimal polynomial is nonzero");
    let irreducible = min_poly.is_irreducible()?;
    let ratio = ctx.mul(&ctx.inv(alpha)?, beta);
    let expected_degree = ctx.element_degree(&ratio);

    let p = u128::from(ctx.p().value());
    let span_size = u32::try_from(degree)
        .ok()
        .and_then(|d| p.checked_pow(d))
        .filter(|&s| s <= TWISTED_CHECK_LIMIT)
        .ok_or(Error::SizeGuard {
            size: p.saturating_pow(degree as u32),
            limit: TWISTED_CHECK_LIMIT,
        })? as u64;
    let mut powers = Vec::with_capacity(degree);
    let mut acc = FpMatrix::identity(ctx.p(), ctx.n());
    for _ in 0..degree {
        let next = &acc * &x;
        powers.push(acc);
        acc = next;
    }
    let pv = u64::from(ctx.p().value());
    let missing = (0..span_size).into_par_iter().find_map_first(|mut idx| {
        let coords: Vec<u32> = (0..degree)
            .map(|_| {
                let c = (idx % pv) as u32;
                idx /= pv;
                c
            })
            .collect();
        let m = combine(&powers, &coords).expect("at least one power");
        (!quot.contains(&m)).then_some(m)
    });

    Ok(TwistedReport {
        quotient: x,
        min_poly,
        irreducible,
        degree,
        expected_degree,
        checked: span_size,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeModulus;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, n: usize) -> Arc<ExtFieldCtx> {
        Arc::new(ExtFieldCtx::with_degree(PrimeModulus::new(p).unwrap(), n).unwrap())
    }

    fn random_nonzero(c: &ExtFieldCtx, rng: &mut ChaCha8Rng) -> ExtElem {
        loop {
            let e = c
                .elem((0..c.n()).map(|_| rng.gen_range(0..c.p().value())).collect())
                .unwrap();
            if !e.is_zero() {
                return e;
            }
        }
    }

    #[test]
    fn phi_matches_derivative() {
        let c = ctx(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = random_nonzero(&c, &mut rng);
        let g = DOPoly::twisted_monomial(&c, 1);
        assert_eq!(phi(&c, &a, 1), g.linearized_derivative(&a));
    }

    #[test]
    fn phi_inverse_examples() {
        let c = ctx(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..10 {
            let a = random_nonzero(&c, &mut rng);
            // k = 0: φ_α = 2αx
            let inv0 = phi_inverse(&c, &a, 0).unwrap();
            let two_a_inv = c.inv(&c.scale(2, &a)).unwrap();
            assert_eq!(inv0, LinearizedPoly::scalar(&c, two_a_inv));
            for k in [1, 2, 3, 4] {
                let inv = phi_inverse(&c, &a, k).unwrap();
                assert_eq!(inv.to_matrix(), phi(&c, &a, k).to_matrix().inverse().unwrap());
                let b = random_nonzero(&c, &mut rng);
                assert_eq!(inv.evaluate(&phi(&c, &a, k).evaluate(&b)), b);
            }
        }
        assert_eq!(phi_inverse(&c, &c.zero(), 1), Err(Error::ZeroDirection));
        let c4 = ctx(3, 4);
        assert_eq!(
            phi_inverse(&c4, &c4.one(), 1),
            Err(Error::NotInvertibleParameters { n: 4, k: 1 })
        );
    }

    #[test]
    fn conjugation_identities_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for (p, n, k) in [(3, 3, 1), (3, 3, 2), (5, 3, 1), (3, 6, 2)] {
            let c = ctx(p, n);
            for _ in 0..10 {
                let a = random_nonzero(&c, &mut rng);
                let b = random_nonzero(&c, &mut rng);
                let gm = random_nonzero(&c, &mut rng);
                let r = verify_conjugation_identities(&c, k, &a, &b, &gm).unwrap();
                assert!(r.passed(), "{r:?}");
            }
            let a = random_nonzero(&c, &mut rng);
            let r = verify_conjugation_identities(&c, k, &a, &c.zero(), &c.one()).unwrap();
            assert!(r.subfield && r.passed());
            let r = verify_conjugation_identities(&c, k, &a, &a, &c.one()).unwrap();
            assert!(r.subfield && r.passed());
        }
    }

    #[test]
    fn twisted_structure_examples() {
        let c = ctx(3, 3);
        let g = DOPoly::twisted_monomial(&c, 1);
        let quot = quot_set(&g).unwrap();
        let one = c.one();

        let r = verify_twisted_structure_in(&g, &quot, &one, &one).unwrap();
        assert!(r.quotient.is_identity() && r.degree == 1 && r.passed());

        let r = verify_twisted_structure_in(&g, &quot, &one, &c.generator()).unwrap();
        assert_eq!(r.degree, 3);
        assert_eq!(r.checked, 27);
        assert!(r.passed(), "{r:?}");

        let a = c.elem(vec![1, 2, 1]).unwrap();
        let r = verify_twisted_structure_in(&g, &quot, &a, &c.scale(2, &a)).unwrap();
        assert_eq!(r.quotient, FpMatrix::scalar(c.p(), 3, 2));

        assert_eq!(
            verify_twisted_structure(&g, &c.zero(), &one),
            Err(Error::ZeroDirection)
        );
        assert!(verify_twisted_structure(&g, &one, &c.generator()).unwrap().passed());
    }
}
