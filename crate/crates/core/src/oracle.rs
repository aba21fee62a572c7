//! Brute-force reference implementations for small instances.
//!
//! Everything here enumerates: algebras element by element, polynomials by
//! evaluation at every point, quotient sets over every direction pair. The
//! code deliberately avoids the fast paths it is meant to check (spread
//! bases, projective representatives, Frobenius matrices).

use std::collections::HashSet;

use rayon::prelude::*;

use crate::dopoly::{ensure_odd, DOPoly};
use crate::error::{Error, Result};
use crate::ext::ExtFieldCtx;
use crate::field::{FieldDecision, NotFieldWitness};
use crate::fp::PrimeModulus;
use crate::matrix::{span_membership, FpMatrix};
use crate::quot::QuotSet;

/// Default cap on the number of enumerated objects.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 2_000_000;

fn guard(size: Option<u128>, limit: u128) -> Result<u64> {
    match size {
        Some(s) if s <= limit => Ok(s as u64),
        Some(s) => Err(Error::SizeGuard { size: s, limit }),
        None => Err(Error::SizeGuard {
            size: u128::MAX,
            limit,
        }),
    }
}

fn checked_power(p: PrimeModulus, e: usize) -> Option<u128> {
    u128::from(p.value()).checked_pow(u32::try_from(e).ok()?)
}

/// Row echelon form of flattened matrices, used for span tests.
struct Echelon {
    p: PrimeModulus,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn new(p: PrimeModulus) -> Self {
        Self {
            p,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.p;
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = p.sub(*x, p.mul(f, r));
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u32>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.p.inv(v[pivot]).expect("pivot is nonzero");
        let v = v.iter().map(|&x| self.p.mul(x, inv)).collect();
        self.rows.push((pivot, v));
        true
    }

    fn contains(&self, v: Vec<u32>) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// A vector-space basis of the algebra `F_p[S]`.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    basis: Vec<FpMatrix>,
}

impl AlgebraBasis {
    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The element with base-p digit coordinates `index`.
    pub fn element(&self, mut index: u64) -> FpMatrix {
        let first = &self.basis[0];
        let p = u64::from(first.modulus().value());
        let mut acc = FpMatrix::zeros(first.modulus(), first.n());
        for b in &self.basis {
            let c = (index % p) as u32;
            index /= p;
            if c != 0 {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }
}

/// Closes `{I} ∪ S` under right multiplication by the generators.
pub fn algebra_closure_basis(s: &[FpMatrix]) -> Result<AlgebraBasis> {
    let first = s.first().ok_or(Error::EmptyInput)?;
    for a in s {
        first.ensure_compatible(a)?;
    }
    let p = first.modulus();
    let mut ech = Echelon::new(p);
    let mut basis = Vec::new();
    for m in std::iter::once(FpMatrix::identity(p, first.n())).chain(s.iter().cloned()) {
        if ech.insert(m.data().to_vec()) {
            basis.push(m);
        }
    }
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        for g in s {
            let prod = &b * g;
            if ech.insert(prod.data().to_vec()) {
                basis.push(prod);
            }
        }
        next += 1;
    }
    Ok(AlgebraBasis { basis })
}

pub fn brute_force_field_check(s: &[FpMatrix]) -> Result<FieldDecision> {
    brute_force_field_check_with_limit(s, DEFAULT_ENUMERATION_LIMIT)
}

/// Decides whether `F_p[S]` is a field by enumerating all its elements.
pub fn brute_force_field_check_with_limit(s: &[FpMatrix], limit: u128) -> Result<FieldDecision> {
    let alg = algebra_closure_basis(s)?;
    let n = s[0].n();
    let p = s[0].modulus();
    let dim = alg.dimension();
    if dim > n {
        return Ok(FieldDecision::NotField(NotFieldWitness::DimensionExceeds {
            dimension: dim,
        }));
    }
    let size = guard(checked_power(p, dim), limit)?;

    let mut ech = Echelon::new(p);
    for b in alg.basis() {
        ech.insert(b.data().to_vec());
    }
    for a in alg.basis() {
        for b in alg.basis() {
            let ab = a * b;
            let ba = b * a;
            if ab != ba {
                return Ok(FieldDecision::NotField(NotFieldWitness::NonCommutative {
                    left: a.clone(),
                    right: b.clone(),
                }));
            }
            assert!(ech.contains(ab.data().to_vec()), "closure is not multiplicative");
        }
    }

    if let Some(element) = (1..size)
        .into_par_iter()
        .map(|i| alg.element(i))
        .find_first(|m| !m.is_invertible())
    {
        return Ok(FieldDecision::NotField(NotFieldWitness::ZeroDivisor { element }));
    }

    let (generator, min_poly) = (0..size)
        .map(|i| alg.element(i))
        .find_map(|m| {
            let mp = m.minimal_polynomial();
            (mp.degree() == Some(dim) && mp.is_irreducible().unwrap_or(false)).then_some((m, mp))
        })
        .expect("a finite field has a primitive element");

    let mut powers = Vec::with_capacity(n);
    let mut x = FpMatrix::identity(p, n);
    for _ in 0..n {
        let next = &x * &generator;
        powers.push(x);
        x = next;
    }
    let coordinates = s
        .iter()
        .map(|m| {
            span_membership(m, &powers)
                .map(|c| c.expect("every input lies in the field it generates"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldDecision::Field {
        degree: dim,
        generator,
        min_poly,
        coordinates,
    })
}

/// `g` evaluated at every element, indexed by [`ExtFieldCtx::from_index`].
/// Frobenius powers are taken by repeated exponentiation.
fn value_table(g: &DOPoly) -> Vec<u64> {
    let ctx = g.ctx();
    let size = ctx.order().expect("guarded");
    let p = u64::from(ctx.p().value());
    (0..size)
        .into_par_iter()
        .map(|idx| {
            let y = ctx.from_index(idx);
            let mut frob = Vec::with_capacity(ctx.n());
            let mut acc = y;
            for _ in 0..ctx.n() {
                let next = ctx.pow(&acc, p);
                frob.push(acc);
                acc = next;
            }
            let v = g.terms().iter().fold(ctx.zero(), |s, (&(i, j), u)| {
                ctx.add(&s, &ctx.mul(u, &ctx.mul(&frob[i], &frob[j])))
            });
            ctx.index_of(&v)
        })
        .collect()
}

fn add_index(ctx: &ExtFieldCtx, a: u64, b: u64) -> u64 {
    ctx.index_of(&ctx.add(&ctx.from_index(a), &ctx.from_index(b)))
}

fn sub_index(ctx: &ExtFieldCtx, a: u64, b: u64) -> u64 {
    ctx.index_of(&ctx.sub(&ctx.from_index(a), &ctx.from_index(b)))
}

pub fn exhaustive_planarity(g: &DOPoly) -> Result<bool> {
    exhaustive_planarity_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

/// Planarity by evaluation: every `y -> g(y + α) - g(y) - g(α)` with
/// `α != 0` must be a bijection. Also checks that `g` is 2-to-1 on the
/// nonzero elements with `0` the only preimage of `0`, and panics if the two
/// criteria disagree.
pub fn exhaustive_planarity_with_limit(g: &DOPoly, limit: u128) -> Result<bool> {
    let ctx = g.ctx();
    ensure_odd(ctx)?;
    let size = guard(checked_power(ctx.p(), ctx.n()), limit)?;
    let table = value_table(g);
    let bijective = (1..size).into_par_iter().all(|a| {
        let mut seen = vec![false; size as usize];
        (0..size).all(|y| {
            let shifted = table[add_index(ctx, y, a) as usize];
            let d = sub_index(ctx, sub_index(ctx, shifted, table[y as usize]), table[a as usize]);
            !std::mem::replace(&mut seen[d as usize], true)
        })
    });
    let mut counts = vec![0u32; size as usize];
    for &v in &table {
        counts[v as usize] += 1;
    }
    let two_to_one = table[0] == 0 && counts[0] == 1 && counts[1..].iter().all(|&c| c == 0 || c == 2);
    assert_eq!(
        bijective, two_to_one,
        "difference and 2-to-1 criteria disagree for {g:?}"
    );
    Ok(bijective)
}

pub fn exhaustive_quot(g: &DOPoly) -> Result<QuotSet> {
    exhaustive_quot_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

/// `Quot(D_g)` from all direction pairs, with each `M_{g,α}` built column by
/// column from values of `g`. The limit applies to the `p^(2n)` pairs.
pub fn exhaustive_quot_with_limit(g: &DOPoly, limit: u128) -> Result<QuotSet> {
    let ctx = g.ctx();
    let p = ctx.p();
    let n = ctx.n();
    guard(checked_power(p, 2 * n), limit)?;
    let size = ctx.order().expect("guarded");
    let table = value_table(g);
    let basis_idx: Vec<u64> = (0..n).map(|i| ctx.index_of(&ctx.basis(i))).collect();
    let mats: Vec<FpMatrix> = (0..size)
        .into_par_iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = basis_idx
                .iter()
                .map(|&b| {
                    let shifted = table[add_index(ctx, b, a) as usize];
                    let d = sub_index(ctx, sub_index(ctx, shifted, table[b as usize]), table[a as usize]);
                    ctx.from_index(d).into_coords()
                })
                .collect();
            FpMatrix::from_columns(p, &cols)
        })
        .collect();
    let found: HashSet<FpMatrix> = mats
        .par_iter()
        .filter_map(|y| y.inverse().ok())
        .flat_map_iter(|y_inv| mats.iter().map(move |x| x * &y_inv).collect::<Vec<_>>())
        .collect();
    QuotSet::from_matrices(p, n, &found)
}
