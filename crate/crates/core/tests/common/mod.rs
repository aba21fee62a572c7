#![allow(dead_code)]

use std::sync::Arc;

use matfield::{DOPoly, ExtElem, ExtFieldCtx, FpMatrix, LinearizedPoly, PrimeModulus};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn modulus(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

pub fn ctx(p: u64, n: usize) -> Arc<ExtFieldCtx> {
    Arc::new(ExtFieldCtx::with_degree(modulus(p), n).unwrap())
}

pub fn random_elem(c: &ExtFieldCtx, rng: &mut ChaCha8Rng) -> ExtElem {
    let p = c.p().value();
    c.elem((0..c.n()).map(|_| rng.gen_range(0..p)).collect())
        .unwrap()
}

pub fn random_nonzero(c: &ExtFieldCtx, rng: &mut ChaCha8Rng) -> ExtElem {
    loop {
        let e = random_elem(c, rng);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A uniformly random element of the subfield of degree `e`, via the
/// relative trace, retried until it is nonzero of exact degree `e`.
pub fn random_of_degree(c: &ExtFieldCtx, e: usize, rng: &mut ChaCha8Rng) -> ExtElem {
    assert_eq!(c.n() % e, 0);
    loop {
        let t = random_elem(c, rng);
        let tr = (0..c.n() / e).fold(c.zero(), |acc, i| c.add(&acc, &c.frobenius(&t, e * i)));
        if !tr.is_zero() && c.element_degree(&tr) == e {
            return tr;
        }
    }
}

pub fn random_matrix(p: PrimeModulus, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    FpMatrix::from_fn(p, n, |_, _| rng.gen_range(0..u64::from(p.value())))
}

pub fn random_invertible(p: PrimeModulus, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    loop {
        let m = random_matrix(p, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_permutation(c: &Arc<ExtFieldCtx>, rng: &mut ChaCha8Rng) -> LinearizedPoly {
    loop {
        let u = (0..c.n()).map(|_| random_elem(c, rng)).collect();
        let l = LinearizedPoly::from_coeffs(c, u).unwrap();
        if l.is_permutation() {
            return l;
        }
    }
}

pub fn random_do(c: &Arc<ExtFieldCtx>, rng: &mut ChaCha8Rng, density: f64) -> DOPoly {
    let mut g = DOPoly::zero(c);
    for i in 0..c.n() {
        for j in i..c.n() {
            if rng.gen_bool(density) {
                g.add_term(i, j, &random_elem(c, rng));
            }
        }
    }
    g
}

/// Random DO polynomials until a planar one turns up.
pub fn random_planar_do(c: &Arc<ExtFieldCtx>, rng: &mut ChaCha8Rng) -> DOPoly {
    loop {
        let g = random_do(c, rng, 0.5);
        if g.is_planar().unwrap() {
            return g;
        }
    }
}

/// `{ M_{g,α} Y^-1 : α in F_{p^n} }`.
pub fn slice(g: &DOPoly, y_inv: &FpMatrix) -> matfield::QuotSet {
    let c = g.ctx();
    let sb = g.spread_basis();
    let ms: Vec<FpMatrix> = c.elements().map(|a| &sb.matrix_for(&a) * y_inv).collect();
    matfield::QuotSet::from_matrices(c.p(), c.n(), &ms).unwrap()
}
