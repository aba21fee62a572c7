mod common;

use std::sync::Arc;

use common::*;
use matfield::{
    compute_generator, find_irreducible, quot_set, quot_upper_bound, rcf_multiset, DOPoly, ExtFieldCtx, FpMatrix,
    FpPoly,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn spread_combinations_are_invertible_for_planar_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = ctx(3, 3);
    for _ in 0..5 {
        let g = random_planar_do(&c, &mut rng);
        let sb = g.spread_basis();
        for a in c.elements().filter(|a| !a.is_zero()) {
            let m = sb.matrix_for(&a);
            assert!(m.is_invertible());
            assert_eq!(m, g.derivative_matrix(&a));
        }
    }
}

#[test]
fn quot_contains_scalars_and_respects_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for &(p, n) in &[(3, 2), (3, 3), (5, 2), (5, 3)] {
        let c = ctx(p, n);
        let g = random_planar_do(&c, &mut rng);
        let q = quot_set(&g).unwrap();
        for s in 1..p as u32 {
            assert!(q.contains(&FpMatrix::scalar(c.p(), n, s)));
        }
        let size = q.len() as u128;
        assert!(size >= u128::from(p).pow(n as u32));
        assert!(size <= quot_upper_bound(c.p(), n).unwrap());
    }
}

#[test]
fn multiplication_matrices_generate_the_subfield_they_live_in() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = ctx(3, 6);
    for e in [1, 2, 3, 6] {
        let b = random_of_degree(&c, e, &mut rng);
        let d = matfield::finite_field_decide(&[c.mult_matrix(&b)]).unwrap();
        assert_eq!(d.degree(), Some(e));
    }
}

#[test]
fn generator_of_coprime_subfields_spans_the_compositum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for &(n, d1, d2) in &[(6, 2, 3), (12, 4, 6), (12, 3, 4)] {
        let c = ctx(3, n);
        let a = c.mult_matrix(&random_of_degree(&c, d1, &mut rng));
        let b = c.mult_matrix(&random_of_degree(&c, d2, &mut rng));
        let g = compute_generator(&a, &b).unwrap().expect("commuting field elements");
        let mu = g.minimal_polynomial();
        assert!(mu.is_irreducible().unwrap());
        assert_eq!(mu.degree(), Some(lcm(d1, d2)));
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Second irreducible polynomial of degree `n`, distinct from the default.
fn other_modulus(c: &ExtFieldCtx) -> FpPoly {
    let p = c.p();
    let n = c.n();
    let q = u64::from(p.value());
    (0..q.pow(n as u32))
        .map(|idx| {
            let mut coeffs: Vec<u64> = (0..n).map(|i| idx / q.pow(i as u32) % q).collect();
            coeffs.push(1);
            FpPoly::new(p, coeffs)
        })
        .filter(|f| f.is_irreducible().unwrap())
        .find(|f| f != c.modulus())
        .unwrap()
}

#[test]
fn multiplication_algebras_for_different_moduli_are_conjugate() {
    for &(p, n) in &[(3, 3), (5, 2), (2, 4), (3, 4)] {
        let c1 = ctx(p, n);
        assert_eq!(c1.modulus(), &find_irreducible(c1.p(), n));
        let c2 = Arc::new(ExtFieldCtx::new(other_modulus(&c1)).unwrap());
        // θ in the second model is a root of the first modulus.
        let theta = c2
            .elements()
            .find(|t| {
                let f = c1.modulus();
                let val = (0..=n).rev().fold(c2.zero(), |acc, i| {
                    c2.add(&c2.mul(&acc, t), &c2.from_scalar(f.coeff(i)))
                });
                val.is_zero()
            })
            .unwrap();
        let cols: Vec<Vec<u32>> = (0..n).map(|i| c2.pow(&theta, i as u64).into_coords()).collect();
        let pm = FpMatrix::from_columns(c1.p(), &cols);
        let pm_inv = pm.inverse().unwrap();
        let image = |b: &matfield::ExtElem| c2.elem(pm.mul_vec(b.coords())).unwrap();
        for b in c1.elements() {
            let conj = &(&pm * &c1.mult_matrix(&b)) * &pm_inv;
            assert_eq!(conj, c2.mult_matrix(&image(&b)));
        }
    }
}

#[test]
fn quot_transforms_by_conjugation_under_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = ctx(3, 3);
    let g = DOPoly::twisted_monomial(&c, 1);
    let q = quot_set(&g).unwrap();
    for _ in 0..5 {
        let l = random_permutation(&c, &mut rng);
        let lo = random_permutation(&c, &mut rng);
        let g2 = g.apply_linear_equivalence(&l, &lo).unwrap();
        let q2 = quot_set(&g2).unwrap();
        // M_{g',α} M_{g',β}^-1 = M_{L'} (M_{g,Lα} M_{g,Lβ}^-1) M_{L'}^-1
        let a = lo.to_matrix().inverse().unwrap();
        assert!(q.is_conjugate_by(&q2, &a).unwrap());
        assert_eq!(rcf_multiset(&q).digest(), rcf_multiset(&q2).digest());
    }
}

#[test]
fn every_slice_of_x2_equivalents_is_the_same_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=3 {
        let c = ctx(3, n);
        for _ in 0..3 {
            let l = random_permutation(&c, &mut rng);
            let lo = random_permutation(&c, &mut rng);
            let g = DOPoly::square(&c).apply_linear_equivalence(&l, &lo).unwrap();
            let sb = g.spread_basis();
            let slices: Vec<_> = c
                .elements()
                .filter(|b| !b.is_zero())
                .map(|b| slice(&g, &sb.matrix_for(&b).inverse().unwrap()))
                .collect();
            assert!(slices.windows(2).all(|w| w[0] == w[1]));
            assert_eq!(slices[0], quot_set(&g).unwrap());
            assert_eq!(slices[0].len(), 3usize.pow(n as u32));
        }
    }
}

#[test]
fn slices_of_twisted_monomials_differ() {
    let c = ctx(3, 3);
    let g = DOPoly::twisted_monomial(&c, 1);
    let sb = g.spread_basis();
    let distinct: std::collections::HashSet<Vec<FpMatrix>> = c
        .elements()
        .filter(|b| !b.is_zero())
        .map(|b| slice(&g, &sb.matrix_for(&b).inverse().unwrap()).matrices())
        .collect();
    assert!(distinct.len() > 1);
}
